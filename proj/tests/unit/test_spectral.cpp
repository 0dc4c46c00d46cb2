#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "spectre/eigenvalue.hpp"
#include "spectre/exact.hpp"
#include "spectre/graph.hpp"
#include "spectre/spectral.hpp"

using namespace spectre;

namespace {

Eigen::MatrixXd lap(const WeightedGraph& g, double rho = 1.0) { return generalized_laplacian(g, rho).matrix(); }

std::vector<std::pair<double, int>> clusters(const EigenSummary& s) {
    std::vector<std::pair<double, int>> out;
    for (const auto& c : s.clusters) out.emplace_back(c.value, c.multiplicity);
    return out;
}

}  // namespace

TEST_CASE("eigendecompose clusters") {
    auto p3 = clusters(eigendecompose(lap(path_graph(3)), 1e-8).summary());
    REQUIRE(p3.size() == 3);
    CHECK(p3[0].first == doctest::Approx(0.0));
    CHECK(p3[1].first == doctest::Approx(1.0));
    CHECK(p3[2].first == doctest::Approx(3.0));

    auto star = clusters(eigendecompose(lap(complete_bipartite(1, 3))).summary());
    REQUIRE(star.size() == 3);
    CHECK(star[1].first == doctest::Approx(1.0));
    CHECK(star[1].second == 2);
    CHECK(star[2].first == doctest::Approx(4.0));
    CHECK(oracle::multiplicity_q(oracle::laplacian_q(complete_bipartite(1, 3), 1), 1) == 2);

    auto zero = eigendecompose(Eigen::MatrixXd::Zero(4, 4)).summary();
    REQUIRE(zero.clusters.size() == 1);
    CHECK(zero.clusters[0].multiplicity == 4);
    CHECK(std::isinf(zero.min_gap));

    Eigen::Matrix2d asym;
    asym << 0, 1, 0, 0;
    CHECK_THROWS_AS(eigendecompose(asym), std::invalid_argument);
}

TEST_CASE("eigen summary invariants") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const WeightedGraph g = oracle::random_graph(rng, 3 + trial % 9, 0.5, trial % 2 == 0);
        const auto s = eigendecompose(lap(g, trial % 3 == 0 ? -1.0 : 1.0)).summary();
        int total = 0;
        for (std::size_t i = 0; i < s.clusters.size(); ++i) {
            total += s.clusters[i].multiplicity;
            if (i > 0) CHECK(s.clusters[i].value - s.clusters[i - 1].value > s.tolerance);
        }
        CHECK(total == g.order());
    }
}

TEST_CASE("default tolerance") {
    CHECK(default_tolerance(Eigen::MatrixXd::Identity(3, 3)) == 1e-8);
    const Eigen::MatrixXd big = Eigen::MatrixXd::Constant(10, 10, 1e4);
    CHECK(default_tolerance(big) == doctest::Approx(1e-12 * 10 * 1e5));
    CHECK(resolve_tolerance(big, 1e-3) == 1e-3);
}

TEST_CASE("multiplicity examples") {
    CHECK(multiplicity(lap(star_graph(4)), EigenvalueSpec::rational(4)) == 1);
    CHECK(multiplicity(lap(cycle_graph(5)), EigenvalueSpec::four_sin_sq(1, 5)) == 2);
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const WeightedGraph g = oracle::random_graph(rng, 8, 0.2, false);
        const int components = static_cast<int>(connected_components(g).size());
        CHECK(multiplicity(lap(g), EigenvalueSpec::rational(0)) >= components);
    }
}

TEST_CASE("exact multiplicity") {
    for (int r = 1; r <= 6; ++r) {
        const RationalMatrix l = exact_laplacian(complete_bipartite(1, r), 1);
        CHECK(exact_multiplicity(l, 1) == r - 1);
    }
    CHECK(exact_multiplicity(RationalMatrix::identity(3), 1) == 3);
    CHECK(exact_rank(RationalMatrix(0, 0)) == 0);

    // P3 end vertex joined to G keeps m(1)
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const WeightedGraph g = oracle::random_graph(rng, 6, 0.5, false);
        const WeightedGraph joined = connected_sum(g, path_graph(3), trial % 6, 0);
        CHECK(exact_multiplicity(exact_laplacian(joined, 1), 1) == exact_multiplicity(exact_laplacian(g, 1), 1));
    }
}

TEST_CASE("bareiss rank matches textbook elimination") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int trial = 0; trial < 60; ++trial) {
        const int rows = 1 + trial % 6;
        const int cols = 1 + (trial / 6) % 6;
        RationalMatrix m(rows, cols);
        oracle::QMatrix q(rows, std::vector<mpq_class>(cols));
        // low-rank products make rank deficiency common
        const int inner = 1 + trial % 3;
        std::vector<std::vector<int>> a(rows, std::vector<int>(inner)), b(inner, std::vector<int>(cols));
        for (auto& row : a)
            for (int& x : row) x = entry(rng);
        for (auto& row : b)
            for (int& x : row) x = entry(rng);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                int s = 0;
                for (int k = 0; k < inner; ++k) s += a[i][k] * b[k][j];
                m(i, j) = mpq_class(s, 1 + (i + j) % 3);
                q[i][j] = m(i, j);
            }
        CHECK(exact_rank(m) == oracle::rank(q));
    }
}

TEST_CASE("exact and numeric multiplicity agree") {
    std::mt19937_64 rng(31);
    int exact_seen = 0;
    for (int trial = 0; trial < 80; ++trial) {
        const WeightedGraph g = oracle::random_graph(rng, 3 + trial % 8, 0.5, trial % 2 == 0);
        const double rho = trial % 4 == 0 ? -1.0 : 1.0;
        for (int mu = 0; mu <= 5; ++mu) {
            const auto report = measure_multiplicity(lap(g, rho), EigenvalueSpec::rational(mu));
            REQUIRE(report.exact.has_value());
            ++exact_seen;
            CHECK(*report.exact == oracle::multiplicity_q(oracle::laplacian_q(g, mpq_class(rho)), mu));
            if (!report.unstable) CHECK(report.numeric == *report.exact);
            const auto numeric = measure_multiplicity(lap(g, rho), EigenvalueSpec::rational(mu), 0.0, false);
            CHECK_FALSE(numeric.exact.has_value());
            CHECK(numeric.count == report.numeric);
        }
    }
    CHECK(exact_seen == 480);
}

TEST_CASE("numeric multiplicity matches the jacobi oracle") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        const WeightedGraph g = oracle::random_graph(rng, 4 + trial % 8, 0.5, true);
        const Eigen::MatrixXd l = lap(g);
        const auto ev = oracle::jacobi_eigenvalues(l);
        const double mu = ev[static_cast<std::size_t>(trial) % ev.size()];
        CHECK(multiplicity(l, EigenvalueSpec::real(mu)) == oracle::multiplicity_numeric(l, mu, 1e-7));
    }
}

TEST_CASE("niven values go exact, other trigonometric values do not") {
    const auto sq = measure_multiplicity(lap(cycle_graph(6)), EigenvalueSpec::four_sin_sq(1, 6));  // = 1
    CHECK(sq.exact.has_value());
    CHECK(sq.count == 2);
    const auto irr = measure_multiplicity(lap(cycle_graph(5)), EigenvalueSpec::four_sin_sq(1, 5));
    CHECK_FALSE(irr.exact.has_value());
    CHECK(irr.count == 2);
    // non-dyadic entries: exact rank would be meaningless
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2) * 0.1;
    CHECK_FALSE(measure_multiplicity(m, EigenvalueSpec::rational(1, 10)).exact.has_value());
}

TEST_CASE("instability flag") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(1, 1) = 5e-8;  // inside 10 tol, outside tol/10 at tol = 1e-8
    const auto r = measure_multiplicity(m, EigenvalueSpec::real(0.0), 1e-8, false);
    CHECK(r.unstable);
    const auto stable = measure_multiplicity(lap(path_graph(3)), EigenvalueSpec::real(1.0));
    CHECK_FALSE(stable.unstable);
}

TEST_CASE("multiplicity is permutation invariant") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 30; ++trial) {
        const WeightedGraph g = oracle::random_graph(rng, 7, 0.5, trial % 2 == 0);
        std::vector<int> perm(7);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const WeightedGraph h = permute(g, perm);
        for (int mu = 0; mu <= 4; ++mu) {
            CHECK(multiplicity(lap(g), EigenvalueSpec::rational(mu)) ==
                  multiplicity(lap(h), EigenvalueSpec::rational(mu)));
            CHECK(measure_multiplicity(lap(g), EigenvalueSpec::rational(mu), 0, false).count ==
                  measure_multiplicity(lap(h), EigenvalueSpec::rational(mu), 0, false).count);
        }
    }
}

TEST_CASE("eigenspace basis") {
    const Eigen::MatrixXd p3 = lap(path_graph(3));
    const Eigen::MatrixXd b = eigenspace_basis(p3, EigenvalueSpec::rational(1));
    REQUIRE(b.cols() == 1);
    CHECK(std::abs(b(1, 0)) < 1e-12);
    CHECK(b(0, 0) == doctest::Approx(-b(2, 0)));

    const Eigen::MatrixXd k2 = eigenspace_basis(lap(path_graph(2)), EigenvalueSpec::rational(2));
    REQUIRE(k2.cols() == 1);
    CHECK(std::abs(k2(0, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(k2(0, 0) == doctest::Approx(-k2(1, 0)));

    CHECK(eigenspace_basis(p3, EigenvalueSpec::rational(2)).cols() == 0);

    const Eigen::MatrixXd c6 = lap(cycle_graph(6));
    const Eigen::MatrixXd basis = eigenspace_basis(c6, EigenvalueSpec::four_sin_sq(1, 6));
    REQUIRE(basis.cols() == 2);
    CHECK((basis.transpose() * basis - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-12);
    CHECK((c6 * basis - basis).norm() <= 10 * default_tolerance(c6) * 4.0);
}

TEST_CASE("star basis") {
    const Eigen::MatrixXd c5 = lap(cycle_graph(5));
    const auto mu = EigenvalueSpec::four_sin_sq(1, 5);
    const std::vector<Vertex> u{0, 1};
    const Eigen::MatrixXd b = star_basis(c5, mu, u);
    REQUIRE(b.cols() == 2);
    CHECK(b.row(0).isApprox(Eigen::RowVector2d(1, 0)));
    CHECK(std::abs(b(1, 0)) < 1e-12);
    CHECK(b(1, 1) == doctest::Approx(1.0));
    CHECK((c5 * b - mu.value() * b).norm() < 1e-9);

    const Eigen::MatrixXd star = lap(complete_bipartite(1, 3));
    const std::vector<Vertex> leaves{1, 2};
    const Eigen::MatrixXd s = star_basis(star, EigenvalueSpec::rational(1), leaves);
    CHECK((s.topRows(3).bottomRows(2) - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    // over Q the nullspace of L - I restricted to leaves 1,2 gives (0, 1, 0, -1), (0, 0, 1, -1)
    CHECK(s(3, 0) == doctest::Approx(-1.0));
    CHECK(s(3, 1) == doctest::Approx(-1.0));
    CHECK(std::abs(s(0, 0)) < 1e-12);

    const std::vector<Vertex> middle{1};
    CHECK_THROWS(star_basis(lap(path_graph(3)), EigenvalueSpec::rational(1), middle));
}

TEST_CASE("star sets") {
    const Eigen::MatrixXd p3 = lap(path_graph(3));
    const auto one = EigenvalueSpec::rational(1);
    const std::vector<Vertex> end0{0}, mid{1}, end2{2};
    CHECK(is_star_set(p3, one, end0));
    CHECK(is_star_set(p3, one, end2));
    CHECK_FALSE(is_star_set(p3, one, mid));
    const StarSet s = find_star_set(p3, one);
    CHECK((s.vertices == end0 || s.vertices == end2));
    CHECK(s.certificate_gap > 10 * s.tolerance);

    for (int n = 3; n <= 12; ++n) {
        const Eigen::MatrixXd c = lap(cycle_graph(n));
        for (int k = 1; k < n; ++k) {
            if (2 * k == n) continue;
            const auto mu = EigenvalueSpec::four_sin_sq(k, n);
            for (int v = 0; v < n; ++v) {
                const std::vector<Vertex> adj{v, (v + 1) % n};
                CHECK(is_star_set(c, mu, adj));
            }
        }
    }

    const StarSet k2 = find_star_set(lap(path_graph(2)), EigenvalueSpec::rational(0));
    CHECK(k2.vertices.size() == 1);

    CHECK_THROWS_AS(find_star_set(lap(path_graph(2)), EigenvalueSpec::rational(5)), SpectralError);

    const std::vector<Vertex> required{2};
    const StarSet forced = find_star_set(p3, one, 0.0, required);
    CHECK(forced.vertices == end2);
}

TEST_CASE("star set certificates re-verify") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 40; ++trial) {
        const WeightedGraph g = oracle::random_graph(rng, 4 + trial % 8, 0.4, false);
        const Eigen::MatrixXd l = lap(g);
        const auto ev = oracle::jacobi_eigenvalues(l);
        const auto mu = EigenvalueSpec::real(ev[static_cast<std::size_t>(trial) % ev.size()]);
        const StarSet s = find_star_set(l, mu);
        CHECK(static_cast<int>(s.vertices.size()) == multiplicity(l, mu));
        CHECK(is_star_set(l, mu, s.vertices, s.tolerance));
        // the complement spectrum (Jacobi) keeps its distance from mu
        std::vector<Vertex> keep;
        for (int v = 0; v < g.order(); ++v)
            if (std::find(s.vertices.begin(), s.vertices.end(), v) == s.vertices.end()) keep.push_back(v);
        Eigen::MatrixXd sub(keep.size(), keep.size());
        for (std::size_t i = 0; i < keep.size(); ++i)
            for (std::size_t j = 0; j < keep.size(); ++j) sub(i, j) = l(keep[i], keep[j]);
        for (double x : oracle::jacobi_eigenvalues(sub)) CHECK(std::abs(x - mu.value()) >= s.certificate_gap - 1e-10);
    }
}

TEST_CASE("path eigenpairs") {
    const auto [mu, v] = path_eigenpair(3, 2, false);
    CHECK(mu.value() == doctest::Approx(1.0));
    CHECK(v(0) == doctest::Approx(std::cos(M_PI / 6)));
    CHECK(std::abs(v(1)) < 1e-15);
    CHECK(v(2) == doctest::Approx(std::cos(5 * M_PI / 6)));

    for (int k = 1; k <= 6; ++k)
        for (int t = 1; 2 * t <= 2 * k + 1; ++t) {
            const auto pair = path_eigenpair(2 * k + 1, 2 * t, false);
            CHECK(std::abs(pair.second(k)) < 1e-12);
        }

    CHECK_THROWS(path_eigenpair(3, 0, false));
    CHECK_THROWS(path_eigenpair(3, 4, false));

    for (int n = 1; n <= 50; ++n) {
        const Eigen::MatrixXd l = lap(path_graph(n));
        const Eigen::MatrixXd q = lap(path_graph(n), -1.0);
        for (int j = 1; j <= n; ++j) {
            const auto [m1, vl] = path_eigenpair(n, j, false);
            const auto [m2, wq] = path_eigenpair(n, j, true);
            CHECK((l * vl - m1.value() * vl).norm() <= 1e-10);
            CHECK((q * wq - m2.value() * wq).norm() <= 1e-10);
            for (int u = 0; u < n; ++u) CHECK(wq(u) == doctest::Approx((u % 2 == 0 ? -1 : 1) * vl(u)));
        }
    }
}

TEST_CASE("closed-form path and cycle spectra") {
    for (int n = 2; n <= 50; ++n) {
        const Eigen::VectorXd p = eigendecompose(lap(path_graph(n))).values();
        const Eigen::VectorXd c = eigendecompose(lap(cycle_graph(n))).values();
        std::vector<double> pe, ce;
        for (int j = 1; j <= n; ++j) pe.push_back(4 * std::pow(std::cos(j * M_PI / (2 * n)), 2));
        for (int k = 0; k < n; ++k) ce.push_back(4 * std::pow(std::sin(k * M_PI / n), 2));
        std::sort(pe.begin(), pe.end());
        std::sort(ce.begin(), ce.end());
        for (int i = 0; i < n; ++i) {
            CHECK(std::abs(p(i) - pe[i]) <= 1e-8);
            CHECK(std::abs(c(i) - ce[i]) <= 1e-8);
        }
    }
}

TEST_CASE("eigenvalue text round trip") {
    for (const std::string text : {"4cos2(1,7)", "4sin2(2,5)", "3/4", "-2", "0", "2.5"}) {
        CHECK(to_string(parse_eigenvalue(text)) == text);
    }
    CHECK(parse_eigenvalue("6/8") == EigenvalueSpec::rational(3, 4));
    CHECK(parse_eigenvalue("4cos2(1,3)").exact_value() == Rational(1));
    CHECK(parse_eigenvalue("4sin2(1,4)").exact_value() == Rational(2));
    CHECK_FALSE(parse_eigenvalue("4cos2(1,5)").exact_value().has_value());
    CHECK_THROWS_AS(parse_eigenvalue("4cos2(3,3)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_eigenvalue("4sin2(5,5)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_eigenvalue("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_eigenvalue("abc"), std::invalid_argument);
    CHECK(EigenvalueSpec::four_cos_sq(1, 5).value() == doctest::Approx(2.618033988749895));
    CHECK(EigenvalueSpec::four_cos_sq(2, 5).value() == doctest::Approx(0.381966011250105));
}
