#include "spectre/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "spectre/exact.hpp"

namespace spectre {

double default_tolerance(const Eigen::MatrixXd& m) {
    const double norm_inf = m.size() ? m.cwiseAbs().rowwise().sum().maxCoeff() : 0.0;
    return std::max(1e-8, 1e-12 * static_cast<double>(m.rows()) * norm_inf);
}

double resolve_tolerance(const Eigen::MatrixXd& m, double tol) { return tol > 0.0 ? tol : default_tolerance(m); }

EigenSummary cluster_eigenvalues(const Eigen::VectorXd& values, double tol) {
    EigenSummary s;
    s.tolerance = tol;
    double sum = 0.0;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        const double x = values(i);
        if (!s.clusters.empty() && std::abs(x - s.clusters.back().value) <= tol) {
            auto& c = s.clusters.back();
            sum += x;
            ++c.multiplicity;
            c.value = sum / c.multiplicity;
        } else {
            s.clusters.push_back({x, 1});
            sum = x;
        }
    }
    s.min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < s.clusters.size(); ++i)
        s.min_gap = std::min(s.min_gap, s.clusters[i].value - s.clusters[i - 1].value);
    return s;
}

Eigendecomposition::Eigendecomposition(Eigen::VectorXd values, Eigen::MatrixXd vectors, double tol)
    : values_(std::move(values)), vectors_(std::move(vectors)), summary_(cluster_eigenvalues(values_, tol)) {
    Eigen::Index start = 0;
    for (const auto& c : summary_.clusters) {
        starts_.push_back(start);
        start += c.multiplicity;
    }
}

std::optional<std::size_t> Eigendecomposition::find_cluster(double x) const {
    std::optional<std::size_t> best;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < summary_.clusters.size(); ++c) {
        const double d = std::abs(summary_.clusters[c].value - x);
        if (d <= summary_.tolerance && d < best_dist) {
            best = c;
            best_dist = d;
        }
    }
    return best;
}

int Eigendecomposition::multiplicity_of(double x) const {
    const auto c = find_cluster(x);
    return c ? summary_.clusters[*c].multiplicity : 0;
}

Eigen::MatrixXd Eigendecomposition::cluster_basis(std::size_t cluster) const {
    return vectors_.middleCols(starts_.at(cluster), summary_.clusters.at(cluster).multiplicity);
}

Eigendecomposition eigendecompose(const Eigen::MatrixXd& m, double tol) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eigendecompose: matrix must be square");
    if (m.size() == 0) return Eigendecomposition(Eigen::VectorXd(), Eigen::MatrixXd(), resolve_tolerance(m, tol));
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::invalid_argument("eigendecompose: matrix is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw SpectralError("eigendecompose: eigensolver did not converge");
    return Eigendecomposition(solver.eigenvalues(), solver.eigenvectors(), resolve_tolerance(m, tol));
}

MultiplicityReport measure_multiplicity(const Eigen::MatrixXd& m, const EigenvalueSpec& mu, double tol,
                                        bool allow_exact) {
    MultiplicityReport r;
    r.tolerance = resolve_tolerance(m, tol);
    const double x = mu.value();
    const Eigendecomposition eig = eigendecompose(m, r.tolerance);
    r.numeric = eig.multiplicity_of(x);
    const Eigendecomposition fine(eig.values(), Eigen::MatrixXd(), r.tolerance / 10.0);
    const Eigendecomposition coarse(eig.values(), Eigen::MatrixXd(), r.tolerance * 10.0);
    r.unstable = fine.multiplicity_of(x) != r.numeric || coarse.multiplicity_of(x) != r.numeric;
    r.count = r.numeric;
    if (allow_exact) {
        if (const auto q = mu.exact_value(); q && exactly_representable(m)) {
            r.exact = exact_multiplicity(to_rational(m), to_mpq(*q));
            r.count = *r.exact;
        }
    }
    return r;
}

int multiplicity(const Eigen::MatrixXd& m, const EigenvalueSpec& mu, double tol) {
    return measure_multiplicity(m, mu, tol).count;
}

Eigen::MatrixXd eigenspace_basis(const Eigen::MatrixXd& m, const EigenvalueSpec& mu, double tol) {
    const Eigendecomposition eig = eigendecompose(m, tol);
    const auto c = eig.find_cluster(mu.value());
    if (!c) return Eigen::MatrixXd(m.rows(), 0);
    return eig.cluster_basis(*c);
}

double complement_gap(const Eigen::MatrixXd& m, double mu, std::span<const Vertex> u) {
    const Eigen::Index n = m.rows();
    std::vector<char> removed(static_cast<std::size_t>(n), 0);
    for (Vertex v : u) {
        if (v < 0 || v >= n) throw std::out_of_range("complement_gap: vertex out of range");
        removed[static_cast<std::size_t>(v)] = 1;
    }
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < n; ++i)
        if (!removed[static_cast<std::size_t>(i)]) keep.push_back(i);
    if (keep.empty()) return std::numeric_limits<double>::infinity();
    const Eigen::MatrixXd sub = m(keep, keep);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sub, Eigen::EigenvaluesOnly);
    return (solver.eigenvalues().array() - mu).abs().minCoeff();
}

bool is_star_set(const Eigen::MatrixXd& m, const EigenvalueSpec& mu, std::span<const Vertex> u, double tol) {
    tol = resolve_tolerance(m, tol);
    const int k = eigendecompose(m, tol).multiplicity_of(mu.value());
    if (k == 0 || static_cast<int>(u.size()) != k) return false;
    std::vector<Vertex> sorted(u.begin(), u.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    return complement_gap(m, mu.value(), u) > 10.0 * tol;
}

namespace {

// Column-pivoted Gram-Schmidt on the rows of `basis`; forced rows go first.
std::optional<std::vector<Vertex>> max_volume_rows(const Eigen::MatrixXd& basis, std::span<const Vertex> forced) {
    const Eigen::Index n = basis.rows();
    const Eigen::Index k = basis.cols();
    Eigen::MatrixXd w = basis.transpose();  // k x n, columns are vertices
    std::vector<char> taken(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> chosen;
    const double floor = static_cast<double>(n) * std::numeric_limits<double>::epsilon();
    for (Eigen::Index step = 0; step < k; ++step) {
        Eigen::Index pick = -1;
        if (static_cast<std::size_t>(step) < forced.size()) {
            pick = forced[static_cast<std::size_t>(step)];
        } else {
            double best = -1.0;
            for (Eigen::Index c = 0; c < n; ++c) {
                if (taken[static_cast<std::size_t>(c)]) continue;
                const double norm = w.col(c).norm();
                if (norm > best) {
                    best = norm;
                    pick = c;
                }
            }
        }
        if (pick < 0 || taken[static_cast<std::size_t>(pick)]) return std::nullopt;
        const double norm = w.col(pick).norm();
        if (norm <= floor) return std::nullopt;
        const Eigen::VectorXd q = w.col(pick) / norm;
        w -= q * (q.transpose() * w);
        taken[static_cast<std::size_t>(pick)] = 1;
        chosen.push_back(static_cast<Vertex>(pick));
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

bool next_combination(std::vector<Vertex>& c, int n) {
    const int k = static_cast<int>(c.size());
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return false;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    return true;
}

}  // namespace

StarSet find_star_set(const Eigen::MatrixXd& m, const EigenvalueSpec& mu, double tol, std::span<const Vertex> required) {
    tol = resolve_tolerance(m, tol);
    const double x = mu.value();
    const Eigendecomposition eig = eigendecompose(m, tol);
    const auto cluster = eig.find_cluster(x);
    if (!cluster) throw SpectralError("find_star_set: " + to_string(mu) + " is not an eigenvalue");
    const Eigen::MatrixXd basis = eig.cluster_basis(*cluster);
    const int n = static_cast<int>(m.rows());
    const int k = static_cast<int>(basis.cols());

    std::vector<Vertex> req(required.begin(), required.end());
    std::sort(req.begin(), req.end());
    if (std::adjacent_find(req.begin(), req.end()) != req.end()) {
        throw std::invalid_argument("find_star_set: repeated required vertex");
    }
    for (Vertex v : req)
        if (v < 0 || v >= n) throw std::out_of_range("find_star_set: required vertex out of range");
    if (static_cast<int>(req.size()) > k) {
        throw SpectralError("find_star_set: more required vertices than the multiplicity");
    }

    const double threshold = 10.0 * tol;
    if (auto greedy = max_volume_rows(basis, required)) {
        const double gap = complement_gap(m, x, *greedy);
        if (gap > threshold) return StarSet{mu, *greedy, gap, tol, true};
    }

    if (n > 20) throw SpectralError("find_star_set: greedy selection failed and n > 20 rules out exhaustive search");
    std::vector<Vertex> free;
    for (Vertex v = 0; v < n; ++v)
        if (!std::binary_search(req.begin(), req.end(), v)) free.push_back(v);
    const int extra = k - static_cast<int>(req.size());
    std::vector<Vertex> pick(static_cast<std::size_t>(extra));
    for (int i = 0; i < extra; ++i) pick[static_cast<std::size_t>(i)] = i;
    do {
        std::vector<Vertex> u = req;
        for (Vertex p : pick) u.push_back(free[static_cast<std::size_t>(p)]);
        std::sort(u.begin(), u.end());
        const double gap = complement_gap(m, x, u);
        if (gap > threshold) return StarSet{mu, u, gap, tol, false};
    } while (extra > 0 && next_combination(pick, static_cast<int>(free.size())));
    throw SpectralError("find_star_set: no certifiable star set for " + to_string(mu));
}

Eigen::MatrixXd star_basis(const Eigen::MatrixXd& m, const EigenvalueSpec& mu, std::span<const Vertex> u, double tol) {
    tol = resolve_tolerance(m, tol);
    if (!is_star_set(m, mu, u, tol)) throw SpectralError("star_basis: not a star set");
    const Eigen::MatrixXd v = eigenspace_basis(m, mu, tol);
    const Eigen::Index n = v.rows();
    std::vector<Eigen::Index> rows(u.begin(), u.end());
    const Eigen::MatrixXd block = v(rows, Eigen::all);  // k x k
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(block);
    const auto& sv = svd.singularValues();
    const double eps = std::numeric_limits<double>::epsilon();
    if (sv.size() == 0 || sv(sv.size() - 1) <= static_cast<double>(n) * eps * std::max(1.0, sv(0))) {
        throw SpectralError("star_basis: not a star set (singular U-block)");
    }
    // B = V W^{-1}  <=>  W^T B^T = V^T
    Eigen::MatrixXd b = block.transpose().fullPivLu().solve(v.transpose()).transpose();
    for (std::size_t s = 0; s < rows.size(); ++s)
        for (std::size_t t = 0; t < rows.size(); ++t)
            b(rows[t], static_cast<Eigen::Index>(s)) = (s == t) ? 1.0 : 0.0;
    return b;
}

std::pair<EigenvalueSpec, Eigen::VectorXd> path_eigenpair(int n, int j, bool signless) {
    if (n < 1 || j < 1 || j > n) throw std::out_of_range("path_eigenpair: need 1 <= j <= n");
    Eigen::VectorXd v(n);
    for (int u = 1; u <= n; ++u) {
        const double angle = static_cast<double>(n - j) * (2.0 * u - 1.0) * std::numbers::pi / (2.0 * n);
        v(u - 1) = std::cos(angle);
        if (signless && (u % 2 == 1)) v(u - 1) = -v(u - 1);
    }
    return {EigenvalueSpec::four_cos_sq(j, 2 * n), v};
}

}  // namespace spectre
