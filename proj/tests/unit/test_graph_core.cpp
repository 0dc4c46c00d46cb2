#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "spectre/graph.hpp"
#include "spectre/spectral.hpp"

using namespace spectre;

namespace {

WeightedGraph k3() { return complete_graph(3); }

}  // namespace

TEST_CASE("adjacency") {
    const Eigen::MatrixXd a = adjacency(k3());
    Eigen::MatrixXd expected = Eigen::MatrixXd::Ones(3, 3);
    expected.diagonal().setZero();
    CHECK(a == expected);

    WeightedGraph loop(1);
    loop.add_weight(0, 0, 1.0);
    CHECK(adjacency(loop)(0, 0) == 2.0);

    CHECK(adjacency(empty_graph(2)).isZero());
}

TEST_CASE("weights accumulate and vanish") {
    WeightedGraph g(3);
    g.add_weight(0, 1, 2.0);
    g.add_weight(1, 0, -0.5);
    CHECK(g.weight(0, 1) == 1.5);
    CHECK(g.weight(1, 0) == 1.5);
    g.add_weight(0, 1, -1.5);
    CHECK_FALSE(g.has_edge(0, 1));
    CHECK(g.size() == 0);
    CHECK_THROWS(g.add_weight(0, 3, 1.0));
    CHECK_THROWS(g.add_weight(-1, 0, 1.0));
}

TEST_CASE("generalized laplacian") {
    const WeightedGraph k2 = path_graph(2);
    Eigen::Matrix2d lap;
    lap << 1, -1, -1, 1;
    CHECK(generalized_laplacian(k2, 1.0).matrix() == Eigen::MatrixXd(lap));
    CHECK(generalized_laplacian(k2, -1.0).matrix() == Eigen::MatrixXd::Ones(2, 2));
    CHECK_THROWS_AS(generalized_laplacian(k2, 0.0), std::invalid_argument);

    const auto ev = oracle::jacobi_eigenvalues(generalized_laplacian(path_graph(3), 1.0).matrix());
    REQUIRE(ev.size() == 3);
    CHECK(ev[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ev[2] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("laplacian matches the naive builder, loops included") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        WeightedGraph g = oracle::random_graph(rng, 2 + trial % 7, 0.5, trial % 2 == 0);
        if (trial % 3 == 0) g.add_weight(0, 0, 1.5);
        for (double rho : {1.0, -1.0, 2.0, -0.5}) {
            const Eigen::MatrixXd l = generalized_laplacian(g, rho).matrix();
            CHECK((l - oracle::laplacian(g, rho)).cwiseAbs().maxCoeff() == 0.0);
            CHECK(l == l.transpose());
        }
    }
}

TEST_CASE("nonnegative simple graphs have zero laplacian row sums") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const WeightedGraph g = oracle::random_graph(rng, 6, 0.5, false);
        CHECK(generalized_laplacian(g, 1.0).matrix().rowwise().sum().isZero(0.0));
    }
}

TEST_CASE("connected sum") {
    const WeightedGraph p4 = connected_sum(path_graph(2), path_graph(2), 1, 0);
    CHECK(isomorphic(p4, path_graph(4)));
    CHECK(p4.order() == 4);
    CHECK_THROWS(connected_sum(path_graph(2), path_graph(2), 2, 0));
    CHECK_THROWS(connected_sum(path_graph(2), path_graph(2), 0, 0, 0.0));
}

TEST_CASE("pendant paths and clusters") {
    CHECK(isomorphic(attach_pendant_path(star_graph(4), 0, 1), star_graph(5)));

    WeightedGraph c4 = cycle_graph(4);
    c4 = attach_pendant_path(attach_pendant_path(c4, 0, 2), 0, 2);
    CHECK(oracle::pendant_scan(c4, 2) == std::pair{2, 1});
    CHECK_THROWS(attach_pendant_path(c4, 99, 1));

    // K4 plus a pendant P3: p3 = q3 = 1, so the bound at 4cos^2(pi/7) is 0, and
    // the spectrum confirms it is not attained (no eigenvalue there at all)
    const WeightedGraph g = attach_pendant_path(complete_graph(4), 0, 3);
    const double mu = 4.0 * std::pow(std::cos(M_PI / 7.0), 2);
    CHECK(oracle::multiplicity_numeric(oracle::laplacian(g, 1.0), mu) == 0);
    CHECK(multiplicity(generalized_laplacian(g, 1.0).matrix(), EigenvalueSpec::four_cos_sq(1, 7)) == 0);

    const std::vector<Vertex> one{0};
    const WeightedGraph planted = plant_cluster(path_graph(2), one, 3);
    CHECK(oracle::multiplicity_q(oracle::laplacian_q(planted, 1), 1) >= 2);
    CHECK_THROWS(plant_cluster(path_graph(2), one, 1));

    const std::vector<Vertex> edge{0, 1};
    const WeightedGraph c4c = plant_cluster(cycle_graph(4), edge, 2);
    CHECK(oracle::multiplicity_q(oracle::laplacian_q(c4c, 1), 2) >= 1);

    for (int r = 2; r <= 6; ++r) {
        const WeightedGraph star = plant_cluster(empty_graph(1), one, r);
        CHECK(isomorphic(star, complete_bipartite(1, r)));
        CHECK(oracle::multiplicity_numeric(oracle::laplacian(star, 1.0), 1.0) == r - 1);
    }
}

TEST_CASE("contract internal path") {
    const std::vector<Vertex> run{1, 2, 3};
    CHECK(isomorphic(contract_internal_path(cycle_graph(7), run), cycle_graph(4)));

    // u - 4 path vertices - v, inside a host so u and v differ
    WeightedGraph host = complete_graph(4);
    const WeightedGraph g = subdivide_edge(host, 0, 1, 4);
    const std::vector<Vertex> path{4, 5, 6, 7};
    const WeightedGraph back = contract_internal_path(g, path);
    CHECK(isomorphic(back, host));
    // mu = 4sin^2(pi/4) = 2, exact on both sides
    CHECK(oracle::multiplicity_q(oracle::laplacian_q(g, 1), 2) ==
          oracle::multiplicity_q(oracle::laplacian_q(back, 1), 2));

    const std::vector<Vertex> bad{0, 4};
    CHECK_THROWS(contract_internal_path(g, bad));
    // the whole cycle minus one vertex: both ends attach to the same vertex
    const std::vector<Vertex> around{1, 2, 3};
    CHECK_THROWS(contract_internal_path(cycle_graph(4), around));
}

TEST_CASE("contract then re-expand is an isomorphism") {
    std::mt19937_64 rng(21);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        WeightedGraph host = oracle::random_graph(rng, 4, 0.6, false);
        if (host.size() == 0) continue;
        const auto [u, v] = host.weights().begin()->first;
        const int n = 1 + trial % 5;
        const WeightedGraph g = subdivide_edge(host, u, v, n);
        if (g.order() > 10) continue;
        std::vector<Vertex> path;
        for (int i = 0; i < n; ++i) path.push_back(host.order() + i);
        const WeightedGraph contracted = contract_internal_path(g, path);
        CHECK(isomorphic(contracted, host));
        CHECK(isomorphic(subdivide_edge(contracted, u, v, n), g));
        ++checked;
    }
    CHECK(checked > 20);
}

TEST_CASE("split with one copy is an isomorphism") {
    // L and a branch H joined through v; v's L-neighbours go to the single copy
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        WeightedGraph l = oracle::random_graph(rng, 5, 0.45, trial % 2 == 1);
        const Vertex v = trial % 5;
        l.set_weight(v, (v + 1) % 5, 1.0);
        const WeightedGraph h = oracle::random_graph(rng, 1 + trial % 4, 0.6, false);
        const WeightedGraph g = connected_sum(l, h, v, 0);
        std::map<Vertex, int> assignment;
        for (Vertex w : l.neighbors(v)) assignment[w] = 0;
        CHECK(isomorphic(split_vertex(g, v, 1, assignment), g));
        // with no branch at all the whole neighbourhood is assigned
        std::map<Vertex, int> all;
        for (Vertex w : g.neighbors(v)) all[w] = 0;
        CHECK(isomorphic(split_vertex(g, v, 1, all), g));
    }
    CHECK_THROWS(split_vertex(path_graph(3), 1, 1, {}));
}

TEST_CASE("split copies the branch") {
    // v with two pendant P2 paths (branch) and neighbours 1, 2 in L
    WeightedGraph g = path_graph(3);  // 0 - 1 - 2, v = 1
    g = attach_pendant_path(g, 1, 2);
    std::map<Vertex, int> assignment{{0, 0}, {2, 1}};
    const WeightedGraph e = split_vertex(g, 1, 2, assignment);
    CHECK(e.order() == 2 + 2 * 3);
    CHECK(connected_components(e).size() == 2);
    CHECK_THROWS(split_vertex(g, 1, 0, assignment));
}

TEST_CASE("inverse generalized laplacian") {
    CHECK(inverse_generalized_laplacian(Eigen::MatrixXd::Zero(3, 3), 2.0).isZero());

    Eigen::Matrix2d t;
    t << 1, -2, -2, 1;
    const Eigen::MatrixXd m = inverse_generalized_laplacian(t, 2.0);
    CHECK(m(0, 1) == 1.0);
    CHECK(m(0, 0) == 0.0);
    CHECK(m(1, 1) == 0.0);
    CHECK(laplacian_matrix(m, 2.0) == Eigen::MatrixXd(t));

    Eigen::Matrix2d bad;
    bad << 1, 0, 0, 1;
    CHECK_THROWS_AS(inverse_generalized_laplacian(bad, 1.0), std::domain_error);
    CHECK_THROWS(inverse_generalized_laplacian(bad, 0.0));
}

TEST_CASE("inverse laplacian round trip") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        WeightedGraph g = oracle::random_graph(rng, 2 + trial % 6, 0.6, true);
        if (trial % 4 == 0) g.add_weight(trial % g.order(), trial % g.order(), 2.0);
        const Eigen::MatrixXd a = adjacency(g);
        for (double rho : {-1.0, 2.0, -0.5, 3.0}) {
            const Eigen::MatrixXd back = inverse_generalized_laplacian(generalized_laplacian(g, rho).matrix(), rho);
            CHECK((back - a).cwiseAbs().maxCoeff() <= 1e-12);
        }
        const Eigen::MatrixXd back = inverse_generalized_laplacian(generalized_laplacian(g, 1.0).matrix(), 1.0);
        Eigen::MatrixXd off = a;
        off.diagonal().setZero();
        CHECK(back == off);
    }
}

TEST_CASE("index partition") {
    IndexPartition p(4, {{"I", {0, 2}}, {"J", {1, 3}}});
    CHECK(p.block("J") == std::vector<Vertex>{1, 3});
    CHECK_THROWS(IndexPartition(3, {{"I", {0, 1}}, {"J", {1, 2}}}));
    CHECK_THROWS(IndexPartition(3, {{"I", {0, 1}}}));
}
