#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace spectre {

using Vertex = int;

/**
 * Weighted graph with loops, i.e. the graph view of a real symmetric matrix.
 *
 * Only pairs (i, j) with i <= j are stored, so symmetry is structural. A loop
 * at i is stored once with its own weight w and contributes 2w to A_ii.
 * Adding a weight to an existing pair accumulates (multi-edges collapse by
 * summing); a pair whose weight becomes exactly zero is erased.
 */
class WeightedGraph {
public:
    using Key = std::pair<Vertex, Vertex>;

    WeightedGraph() = default;
    explicit WeightedGraph(int order);

    /// Builds the unique graph whose adjacency matrix is `adjacency`.
    static WeightedGraph from_adjacency(const Eigen::MatrixXd& adjacency);

    int order() const noexcept { return order_; }
    std::size_t size() const noexcept { return weights_.size(); }

    void add_weight(Vertex u, Vertex v, double w);
    void set_weight(Vertex u, Vertex v, double w);
    void remove_edge(Vertex u, Vertex v);

    double weight(Vertex u, Vertex v) const;
    bool has_edge(Vertex u, Vertex v) const { return weight(u, v) != 0.0; }

    const std::map<Key, double>& weights() const noexcept { return weights_; }

    /// Distinct neighbours of v, loops excluded, ascending.
    std::vector<Vertex> neighbors(Vertex v) const;
    int degree(Vertex v) const;

    /// No loops and every weight equal to 1.
    bool is_simple() const;

    bool operator==(const WeightedGraph&) const = default;

private:
    void check_vertex(Vertex v) const;
    static Key key(Vertex u, Vertex v) { return u <= v ? Key{u, v} : Key{v, u}; }

    int order_ = 0;
    std::map<Key, double> weights_;
};

/// A_ij = weight(i, j) for i != j, A_ii = 2 * loop weight.
Eigen::MatrixXd adjacency(const WeightedGraph& g);

/// D(M): diagonal matrix of the row sums of a (possibly rectangular) matrix.
Eigen::MatrixXd row_sum_diagonal(const Eigen::MatrixXd& m);

/// L = D(A) - rho * A for a symmetric A and nonzero rho.
class GeneralizedLaplacian {
public:
    GeneralizedLaplacian(Eigen::MatrixXd adjacency, double rho);
    GeneralizedLaplacian(const WeightedGraph& g, double rho);

    const Eigen::MatrixXd& adjacency() const noexcept { return adjacency_; }
    const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
    double rho() const noexcept { return rho_; }
    int order() const noexcept { return static_cast<int>(matrix_.rows()); }

private:
    Eigen::MatrixXd adjacency_;
    double rho_;
    Eigen::MatrixXd matrix_;
};

GeneralizedLaplacian generalized_laplacian(const WeightedGraph& g, double rho);

/// The matrix L^rho_A for an arbitrary symmetric A (no graph round trip).
Eigen::MatrixXd laplacian_matrix(const Eigen::MatrixXd& a, double rho);

/**
 * Solves L^rho_M = T for a symmetric M.
 *
 * Off-diagonal M_ij = -T_ij / rho. For rho != 1 the diagonal follows from
 * (1 - rho) M_ii = T_ii - sum_{j != i} M_ij. For rho == 1 the diagonal is free
 * and set to zero, but every row of T must sum to zero.
 */
Eigen::MatrixXd inverse_generalized_laplacian(const Eigen::MatrixXd& t, double rho);

/// Named disjoint vertex blocks covering [0, n).
class IndexPartition {
public:
    IndexPartition() = default;
    IndexPartition(int order, std::vector<std::pair<std::string, std::vector<Vertex>>> blocks);

    int order() const noexcept { return order_; }
    const std::vector<std::pair<std::string, std::vector<Vertex>>>& blocks() const noexcept {
        return blocks_;
    }
    const std::vector<Vertex>& block(const std::string& name) const;

private:
    int order_ = 0;
    std::vector<std::pair<std::string, std::vector<Vertex>>> blocks_;
};

// Constructors for the graph families and compositions the reductions work with.

WeightedGraph empty_graph(int n);
WeightedGraph path_graph(int n);
/// C_n for n >= 3; C_2 is the double edge, i.e. one pair of weight 2.
WeightedGraph cycle_graph(int n);
/// S_k: the star on k vertices, centre 0.
WeightedGraph star_graph(int k);
WeightedGraph complete_graph(int n);
WeightedGraph complete_bipartite(int a, int b);

/// g1 followed by g2 (g2's vertices shifted by g1.order()).
WeightedGraph disjoint_union(const WeightedGraph& g1, const WeightedGraph& g2);

/// g1 # g2: disjoint union plus the edge {u, v + n1} of weight w.
WeightedGraph connected_sum(const WeightedGraph& g1, const WeightedGraph& g2, Vertex u, Vertex v,
                            double w = 1.0);

/// Appends k vertices forming a path; the first new vertex is joined to v.
WeightedGraph attach_pendant_path(const WeightedGraph& g, Vertex v, int k);

/// Appends r independent vertices, each joined to every vertex of `neighbors`.
WeightedGraph plant_cluster(const WeightedGraph& g, std::span<const Vertex> neighbors, int r);

/**
 * Replaces an internal path of degree-2 vertices by a single unit edge
 * between its two outside attachment vertices. Remaining vertices keep their
 * relative order.
 */
WeightedGraph contract_internal_path(const WeightedGraph& g, std::span<const Vertex> path);

/// Inverse of contract_internal_path: removes one unit of weight from {u, v}
/// and inserts a fresh path of n vertices between u and v.
WeightedGraph subdivide_edge(const WeightedGraph& g, Vertex u, Vertex v, int n);

/**
 * Splits v into `copies` vertices v_0..v_{t-1}.
 *
 * `leaf_assignment` maps neighbours of v to a copy index; each such neighbour
 * keeps its edge weight, now to its assigned copy. Neighbours of v that are
 * not assigned form the branch H: the components of g - v containing them are
 * replicated once per copy, as is any loop at v. Vertices outside H keep their
 * relative order and come first; copy j follows as v_j and then its H copy.
 */
WeightedGraph split_vertex(const WeightedGraph& g, Vertex v, int copies,
                           const std::map<Vertex, int>& leaf_assignment);

/// Relabels: vertex i of g becomes perm[i].
WeightedGraph permute(const WeightedGraph& g, std::span<const int> perm);

/// Induced subgraph on `vertices`, relabelled in the given order.
WeightedGraph induced_subgraph(const WeightedGraph& g, std::span<const Vertex> vertices);

/// Connected components (loops ignored), each ascending, ordered by least vertex.
std::vector<std::vector<Vertex>> connected_components(const WeightedGraph& g);

/// Backtracking isomorphism test for weighted graphs; intended for small instances.
bool isomorphic(const WeightedGraph& a, const WeightedGraph& b);

}  // namespace spectre
