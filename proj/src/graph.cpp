#include "spectre/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace spectre {

WeightedGraph::WeightedGraph(int order) : order_(order) {
    if (order < 0) throw std::invalid_argument("graph order must be nonnegative");
}

WeightedGraph WeightedGraph::from_adjacency(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("adjacency matrix must be square");
    const int n = static_cast<int>(a.rows());
    WeightedGraph g(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            if (a(i, j) != a(j, i)) throw std::invalid_argument("adjacency matrix must be symmetric");
            const double w = (i == j) ? a(i, i) / 2.0 : a(i, j);
            if (w != 0.0) g.weights_[{i, j}] = w;
        }
    }
    return g;
}

void WeightedGraph::check_vertex(Vertex v) const {
    if (v < 0 || v >= order_) {
        throw std::out_of_range("vertex " + std::to_string(v) + " outside [0, " +
                                std::to_string(order_) + ")");
    }
}

void WeightedGraph::add_weight(Vertex u, Vertex v, double w) {
    check_vertex(u);
    check_vertex(v);
    if (w == 0.0) return;
    auto [it, inserted] = weights_.try_emplace(key(u, v), w);
    if (!inserted) {
        it->second += w;
        if (it->second == 0.0) weights_.erase(it);
    }
}

void WeightedGraph::set_weight(Vertex u, Vertex v, double w) {
    check_vertex(u);
    check_vertex(v);
    if (w == 0.0) {
        weights_.erase(key(u, v));
    } else {
        weights_[key(u, v)] = w;
    }
}

void WeightedGraph::remove_edge(Vertex u, Vertex v) { set_weight(u, v, 0.0); }

double WeightedGraph::weight(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    auto it = weights_.find(key(u, v));
    return it == weights_.end() ? 0.0 : it->second;
}

std::vector<Vertex> WeightedGraph::neighbors(Vertex v) const {
    check_vertex(v);
    std::vector<Vertex> out;
    for (const auto& [k, w] : weights_) {
        if (k.first == k.second) continue;
        if (k.first == v) out.push_back(k.second);
        else if (k.second == v) out.push_back(k.first);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int WeightedGraph::degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

bool WeightedGraph::is_simple() const {
    return std::all_of(weights_.begin(), weights_.end(), [](const auto& kv) {
        return kv.first.first != kv.first.second && kv.second == 1.0;
    });
}

Eigen::MatrixXd adjacency(const WeightedGraph& g) {
    const int n = g.order();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [k, w] : g.weights()) {
        const auto [i, j] = k;
        if (i == j) {
            a(i, i) = 2.0 * w;
        } else {
            a(i, j) = w;
            a(j, i) = w;
        }
    }
    return a;
}

Eigen::MatrixXd row_sum_diagonal(const Eigen::MatrixXd& m) {
    Eigen::VectorXd sums = m.rowwise().sum();
    return sums.asDiagonal();
}

Eigen::MatrixXd laplacian_matrix(const Eigen::MatrixXd& a, double rho) {
    if (a.rows() != a.cols()) throw std::invalid_argument("laplacian_matrix: matrix must be square");
    return row_sum_diagonal(a) - rho * a;
}

GeneralizedLaplacian::GeneralizedLaplacian(Eigen::MatrixXd a, double rho)
    : adjacency_(std::move(a)), rho_(rho) {
    if (rho == 0.0) throw std::invalid_argument("generalized Laplacian requires rho != 0");
    if (adjacency_.rows() != adjacency_.cols()) {
        throw std::invalid_argument("generalized Laplacian requires a square matrix");
    }
    const double scale = adjacency_.size() ? std::max(1.0, adjacency_.cwiseAbs().maxCoeff()) : 1.0;
    if (adjacency_.size() && (adjacency_ - adjacency_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::invalid_argument("generalized Laplacian requires a symmetric matrix");
    }
    adjacency_ = (0.5 * (adjacency_ + adjacency_.transpose())).eval();
    matrix_ = laplacian_matrix(adjacency_, rho_);
}

GeneralizedLaplacian::GeneralizedLaplacian(const WeightedGraph& g, double rho)
    : GeneralizedLaplacian(spectre::adjacency(g), rho) {}

GeneralizedLaplacian generalized_laplacian(const WeightedGraph& g, double rho) {
    return GeneralizedLaplacian(g, rho);
}

Eigen::MatrixXd inverse_generalized_laplacian(const Eigen::MatrixXd& t, double rho) {
    if (rho == 0.0) throw std::invalid_argument("inverse_generalized_laplacian: rho must be nonzero");
    if (t.rows() != t.cols()) throw std::invalid_argument("inverse_generalized_laplacian: T must be square");
    const Eigen::Index n = t.rows();
    Eigen::MatrixXd m = -t / rho;
    m.diagonal().setZero();
    if (rho == 1.0) {
        const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
        for (Eigen::Index i = 0; i < n; ++i) {
            if (std::abs(t.row(i).sum()) > 1e-10 * scale * static_cast<double>(n)) {
                throw std::domain_error("inverse_generalized_laplacian: rho = 1 requires zero row sums (row " +
                                        std::to_string(i) + ")");
            }
        }
        return m;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        const double off = m.row(i).sum();
        m(i, i) = (t(i, i) - off) / (1.0 - rho);
    }
    return m;
}

IndexPartition::IndexPartition(int order, std::vector<std::pair<std::string, std::vector<Vertex>>> blocks)
    : order_(order), blocks_(std::move(blocks)) {
    std::vector<int> seen(static_cast<std::size_t>(order), 0);
    for (const auto& [name, block] : blocks_) {
        for (Vertex v : block) {
            if (v < 0 || v >= order) throw std::invalid_argument("partition block " + name + " has invalid vertex");
            if (seen[static_cast<std::size_t>(v)]++) {
                throw std::invalid_argument("partition blocks overlap at vertex " + std::to_string(v));
            }
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
        throw std::invalid_argument("partition blocks do not cover every vertex");
    }
}

const std::vector<Vertex>& IndexPartition::block(const std::string& name) const {
    for (const auto& [n, b] : blocks_) {
        if (n == name) return b;
    }
    throw std::out_of_range("no partition block named " + name);
}

}  // namespace spectre
