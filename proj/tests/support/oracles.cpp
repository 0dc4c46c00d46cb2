#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

std::vector<double> jacobi_eigenvalues(const Eigen::MatrixXd& input) {
    const int n = static_cast<int>(input.rows());
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    double total = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            a[i][j] = 0.5 * (input(i, j) + input(j, i));
            total += a[i][j] * a[i][j];
        }
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off <= 1e-28 * std::max(total, 1e-300)) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[p][k];
                    const double aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = a[i][i];
    std::sort(out.begin(), out.end());
    return out;
}

Eigen::MatrixXd laplacian(const spectre::WeightedGraph& g, double rho) {
    const int n = g.order();
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [key, w] : g.weights()) {
        const auto [u, v] = key;
        if (u == v) {
            // loop: A_uu = 2w, row sum gains 2w
            l(u, u) += 2.0 * w - rho * 2.0 * w;
        } else {
            l(u, u) += w;
            l(v, v) += w;
            l(u, v) -= rho * w;
            l(v, u) -= rho * w;
        }
    }
    return l;
}

QMatrix laplacian_q(const spectre::WeightedGraph& g, const mpq_class& rho) {
    const int n = g.order();
    QMatrix l(n, std::vector<mpq_class>(n, 0));
    for (const auto& [key, w] : g.weights()) {
        const auto [u, v] = key;
        const mpq_class wq(w);
        if (u == v) {
            l[u][u] += 2 * wq - rho * 2 * wq;
        } else {
            l[u][u] += wq;
            l[v][v] += wq;
            l[u][v] -= rho * wq;
            l[v][u] -= rho * wq;
        }
    }
    return l;
}

int rank(QMatrix m) {
    const int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[r], m[pivot]);
        for (int i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            const mpq_class f = m[i][c] / m[r][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

int multiplicity_q(QMatrix m, const mpq_class& mu) {
    for (std::size_t i = 0; i < m.size(); ++i) m[i][i] -= mu;
    return static_cast<int>(m.size()) - rank(std::move(m));
}

int multiplicity_numeric(const Eigen::MatrixXd& m, double mu, double window) {
    int count = 0;
    for (double x : jacobi_eigenvalues(m))
        if (std::abs(x - mu) <= window) ++count;
    return count;
}

std::pair<int, int> pendant_scan(const spectre::WeightedGraph& g, int k) {
    const int n = g.order();
    std::vector<std::vector<int>> adj(n);
    for (const auto& [key, w] : g.weights())
        if (key.first != key.second) {
            adj[key.first].push_back(key.second);
            adj[key.second].push_back(key.first);
        }
    int p = 0;
    std::vector<int> branches;
    for (int leaf = 0; leaf < n; ++leaf) {
        if (adj[leaf].size() != 1) continue;
        int prev = leaf;
        int cur = adj[leaf][0];
        int length = 1;
        while (adj[cur].size() == 2) {
            const int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            prev = cur;
            cur = next;
            ++length;
        }
        if (adj[cur].size() >= 3 && length == k) {
            ++p;
            branches.push_back(cur);
        }
    }
    std::sort(branches.begin(), branches.end());
    branches.erase(std::unique(branches.begin(), branches.end()), branches.end());
    return {p, static_cast<int>(branches.size())};
}

spectre::WeightedGraph random_graph(std::mt19937_64& rng, int n, double p, bool weighted) {
    std::bernoulli_distribution edge(p);
    std::uniform_int_distribution<int> mag(1, 3);
    std::bernoulli_distribution sign(0.5);
    spectre::WeightedGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (edge(rng)) g.add_weight(u, v, weighted ? (sign(rng) ? 1 : -1) * mag(rng) : 1.0);
    return g;
}

spectre::WeightedGraph random_tree(std::mt19937_64& rng, int n) {
    spectre::WeightedGraph g(n);
    for (int v = 1; v < n; ++v) g.add_weight(std::uniform_int_distribution<int>(0, v - 1)(rng), v, 1.0);
    return g;
}

}  // namespace oracle
