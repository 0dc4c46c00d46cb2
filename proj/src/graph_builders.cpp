#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "spectre/graph.hpp"

namespace spectre {

WeightedGraph empty_graph(int n) { return WeightedGraph(n); }

WeightedGraph path_graph(int n) {
    WeightedGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_weight(i, i + 1, 1.0);
    return g;
}

WeightedGraph cycle_graph(int n) {
    if (n < 2) throw std::invalid_argument("cycle_graph requires n >= 2");
    WeightedGraph g = path_graph(n);  // n = 2: the double edge, summed to weight 2
    g.add_weight(n - 1, 0, 1.0);
    return g;
}

WeightedGraph star_graph(int k) {
    if (k < 1) throw std::invalid_argument("star_graph requires k >= 1");
    WeightedGraph g(k);
    for (int i = 1; i < k; ++i) g.add_weight(0, i, 1.0);
    return g;
}

WeightedGraph complete_graph(int n) {
    WeightedGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_weight(i, j, 1.0);
    return g;
}

WeightedGraph complete_bipartite(int a, int b) {
    WeightedGraph g(a + b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) g.add_weight(i, a + j, 1.0);
    return g;
}

WeightedGraph disjoint_union(const WeightedGraph& g1, const WeightedGraph& g2) {
    const int n1 = g1.order();
    WeightedGraph g(n1 + g2.order());
    for (const auto& [k, w] : g1.weights()) g.add_weight(k.first, k.second, w);
    for (const auto& [k, w] : g2.weights()) g.add_weight(k.first + n1, k.second + n1, w);
    return g;
}

WeightedGraph connected_sum(const WeightedGraph& g1, const WeightedGraph& g2, Vertex u, Vertex v, double w) {
    if (u < 0 || u >= g1.order() || v < 0 || v >= g2.order()) {
        throw std::out_of_range("connected_sum: join vertex out of range");
    }
    if (w == 0.0) throw std::invalid_argument("connected_sum: join weight must be nonzero");
    WeightedGraph g = disjoint_union(g1, g2);
    g.add_weight(u, v + g1.order(), w);
    return g;
}

WeightedGraph attach_pendant_path(const WeightedGraph& g, Vertex v, int k) {
    if (v < 0 || v >= g.order()) throw std::out_of_range("attach_pendant_path: vertex out of range");
    if (k < 1) throw std::invalid_argument("attach_pendant_path: length must be >= 1");
    WeightedGraph out = disjoint_union(g, path_graph(k));
    out.add_weight(v, g.order(), 1.0);
    return out;
}

WeightedGraph plant_cluster(const WeightedGraph& g, std::span<const Vertex> neighbors, int r) {
    if (r < 2) throw std::invalid_argument("plant_cluster: a cluster needs at least 2 vertices");
    if (neighbors.empty()) throw std::invalid_argument("plant_cluster: neighbour set must be nonempty");
    std::set<Vertex> uniq(neighbors.begin(), neighbors.end());
    if (uniq.size() != neighbors.size()) throw std::invalid_argument("plant_cluster: repeated neighbour");
    for (Vertex v : uniq)
        if (v < 0 || v >= g.order()) throw std::out_of_range("plant_cluster: neighbour out of range");
    WeightedGraph out = disjoint_union(g, empty_graph(r));
    for (int c = 0; c < r; ++c)
        for (Vertex v : uniq) out.add_weight(g.order() + c, v, 1.0);
    return out;
}

WeightedGraph induced_subgraph(const WeightedGraph& g, std::span<const Vertex> vertices) {
    std::vector<int> pos(static_cast<std::size_t>(g.order()), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Vertex v = vertices[i];
        if (v < 0 || v >= g.order()) throw std::out_of_range("induced_subgraph: vertex out of range");
        if (pos[static_cast<std::size_t>(v)] != -1) throw std::invalid_argument("induced_subgraph: repeated vertex");
        pos[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    WeightedGraph out(static_cast<int>(vertices.size()));
    for (const auto& [k, w] : g.weights()) {
        const int a = pos[static_cast<std::size_t>(k.first)];
        const int b = pos[static_cast<std::size_t>(k.second)];
        if (a >= 0 && b >= 0) out.add_weight(a, b, w);
    }
    return out;
}

WeightedGraph contract_internal_path(const WeightedGraph& g, std::span<const Vertex> path) {
    if (path.empty()) throw std::invalid_argument("contract_internal_path: empty path");
    std::set<Vertex> on_path;
    for (Vertex v : path) {
        if (v < 0 || v >= g.order()) throw std::out_of_range("contract_internal_path: vertex out of range");
        if (!on_path.insert(v).second) throw std::invalid_argument("contract_internal_path: repeated vertex");
        if (g.weight(v, v) != 0.0 || g.degree(v) != 2) {
            throw std::invalid_argument("contract_internal_path: vertex " + std::to_string(v) +
                                        " is not of degree 2");
        }
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (g.weight(path[i], path[i + 1]) != 1.0) {
            throw std::invalid_argument("contract_internal_path: consecutive path vertices must share a unit edge");
        }
    }
    auto outside = [&](Vertex end, Vertex inner) {
        Vertex found = -1;
        for (Vertex w : g.neighbors(end)) {
            if (w == inner) continue;
            if (on_path.count(w)) throw std::invalid_argument("contract_internal_path: path is not induced");
            found = w;
        }
        if (found < 0) throw std::invalid_argument("contract_internal_path: missing attachment vertex");
        if (g.weight(end, found) != 1.0) {
            throw std::invalid_argument("contract_internal_path: attachment edges must have unit weight");
        }
        return found;
    };
    Vertex u = -1;
    Vertex v = -1;
    if (path.size() == 1) {
        const auto nb = g.neighbors(path[0]);
        u = nb[0];
        v = nb[1];
        if (g.weight(path[0], u) != 1.0 || g.weight(path[0], v) != 1.0) {
            throw std::invalid_argument("contract_internal_path: attachment edges must have unit weight");
        }
    } else {
        u = outside(path.front(), path[1]);
        v = outside(path.back(), path[path.size() - 2]);
    }
    if (u == v) throw std::invalid_argument("contract_internal_path: attachment vertices coincide");

    std::vector<Vertex> keep;
    for (Vertex x = 0; x < g.order(); ++x)
        if (!on_path.count(x)) keep.push_back(x);
    WeightedGraph out = induced_subgraph(g, keep);
    const auto idx = [&](Vertex x) {
        return static_cast<Vertex>(std::lower_bound(keep.begin(), keep.end(), x) - keep.begin());
    };
    out.add_weight(idx(u), idx(v), 1.0);
    return out;
}

WeightedGraph subdivide_edge(const WeightedGraph& g, Vertex u, Vertex v, int n) {
    if (n < 1) throw std::invalid_argument("subdivide_edge: path length must be >= 1");
    if (u == v) throw std::invalid_argument("subdivide_edge: endpoints must differ");
    if (g.weight(u, v) == 0.0) throw std::invalid_argument("subdivide_edge: no edge between endpoints");
    WeightedGraph out = disjoint_union(g, path_graph(n));
    out.add_weight(u, v, -1.0);
    out.add_weight(u, g.order(), 1.0);
    out.add_weight(g.order() + n - 1, v, 1.0);
    return out;
}

std::vector<std::vector<Vertex>> connected_components(const WeightedGraph& g) {
    const int n = g.order();
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
    for (const auto& [k, w] : g.weights()) {
        if (k.first == k.second) continue;
        adj[static_cast<std::size_t>(k.first)].push_back(k.second);
        adj[static_cast<std::size_t>(k.second)].push_back(k.first);
    }
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<Vertex>> out;
    for (Vertex s = 0; s < n; ++s) {
        if (comp[static_cast<std::size_t>(s)] >= 0) continue;
        const int id = static_cast<int>(out.size());
        out.emplace_back();
        std::queue<Vertex> q;
        q.push(s);
        comp[static_cast<std::size_t>(s)] = id;
        while (!q.empty()) {
            const Vertex x = q.front();
            q.pop();
            out.back().push_back(x);
            for (Vertex y : adj[static_cast<std::size_t>(x)]) {
                if (comp[static_cast<std::size_t>(y)] < 0) {
                    comp[static_cast<std::size_t>(y)] = id;
                    q.push(y);
                }
            }
        }
        std::sort(out.back().begin(), out.back().end());
    }
    return out;
}

WeightedGraph split_vertex(const WeightedGraph& g, Vertex v, int copies, const std::map<Vertex, int>& leaf_assignment) {
    if (v < 0 || v >= g.order()) throw std::out_of_range("split_vertex: vertex out of range");
    if (copies < 1) throw std::invalid_argument("split_vertex: need at least one copy");
    if (leaf_assignment.empty()) throw std::invalid_argument("split_vertex: empty copy assignment");

    const auto nb = g.neighbors(v);
    for (const auto& [w, c] : leaf_assignment) {
        if (!std::binary_search(nb.begin(), nb.end(), w)) {
            throw std::invalid_argument("split_vertex: assigned vertex " + std::to_string(w) + " is not a neighbour");
        }
        if (c < 0 || c >= copies) throw std::out_of_range("split_vertex: copy index out of range");
    }

    // Components of g - v decide which side each vertex belongs to.
    std::vector<Vertex> rest;
    for (Vertex x = 0; x < g.order(); ++x)
        if (x != v) rest.push_back(x);
    const WeightedGraph minus_v = induced_subgraph(g, rest);
    std::vector<int> side(static_cast<std::size_t>(g.order()), 0);  // 0 = untouched, 1 = L side, 2 = H side
    for (const auto& comp : connected_components(minus_v)) {
        bool has_assigned = false;
        bool has_branch = false;
        for (Vertex local : comp) {
            const Vertex x = rest[static_cast<std::size_t>(local)];
            if (!std::binary_search(nb.begin(), nb.end(), x)) continue;
            (leaf_assignment.count(x) ? has_assigned : has_branch) = true;
        }
        if (has_assigned && has_branch) {
            throw std::invalid_argument("split_vertex: branch H is not separated from the assigned neighbours");
        }
        for (Vertex local : comp) side[static_cast<std::size_t>(rest[static_cast<std::size_t>(local)])] = has_branch ? 2 : 1;
    }

    std::vector<Vertex> outer;
    std::vector<Vertex> branch;
    for (Vertex x = 0; x < g.order(); ++x) {
        if (x == v) continue;
        (side[static_cast<std::size_t>(x)] == 2 ? branch : outer).push_back(x);
    }
    const int block = 1 + static_cast<int>(branch.size());
    WeightedGraph out(static_cast<int>(outer.size()) + copies * block);

    std::vector<int> outer_pos(static_cast<std::size_t>(g.order()), -1);
    std::vector<int> branch_pos(static_cast<std::size_t>(g.order()), -1);
    for (std::size_t i = 0; i < outer.size(); ++i) outer_pos[static_cast<std::size_t>(outer[i])] = static_cast<int>(i);
    for (std::size_t i = 0; i < branch.size(); ++i) branch_pos[static_cast<std::size_t>(branch[i])] = static_cast<int>(i);
    const int base = static_cast<int>(outer.size());
    const auto copy_vertex = [&](int c) { return base + c * block; };
    const auto copy_branch = [&](int c, Vertex x) { return base + c * block + 1 + branch_pos[static_cast<std::size_t>(x)]; };

    for (const auto& [k, w] : g.weights()) {
        const auto [a, b] = k;
        if (a == v && b == v) {
            for (int c = 0; c < copies; ++c) out.add_weight(copy_vertex(c), copy_vertex(c), w);
        } else if (a == v || b == v) {
            const Vertex other = (a == v) ? b : a;
            if (auto it = leaf_assignment.find(other); it != leaf_assignment.end()) {
                out.add_weight(copy_vertex(it->second), outer_pos[static_cast<std::size_t>(other)], w);
            } else {
                for (int c = 0; c < copies; ++c) out.add_weight(copy_vertex(c), copy_branch(c, other), w);
            }
        } else if (side[static_cast<std::size_t>(a)] == 2) {
            for (int c = 0; c < copies; ++c) out.add_weight(copy_branch(c, a), copy_branch(c, b), w);
        } else {
            out.add_weight(outer_pos[static_cast<std::size_t>(a)], outer_pos[static_cast<std::size_t>(b)], w);
        }
    }
    return out;
}

WeightedGraph permute(const WeightedGraph& g, std::span<const int> perm) {
    if (static_cast<int>(perm.size()) != g.order()) throw std::invalid_argument("permute: size mismatch");
    std::vector<int> seen(perm.size(), 0);
    for (int p : perm) {
        if (p < 0 || p >= g.order() || seen[static_cast<std::size_t>(p)]++) {
            throw std::invalid_argument("permute: not a permutation");
        }
    }
    WeightedGraph out(g.order());
    for (const auto& [k, w] : g.weights()) {
        out.add_weight(perm[static_cast<std::size_t>(k.first)], perm[static_cast<std::size_t>(k.second)], w);
    }
    return out;
}

namespace {

struct IsoSearch {
    const Eigen::MatrixXd& a;
    const Eigen::MatrixXd& b;
    std::vector<std::vector<double>> sig_a, sig_b;
    std::vector<int> order;
    std::vector<int> map, used;

    bool extend(std::size_t depth) {
        if (depth == order.size()) return true;
        const int i = order[depth];
        for (int j = 0; j < static_cast<int>(b.rows()); ++j) {
            if (used[static_cast<std::size_t>(j)] || sig_a[static_cast<std::size_t>(i)] != sig_b[static_cast<std::size_t>(j)]) continue;
            bool ok = a(i, i) == b(j, j);
            for (std::size_t d = 0; ok && d < depth; ++d) {
                const int k = order[d];
                ok = a(i, k) == b(j, map[static_cast<std::size_t>(k)]);
            }
            if (!ok) continue;
            map[static_cast<std::size_t>(i)] = j;
            used[static_cast<std::size_t>(j)] = 1;
            if (extend(depth + 1)) return true;
            used[static_cast<std::size_t>(j)] = 0;
        }
        return false;
    }
};

std::vector<std::vector<double>> signatures(const Eigen::MatrixXd& m) {
    std::vector<std::vector<double>> s(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        auto& row = s[static_cast<std::size_t>(i)];
        row.push_back(m(i, i));
        std::vector<double> off;
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (j != i && m(i, j) != 0.0) off.push_back(m(i, j));
        std::sort(off.begin(), off.end());
        row.insert(row.end(), off.begin(), off.end());
    }
    return s;
}

}  // namespace

bool isomorphic(const WeightedGraph& ga, const WeightedGraph& gb) {
    if (ga.order() != gb.order() || ga.size() != gb.size()) return false;
    const Eigen::MatrixXd a = adjacency(ga);
    const Eigen::MatrixXd b = adjacency(gb);
    IsoSearch s{a, b, signatures(a), signatures(b), {}, {}, {}};
    auto sa = s.sig_a;
    auto sb = s.sig_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;

    // BFS order keeps already-mapped neighbours close, which prunes early.
    const int n = ga.order();
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    for (const auto& comp : connected_components(ga)) {
        std::queue<int> q;
        q.push(comp.front());
        seen[static_cast<std::size_t>(comp.front())] = 1;
        while (!q.empty()) {
            const int x = q.front();
            q.pop();
            s.order.push_back(x);
            for (int y : ga.neighbors(x))
                if (!seen[static_cast<std::size_t>(y)]++) q.push(y);
        }
    }
    s.map.assign(static_cast<std::size_t>(n), -1);
    s.used.assign(static_cast<std::size_t>(n), 0);
    return s.extend(0);
}

}  // namespace spectre
