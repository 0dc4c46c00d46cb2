// Type II reductions: glued blocks, d-clusters and pendant paths.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "reduction_support.hpp"

namespace spectre {

using detail::conclude;
using detail::measure;
using detail::reject;

namespace {

// max(n eps ||L||, tol): singular values at or below this are treated as zero.
double null_threshold(const Eigen::MatrixXd& l, double tol) {
    return std::max(static_cast<double>(l.rows()) * std::numeric_limits<double>::epsilon() * detail::spectral_norm(l), tol);
}

// Eigenvectors of l for mu that vanish on `zero_rows` (orthonormal columns).
Eigen::MatrixXd vanishing_eigenvectors(const Eigen::MatrixXd& l, const EigenvalueSpec& mu, double tol,
                                       Eigen::Index zero_start, Eigen::Index zero_count) {
    const Eigen::MatrixXd v = eigenspace_basis(l, mu, tol);
    if (v.cols() == 0) return v;
    const Eigen::MatrixXd c = detail::null_combinations(v.middleRows(zero_start, zero_count), null_threshold(l, tol));
    return v * c;
}

}  // namespace

ReductionResult cluster_glue_bound(const ClusterGlueInstance& inst, double tol) {
    const int ni = inst.h.order();
    const int nj = inst.l.order();
    const int nk = inst.k.order();
    const int sides = static_cast<int>(inst.h_i.size());
    const int r_blocks = sides + 1;
    if (inst.rho == 0.0) throw ReductionError("cluster_glue_bound: rho must be nonzero");
    if (inst.a.rows() != ni || inst.a.cols() != nj) throw ReductionError("cluster_glue_bound: A must be |I| x |J|");
    if (inst.b.rows() != nj || inst.b.cols() != nk) throw ReductionError("cluster_glue_bound: B must be |J| x |J_1|");
    if (static_cast<int>(inst.b_i.size()) != sides) throw ReductionError("cluster_glue_bound: one B_i per side block");
    if (!inst.l_i.empty() && static_cast<int>(inst.l_i.size()) != sides) {
        throw ReductionError("cluster_glue_bound: one L_i per side block");
    }
    if (!inst.gammas.empty() && static_cast<int>(inst.gammas.size()) != sides) {
        throw ReductionError("cluster_glue_bound: one gamma per side block");
    }
    for (int i = 0; i < sides; ++i) {
        if (inst.b_i[i].rows() != nj || inst.b_i[i].cols() != inst.h_i[i].order()) {
            throw ReductionError("cluster_glue_bound: B_i must be |J| x |I_i|");
        }
    }

    // Offsets in the glued matrix: I, I_1..I_{r-1}, J, J_1.
    std::vector<int> off(static_cast<std::size_t>(sides) + 1);
    off[0] = ni;
    for (int i = 0; i < sides; ++i) off[i + 1] = off[i] + inst.h_i[i].order();
    const int oj = off[sides];
    const int ok = oj + nj;
    const int n = ok + nk;

    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    detail::place(g, 0, 0, adjacency(inst.h));
    detail::place(g, oj, oj, adjacency(inst.l));
    detail::place(g, ok, ok, adjacency(inst.k));
    detail::place_sym(g, 0, oj, inst.a);
    detail::place_sym(g, oj, ok, inst.b);
    for (int i = 0; i < sides; ++i) {
        detail::place(g, off[i], off[i], adjacency(inst.h_i[i]));
        detail::place_sym(g, oj, off[i], inst.b_i[i]);
    }

    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(ni + nj + nk, ni + nj + nk);
    detail::place(e, 0, 0, adjacency(inst.h));
    detail::place(e, ni, ni, adjacency(inst.l));
    detail::place(e, ni + nj, ni + nj, adjacency(inst.k));
    detail::place_sym(e, 0, ni, inst.a);
    detail::place_sym(e, ni, ni + nj, inst.b);

    ReductionResult r;
    r.reduction = "cluster-glue";
    r.input = WeightedGraph::from_adjacency(g);
    r.output = WeightedGraph::from_adjacency(e);
    r.mu = inst.mu;
    r.rho = inst.rho;
    r.predicted = "m(G) >= s + r - 1";
    std::vector<std::pair<std::string, std::vector<Vertex>>> blocks{{"I", detail::iota_block(0, ni)}};
    for (int i = 0; i < sides; ++i) blocks.emplace_back("I" + std::to_string(i + 1), detail::iota_block(off[i], off[i + 1] - off[i]));
    blocks.emplace_back("J", detail::iota_block(oj, nj));
    blocks.emplace_back("J1", detail::iota_block(ok, nk));
    r.layout = IndexPartition(n, std::move(blocks));

    const Eigen::MatrixXd lg = laplacian_matrix(g, inst.rho);
    tol = resolve_tolerance(lg, tol);
    const double floor = std::max(detail::kOverlapFloor, 100.0 * tol);
    std::vector<Eigen::VectorXd> extended;

    for (int i = 0; i < sides; ++i) {
        const int nii = inst.h_i[i].order();
        const WeightedGraph& li = (inst.l_i.empty() || inst.l_i[i].order() == 0) ? inst.l : inst.l_i[i];
        if (li.order() != nj) throw ReductionError("cluster_glue_bound: L_i must have |J| vertices");
        Eigen::MatrixXd ei = Eigen::MatrixXd::Zero(ni + nj + nii, ni + nj + nii);
        detail::place(ei, 0, 0, adjacency(inst.h));
        detail::place(ei, ni, ni, adjacency(li));
        detail::place(ei, ni + nj, ni + nj, adjacency(inst.h_i[i]));
        detail::place_sym(ei, 0, ni, inst.a);
        detail::place_sym(ei, ni, ni + nj, inst.b_i[i]);
        const Eigen::MatrixXd lei = laplacian_matrix(ei, inst.rho);

        Eigen::VectorXd gamma;
        if (!inst.gammas.empty()) {
            gamma = inst.gammas[i];
            if (gamma.size() != ei.rows()) throw ReductionError("cluster_glue_bound: gamma has the wrong length");
            const double gn = gamma.norm();
            const double res = gn > 0 ? (lei * gamma - inst.mu.value() * gamma).norm() / gn : 0.0;
            if (gn == 0.0 || res > 10.0 * tol * std::max(1.0, detail::spectral_norm(lei)) ||
                gamma.segment(ni, nj).norm() > 10.0 * tol * gn || gamma.tail(nii).norm() <= floor * gn) {
                reject(r, "supplied gamma " + std::to_string(i + 1) + " is not a witness");
                return r;
            }
        } else {
            const Eigen::MatrixXd w = vanishing_eigenvectors(lei, inst.mu, tol, ni, nj);
            Eigen::Index best = -1;
            double best_norm = floor;
            for (Eigen::Index c = 0; c < w.cols(); ++c) {
                const double side = w.col(c).tail(nii).norm();
                if (side > best_norm) {
                    best = c;
                    best_norm = side;
                }
            }
            if (best < 0) {
                reject(r, "no eigenvector of E_" + std::to_string(i + 1) + " vanishes on J and not on I_" +
                              std::to_string(i + 1));
                return r;
            }
            gamma = w.col(best);
        }
        Eigen::VectorXd hat = Eigen::VectorXd::Zero(n);
        hat.head(ni) = gamma.head(ni);
        hat.segment(off[i], nii) = gamma.tail(nii);
        extended.push_back(hat / hat.norm());
    }

    const Eigen::MatrixXd betas = vanishing_eigenvectors(laplacian_matrix(e, inst.rho), inst.mu, tol, ni, nj);
    const int s = static_cast<int>(betas.cols());
    for (int c = 0; c < s; ++c) {
        Eigen::VectorXd hat = Eigen::VectorXd::Zero(n);
        hat.head(ni) = betas.col(c).head(ni);
        hat.tail(nk) = betas.col(c).tail(nk);
        extended.push_back(hat / hat.norm());
    }

    const double bound = 10.0 * tol * std::max(1.0, detail::spectral_norm(lg));
    bool residual_ok = true;
    Eigen::MatrixXd stack(n, static_cast<Eigen::Index>(extended.size()));
    for (std::size_t c = 0; c < extended.size(); ++c) {
        const double res = (lg * extended[c] - inst.mu.value() * extended[c]).norm();
        r.residuals.push_back(res);
        residual_ok = residual_ok && res <= bound;
        stack.col(static_cast<Eigen::Index>(c)) = extended[c];
    }
    const int rank = detail::numeric_rank(stack, 1e-8);

    r.measured.push_back(measure("m(G)", g, inst.rho, inst.mu, tol));
    conclude(r, Relation::AtLeast, [&](const detail::Getter& m) { return std::pair{m(0), s + r_blocks - 1}; });
    if (r.verdict == Verdict::Pass && !residual_ok) {
        r.verdict = Verdict::Fail;
        r.reason = "an extended eigenvector has residual above 10 tol ||G||";
    } else if (r.verdict == Verdict::Pass && rank != static_cast<int>(extended.size())) {
        r.verdict = Verdict::Fail;
        r.reason = "extended eigenvectors are dependent";
    }
    return r;
}

std::vector<Cluster> detect_clusters(const WeightedGraph& g) {
    if (!g.is_simple()) throw ReductionError("detect_clusters: simple graphs only");
    std::map<std::vector<Vertex>, std::vector<Vertex>> by_neighborhood;
    for (Vertex v = 0; v < g.order(); ++v) by_neighborhood[g.neighbors(v)].push_back(v);
    std::vector<Cluster> out;
    for (auto& [nb, vs] : by_neighborhood)
        if (vs.size() >= 2) out.push_back(Cluster{vs, nb});
    std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) { return a.vertices < b.vertices; });
    return out;
}

ReductionResult dcluster_bound(const WeightedGraph& g, const std::vector<std::vector<Vertex>>& clusters, double tol) {
    if (!g.is_simple()) throw ReductionError("dcluster_bound: simple graphs only");
    if (clusters.empty()) throw ReductionError("dcluster_bound: no clusters given");
    const int n = g.order();
    std::set<Vertex> used;
    int d = -1;
    int total = 0;
    for (const auto& c : clusters) {
        if (c.size() < 2) throw ReductionError("dcluster_bound: a cluster needs at least two vertices");
        const auto nb = g.neighbors(c.at(0));
        for (Vertex v : c) {
            if (v < 0 || v >= n) throw ReductionError("dcluster_bound: vertex out of range");
            if (!used.insert(v).second) throw ReductionError("dcluster_bound: clusters must be disjoint");
            if (g.neighbors(v) != nb) throw ReductionError("dcluster_bound: cluster vertices must share their neighbourhood");
        }
        if (d >= 0 && static_cast<int>(nb.size()) != d) throw ReductionError("dcluster_bound: clusters must share d");
        d = static_cast<int>(nb.size());
        total += static_cast<int>(c.size());
    }
    const int k = static_cast<int>(clusters.size());

    ReductionResult r;
    r.reduction = "d-cluster";
    r.input = g;
    r.output = g;
    r.mu = Rational(d);
    r.rho = 1.0;
    r.predicted = "m_L(d) >= sum r_i - k";
    std::vector<std::pair<std::string, std::vector<Vertex>>> blocks;
    for (int i = 0; i < k; ++i) blocks.emplace_back("C" + std::to_string(i + 1), clusters[i]);
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < n; ++v)
        if (!used.count(v)) rest.push_back(v);
    blocks.emplace_back("rest", rest);
    r.layout = IndexPartition(n, std::move(blocks));

    const Eigen::MatrixXd a = adjacency(g);
    const Eigen::MatrixXd l = laplacian_matrix(a, 1.0);
    std::vector<Eigen::VectorXd> gammas;
    for (const auto& c : clusters) {
        for (std::size_t j = 1; j < c.size(); ++j) {
            Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
            v(c[0]) = 1.0;
            v(c[j]) = -1.0;
            r.residuals.push_back((l * v - d * v).norm());
            gammas.push_back(v);
        }
    }
    Eigen::MatrixXd stack(n, static_cast<Eigen::Index>(gammas.size()));
    for (std::size_t c = 0; c < gammas.size(); ++c) stack.col(static_cast<Eigen::Index>(c)) = gammas[c];
    const int rank = detail::numeric_rank(stack, 1e-10);

    r.measured.push_back(measure("m(G)", a, 1.0, r.mu, tol));
    conclude(r, Relation::AtLeast, [&](const detail::Getter& m) { return std::pair{m(0), total - k}; });
    tol = resolve_tolerance(l, tol);
    const double bound = 10.0 * tol * std::max(1.0, detail::spectral_norm(l));
    if (r.verdict == Verdict::Pass) {
        if (std::any_of(r.residuals.begin(), r.residuals.end(), [&](double x) { return x > bound; })) {
            r.verdict = Verdict::Fail;
            r.reason = "a cluster vector is not a d-eigenvector";
        } else if (rank != total - k) {
            r.verdict = Verdict::Fail;
            r.reason = "cluster vectors are dependent";
        }
    }
    return r;
}

PendantStats pendant_stats(const WeightedGraph& g, int k, BranchRule rule) {
    if (!g.is_simple()) throw ReductionError("pendant_stats: simple unweighted graphs only");
    if (k < 1) throw ReductionError("pendant_stats: k must be positive");
    PendantStats st;
    st.k = k;
    std::set<Vertex> branches;
    for (Vertex leaf = 0; leaf < g.order(); ++leaf) {
        if (g.degree(leaf) != 1) continue;
        std::vector<Vertex> path{leaf};
        Vertex prev = leaf;
        Vertex cur = g.neighbors(leaf)[0];
        while (g.degree(cur) == 2) {
            path.push_back(cur);
            const auto nb = g.neighbors(cur);
            const Vertex next = nb[0] != prev ? nb[0] : nb[1];
            prev = cur;
            cur = next;
        }
        if (g.degree(cur) < 3) continue;  // a bare path component
        if (static_cast<int>(path.size()) != k) continue;
        st.witnesses.push_back(PendantPath{path, cur});
        const int need = rule == BranchRule::DegreeAtLeast3 ? 3 : 4;
        if (g.degree(cur) >= need) branches.insert(cur);
    }
    st.p = static_cast<int>(st.witnesses.size());
    st.q = static_cast<int>(branches.size());
    return st;
}

std::vector<PendantBoundRow> pendant_bound(const WeightedGraph& g, int k, double tol, BranchRule rule) {
    const PendantStats st = pendant_stats(g, k, rule);
    const Eigen::MatrixXd a = adjacency(g);
    const Eigen::MatrixXd lap = laplacian_matrix(a, 1.0);
    const Eigen::MatrixXd sig = laplacian_matrix(a, -1.0);
    std::vector<PendantBoundRow> rows;
    for (int i = 1; i <= k; ++i) {
        PendantBoundRow row{EigenvalueSpec::four_cos_sq(i, 2 * k + 1), st.p - st.q, {}, {}, false};
        row.laplacian = measure_multiplicity(lap, row.mu, tol);
        row.signless = measure_multiplicity(sig, row.mu, tol);
        row.holds = row.laplacian.count >= row.bound && row.signless.count >= row.bound;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace spectre
