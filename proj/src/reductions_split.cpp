// Type III reductions: splitting a vertex, and the doubled-branch criterion.

#include <algorithm>
#include <cmath>

#include "reduction_support.hpp"
#include "spectre/exact.hpp"

namespace spectre {

using detail::conclude;
using detail::measure;
using detail::reject;

namespace {

struct RankOne {
    int multiplicity = 0;
    bool exact = false;
    double overlap = 0.0;  // |t^T w| / (|t| |w|) for the unique eigenvector w
    bool nonzero = false;  // overlap is (exactly, or beyond the floor) nonzero
};

bool exact_vector(const Eigen::VectorXd& v) { return exactly_representable(Eigen::MatrixXd(v)); }

// Multiplicity of mu in m and, when it is one, how far the eigenvector is
// from being orthogonal to `probe`.
RankOne simple_eigen_overlap(const Eigen::MatrixXd& m, const Eigen::VectorXd& probe, const EigenvalueSpec& mu,
                             double tol) {
    RankOne out;
    if (m.rows() == 0) return out;
    const auto q = mu.exact_value();
    if (q && exactly_representable(m) && exact_vector(probe)) {
        RationalMatrix shifted = to_rational(m);
        const mpq_class qq = to_mpq(*q);
        for (int i = 0; i < shifted.rows(); ++i) shifted(i, i) -= qq;
        const auto basis = exact_nullspace(shifted);
        out.exact = true;
        out.multiplicity = static_cast<int>(basis.size());
        if (out.multiplicity != 1) return out;
        mpq_class dot = 0;
        double wn = 0.0;
        for (std::size_t i = 0; i < basis[0].size(); ++i) {
            dot += mpq_class(probe(static_cast<Eigen::Index>(i))) * basis[0][i];
            wn += basis[0][i].get_d() * basis[0][i].get_d();
        }
        out.nonzero = dot != 0;
        const double pn = probe.norm();
        out.overlap = (pn > 0 && wn > 0) ? std::abs(dot.get_d()) / (pn * std::sqrt(wn)) : 0.0;
        return out;
    }
    const Eigen::MatrixXd v = eigenspace_basis(m, mu, tol);
    out.multiplicity = static_cast<int>(v.cols());
    if (out.multiplicity != 1) return out;
    const double pn = probe.norm();
    out.overlap = pn > 0 ? std::abs(probe.dot(v.col(0))) / pn : 0.0;
    out.nonzero = out.overlap > detail::kOverlapFloor;
    return out;
}

// [H x; x^T a]
Eigen::MatrixXd hat_block(const Eigen::MatrixXd& ah, const Eigen::VectorXd& x, double a) {
    const Eigen::Index n = ah.rows();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
    m.topLeftCorner(n, n) = ah;
    m.block(0, n, n, 1) = x;
    m.block(n, 0, 1, n) = x.transpose();
    m(n, n) = a;
    return m;
}

}  // namespace

SplitLemmaReport splitlem_check(const WeightedGraph& h, const Eigen::VectorXd& x, double a, double rho,
                                const EigenvalueSpec& mu, double tol) {
    if (rho == 0.0) throw ReductionError("splitlem_check: rho must be nonzero");
    const int n = h.order();
    if (x.size() != n) throw ReductionError("splitlem_check: x must have one entry per vertex of H");
    const Eigen::MatrixXd ah = adjacency(h);

    const Eigen::MatrixXd shifted = laplacian_matrix(ah, rho) + Eigen::MatrixXd(x.asDiagonal());
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(2 * n + 1, 2 * n + 1);
    k.topLeftCorner(n, n) = ah;
    k.bottomRightCorner(n, n) = ah;
    k.block(0, n, n, 1) = x;
    k.block(n, 0, 1, n) = x.transpose();
    k.block(n + 1, n, n, 1) = x;
    k.block(n, n + 1, 1, n) = x.transpose();
    k(n, n) = a;
    const Eigen::MatrixXd hat = hat_block(ah, x, a);

    SplitLemmaReport rep;
    const RankOne one = simple_eigen_overlap(shifted, x, mu, tol);
    Eigen::VectorXd ev = Eigen::VectorXd::Zero(2 * n + 1);
    ev(n) = 1.0;
    const RankOne two = simple_eigen_overlap(laplacian_matrix(k, rho), ev, mu, tol);
    const MultiplicityReport mh = measure_multiplicity(laplacian_matrix(hat, rho), mu, tol);

    rep.m_shifted = one.multiplicity;
    rep.m_doubled = two.multiplicity;
    rep.m_hat = mh.count;
    rep.overlap = one.multiplicity == 1 ? one.overlap : 0.0;
    rep.beta_v = two.multiplicity == 1 ? two.overlap : 1.0;
    rep.condition_i = one.multiplicity == 1 && one.nonzero;
    rep.condition_ii = two.multiplicity == 1 && !two.nonzero;
    rep.hat_vanishes = mh.count == 0;
    rep.exact = one.exact && two.exact && mh.exact.has_value();
    rep.consistent = rep.condition_i == rep.condition_ii && (!rep.condition_i || rep.hat_vanishes);
    return rep;
}

ReductionResult split(const SplitInstance& inst, double tol) {
    if (inst.rho == 0.0) throw ReductionError("split: rho must be nonzero");
    const int nh = inst.h.order();
    const int nl = inst.l.order();
    if (inst.x.size() != nh) throw ReductionError("split: x must have one entry per vertex of H");
    if (inst.y.size() != nl) throw ReductionError("split: y must have one entry per vertex of L");
    if (nl == 0) throw ReductionError("split: L must be nonempty");

    const Eigen::MatrixXd ah = adjacency(inst.h);
    const Eigen::MatrixXd al = adjacency(inst.l);
    const Eigen::MatrixXd hat = hat_block(ah, inst.x, inst.a);

    // G: I, v, J
    const int ng = nh + 1 + nl;
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(ng, ng);
    g.topLeftCorner(nh + 1, nh + 1) = hat;
    g.bottomRightCorner(nl, nl) = al;
    g.block(nh + 1, nh, nl, 1) = inst.y;
    g.block(nh, nh + 1, 1, nl) = inst.y.transpose();

    // E: (I_1, v_1), ..., (I_|J|, v_|J|), J
    const int block = nh + 1;
    const int ne = nl * block + nl;
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(ne, ne);
    for (int j = 0; j < nl; ++j) {
        e.block(j * block, j * block, block, block) = hat;
        const int vj = j * block + nh;
        e(vj, nl * block + j) = inst.y(j);
        e(nl * block + j, vj) = inst.y(j);
    }
    e.bottomRightCorner(nl, nl) = al;

    ReductionResult r;
    r.reduction = "split";
    r.input = WeightedGraph::from_adjacency(g);
    r.output = WeightedGraph::from_adjacency(e);
    r.mu = inst.mu;
    r.rho = inst.rho;
    r.predicted = "m(G) = m(E)";
    r.layout = IndexPartition(ng, {{"I", detail::iota_block(0, nh)}, {"v", {nh}}, {"J", detail::iota_block(nh + 1, nl)}});

    const Eigen::MatrixXd shifted = laplacian_matrix(ah, inst.rho) + Eigen::MatrixXd(inst.x.asDiagonal());
    const RankOne one = simple_eigen_overlap(shifted, inst.x, inst.mu, tol);
    if (one.multiplicity != 1) {
        reject(r, "mu has multiplicity " + std::to_string(one.multiplicity) + " in L_H + D(x), not 1");
        return r;
    }
    if (!one.nonzero) {
        reject(r, "x is orthogonal to the eigenvector of L_H + D(x)");
        return r;
    }
    r.measured.push_back(measure("m(G)", g, inst.rho, inst.mu, tol));
    r.measured.push_back(measure("m(E)", e, inst.rho, inst.mu, tol));
    conclude(r, Relation::Equal, [](const detail::Getter& m) { return std::pair{m(0), m(1)}; });
    return r;
}

ReductionResult split_copies(const BranchCopiesInstance& inst, double tol) {
    if (inst.rho == 0.0) throw ReductionError("split_copies: rho must be nonzero");
    const int nh = inst.h.order();
    const int nl = inst.l.order();
    if (inst.u < 0 || inst.u >= nh) throw ReductionError("split_copies: u out of range");
    if (inst.v < 0 || inst.v >= nl) throw ReductionError("split_copies: v out of range");
    if (inst.copies < 1) throw ReductionError("split_copies: at least one copy");
    const int t = inst.copies;

    WeightedGraph g = inst.l;
    for (int c = 0; c < t; ++c) g = connected_sum(g, inst.h, inst.v, inst.u);
    const WeightedGraph e = connected_sum(inst.l, inst.h, inst.v, inst.u);

    ReductionResult r;
    r.reduction = "split-copies";
    r.input = g;
    r.output = e;
    r.mu = inst.mu;
    r.rho = inst.rho;
    r.predicted = "m(G) = m(E) + t - 1";
    std::vector<std::pair<std::string, std::vector<Vertex>>> blocks{{"L", detail::iota_block(0, nl)}};
    for (int c = 0; c < t; ++c) blocks.emplace_back("H" + std::to_string(c + 1), detail::iota_block(nl + c * nh, nh));
    r.layout = IndexPartition(g.order(), std::move(blocks));

    Eigen::VectorXd x = Eigen::VectorXd::Zero(nh);
    x(inst.u) = 1.0;
    const SplitLemmaReport lem = splitlem_check(inst.h, x, 0.0, inst.rho, inst.mu, tol);
    if (!lem.condition_ii) {
        reject(r, "mu is not simple in the doubled branch with an eigenvector vanishing at its centre");
        return r;
    }
    r.measured.push_back(measure("m(G)", adjacency(g), inst.rho, inst.mu, tol));
    r.measured.push_back(measure("m(E)", adjacency(e), inst.rho, inst.mu, tol));
    conclude(r, Relation::Equal, [t](const detail::Getter& m) { return std::pair{m(0), m(1) + t - 1}; });
    return r;
}

ReductionResult pendant_split(const WeightedGraph& l, std::span<const Vertex> w, int k, int t, double rho,
                              double tol) {
    const int nl = l.order();
    const int rr = static_cast<int>(w.size());
    if (k < 1 || t < 1 || t > k) throw ReductionError("pendant_split: need 1 <= t <= k");
    if (rr < 1) throw ReductionError("pendant_split: at least one attachment vertex");
    std::vector<Vertex> sorted(w.begin(), w.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ReductionError("pendant_split: attachment vertices must be distinct");
    }
    for (Vertex x : w)
        if (x < 0 || x >= nl) throw ReductionError("pendant_split: attachment vertex out of range");
    const EigenvalueSpec mu = EigenvalueSpec::four_cos_sq(t, 2 * k + 1);

    // G: L, v, path
    WeightedGraph g = disjoint_union(l, empty_graph(1));
    const Vertex v = nl;
    for (Vertex x : w) g.add_weight(x, v, 1.0);
    g = attach_pendant_path(g, v, k);
    // E: L, then (v_j, path_j) for each j
    WeightedGraph e = l;
    for (Vertex x : w) {
        e = disjoint_union(e, empty_graph(1));
        const Vertex vj = e.order() - 1;
        e.add_weight(x, vj, 1.0);
        e = attach_pendant_path(e, vj, k);
    }

    ReductionResult r;
    r.reduction = "pendant-split";
    r.input = g;
    r.output = e;
    r.mu = mu;
    r.rho = rho;
    r.predicted = "m(G) = m(E)";
    r.layout = IndexPartition(g.order(), {{"L", detail::iota_block(0, nl)}, {"v", {v}}, {"path", detail::iota_block(nl + 1, k)}});

    Eigen::VectorXd x = Eigen::VectorXd::Zero(k);
    x(0) = 1.0;
    const SplitLemmaReport lem = splitlem_check(path_graph(k), x, 0.0, rho, mu, tol);
    if (!lem.condition_i) {
        reject(r, "the pendant path does not satisfy the rank-one condition at mu");
        return r;
    }
    r.measured.push_back(measure("m(G)", adjacency(g), rho, mu, tol));
    r.measured.push_back(measure("m(E)", adjacency(e), rho, mu, tol));
    conclude(r, Relation::Equal, [](const detail::Getter& m) { return std::pair{m(0), m(1)}; });
    return r;
}

}  // namespace spectre
