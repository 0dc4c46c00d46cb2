#include "spectre/verify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <exception>
#include <random>
#include <stdexcept>

#include "spectre/report.hpp"

namespace spectre {

namespace {

constexpr std::array<const char*, 8> kNames = {
    "EdgePrinciple", "Detach", "EdgeSwitchInvolution", "PathContraction",
    "ClusterBound",  "PendantBound", "Split",          "SplitLemma",
};

std::size_t slot(TheoremId id) { return static_cast<std::size_t>(id); }

using Rng = std::mt19937_64;

Rng make_rng(std::uint64_t seed, TheoremId id, int index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(index)};
    return Rng(seq);
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, std::max(lo, hi))(rng); }

bool coin(Rng& rng) { return uniform(rng, 0, 1) == 1; }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& items) {
    return items[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(items.size()) - 1))];
}

// Integer weights in [-3, 3] \ {0}.
double draw_weight(Rng& rng) {
    const int w = uniform(rng, 1, 3);
    return coin(rng) ? w : -w;
}

double draw_entry(Rng& rng) { return uniform(rng, -3, 3); }

double draw_rho(Rng& rng, bool unit_only) {
    static const std::vector<double> wide = {1.0, -1.0, 2.0, -0.5};
    if (unit_only) return coin(rng) ? 1.0 : -1.0;
    return pick(rng, wide);
}

WeightedGraph random_graph(Rng& rng, int n, bool weighted) {
    const double p = std::uniform_real_distribution<double>(0.25, 0.7)(rng);
    std::bernoulli_distribution edge(p);
    WeightedGraph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (edge(rng)) g.add_weight(u, v, weighted ? draw_weight(rng) : 1.0);
    return g;
}

WeightedGraph random_tree(Rng& rng, int n) {
    WeightedGraph g(n);
    for (Vertex v = 1; v < n; ++v) g.add_weight(uniform(rng, 0, v - 1), v, 1.0);
    return g;
}

std::vector<Vertex> sample(Rng& rng, int n, int count) {
    std::vector<Vertex> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(std::min(count, n)));
    return all;
}

Eigen::MatrixXd random_symmetric(Rng& rng, int k) {
    Eigen::MatrixXd s(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = a; b < k; ++b) s(a, b) = s(b, a) = draw_entry(rng);
    return s;
}

Eigen::VectorXd random_vector(Rng& rng, int k, bool nonzero) {
    Eigen::VectorXd x(k);
    for (int i = 0; i < k; ++i) x(i) = draw_entry(rng);
    if (nonzero && k > 0 && x.isZero()) x(uniform(rng, 0, k - 1)) = draw_weight(rng);
    return x;
}

// Eigenvalues within 1e-9 of an integer become exact.
EigenvalueSpec snap(double x) {
    const double r = std::round(x);
    if (std::abs(x - r) < 1e-9) return Rational(static_cast<std::int64_t>(r));
    return Float{x};
}

EigenvalueSpec pick_eigenvalue(Rng& rng, const Eigen::MatrixXd& m) {
    return snap(pick(rng, eigendecompose(m).summary().clusters).value);
}

struct Sizes {
    int lo;
    int hi;
    int cap;

    int draw(Rng& rng, int floor = 1, int ceiling = kVertexCap) const {
        return uniform(rng, std::max(lo, floor), std::max(std::max(lo, floor), std::min(hi, ceiling)));
    }
};

int mode_of(const SizeParams& p, int modes, int index) { return (p.variant >= 0 ? p.variant : index) % modes; }

// [H x 0; x^T a x^T; 0 x H] with v in the middle.
Eigen::MatrixXd doubled(const Eigen::MatrixXd& ah, const Eigen::VectorXd& x, double a) {
    const Eigen::Index n = ah.rows();
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(2 * n + 1, 2 * n + 1);
    k.topLeftCorner(n, n) = ah;
    k.bottomRightCorner(n, n) = ah;
    k.block(0, n, n, 1) = x;
    k.block(n, 0, 1, n) = x.transpose();
    k.block(n + 1, n, n, 1) = x;
    k.block(n, n + 1, 1, n) = x.transpose();
    k(n, n) = a;
    return k;
}

Eigen::MatrixXd shifted(const Eigen::MatrixXd& ah, const Eigen::VectorXd& x, double rho) {
    Eigen::MatrixXd m = laplacian_matrix(ah, rho);
    m.diagonal() += x;
    return m;
}

// -- generators --------------------------------------------------------------

InstanceData gen_edge_principle(Rng& rng, const Sizes& sz) {
    EdgePrincipleInstance inst;
    const int n = sz.draw(rng, 2, sz.cap - 3);
    WeightedGraph host = random_graph(rng, n, coin(rng));
    const int d = uniform(rng, 1, std::min(3, n));
    const int r = uniform(rng, 2, 3);
    inst.g = plant_cluster(host, sample(rng, n, d), r);
    inst.rho = draw_rho(rng, true);
    inst.mu = Rational(d);
    const auto pair = sample(rng, inst.g.order(), 2);
    inst.i = pair[0];
    inst.j = pair[1];
    inst.a = draw_weight(rng);
    return inst;
}

WeightedGraph family_graph(Rng& rng, int max_order) {
    const int n = std::max(3, std::min(max_order, uniform(rng, 3, 6)));
    switch (uniform(rng, 0, 3)) {
        case 0: return star_graph(n);
        case 1: return path_graph(n);
        case 2: return complete_graph(n);
        default: {
            const int a = uniform(rng, 1, n - 1);
            return complete_bipartite(a, n - a);
        }
    }
}

InstanceData gen_detach(Rng& rng, const Sizes& sz, int mode) {
    DetachInstance inst;
    inst.rho = draw_rho(rng, true);
    const bool weighted = mode == 0 && coin(rng);
    inst.h = mode == 0 ? random_graph(rng, sz.draw(rng, 2, sz.cap / 2), weighted) : family_graph(rng, sz.cap / 2);
    inst.l = random_graph(rng, sz.draw(rng, 1, sz.cap - inst.h.order()), weighted);
    const Eigen::MatrixXd lh = laplacian_matrix(adjacency(inst.h), inst.rho);
    inst.mu = pick_eigenvalue(rng, lh);
    std::vector<Vertex> star;
    try {
        star = find_star_set(lh, inst.mu).vertices;
    } catch (const SpectralError&) {
        star = sample(rng, inst.h.order(), 1);
    }
    std::shuffle(star.begin(), star.end(), rng);
    star.resize(static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(star.size()))));
    for (Vertex u : star) {
        inst.joins.emplace_back(u, uniform(rng, 0, inst.l.order() - 1));
        if (weighted) inst.join_weights.push_back(draw_weight(rng));
    }
    return inst;
}

InstanceData gen_switch(Rng& rng, const Sizes& sz, int mode) {
    const double rho = draw_rho(rng, mode != 2);
    WeightedGraph h = random_graph(rng, sz.draw(rng, 3, sz.cap / 2), coin(rng));
    const Eigen::MatrixXd lh = laplacian_matrix(adjacency(h), rho);
    const EigenvalueSpec mu = pick_eigenvalue(rng, lh);
    std::vector<Vertex> star;
    try {
        star = find_star_set(lh, mu).vertices;
    } catch (const SpectralError&) {
        star = sample(rng, h.order(), 1);
    }
    std::shuffle(star.begin(), star.end(), rng);
    const int k = uniform(rng, 1, std::min<int>(3, static_cast<int>(star.size())));
    star.resize(static_cast<std::size_t>(k));

    if (mode == 3) {
        SwitchInPlaceInstance inst;
        inst.h = std::move(h);
        inst.i1 = star;
        inst.s = random_symmetric(rng, k);
        inst.rho = rho;
        inst.mu = mu;
        return inst;
    }

    SwitchInstance inst;
    inst.h = std::move(h);
    inst.i1 = star;
    inst.rho = rho;
    inst.mu = mu;
    const int jn = mode == 2 ? uniform(rng, 1, 3) : k;
    inst.l = random_graph(rng, sz.draw(rng, jn, sz.cap - inst.h.order()), coin(rng));
    inst.j1 = sample(rng, inst.l.order(), jn);
    if (mode == 0) {
        inst.mode = SwitchCase::Involution;
        inst.x = Eigen::MatrixXd::Identity(k, k);
        // -S: a random involution, built as a random matching
        std::vector<Vertex> order = sample(rng, k, k);
        Eigen::MatrixXd p = Eigen::MatrixXd::Zero(k, k);
        for (int a = 0; a < k; a += 2) {
            if (a + 1 < k && coin(rng)) {
                p(order[a], order[a + 1]) = p(order[a + 1], order[a]) = 1.0;
            } else {
                p(order[a], order[a]) = 1.0;
                if (a + 1 < k) p(order[a + 1], order[a + 1]) = 1.0;
            }
        }
        inst.s = -p;
    } else if (mode == 1) {
        inst.mode = SwitchCase::FixedPoint;
        inst.s = random_symmetric(rng, k);
        if (rho == -1.0) {
            inst.s.diagonal().setZero();
            inst.s.diagonal() = -inst.s.rowwise().sum();
        }
        // off-diagonal X from X = L_S + D(X); the diagonal is free
        inst.x = -rho * inst.s;
        for (int attempt = 0; attempt < 16; ++attempt) {
            for (int a = 0; a < k; ++a) inst.x(a, a) = draw_weight(rng);
            if (Eigen::FullPivLU<Eigen::MatrixXd>(inst.x).isInvertible()) break;
        }
    } else {
        inst.mode = SwitchCase::General;
        inst.s = random_symmetric(rng, k);
        inst.x.resize(k, jn);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < jn; ++b) inst.x(a, b) = draw_weight(rng);
    }
    return inst;
}

InstanceData gen_contraction(Rng& rng, const Sizes& sz, int variant) {
    ContractionInstance inst;
    const int n = variant >= 3 ? variant : uniform(rng, 3, 8);
    WeightedGraph host = random_graph(rng, sz.draw(rng, 2, sz.cap - n), coin(rng));
    std::vector<WeightedGraph::Key> edges;
    for (const auto& [key, w] : host.weights())
        if (key.first != key.second) edges.push_back(key);
    if (edges.empty()) {
        host.add_weight(0, 1, 1.0);
        edges.emplace_back(0, 1);
    }
    const auto [u, v] = pick(rng, edges);
    const int base = host.order();
    inst.g = subdivide_edge(host, u, v, n);
    for (int i = 0; i < n; ++i) inst.path.push_back(base + i);
    // k in [n-1] \ {n/2}
    do {
        inst.k = uniform(rng, 1, n - 1);
    } while (2 * inst.k == n);
    inst.rho = draw_rho(rng, true);
    return inst;
}

InstanceData gen_cluster(Rng& rng, const Sizes& sz, int mode) {
    if (mode == 0) {
        ClusterGlueInstance inst;
        const bool weighted = coin(rng);
        const int ni = uniform(rng, 1, 3);
        const int nj = uniform(rng, 2, 4);
        const int nk = uniform(rng, 1, 3);
        const int copies = std::min(uniform(rng, 1, 3), std::max(1, (sz.cap - nj - nk) / ni - 1));
        inst.h = random_graph(rng, ni, weighted);
        inst.l = random_graph(rng, nj, weighted);
        inst.k = random_graph(rng, nk, weighted);
        inst.a.resize(ni, nj);
        for (int i = 0; i < ni; ++i)
            for (int j = 0; j < nj; ++j) inst.a(i, j) = draw_entry(rng);
        if (inst.a.isZero()) inst.a(0, 0) = 1.0;
        inst.b.resize(nj, nk);
        for (int j = 0; j < nj; ++j)
            for (int c = 0; c < nk; ++c) inst.b(j, c) = draw_entry(rng);
        inst.h_i.assign(static_cast<std::size_t>(copies), inst.h);
        inst.b_i.assign(static_cast<std::size_t>(copies), inst.a.transpose());
        inst.rho = draw_rho(rng, true);
        Eigen::MatrixXd m = laplacian_matrix(adjacency(inst.h), inst.rho) + row_sum_diagonal(inst.a);
        inst.mu = pick_eigenvalue(rng, m);
        return inst;
    }
    DClusterInstance inst;
    const int n = sz.draw(rng, 3, sz.cap / 2);
    inst.g = random_graph(rng, n, false);
    const int d = uniform(rng, 1, std::min(3, n - 1));
    const int count = uniform(rng, 1, 3);
    std::vector<std::vector<Vertex>> used;
    for (int c = 0; c < count; ++c) {
        std::vector<Vertex> nb = sample(rng, n, d);
        std::sort(nb.begin(), nb.end());
        if (std::find(used.begin(), used.end(), nb) != used.end()) continue;
        const int r = uniform(rng, 2, 4);
        if (inst.g.order() + r > sz.cap) break;
        used.push_back(nb);
        const int base = inst.g.order();
        inst.g = plant_cluster(inst.g, nb, r);
        std::vector<Vertex> members;
        for (int i = 0; i < r; ++i) members.push_back(base + i);
        inst.clusters.push_back(std::move(members));
    }
    return inst;
}

InstanceData gen_pendant(Rng& rng, const Sizes& sz, int variant) {
    PendantInstance inst;
    inst.k = variant >= 1 ? variant : uniform(rng, 1, 4);
    const int planted = uniform(rng, 2, 5);
    const int n = sz.draw(rng, 3, sz.cap - planted * inst.k);
    inst.g = random_tree(rng, n);
    std::vector<Vertex> inner;
    for (Vertex v = 0; v < n; ++v)
        if (inst.g.degree(v) >= 2) inner.push_back(v);
    for (int i = 0; i < planted; ++i) inst.g = attach_pendant_path(inst.g, pick(rng, inner), inst.k);
    inst.planted = planted;
    return inst;
}

InstanceData gen_split(Rng& rng, const Sizes& sz, int mode) {
    if (mode == 0) {
        SplitInstance inst;
        const bool weighted = coin(rng);
        const int nh = uniform(rng, 1, 3);
        const int nl = sz.draw(rng, 1, std::min(6, (sz.cap) / (nh + 2)));
        inst.h = random_graph(rng, nh, weighted);
        inst.x = random_vector(rng, nh, true);
        inst.a = draw_entry(rng);
        inst.l = random_graph(rng, nl, weighted);
        inst.y = random_vector(rng, nl, true);
        inst.rho = draw_rho(rng, false);
        inst.mu = pick_eigenvalue(rng, shifted(adjacency(inst.h), inst.x, inst.rho));
        return inst;
    }
    if (mode == 1) {
        BranchCopiesInstance inst;
        inst.h = random_graph(rng, uniform(rng, 1, 4), coin(rng));
        inst.u = uniform(rng, 0, inst.h.order() - 1);
        inst.copies = uniform(rng, 2, 4);
        inst.l = random_graph(rng, sz.draw(rng, 1, sz.cap - inst.copies * inst.h.order()), coin(rng));
        inst.v = uniform(rng, 0, inst.l.order() - 1);
        inst.rho = draw_rho(rng, true);
        // prefer simple eigenvalues of H - v' - H whose eigenvector vanishes at v'
        Eigen::VectorXd e = Eigen::VectorXd::Zero(inst.h.order());
        e(inst.u) = 1.0;
        const Eigen::MatrixXd lk = laplacian_matrix(doubled(adjacency(inst.h), e, 0.0), inst.rho);
        const auto dec = eigendecompose(lk);
        std::vector<double> good;
        for (std::size_t c = 0; c < dec.summary().clusters.size(); ++c) {
            const auto& cl = dec.summary().clusters[c];
            if (cl.multiplicity == 1 && std::abs(dec.cluster_basis(c)(inst.h.order(), 0)) < 1e-9) good.push_back(cl.value);
        }
        inst.mu = good.empty() ? snap(pick(rng, dec.summary().clusters).value) : snap(pick(rng, good));
        return inst;
    }
    PendantSplitInstance inst;
    inst.k = uniform(rng, 1, 3);
    inst.t = uniform(rng, 1, inst.k);
    const int r = uniform(rng, 1, 4);
    inst.l = random_graph(rng, sz.draw(rng, r, sz.cap - r * (inst.k + 1)), false);
    inst.w = sample(rng, inst.l.order(), r);
    inst.rho = draw_rho(rng, true);
    return inst;
}

InstanceData gen_split_lemma(Rng& rng, int mode) {
    SplitLemmaInstance inst;
    inst.h = random_graph(rng, uniform(rng, 1, 4), coin(rng));
    inst.x = random_vector(rng, inst.h.order(), false);
    inst.a = draw_entry(rng);
    inst.rho = draw_rho(rng, false);
    const Eigen::MatrixXd ah = adjacency(inst.h);
    if (mode == 0) {
        inst.mu = pick_eigenvalue(rng, shifted(ah, inst.x, inst.rho));
    } else if (mode == 1) {
        inst.mu = pick_eigenvalue(rng, laplacian_matrix(doubled(ah, inst.x, inst.a), inst.rho));
    } else {
        inst.mu = Rational(uniform(rng, 0, 6));
    }
    return inst;
}

// -- verification -------------------------------------------------------------

TrialResult from(const ReductionResult& r) {
    TrialResult t;
    t.verdict = r.verdict;
    t.reduction = r.reduction;
    t.relation = to_string(r.relation);
    t.lhs = r.lhs;
    t.rhs = r.rhs;
    t.exact = r.exact;
    t.numeric_agrees = r.numeric_agrees;
    t.unstable = r.unstable;
    t.reason = r.reason;
    return t;
}

TrialResult check_pendant(const PendantInstance& inst, double tol) {
    TrialResult t;
    t.reduction = "pendant-bound";
    t.relation = ">=";
    const auto stats = pendant_stats(inst.g, inst.k);
    if (stats.p < inst.planted) {
        t.verdict = Verdict::Fail;
        t.reason = "pendant scan found " + std::to_string(stats.p) + " of " + std::to_string(inst.planted) +
                   " planted paths";
        return t;
    }
    const auto rows = pendant_bound(inst.g, inst.k, tol);
    t.lhs = inst.g.order();
    t.rhs = rows.empty() ? 0 : rows.front().bound;
    t.exact = !rows.empty();
    bool holds = true;
    bool numeric_holds = true;
    for (const auto& row : rows) {
        t.lhs = std::min({t.lhs, row.laplacian.count, row.signless.count});
        holds = holds && row.holds;
        numeric_holds = numeric_holds && row.laplacian.numeric >= row.bound && row.signless.numeric >= row.bound;
        t.exact = t.exact && row.laplacian.exact && row.signless.exact;
        t.unstable = t.unstable || row.laplacian.unstable || row.signless.unstable;
    }
    t.numeric_agrees = holds == numeric_holds;
    t.verdict = holds ? Verdict::Pass : Verdict::Fail;
    if (!holds) t.reason = "a measured multiplicity is below p_k - q_k";
    return t;
}

TrialResult check_split_lemma(const SplitLemmaInstance& inst, double tol) {
    const auto rep = splitlem_check(inst.h, inst.x, inst.a, inst.rho, inst.mu, tol);
    TrialResult t;
    t.reduction = "split-lemma";
    t.relation = "=";
    t.lhs = rep.condition_i;
    t.rhs = rep.condition_ii;
    t.exact = rep.exact;
    t.verdict = rep.consistent ? Verdict::Pass : Verdict::Fail;
    if (!rep.consistent) {
        t.reason = rep.condition_i != rep.condition_ii ? "conditions (i) and (ii) disagree"
                                                       : "(i) holds but the spliced block keeps mu";
    }
    return t;
}

struct Dispatch {
    double tol;

    TrialResult operator()(const EdgePrincipleInstance& i) const {
        return from(edge_principle_check(i.g, i.rho, i.mu, i.i, i.j, i.a, tol));
    }
    TrialResult operator()(const DetachInstance& i) const { return from(detach(i, tol)); }
    TrialResult operator()(const SwitchInstance& i) const { return from(edge_switch(i, tol)); }
    TrialResult operator()(const SwitchInPlaceInstance& i) const {
        return from(switch_in_place(i.h, i.i1, i.s, i.rho, i.mu, tol));
    }
    TrialResult operator()(const ContractionInstance& i) const {
        const int n = static_cast<int>(i.path.size());
        const EigenvalueSpec mu = i.rho == 1.0 ? EigenvalueSpec::four_sin_sq(i.k, n) : EigenvalueSpec::four_cos_sq(i.k, n);
        return from(contract_path(i.g, i.path, mu, i.rho, tol));
    }
    TrialResult operator()(const ClusterGlueInstance& i) const { return from(cluster_glue_bound(i, tol)); }
    TrialResult operator()(const DClusterInstance& i) const { return from(dcluster_bound(i.g, i.clusters, tol)); }
    TrialResult operator()(const PendantInstance& i) const { return check_pendant(i, tol); }
    TrialResult operator()(const SplitInstance& i) const { return from(split(i, tol)); }
    TrialResult operator()(const BranchCopiesInstance& i) const { return from(split_copies(i, tol)); }
    TrialResult operator()(const PendantSplitInstance& i) const {
        return from(pendant_split(i.l, i.w, i.k, i.t, i.rho, tol));
    }
    TrialResult operator()(const SplitLemmaInstance& i) const { return check_split_lemma(i, tol); }
};

void check_params(const SizeParams& p) {
    if (p.max_vertices < 1 || p.max_vertices > kVertexCap) {
        throw std::invalid_argument("random_instance: max_vertices must be in [1, " + std::to_string(kVertexCap) + "]");
    }
    if (p.min_order < 1 || p.max_order < p.min_order || p.max_order > p.max_vertices) {
        throw std::invalid_argument("random_instance: need 1 <= min_order <= max_order <= max_vertices");
    }
}

TrialResult run_trial(TheoremId id, const SuiteConfig& config, int index) {
    TrialResult t;
    try {
        t = verify(random_instance(id, config.seed, index, config.size), config.tol);
    } catch (const std::exception& e) {
        t.verdict = Verdict::Fail;
        t.reason = std::string("generator error: ") + e.what();
    }
    t.id = id;
    t.index = index;
    return t;
}

struct Job {
    TheoremId id;
    int index;
};

std::vector<Job> jobs_of(const SuiteConfig& config) {
    std::vector<Job> jobs;
    for (TheoremId id : kAllTheorems)
        for (int i = 0; i < config.trials[slot(id)]; ++i) jobs.push_back({id, i});
    return jobs;
}

SuiteReport aggregate(const SuiteConfig& config, const std::vector<TrialResult>& results) {
    SuiteReport report;
    report.seed = config.seed;
    report.tol = config.tol;
    std::size_t pos = 0;
    for (TheoremId id : kAllTheorems) {
        const int n = config.trials[slot(id)];
        if (n < 0) continue;
        TheoremSection s;
        s.id = id;
        for (int i = 0; i < n; ++i, ++pos) {
            const TrialResult& t = results[pos];
            ++s.trials;
            switch (t.verdict) {
                case Verdict::Pass: ++s.passes; break;
                case Verdict::HypothesisNotMet: ++s.rejections; break;
                case Verdict::Fail: ++s.failures; break;
            }
            if (t.verdict == Verdict::HypothesisNotMet) continue;
            if (t.exact) ++s.exact;
            if (t.exact && !t.numeric_agrees) ++s.numeric_disagreements;
            if (t.unstable) ++s.unstable;
            if (t.verdict == Verdict::Fail) {
                nlohmann::ordered_json dump;
                try {
                    dump = to_json(random_instance(id, config.seed, t.index, config.size));
                } catch (const std::exception& e) {
                    dump = {{"error", e.what()}};
                }
                s.failed.push_back({t.index, t, std::move(dump)});
            }
        }
        report.sections.push_back(std::move(s));
    }
    return report;
}

}  // namespace

std::string to_string(TheoremId id) { return kNames[slot(id)]; }

std::optional<TheoremId> parse_theorem(const std::string& name) {
    auto lower = [](std::string s) {
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
        return s;
    };
    for (TheoremId id : kAllTheorems)
        if (lower(kNames[slot(id)]) == lower(name)) return id;
    return std::nullopt;
}

Instance random_instance(TheoremId id, std::uint64_t seed, int index, const SizeParams& params) {
    check_params(params);
    Rng rng = make_rng(seed, id, index);
    const Sizes sz{params.min_order, params.max_order, params.max_vertices};
    Instance inst{id, seed, index, EdgePrincipleInstance{}};
    switch (id) {
        case TheoremId::EdgePrinciple: inst.data = gen_edge_principle(rng, sz); break;
        case TheoremId::Detach: inst.data = gen_detach(rng, sz, mode_of(params, 2, index)); break;
        case TheoremId::EdgeSwitchInvolution: inst.data = gen_switch(rng, sz, mode_of(params, 4, index)); break;
        case TheoremId::PathContraction: inst.data = gen_contraction(rng, sz, params.variant); break;
        case TheoremId::ClusterBound: inst.data = gen_cluster(rng, sz, mode_of(params, 2, index)); break;
        case TheoremId::PendantBound: inst.data = gen_pendant(rng, sz, params.variant); break;
        case TheoremId::Split: inst.data = gen_split(rng, sz, mode_of(params, 3, index)); break;
        case TheoremId::SplitLemma: inst.data = gen_split_lemma(rng, mode_of(params, 3, index)); break;
    }
    return inst;
}

TrialResult verify(const Instance& inst, double tol) {
    TrialResult t;
    try {
        t = std::visit(Dispatch{tol}, inst.data);
    } catch (const std::exception& e) {
        t.verdict = Verdict::Fail;
        t.reason = std::string("error: ") + e.what();
    }
    t.id = inst.id;
    t.index = inst.index;
    return t;
}

SuiteConfig SuiteConfig::uniform(int trials, std::uint64_t seed, double tol) {
    SuiteConfig c;
    c.trials.fill(trials);
    c.seed = seed;
    c.tol = tol;
    return c;
}

int SuiteReport::failures() const {
    int n = 0;
    for (const auto& s : sections) n += s.failures;
    return n;
}

SuiteReport run_suite(const SuiteConfig& config) {
    check_params(config.size);
    const std::vector<Job> jobs = jobs_of(config);
    std::vector<TrialResult> results(jobs.size());
    const long count = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        results[static_cast<std::size_t>(i)] = run_trial(jobs[static_cast<std::size_t>(i)].id, config,
                                                         jobs[static_cast<std::size_t>(i)].index);
    }
    return aggregate(config, results);
}

SuiteReport run_suite_serial(const SuiteConfig& config) {
    check_params(config.size);
    const std::vector<Job> jobs = jobs_of(config);
    std::vector<TrialResult> results;
    results.reserve(jobs.size());
    for (const Job& job : jobs) results.push_back(run_trial(job.id, config, job.index));
    return aggregate(config, results);
}

}  // namespace spectre
