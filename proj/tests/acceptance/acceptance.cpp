// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance <path to the spectre binary>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "spectre/exact.hpp"
#include "spectre/report.hpp"
#include "spectre/verify.hpp"

using namespace spectre;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

Eigen::MatrixXd lap(const WeightedGraph& g, double rho = 1.0) { return generalized_laplacian(g, rho).matrix(); }

int exact_m(const WeightedGraph& g, int mu) { return exact_multiplicity(exact_laplacian(g, 1), mu); }

WeightedGraph random_simple(std::mt19937_64& rng, int lo, int hi) {
    const int n = std::uniform_int_distribution<int>(lo, hi)(rng);
    return oracle::random_graph(rng, n, std::uniform_real_distribution<double>(0.2, 0.7)(rng), false);
}

Outcome closed_forms() {
    Outcome o;
    int worst_n = 0;
    double worst = 0.0;
    for (int n = 2; n <= 50; ++n) {
        const Eigen::VectorXd p = eigendecompose(lap(path_graph(n))).values();
        const Eigen::VectorXd c = eigendecompose(lap(cycle_graph(n))).values();
        std::vector<double> pe, ce;
        for (int j = 1; j <= n; ++j) pe.push_back(4 * std::pow(std::cos(j * M_PI / (2 * n)), 2));
        for (int k = 0; k < n; ++k) ce.push_back(4 * std::pow(std::sin(k * M_PI / n), 2));
        std::sort(pe.begin(), pe.end());
        std::sort(ce.begin(), ce.end());
        for (int i = 0; i < n; ++i) {
            const double e = std::max(std::abs(p(i) - pe[i]), std::abs(c(i) - ce[i]));
            if (e > worst) {
                worst = e;
                worst_n = n;
            }
        }
    }
    o.ok = worst <= 1e-8;
    std::ostringstream s;
    s << "max deviation " << worst << " (n = " << worst_n << ")";
    o.detail = s.str();
    return o;
}

Outcome p3_attachment() {
    Outcome o;
    std::mt19937_64 rng(1101);
    int good = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const WeightedGraph g = random_simple(rng, 1, 12);
        const Vertex v = std::uniform_int_distribution<int>(0, g.order() - 1)(rng);
        const WeightedGraph joined = connected_sum(g, path_graph(3), v, 0);
        const bool same = exact_m(joined, 1) == exact_m(g, 1) &&
                          oracle::multiplicity_q(oracle::laplacian_q(joined, 1), 1) ==
                              oracle::multiplicity_q(oracle::laplacian_q(g, 1), 1);
        good += same ? 1 : 0;
    }
    o.ok = good == 200;
    o.detail = std::to_string(good) + "/200 exact equalities";
    return o;
}

Outcome star_sum() {
    Outcome o;
    std::mt19937_64 rng(1301);
    int good = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int k = 2 + trial % 5;
        const WeightedGraph g = random_simple(rng, 1, 12);
        const Vertex v = std::uniform_int_distribution<int>(0, g.order() - 1)(rng);
        const Vertex s = std::uniform_int_distribution<int>(0, k - 1)(rng);
        const WeightedGraph joined = connected_sum(g, star_graph(k), v, s);
        good += exact_m(joined, k) == exact_m(g, k) ? 1 : 0;
    }
    o.ok = good == 200;
    o.detail = std::to_string(good) + "/200 exact equalities";
    return o;
}

// Runs generated instances until `want` certify; all certified ones must pass.
Outcome certified_run(TheoremId id, int variant, int want, std::uint64_t seed,
                      const std::function<bool(const TrialResult&)>& extra = {}) {
    Outcome o;
    SizeParams params;
    params.variant = variant;
    int certified = 0, passed = 0, exact = 0, drawn = 0;
    for (int index = 0; certified < want && index < 20 * want; ++index, ++drawn) {
        const TrialResult r = verify(random_instance(id, seed, index, params));
        if (r.verdict == Verdict::HypothesisNotMet) continue;
        ++certified;
        exact += r.exact ? 1 : 0;
        if (r.verdict == Verdict::Pass && r.numeric_agrees && (!extra || extra(r))) ++passed;
    }
    o.ok = certified == want && passed == want;
    o.detail = std::to_string(passed) + "/" + std::to_string(certified) + " certified pass (" +
               std::to_string(exact) + " exact, " + std::to_string(drawn) + " drawn)";
    return o;
}

Outcome detach_equality() {
    Outcome a = certified_run(TheoremId::Detach, 0, 100, 2401);
    Outcome b = certified_run(TheoremId::Detach, 1, 100, 2402);
    return {a.ok && b.ok, "random H: " + a.detail + "; family H: " + b.detail};
}

Outcome path_contraction() {
    Outcome o;
    std::mt19937_64 rng(2111);
    int checks = 0, good = 0;
    for (int n = 3; n <= 6; ++n)
        for (int host_i = 0; host_i < 100; ++host_i) {
            WeightedGraph host = oracle::random_graph(rng, std::uniform_int_distribution<int>(2, 10)(rng), 0.5,
                                                      host_i % 2 == 1);
            if (host.size() == 0) host.add_weight(0, 1, 1.0);
            std::vector<WeightedGraph::Key> edges;
            for (const auto& [key, w] : host.weights()) edges.push_back(key);
            const auto [u, v] = edges[std::uniform_int_distribution<std::size_t>(0, edges.size() - 1)(rng)];
            const WeightedGraph g = subdivide_edge(host, u, v, n);
            std::vector<Vertex> path;
            for (int i = 0; i < n; ++i) path.push_back(host.order() + i);
            const WeightedGraph contracted = contract_internal_path(g, path);
            for (int k = 1; k < n; ++k) {
                if (2 * k == n) continue;
                for (double rho : {1.0, -1.0}) {
                    const EigenvalueSpec mu =
                        rho == 1.0 ? EigenvalueSpec::four_sin_sq(k, n) : EigenvalueSpec::four_cos_sq(k, n);
                    ++checks;
                    const ReductionResult r = contract_path(g, path, mu, rho);
                    const int before = measure_multiplicity(lap(g, rho), mu, 1e-6, false).count;
                    const int after = measure_multiplicity(lap(contracted, rho), mu, 1e-6, false).count;
                    good += r.verdict == Verdict::Pass && before == after ? 1 : 0;
                }
            }
        }
    o.ok = good == checks;
    o.detail = std::to_string(good) + "/" + std::to_string(checks) + " (host, k, rho) preserved at tol 1e-6";
    return o;
}

Outcome cluster_bound() {
    Outcome o;
    std::mt19937_64 rng(1401);
    int good = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        WeightedGraph g = random_simple(rng, 3, 10);
        const int n0 = g.order();
        const int d = std::uniform_int_distribution<int>(1, std::min(3, n0))(rng);
        const int k = std::uniform_int_distribution<int>(1, 3)(rng);
        std::vector<std::vector<Vertex>> clusters;
        int total = 0;
        std::vector<Vertex> pool(n0);
        std::iota(pool.begin(), pool.end(), 0);
        for (int c = 0; c < k; ++c) {
            // a fresh neighbourhood per cluster keeps them independent and distinct
            std::shuffle(pool.begin(), pool.end(), rng);
            std::vector<Vertex> nb(pool.begin(), pool.begin() + d);
            std::sort(nb.begin(), nb.end());
            const int r = std::uniform_int_distribution<int>(2, 4)(rng);
            const int first = g.order();
            g = plant_cluster(g, nb, r);
            std::vector<Vertex> cl;
            for (int i = 0; i < r; ++i) cl.push_back(first + i);
            clusters.push_back(cl);
            total += r;
        }
        const ReductionResult res = dcluster_bound(g, clusters);
        const int m = exact_m(g, d);
        bool ok = res.verdict == Verdict::Pass && m >= total - k && res.lhs == m;
        for (double x : res.residuals) {
            worst = std::max(worst, x);
            ok = ok && x <= 1e-9;
        }
        good += ok ? 1 : 0;
    }
    o.ok = good == 100;
    std::ostringstream s;
    s << good << "/100 exact bounds hold, max gamma residual " << worst;
    o.detail = s.str();
    return o;
}

Outcome pendant_bound_trees() {
    Outcome o;
    int good = 0, exact_k1 = 0;
    SizeParams params;
    for (int k = 1; k <= 4; ++k) {
        params.variant = k;
        for (int index = 0; index < 100; ++index) {
            const auto inst = std::get<PendantInstance>(random_instance(TheoremId::PendantBound, 1500 + k, index, params).data);
            const auto [p, q] = oracle::pendant_scan(inst.g, k);
            bool ok = true;
            for (const auto& row : pendant_bound(inst.g, k)) {
                ok = ok && row.bound == p - q && row.laplacian.count >= row.bound && row.signless.count >= row.bound;
                if (k == 1) {
                    const bool exact = row.laplacian.exact.has_value() && row.signless.exact.has_value();
                    exact_k1 += exact ? 1 : 0;
                    ok = ok && exact;
                }
            }
            good += ok ? 1 : 0;
        }
    }
    o.ok = good == 400 && exact_k1 == 100;
    o.detail = std::to_string(good) + "/400 trees, k=1 exact on " + std::to_string(exact_k1) + "/100";
    return o;
}

Outcome vertex_splitting() {
    Outcome general = certified_run(TheoremId::Split, 0, 100, 4101);
    Outcome copies = certified_run(TheoremId::Split, 1, 100, 4102);
    std::mt19937_64 rng(4103);
    int family = 0, family_ok = 0;
    for (int k = 1; k <= 3; ++k)
        for (int r = 1; r <= 4; ++r)
            for (int t = 1; t <= k; ++t)
                for (int rep = 0; rep < 3; ++rep) {
                    const WeightedGraph l = random_simple(rng, r, r + 4);
                    std::vector<Vertex> w(r);
                    std::iota(w.begin(), w.end(), 0);
                    const ReductionResult res = pendant_split(l, w, k, t, rep == 2 ? -1.0 : 1.0);
                    ++family;
                    family_ok += res.verdict == Verdict::Pass ? 1 : 0;
                }
    return {general.ok && copies.ok && family_ok == family,
            "split: " + general.detail + "; t copies: " + copies.detail + "; pendant-path split family " +
                std::to_string(family_ok) + "/" + std::to_string(family)};
}

Outcome split_equivalence() {
    Outcome o;
    int good = 0, cond_i = 0;
    for (int index = 0; index < 200; ++index) {
        const auto inst = std::get<SplitLemmaInstance>(random_instance(TheoremId::SplitLemma, 4201, index).data);
        const SplitLemmaReport r = splitlem_check(inst.h, inst.x, inst.a, inst.rho, inst.mu);
        cond_i += r.condition_i ? 1 : 0;
        good += r.condition_i == r.condition_ii && (!r.condition_i || r.m_hat == 0) ? 1 : 0;
    }
    o.ok = good == 200;
    o.detail = std::to_string(good) + "/200 agree ((i) held in " + std::to_string(cond_i) + ")";
    return o;
}

Outcome star_sets() {
    Outcome o;
    std::vector<std::pair<WeightedGraph, double>> corpus;
    for (int n = 2; n <= 12; ++n) {
        for (double rho : {1.0, -1.0}) {
            corpus.emplace_back(path_graph(n), rho);
            if (n >= 3) corpus.emplace_back(cycle_graph(n), rho);
            corpus.emplace_back(complete_graph(n), rho);
            corpus.emplace_back(star_graph(n), rho);
            corpus.emplace_back(complete_bipartite(n / 2, n - n / 2), rho);
        }
    }
    std::mt19937_64 rng(1001);
    for (int i = 0; i < 200; ++i)
        corpus.emplace_back(oracle::random_graph(rng, 3 + i % 12, 0.5, i % 3 == 0), i % 4 == 0 ? -1.0 : 1.0);

    int total = 0, verified = 0, greedy = 0;
    for (const auto& [g, rho] : corpus) {
        const Eigen::MatrixXd l = lap(g, rho);
        const auto dec = eigendecompose(l);
        for (const auto& c : dec.summary().clusters) {
            ++total;
            const EigenvalueSpec mu = EigenvalueSpec::real(c.value);
            try {
                const StarSet s = find_star_set(l, mu);
                const bool ok = static_cast<int>(s.vertices.size()) == c.multiplicity &&
                                is_star_set(l, mu, s.vertices, s.tolerance) && s.certificate_gap > 10 * s.tolerance;
                verified += ok ? 1 : 0;
                greedy += s.greedy ? 1 : 0;
            } catch (const SpectralError&) {
            }
        }
    }
    o.ok = verified == total;
    std::ostringstream s;
    s << verified << "/" << total << " certified and re-verified; greedy " << std::fixed;
    s.precision(1);
    s << 100.0 * greedy / std::max(total, 1) << "% (informational)";
    o.detail = s.str();
    return o;
}

std::string run_capture(const std::string& cmd, int& status) {
    std::string out;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) {
        status = -1;
        return out;
    }
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int raw = ::pclose(pipe);
    status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return out;
}

Outcome determinism(const std::string& cli) {
    Outcome o;
    const std::string cmd = cli + " verify --theorem all --trials 100 --seed 1";
    int s1 = 0, s2 = 0;
    const std::string a = run_capture(cmd, s1);
    const std::string b = run_capture(cmd, s2);
    try {
        Json ja = Json::parse(a), jb = Json::parse(b);
        ja.erase("generated_at");
        jb.erase("generated_at");
        const bool same = ja.dump(2) == jb.dump(2);
        int failures = ja["result"]["failures"].get<int>();
        o.ok = same && s1 == 0 && s2 == 0;
        o.detail = std::string(same ? "identical" : "DIFFERENT") + " reports, exit " + std::to_string(s1) + "/" +
                   std::to_string(s2) + ", " + std::to_string(failures) + " failures";
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail = std::string("bad output: ") + e.what();
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <spectre binary>\n";
        return 2;
    }
    const std::string cli = argv[1];
    struct Criterion {
        const char* name;
        double budget;  // seconds; 0: none
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"closed-form path and cycle spectra", 5, closed_forms},
        {"P3 end-vertex attachment keeps m_L(1)", 30, p3_attachment},
        {"star connected sum keeps m_L(k)", 30, star_sum},
        {"detach equality", 0, detach_equality},
        {"internal path contraction", 0, path_contraction},
        {"d-cluster lower bound", 0, cluster_bound},
        {"pendant path lower bound", 0, pendant_bound_trees},
        {"vertex splitting", 0, vertex_splitting},
        {"splitting equivalence", 0, split_equivalence},
        {"star-set certificates", 0, star_sets},
        {"verify determinism", 0, [&] { return determinism(cli); }},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o = criteria[i].run();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criteria[i].budget > 0 && secs >= criteria[i].budget) {
            o.ok = false;
            o.detail += " [over time budget]";
        }
        all = all && o.ok;
        std::printf("%s %2zu %s: %s (%.2fs)\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(), secs);
    }
    return all ? 0 : 1;
}
