#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "spectre/graph_io.hpp"

namespace spectre::cli {

namespace {

CommandOutput usage(std::string message) {
    CommandOutput out;
    out.status = kUsageError;
    out.error = std::move(message);
    return out;
}

CommandOutput payload(const GraphInput& in, double tol, Json result, int status = kOk) {
    CommandOutput out;
    out.status = status;
    out.result = std::move(result);
    out.digest = in.digest;
    out.tol = tol;
    return out;
}

// Report-side vertex labels are 1-indexed like the graph files.
Json labels(const std::vector<Vertex>& v) {
    Json out = Json::array();
    for (Vertex x : v) out.push_back(x + 1);
    return out;
}

// A reduction without its (possibly large) graph pair.
Json summary(const ReductionResult& r) {
    Json j = to_json(r);
    j.erase("input");
    j.erase("output");
    return j;
}

std::vector<Vertex> complement(int n, const std::vector<Vertex>& set) {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < n; ++v)
        if (std::find(set.begin(), set.end(), v) == set.end()) out.push_back(v);
    return out;
}

std::string check_vertices(const std::vector<Vertex>& vs, int n) {
    for (Vertex v : vs)
        if (v < 0 || v >= n) return "vertex " + std::to_string(v + 1) + " out of range 1.." + std::to_string(n);
    std::vector<Vertex> sorted = vs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return "repeated vertex";
    return {};
}

bool write_out(const std::string& path, const WeightedGraph& g, CommandOutput& out) {
    if (path.empty()) return true;
    try {
        write_graph_file(path, g);
    } catch (const std::exception& e) {
        out.status = kUsageError;
        out.error = e.what();
        return false;
    }
    out.result["written"] = path;
    return true;
}

CommandOutput reduce_contract(const GraphInput& in, const ReduceOptions& opt) {
    WeightedGraph g = in.graph;
    if (find_internal_paths(g, 3).empty()) return usage("pattern absent: no internal path of 3 or more degree-2 vertices");
    Json steps = Json::array();
    int rejected = 0;
    bool failed = false;
    for (bool progress = true; progress && !failed;) {
        progress = false;
        for (const auto& run : find_internal_paths(g, 3)) {
            // the longest window at the start of the run that certifies
            for (auto n = run.size(); n >= 3 && !progress && !failed; --n) {
                const std::vector<Vertex> window(run.begin(), run.begin() + static_cast<std::ptrdiff_t>(n));
                const ReductionResult r = contract_path(g, window, opt.mu, opt.rho, opt.tol);
                if (r.verdict == Verdict::HypothesisNotMet) {
                    ++rejected;
                    continue;
                }
                Json step = summary(r);
                step["path"] = labels(window);
                steps.push_back(std::move(step));
                if (r.verdict == Verdict::Fail) {
                    failed = true;
                } else {
                    g = r.output;
                    progress = true;
                }
            }
            if (progress || failed) break;
        }
    }
    const auto before = measure_multiplicity(generalized_laplacian(in.graph, opt.rho).matrix(), opt.mu, opt.tol);
    const auto after = measure_multiplicity(generalized_laplacian(g, opt.rho).matrix(), opt.mu, opt.tol);
    Json result = {{"op", opt.op},
                   {"mu", to_json(opt.mu)},
                   {"rho", opt.rho},
                   {"contracted", failed ? steps.size() - 1 : steps.size()},
                   {"rejected_windows", rejected},
                   {"steps", steps},
                   {"before", {{"order", in.graph.order()}, {"multiplicity", to_json(before)}}},
                   {"after", {{"order", g.order()}, {"multiplicity", to_json(after)}}}};
    const bool ok = !failed && !steps.empty() && before.count == after.count;
    result["verdict"] = ok ? "pass" : (failed || before.count != after.count ? "fail" : "hypothesis-not-met");
    CommandOutput out = payload(in, opt.tol, std::move(result), ok ? kOk : kVerificationFailure);
    if (ok) write_out(opt.out, g, out);
    return out;
}

CommandOutput reduce_detach(const GraphInput& in, const ReduceOptions& opt) {
    const WeightedGraph& g = in.graph;
    if (opt.branch.empty()) return usage("detach needs --branch (the vertices of H)");
    if (auto why = check_vertices(opt.branch, g.order()); !why.empty()) return usage(why);
    const std::vector<Vertex> rest = complement(g.order(), opt.branch);
    if (rest.empty()) return usage("the branch covers the whole graph");

    DetachInstance inst;
    inst.h = induced_subgraph(g, opt.branch);
    inst.l = induced_subgraph(g, rest);
    inst.mu = opt.mu;
    inst.rho = opt.rho;
    for (std::size_t a = 0; a < opt.branch.size(); ++a) {
        for (std::size_t b = 0; b < rest.size(); ++b) {
            const double w = g.weight(opt.branch[a], rest[b]);
            if (w == 0.0) continue;
            if (!inst.joins.empty() && inst.joins.back().first == static_cast<Vertex>(a)) {
                return usage("branch vertex " + std::to_string(opt.branch[a] + 1) + " has more than one edge into L");
            }
            inst.joins.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
            inst.join_weights.push_back(w);
        }
    }
    if (inst.joins.empty()) return usage("pattern absent: the branch is not joined to the rest");
    if (opt.rho != 1.0 && opt.rho != -1.0) return usage("detach needs rho = 1 or -1");

    const ReductionResult r = detach(inst, opt.tol);
    Json result = {{"op", opt.op}, {"branch", labels(opt.branch)}, {"kept", labels(rest)}, {"reduction", summary(r)}};
    CommandOutput out = payload(in, opt.tol, std::move(result), r.verdict == Verdict::Pass ? kOk : kVerificationFailure);
    if (r.verdict == Verdict::Pass) write_out(opt.out, inst.l, out);
    return out;
}

CommandOutput reduce_split(const GraphInput& in, const ReduceOptions& opt) {
    const WeightedGraph& g = in.graph;
    if (!opt.vertex) return usage("split needs --vertex");
    if (opt.branch.empty()) return usage("split needs --branch (the vertices hanging at --vertex)");
    const Vertex v = *opt.vertex;
    std::vector<Vertex> both = opt.branch;
    both.push_back(v);
    if (auto why = check_vertices(both, g.order()); !why.empty()) return usage(why);
    const std::vector<Vertex> rest = complement(g.order(), both);
    if (rest.empty()) return usage("split needs vertices outside the branch and --vertex");
    for (Vertex a : opt.branch)
        for (Vertex b : rest)
            if (g.weight(a, b) != 0.0) return usage("pattern absent: the branch touches the rest other than through --vertex");

    SplitInstance inst;
    inst.h = induced_subgraph(g, opt.branch);
    inst.l = induced_subgraph(g, rest);
    inst.x.resize(static_cast<Eigen::Index>(opt.branch.size()));
    for (std::size_t i = 0; i < opt.branch.size(); ++i) inst.x(static_cast<Eigen::Index>(i)) = g.weight(v, opt.branch[i]);
    inst.y.resize(static_cast<Eigen::Index>(rest.size()));
    for (std::size_t j = 0; j < rest.size(); ++j) inst.y(static_cast<Eigen::Index>(j)) = g.weight(v, rest[j]);
    inst.a = 2.0 * g.weight(v, v);
    inst.mu = opt.mu;
    inst.rho = opt.rho;

    const ReductionResult r = split(inst, opt.tol);
    Json result = {{"op", opt.op}, {"vertex", *opt.vertex + 1}, {"branch", labels(opt.branch)}, {"reduction", summary(r)}};
    if (r.verdict != Verdict::Pass) return payload(in, opt.tol, std::move(result), kVerificationFailure);

    // Copies facing a zero coupling are isolated blocks with multiplicity 0
    // once the hypothesis holds; the emitted graph leaves them out.
    const int block = inst.h.order() + 1;
    const int nl = inst.l.order();
    std::vector<Vertex> keep;
    for (int j = 0; j < nl; ++j)
        if (inst.y(j) != 0.0)
            for (int i = 0; i < block; ++i) keep.push_back(j * block + i);
    for (int j = 0; j < nl; ++j) keep.push_back(nl * block + j);
    const WeightedGraph emitted = induced_subgraph(r.output, keep);
    const auto m_emitted = measure_multiplicity(generalized_laplacian(emitted, opt.rho).matrix(), opt.mu, opt.tol);
    result["emitted"] = {{"order", emitted.order()}, {"multiplicity", to_json(m_emitted)}};
    const bool ok = m_emitted.count == r.lhs;
    CommandOutput out = payload(in, opt.tol, std::move(result), ok ? kOk : kVerificationFailure);
    if (ok) write_out(opt.out, emitted, out);
    return out;
}

}  // namespace

GraphInput load_graph(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path);
    std::ostringstream bytes;
    bytes << file.rdbuf();
    const std::string text = bytes.str();
    std::istringstream in(text);
    return GraphInput{read_graph(in), fnv1a_hex(text)};
}

CommandOutput cmd_spectrum(const GraphInput& in, double rho, double tol) {
    if (rho == 0.0) return usage("rho must be nonzero");
    const auto dec = eigendecompose(generalized_laplacian(in.graph, rho).matrix(), tol);
    return payload(in, tol, {{"rho", rho}, {"order", in.graph.order()}, {"spectrum", to_json(dec.summary())}});
}

CommandOutput cmd_multiplicity(const GraphInput& in, const EigenvalueSpec& mu, double rho, double tol) {
    if (rho == 0.0) return usage("rho must be nonzero");
    const auto rep = measure_multiplicity(generalized_laplacian(in.graph, rho).matrix(), mu, tol);
    return payload(in, tol, {{"mu", to_json(mu)}, {"rho", rho}, {"multiplicity", to_json(rep)}});
}

CommandOutput cmd_star_set(const GraphInput& in, const EigenvalueSpec& mu, double rho, double tol) {
    if (rho == 0.0) return usage("rho must be nonzero");
    const Eigen::MatrixXd l = generalized_laplacian(in.graph, rho).matrix();
    if (multiplicity(l, mu, tol) == 0) return usage("mu = " + to_string(mu) + " is not an eigenvalue (multiplicity 0)");
    try {
        const StarSet s = find_star_set(l, mu, tol);
        Json j = to_json(s);
        j["vertices"] = labels(s.vertices);
        j["verified"] = is_star_set(l, mu, s.vertices, tol);
        return payload(in, tol, {{"rho", rho}, {"star_set", j}});
    } catch (const SpectralError& e) {
        CommandOutput out = usage(e.what());
        out.status = kVerificationFailure;
        return out;
    }
}

CommandOutput cmd_bounds(const GraphInput& in, int kmax, double tol, BranchRule rule) {
    const WeightedGraph& g = in.graph;
    if (!g.is_simple()) return usage("bounds needs a simple unweighted graph");
    if (kmax < 1) return usage("--kmax must be at least 1");
    bool holds = true;

    Json pendant = Json::array();
    for (int k = 1; k <= kmax; ++k) {
        const PendantStats stats = pendant_stats(g, k, rule);
        Json rows = Json::array();
        for (const auto& row : pendant_bound(g, k, tol, rule)) {
            rows.push_back({{"mu", to_json(row.mu)},
                            {"bound", row.bound},
                            {"laplacian", to_json(row.laplacian)},
                            {"signless", to_json(row.signless)},
                            {"holds", row.holds}});
            holds = holds && row.holds;
        }
        Json paths = Json::array();
        for (const auto& p : stats.witnesses) paths.push_back({{"vertices", labels(p.vertices)}, {"branch", p.branch + 1}});
        pendant.push_back({{"k", k}, {"p", stats.p}, {"q", stats.q}, {"paths", paths}, {"rows", rows}});
    }

    const auto clusters = detect_clusters(g);
    Json found = Json::array();
    std::map<std::size_t, std::vector<std::vector<Vertex>>> by_d;
    for (const auto& c : clusters) {
        found.push_back({{"vertices", labels(c.vertices)},
                         {"neighbors", labels(c.neighbors)},
                         {"d", c.neighbors.size()},
                         {"order", c.vertices.size()}});
        by_d[c.neighbors.size()].push_back(c.vertices);
    }
    Json cluster_bounds = Json::array();
    for (const auto& [d, group] : by_d) {
        Json entry = {{"d", d}, {"clusters", group.size()}};
        try {
            const ReductionResult r = dcluster_bound(g, group, tol);
            entry["reduction"] = summary(r);
            holds = holds && r.verdict != Verdict::Fail;
        } catch (const ReductionError& e) {
            entry["error"] = e.what();
        }
        cluster_bounds.push_back(std::move(entry));
    }

    Json result = {{"branch_rule", rule == BranchRule::DegreeAtLeast3 ? "degree>=3" : "degree>3"},
                   {"pendant", pendant},
                   {"clusters", found},
                   {"cluster_bounds", cluster_bounds}};
    return payload(in, tol, std::move(result), holds ? kOk : kVerificationFailure);
}

CommandOutput cmd_reduce(const GraphInput& in, const ReduceOptions& opt) {
    if (opt.rho == 0.0) return usage("rho must be nonzero");
    try {
        if (opt.op == "contract-paths") return reduce_contract(in, opt);
        if (opt.op == "detach") return reduce_detach(in, opt);
        if (opt.op == "split") return reduce_split(in, opt);
    } catch (const ReductionError& e) {
        return usage(e.what());
    }
    return usage("unknown --op " + opt.op);
}

CommandOutput cmd_verify(const VerifyOptions& opt) {
    if (opt.trials < 0) return usage("--trials must be nonnegative");
    const std::string digest = fnv1a_hex("verify " + (opt.theorem ? to_string(*opt.theorem) : std::string("all")) + " " +
                                         std::to_string(opt.trials) + " " + std::to_string(opt.seed));
    CommandOutput out;
    out.digest = digest;
    out.tol = opt.tol;
    if (opt.replay) {
        if (!opt.theorem) return usage("--replay needs a single --theorem");
        try {
            const Instance inst = random_instance(*opt.theorem, opt.seed, *opt.replay);
            const TrialResult t = verify(inst, opt.tol);
            out.result = {{"replay", to_json(t)}, {"instance", to_json(inst)}};
            out.status = t.verdict == Verdict::Fail ? kVerificationFailure : kOk;
        } catch (const std::invalid_argument& e) {
            return usage(e.what());
        }
        return out;
    }
    SuiteConfig config;
    config.seed = opt.seed;
    config.tol = opt.tol;
    for (TheoremId id : kAllTheorems)
        config.trials[static_cast<std::size_t>(id)] = !opt.theorem || *opt.theorem == id ? opt.trials : -1;
    const SuiteReport report = opt.serial ? run_suite_serial(config) : run_suite(config);
    out.result = to_json(report);
    out.status = report.failures() > 0 ? kVerificationFailure : kOk;
    return out;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("SPECTRE_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0') return v;
    }
    return 1;
}

}  // namespace spectre::cli
