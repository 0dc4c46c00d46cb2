#include "spectre/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>

namespace spectre {

namespace {

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json vertices(const std::vector<Vertex>& v) { return Json(v); }

const char* switch_case_name(SwitchCase c) {
    switch (c) {
        case SwitchCase::Involution: return "involution";
        case SwitchCase::FixedPoint: return "fixed-point";
        case SwitchCase::General: return "general";
    }
    return "general";
}

struct InstanceJson {
    Json operator()(const EdgePrincipleInstance& i) const {
        return {{"kind", "edge-principle"}, {"graph", to_json(i.g)}, {"rho", i.rho}, {"mu", to_json(i.mu)},
                {"i", i.i},                 {"j", i.j},              {"a", i.a}};
    }
    Json operator()(const DetachInstance& i) const {
        Json joins = Json::array();
        for (const auto& [u, v] : i.joins) joins.push_back({u, v});
        Json j = {{"kind", "detach"}, {"h", to_json(i.h)},   {"l", to_json(i.l)},  {"joins", joins},
                  {"join_weights", i.join_weights}, {"mu", to_json(i.mu)}, {"rho", i.rho}};
        if (i.coupling) j["coupling"] = to_json(*i.coupling);
        return j;
    }
    Json operator()(const SwitchInstance& i) const {
        Json j = {{"kind", "edge-switch"}, {"case", switch_case_name(i.mode)}, {"h", to_json(i.h)},
                  {"l", to_json(i.l)},     {"i1", vertices(i.i1)},            {"j1", vertices(i.j1)},
                  {"s", to_json(i.s)},     {"x", to_json(i.x)},               {"rho", i.rho},
                  {"mu", to_json(i.mu)}};
        if (i.coupling) j["coupling"] = to_json(*i.coupling);
        return j;
    }
    Json operator()(const SwitchInPlaceInstance& i) const {
        return {{"kind", "switch-in-place"}, {"h", to_json(i.h)}, {"i1", vertices(i.i1)},
                {"s", to_json(i.s)},         {"rho", i.rho},      {"mu", to_json(i.mu)}};
    }
    Json operator()(const ContractionInstance& i) const {
        return {{"kind", "contract-path"}, {"graph", to_json(i.g)}, {"path", vertices(i.path)}, {"k", i.k},
                {"rho", i.rho}};
    }
    Json operator()(const ClusterGlueInstance& i) const {
        Json h_i = Json::array();
        for (const auto& g : i.h_i) h_i.push_back(to_json(g));
        Json l_i = Json::array();
        for (const auto& g : i.l_i) l_i.push_back(to_json(g));
        Json b_i = Json::array();
        for (const auto& m : i.b_i) b_i.push_back(to_json(m));
        Json gammas = Json::array();
        for (const auto& v : i.gammas) gammas.push_back(to_json(v));
        return {{"kind", "cluster-glue"}, {"h", to_json(i.h)}, {"l", to_json(i.l)},   {"k", to_json(i.k)},
                {"a", to_json(i.a)},      {"b", to_json(i.b)}, {"h_i", h_i},          {"l_i", l_i},
                {"b_i", b_i},             {"rho", i.rho},      {"mu", to_json(i.mu)}, {"gammas", gammas}};
    }
    Json operator()(const DClusterInstance& i) const {
        return {{"kind", "d-cluster"}, {"graph", to_json(i.g)}, {"clusters", i.clusters}};
    }
    Json operator()(const PendantInstance& i) const {
        return {{"kind", "pendant-bound"}, {"graph", to_json(i.g)}, {"k", i.k}, {"planted", i.planted}};
    }
    Json operator()(const SplitInstance& i) const {
        return {{"kind", "split"},      {"h", to_json(i.h)}, {"x", to_json(i.x)},   {"a", i.a},
                {"l", to_json(i.l)},    {"y", to_json(i.y)}, {"mu", to_json(i.mu)}, {"rho", i.rho}};
    }
    Json operator()(const BranchCopiesInstance& i) const {
        return {{"kind", "split-copies"}, {"h", to_json(i.h)},     {"u", i.u},      {"l", to_json(i.l)},
                {"v", i.v},               {"copies", i.copies},    {"mu", to_json(i.mu)}, {"rho", i.rho}};
    }
    Json operator()(const PendantSplitInstance& i) const {
        return {{"kind", "pendant-split"}, {"l", to_json(i.l)}, {"w", vertices(i.w)}, {"k", i.k},
                {"t", i.t},                {"rho", i.rho}};
    }
    Json operator()(const SplitLemmaInstance& i) const {
        return {{"kind", "split-lemma"}, {"h", to_json(i.h)}, {"x", to_json(i.x)}, {"a", i.a},
                {"rho", i.rho},          {"mu", to_json(i.mu)}};
    }
};

}  // namespace

Json to_json(const WeightedGraph& g) {
    Json edges = Json::array();
    for (const auto& [key, w] : g.weights()) edges.push_back({key.first, key.second, w});
    return {{"order", g.order()}, {"edges", edges}};
}

Json to_json(const EigenvalueSpec& mu) {
    Json j = {{"expr", to_string(mu)}, {"value", mu.value()}};
    if (auto r = mu.exact_value()) j["exact"] = std::to_string(r->p) + (r->q == 1 ? "" : "/" + std::to_string(r->q));
    return j;
}

Json to_json(const Eigen::MatrixXd& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const Eigen::VectorXd& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

Json to_json(const IndexPartition& p) {
    Json blocks = Json::object();
    for (const auto& [name, members] : p.blocks()) blocks[name] = members;
    return blocks;
}

Json to_json(const MultiplicityReport& r) {
    return {{"count", r.count},
            {"numeric", r.numeric},
            {"exact", r.exact ? Json(*r.exact) : Json(nullptr)},
            {"unstable", r.unstable},
            {"tolerance", r.tolerance}};
}

Json to_json(const EigenSummary& s) {
    Json clusters = Json::array();
    for (const auto& c : s.clusters) clusters.push_back({{"value", c.value}, {"multiplicity", c.multiplicity}});
    return {{"clusters", clusters}, {"tolerance", s.tolerance}, {"min_gap", number_or_null(s.min_gap)}};
}

Json to_json(const StarSet& s) {
    return {{"mu", to_json(s.mu)},
            {"vertices", s.vertices},
            {"certificate_gap", number_or_null(s.certificate_gap)},
            {"tolerance", s.tolerance},
            {"greedy", s.greedy}};
}

Json to_json(const ReductionResult& r) {
    Json measured = Json::array();
    for (const auto& m : r.measured) measured.push_back({{"label", m.label}, {"multiplicity", to_json(m.report)}});
    return {{"reduction", r.reduction},
            {"mu", to_json(r.mu)},
            {"rho", r.rho},
            {"verdict", to_string(r.verdict)},
            {"reason", r.reason},
            {"predicted", r.predicted},
            {"relation", to_string(r.relation)},
            {"lhs", r.lhs},
            {"rhs", r.rhs},
            {"exact", r.exact},
            {"numeric_agrees", r.numeric_agrees},
            {"unstable", r.unstable},
            {"measured", measured},
            {"residuals", r.residuals},
            {"layout", to_json(r.layout)},
            {"input", to_json(r.input)},
            {"output", to_json(r.output)}};
}

Json to_json(const PendantStats& s) {
    Json paths = Json::array();
    for (const auto& p : s.witnesses) paths.push_back({{"vertices", p.vertices}, {"branch", p.branch}});
    return {{"k", s.k}, {"p", s.p}, {"q", s.q}, {"paths", paths}};
}

Json to_json(const TrialResult& t) {
    return {{"index", t.index},   {"verdict", to_string(t.verdict)}, {"reduction", t.reduction},
            {"relation", t.relation}, {"lhs", t.lhs},                {"rhs", t.rhs},
            {"exact", t.exact},   {"numeric_agrees", t.numeric_agrees}, {"unstable", t.unstable},
            {"reason", t.reason}};
}

Json to_json(const Instance& inst) {
    Json j = {{"theorem", to_string(inst.id)}, {"seed", inst.seed}, {"index", inst.index}};
    j["data"] = std::visit(InstanceJson{}, inst.data);
    return j;
}

Json to_json(const SuiteReport& r) {
    Json sections = Json::array();
    for (const auto& s : r.sections) {
        Json failed = Json::array();
        for (const auto& f : s.failed) failed.push_back({{"result", to_json(f.result)}, {"instance", f.instance}});
        sections.push_back({{"theorem", to_string(s.id)},
                            {"trials", s.trials},
                            {"passes", s.passes},
                            {"rejections", s.rejections},
                            {"failures", s.failures},
                            {"exact", s.exact},
                            {"numeric_disagreements", s.numeric_disagreements},
                            {"unstable", s.unstable},
                            {"failed", failed}});
    }
    return {{"seed", r.seed},
            {"tolerance", r.tol > 0.0 ? Json(r.tol) : Json(nullptr)},
            {"failures", r.failures()},
            {"sections", sections}};
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json make_report(const std::string& command, const std::string& input_digest, double tolerance, Json result) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return {{"schema_version", kSchemaVersion},
            {"command", command},
            {"input_digest", input_digest},
            {"tolerance", tolerance > 0.0 ? Json(tolerance) : Json(nullptr)},
            {"result", std::move(result)},
            {"generated_at", stamp}};
}

}  // namespace spectre
