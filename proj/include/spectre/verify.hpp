#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "spectre/reductions.hpp"

namespace spectre {

enum class TheoremId {
    EdgePrinciple,
    Detach,
    EdgeSwitchInvolution,
    PathContraction,
    ClusterBound,
    PendantBound,
    Split,
    SplitLemma,
};

inline constexpr std::array<TheoremId, 8> kAllTheorems = {
    TheoremId::EdgePrinciple, TheoremId::Detach,       TheoremId::EdgeSwitchInvolution, TheoremId::PathContraction,
    TheoremId::ClusterBound,  TheoremId::PendantBound, TheoremId::Split,                TheoremId::SplitLemma,
};

std::string to_string(TheoremId id);
/// Accepts the enumerator name, case-insensitively.
std::optional<TheoremId> parse_theorem(const std::string& name);

// Instance payloads, one per generator mode.

struct EdgePrincipleInstance {
    WeightedGraph g;
    double rho = 1.0;
    EigenvalueSpec mu = Rational(0);
    Vertex i = 0;
    Vertex j = 1;
    double a = 1.0;
};

struct SwitchInPlaceInstance {
    WeightedGraph h;
    std::vector<Vertex> i1;
    Eigen::MatrixXd s;
    double rho = 1.0;
    EigenvalueSpec mu = Rational(0);
};

struct ContractionInstance {
    WeightedGraph g;
    std::vector<Vertex> path;
    int k = 1;  // mu = 4sin^2(k pi / n) for rho = 1, 4cos^2(k pi / n) for rho = -1
    double rho = 1.0;
};

struct DClusterInstance {
    WeightedGraph g;
    std::vector<std::vector<Vertex>> clusters;
};

struct PendantInstance {
    WeightedGraph g;
    int k = 1;
    int planted = 0;
};

struct PendantSplitInstance {
    WeightedGraph l;
    std::vector<Vertex> w;
    int k = 1;
    int t = 1;
    double rho = 1.0;
};

struct SplitLemmaInstance {
    WeightedGraph h;
    Eigen::VectorXd x;
    double a = 0.0;
    double rho = 1.0;
    EigenvalueSpec mu = Rational(0);
};

using InstanceData =
    std::variant<EdgePrincipleInstance, DetachInstance, SwitchInstance, SwitchInPlaceInstance, ContractionInstance,
                 ClusterGlueInstance, DClusterInstance, PendantInstance, SplitInstance, BranchCopiesInstance,
                 PendantSplitInstance, SplitLemmaInstance>;

struct Instance {
    TheoremId id = TheoremId::EdgePrinciple;
    std::uint64_t seed = 0;
    int index = 0;
    InstanceData data;
};

/// Generator caps. `variant` selects a theorem-specific mode when >= 0:
/// PathContraction path length, PendantBound k, or the generator mode index
/// for ids with several (Detach 0..1, EdgeSwitchInvolution 0..3,
/// ClusterBound 0..1, Split 0..2, SplitLemma 0..2).
struct SizeParams {
    int max_vertices = 40;
    int min_order = 2;
    int max_order = 8;
    int variant = -1;
};

inline constexpr int kVertexCap = 40;

/// Deterministic in (id, seed, index, params). Throws std::invalid_argument
/// when the params exceed the caps.
Instance random_instance(TheoremId id, std::uint64_t seed, int index, const SizeParams& params = {});

struct TrialResult {
    TheoremId id = TheoremId::EdgePrinciple;
    int index = 0;
    Verdict verdict = Verdict::HypothesisNotMet;
    std::string reduction;
    std::string relation;
    int lhs = 0;
    int rhs = 0;
    bool exact = false;
    bool numeric_agrees = true;
    bool unstable = false;
    std::string reason;
};

/// Runs the reduction behind the instance; never throws (errors become failures).
TrialResult verify(const Instance& inst, double tol = 0.0);

struct SuiteConfig {
    std::array<int, 8> trials{};  // indexed like kAllTheorems; negative: theorem left out
    std::uint64_t seed = 1;
    double tol = 0.0;             // 0: per-matrix default
    SizeParams size;

    static SuiteConfig uniform(int trials, std::uint64_t seed, double tol = 0.0);
};

struct FailureDump {
    int index = 0;
    TrialResult result;
    nlohmann::ordered_json instance;
};

struct TheoremSection {
    TheoremId id = TheoremId::EdgePrinciple;
    int trials = 0;
    int passes = 0;
    int rejections = 0;
    int failures = 0;
    int exact = 0;                  // passes/failures decided by exact rank
    int numeric_disagreements = 0;  // numeric relation differs from the exact one
    int unstable = 0;
    std::vector<FailureDump> failed;
};

struct SuiteReport {
    std::uint64_t seed = 0;
    double tol = 0.0;
    std::vector<TheoremSection> sections;  // theorems with trials >= 0, in kAllTheorems order

    int failures() const;
};

/// Trials run in parallel (OpenMP); results are keyed by trial index, so the
/// report does not depend on the schedule.
SuiteReport run_suite(const SuiteConfig& config);

/// Same trials on the calling thread; the reference for run_suite.
SuiteReport run_suite_serial(const SuiteConfig& config);

}  // namespace spectre
