#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spectre/report.hpp"

namespace spectre::cli {

enum Status { kOk = 0, kVerificationFailure = 1, kUsageError = 2 };

struct GraphInput {
    WeightedGraph graph;
    std::string digest;  // FNV-1a of the file bytes
};

/// Throws GraphParseError (with line number) or std::runtime_error.
GraphInput load_graph(const std::string& path);

/// `result` is the report payload; `error` non-empty means no report is printed.
struct CommandOutput {
    int status = kOk;
    Json result;
    std::string digest;
    double tol = 0.0;
    std::string error;
};

CommandOutput cmd_spectrum(const GraphInput& in, double rho, double tol);
CommandOutput cmd_multiplicity(const GraphInput& in, const EigenvalueSpec& mu, double rho, double tol);
CommandOutput cmd_star_set(const GraphInput& in, const EigenvalueSpec& mu, double rho, double tol);
CommandOutput cmd_bounds(const GraphInput& in, int kmax, double tol, BranchRule rule);

struct ReduceOptions {
    std::string op;               // contract-paths | detach | split
    EigenvalueSpec mu = Rational(0);
    double rho = 1.0;
    double tol = 0.0;
    std::vector<Vertex> branch;   // detach: H; split: the branch hanging at `vertex` (0-indexed)
    std::optional<Vertex> vertex; // split: the vertex to split
    std::string out;              // reduced graph file; written only on pass
};

CommandOutput cmd_reduce(const GraphInput& in, const ReduceOptions& opt);

struct VerifyOptions {
    std::optional<TheoremId> theorem;  // nullopt: all
    int trials = 100;
    std::uint64_t seed = 1;
    double tol = 0.0;
    std::optional<int> replay;         // dump one instance instead of running the suite
    bool serial = false;
};

CommandOutput cmd_verify(const VerifyOptions& opt);

/// SPECTRE_SEED when set and numeric, else 1.
std::uint64_t default_seed();

}  // namespace spectre::cli
