#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "spectre/reductions.hpp"
#include "spectre/spectral.hpp"
#include "spectre/verify.hpp"

namespace spectre {

using Json = nlohmann::ordered_json;

/// Bumped on any breaking change to the report layout.
inline constexpr int kSchemaVersion = 1;

// Vertices are 0-indexed in JSON, as in memory.
Json to_json(const WeightedGraph& g);
Json to_json(const EigenvalueSpec& mu);
Json to_json(const Eigen::MatrixXd& m);
Json to_json(const Eigen::VectorXd& v);
Json to_json(const IndexPartition& p);
Json to_json(const MultiplicityReport& r);
Json to_json(const EigenSummary& s);
Json to_json(const StarSet& s);
Json to_json(const ReductionResult& r);
Json to_json(const PendantStats& s);
Json to_json(const TrialResult& t);
Json to_json(const Instance& inst);
Json to_json(const SuiteReport& r);

/// 64-bit FNV-1a, 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// The report envelope: schema_version, command, input_digest, tolerance,
/// result, generated_at (UTC, ISO 8601). `tolerance <= 0` is written as null
/// (per-matrix default).
Json make_report(const std::string& command, const std::string& input_digest, double tolerance, Json result);

}  // namespace spectre
