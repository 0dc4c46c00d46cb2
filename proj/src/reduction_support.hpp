#pragma once

// Helpers shared by the reduction implementations; not part of the public API.

#include <functional>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "spectre/reductions.hpp"

namespace spectre::detail {

/// Smallest visible overlap between an eigenvector and a test vector, relative to both norms.
inline constexpr double kOverlapFloor = 1e-6;

Measurement measure(std::string label, const Eigen::MatrixXd& adjacency, double rho, const EigenvalueSpec& mu,
                    double tol, bool allow_exact = true);

/// ||M||_2 of a symmetric matrix.
double spectral_norm(const Eigen::MatrixXd& m);

/// Columns c (orthonormal) with rows * c ~ 0; singular values at most `threshold` count as zero.
Eigen::MatrixXd null_combinations(const Eigen::MatrixXd& rows, double threshold);

/// Numeric rank with singular values above `threshold * largest`.
int numeric_rank(const Eigen::MatrixXd& m, double threshold);

using Getter = std::function<int(std::size_t)>;
using Sides = std::function<std::pair<int, int>(const Getter&)>;

/// Fills lhs/rhs, exact/unstable flags, numeric agreement and the verdict
/// (Pass or Fail) from the measurements already stored in `r`.
void conclude(ReductionResult& r, Relation relation, const Sides& sides);

/// Rejects the instance without a prediction.
void reject(ReductionResult& r, std::string reason);

bool relation_holds(Relation relation, int lhs, int rhs);

/// Adds `m` into `target` at the given offsets.
void place(Eigen::MatrixXd& target, Eigen::Index row, Eigen::Index col, const Eigen::MatrixXd& m);

/// Symmetric placement: m at (row, col) and m^T at (col, row).
void place_sym(Eigen::MatrixXd& target, Eigen::Index row, Eigen::Index col, const Eigen::MatrixXd& m);

std::vector<Vertex> iota_block(int start, int count);

/// Checks that `coupling` (n_H x n_L) has zero row sums and annihilates the
/// mu-eigenspace of L^rho_H. Returns an empty string when it does.
std::string coupling_violation(const Eigen::MatrixXd& coupling, const Eigen::MatrixXd& lh, const EigenvalueSpec& mu,
                               double tol);

}  // namespace spectre::detail
