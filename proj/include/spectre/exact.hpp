#pragma once

#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

#include "spectre/eigenvalue.hpp"
#include "spectre/graph.hpp"

namespace spectre {

/// Dense row-major matrix over Q.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}

    static RationalMatrix identity(int n);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }

    mpq_class& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
    const mpq_class& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

    RationalMatrix principal_submatrix(const std::vector<int>& keep) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<mpq_class> data_;
};

mpq_class to_mpq(const Rational& r);

/// Exact conversion: every finite double is a dyadic rational.
RationalMatrix to_rational(const Eigen::MatrixXd& m);

/// D(A) - rho A built directly from the stored weights, without rounding.
RationalMatrix exact_laplacian(const WeightedGraph& g, const mpq_class& rho);

/**
 * True when every entry is a short dyadic rational (an integer multiple of
 * 2^-24 below 2^40 in magnitude). Matrices assembled from integer or simple
 * fractional weights pass; anything produced by floating-point solves or
 * square roots does not, and exact rank on it would be meaningless.
 */
bool exactly_representable(const Eigen::MatrixXd& m);

/// Rank by fraction-free (Bareiss) elimination over the integers.
int exact_rank(const RationalMatrix& m);

/// n - rank(M - mu I).
int exact_multiplicity(const RationalMatrix& m, const mpq_class& mu);

/// Basis of the right nullspace, one vector per free column (RREF over Q).
std::vector<std::vector<mpq_class>> exact_nullspace(const RationalMatrix& m);

}  // namespace spectre
