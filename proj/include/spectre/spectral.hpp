#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spectre/eigenvalue.hpp"
#include "spectre/graph.hpp"

namespace spectre {

class SpectralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EigenCluster {
    double value;  // cluster mean
    int multiplicity;
};

struct EigenSummary {
    std::vector<EigenCluster> clusters;  // ascending
    double tolerance = 0.0;
    double min_gap = 0.0;  // +inf with fewer than two clusters
};

/// max(1e-8, 1e-12 * n * ||M||_inf)
double default_tolerance(const Eigen::MatrixXd& m);

/// Resolves a caller tolerance: nonpositive means "use default_tolerance".
double resolve_tolerance(const Eigen::MatrixXd& m, double tol);

/// Greedy clustering of ascending eigenvalues: a value within tol of the running
/// cluster mean joins that cluster, otherwise it opens a new one.
EigenSummary cluster_eigenvalues(const Eigen::VectorXd& ascending, double tol);

class Eigendecomposition {
public:
    Eigendecomposition(Eigen::VectorXd values, Eigen::MatrixXd vectors, double tol);

    const EigenSummary& summary() const noexcept { return summary_; }
    const Eigen::VectorXd& values() const noexcept { return values_; }
    const Eigen::MatrixXd& vectors() const noexcept { return vectors_; }

    /// Index of the cluster whose mean is within tolerance of x.
    std::optional<std::size_t> find_cluster(double x) const;
    int multiplicity_of(double x) const;

    /// Orthonormal columns spanning the given cluster's eigenspace.
    Eigen::MatrixXd cluster_basis(std::size_t cluster) const;

private:
    Eigen::VectorXd values_;
    Eigen::MatrixXd vectors_;
    EigenSummary summary_;
    std::vector<Eigen::Index> starts_;
};

/// Dense symmetric eigensolve plus clustering. Throws std::invalid_argument for
/// inputs that are not symmetric to 1e-12 relative.
Eigendecomposition eigendecompose(const Eigen::MatrixXd& m, double tol = 0.0);

struct MultiplicityReport {
    int count = 0;                 // exact when available, numeric otherwise
    int numeric = 0;               // clustered count at tol
    std::optional<int> exact;      // rank-based count for rational mu
    bool unstable = false;         // counts at tol/10 and 10 tol disagree
    double tolerance = 0.0;
};

/**
 * Multiplicity of mu in the symmetric matrix M.
 *
 * The numeric count is the size of the eigenvalue cluster containing mu. When
 * mu has an exact rational value and M is exactly representable, the count is
 * n - rank(M - mu I) over Q and the numeric count is kept alongside for
 * cross-checking. `allow_exact = false` forces the numeric path.
 */
MultiplicityReport measure_multiplicity(const Eigen::MatrixXd& m, const EigenvalueSpec& mu, double tol = 0.0,
                                        bool allow_exact = true);

int multiplicity(const Eigen::MatrixXd& m, const EigenvalueSpec& mu, double tol = 0.0);

/// Orthonormal basis of the mu-eigenspace (n x k, k possibly 0).
Eigen::MatrixXd eigenspace_basis(const Eigen::MatrixXd& m, const EigenvalueSpec& mu, double tol = 0.0);

struct StarSet {
    EigenvalueSpec mu;
    std::vector<Vertex> vertices;
    double certificate_gap;  // min |lambda - mu| over the star complement's spectrum
    double tolerance;
    bool greedy;             // found without the exhaustive fallback
};

/// min |lambda - mu| over eigenvalues of M with rows/cols U removed; +inf if nothing remains.
double complement_gap(const Eigen::MatrixXd& m, double mu, std::span<const Vertex> u);

/// |U| = m_M(mu) and the complement gap exceeds 10 * tol.
bool is_star_set(const Eigen::MatrixXd& m, const EigenvalueSpec& mu, std::span<const Vertex> u, double tol = 0.0);

/**
 * A certified mu-star set containing `required`.
 *
 * Rows of an eigenspace basis are chosen by column-pivoted Gram-Schmidt on
 * its transpose (maximal volume, required rows first). When that choice does
 * not certify, all size-k supersets of `required` are tried in lexicographic
 * order on instances with at most 20 vertices.
 */
StarSet find_star_set(const Eigen::MatrixXd& m, const EigenvalueSpec& mu, double tol = 0.0,
                      std::span<const Vertex> required = {});

/// Basis {alpha_s : s in U} with alpha_s(t) = delta_st on U.
Eigen::MatrixXd star_basis(const Eigen::MatrixXd& m, const EigenvalueSpec& mu, std::span<const Vertex> u,
                           double tol = 0.0);

/// mu = 4cos^2(j pi / 2n) with v_j(u) = cos((n - j)(2u - 1) pi / 2n), u = 1..n;
/// the signless variant flips the sign of odd positions.
std::pair<EigenvalueSpec, Eigen::VectorXd> path_eigenpair(int n, int j, bool signless);

}  // namespace spectre
