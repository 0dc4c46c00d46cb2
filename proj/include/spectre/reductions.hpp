#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spectre/eigenvalue.hpp"
#include "spectre/graph.hpp"
#include "spectre/spectral.hpp"

namespace spectre {

/// Malformed reduction input (dimension mismatch, bad index, ...). Unmet
/// spectral hypotheses are not errors; they yield Verdict::HypothesisNotMet.
class ReductionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Verdict { Pass, Fail, HypothesisNotMet };
enum class Relation { Equal, AtLeast };

std::string to_string(Verdict v);
std::string to_string(Relation r);

struct Measurement {
    std::string label;  // e.g. "m(G)"
    MultiplicityReport report;
};

/**
 * Outcome of one reduction: the graph pair, the predicted relation
 * `lhs (= | >=) rhs` between multiplicity expressions, and the measured
 * values behind it. `lhs`/`rhs` use exact counts where available; the
 * relation is re-evaluated on the purely numeric counts and any disagreement
 * is recorded in `numeric_agrees`.
 */
struct ReductionResult {
    std::string reduction;
    WeightedGraph input;
    WeightedGraph output;
    EigenvalueSpec mu = Rational(0);
    double rho = 1.0;
    Relation relation = Relation::Equal;
    std::string predicted;
    int lhs = 0;
    int rhs = 0;
    std::vector<Measurement> measured;
    std::vector<double> residuals;  // certificate residuals, when the reduction builds eigenvectors
    bool exact = false;             // every count came from exact rank
    bool unstable = false;          // some numeric count moved between tol/10 and 10 tol
    bool numeric_agrees = true;
    Verdict verdict = Verdict::HypothesisNotMet;
    std::string reason;
    IndexPartition layout;
};

// ---------------------------------------------------------------------------
// Edge principle

/**
 * Adds `a` to A_ij (i != j). Requires rho = +-1, x a mu-eigenvector of l and
 * x_i = rho x_j; then x stays a mu-eigenvector of the result.
 */
GeneralizedLaplacian edge_principle(const GeneralizedLaplacian& l, const Eigen::VectorXd& x, const EigenvalueSpec& mu,
                                    Vertex i, Vertex j, double a, double tol = 0.0);

/// Searches the mu-eigenspace of L^rho(g) for x with x_i = rho x_j, applies
/// edge_principle and checks the eigen-residual of x afterwards.
ReductionResult edge_principle_check(const WeightedGraph& g, double rho, const EigenvalueSpec& mu, Vertex i, Vertex j,
                                     double a, double tol = 0.0);

// ---------------------------------------------------------------------------
// Detaching a branch at star-set vertices

struct DetachInstance {
    WeightedGraph h;
    WeightedGraph l;
    std::vector<std::pair<Vertex, Vertex>> joins;  // (u_i in H, v_i in L); u_i distinct
    std::vector<double> join_weights;              // empty: all 1; otherwise nonzero
    EigenvalueSpec mu = Rational(0);
    double rho = 1.0;                              // +-1
    std::optional<Eigen::MatrixXd> coupling;       // n_H x n_L, zero row sums, annihilates the mu-eigenspace of H
};

/// G = H and L joined along `joins` (plus the optional coupling); predicts
/// m(G) = m(L) + m(H) - t.
ReductionResult detach(const DetachInstance& inst, double tol = 0.0);

// ---------------------------------------------------------------------------
// Edge switching

enum class SwitchCase {
    Involution,  // X = I, -S the permutation matrix of an involution; S' = S
    FixedPoint,  // X = L^rho_S + D(X); S' = S
    General,     // S' from rho^2 X^T (L^rho_S + D(X))^{-1} X - D(X^T)
};

struct SwitchInstance {
    WeightedGraph h;
    WeightedGraph l;
    std::vector<Vertex> i1;  // in H
    std::vector<Vertex> j1;  // in L
    Eigen::MatrixXd s;       // |I1| x |I1|, symmetric
    Eigen::MatrixXd x;       // |I1| x |J1|
    double rho = 1.0;
    EigenvalueSpec mu = Rational(0);
    SwitchCase mode = SwitchCase::General;
    std::optional<Eigen::MatrixXd> coupling;  // n_H x n_L, as for DetachInstance
};

/// The S' subtracted on the L side. Throws ReductionError when L^rho_S + D(X)
/// is singular or (rho = 1) the right-hand side has nonzero row sums.
Eigen::MatrixXd switch_complement(const SwitchInstance& inst);

/// G: S added on I1 of H, X couples I1 to J1. E: no coupling, S' subtracted
/// on J1 of L. Predicts m(E) = m(G) + |I1|.
ReductionResult edge_switch(const SwitchInstance& inst, double tol = 0.0);

/// H + S on I1 with no L side; predicts m(H^) = m(H) - |I1| when L^rho_S is invertible.
ReductionResult switch_in_place(const WeightedGraph& h, std::span<const Vertex> i1, const Eigen::MatrixXd& s,
                                double rho, const EigenvalueSpec& mu, double tol = 0.0);

/**
 * Replaces the internal path (n degree-2 vertices, n >= 3) by a unit edge.
 * Certifies that mu is a double eigenvalue of L^rho(C_n) with the two path
 * ends as a star set, then predicts an unchanged multiplicity.
 */
ReductionResult contract_path(const WeightedGraph& g, std::span<const Vertex> path, const EigenvalueSpec& mu,
                              double rho, double tol = 0.0);

/// Maximal runs of degree-2 vertices with unit edges whose two attachment vertices differ.
std::vector<std::vector<Vertex>> find_internal_paths(const WeightedGraph& g, int min_length = 1);

// ---------------------------------------------------------------------------
// Gluing copies of a block along J

/**
 * Block data for the glued matrix
 *
 *        I      I_1 ..  I_{r-1}   J      J_1
 *   I  [ H      0        0        A      0  ]
 *   I_i[ 0      H_i      0        B_i^T  0  ]
 *   J  [ A^T    B_i ...           L      B  ]
 *   J_1[ 0      0        0        B^T    K  ]
 *
 * with the side systems E_i = [H A 0; A^T L_i B_i; 0 B_i^T H_i] and
 * E = [H A 0; A^T L B; 0 B^T K]. B_i is |J| x |I_i|.
 */
struct ClusterGlueInstance {
    WeightedGraph h;
    WeightedGraph l;
    WeightedGraph k;
    Eigen::MatrixXd a;  // |I| x |J|
    Eigen::MatrixXd b;  // |J| x |J_1|
    std::vector<WeightedGraph> h_i;
    std::vector<WeightedGraph> l_i;  // empty entries default to L
    std::vector<Eigen::MatrixXd> b_i;
    double rho = 1.0;
    EigenvalueSpec mu = Rational(0);
    std::vector<Eigen::VectorXd> gammas;  // optional witnesses, indexed like E_i; empty: search
};

/// Assembles the glued matrix, finds or checks the witnesses, extends them by
/// zero and predicts m >= s + r - 1. Residuals of the extended vectors are
/// recorded; they must be at most 10 tol ||G|| and the vectors independent.
ReductionResult cluster_glue_bound(const ClusterGlueInstance& inst, double tol = 0.0);

struct Cluster {
    std::vector<Vertex> vertices;   // at least two, pairwise non-adjacent
    std::vector<Vertex> neighbors;  // shared neighbourhood; d = size
};

/// Maximal sets of two or more vertices sharing one neighbourhood (simple graphs).
std::vector<Cluster> detect_clusters(const WeightedGraph& g);

/**
 * Independent d-clusters: predicts m_L(d) >= sum r_i - k and certifies it with
 * the vectors e_{c_0} - e_{c_j} of each cluster (residual and rank recorded).
 */
ReductionResult dcluster_bound(const WeightedGraph& g, const std::vector<std::vector<Vertex>>& clusters,
                               double tol = 0.0);

// ---------------------------------------------------------------------------
// Pendant paths

enum class BranchRule {
    DegreeAtLeast3,  // the convention used for bounds
    DegreeAbove3,    // literal "greater than three" reading, kept for comparison
};

struct PendantPath {
    std::vector<Vertex> vertices;  // leaf first
    Vertex branch;
};

struct PendantStats {
    int k = 0;
    int p = 0;
    int q = 0;
    std::vector<PendantPath> witnesses;
};

/// Pendant paths with exactly k non-branch vertices. Simple graphs only.
PendantStats pendant_stats(const WeightedGraph& g, int k, BranchRule rule = BranchRule::DegreeAtLeast3);

struct PendantBoundRow {
    EigenvalueSpec mu = Rational(0);
    int bound = 0;
    MultiplicityReport laplacian;
    MultiplicityReport signless;
    bool holds = false;
};

/// mu = 4cos^2(i pi / (2k + 1)) for i = 1..k, both L and Q against p_k - q_k.
std::vector<PendantBoundRow> pendant_bound(const WeightedGraph& g, int k, double tol = 0.0,
                                           BranchRule rule = BranchRule::DegreeAtLeast3);

// ---------------------------------------------------------------------------
// Vertex splitting

/**
 * G = [H x 0; x^T a y^T; 0 y L] (v between H and L). E replaces v by |J|
 * copies v_j, each carrying its own [H x; x^T a] block and the single
 * coupling y_j to vertex j of L. `a` is the matrix entry at v, i.e. twice a
 * loop weight.
 */
struct SplitInstance {
    WeightedGraph h;
    Eigen::VectorXd x;
    double a = 0.0;
    WeightedGraph l;
    Eigen::VectorXd y;
    EigenvalueSpec mu = Rational(0);
    double rho = 1.0;
};

/// Predicts m(G) = m(E) once m(L^rho_H + D(x))(mu) = 1 with x^T alpha != 0.
ReductionResult split(const SplitInstance& inst, double tol = 0.0);

/**
 * t copies of (H, u) hang from v in L (G) versus a single copy (E); predicts
 * m(G) = m(E) + t - 1 when the doubled graph K = H - v' - H has mu simple
 * with an eigenvector vanishing at v'.
 */
struct BranchCopiesInstance {
    WeightedGraph h;
    Vertex u = 0;
    WeightedGraph l;
    Vertex v = 0;
    int copies = 1;
    EigenvalueSpec mu = Rational(0);
    double rho = 1.0;
};

ReductionResult split_copies(const BranchCopiesInstance& inst, double tol = 0.0);

/**
 * G: v adjacent to w_1..w_r of L and carrying a pendant path of length k.
 * E: v split into v_1..v_r, v_j adjacent to w_j, each with its own path.
 * Predicts equal multiplicity of 4cos^2(t pi / (2k + 1)).
 */
ReductionResult pendant_split(const WeightedGraph& l, std::span<const Vertex> w, int k, int t, double rho,
                              double tol = 0.0);

struct SplitLemmaReport {
    bool condition_i = false;   // m(L_H + D(x)) = 1 and x^T alpha != 0
    bool condition_ii = false;  // m(L_K) = 1 and beta(v) = 0
    bool hat_vanishes = false;  // m(L_H^) = 0
    int m_shifted = 0;
    int m_doubled = 0;
    int m_hat = 0;
    double overlap = 0.0;       // |x^T alpha| / (|x| |alpha|), 0 when m_shifted != 1
    double beta_v = 0.0;        // |beta(v)| / |beta|, 1 when m_doubled != 1
    bool exact = false;
    bool consistent = false;    // (i) <=> (ii), and (i) => hat_vanishes
};

/// Evaluates both sides of the splitting equivalence on K = [H x 0; x^T a x^T; 0 x H].
SplitLemmaReport splitlem_check(const WeightedGraph& h, const Eigen::VectorXd& x, double a, double rho,
                                const EigenvalueSpec& mu, double tol = 0.0);

}  // namespace spectre
