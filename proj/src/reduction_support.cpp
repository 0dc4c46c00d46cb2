#include "reduction_support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace spectre {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::HypothesisNotMet: return "hypothesis-not-met";
    }
    return "unknown";
}

std::string to_string(Relation r) { return r == Relation::Equal ? "=" : ">="; }

namespace detail {

Measurement measure(std::string label, const Eigen::MatrixXd& adjacency, double rho, const EigenvalueSpec& mu,
                    double tol, bool allow_exact) {
    return Measurement{std::move(label), measure_multiplicity(laplacian_matrix(adjacency, rho), mu, tol, allow_exact)};
}

double spectral_norm(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXd null_combinations(const Eigen::MatrixXd& rows, double threshold) {
    const Eigen::Index k = rows.cols();
    if (k == 0) return Eigen::MatrixXd(0, 0);
    if (rows.rows() == 0) return Eigen::MatrixXd::Identity(k, k);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > threshold) ++rank;
    return svd.matrixV().rightCols(k - rank);
}

int numeric_rank(const Eigen::MatrixXd& m, double threshold) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > threshold * sv(0)) ++rank;
    return rank;
}

bool relation_holds(Relation relation, int lhs, int rhs) {
    return relation == Relation::Equal ? lhs == rhs : lhs >= rhs;
}

void conclude(ReductionResult& r, Relation relation, const Sides& sides) {
    r.relation = relation;
    const auto counted = sides([&](std::size_t i) { return r.measured.at(i).report.count; });
    const auto numeric = sides([&](std::size_t i) { return r.measured.at(i).report.numeric; });
    r.lhs = counted.first;
    r.rhs = counted.second;
    r.exact = !r.measured.empty() &&
              std::all_of(r.measured.begin(), r.measured.end(), [](const Measurement& m) { return m.report.exact.has_value(); });
    r.unstable = std::any_of(r.measured.begin(), r.measured.end(), [](const Measurement& m) { return m.report.unstable; });
    const bool holds = relation_holds(relation, r.lhs, r.rhs);
    r.numeric_agrees = relation_holds(relation, numeric.first, numeric.second) == holds;
    r.verdict = holds ? Verdict::Pass : Verdict::Fail;
    if (!holds) {
        r.reason = "measured " + std::to_string(r.lhs) + " " + (relation == Relation::Equal ? "!=" : "<") + " " +
                   std::to_string(r.rhs);
    }
}

void reject(ReductionResult& r, std::string reason) {
    r.verdict = Verdict::HypothesisNotMet;
    r.reason = std::move(reason);
}

void place(Eigen::MatrixXd& target, Eigen::Index row, Eigen::Index col, const Eigen::MatrixXd& m) {
    target.block(row, col, m.rows(), m.cols()) += m;
}

void place_sym(Eigen::MatrixXd& target, Eigen::Index row, Eigen::Index col, const Eigen::MatrixXd& m) {
    target.block(row, col, m.rows(), m.cols()) += m;
    target.block(col, row, m.cols(), m.rows()) += m.transpose();
}

std::vector<Vertex> iota_block(int start, int count) {
    std::vector<Vertex> v(static_cast<std::size_t>(count));
    std::iota(v.begin(), v.end(), start);
    return v;
}

std::string coupling_violation(const Eigen::MatrixXd& coupling, const Eigen::MatrixXd& lh, const EigenvalueSpec& mu,
                               double tol) {
    tol = resolve_tolerance(lh, tol);
    const double scale = std::max(1.0, coupling.cwiseAbs().maxCoeff());
    if (coupling.size() && coupling.rowwise().sum().cwiseAbs().maxCoeff() > tol * scale) {
        return "coupling has nonzero row sums";
    }
    const Eigen::MatrixXd v = eigenspace_basis(lh, mu, tol);
    if (v.cols() && (coupling.transpose() * v).cwiseAbs().maxCoeff() > 10.0 * tol * scale) {
        return "coupling does not annihilate the eigenspace of H";
    }
    return {};
}

}  // namespace detail
}  // namespace spectre
