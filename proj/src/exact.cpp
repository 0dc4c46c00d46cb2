#include "spectre/exact.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace spectre {

RationalMatrix RationalMatrix::identity(int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::principal_submatrix(const std::vector<int>& keep) const {
    const int k = static_cast<int>(keep.size());
    RationalMatrix out(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) out(a, b) = (*this)(keep[static_cast<std::size_t>(a)], keep[static_cast<std::size_t>(b)]);
    return out;
}

mpq_class to_mpq(const Rational& r) {
    mpq_class q(mpz_class(static_cast<long>(r.p)), mpz_class(static_cast<long>(r.q)));
    q.canonicalize();
    return q;
}

RationalMatrix to_rational(const Eigen::MatrixXd& m) {
    RationalMatrix out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
    for (int i = 0; i < out.rows(); ++i) {
        for (int j = 0; j < out.cols(); ++j) {
            if (!std::isfinite(m(i, j))) throw std::domain_error("to_rational: non-finite entry");
            out(i, j) = mpq_class(m(i, j));  // exact for doubles
        }
    }
    return out;
}

RationalMatrix exact_laplacian(const WeightedGraph& g, const mpq_class& rho) {
    const int n = g.order();
    RationalMatrix a(n, n);
    for (const auto& [k, w] : g.weights()) {
        const mpq_class q(w);
        if (k.first == k.second) {
            a(k.first, k.first) = 2 * q;
        } else {
            a(k.first, k.second) = q;
            a(k.second, k.first) = q;
        }
    }
    RationalMatrix l(n, n);
    for (int i = 0; i < n; ++i) {
        mpq_class rowsum = 0;
        for (int j = 0; j < n; ++j) {
            rowsum += a(i, j);
            l(i, j) = -rho * a(i, j);
        }
        l(i, i) += rowsum;
    }
    return l;
}

bool exactly_representable(const Eigen::MatrixXd& m) {
    constexpr double scale = 16777216.0;  // 2^24
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const double x = m.data()[i];
        if (!std::isfinite(x) || std::abs(x) >= 1099511627776.0) return false;  // 2^40
        const double s = x * scale;
        if (s != std::floor(s)) return false;
    }
    return true;
}

int exact_rank(const RationalMatrix& m) {
    const int rows = m.rows();
    const int cols = m.cols();
    // Clearing denominators row by row leaves the rank unchanged.
    std::vector<std::vector<mpz_class>> a(static_cast<std::size_t>(rows), std::vector<mpz_class>(static_cast<std::size_t>(cols)));
    for (int i = 0; i < rows; ++i) {
        mpz_class l = 1;
        for (int j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (int j = 0; j < cols; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j).get_num() * (l / m(i, j).get_den());
    }

    mpz_class prev = 1;
    mpz_class t;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && a[static_cast<std::size_t>(p)][static_cast<std::size_t>(c)] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[static_cast<std::size_t>(p)], a[static_cast<std::size_t>(r)]);
        const auto& pivot_row = a[static_cast<std::size_t>(r)];
        const mpz_class& piv = pivot_row[static_cast<std::size_t>(c)];
        for (int i = r + 1; i < rows; ++i) {
            auto& row = a[static_cast<std::size_t>(i)];
            const mpz_class lead = row[static_cast<std::size_t>(c)];
            for (int j = c + 1; j < cols; ++j) {
                auto& x = row[static_cast<std::size_t>(j)];
                t = piv * x - lead * pivot_row[static_cast<std::size_t>(j)];
                mpz_divexact(x.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            row[static_cast<std::size_t>(c)] = 0;
        }
        prev = piv;
        ++r;
    }
    return r;
}

int exact_multiplicity(const RationalMatrix& m, const mpq_class& mu) {
    if (m.rows() != m.cols()) throw std::invalid_argument("exact_multiplicity: matrix must be square");
    RationalMatrix shifted = m;
    for (int i = 0; i < m.rows(); ++i) shifted(i, i) -= mu;
    return m.rows() - exact_rank(shifted);
}

std::vector<std::vector<mpq_class>> exact_nullspace(const RationalMatrix& m) {
    const int rows = m.rows();
    const int cols = m.cols();
    RationalMatrix a = m;
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && a(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r)
            for (int j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
        const mpq_class inv = 1 / a(r, c);
        for (int j = c; j < cols; ++j) a(r, j) *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == 0) continue;
            const mpq_class f = a(i, c);
            for (int j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<int> is_pivot(static_cast<std::size_t>(cols), -1);
    for (int i = 0; i < r; ++i) is_pivot[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(i)])] = i;
    std::vector<std::vector<mpq_class>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)] >= 0) continue;
        std::vector<mpq_class> v(static_cast<std::size_t>(cols));
        v[static_cast<std::size_t>(f)] = 1;
        for (int i = 0; i < r; ++i) v[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(i)])] = -a(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace spectre
