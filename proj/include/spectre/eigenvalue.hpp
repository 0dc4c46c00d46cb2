#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace spectre {

/// p/q in lowest terms with q > 0.
struct Rational {
    std::int64_t p = 0;
    std::int64_t q = 1;

    Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    double value() const noexcept { return static_cast<double>(p) / static_cast<double>(q); }
    bool operator==(const Rational&) const = default;
};

/// 4 cos^2(i pi / m), 1 <= i < m.
struct FourCosSq {
    int i;
    int m;
    bool operator==(const FourCosSq&) const = default;
};

/// 4 sin^2(k pi / n), 0 <= k < n.
struct FourSinSq {
    int k;
    int n;
    bool operator==(const FourSinSq&) const = default;
};

struct Float {
    double x;
    bool operator==(const Float&) const = default;
};

/**
 * Target eigenvalue mu. Symbolic forms are not normalised against each other;
 * two specs denote the same eigenvalue when their evaluated values agree
 * within the tolerance in use.
 */
class EigenvalueSpec {
public:
    using Form = std::variant<FourCosSq, FourSinSq, Rational, Float>;

    EigenvalueSpec(FourCosSq f);
    EigenvalueSpec(FourSinSq f);
    EigenvalueSpec(Rational r) : form_(r) {}
    EigenvalueSpec(Float f) : form_(f) {}

    static EigenvalueSpec four_cos_sq(int i, int m) { return FourCosSq{i, m}; }
    static EigenvalueSpec four_sin_sq(int k, int n) { return FourSinSq{k, n}; }
    static EigenvalueSpec rational(std::int64_t p, std::int64_t q = 1) { return Rational(p, q); }
    static EigenvalueSpec real(double x) { return Float{x}; }

    const Form& form() const noexcept { return form_; }

    double value() const;

    /**
     * The exact rational value when there is one: Rational specs, and the
     * trigonometric forms whose angle makes cos rational (Niven), i.e. values
     * in {0, 1, 2, 3, 4}.
     */
    std::optional<Rational> exact_value() const;

    bool operator==(const EigenvalueSpec&) const = default;

private:
    Form form_;
};

/// Canonical text: `4cos2(i,m)`, `4sin2(k,n)`, `p/q` (or `p` when q = 1), decimal.
std::string to_string(const EigenvalueSpec& mu);

/// Inverse of to_string. Throws std::invalid_argument on malformed input.
EigenvalueSpec parse_eigenvalue(const std::string& text);

}  // namespace spectre
