#include "spectre/eigenvalue.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <regex>
#include <stdexcept>

namespace spectre {

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    p = g ? num / g : 0;
    q = g ? den / g : 1;
}

EigenvalueSpec::EigenvalueSpec(FourCosSq f) : form_(f) {
    if (f.m < 2 || f.i < 1 || f.i >= f.m) throw std::invalid_argument("4cos2(i,m) requires 1 <= i < m");
}

EigenvalueSpec::EigenvalueSpec(FourSinSq f) : form_(f) {
    if (f.n < 1 || f.k < 0 || f.k >= f.n) throw std::invalid_argument("4sin2(k,n) requires 0 <= k < n");
}

double EigenvalueSpec::value() const {
    struct Eval {
        double operator()(const FourCosSq& f) const {
            const double c = std::cos(std::numbers::pi * f.i / f.m);
            return 4.0 * c * c;
        }
        double operator()(const FourSinSq& f) const {
            const double s = std::sin(std::numbers::pi * f.k / f.n);
            return 4.0 * s * s;
        }
        double operator()(const Rational& r) const { return r.value(); }
        double operator()(const Float& f) const { return f.x; }
    };
    return std::visit(Eval{}, form_);
}

namespace {

// 4cos^2(theta) = 2 + 2cos(2 theta). With 2 theta = (a/b) pi in lowest terms,
// cos is rational exactly when b is 1, 2 or 3.
std::optional<Rational> two_plus_two_cos(std::int64_t a, std::int64_t b) {
    const std::int64_t g = std::gcd(a, b);
    a /= g;
    b /= g;
    const std::int64_t r = ((a % (2 * b)) + 2 * b) % (2 * b);  // angle a/b pi reduced into [0, 2pi)
    if (b == 1) return Rational(r == 0 ? 4 : 0);               // cos = +-1
    if (b == 2) return Rational(2);                            // cos = 0
    if (b == 3) {
        // r in {1, 2, 4, 5}: cos = 1/2, -1/2, -1/2, 1/2
        return Rational((r == 1 || r == 5) ? 3 : 1);
    }
    return std::nullopt;
}

}  // namespace

std::optional<Rational> EigenvalueSpec::exact_value() const {
    if (const auto* r = std::get_if<Rational>(&form_)) return *r;
    if (const auto* c = std::get_if<FourCosSq>(&form_)) return two_plus_two_cos(2 * c->i, c->m);
    if (const auto* s = std::get_if<FourSinSq>(&form_)) {
        // 4 sin^2(x) = 2 - 2cos(2x) = 4 - (2 + 2cos(2x))
        auto v = two_plus_two_cos(2 * s->k, s->n);
        if (v) return Rational(4 - v->p);
        return std::nullopt;
    }
    return std::nullopt;
}

std::string to_string(const EigenvalueSpec& mu) {
    struct Print {
        std::string operator()(const FourCosSq& f) const {
            return "4cos2(" + std::to_string(f.i) + "," + std::to_string(f.m) + ")";
        }
        std::string operator()(const FourSinSq& f) const {
            return "4sin2(" + std::to_string(f.k) + "," + std::to_string(f.n) + ")";
        }
        std::string operator()(const Rational& r) const {
            return r.q == 1 ? std::to_string(r.p) : std::to_string(r.p) + "/" + std::to_string(r.q);
        }
        std::string operator()(const Float& f) const {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", f.x);
            std::string s(buf);
            if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
            return s;
        }
    };
    return std::visit(Print{}, mu.form());
}

EigenvalueSpec parse_eigenvalue(const std::string& text) {
    static const std::regex trig(R"(^\s*4(cos|sin)2\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*$)");
    static const std::regex ratio(R"(^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$)");
    std::smatch m;
    if (std::regex_match(text, m, trig)) {
        const int a = std::stoi(m[2].str());
        const int b = std::stoi(m[3].str());
        if (m[1] == "cos") return FourCosSq{a, b};
        return FourSinSq{a, b};
    }
    if (std::regex_match(text, m, ratio)) {
        const std::int64_t p = std::stoll(m[1].str());
        const std::int64_t q = m[2].matched ? std::stoll(m[2].str()) : 1;
        return Rational(p, q);
    }
    const auto first = text.find_first_not_of(" \t");
    const auto last = text.find_last_not_of(" \t");
    if (first == std::string::npos) throw std::invalid_argument("empty eigenvalue expression");
    const std::string body = text.substr(first, last - first + 1);
    double x = 0.0;
    const auto* begin = body.data();
    const auto* end = body.data() + body.size();
    auto [ptr, ec] = std::from_chars(begin, end, x);
    if (ec != std::errc() || ptr != end || !std::isfinite(x)) {
        throw std::invalid_argument("cannot parse eigenvalue expression '" + text + "'");
    }
    return Float{x};
}

}  // namespace spectre
