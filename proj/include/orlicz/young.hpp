#pragma once

// Young functions built from a closed grammar:
//   pow:<p>            |t|^p, p >= 1
//   coshm1             cosh(t) - 1
//   shiftpow:<c>:<p>   |t-c|^p - |c|^p + p sgn(c)|c|^(p-1) t, p > 1 (asymmetric)
//   mix:<a1>:<k1>:<a2>:<k2>...   sum of a_i * Psi_{k_i}, a_i > 0

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "orlicz/errors.hpp"

namespace orlicz {

enum class YoungKind { pow, coshm1, shiftpow };

struct YoungTerm {
    double coef = 1.0;
    YoungKind kind = YoungKind::pow;
    double p = 1.0;
    double shift = 0.0;

    [[nodiscard]] double eval(double t) const {
        switch (kind) {
            case YoungKind::pow: {
                const double a = std::fabs(t);
                if (p == 1.0) return coef * a;
                if (p == 2.0) return coef * a * a;
                if (p == 4.0) return coef * (a * a) * (a * a);
                return coef * std::pow(a, p);
            }
            case YoungKind::coshm1: {
                // cosh(t) - 1 = 2 sinh^2(t/2), no cancellation near 0
                const double s = std::sinh(0.5 * t);
                return coef * 2.0 * s * s;
            }
            case YoungKind::shiftpow: {
                const double c = shift;
                const double ac = std::fabs(c);
                const double slope = p * std::copysign(std::pow(ac, p - 1.0), c);
                return coef * (std::pow(std::fabs(t - c), p) - std::pow(ac, p) + slope * t);
            }
        }
        return 0.0;
    }

    /// Right derivative.
    [[nodiscard]] double deriv(double t) const {
        switch (kind) {
            case YoungKind::pow: {
                if (p == 1.0) return coef * (t < 0.0 ? -1.0 : 1.0);
                return coef * p * std::copysign(std::pow(std::fabs(t), p - 1.0), t);
            }
            case YoungKind::coshm1:
                return coef * std::sinh(t);
            case YoungKind::shiftpow: {
                const double c = shift;
                const double slope = p * std::copysign(std::pow(std::fabs(c), p - 1.0), c);
                const double d = t - c;
                const double g = d == 0.0 ? 0.0 : p * std::copysign(std::pow(std::fabs(d), p - 1.0), d);
                return coef * (g + slope);
            }
        }
        return 0.0;
    }

    [[nodiscard]] bool is_even() const { return kind != YoungKind::shiftpow || shift == 0.0; }
};

/// Grid triple (t1, t2, t3) at which a convexity slope test failed.
using Witness = std::array<double, 3>;

struct Psi2Result {
    bool passed = true;
    std::optional<Witness> witness;
};

namespace detail {

inline constexpr double kConvexityTol = 1e-10;

// Slope test on consecutive triples; returns the first violating triple.
template <class F>
std::optional<Witness> slope_violation(const std::vector<double>& grid, F&& f) {
    for (std::size_t i = 0; i + 2 < grid.size(); ++i) {
        const double t1 = grid[i], t2 = grid[i + 1], t3 = grid[i + 2];
        const double f1 = f(t1), f2 = f(t2), f3 = f(t3);
        if (!std::isfinite(f1) || !std::isfinite(f2) || !std::isfinite(f3)) continue;
        const double chord = ((t3 - t2) * f1 + (t2 - t1) * f3) / (t3 - t1);
        if (f2 > chord + kConvexityTol * (1.0 + std::fabs(f2))) return Witness{t1, t2, t3};
    }
    return std::nullopt;
}

inline double parse_number(std::string_view tok, std::string_view what) {
    double v = 0.0;
    const auto* first = tok.data();
    const auto* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (tok.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v))
        throw ParseError("expected a decimal number for " + std::string(what) + ", got '" + std::string(tok) + "'");
    return v;
}

}  // namespace detail

class YoungFunction {
public:
    /// Builds from already-validated terms; prefer parse_young.
    YoungFunction(std::string spec, std::vector<YoungTerm> terms) : spec_(std::move(spec)), terms_(std::move(terms)) {
        even_ = std::all_of(terms_.begin(), terms_.end(), [](const YoungTerm& t) { return t.is_even(); });
    }

    [[nodiscard]] double operator()(double t) const {
        if (terms_.size() == 1) return terms_.front().eval(t);
        double s = 0.0;
        for (const auto& term : terms_) s += term.eval(t);
        return s;
    }

    [[nodiscard]] double deriv(double t) const {
        double s = 0.0;
        for (const auto& term : terms_) s += term.deriv(t);
        return s;
    }

    [[nodiscard]] bool is_even() const { return even_; }
    [[nodiscard]] const std::string& spec() const { return spec_; }
    [[nodiscard]] const std::vector<YoungTerm>& terms() const { return terms_; }

    /// Single pow term a|t|^p: returns (a, p).
    [[nodiscard]] std::optional<std::pair<double, double>> as_power() const {
        if (terms_.size() == 1 && terms_[0].kind == YoungKind::pow) return std::pair{terms_[0].coef, terms_[0].p};
        return std::nullopt;
    }

    /// Non-smooth points other than the origin.
    [[nodiscard]] std::vector<double> kinks() const {
        std::vector<double> k{0.0};
        for (const auto& term : terms_)
            if (term.kind == YoungKind::shiftpow) k.push_back(term.shift);
        std::sort(k.begin(), k.end());
        k.erase(std::unique(k.begin(), k.end()), k.end());
        return k;
    }

    /// t >= 0 with Psi(t) = y.
    [[nodiscard]] double inverse_pos(double y) const { return inverse_branch(y, +1.0); }

    /// r >= 0 with Psi(-r) = y.
    [[nodiscard]] double inverse_neg(double y) const { return inverse_branch(y, -1.0); }

private:
    double inverse_branch(double y, double side) const {
        if (y < 0.0 || std::isnan(y)) throw DomainError("inverse of a Young function needs y >= 0");
        if (y == 0.0) return 0.0;
        if (terms_.size() == 1) {
            const auto& t = terms_.front();
            if (t.kind == YoungKind::pow) return std::pow(y / t.coef, 1.0 / t.p);
            if (t.kind == YoungKind::coshm1) {
                const double z = y / t.coef;
                return std::log1p(z + std::sqrt(z * (z + 2.0)));
            }
        }
        const auto f = [&](double r) { return (*this)(side * r); };
        double lo = 0.0;
        double hi = 1.0;
        while (f(hi) < y) {
            lo = hi;
            hi *= 2.0;
            if (!std::isfinite(hi)) throw DomainError("inverse of a Young function: no bracket");
        }
        for (int i = 0; i < 2000; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (f(mid) < y ? lo : hi) = mid;
        }
        return (y - f(lo) <= f(hi) - y) ? lo : hi;
    }

    std::string spec_;
    std::vector<YoungTerm> terms_;
    bool even_ = true;
};

/// Positivity, Psi(0) = 0 and slope convexity on `points` grid nodes over
/// [-half_width, half_width]. Throws NotYoung with the offending point.
inline void audit_young(const YoungFunction& psi, int points = 1000, double half_width = 50.0) {
    if (psi(0.0) != 0.0) throw NotYoung("Psi(0) != 0", 0.0);
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i) grid[i] = -half_width + 2.0 * half_width * i / (points - 1);
    for (double t : grid) {
        const double v = psi(t);
        if (t != 0.0 && !(v > 0.0)) {
            std::ostringstream msg;
            msg << "Psi(" << t << ") = " << v << " is not positive";
            throw NotYoung(msg.str(), t);
        }
    }
    if (auto w = detail::slope_violation(grid, psi)) {
        std::ostringstream msg;
        msg << "convexity violated at t = " << (*w)[1];
        throw NotYoung(msg.str(), (*w)[1]);
    }
}

namespace detail {

inline YoungTerm parse_term(const std::vector<std::string_view>& tok, std::size_t& i, double coef) {
    if (i >= tok.size()) throw ParseError("missing Young function kind");
    const auto kind = tok[i++];
    if (kind == "pow") {
        if (i >= tok.size()) throw ParseError("pow needs an exponent");
        const double p = parse_number(tok[i++], "pow exponent");
        if (p < 1.0) throw ParseError("pow exponent must be >= 1");
        return {coef, YoungKind::pow, p, 0.0};
    }
    if (kind == "coshm1") return {coef, YoungKind::coshm1, 1.0, 0.0};
    if (kind == "shiftpow") {
        if (i + 1 >= tok.size()) throw ParseError("shiftpow needs a shift and an exponent");
        const double c = parse_number(tok[i++], "shiftpow shift");
        const double p = parse_number(tok[i++], "shiftpow exponent");
        if (p <= 1.0) throw ParseError("shiftpow exponent must be > 1");
        return {coef, YoungKind::shiftpow, p, c};
    }
    throw ParseError("unknown Young function kind '" + std::string(kind) + "'");
}

}  // namespace detail

inline constexpr std::string_view kYoungGrammar =
    "pow:<p> (p>=1) | coshm1 | shiftpow:<c>:<p> (p>1) | mix:<a1>:<k1>:<a2>:<k2>[:...] (a_i>0)";

/// Parses and audits a Young function spec.
inline YoungFunction parse_young(std::string_view spec) {
    if (spec.empty()) throw ParseError("empty Young function spec");
    if (std::any_of(spec.begin(), spec.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }))
        throw ParseError("whitespace is not allowed in a Young function spec");
    std::vector<std::string_view> tok;
    std::size_t start = 0;
    while (true) {
        const auto pos = spec.find(':', start);
        tok.push_back(spec.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    for (auto t : tok)
        if (t.empty()) throw ParseError("empty field in Young function spec");

    std::vector<YoungTerm> terms;
    std::size_t i = 0;
    if (tok[0] == "mix") {
        i = 1;
        if (i >= tok.size()) throw ParseError("mix needs at least one coefficient:kind pair");
        while (i < tok.size()) {
            const double a = detail::parse_number(tok[i++], "mix coefficient");
            if (!(a > 0.0)) throw ParseError("mix coefficients must be positive");
            if (i < tok.size() && tok[i] == "mix") throw ParseError("nested mix is not allowed");
            terms.push_back(detail::parse_term(tok, i, a));
        }
    } else {
        terms.push_back(detail::parse_term(tok, i, 1.0));
        if (i != tok.size()) throw ParseError("trailing fields in Young function spec");
    }
    YoungFunction psi(std::string(spec), std::move(terms));
    audit_young(psi);
    return psi;
}

/// Convexity of u -> Psi(sqrt(u)) on a positive grid.
inline Psi2Result psi2_test(const YoungFunction& psi, std::vector<double> grid) {
    if (!psi.is_even()) throw DomainError("psi2_test needs an even Young function");
    std::sort(grid.begin(), grid.end());
    if (!grid.empty() && grid.front() <= 0.0) throw DomainError("psi2_test grid must be positive");
    const auto w = detail::slope_violation(grid, [&](double u) { return psi(std::sqrt(u)); });
    return {!w.has_value(), w};
}

/// Geometric grid on [1e-4, 100].
inline std::vector<double> default_psi2_grid(int points = 400) {
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) g[i] = 1e-4 * std::pow(1e6, static_cast<double>(i) / (points - 1));
    return g;
}

inline Psi2Result psi2_test(const YoungFunction& psi) { return psi2_test(psi, default_psi2_grid()); }

inline double inverse_pos(const YoungFunction& psi, double y) { return psi.inverse_pos(y); }

}  // namespace orlicz
