#pragma once

// Special functions needed in log domain: scaled complementary error
// function, Mills ratio, regularized incomplete gamma, log-sum-exp.

#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "orlicz/errors.hpp"

namespace orlicz::special {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// exp(x^2) * erfc(x), finite for all x above about -26.
inline double erfcx(double x) {
    if (std::isnan(x)) return x;
    if (x < 0.0) {
        // erfc(-y) = 2 - erfc(y)
        const double hi = x * x;
        const double lo = std::fma(x, x, -hi);
        return 2.0 * std::exp(hi) * (1.0 + lo) - erfcx(-x);
    }
    if (x < 26.0) {
        const double hi = x * x;
        const double lo = std::fma(x, x, -hi);
        return std::exp(hi) * (1.0 + lo) * std::erfc(x);
    }
    // Laplace continued fraction, evaluated bottom-up; converges in a handful
    // of terms this far out.
    double tail = x;
    for (int k = 60; k >= 1; --k) tail = x + (0.5 * k) / tail;
    return 1.0 / (std::sqrt(std::numbers::pi) * tail);
}

/// Upper tail of the standard normal, 1 - Phi(t).
inline double normal_sf(double t) { return 0.5 * std::erfc(t / std::numbers::sqrt2); }

/// sqrt(2 pi) exp(t^2/2) (1 - Phi(t)), without overflow for large t.
inline double mills_ratio(double t) {
    return std::sqrt(std::numbers::pi / 2.0) * erfcx(t / std::numbers::sqrt2);
}

inline double log_factorial(double n) { return std::lgamma(n + 1.0); }

/// a log x - x - lgamma(a). For large a the two big terms cancel, so use
/// Stirling's series and a log(x/a) + a - x instead.
inline double log_gamma_prefix(double a, double x) {
    if (a < 10.0) return a * std::log(x) - x - std::lgamma(a);
    const double r = 1.0 / a, r2 = r * r;
    const double corr = r * (1.0 / 12 - r2 * (1.0 / 360 - r2 * (1.0 / 1260 - r2 * (1.0 / 1680 - r2 / 1188))));
    const double u = (x - a) / a;
    return a * (std::log1p(u) - u) + 0.5 * std::log(a / (2.0 * std::numbers::pi)) - corr;
}

/// log P(a, x) where P is the regularized lower incomplete gamma function.
/// Stays finite when P underflows double precision.
inline double log_gamma_p(double a, double x) {
    if (!(a > 0.0)) throw DomainError("log_gamma_p: shape must be positive");
    if (x <= 0.0) return kNegInf;
    if (std::isinf(x)) return 0.0;
    const double log_prefix = log_gamma_prefix(a, x);
    if (x < a + 1.0) {
        // P = x^a e^-x / Gamma(a+1) * sum_k x^k / ((a+1)...(a+k))
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 1'000'000; ++k) {
            term *= x / (a + k);
            sum += term;
            if (term < sum * 1e-17) break;
        }
        return log_prefix - std::log(a) + std::log(sum);
    }
    // Q = x^a e^-x / Gamma(a) * CF, modified Lentz.
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100'000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    const double log_q = log_prefix + std::log(h);
    return std::log1p(-std::exp(log_q));
}

/// Running log-sum-exp accumulator. Merging is exact up to rounding, so a
/// fixed reduction tree gives reproducible results.
class LogSumExp {
public:
    void add(double log_term) {
        if (log_term == kNegInf) return;
        if (log_term > max_) {
            sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
            max_ = log_term;
        } else {
            sum_ += std::exp(log_term - max_);
        }
    }

    void merge(const LogSumExp& other) {
        if (other.max_ == kNegInf) return;
        if (other.max_ > max_) {
            sum_ = sum_ * std::exp(max_ - other.max_) + other.sum_;
            max_ = other.max_;
        } else {
            sum_ += other.sum_ * std::exp(other.max_ - max_);
        }
    }

    [[nodiscard]] double value() const { return max_ == kNegInf ? kNegInf : max_ + std::log(sum_); }

private:
    double max_ = kNegInf;
    double sum_ = 0.0;
};

/// Pairwise merge in index order.
inline LogSumExp tree_merge(std::span<const LogSumExp> parts) {
    if (parts.empty()) return {};
    std::vector<LogSumExp> level(parts.begin(), parts.end());
    while (level.size() > 1) {
        std::vector<LogSumExp> next;
        next.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i < level.size(); i += 2) {
            LogSumExp acc = level[i];
            if (i + 1 < level.size()) acc.merge(level[i + 1]);
            next.push_back(acc);
        }
        level = std::move(next);
    }
    return level.front();
}

}  // namespace orlicz::special
