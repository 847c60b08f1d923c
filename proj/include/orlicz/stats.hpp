#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/special.hpp"

namespace orlicz::stats {

/// sup_x |F_N(x) - F(x)| for the empirical CDF of `data`; sorts in place.
template <class Cdf>
double ks_distance(std::vector<double>& data, Cdf&& cdf) {
    if (data.empty()) throw DomainError("ks_distance: empty sample");
    std::sort(data.begin(), data.end());
    const double n = static_cast<double>(data.size());
    double d = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double f = cdf(data[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

struct Summary {
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double std_error = 0.0;
};

inline Summary summarize(std::span<const double> x) {
    if (x.size() < 2) throw DomainError("summarize: need at least two values");
    // Welford
    double mean = 0.0, m2 = 0.0;
    std::size_t k = 0;
    for (double v : x) {
        ++k;
        const double d = v - mean;
        mean += d / static_cast<double>(k);
        m2 += d * (v - mean);
    }
    const double var = m2 / static_cast<double>(k - 1);
    return {mean, var, std::sqrt(var / static_cast<double>(k))};
}

/// Pearson statistic sum (O - E)^2 / E.
inline double chi_square_stat(std::span<const double> observed, std::span<const double> expected) {
    if (observed.size() != expected.size()) throw DomainError("chi_square_stat: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (!(expected[i] > 0.0)) throw DomainError("chi_square_stat: expected counts must be positive");
        const double d = observed[i] - expected[i];
        s += d * d / expected[i];
    }
    return s;
}

/// P(chi^2_dof > x).
inline double chi_square_sf(double x, double dof) {
    if (x <= 0.0) return 1.0;
    return -std::expm1(special::log_gamma_p(0.5 * dof, 0.5 * x));
}

/// x with P(chi^2_dof > x) = significance.
inline double chi_square_critical(double dof, double significance) {
    if (!(dof > 0.0) || !(significance > 0.0 && significance < 1.0))
        throw DomainError("chi_square_critical: bad arguments");
    double lo = 0.0, hi = dof + 10.0;
    while (chi_square_sf(hi, dof) > significance) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (chi_square_sf(mid, dof) > significance ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace orlicz::stats
