#pragma once

// Tilted measure mu_lambda(dt) = exp(-lambda Psi(t)) dt / Z_lambda: moments,
// inversion of lambda -> E Psi(X), inverse-CDF sampling and the modulus of
// the characteristic function of the standardized summand.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <random>
#include <sstream>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

using Rng = std::mt19937_64;

/// Uniform draw in the open interval (0, 1) from 53 random bits.
inline double uniform01(Rng& rng) { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; }

/// Generator for shard `worker` of a run seeded with `seed`.
inline Rng make_worker_rng(std::uint64_t seed, std::uint64_t worker) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(worker), static_cast<std::uint32_t>(worker >> 32)};
    return Rng(seq);
}

namespace tilt_detail {

// Support is truncated where lambda * Psi exceeds this value; the density is
// below e^-60 of its peak there.
inline constexpr double kTailExponent = 60.0;

struct Support {
    double left;   // <= 0
    double right;  // >= 0
};

inline Support support(const YoungFunction& psi, double lambda) {
    const double level = kTailExponent / lambda;
    return {-psi.inverse_neg(level), psi.inverse_pos(level)};
}

inline std::vector<double> panel_breaks(const YoungFunction& psi, Support s, int panels_per_side,
                                        std::vector<double> extra = {}) {
    auto k = psi.kinks();
    extra.insert(extra.end(), k.begin(), k.end());
    auto left = quad::make_breaks(s.left, 0.0, panels_per_side, extra);
    auto right = quad::make_breaks(0.0, s.right, panels_per_side, extra);
    left.insert(left.end(), right.begin() + 1, right.end());
    return left;
}

}  // namespace tilt_detail

struct TiltMoments {
    double logZ = 0.0;
    double m = 0.0;
    double sigma2 = 0.0;
    double nu3 = 0.0;
};

/// Moments of Psi(X) under mu_lambda. `refine` multiplies the number of
/// initial panels (used to check quadrature consistency).
inline TiltMoments tilt_moments(const YoungFunction& psi, double lambda, int refine = 1) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive and finite");
    const auto sup = tilt_detail::support(psi, lambda);
    const int panels = 16 * refine;
    const auto br = tilt_detail::panel_breaks(psi, sup, panels);
    const quad::Options opt{};

    const auto z = quad::integrate([&](double t) { return std::exp(-lambda * psi(t)); }, br, opt).value;
    const auto m1 = quad::integrate([&](double t) {
                        const double v = psi(t);
                        return v * std::exp(-lambda * v);
                    }, br, opt).value;
    TiltMoments out;
    out.logZ = std::log(z);
    out.m = m1 / z;

    // Psi - m changes sign at the two level points; split there.
    std::vector<double> at_mean{psi.inverse_pos(out.m), -psi.inverse_neg(out.m)};
    const auto br2 = tilt_detail::panel_breaks(psi, sup, panels, at_mean);
    const double m = out.m;
    out.sigma2 = quad::integrate([&](double t) {
                     const double v = psi(t);
                     const double d = v - m;
                     return d * d * std::exp(-lambda * v);
                 }, br2, opt).value / z;
    const double sd = std::sqrt(out.sigma2);
    out.nu3 = quad::integrate([&](double t) {
                  const double v = psi(t);
                  const double d = std::fabs(v - m) / sd;
                  return d * d * d * std::exp(-lambda * v);
              }, br2, opt).value / z;
    if (!(out.sigma2 > 0.0) || !std::isfinite(out.logZ) || !std::isfinite(out.m))
        throw QuadratureFailure("degenerate tilted moments", out.m, out.sigma2);
    return out;
}

/// Tabulated CDF of mu_lambda with an O(1) inverse.
///
/// Nodes are placed at +-Psi^{-1}(s_j) where the s_j split the weight
/// e^{-lambda s} ds into equal parts (dense near the mode), then refined so
/// that consecutive levels differ by at most 0.25/lambda in the tail. Tails
/// carrying less than 1e-13 of the mass on either side are dropped.
class CdfTable {
public:
    CdfTable(const YoungFunction& psi, double lambda, int equal_mass_nodes_per_side = 2048) {
        const double s_max = tilt_detail::kTailExponent / lambda;
        const double total_w = -std::expm1(-lambda * s_max);
        std::vector<double> levels;
        levels.reserve(equal_mass_nodes_per_side + 400);
        levels.push_back(0.0);
        for (int j = 1; j <= equal_mass_nodes_per_side; ++j) {
            double s = j == equal_mass_nodes_per_side
                           ? s_max
                           : -std::log1p(-total_w * j / equal_mass_nodes_per_side) / lambda;
            const double max_step = 0.25 / lambda;
            while (s - levels.back() > max_step) levels.push_back(levels.back() + max_step);
            levels.push_back(s);
        }

        std::vector<double> t;
        t.reserve(2 * levels.size());
        for (auto it = levels.rbegin(); it != levels.rend(); ++it) t.push_back(-psi.inverse_neg(*it));
        for (std::size_t j = 1; j < levels.size(); ++j) t.push_back(psi.inverse_pos(levels[j]));
        t.erase(std::unique(t.begin(), t.end()), t.end());

        const auto density = [&](double x) { return std::exp(-lambda * psi(x)); };
        std::vector<long double> cum(t.size(), 0.0L);
        const quad::Options opt{1e-300, 1e-13, 200};
        for (std::size_t j = 0; j + 1 < t.size(); ++j)
            cum[j + 1] = cum[j] + quad::integrate(density, t[j], t[j + 1], opt).value;
        const long double total = cum.back();

        std::size_t lo = 0;
        while (lo + 1 < t.size() && cum[lo + 1] < 1e-13L * total) ++lo;
        std::size_t hi = t.size() - 1;
        while (hi > lo + 1 && total - cum[hi - 1] < 1e-13L * total) --hi;
        const long double base = cum[lo];
        const long double span = cum[hi] - base;

        nodes_.assign(t.begin() + lo, t.begin() + hi + 1);
        cdf_.resize(nodes_.size());
        std::vector<double> dens(nodes_.size());
        for (std::size_t j = 0; j < nodes_.size(); ++j) {
            cdf_[j] = static_cast<double>((cum[lo + j] - base) / span);
            dens[j] = static_cast<double>(density(nodes_[j]) / span);
        }
        cdf_.front() = 0.0;
        cdf_.back() = 1.0;

        // Monotone cubic Hermite for t(F) with slopes 1/f, Fritsch-Carlson limited.
        const std::size_t n_int = nodes_.size() - 1;
        segs_.resize(n_int);
        for (std::size_t j = 0; j < n_int; ++j) {
            const double w = cdf_[j + 1] - cdf_[j];
            const double dt = nodes_[j + 1] - nodes_[j];
            double d0 = w / dens[j];
            double d1 = w / dens[j + 1];
            const double a = d0 / dt;
            const double b = d1 / dt;
            const double r2 = a * a + b * b;
            if (r2 > 9.0) {
                const double tau = 3.0 / std::sqrt(r2);
                d0 *= tau;
                d1 *= tau;
            }
            segs_[j] = {cdf_[j], 1.0 / w, nodes_[j], d0, 3.0 * dt - 2.0 * d0 - d1, -2.0 * dt + d0 + d1};
        }
        guide_.resize(4 * n_int);
        std::size_t j = 0;
        for (std::size_t g = 0; g < guide_.size(); ++g) {
            const double u = static_cast<double>(g) / static_cast<double>(guide_.size());
            while (j + 1 < n_int && cdf_[j + 1] <= u) ++j;
            guide_[g] = static_cast<std::uint32_t>(j);
        }
    }

    /// Quantile function for u in (0, 1).
    [[nodiscard]] double quantile(double u) const {
        auto j = static_cast<std::size_t>(guide_[static_cast<std::size_t>(u * static_cast<double>(guide_.size()))]);
        const std::size_t last = segs_.size() - 1;
        while (j < last && segs_[j + 1].f0 <= u) ++j;
        const auto& s = segs_[j];
        const double tau = (u - s.f0) * s.inv_w;
        return s.t0 + tau * (s.c1 + tau * (s.c2 + tau * s.c3));
    }

    [[nodiscard]] const std::vector<double>& nodes() const { return nodes_; }
    [[nodiscard]] const std::vector<double>& cdf() const { return cdf_; }

private:
    struct Segment {
        double f0, inv_w, t0, c1, c2, c3;
    };
    std::vector<double> nodes_;
    std::vector<double> cdf_;
    std::vector<Segment> segs_;
    std::vector<std::uint32_t> guide_;
};

/// mu_lambda with its moments and sampling table. Immutable; copies share the table.
struct TiltedMeasure {
    YoungFunction psi;
    double lambda = 1.0;
    double logZ = 0.0;
    double m = 0.0;
    double sigma2 = 0.0;
    double nu3 = 0.0;
    std::shared_ptr<const CdfTable> cdf_table;

    [[nodiscard]] double sigma() const { return std::sqrt(sigma2); }
    double draw(Rng& rng) const { return cdf_table->quantile(uniform01(rng)); }
};

struct CramerParams {
    double delta = 0.0;
    double epsilon = 0.0;
};

inline TiltedMeasure build_tilted(const YoungFunction& psi, double lambda) {
    const auto mo = tilt_moments(psi, lambda);
    return {psi, lambda, mo.logZ, mo.m, mo.sigma2, mo.nu3, std::make_shared<const CdfTable>(psi, lambda)};
}

/// Finds lambda with E_{mu_lambda} Psi = m_target. R(lambda) is strictly
/// decreasing (dR/dlambda = -Var Psi), so a bracket plus safeguarded Newton
/// in log(lambda) converges.
inline TiltedMeasure solve_lambda(const YoungFunction& psi, double m_target) {
    if (!(m_target > 0.0) || !std::isfinite(m_target)) throw DomainError("solve_lambda: target mean must be positive");
    constexpr double kMin = 1e-12, kMax = 1e12;
    double lo = 1.0, hi = 1.0;  // R(lo) >= target >= R(hi)
    auto mo = tilt_moments(psi, 1.0);
    double lam = 1.0;
    if (mo.m > m_target) {
        while (true) {
            lo = hi;
            hi *= 2.0;
            if (hi > kMax) throw BracketFailure("solve_lambda: no bracket below lambda = 1e12");
            if (tilt_moments(psi, hi).m <= m_target) break;
        }
    } else if (mo.m < m_target) {
        while (true) {
            hi = lo;
            lo *= 0.5;
            if (lo < kMin) throw BracketFailure("solve_lambda: no bracket above lambda = 1e-12");
            if (tilt_moments(psi, lo).m >= m_target) break;
        }
    }
    if (lo != hi) {
        double x = std::log(lam);
        if (!(x > std::log(lo) && x < std::log(hi))) x = 0.5 * (std::log(lo) + std::log(hi));
        for (int it = 0; it < 200; ++it) {
            lam = std::exp(x);
            mo = tilt_moments(psi, lam);
            const double diff = mo.m - m_target;
            if (std::fabs(diff) <= 1e-12 * m_target) break;
            (diff > 0.0 ? lo : hi) = lam;
            const double lx = std::log(lo), hx = std::log(hi);
            if (hx - lx < 1e-15) break;
            double next = x + diff / (lam * mo.sigma2);
            if (!(next > lx && next < hx)) next = 0.5 * (lx + hx);
            x = next;
        }
    }
    auto tm = build_tilted(psi, lam);
    if (std::fabs(tm.m - m_target) > 1e-9 * m_target) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "solve_lambda: reached m = " << tm.m << " for target " << m_target;
        throw BracketFailure(msg.str());
    }
    return tm;
}

inline std::vector<double> sample_1d(const TiltedMeasure& tm, Rng& rng, std::size_t count) {
    if (count == 0) throw DomainError("sample_1d: count must be positive");
    std::vector<double> out(count);
    for (auto& x : out) x = tm.draw(rng);
    return out;
}

/// |E exp(i t Y)| with Y = (Psi(X) - m) / sigma.
inline double char_modulus(const TiltedMeasure& tm, double t) {
    if (t == 0.0) return 1.0;
    const auto sup = tilt_detail::support(tm.psi, tm.lambda);
    const double sd = tm.sigma();
    const double phase = std::fabs(t) * tilt_detail::kTailExponent / (tm.lambda * sd);
    const int panels = std::clamp(static_cast<int>(phase / 2.0), 16, 50000);
    const auto br = tilt_detail::panel_breaks(tm.psi, sup, panels);
    const quad::Options opt{1e-13, 1e-10, 400000};
    const double logZ = tm.logZ;
    const auto re = quad::integrate([&](double x) {
                        const double v = tm.psi(x);
                        return std::cos(t * (v - tm.m) / sd) * std::exp(-tm.lambda * v - logZ);
                    }, br, opt).value;
    const auto im = quad::integrate([&](double x) {
                        const double v = tm.psi(x);
                        return std::sin(t * (v - tm.m) / sd) * std::exp(-tm.lambda * v - logZ);
                    }, br, opt).value;
    return std::min(1.0, std::hypot(re, im));
}

/// epsilon = 1 - max |phi_Y| over delta <= t <= t_max (step <= 0.01).
/// |phi_Y(-t)| = |phi_Y(t)| for real Y, so only t > 0 is scanned.
inline CramerParams estimate_cramer(const TiltedMeasure& tm, double delta, double t_max) {
    if (!(delta > 0.0) || !(t_max > delta)) throw DomainError("estimate_cramer: need 0 < delta < t_max");
    const auto steps = static_cast<int>(std::ceil((t_max - delta) / 0.01));
    double worst = 0.0;
    for (int i = 0; i <= steps; ++i) worst = std::max(worst, char_modulus(tm, delta + (t_max - delta) * i / steps));
    const double eps = 1.0 - worst;
    if (!(eps > 0.0)) throw NoCramer("characteristic function reaches modulus 1 beyond delta");
    return {delta, eps};
}

}  // namespace orlicz
