#pragma once

// log Vol(B^n_{Psi/E}) by the tilted-measure asymptotic, a brute-force
// convolution oracle, importance Monte Carlo and (for pow kinds) the Gamma
// closed form; plus the Gaussian identities used by the asymptotic.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string_view>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/parallel.hpp"
#include "orlicz/special.hpp"
#include "orlicz/tilt.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

/// B^n_{Psi/E} = {x in R^n : sum_i Psi(x_i) <= E}.
struct BallSpec {
    YoungFunction psi;
    std::int64_t n = 1;
    double E = 1.0;

    /// Standardized level offset alpha = (E - m n) / (sigma sqrt n).
    [[nodiscard]] double alpha(const TiltedMeasure& tm) const {
        const double nn = static_cast<double>(n);
        return (E - tm.m * nn) / (tm.sigma() * std::sqrt(nn));
    }
};

enum class VolumeMethod { asymptotic, mc, convolution, closed_form };

inline std::string_view to_string(VolumeMethod m) {
    switch (m) {
        case VolumeMethod::asymptotic: return "asymptotic";
        case VolumeMethod::mc: return "mc";
        case VolumeMethod::convolution: return "convolution";
        case VolumeMethod::closed_form: return "closed_form";
    }
    return "?";
}

inline std::optional<VolumeMethod> parse_volume_method(std::string_view s) {
    if (s == "asymptotic") return VolumeMethod::asymptotic;
    if (s == "mc") return VolumeMethod::mc;
    if (s == "convolution") return VolumeMethod::convolution;
    if (s == "closed_form") return VolumeMethod::closed_form;
    return std::nullopt;
}

struct VolumeDiagnostics {
    static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
    double lambda = kNaN;
    double alpha = kNaN;
    double correction_order = kNaN;  // n^{-1/2}, asymptotic only
    double std_error = kNaN;         // standard error of log_value, mc only
    double grid_step = kNaN;         // convolution only
    double richardson_delta = kNaN;  // convolution only: |fine - coarse| relative
    std::int64_t accepted = 0;       // mc only
};

struct LogVolume {
    double log_value = 0.0;
    VolumeMethod method = VolumeMethod::asymptotic;
    VolumeDiagnostics diagnostics;
};

inline void check_spec(const BallSpec& spec) {
    if (spec.n < 1) throw DomainError("dimension must be >= 1");
    if (!(spec.E > 0.0) || !std::isfinite(spec.E)) throw DomainError("level E must be positive");
}

/// n log Z + lambda E - log(lambda sigma sqrt(2 pi n)) - alpha^2 / 2.
inline LogVolume log_volume_asymptotic(const BallSpec& spec, const TiltedMeasure& tm) {
    check_spec(spec);
    const double n = static_cast<double>(spec.n);
    const double a = spec.alpha(tm);
    LogVolume out;
    out.method = VolumeMethod::asymptotic;
    out.log_value = n * tm.logZ + tm.lambda * spec.E -
                    (std::log(tm.lambda * tm.sigma()) + 0.5 * std::log(2.0 * std::numbers::pi * n)) - 0.5 * a * a;
    out.diagnostics.lambda = tm.lambda;
    out.diagnostics.alpha = a;
    out.diagnostics.correction_order = 1.0 / std::sqrt(n);
    return out;
}

/// Exact volume for Psi = a|t|^p: (2 Gamma(1+1/p))^n (E/a)^{n/p} / Gamma(1+n/p).
inline LogVolume log_volume_closed_form(const BallSpec& spec) {
    check_spec(spec);
    const auto power = spec.psi.as_power();
    if (!power) throw DomainError("closed form volume needs a single pow term");
    const auto [a, p] = *power;
    const double n = static_cast<double>(spec.n);
    LogVolume out;
    out.method = VolumeMethod::closed_form;
    out.log_value = n * (std::log(2.0) + std::lgamma(1.0 + 1.0 / p)) + (n / p) * std::log(spec.E / a) -
                    std::lgamma(1.0 + n / p);
    return out;
}

/// Vol(B^k_{Psi/s}) at s_j = j * t_max / cells, j = 0..cells, by k-1
/// discrete convolutions of the level-set measure dL(s), L(s) = Leb{Psi <= s}.
/// Cell masses of dL come from the exact inverse branches, so the s^{1/p - 1}
/// singularity of dL/ds at 0 is integrated exactly.
inline std::vector<double> convolution_profile(const YoungFunction& psi, int k, double t_max, int cells) {
    if (k < 1) throw DomainError("convolution_profile: k must be >= 1");
    if (cells < 2) throw DomainError("convolution_profile: need at least two cells");
    const double h = t_max / cells;
    std::vector<double> L(cells + 1);
    for (int j = 0; j <= cells; ++j) {
        const double s = j == cells ? t_max : h * j;
        L[j] = psi.inverse_pos(s) + psi.inverse_neg(s);
    }
    std::vector<double> mass(cells);
    for (int j = 0; j < cells; ++j) mass[j] = L[j + 1] - L[j];

    std::vector<double> v = L;
    std::vector<double> avg(cells + 1);
    std::vector<double> next(cells + 1);
    for (int step = 1; step < k; ++step) {
        avg[0] = 0.0;
        for (int j = 1; j <= cells; ++j) avg[j] = 0.5 * (v[j] + v[j - 1]);
        next[0] = 0.0;
        for (int j = 1; j <= cells; ++j) {
            // V_{k+1}(s_j) = int V_k(s_j - s) dL(s), trapezoid in each dL cell
            double acc = 0.0;
            for (int i = 0; i < j; ++i) acc += mass[i] * avg[j - i];
            next[j] = acc;
        }
        v.swap(next);
    }
    return v;
}

inline constexpr int kMaxConvolutionDim = 12;

/// Brute-force log-volume for n <= 12. Runs at `grid_step` and at half of
/// it; the finer value is returned and GridTooCoarse raised when the two
/// differ by more than 1e-2 relative.
inline LogVolume log_volume_convolution(const BallSpec& spec, double grid_step) {
    check_spec(spec);
    if (spec.n > kMaxConvolutionDim) throw DomainError("convolution oracle supports n <= 12");
    if (!(grid_step > 0.0) || grid_step > spec.E / 1000.0 * (1.0 + 1e-12))
        throw DomainError("convolution grid step must be in (0, E/1000]");
    const int cells = static_cast<int>(std::ceil(spec.E / grid_step - 1e-9));
    const int k = static_cast<int>(spec.n);
    const double coarse = convolution_profile(spec.psi, k, spec.E, cells).back();
    const double fine = convolution_profile(spec.psi, k, spec.E, 2 * cells).back();
    if (!(fine > 0.0) || !(coarse > 0.0)) throw GridTooCoarse("convolution produced a non-positive volume");
    const double rel = std::fabs(fine - coarse) / fine;
    if (rel > 1e-2) {
        std::ostringstream msg;
        msg << "grid refinement changed the volume by " << rel << " (relative)";
        throw GridTooCoarse(msg.str());
    }
    LogVolume out;
    out.method = VolumeMethod::convolution;
    out.log_value = std::log(fine);
    out.diagnostics.grid_step = spec.E / (2 * cells);
    out.diagnostics.richardson_delta = rel;
    return out;
}

inline LogVolume log_volume_convolution(const BallSpec& spec) { return log_volume_convolution(spec, spec.E / 2000.0); }

inline constexpr std::int64_t kMinAccepted = 30;

/// Importance sampling: Vol = Z^n e^{lambda E} E[W], W = e^{lambda(S - E)} 1{S <= E},
/// S = sum Psi(X_i), X ~ mu_lambda^n. Sharded over `workers` generators.
inline LogVolume log_volume_mc(const BallSpec& spec, const TiltedMeasure& tm, std::uint64_t seed,
                               std::size_t samples, std::size_t workers = 1) {
    check_spec(spec);
    if (samples < 1000) throw DomainError("log_volume_mc needs at least 1000 samples");
    struct Partial {
        special::LogSumExp w, w2;
        std::int64_t accepted = 0;
    };
    std::vector<Partial> parts(workers);
    const auto n = static_cast<std::size_t>(spec.n);
    run_sharded(workers, [&](std::size_t w) {
        auto rng = make_worker_rng(seed, w);
        auto& part = parts[w];
        const std::size_t count = shard_size(samples, workers, w);
        for (std::size_t s = 0; s < count; ++s) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) sum += tm.psi(tm.draw(rng));
            if (sum <= spec.E) {
                const double lw = tm.lambda * (sum - spec.E);
                part.w.add(lw);
                part.w2.add(2.0 * lw);
                ++part.accepted;
            }
        }
    });
    std::vector<special::LogSumExp> w, w2;
    std::int64_t accepted = 0;
    for (const auto& p : parts) {
        w.push_back(p.w);
        w2.push_back(p.w2);
        accepted += p.accepted;
    }
    if (accepted < kMinAccepted) {
        std::ostringstream msg;
        msg << "only " << accepted << " of " << samples << " samples landed in the ball";
        throw AllRejected(msg.str());
    }
    const double log_n = std::log(static_cast<double>(samples));
    const double log_sum = special::tree_merge(w).value();
    const double log_sum2 = special::tree_merge(w2).value();
    const double q = std::exp(log_n + log_sum2 - 2.0 * log_sum);  // N sum W^2 / (sum W)^2
    LogVolume out;
    out.method = VolumeMethod::mc;
    out.log_value = static_cast<double>(spec.n) * tm.logZ + tm.lambda * spec.E + log_sum - log_n;
    out.diagnostics.lambda = tm.lambda;
    out.diagnostics.alpha = spec.alpha(tm);
    out.diagnostics.std_error = std::sqrt(std::max(q - 1.0, 0.0) / static_cast<double>(samples));
    out.diagnostics.accepted = accepted;
    return out;
}

/// int_0^inf lambda e^{-lambda x} phi((x - alpha)/s)/s dx
///   = lambda e^{-lambda alpha + lambda^2 s^2 / 2} (1 - Phi(lambda s - alpha/s)).
inline double exp_gaussian_closed_form(double s, double alpha, double lam) {
    if (!(s > 0.0) || !(lam > 0.0)) throw DomainError("exp_gaussian_closed_form: s and lambda must be positive");
    const double tau = lam * s - alpha / s;
    if (tau >= 0.0) return 0.5 * lam * special::erfcx(tau / std::numbers::sqrt2) * std::exp(-alpha * alpha / (2.0 * s * s));
    return lam * std::exp(-lam * alpha + 0.5 * lam * lam * s * s) * special::normal_sf(tau);
}

struct MillsBounds {
    double lower;
    double value;
    double upper;
};

/// 1/sqrt(t^2+2) <= sqrt(2 pi) e^{t^2/2} (1 - Phi(t)) <= 1/t.
inline MillsBounds mills_ratio_bounds(double t) {
    if (!(t > 0.0)) throw DomainError("mills_ratio_bounds needs t > 0");
    const MillsBounds b{1.0 / std::sqrt(t * t + 2.0), special::mills_ratio(t), 1.0 / t};
    if (!(b.lower <= b.value && b.value <= b.upper)) throw Error("Mills ratio outside its classical bounds");
    return b;
}

enum class SectionMethod { automatic, asymptotic, convolution };

/// log Vol_{n-1} of the section {y : (t, y) in B^n_{Psi/E}}, i.e. the
/// log-volume of B^{n-1}_{Psi/(E - Psi(t))}. The asymptotic route keeps
/// tm.lambda and moves alpha; the automatic choice uses the convolution
/// oracle when n - 1 <= 12.
inline double section_function(const BallSpec& spec, double t, const TiltedMeasure& tm,
                               SectionMethod method = SectionMethod::automatic) {
    check_spec(spec);
    const double rest = spec.E - spec.psi(t);
    if (!(rest > 0.0)) return special::kNegInf;
    if (spec.n == 1) return 0.0;
    const BallSpec section{spec.psi, spec.n - 1, rest};
    if (method == SectionMethod::automatic)
        method = section.n <= kMaxConvolutionDim ? SectionMethod::convolution : SectionMethod::asymptotic;
    if (method == SectionMethod::convolution) return log_volume_convolution(section).log_value;
    return log_volume_asymptotic(section, tm).log_value;
}

}  // namespace orlicz
