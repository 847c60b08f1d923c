#pragma once

// Desk-scale experiments: tilted CLT expectation, marginal total variation,
// boundary distance, Level_n intervals and the psi_2 Laplace chain.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/parallel.hpp"
#include "orlicz/report.hpp"
#include "orlicz/sampler.hpp"
#include "orlicz/special.hpp"
#include "orlicz/stats.hpp"
#include "orlicz/tilt.hpp"
#include "orlicz/volume.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

namespace lab_detail {

class Stopwatch {
public:
    [[nodiscard]] double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace lab_detail

// ---------------------------------------------------------------------------
// Tilted CLT expectation I_n = E[e^{ell sqrt(n) S_n} 1{S_n <= alpha}],
// S_n = n^{-1/2} sum Y_i, Y = (Psi(X) - m) / sigma.

/// 16 ell^2 + (2|alpha| + 1)^2 / ell^2.
inline double clt_validity_floor(double ell, double alpha) {
    const double b = 2.0 * std::fabs(alpha) + 1.0;
    return 16.0 * ell * ell + b * b / (ell * ell);
}

/// log J_n = ell sqrt(n) alpha - alpha^2/2 - log(ell sqrt(2 pi n)).
inline double clt_log_gaussian(double ell, double alpha, double n) {
    return ell * std::sqrt(n) * alpha - 0.5 * alpha * alpha - std::log(ell * std::sqrt(2.0 * std::numbers::pi * n));
}

/// Exact log I_n for Psi = a|t|^p (any a, any lambda): Psi(X) ~ Gamma(1/p),
/// so sum Psi ~ Gamma(n/p) and the exponential tilt stays in the Gamma
/// family. Needs c = ell sqrt(p) < 1.
inline double clt_log_exact_power(double p, double ell, double alpha, double n) {
    const double c = ell * std::sqrt(p);
    if (!(c < 1.0)) throw DomainError("exact CLT oracle needs ell * sqrt(p) < 1");
    const double k = n / p;
    const double x = (k + alpha * std::sqrt(k)) * (1.0 - c);  // lambda-scaled level times (1 - c)
    if (x <= 0.0) return special::kNegInf;
    return -c * k - k * std::log1p(-c) + special::log_gamma_p(k, x);
}

struct CltEstimate {
    double log_value = 0.0;
    double std_error = 0.0;  // of log_value; 0 for exact
};

/// Importance Monte Carlo for log I_n with proposal mu_{lambda*}^n,
/// m_{lambda*} = x/n, x = n m + alpha sigma sqrt(n).
inline CltEstimate clt_log_mc(const TiltedMeasure& tm, double ell, double alpha, std::int64_t n, std::uint64_t seed,
                              std::size_t samples, std::size_t workers = 1) {
    if (samples < 1000) throw DomainError("clt_log_mc needs at least 1000 samples");
    const double nn = static_cast<double>(n);
    const double sd = tm.sigma();
    const double x = nn * tm.m + alpha * sd * std::sqrt(nn);
    if (x <= 0.0) return {special::kNegInf, 0.0};
    const auto prop = solve_lambda(tm.psi, x / nn);
    const double lam_eff = tm.lambda - ell / sd;
    const double gap = prop.lambda - lam_eff;

    std::vector<special::LogSumExp> w(workers), w2(workers);
    run_sharded(workers, [&](std::size_t k) {
        auto rng = make_worker_rng(seed, k);
        const std::size_t count = shard_size(samples, workers, k);
        for (std::size_t s = 0; s < count; ++s) {
            double sum = 0.0;
            for (std::int64_t i = 0; i < n; ++i) sum += tm.psi(prop.draw(rng));
            if (sum <= x) {
                const double lw = gap * (sum - x);
                w[k].add(lw);
                w2[k].add(2.0 * lw);
            }
        }
    });
    const double log_n = std::log(static_cast<double>(samples));
    const double ls = special::tree_merge(w).value();
    const double ls2 = special::tree_merge(w2).value();
    if (ls == special::kNegInf) throw AllRejected("clt_log_mc: no sample below the level");
    const double q = std::exp(log_n + ls2 - 2.0 * ls);
    CltEstimate out;
    out.log_value = nn * (prop.logZ - tm.logZ) - (ell / sd) * nn * tm.m + gap * x + ls - log_n;
    out.std_error = std::sqrt(std::max(q - 1.0, 0.0) / static_cast<double>(samples));
    return out;
}

inline constexpr double kCltBandFactor = 3.0;

/// For each n: I_n (exact when Psi is a single power, else importance MC),
/// J_n and r_n = I_n/J_n - 1. Passes when |r_n| is nonincreasing in n and
/// |r_n| sqrt(n) stays within a factor 3 band.
inline ExperimentReport clt_exp_experiment(const TiltedMeasure& tm, double ell, double alpha,
                                           std::vector<std::int64_t> n_list, std::uint64_t seed,
                                           std::size_t mc_samples = 20000, std::size_t workers = 1) {
    lab_detail::Stopwatch clock;
    if (!(ell > 0.0)) throw DomainError("clt_exp_experiment: ell must be positive");
    if (n_list.empty()) throw DomainError("clt_exp_experiment: empty n list");
    std::sort(n_list.begin(), n_list.end());
    const double floor = clt_validity_floor(ell, alpha);
    for (auto n : n_list) {
        if (static_cast<double>(n) < floor) {
            std::ostringstream msg;
            msg << "n = " << n << " is below the validity floor " << floor << " for ell = " << ell
                << ", alpha = " << alpha;
            throw ValidityFloor(msg.str());
        }
    }
    const auto power = tm.psi.as_power();
    const bool exact = power && ell * std::sqrt(power->second) < 1.0;

    ExperimentReport rep;
    rep.name = "clt_exp";
    rep.seed = seed;
    rep.workers = workers;
    rep.params = {{"psi", tm.psi.spec()}, {"lambda", tm.lambda}, {"ell", ell}, {"alpha", alpha},
                  {"n_list", n_list},    {"oracle", exact ? "exact_gamma" : "importance_mc"}};
    rep.sample_size = exact ? 0 : mc_samples * n_list.size();
    rep.statistics["validity_floor"] = floor;
    rep.statistics["nu3"] = tm.nu3;

    std::vector<double> r_abs, scaled;
    Json rows = Json::array();
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        const auto n = n_list[i];
        const double nn = static_cast<double>(n);
        CltEstimate est;
        if (exact)
            est.log_value = clt_log_exact_power(power->second, ell, alpha, nn);
        else
            est = clt_log_mc(tm, ell, alpha, n, seed + i, mc_samples, workers);
        const double log_j = clt_log_gaussian(ell, alpha, nn);
        const double r = std::expm1(est.log_value - log_j);
        r_abs.push_back(std::fabs(r));
        scaled.push_back(std::fabs(r) * std::sqrt(nn));
        rows.push_back({{"n", n},
                        {"log_I", est.log_value},
                        {"log_J", log_j},
                        {"r", r},
                        {"abs_r_sqrt_n", scaled.back()},
                        {"log_I_std_error", est.std_error}});
    }
    const double hi = *std::max_element(scaled.begin(), scaled.end());
    const double lo = *std::min_element(scaled.begin(), scaled.end());
    const double band = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    bool nonincreasing = true;
    for (std::size_t i = 1; i < r_abs.size(); ++i) nonincreasing = nonincreasing && r_abs[i] <= r_abs[i - 1];
    rep.statistics["per_n"] = rows;
    rep.statistics["band_ratio"] = band;
    rep.statistics["abs_r_nonincreasing"] = nonincreasing;
    rep.thresholds["band_ratio_max"] = kCltBandFactor;
    rep.pass = nonincreasing && band <= kCltBandFactor;
    rep.duration_ms = clock.ms();
    return rep;
}

// ---------------------------------------------------------------------------
// Marginal total variation.

namespace lab_detail {

/// Vol(B^k_{Psi/t}) on t_j = j t_hi / cells.
inline std::vector<double> k_profile(const YoungFunction& psi, int k, double t_hi, int cells) {
    if (psi.as_power()) {
        std::vector<double> v(cells + 1, 0.0);
        for (int j = 1; j <= cells; ++j) {
            const double t = j == cells ? t_hi : t_hi * j / cells;
            v[j] = std::exp(log_volume_closed_form({psi, k, t}).log_value);
        }
        return v;
    }
    if (k > kMaxConvolutionDim) throw DomainError("marginal profile needs k <= 12 for non-power Young functions");
    return convolution_profile(psi, k, t_hi, cells);
}

}  // namespace lab_detail

struct MarginalTv {
    double tv = 0.0;       // semi-analytic
    double xi_mass = 0.0;  // mass of the asymptotic marginal density on [0, t_hi]
    double t_hi = 0.0;
};

/// TV between (xi_1..xi_k) and mu_lambda^k, written as a t-integral over the
/// Psi-sum T = sum_{i<=k} Psi(x_i): both laws are functions of T on level
/// sets, so TV = 1/2 int |Vol_{n-k}(E-t)/Vol_n(E) - e^{-lambda t}/Z^k| dV_k(t).
inline MarginalTv marginal_tv_semi_analytic(const TiltedMeasure& tm, std::int64_t n, int k, double E) {
    const double t_cut = (tilt_detail::kTailExponent + 10.0 * k) / tm.lambda;
    const double t_hi = std::min(E, t_cut);
    const int cells = tm.psi.as_power() || k == 1 ? 20000 : 4000;
    const auto vk = lab_detail::k_profile(tm.psi, k, t_hi, cells);
    const double log_full = log_volume_asymptotic({tm.psi, n, E}, tm).log_value;
    double diff = 0.0, ref = 0.0, xi = 0.0;
    for (int j = 0; j < cells; ++j) {
        const double dv = vk[j + 1] - vk[j];
        if (dv <= 0.0) continue;
        const double t = t_hi * (j + 0.5) / cells;
        const double a = std::exp(log_volume_asymptotic({tm.psi, n - k, E - t}, tm).log_value - log_full);
        const double b = std::exp(-tm.lambda * t - k * tm.logZ);
        diff += std::fabs(a - b) * dv;
        ref += b * dv;
        xi += a * dv;
    }
    return {0.5 * (diff + std::max(0.0, 1.0 - ref)), xi, t_hi};
}

inline ExperimentReport marginal_tv_experiment(const YoungFunction& psi, double lambda, std::int64_t n, int k,
                                               std::uint64_t seed, std::size_t samples, std::size_t workers = 1,
                                               double alpha = 0.0, double tv_threshold = 0.05) {
    lab_detail::Stopwatch clock;
    if (k < 1 || k >= n) throw DomainError("marginal_tv_experiment: need 1 <= k < n");
    const auto tm = build_tilted(psi, lambda);
    const double nn = static_cast<double>(n);
    const double E = tm.m * nn + alpha * tm.sigma() * std::sqrt(nn);
    if (!(E > 0.0)) throw DomainError("marginal_tv_experiment: level E must be positive");

    ExperimentReport rep;
    rep.name = "marginal_tv";
    rep.seed = seed;
    rep.workers = workers;
    rep.sample_size = samples;
    rep.params = {{"psi", psi.spec()}, {"lambda", lambda}, {"n", n}, {"k", k}, {"alpha", alpha}, {"E", E}};
    const bool out_of_regime = static_cast<double>(k) * k > nn;
    if (out_of_regime) rep.flags.push_back("regime_violation: k exceeds sqrt(n)");

    const auto semi = marginal_tv_semi_analytic(tm, n, k, E);
    rep.statistics["tv_semi_analytic"] = semi.tv;
    rep.statistics["asymptotic_marginal_mass"] = semi.xi_mass;
    rep.statistics["t_hi"] = semi.t_hi;

    if (samples > 0) {
        const BallSpec spec{psi, n, E};
        const auto batch = sample_uniform_ball(spec, tm, seed, samples, workers);
        // reference CDF of T under mu_lambda^k on a grid, equal-mass bins
        const int cells = 4000;
        const auto vk = lab_detail::k_profile(psi, k, semi.t_hi, cells);
        std::vector<double> cdf(cells + 1, 0.0);
        for (int j = 0; j < cells; ++j) {
            const double t = semi.t_hi * (j + 0.5) / cells;
            cdf[j + 1] = cdf[j] + std::exp(-tm.lambda * t - k * tm.logZ) * (vk[j + 1] - vk[j]);
        }
        const double total = cdf.back();
        const int bins = static_cast<int>(std::clamp<std::size_t>(samples / 200, 2, 50));
        std::vector<double> edges;
        for (int b = 1; b < bins; ++b) {
            const double target = total * b / bins;
            const auto it = std::lower_bound(cdf.begin(), cdf.end(), target);
            const auto j = static_cast<std::size_t>(std::max<std::ptrdiff_t>(1, it - cdf.begin()));
            const double w = (target - cdf[j - 1]) / (cdf[j] - cdf[j - 1]);
            edges.push_back(semi.t_hi * (static_cast<double>(j - 1) + w) / cells);
        }
        std::vector<double> counts(bins, 0.0);
        for (std::size_t i = 0; i < batch.count(); ++i) {
            const auto row = batch.row(i);
            double t = 0.0;
            for (int c = 0; c < k; ++c) t += psi(row[c]);
            counts[std::upper_bound(edges.begin(), edges.end(), t) - edges.begin()] += 1.0;
        }
        const double N = static_cast<double>(batch.count());
        const double q = 1.0 / bins;
        double tv_hist = 0.0;
        for (double c : counts) tv_hist += std::fabs(c / N - q);
        tv_hist *= 0.5;
        rep.statistics["tv_histogram"] = tv_hist;
        rep.statistics["tv_histogram_noise_floor"] = 0.5 * bins * std::sqrt(2.0 * q * (1.0 - q) / (std::numbers::pi * N));
        rep.statistics["histogram_bins"] = bins;
        rep.statistics["acceptance_rate"] = batch.acceptance_rate;
    }
    if (out_of_regime) {
        rep.pass = true;
    } else {
        rep.thresholds["tv_semi_analytic_max"] = tv_threshold;
        rep.pass = semi.tv <= tv_threshold;
    }
    rep.duration_ms = clock.ms();
    return rep;
}

// ---------------------------------------------------------------------------
// Boundary distance D = lambda (E - sum Psi(xi_i)).

/// 1.63/sqrt(N) (KS critical value at 1%) plus a bias allowance c/sqrt(n)
/// calibrated to 0.05 at n = 200, N = 1e5.
inline double boundary_ks_threshold(std::int64_t n, std::size_t samples) {
    const double noise = 1.63 / std::sqrt(static_cast<double>(samples));
    const double c = (0.05 - 1.63 / std::sqrt(1e5)) * std::sqrt(200.0);
    return noise + c / std::sqrt(static_cast<double>(n));
}

inline ExperimentReport boundary_exp_test(const BallSpec& spec, const TiltedMeasure& tm, std::uint64_t seed,
                                          std::size_t samples, std::size_t workers = 1) {
    lab_detail::Stopwatch clock;
    if (samples < 10000) throw DomainError("boundary_exp_test needs at least 1e4 samples");
    const auto batch = sample_uniform_ball(spec, tm, seed, samples, workers);
    std::vector<double> d(batch.count());
    for (std::size_t i = 0; i < batch.count(); ++i) {
        double s = 0.0;
        for (double x : batch.row(i)) s += spec.psi(x);
        d[i] = tm.lambda * (spec.E - s);
    }
    const double min_d = *std::min_element(d.begin(), d.end());
    const double ks = stats::ks_distance(d, [](double t) { return t <= 0.0 ? 0.0 : -std::expm1(-t); });
    const double thr = boundary_ks_threshold(spec.n, samples);

    ExperimentReport rep;
    rep.name = "boundary_exp";
    rep.seed = seed;
    rep.workers = workers;
    rep.sample_size = samples;
    rep.params = {{"psi", spec.psi.spec()}, {"n", spec.n}, {"E", spec.E}, {"lambda", tm.lambda},
                  {"alpha", spec.alpha(tm)}};
    rep.statistics["ks"] = ks;
    rep.statistics["min_distance"] = min_d;
    rep.statistics["acceptance_rate"] = batch.acceptance_rate;
    if (const auto power = spec.psi.as_power()) {
        // sum Psi(xi) = E U^{p/n} exactly on a single-power ball
        const double scale = tm.lambda * spec.E;
        const double expo = static_cast<double>(spec.n) / power->second;
        rep.statistics["ks_exact_law"] = stats::ks_distance(d, [&](double t) {
            if (t <= 0.0) return 0.0;
            if (t >= scale) return 1.0;
            return -std::expm1(expo * std::log1p(-t / scale));
        });
    }
    rep.thresholds["ks_max"] = thr;
    rep.thresholds["min_distance_min"] = 0.0;
    rep.pass = ks <= thr && min_d >= 0.0;
    rep.duration_ms = clock.ms();
    return rep;
}

// ---------------------------------------------------------------------------
// Level_n(V) for a probability potential e^{-V}.

struct LevelInterval {
    YoungFunction v;
    std::int64_t n = 1;
    double m1 = 0.0;
    double sigma1 = 0.0;
    double eps = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

inline constexpr double kNormalizationTol = 1e-9;

namespace lab_detail {

inline TiltedMeasure normalized_measure(const YoungFunction& v) {
    auto tm = build_tilted(v, 1.0);
    if (std::fabs(tm.logZ) > kNormalizationTol) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "int exp(-V) = " << std::exp(tm.logZ) << ", expected 1";
        if (const auto power = v.as_power()) {
            const double c = std::pow(2.0 * std::tgamma(1.0 + 1.0 / power->second), power->second);
            msg.precision(17);
            msg << "; use mix:" << c << ":pow:" << power->second;
        } else {
            msg << "; rescale the mix coefficients";
        }
        throw NotNormalized(msg.str());
    }
    return tm;
}

}  // namespace lab_detail

inline LevelInterval level_interval(const YoungFunction& v, std::int64_t n, double eps) {
    if (n < 1) throw DomainError("level_interval: n must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("level_interval: eps must lie in (0, 1)");
    const auto tm = lab_detail::normalized_measure(v);
    const double nn = static_cast<double>(n);
    const double half = tm.sigma() * (1.0 - eps) * std::sqrt(2.0 * nn);
    return {v, n, tm.m, tm.sigma(), eps, tm.m * nn - half, tm.m * nn + half};
}

struct LevelMembership {
    bool member = false;
    double margin = 0.0;  // log(e^{-E} Vol) - log(n^n e^{-n} / (e n!))
    double lambda = 0.0;
};

inline LevelMembership level_membership(const YoungFunction& v, std::int64_t n, double E) {
    if (n < 1) throw DomainError("level_membership: n must be >= 1");
    if (!(E > 0.0)) throw DomainError("level_membership: E must be positive");
    lab_detail::normalized_measure(v);
    const double nn = static_cast<double>(n);
    const auto tm = solve_lambda(v, E / nn);
    const double log_vol = log_volume_asymptotic({v, n, E}, tm).log_value;
    const double log_floor = -1.0 + nn * std::log(nn) - nn - special::log_factorial(nn);
    const double margin = log_vol - E - log_floor;
    return {margin >= 0.0, margin, tm.lambda};
}

/// Var_{e^{-V}}(V), which is at most 1 for convex V.
inline double nguyen_wang_check(const YoungFunction& v) {
    const auto tm = lab_detail::normalized_measure(v);
    if (tm.sigma2 > 1.0 + 1e-9) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "variance of V under exp(-V) is " << tm.sigma2 << " > 1";
        throw Error(msg.str());
    }
    return tm.sigma2;
}

// ---------------------------------------------------------------------------
// psi_2 chain  E e^{<a,xi>} <= (E e^{|a| xi_1 / sqrt n})^n <= e^{|a|^2 E xi_1^2 / 2}.

inline constexpr double kMaxLaplaceRelSe = 0.05;

inline ExperimentReport psi2_laplace_check(const BallSpec& spec, const TiltedMeasure& tm, std::uint64_t seed,
                                           const std::vector<std::vector<double>>& directions, std::size_t samples,
                                           std::size_t workers = 1) {
    lab_detail::Stopwatch clock;
    if (!spec.psi.is_even()) throw Psi2Violated("psi_2 chain needs an even Young function");
    if (const auto r = psi2_test(spec.psi); !r.passed) {
        std::ostringstream msg;
        msg << "u -> Psi(sqrt u) is not convex near u = " << (*r.witness)[1];
        throw Psi2Violated(msg.str());
    }
    if (directions.empty()) throw DomainError("psi2_laplace_check: no directions");
    const auto dim = static_cast<std::size_t>(spec.n);
    for (const auto& a : directions)
        if (a.size() != dim) throw DomainError("psi2_laplace_check: direction length must equal n");
    if (samples < 1000) throw DomainError("psi2_laplace_check needs at least 1000 samples");

    const auto batch = sample_uniform_ball(spec, tm, seed, samples, workers);
    const std::size_t N = batch.count();
    const double nn = static_cast<double>(dim);
    const double log_n = std::log(static_cast<double>(N));

    // per-sample coordinate average of xi_i^2, shared by all directions
    std::vector<double> z(N);
    for (std::size_t j = 0; j < N; ++j) {
        double s = 0.0;
        for (double x : batch.row(j)) s += x * x;
        z[j] = s / nn;
    }
    const auto zs = stats::summarize(z);

    ExperimentReport rep;
    rep.name = "psi2_laplace";
    rep.seed = seed;
    rep.workers = workers;
    rep.sample_size = samples;
    rep.params = {{"psi", spec.psi.spec()}, {"n", spec.n}, {"E", spec.E}, {"directions", directions}};
    rep.statistics["second_moment"] = zs.mean;
    rep.statistics["second_moment_std_error"] = zs.std_error;
    rep.statistics["acceptance_rate"] = batch.acceptance_rate;

    bool all = true;
    Json rows = Json::array();
    std::vector<double> y(N), dot2(N);
    for (const auto& a : directions) {
        double norm2 = 0.0;
        for (double v : a) norm2 += v * v;
        const double c = std::sqrt(norm2 / nn);
        special::LogSumExp lse, lse2;
        for (std::size_t j = 0; j < N; ++j) {
            const auto row = batch.row(j);
            double dot = 0.0, ey = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                dot += a[i] * row[i];
                ey += std::exp(c * row[i]);
            }
            lse.add(dot);
            lse2.add(2.0 * dot);
            y[j] = ey / nn;
            dot2[j] = dot * dot - norm2 * z[j];
        }
        const double log_l = lse.value() - log_n;
        const double q = std::exp(log_n + lse2.value() - 2.0 * lse.value());
        const double se_l = std::sqrt(std::max(q - 1.0, 0.0) / static_cast<double>(N));
        const auto ys = stats::summarize(y);
        const double log_m = nn * std::log(ys.mean);
        const double se_m = nn * ys.std_error / ys.mean;
        const double log_r = 0.5 * norm2 * zs.mean;
        const double se_r = 0.5 * norm2 * zs.std_error;
        const double se = std::sqrt(se_l * se_l + se_m * se_m + se_r * se_r);
        const auto id = stats::summarize(dot2);
        const bool precise = se_l <= kMaxLaplaceRelSe;
        const bool ok = precise && log_l <= log_m + 3.0 * se && log_m <= log_r + 3.0 * se;
        all = all && ok;
        rows.push_back({{"norm", std::sqrt(norm2)},
                        {"log_L", log_l},
                        {"log_M", log_m},
                        {"log_R", log_r},
                        {"se_L", se_l},
                        {"se_M", se_m},
                        {"se_R", se_r},
                        {"se", se},
                        {"second_moment_identity_gap", id.mean},
                        {"second_moment_identity_std_error", id.std_error},
                        {"precise", precise},
                        {"pass", ok}});
        if (!precise) rep.flags.push_back("relative standard error of L above 5%");
    }
    rep.statistics["per_direction"] = rows;
    rep.thresholds["se_multiplier"] = 3.0;
    rep.thresholds["se_L_max"] = kMaxLaplaceRelSe;
    rep.pass = all;
    rep.duration_ms = clock.ms();
    return rep;
}

}  // namespace orlicz
