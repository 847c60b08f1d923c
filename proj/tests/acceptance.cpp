// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "orlicz/orlicz.hpp"

using namespace orlicz;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int g_failures = 0;

std::size_t workers() { return std::max(1u, std::min(8u, std::thread::hardware_concurrency())); }

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = sec <= budget_s;
    const bool ok = o.pass && in_time;
    if (!ok) ++g_failures;
    std::printf("[%s] %2d %s: %s; %.2fs (budget %.0fs)%s\n", ok ? "PASS" : "FAIL", id, title, o.detail.c_str(), sec,
                budget_s, in_time ? "" : " over budget");
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

Outcome cross_polytope_vs_exact() {
    const auto psi = parse_young("pow:1");
    const auto tm = build_tilted(psi, 1.0);
    Outcome o;
    double worst = 0.0;
    for (std::int64_t n : {10, 50, 100, 500}) {
        const double nn = static_cast<double>(n);
        const double asym = log_volume_asymptotic({psi, n, nn}, tm).log_value;
        const double exact = nn * std::log(2.0 * nn) - std::lgamma(nn + 1.0);
        const double dev = std::fabs(std::expm1(asym - exact) - 1.0 / (12.0 * nn));
        worst = std::max(worst, dev * nn * nn);
        o.pass = o.pass && dev <= 1.0 / (nn * nn);
    }
    o.detail = "max n^2 |ratio - 1 - 1/(12n)| = " + fmt(worst) + " (<= 1)";
    return o;
}

Outcome lp_vs_exact() {
    Outcome o;
    double worst = 0.0;
    bool necessary = true;
    for (double p : {2.0, 4.0}) {
        const auto psi = parse_young("pow:" + std::to_string(static_cast<int>(p)));
        const auto tm = build_tilted(psi, 1.0);
        for (std::int64_t n : {50, 200, 800}) {
            const double nn = static_cast<double>(n);
            for (double a : {-1.0, 0.0, 1.0}) {
                const BallSpec spec{psi, n, tm.m * nn + a * tm.sigma() * std::sqrt(nn)};
                const double asym = log_volume_asymptotic(spec, tm).log_value;
                const double exact = log_volume_closed_form(spec).log_value;
                const double dev = std::fabs(std::expm1(asym - exact));
                worst = std::max(worst, dev * std::sqrt(nn));
                o.pass = o.pass && dev <= 3.0 / std::sqrt(nn);
                if (n == 800 && a != 0.0) {
                    const double without = std::fabs(std::expm1(asym + 0.5 * a * a - exact));
                    necessary = necessary && without > 3.0 / std::sqrt(nn);
                }
            }
        }
    }
    o.pass = o.pass && necessary;
    o.detail = "max sqrt(n)|ratio - 1| = " + fmt(worst) + " (<= 3); alpha factor necessary at n=800: " +
               (necessary ? "yes" : "no");
    return o;
}

Outcome oracle_triangle() {
    Outcome o;
    int count = 0, conv_ok = 0, mc_ok = 0;
    double worst_conv = 0.0, worst_z = 0.0;
    std::uint64_t seed = 100;
    for (const char* text : {"pow:1", "pow:2", "pow:4"}) {
        const auto psi = parse_young(text);
        for (std::int64_t n : {3, 5, 8}) {
            for (double E : {0.5, 2.0, 6.0}) {
                const BallSpec spec{psi, n, E};
                const double exact = log_volume_closed_form(spec).log_value;
                const double conv = log_volume_convolution(spec).log_value;
                const auto tm = solve_lambda(psi, E / static_cast<double>(n));
                const auto mc = log_volume_mc(spec, tm, seed++, 1000000, workers());
                const double rel = std::fabs(std::expm1(conv - exact));
                const double z = std::fabs(mc.log_value - exact) / mc.diagnostics.std_error;
                worst_conv = std::max(worst_conv, rel);
                worst_z = std::max(worst_z, z);
                conv_ok += rel <= 1e-3;
                mc_ok += z <= 3.0;
                ++count;
            }
        }
    }
    o.pass = count == 27 && conv_ok == 27 && mc_ok == 27;
    o.detail = std::to_string(count) + " cases; convolution ok " + std::to_string(conv_ok) + " (max rel " +
               fmt(worst_conv) + "); mc ok " + std::to_string(mc_ok) + " (max |z| " + fmt(worst_z) + ")";
    return o;
}

Outcome clt_gamma_oracle() {
    Outcome o;
    std::ostringstream out;
    for (double ell : {0.25, 0.5}) {
        for (double a : {-1.0, 0.0, 1.0}) {
            double hi = 0.0, lo = std::numeric_limits<double>::infinity();
            for (double n : {1e2, 1e3, 1e4}) {
                const double r = std::expm1(clt_log_exact_power(1.0, ell, a, n) - clt_log_gaussian(ell, a, n));
                hi = std::max(hi, std::fabs(r) * std::sqrt(n));
                lo = std::min(lo, std::fabs(r) * std::sqrt(n));
            }
            const double band = hi / lo;
            if (!(band <= 3.0)) {
                o.pass = false;
                out << " ell=" << ell << ",alpha=" << a << ":band " << fmt(band);
            }
        }
    }
    o.detail = o.pass ? "all 6 (ell, alpha) bands within factor 3" : "bands over 3:" + out.str();
    return o;
}

Outcome exp_gaussian() {
    using boost::math::quadrature::exp_sinh;
    Outcome o;
    exp_sinh<double> integrator;
    int points = 0;
    double worst_rel = 0.0, worst_bound = 0.0;
    for (double s : {0.75, 1.0, 1.25, 1.5, 2.0})
        for (double a : {-1.0, -0.5, 0.0, 0.5, 1.0})
            for (double lam : {4.0, 6.0, 10.0, 30.0}) {
                const double tau = lam * s - a / s;
                if (!(tau > 1.0)) continue;
                ++points;
                const double value = exp_gaussian_closed_form(s, a, lam);
                // rescale the integrand by its value at 0 so exp_sinh sees O(1) numbers
                const double log_ref = -0.5 * (a / s) * (a / s);
                const auto f = [&](double x) {
                    const double z = (x - a) / s;
                    return lam * std::exp(-lam * x - 0.5 * z * z - log_ref) / (s * std::sqrt(2.0 * std::numbers::pi));
                };
                const double q = integrator.integrate(f, 1e-15) * std::exp(log_ref);
                worst_rel = std::max(worst_rel, std::fabs(value / q - 1.0));
                const double lhs =
                    std::fabs(std::sqrt(2.0 * std::numbers::pi) * value * std::exp(a * a / (2.0 * s * s)) * s - 1.0);
                const double rhs = 2.0 * (1.0 + std::fabs(a) / s) / tau;
                worst_bound = std::max(worst_bound, lhs / rhs);
            }
    o.pass = points == 100 && worst_rel <= 1e-10 && worst_bound <= 1.0;
    o.detail = std::to_string(points) + " grid points; max rel err " + fmt(worst_rel) + "; max bound usage " +
               fmt(worst_bound);
    return o;
}

Outcome boundary() {
    const auto psi = parse_young("pow:1");
    const auto tm = build_tilted(psi, 1.0);
    Outcome o;
    std::vector<double> ks;
    for (std::int64_t n : {20, 80, 200, 320}) {
        const auto r = boundary_exp_test({psi, n, static_cast<double>(n)}, tm, 1, 100000, workers());
        ks.push_back(r.statistics["ks"].get<double>());
        if (n == 200) o.pass = r.pass && ks.back() <= 0.05;
    }
    const bool decreasing = ks[0] > ks[1] && ks[1] > ks[3];
    o.pass = o.pass && decreasing;
    o.detail = "KS(n=200) = " + fmt(ks[2]) + " (<= 0.05); KS along 20, 80, 320 = " + fmt(ks[0]) + ", " + fmt(ks[1]) +
               ", " + fmt(ks[3]) + (decreasing ? " decreasing" : " not decreasing");
    return o;
}

double exact_marginal_tv(double n) {
    boost::math::quadrature::tanh_sinh<double> ts;
    const double E = n;
    const auto diff = [&](double x) {
        const double f = x < E ? 0.5 * n / E * std::exp((n - 1) * std::log1p(-x / E)) : 0.0;
        return std::fabs(f - 0.5 * std::exp(-x));
    };
    // symmetric: 1/2 * 2 * int_0^inf
    return ts.integrate(diff, 0.0, 5.0) + ts.integrate(diff, 5.0, 80.0);
}

Outcome marginal_tv() {
    const auto tm = build_tilted(parse_young("pow:1"), 1.0);
    const double a = marginal_tv_semi_analytic(tm, 400, 1, 400.0).tv;
    const double b = marginal_tv_semi_analytic(tm, 1600, 1, 1600.0).tv;
    const double ea = exact_marginal_tv(400), eb = exact_marginal_tv(1600);
    Outcome o;
    o.pass = a <= 0.05 && b < a;
    o.detail = "TV(400) = " + fmt(a) + " (exact " + fmt(ea) + "), TV(1600) = " + fmt(b) + " (exact " + fmt(eb) + ")";
    return o;
}

Outcome level_sets() {
    const auto v = parse_young("mix:2:pow:1");
    Outcome o;
    const auto li = level_interval(v, 200, 0.2);
    int members = 0;
    for (int i = 0; i <= 10; ++i) members += level_membership(v, 200, li.lo + (li.hi - li.lo) * i / 10.0).member;
    bool outside = true;
    for (std::int64_t n : {200, 400, 1000, 4000, 100000}) {
        const double nn = static_cast<double>(n);
        outside = outside && !level_membership(v, n, nn + 2.0 * std::sqrt(2.0 * nn)).member;
    }
    const double var = nguyen_wang_check(v);
    o.pass = members == 11 && outside && std::fabs(var - 1.0) <= 1e-9;
    o.detail = std::to_string(members) + "/11 grid levels certified on [" + fmt(li.lo) + ", " + fmt(li.hi) +
               "]; n+2sqrt(2n) excluded: " + (outside ? "yes" : "no") + "; Var(V) = " + fmt(var);
    return o;
}

Outcome psi2_chain() {
    Outcome o;
    const std::int64_t n = 16;
    std::vector<std::vector<double>> dirs;
    {
        std::vector<double> e1(n, 0.0);
        e1[0] = 1.0;
        dirs.push_back(e1);
        dirs.emplace_back(n, 0.25);
        dirs.emplace_back(n, 0.5);
        std::vector<double> alt(n);
        for (std::int64_t i = 0; i < n; ++i) alt[i] = i % 2 ? -0.3 : 0.3;
        dirs.push_back(alt);
        std::mt19937_64 gen(2024);
        std::normal_distribution<double> g;
        std::vector<double> r(n);
        double s = 0.0;
        for (auto& x : r) {
            x = g(gen);
            s += x * x;
        }
        for (auto& x : r) x *= 1.5 / std::sqrt(s);
        dirs.push_back(r);
    }
    int rows = 0, ok_rows = 0;
    double moment_z = 0.0;
    for (const char* text : {"pow:2", "pow:4"}) {
        const auto psi = parse_young(text);
        const BallSpec spec{psi, n, 4.0};
        const auto rep = psi2_laplace_check(spec, solve_lambda(psi, 0.25), 7, dirs, 1000000, workers());
        for (const auto& row : rep.statistics["per_direction"]) {
            ++rows;
            ok_rows += row["pass"].get<bool>();
        }
        o.pass = o.pass && rep.pass;
        if (std::string(text) == "pow:2") {
            moment_z = std::fabs(rep.statistics["second_moment"].get<double>() - 4.0 / 18.0) /
                       rep.statistics["second_moment_std_error"].get<double>();
        }
    }
    const bool rejected = !psi2_test(parse_young("pow:1")).passed;
    o.pass = o.pass && rows == 10 && moment_z <= 3.0 && rejected;
    o.detail = std::to_string(ok_rows) + "/" + std::to_string(rows) +
               " chains hold; pow:2 E xi1^2 vs E/(n+2): |z| = " + fmt(moment_z) +
               "; pow:1 rejected: " + (rejected ? "yes" : "no");
    return o;
}

Outcome sampler() {
    Outcome o;
    std::size_t outside = 0, total = 0;
    for (const char* text : {"pow:1", "pow:2", "pow:4", "coshm1", "shiftpow:0.5:2", "mix:1:pow:4:0.5:pow:1"}) {
        const auto psi = parse_young(text);
        const BallSpec spec{psi, 20, 6.0};
        const auto b = sample_uniform_ball(spec, solve_lambda(psi, 0.3), 3, 10000, workers());
        for (std::size_t i = 0; i < b.count(); ++i) {
            double s = 0.0;
            for (double x : b.row(i)) s += psi(x);
            outside += s > spec.E;
            ++total;
        }
    }
    const auto disc = parse_young("pow:2");
    const std::size_t N = 100000;
    const auto b = sample_uniform_ball({disc, 2, 1.0}, build_tilted(disc, 1.0), 5, N, workers());
    std::vector<double> counts(16, 0.0), radial;
    for (std::size_t i = 0; i < N; ++i) {
        const auto r = b.row(i);
        const double ang = std::atan2(r[1], r[0]) + std::numbers::pi;
        counts[std::min<std::size_t>(15, static_cast<std::size_t>(ang / (2 * std::numbers::pi) * 16))] += 1.0;
        radial.push_back(r[0] * r[0] + r[1] * r[1]);
    }
    const double chi2 = stats::chi_square_stat(counts, std::vector<double>(16, N / 16.0));
    const double crit = stats::chi_square_critical(15, 1e-3);
    const double ks = stats::ks_distance(radial, [](double t) { return std::clamp(t, 0.0, 1.0); });
    const double ks_crit = 1.63 / std::sqrt(static_cast<double>(N));
    double worst = 0.0;
    for (const char* text : {"pow:1", "pow:2"}) {
        const auto psi = parse_young(text);
        const auto tm = build_tilted(psi, 1.0);
        for (std::int64_t n : {64, 256}) {
            const BallSpec spec{psi, n, tm.m * static_cast<double>(n)};
            const double pred = predict_acceptance(spec, tm);
            const auto got = sample_uniform_ball(spec, tm, 9, static_cast<std::size_t>(2e5 * pred), workers());
            worst = std::max(worst, std::fabs(got.acceptance_rate / pred - 1.0));
        }
    }
    o.pass = outside == 0 && chi2 <= crit && ks <= ks_crit && worst <= 0.1;
    o.detail = std::to_string(total - outside) + "/" + std::to_string(total) + " contained; chi2 = " + fmt(chi2) +
               " (<= " + fmt(crit) + "); radial KS = " + fmt(ks) + " (<= " + fmt(ks_crit) +
               "); max |rate/pred - 1| = " + fmt(worst);
    return o;
}

}  // namespace

int main() {
    std::printf("orlicz acceptance, %zu worker(s)\n", workers());
    criterion(1, "asymptotic vs exact cross-polytope", 1, cross_polytope_vs_exact);
    criterion(2, "asymptotic vs exact l_p volume", 5, lp_vs_exact);
    criterion(3, "convolution / MC / closed-form triangle", 120, oracle_triangle);
    criterion(4, "tilted CLT vs Gamma oracle", 1, clt_gamma_oracle);
    criterion(5, "exp-gaussian closed form and bound", 1, exp_gaussian);
    criterion(6, "boundary distance KS", 60, boundary);
    criterion(7, "marginal total variation", 10, marginal_tv);
    criterion(8, "level intervals", 1, level_sets);
    criterion(9, "psi2 Laplace chain", 120, psi2_chain);
    criterion(10, "sampler correctness", 60, sampler);
    std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
