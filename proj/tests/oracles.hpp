#pragma once

// Independent reference integrals for tests (Boost double-exponential rules,
// no code shared with the library's quadrature).

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

/// int_{-inf}^{inf} f, split at the given finite points.
template <class F>
double integrate_line(F f, std::vector<double> cuts) {
    cuts.push_back(0.0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    boost::math::quadrature::exp_sinh<double> tail;
    boost::math::quadrature::tanh_sinh<double> mid;
    const double lo = cuts.front(), hi = cuts.back();
    double s = tail.integrate([&](double u) { return f(hi + u); }, 0.0, std::numeric_limits<double>::infinity());
    s += tail.integrate([&](double u) { return f(lo - u); }, 0.0, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) s += mid.integrate(f, cuts[i], cuts[i + 1]);
    return s;
}

/// int_a^b f.
template <class F>
double integrate(F f, double a, double b) {
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(f, a, b);
}

struct Moments {
    double logZ, m, sigma2, nu3;
};

/// Moments of Psi(X), X ~ e^{-lambda Psi}/Z, from scratch.
template <class Psi>
Moments tilted_moments(const Psi& psi, double lambda, const std::vector<double>& cuts) {
    const double z = integrate_line([&](double t) { return std::exp(-lambda * psi(t)); }, cuts);
    const auto mean = [&](auto g) {
        return integrate_line(
                   [&](double t) {
                       const double w = std::exp(-lambda * psi(t));
                       return w == 0.0 ? 0.0 : g(psi(t)) * w;
                   },
                   cuts) /
               z;
    };
    const double m = mean([](double v) { return v; });
    const double var = mean([&](double v) { return (v - m) * (v - m); });
    const double sd = std::sqrt(var);
    const double nu3 = mean([&](double v) { return std::pow(std::fabs(v - m) / sd, 3.0); });
    return {std::log(z), m, var, nu3};
}

}  // namespace oracle
