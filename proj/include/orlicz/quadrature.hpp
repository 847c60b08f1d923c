#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature over a list of panels.

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <span>
#include <sstream>
#include <vector>

#include "orlicz/errors.hpp"

namespace orlicz::quad {

struct Options {
    double abs_tol = 1e-15;
    double rel_tol = 1e-11;
    int max_intervals = 20000;
};

struct Result {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = fc * kKronrod[7];
    double gauss = fc * kGauss[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kNodes[j];
        const double s = f(c - dx) + f(c + dx);
        kron += kKronrod[j] * s;
        if (j % 2 == 1) gauss += kGauss[j / 2] * s;
    }
    return {a, b, kron * h, std::fabs((kron - gauss) * h)};
}

}  // namespace detail

/// Integrates f over [breaks.front(), breaks.back()], starting from the
/// panels delimited by `breaks` (sorted, at least two entries).
template <class F>
Result integrate(F&& f, std::span<const double> breaks, const Options& opt = {}) {
    if (breaks.size() < 2) throw DomainError("integrate: need at least two break points");
    std::priority_queue<detail::Panel> heap;
    double total = 0.0;
    double err = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        auto p = detail::gk15(f, breaks[i], breaks[i + 1]);
        total += p.value;
        err += p.error;
        heap.push(p);
    }
    double previous = total;
    int count = static_cast<int>(heap.size());
    while (!heap.empty() && err > std::max(opt.abs_tol, opt.rel_tol * std::fabs(total))) {
        if (count >= opt.max_intervals) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "quadrature did not converge: estimates " << previous << " then " << total
                << ", error " << err;
            throw QuadratureFailure(msg.str(), previous, total);
        }
        const auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Panel can no longer be split in floating point; accept it.
            err -= worst.error;
            continue;
        }
        const auto left = detail::gk15(f, worst.a, mid);
        const auto right = detail::gk15(f, mid, worst.b);
        previous = total;
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++count;
    }
    // Re-sum from the panels to shed the drift of incremental updates.
    double sum = 0.0;
    double esum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        esum += heap.top().error;
        heap.pop();
    }
    return {sum, esum, count};
}

template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {}) {
    const std::array<double, 2> br{a, b};
    return integrate(f, std::span<const double>(br), opt);
}

/// Evenly subdivides [a, b] into `panels` pieces and merges with `extra`
/// break points that fall inside.
inline std::vector<double> make_breaks(double a, double b, int panels, std::span<const double> extra = {}) {
    std::vector<double> br;
    br.reserve(panels + 1 + extra.size());
    for (int i = 0; i <= panels; ++i) br.push_back(a + (b - a) * i / panels);
    br.back() = b;
    for (double e : extra)
        if (e > a && e < b) br.push_back(e);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    return br;
}

}  // namespace orlicz::quad
