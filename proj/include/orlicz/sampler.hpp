#pragma once

// Exact uniform sampling on B^n_{Psi/E} by rejection from mu_lambda^n.
// The density ratio uniform / mu_lambda^n is proportional to
// e^{lambda S} 1{S <= E}, S = sum Psi(x_i), and is bounded by e^{lambda E}.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <sstream>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/parallel.hpp"
#include "orlicz/tilt.hpp"
#include "orlicz/volume.hpp"

namespace orlicz {

struct SampleBatch {
    std::size_t dim = 0;
    std::vector<double> points;  // row-major, count x dim
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    std::int64_t proposals_used = 0;
    double acceptance_rate = 0.0;
    double lambda = 0.0;  // tilt actually used for proposals

    [[nodiscard]] std::size_t count() const { return dim == 0 ? 0 : points.size() / dim; }
    [[nodiscard]] std::span<const double> row(std::size_t i) const { return {points.data() + i * dim, dim}; }
};

/// e^{-alpha^2/2} / (lambda sigma sqrt(2 pi n)), no validity check.
inline double predicted_rate(const BallSpec& spec, const TiltedMeasure& tm) {
    const double a = spec.alpha(tm);
    const double n = static_cast<double>(spec.n);
    return std::exp(-0.5 * a * a) / (tm.lambda * tm.sigma() * std::sqrt(2.0 * std::numbers::pi * n));
}

/// Leading-order acceptance rate of sample_uniform_ball. Requires
/// n >= 16 lambda^2 sigma^2.
inline double predict_acceptance(const BallSpec& spec, const TiltedMeasure& tm) {
    check_spec(spec);
    const double floor = 16.0 * tm.lambda * tm.lambda * tm.sigma2;
    if (static_cast<double>(spec.n) < floor) {
        std::ostringstream msg;
        msg << "predict_acceptance: n = " << spec.n << " is below 16 lambda^2 sigma^2 = " << floor;
        throw DomainError(msg.str());
    }
    return predicted_rate(spec, tm);
}

inline constexpr double kBudgetFactor = 1e4;

/// Draws `count` i.i.d. uniform points. Proposals use lambda solved for
/// E/n (alpha = 0) unless `tm` already sits there; the uniform law does not
/// depend on lambda. Gives up after budget_factor * count / rate proposals.
inline SampleBatch sample_uniform_ball(const BallSpec& spec, const TiltedMeasure& tm, std::uint64_t seed,
                                       std::size_t count, std::size_t workers = 1,
                                       double budget_factor = kBudgetFactor) {
    check_spec(spec);
    if (count == 0) throw DomainError("sample_uniform_ball: count must be positive");
    if (tm.psi.spec() != spec.psi.spec()) throw DomainError("tilted measure was built for a different Young function");
    const TiltedMeasure proposal =
        std::fabs(spec.alpha(tm)) <= 1e-6 ? tm : solve_lambda(spec.psi, spec.E / static_cast<double>(spec.n));
    const double rate = std::min(1.0, predicted_rate(spec, proposal));
    const auto dim = static_cast<std::size_t>(spec.n);
    const double lam = proposal.lambda;
    const double E = spec.E;

    struct Shard {
        std::vector<double> points;
        std::int64_t proposals = 0;
    };
    std::vector<Shard> shards(workers);
    run_sharded(workers, [&](std::size_t w) {
        auto rng = make_worker_rng(seed, w);
        auto& sh = shards[w];
        const std::size_t want = shard_size(count, workers, w);
        const double budget = budget_factor * static_cast<double>(want) / rate;
        sh.points.reserve(want * dim);
        std::vector<double> x(dim);
        std::size_t got = 0;
        while (got < want) {
            if (static_cast<double>(++sh.proposals) > budget) {
                std::ostringstream msg;
                msg << "proposal budget exceeded after " << sh.proposals << " proposals";
                throw BudgetExceeded(msg.str());
            }
            double s = 0.0;
            std::size_t i = 0;
            for (; i < dim; ++i) {
                x[i] = proposal.draw(rng);
                s += spec.psi(x[i]);
                if (s > E) break;
            }
            if (i < dim) continue;
            if (std::log(uniform01(rng)) > lam * (s - E)) continue;
            sh.points.insert(sh.points.end(), x.begin(), x.end());
            ++got;
        }
    });

    SampleBatch out;
    out.dim = dim;
    out.seed = seed;
    out.workers = workers;
    out.lambda = lam;
    out.points.reserve(count * dim);
    for (auto& sh : shards) {
        out.points.insert(out.points.end(), sh.points.begin(), sh.points.end());
        out.proposals_used += sh.proposals;
    }
    out.acceptance_rate = static_cast<double>(count) / static_cast<double>(out.proposals_used);
    return out;
}

}  // namespace orlicz
