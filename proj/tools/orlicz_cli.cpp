// orlicz: command-line front end. Every command prints one report (JSON by
// default). Exit status: 0 success, 2 experiment failure, 1 usage or
// numeric error.

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orlicz/orlicz.hpp"

namespace {

using namespace orlicz;

struct RunConfig {
    std::string command;
    std::string psi_spec;
    std::int64_t n = 0;
    std::optional<double> E, m, lambda, alpha;
    std::string method = "asymptotic";
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    std::string output = "json";
    int k = 1;
    double ell = 0.5;
    std::vector<std::int64_t> n_list;
    double eps = 0.2;
    std::vector<std::string> directions;
    std::optional<double> grid_step;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

struct Level {
    TiltedMeasure tm;
    double E;
};

/// Exactly one of {E}, {m}, {lambda, alpha}.
Level resolve_level(const RunConfig& c, const YoungFunction& psi) {
    const int groups = (c.E ? 1 : 0) + (c.m ? 1 : 0) + ((c.lambda || c.alpha) ? 1 : 0);
    if (groups != 1) throw UsageError("give exactly one of --E, --m, or --lambda with --alpha");
    if (c.n < 1) throw UsageError("--n must be a positive integer");
    const double n = static_cast<double>(c.n);
    if (c.E) return {solve_lambda(psi, *c.E / n), *c.E};
    if (c.m) return {solve_lambda(psi, *c.m), *c.m * n};
    if (!c.lambda || !c.alpha) throw UsageError("--lambda and --alpha must be given together");
    auto tm = build_tilted(psi, *c.lambda);
    const double E = tm.m * n + *c.alpha * tm.sigma() * std::sqrt(n);
    return {std::move(tm), E};
}

std::vector<double> parse_direction(const std::string& text, std::int64_t n) {
    const auto dim = static_cast<std::size_t>(n);
    std::vector<double> a(dim, 0.0);
    auto num = [](std::string_view s) {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
            throw UsageError("bad number '" + std::string(s) + "' in --direction");
        return v;
    };
    if (text.size() > 1 && text[0] == 'e' && text.find(',') == std::string::npos) {
        // e<i>[:scale], 1-based
        const auto colon = text.find(':');
        const auto idx = static_cast<std::int64_t>(num(std::string_view(text).substr(1, colon - 1)));
        if (idx < 1 || idx > n) throw UsageError("direction index out of range: " + text);
        a[static_cast<std::size_t>(idx - 1)] = colon == std::string::npos ? 1.0 : num(std::string_view(text).substr(colon + 1));
        return a;
    }
    if (text.rfind("const:", 0) == 0) {
        std::fill(a.begin(), a.end(), num(std::string_view(text).substr(6)));
        return a;
    }
    std::vector<double> v;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(',', start);
        v.push_back(num(std::string_view(text).substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (v.size() != dim) throw UsageError("direction '" + text + "' does not have n entries");
    return v;
}

ExperimentReport base_report(const RunConfig& c, const std::string& name) {
    ExperimentReport r;
    r.name = name;
    r.seed = c.seed;
    r.workers = c.workers;
    r.pass = true;
    return r;
}

ExperimentReport cmd_volume(const RunConfig& c) {
    const auto psi = parse_young(c.psi_spec);
    const auto method = parse_volume_method(c.method);
    if (!method) throw UsageError("--method must be asymptotic, mc, convolution or closed_form");
    auto r = base_report(c, "volume");
    const auto lvl = resolve_level(c, psi);
    const BallSpec spec{psi, c.n, lvl.E};
    LogVolume lv;
    switch (*method) {
        case VolumeMethod::asymptotic: lv = log_volume_asymptotic(spec, lvl.tm); break;
        case VolumeMethod::closed_form: lv = log_volume_closed_form(spec); break;
        case VolumeMethod::convolution:
            lv = c.grid_step ? log_volume_convolution(spec, *c.grid_step) : log_volume_convolution(spec);
            break;
        case VolumeMethod::mc:
            lv = log_volume_mc(spec, lvl.tm, c.seed, c.samples ? c.samples : 100000, c.workers);
            r.sample_size = c.samples ? c.samples : 100000;
            break;
    }
    r.params = {{"psi", psi.spec()}, {"n", c.n}, {"E", lvl.E}, {"method", std::string(to_string(*method))}};
    r.statistics["log_volume"] = lv.log_value;
    if (std::fabs(lv.log_value) < 700.0) r.statistics["volume"] = std::exp(lv.log_value);
    r.statistics["lambda"] = lvl.tm.lambda;
    r.statistics["alpha"] = spec.alpha(lvl.tm);
    const auto& d = lv.diagnostics;
    if (std::isfinite(d.correction_order)) r.statistics["correction_order"] = d.correction_order;
    if (std::isfinite(d.std_error)) r.statistics["std_error"] = d.std_error;
    if (std::isfinite(d.grid_step)) r.statistics["grid_step"] = d.grid_step;
    if (std::isfinite(d.richardson_delta)) r.statistics["richardson_delta"] = d.richardson_delta;
    if (*method == VolumeMethod::mc) r.statistics["accepted"] = d.accepted;
    return r;
}

ExperimentReport cmd_solve_lambda(const RunConfig& c) {
    const auto psi = parse_young(c.psi_spec);
    double target = 0.0;
    if (c.m && !c.E) {
        target = *c.m;
    } else if (c.E && !c.m && c.n >= 1) {
        target = *c.E / static_cast<double>(c.n);
    } else {
        throw UsageError("solve-lambda needs --m, or --E with --n");
    }
    const auto tm = solve_lambda(psi, target);
    auto r = base_report(c, "solve_lambda");
    r.params = {{"psi", psi.spec()}, {"m", target}};
    r.statistics = {{"lambda", tm.lambda}, {"logZ", tm.logZ}, {"m", tm.m}, {"sigma2", tm.sigma2}, {"nu3", tm.nu3}};
    return r;
}

int cmd_sample(const RunConfig& c) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto psi = parse_young(c.psi_spec);
    const auto lvl = resolve_level(c, psi);
    const BallSpec spec{psi, c.n, lvl.E};
    const std::size_t count = c.samples ? c.samples : 1000;
    const auto batch = sample_uniform_ball(spec, lvl.tm, c.seed, count, c.workers);
    if (c.output == "csv") {
        std::string out;
        for (std::size_t i = 0; i < batch.dim; ++i) out += (i ? ",x" : "x") + std::to_string(i + 1);
        out += "\r\n";
        for (std::size_t j = 0; j < batch.count(); ++j) {
            const auto row = batch.row(j);
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out += ',';
                out += fmt(row[i]);
            }
            out += "\r\n";
        }
        std::cout << out;
        return 0;
    }
    auto r = base_report(c, "sample");
    r.sample_size = count;
    r.params = {{"psi", psi.spec()}, {"n", c.n}, {"E", lvl.E}};
    r.statistics["lambda"] = batch.lambda;
    r.statistics["proposals_used"] = batch.proposals_used;
    r.statistics["acceptance_rate"] = batch.acceptance_rate;
    Json pts = Json::array();
    for (std::size_t j = 0; j < batch.count(); ++j) {
        const auto row = batch.row(j);
        pts.push_back(std::vector<double>(row.begin(), row.end()));
    }
    r.statistics["points"] = std::move(pts);
    r.duration_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::cout << to_json(r).dump(2) << "\n";
    return 0;
}

ExperimentReport cmd_boundary(const RunConfig& c) {
    const auto psi = parse_young(c.psi_spec);
    const auto lvl = resolve_level(c, psi);
    return boundary_exp_test({psi, c.n, lvl.E}, lvl.tm, c.seed, c.samples ? c.samples : 100000, c.workers);
}

ExperimentReport cmd_marginals(const RunConfig& c) {
    const auto psi = parse_young(c.psi_spec);
    const auto lvl = resolve_level(c, psi);
    const double alpha = BallSpec{psi, c.n, lvl.E}.alpha(lvl.tm);
    return marginal_tv_experiment(psi, lvl.tm.lambda, c.n, c.k, c.seed, c.samples, c.workers, alpha);
}

ExperimentReport cmd_level(const RunConfig& c) {
    const auto v = parse_young(c.psi_spec);
    if (c.n < 1) throw UsageError("--n must be a positive integer");
    const auto li = level_interval(v, c.n, c.eps);
    auto r = base_report(c, "level");
    r.params = {{"psi", v.spec()}, {"n", c.n}, {"eps", c.eps}};
    r.statistics = {{"m1", li.m1}, {"sigma1", li.sigma1}, {"lo", li.lo}, {"hi", li.hi},
                    {"nguyen_wang_variance", nguyen_wang_check(v)}};
    if (c.E) {
        const auto mem = level_membership(v, c.n, *c.E);
        r.params["E"] = *c.E;
        r.statistics["member"] = mem.member;
        r.statistics["margin"] = mem.margin;
        r.statistics["lambda"] = mem.lambda;
    }
    return r;
}

ExperimentReport cmd_clt(const RunConfig& c) {
    const auto psi = parse_young(c.psi_spec);
    if (c.E || (c.lambda && c.m)) throw UsageError("clt takes --lambda or --m, not both, and no --E");
    const auto tm = c.m ? solve_lambda(psi, *c.m) : build_tilted(psi, c.lambda.value_or(1.0));
    auto n_list = c.n_list;
    if (n_list.empty()) n_list = {100, 1000, 10000};
    return clt_exp_experiment(tm, c.ell, c.alpha.value_or(0.0), n_list, c.seed, c.samples ? c.samples : 20000,
                              c.workers);
}

ExperimentReport cmd_psi2(const RunConfig& c) {
    const auto psi = parse_young(c.psi_spec);
    const auto lvl = resolve_level(c, psi);
    std::vector<std::vector<double>> dirs;
    for (const auto& d : c.directions) dirs.push_back(parse_direction(d, c.n));
    if (dirs.empty()) dirs = {parse_direction("e1", c.n)};
    return psi2_laplace_check({psi, c.n, lvl.E}, lvl.tm, c.seed, dirs, c.samples ? c.samples : 100000, c.workers);
}

ExperimentReport cmd_audit(const RunConfig& c) {
    auto r = base_report(c, "audit");
    r.params = {{"psi", c.psi_spec}};
    std::optional<YoungFunction> parsed;
    try {
        parsed = parse_young(c.psi_spec);
    } catch (const NotYoung& e) {
        r.flags.push_back(e.what());
        r.statistics["witness"] = e.witness;
        r.pass = false;
        return r;
    }
    const auto& psi = *parsed;
    r.statistics["even"] = psi.is_even();
    if (psi.is_even()) r.statistics["psi2"] = psi2_test(psi).passed;
    const double lam = c.lambda.value_or(1.0);
    const auto tm = build_tilted(psi, lam);
    const auto fine = tilt_moments(psi, lam, 2);
    const auto& cdf = tm.cdf_table->cdf();
    bool increasing = true;
    for (std::size_t i = 1; i < cdf.size(); ++i) increasing = increasing && cdf[i] > cdf[i - 1];
    const double m_shift = std::fabs(fine.m - tm.m);
    r.params["lambda"] = lam;
    r.statistics["logZ"] = tm.logZ;
    r.statistics["m"] = tm.m;
    r.statistics["sigma2"] = tm.sigma2;
    r.statistics["nu3"] = tm.nu3;
    r.statistics["m_refinement_shift"] = m_shift;
    r.statistics["cdf_nodes"] = cdf.size();
    r.statistics["cdf_increasing"] = increasing;
    r.thresholds["m_refinement_shift_max"] = 1e-9 * (1.0 + tm.m);
    r.thresholds["nu3_min"] = 1.0;
    r.thresholds["cdf_endpoint_tol"] = 1e-10;
    r.pass = tm.sigma2 > 0.0 && tm.nu3 >= 1.0 && increasing && m_shift <= 1e-9 * (1.0 + tm.m) &&
             std::fabs(cdf.front()) <= 1e-10 && std::fabs(cdf.back() - 1.0) <= 1e-10;
    return r;
}

/// Flattens statistics into name,key,value rows.
void write_report_csv(const ExperimentReport& r) {
    std::string out = "name,key,value\r\n";
    const auto flat = to_json(r).flatten();
    for (const auto& [key, value] : flat.items()) {
        if (value.is_null()) continue;  // empty object or array
        std::string v = value.is_string() ? value.get<std::string>() : value.dump();
        if (v.find_first_of(",\"\r\n") != std::string::npos) {
            std::string q = "\"";
            for (char ch : v) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            v = q + "\"";
        }
        out += r.name + "," + key + "," + v + "\r\n";
    }
    std::cout << out;
}

void add_common(CLI::App* sub, RunConfig& c) {
    sub->add_option("--psi", c.psi_spec, "Young function spec")->required();
    sub->add_option("--n", c.n, "dimension");
    sub->add_option("--E", c.E, "level E");
    sub->add_option("--m", c.m, "per-coordinate level E/n");
    sub->add_option("--lambda", c.lambda, "tilt parameter");
    sub->add_option("--alpha", c.alpha, "standardized level offset");
    sub->add_option("--samples", c.samples, "Monte Carlo sample count");
    sub->add_option("--seed", c.seed, "random seed (default 0)");
    sub->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--output", c.output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orlicz ball volumes, sampling and limit-law experiments"};
    app.require_subcommand(1);
    RunConfig c;

    auto* volume = app.add_subcommand("volume", "log-volume of an Orlicz ball");
    add_common(volume, c);
    volume->add_option("--method", c.method, "asymptotic | mc | convolution | closed_form");
    volume->add_option("--grid-step", c.grid_step, "convolution grid step");

    auto* solve = app.add_subcommand("solve-lambda", "tilt with a given mean of Psi");
    add_common(solve, c);

    auto* sample = app.add_subcommand("sample", "uniform points in the ball");
    add_common(sample, c);

    auto* boundary = app.add_subcommand("boundary", "boundary-distance KS test");
    add_common(boundary, c);

    auto* marginals = app.add_subcommand("marginals", "total variation of k-marginals");
    add_common(marginals, c);
    marginals->add_option("--k", c.k, "marginal dimension");

    auto* level = app.add_subcommand("level", "Level_n interval and membership");
    add_common(level, c);
    level->add_option("--eps", c.eps, "interval shrink factor in (0,1)");

    auto* clt = app.add_subcommand("clt", "tilted CLT expectation against its Gaussian limit");
    add_common(clt, c);
    clt->add_option("--ell", c.ell, "tilt strength ell");
    clt->add_option("--n-list", c.n_list, "dimensions")->delimiter(',');

    auto* psi2 = app.add_subcommand("psi2", "psi_2 Laplace chain");
    add_common(psi2, c);
    psi2->add_option("--direction", c.directions, "a1,...,an | e<i>[:s] | const:<v> (repeatable)");

    auto* audit = app.add_subcommand("audit", "Young audit and tilted-measure consistency");
    add_common(audit, c);

    const auto usage = [&](const std::string& msg) {
        std::cerr << "error: " << msg << "\n\nPsi grammar: " << kYoungGrammar << "\n\n" << app.help();
        return 1;
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return usage(e.what());
    }
    c.command = app.get_subcommands().front()->get_name();

    const auto start = std::chrono::steady_clock::now();
    try {
        ExperimentReport r;
        if (c.command == "volume") r = cmd_volume(c);
        else if (c.command == "solve-lambda") r = cmd_solve_lambda(c);
        else if (c.command == "sample") return cmd_sample(c);
        else if (c.command == "boundary") r = cmd_boundary(c);
        else if (c.command == "marginals") r = cmd_marginals(c);
        else if (c.command == "level") r = cmd_level(c);
        else if (c.command == "clt") r = cmd_clt(c);
        else if (c.command == "psi2") r = cmd_psi2(c);
        else r = cmd_audit(c);
        if (r.duration_ms == 0.0)
            r.duration_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (c.output == "csv")
            write_report_csv(r);
        else
            std::cout << to_json(r).dump(2) << "\n";
        return r.pass ? 0 : 2;
    } catch (const UsageError& e) {
        return usage(e.what());
    } catch (const ParseError& e) {
        return usage(e.what());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
