#include "volterra/experiment.hpp"

#include "volterra/core.hpp"
#include "volterra/envelope.hpp"
#include "volterra/error.hpp"
#include "volterra/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace volterra::lab {

namespace A = asymptotics;
namespace S = stochastic;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

json encode(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double decode(const json& v) {
    if (v.is_number()) return v.get<double>();
    const auto s = v.get<std::string>();
    if (s == "inf") return inf;
    if (s == "-inf") return -inf;
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw InputError("report: cannot decode number '" + s + "'");
}

std::string key(const std::string& prefix, double v) {
    std::ostringstream os;
    os << prefix << "@" << v;
    return os.str();
}

void check_lt(Report& r, const std::string& name, double value, double limit) {
    r.checks[name] = Check{value < limit, value, limit, "<"};
}

void check_true(Report& r, const std::string& name, bool ok) { r.checks[name] = Check{ok, ok ? 1.0 : 0.0, 1.0, "=="}; }

// Forcing H(0..N) with H(0) = 0.
Trajectory forcing_plain(const ExperimentConfig& cfg) {
    if (cfg.forcing_values) {
        std::vector<double> v(cfg.horizon + 1, 0.0);
        std::copy_n(cfg.forcing_values->begin(), cfg.horizon, v.begin() + 1);
        return Trajectory(0, std::move(v));
    }
    return cfg.forcing->generate(cfg.horizon);
}

LogTrajectory forcing_log(const ExperimentConfig& cfg) {
    if (cfg.forcing_values) return LogTrajectory::from_trajectory(forcing_plain(cfg));
    return cfg.forcing->generate_log(cfg.horizon);
}

LogTrajectory solve_log(const ExperimentConfig& cfg, const LogTrajectory& H) {
    return solve_linear_log(cfg.kernel, H, cfg.xi, cfg.horizon);
}

void add_log_series(Report& r, const std::string& name, const LogTrajectory& x) {
    try {
        r.series[name] = Series::from(x.to_trajectory());
    } catch (const OverflowError&) {
        Series s;
        for (std::size_t n = x.start(); n < x.end_index(); ++n) {
            s.n.push_back(n);
            s.value.push_back(x[n].log_abs);
        }
        r.series["log_abs_" + name] = std::move(s);
    }
}

// ---------------------------------------------------------------- modes

void run_solve(const ExperimentConfig& cfg, Report& r) {
    const std::size_t N = cfg.horizon;
    if (cfg.log_domain) {
        const LogTrajectory H = forcing_log(cfg);
        const LogTrajectory x = solve_log(cfg, H);
        add_log_series(r, "x", x);
        add_log_series(r, "H", H);
        r.statistics["log_abs_x_final"] = x[N].log_abs;
        r.statistics["sign_x_final"] = x[N].sign;
        return;
    }
    const Trajectory H = forcing_plain(cfg);
    const Trajectory x = cfg.nonlinearity ? solve_nonlinear(cfg.kernel, *cfg.nonlinearity, H, cfg.xi, N)
                                          : solve_linear(cfg.kernel, H, cfg.xi, N);
    r.series["x"] = Series::from(x);
    r.series["H"] = Series::from(H);
    r.statistics["x_final"] = x[N];
}

void run_spectrum(const ExperimentConfig& cfg, Report& r) {
    const auto rep = spectral::spectral_report(cfg.kernel, cfg.lambda_grid, cfg.horizon);
    r.verdicts["summability"] = spectral::to_string(rep.verdict);
    r.verdicts["summable"] = rep.summable ? "true" : "false";
    r.statistics["max_modulus"] = rep.max_modulus;
    r.statistics["tail_mass"] = rep.tail_mass;
    r.statistics["root_count"] = static_cast<double>(rep.roots.size());
    r.statistics["max_backward_error"] = rep.max_backward_error;
    check_lt(r, "root_backward_error", rep.max_backward_error, cfg.tol.backward_error);
    Series mod, re, im;
    for (std::size_t i = 0; i < rep.roots.size(); ++i) {
        mod.n.push_back(i);
        re.n.push_back(i);
        im.n.push_back(i);
        mod.value.push_back(std::abs(rep.roots[i]));
        re.value.push_back(rep.roots[i].real());
        im.value.push_back(rep.roots[i].imag());
    }
    r.series["root_modulus"] = std::move(mod);
    r.series["root_real"] = std::move(re);
    r.series["root_imag"] = std::move(im);
    for (const auto& p : rep.lambda_points) {
        r.statistics[key("kappa", p.lambda)] = p.kappa;
        r.statistics[key("L", p.lambda)] = p.singular ? inf : p.L;
        r.statistics[key("rho_star", p.lambda)] = p.rho_star;
    }
}

void run_classify(const ExperimentConfig& cfg, Report& r) {
    const auto c = S::classify_tail(*cfg.tail);
    r.verdicts["verdict"] = S::to_string(c.verdict);
    r.verdicts["rv_case"] = S::to_string(c.rv_case);
    r.statistics["alpha"] = c.alpha;
    r.statistics["L"] = c.L;
    r.statistics["series_slope"] = c.ssv.series_slope;
    r.statistics["rv_slope_near"] = c.rv.slope_near;
    r.statistics["rv_slope_far"] = c.rv.slope_far;
    for (std::size_t i = 0; i < c.ssv.near_deviation.size(); ++i)
        r.statistics["ssv_near_deviation_" + std::to_string(i)] = c.ssv.near_deviation[i];
    for (std::size_t i = 0; i < c.ssv.far_deviation.size(); ++i)
        r.statistics["ssv_far_deviation_" + std::to_string(i)] = c.ssv.far_deviation[i];
    if (cfg.expected_verdict) check_true(r, "verdict", S::to_string(c.verdict) == *cfg.expected_verdict);
    if (cfg.expected_case) check_true(r, "rv_case", S::to_string(c.rv_case) == *cfg.expected_case);

    Series env;
    for (std::size_t n = 2; n <= cfg.horizon; ++n) {
        env.n.push_back(n);
        env.value.push_back(cfg.tail->upper_quantile(1.0 / static_cast<double>(n)));
    }
    r.series["envelope"] = std::move(env);
}

void run_growth2(const ExperimentConfig& cfg, Report& r) {
    const auto g = A::verify_growth2(cfg.kernel, forcing_log(cfg), cfg.xi);
    r.statistics["L_empirical"] = g.L_empirical;
    r.statistics["L_theory"] = g.L_theory;
    r.statistics["residual"] = g.residual;
    r.statistics["lambda_hat"] = g.lambda.lambda_hat;
    r.statistics["lambda_iqr"] = g.lambda.iqr;
    r.verdicts["lambda_converged"] = g.lambda.converged ? "true" : "false";
    r.verdicts["summable"] = g.summable ? "true" : "false";
    check_lt(r, "multiplier_residual", g.residual, cfg.tol.growth2);
    check_true(r, "kernel_summable", g.summable);
    r.series["x_over_H"] = Series::from(g.x_over_H);
}

void run_growth3(const ExperimentConfig& cfg, Report& r) {
    const auto scale = cfg.scaling->build(cfg.horizon);
    const auto g = A::verify_growth3(cfg.kernel, forcing_log(cfg), cfg.xi, scale);
    r.statistics["x_residual"] = g.x_side.residual_sup;
    r.statistics["H_residual"] = g.H_side.residual_sup;
    r.statistics["lambda"] = scale.lambda;
    check_lt(r, "x_representation", g.x_side.residual_sup, cfg.tol.growth3);
    check_lt(r, "H_recovery", g.H_side.residual_sup, cfg.tol.growth3);
    r.series["x_over_a"] = Series::from(g.x_side.g_over_a);
    r.series["x_over_a_predicted"] = Series::from(g.x_side.predicted);
    r.series["H_over_a"] = Series::from(g.H_side.g_over_a);
    r.series["H_over_a_predicted"] = Series::from(g.H_side.predicted);
}

void run_periodic(const ExperimentConfig& cfg, Report& r) {
    const std::size_t N = cfg.horizon;
    const auto scale = cfg.scaling->build(N);
    const LogTrajectory H = forcing_log(cfg);
    const LogTrajectory x = solve_log(cfg, H);
    const Trajectory x_over_a = scale.ratio(x).slice(1, N + 1);
    const Trajectory H_over_a = scale.ratio(H).slice(1, N + 1);

    const auto ex_H = A::extract_almost_periodic(H_over_a, cfg.period_hint);
    const auto ex_x = A::extract_almost_periodic(x_over_a, cfg.period_hint);
    const auto pi_x = A::periodic_image(resolvent(cfg.kernel, N), scale.lambda, ex_H.pi_values);
    const std::size_t p = pi_x.size();

    std::vector<double> predicted(N);
    for (std::size_t n = 1; n <= N; ++n) predicted[n - 1] = pi_x[n % p];
    const Trajectory pred(1, std::move(predicted));
    const double residual = A::tail_sup_difference(x_over_a, pred);

    r.statistics["period_x"] = static_cast<double>(ex_x.period);
    r.statistics["period_H"] = static_cast<double>(ex_H.period);
    r.statistics["peak_ratio_x"] = ex_x.peak_ratio;
    r.statistics["representation_residual"] = residual;
    r.statistics["extraction_residual_x"] = ex_x.residual_tail_sup;
    r.verdicts["periodic_x"] = ex_x.periodic ? "true" : "false";
    check_true(r, "x_periodic", ex_x.periodic);
    if (cfg.expected_period) {
        r.checks["period"] = Check{ex_x.period == *cfg.expected_period, static_cast<double>(ex_x.period),
                                   static_cast<double>(*cfg.expected_period), "=="};
    }
    check_lt(r, "representation_residual", residual, cfg.tol.periodic);
    r.series["x_over_a"] = Series::from(x_over_a);
    r.series["x_over_a_predicted"] = Series::from(pred);
}

double factor_mean(const ExperimentConfig& cfg) {
    if (cfg.forcing_values || !cfg.forcing) throw ConfigError("$.target", "no default target for this forcing");
    const auto& f = *cfg.forcing;
    switch (f.kind()) {
    case S::ForcingGenerator::Kind::catalogue: return 1.0;
    case S::ForcingGenerator::Kind::modulated: {
        if (!f.pattern().empty()) {
            double s = 0.0;
            for (double v : f.pattern()) s += v;
            return s / static_cast<double>(f.pattern().size());
        }
        if (!f.noise()->symmetric())
            throw ConfigError("$.target", "no default target for an asymmetric modulation factor");
        return f.factor_offset();
    }
    default: throw ConfigError("$.target", "no default target for " + f.kind_name() + " forcing");
    }
}

S::EnsembleSystem ensemble_system(const ExperimentConfig& cfg) {
    S::EnsembleSystem sys;
    sys.kernel = cfg.kernel;
    if (!cfg.forcing) throw ConfigError("$.forcing", "ensembles need a generated forcing");
    sys.forcing = cfg.forcing->with_seed(cfg.seed);
    sys.xi = cfg.xi;
    sys.horizon = cfg.horizon;
    sys.log_domain = cfg.log_domain;
    if (cfg.scaling) sys.scale = cfg.scaling->build(cfg.horizon);
    sys.phi = cfg.phi;
    if (cfg.ensemble.statistic) sys.statistic = *cfg.ensemble.statistic;
    sys.band_lo = cfg.ensemble.band_lo;
    sys.band_hi = cfg.ensemble.band_hi;
    sys.threads = cfg.ensemble.threads;
    sys.limsup = cfg.limsup;
    return sys;
}

void report_ensemble(const ExperimentConfig& cfg, const S::EnsembleResult& res, Report& r) {
    r.statistics["paths"] = static_cast<double>(res.paths.size());
    r.statistics["failures"] = static_cast<double>(res.failures);
    r.statistics["median"] = res.median;
    r.statistics["pass_fraction"] = res.pass_fraction;
    r.statistics["band_lo"] = cfg.ensemble.band_lo;
    r.statistics["band_hi"] = cfg.ensemble.band_hi;
    r.checks["pass_fraction"] = Check{res.pass_fraction >= cfg.ensemble.required_fraction, res.pass_fraction,
                                      cfg.ensemble.required_fraction, ">="};
    if (cfg.ensemble.median_band) {
        const auto [lo, hi] = *cfg.ensemble.median_band;
        r.checks["median_in_band"] = Check{res.median >= lo && res.median <= hi && !res.values.empty(), res.median,
                                           hi, "in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]"};
    }
    Series by_path;
    for (const auto& p : res.paths) {
        if (!p.ok) {
            r.verdicts["path_" + std::to_string(p.path) + "_error"] = p.error;
            continue;
        }
        by_path.n.push_back(p.path);
        by_path.value.push_back(p.value);
    }
    r.series["statistic_by_path"] = std::move(by_path);
}

void run_ergodic(const ExperimentConfig& cfg, Report& r) {
    const auto scale = cfg.scaling->build(cfg.horizon);
    const double L = spectral::multiplier_L(cfg.kernel, scale.lambda).value;
    const double target = cfg.target ? *cfg.target : L * factor_mean(cfg);
    ExperimentConfig local = cfg;
    local.ensemble.statistic = S::Statistic::cesaro_limit;
    local.ensemble.band_lo = target - cfg.tol.ergodic;
    local.ensemble.band_hi = target + cfg.tol.ergodic;
    const auto res = S::ensemble_verify(ensemble_system(local), cfg.ensemble.paths);
    report_ensemble(local, res, r);
    r.statistics["target"] = target;
    r.statistics["multiplier"] = L;
    r.series["cesaro_by_path"] = r.series["statistic_by_path"];
    r.series.erase("statistic_by_path");

    // Running average for the first path.
    const ExperimentConfig& c = cfg;
    const LogTrajectory x = solve_log(c, forcing_log(c));
    r.series["time_average_x_over_a"] = Series::from(A::time_average(scale.ratio(x).slice(1, c.horizon + 1)));
}

void run_fluct(const ExperimentConfig& cfg, Report& r) {
    const std::size_t N = cfg.horizon;
    const auto scale = cfg.scaling->build(N);
    const Trajectory H = forcing_plain(cfg);
    const Trajectory x = solve_linear(cfg.kernel, H, cfg.xi, N);
    const auto f = A::fluctuation_bounds(cfg.kernel, x, H, scale, cfg.tol.fluct_slack, cfg.limsup);
    const auto conv = A::convolution_bound(cfg.kernel, H, scale, cfg.tol.fluct_slack, cfg.limsup);
    r.statistics["limsup_x"] = f.x.value;
    r.statistics["limsup_x_observed"] = f.x.observed;
    r.statistics["limsup_H"] = f.H.value;
    r.statistics["limsup_H_observed"] = f.H.observed;
    r.statistics["r_l1"] = f.r_l1;
    r.statistics["k_l1"] = f.k_l1;
    r.statistics["convolution_lhs"] = conv.lhs;
    r.statistics["convolution_bound"] = conv.bound;
    r.verdicts["class_x"] = A::to_string(f.x.classification);
    r.verdicts["class_H"] = A::to_string(f.H.classification);
    check_true(r, "upper_x", f.upper_x_holds);
    check_true(r, "upper_H", f.upper_H_holds);
    check_true(r, "classes_agree", f.classes_agree);
    check_true(r, "convolution", conv.holds);
    if (cfg.expected_class) check_true(r, "expected_class", A::to_string(f.x.classification) == *cfg.expected_class);
    r.series["x_over_a"] = Series::from(scale.ratio(x.slice(1, N + 1)));
    r.series["H_over_a"] = Series::from(scale.ratio(H.slice(1, N + 1)));
}

void run_phi(const ExperimentConfig& cfg, Report& r) {
    const std::size_t N = cfg.horizon;
    const Trajectory H = forcing_plain(cfg);
    const Trajectory x = solve_linear(cfg.kernel, H, cfg.xi, N);
    const auto b = A::phi_average_bounds(cfg.kernel, x, H, cfg.phi);
    r.statistics["lhs"] = b.lhs;
    r.statistics["rhs"] = b.rhs;
    r.statistics["dual_lhs"] = b.dual_lhs;
    r.statistics["dual_rhs"] = b.dual_rhs;
    r.statistics["log_lhs"] = b.log_lhs;
    r.statistics["log_rhs"] = b.log_rhs;
    r.verdicts["log_domain"] = b.log_domain ? "true" : "false";
    r.verdicts["phi_o_regularly_varying"] = cfg.phi.o_regularly_varying() ? "true" : "false";
    check_true(r, "phi_bound", b.holds);
    check_true(r, "phi_dual_bound", b.dual_holds);
    Series avg;
    double acc = 0.0;
    for (std::size_t n = 1; n <= N; ++n) {
        acc += cfg.phi(std::abs(x[n]));
        avg.n.push_back(n);
        avg.value.push_back(acc / static_cast<double>(n));
    }
    r.statistics["time_average"] = avg.value.back();
    r.series["phi_time_average"] = std::move(avg);
}

void run_envelope(const ExperimentConfig& cfg, Report& r) {
    const std::size_t N = cfg.horizon;
    const auto scale = cfg.scaling->build(N);
    const Trajectory a = scale.a.to_trajectory();
    const auto rep = S::envelope_sums(*cfg.tail, a.slice(std::max<std::size_t>(a.start(), 1), N + 1), cfg.K_grid, N);
    for (const auto& row : rep.rows) {
        r.statistics[key("slope", row.K)] = row.fit.slope;
        r.statistics[key("partial_sum", row.K)] = row.total;
        r.verdicts[key("K", row.K)] = S::to_string(row.fit.verdict);
        Series s;
        for (const auto& [n, v] : row.checkpoints) {
            s.n.push_back(n);
            s.value.push_back(v);
        }
        r.series[key("partial_sums_K", row.K)] = std::move(s);
    }
    r.verdicts["bracketed"] = rep.bracketed ? "true" : "false";
    if (rep.bracketed) {
        r.statistics["bracket_lo"] = rep.bracket_lo;
        r.statistics["bracket_hi"] = rep.bracket_hi;
        r.statistics["crossing"] = *rep.crossing;
    }
    if (cfg.expected_crossing) {
        const double c = *cfg.expected_crossing;
        check_true(r, "brackets_expected_crossing", rep.bracketed && rep.bracket_lo <= c && c <= rep.bracket_hi);
    }
}

void run_ensemble(const ExperimentConfig& cfg, Report& r) {
    const auto res = S::ensemble_verify(ensemble_system(cfg), cfg.ensemble.paths);
    r.verdicts["statistic"] = S::to_string(*cfg.ensemble.statistic);
    report_ensemble(cfg, res, r);
}

} // namespace

// ---------------------------------------------------------------- nonlinear

Report verify_nonlinear(const ExperimentConfig& cfg) {
    if (!cfg.nonlinearity) throw ConfigError("$.nonlinearity", "verify-nonlinear needs a nonlinearity");
    if (!cfg.scaling) throw ConfigError("$.scaling", "verify-nonlinear needs a scaling sequence");
    Report r;
    r.mode = "verify-nonlinear";
    r.config = cfg.echo;
    const std::size_t N = cfg.horizon;
    const auto scale = cfg.scaling->build(N);
    const Trajectory H = forcing_plain(cfg);
    const Trajectory x = solve_nonlinear(cfg.kernel, *cfg.nonlinearity, H, cfg.xi, N);
    const Trajectory y = solve_linear(cfg.kernel, H, cfg.xi, N);
    const Trajectory x_over_a = scale.ratio(x);
    const Trajectory y_over_a = scale.ratio(y);

    const bool linearisable = cfg.nonlinearity->linear_at_infinity();
    r.verdicts["linearisation_applicable"] = linearisable ? "true" : "false";
    r.statistics["asymptotic_slope"] = cfg.nonlinearity->asymptotic_slope();

    const auto class_x = A::estimate_limsup(x.slice(1, N + 1), scale, cfg.limsup);
    const auto class_H = A::estimate_limsup(H.slice(1, N + 1), scale, cfg.limsup);
    r.verdicts["class_x"] = A::to_string(class_x.classification);
    r.verdicts["class_H"] = A::to_string(class_H.classification);
    r.statistics["limsup_x"] = class_x.value;
    r.statistics["limsup_H"] = class_H.value;
    check_true(r, "classes_agree", class_x.classification == class_H.classification);
    if (cfg.expected_class) check_true(r, "expected_class", A::to_string(class_x.classification) == *cfg.expected_class);

    if (linearisable) {
        const auto blocks = A::block_sup_differences(x_over_a.slice(1, N + 1), y_over_a.slice(1, N + 1), 3);
        bool decreasing = blocks.size() == 3;
        for (std::size_t i = 1; i < blocks.size(); ++i) decreasing = decreasing && (blocks[i] < blocks[i - 1] || blocks[i - 1] == 0.0);
        for (std::size_t i = 0; i < blocks.size(); ++i) r.statistics["block_max_" + std::to_string(i)] = blocks[i];
        check_true(r, "block_max_decreasing", decreasing);
        check_lt(r, "final_block_max", blocks.empty() ? inf : blocks.back(), cfg.tol.nonlinear);

        const Trajectory H_over_a = scale.ratio(H.slice(1, N + 1));
        const Trajectory predicted = A::predict_x_over_a(resolvent(cfg.kernel, N), scale.lambda, H_over_a);
        const double residual = A::tail_sup_difference(x_over_a.slice(1, N + 1), predicted);
        r.statistics["representation_residual"] = residual;
        check_lt(r, "representation_residual", residual, cfg.tol.nonlinear);
        r.series["x_over_a_predicted"] = Series::from(predicted);
    }
    Series diff;
    for (std::size_t n = 1; n <= N; ++n) {
        diff.n.push_back(n);
        diff.value.push_back(std::abs(x_over_a[n] - y_over_a[n]));
    }
    r.series["gap_over_a"] = std::move(diff);
    r.series["x"] = Series::from(x);
    r.series["y"] = Series::from(y);
    return r;
}

// ---------------------------------------------------------------- dispatch

Report run_experiment(const ExperimentConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    Report r;
    try {
        const std::string& m = cfg.mode;
        if (m == "verify-nonlinear") {
            r = verify_nonlinear(cfg);
        } else {
            r.mode = m;
            r.config = cfg.echo;
            if (m == "solve") run_solve(cfg, r);
            else if (m == "spectrum") run_spectrum(cfg, r);
            else if (m == "classify") run_classify(cfg, r);
            else if (m == "verify-growth2") run_growth2(cfg, r);
            else if (m == "verify-growth3") run_growth3(cfg, r);
            else if (m == "verify-periodic") run_periodic(cfg, r);
            else if (m == "verify-ergodic") run_ergodic(cfg, r);
            else if (m == "verify-fluct") run_fluct(cfg, r);
            else if (m == "verify-phi") run_phi(cfg, r);
            else if (m == "envelope") run_envelope(cfg, r);
            else if (m == "ensemble") run_ensemble(cfg, r);
            else throw ConfigError("$.mode", "unknown mode '" + m + "'");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const OverflowError& e) {
        throw OverflowError(cfg.mode + ": " + e.what(), e.index());
    } catch (const Error& e) {
        throw Error(cfg.mode + ": " + e.what());
    }
    r.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// ---------------------------------------------------------------- report

Series Series::from(const Trajectory& t) {
    Series s;
    for (std::size_t n = t.start(); n < t.end_index(); ++n) {
        s.n.push_back(n);
        s.value.push_back(t[n]);
    }
    return s;
}

bool Report::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& kv) { return kv.second.passed; });
}

json Report::to_json() const {
    json j;
    j["version"] = version;
    j["mode"] = mode;
    j["config"] = config;
    j["passed"] = passed();
    j["checks"] = json::object();
    for (const auto& [name, c] : checks)
        j["checks"][name] = {{"passed", c.passed}, {"value", encode(c.value)}, {"limit", encode(c.limit)},
                             {"relation", c.relation}};
    j["statistics"] = json::object();
    for (const auto& [name, v] : statistics) j["statistics"][name] = encode(v);
    j["verdicts"] = verdicts;
    j["series"] = series_files;
    j["wall_clock_seconds"] = wall_clock_seconds;
    return j;
}

Report Report::from_json(const json& j) {
    Report r;
    try {
        r.version = j.at("version").get<std::string>();
        r.mode = j.at("mode").get<std::string>();
        r.config = j.at("config");
        for (const auto& [name, c] : j.at("checks").items())
            r.checks[name] = Check{c.at("passed").get<bool>(), decode(c.at("value")), decode(c.at("limit")),
                                   c.at("relation").get<std::string>()};
        for (const auto& [name, v] : j.at("statistics").items()) r.statistics[name] = decode(v);
        r.verdicts = j.at("verdicts").get<std::map<std::string, std::string>>();
        r.series_files = j.at("series").get<std::map<std::string, std::string>>();
        r.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed report: ") + e.what());
    }
    return r;
}

void write_series_csv(const std::filesystem::path& path, const Series& series) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << "n,value\n";
    char buf[64];
    for (std::size_t i = 0; i < series.n.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", series.value[i]);
        out << series.n[i] << ',' << buf << '\n';
    }
}

std::filesystem::path write_outputs(Report& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& [name, s] : report.series) {
        const std::string file = name + ".csv";
        write_series_csv(dir / file, s);
        report.series_files[name] = file;
    }
    const auto path = dir / "report.json";
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << report.to_json().dump(2) << '\n';
    return path;
}

std::vector<std::string> catalogue_listing() {
    std::vector<std::string> lines{
        "modes:",
    };
    for (const auto& m : modes()) lines.push_back("  " + m);
    const std::vector<std::string> rest{
        "kernels ($.kernel.type):",
        "  zero                          k = 0",
        "  single       c                k = (c)",
        "  geometric    c ratio length   k(l) = c ratio^l, l < length",
        "  power_law    c p length       k(l) = c (l+1)^-p, l < length",
        "  explicit     coefficients     k(0..M-1)",
        "forcing ($.forcing.type):",
        "  explicit               values            H(1..N)",
        "  iid                    noise             H(n) = Y(n)",
        "  random_walk            drift noise       H(n) = drift n + sum Y(j)",
        "  geometric_random_walk  drift noise       log H(n) = drift n + sum Y(j)",
        "  catalogue              member params     H(n) = H_member(n)",
        "  modulated              base pattern | factor offset scale",
        "scaling ($.scaling.type):",
        "  catalogue      member params   a = H_member",
        "  sqrt_two_log                   a(n) = sqrt(2 log max(n,3))",
        "  explicit       values start lambda",
        "tails ($.tail.family, noise, factor):",
        "  normal sigma | symmetric_power alpha c_lower c_upper | weibull scale shape |",
        "  uniform half_width | custom_quantile probabilities values",
        "nonlinearities ($.nonlinearity.name): identity rational sqrt solow(delta, s)",
        "ensemble statistics: limsup_ratio log_growth_rate log_log_exponent cesaro_limit phi_average",
        "growth catalogue (member H1..H10):",
    };
    lines.insert(lines.end(), rest.begin(), rest.end());
    for (const auto& d : GrowthCatalogue::describe()) lines.push_back("  " + d);
    return lines;
}

} // namespace volterra::lab
