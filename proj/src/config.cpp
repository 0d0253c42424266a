#include "volterra/error.hpp"
#include "volterra/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace volterra::lab {

namespace {

template <typename T>
struct TypeName;
template <> struct TypeName<double> { static constexpr const char* value = "a number"; };
template <> struct TypeName<bool> { static constexpr const char* value = "a boolean"; };
template <> struct TypeName<std::string> { static constexpr const char* value = "a string"; };
template <> struct TypeName<std::uint64_t> { static constexpr const char* value = "a non-negative integer"; };
template <> struct TypeName<int> { static constexpr const char* value = "an integer"; };
template <> struct TypeName<std::vector<double>> { static constexpr const char* value = "an array of numbers"; };

template <typename T>
bool convertible(const json& v) {
    if constexpr (std::is_same_v<T, double>) return v.is_number();
    else if constexpr (std::is_same_v<T, bool>) return v.is_boolean();
    else if constexpr (std::is_same_v<T, std::string>) return v.is_string();
    else if constexpr (std::is_same_v<T, std::uint64_t>)
        return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
    else if constexpr (std::is_same_v<T, int>) return v.is_number_integer();
    else if constexpr (std::is_same_v<T, std::vector<double>>)
        return v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number(); });
    else return false;
}

// A JSON object being read: tracks consumed keys and mirrors every resolved
// value (including defaults) into the echo document.
class Section {
public:
    Section(const json& src, std::string path, json& echo) : src_(src), path_(std::move(path)), echo_(echo) {
        if (!src_.is_object()) throw ConfigError(path_, "expected an object");
        if (!echo_.is_object()) echo_ = json::object();
    }

    const std::string& path() const { return path_; }
    std::string at(const std::string& key) const { return path_ + "." + key; }
    bool has(const std::string& key) const { return src_.contains(key); }

    template <typename T>
    std::optional<T> optional(const std::string& key) {
        seen_.insert(key);
        if (!src_.contains(key) || src_.at(key).is_null()) return std::nullopt;
        const json& v = src_.at(key);
        if (!convertible<T>(v)) throw ConfigError(at(key), std::string("expected ") + TypeName<T>::value);
        T out = v.get<T>();
        if constexpr (std::is_same_v<T, double>) {
            if (!std::isfinite(out)) throw ConfigError(at(key), "expected a finite number");
        }
        echo_[key] = out;
        return out;
    }

    template <typename T>
    T get(const std::string& key, T fallback) {
        auto v = optional<T>(key);
        if (!v) {
            echo_[key] = fallback;
            return fallback;
        }
        return *v;
    }

    template <typename T>
    T require(const std::string& key) {
        auto v = optional<T>(key);
        if (!v) throw ConfigError(at(key), "required field is missing");
        return *v;
    }

    Section child(const std::string& key) {
        seen_.insert(key);
        if (!src_.contains(key)) throw ConfigError(at(key), "required section is missing");
        return Section(src_.at(key), at(key), echo_[key]);
    }

    std::optional<Section> optional_child(const std::string& key) {
        seen_.insert(key);
        if (!src_.contains(key) || src_.at(key).is_null()) return std::nullopt;
        return Section(src_.at(key), at(key), echo_[key]);
    }

    /// Rejects keys that were never read.
    void finish() const {
        for (const auto& [key, value] : src_.items())
            if (!seen_.count(key)) throw ConfigError(at(key), "unknown field");
    }

private:
    const json& src_;
    std::string path_;
    json& echo_;
    std::set<std::string> seen_;
};

template <typename Fn>
auto guarded(const std::string& path, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(path, e.what());
    }
}

std::size_t to_size(std::uint64_t v) { return static_cast<std::size_t>(v); }

Kernel parse_kernel(Section s) {
    const auto type = s.get<std::string>("type", "explicit");
    Kernel k = guarded(s.path(), [&]() -> Kernel {
        if (type == "zero") return Kernel::zero();
        if (type == "single") return Kernel::single(s.require<double>("c"));
        if (type == "geometric") {
            const double c = s.require<double>("c");
            const double ratio = s.require<double>("ratio");
            return Kernel::geometric(c, ratio, to_size(s.require<std::uint64_t>("length")));
        }
        if (type == "power_law") {
            const double c = s.require<double>("c");
            const double p = s.require<double>("p");
            return Kernel::power_law(c, p, to_size(s.require<std::uint64_t>("length")));
        }
        if (type == "explicit") return Kernel(s.require<std::vector<double>>("coefficients"));
        throw ConfigError(s.at("type"), "unknown kernel type '" + type + "' (zero|single|geometric|power_law|explicit)");
    });
    s.finish();
    return k;
}

GrowthCatalogue parse_member(Section& s) {
    const auto member = s.require<std::string>("member");
    if (member.size() < 2 || member[0] != 'H') throw ConfigError(s.at("member"), "expected H1..H10");
    int id = 0;
    try {
        id = std::stoi(member.substr(1));
    } catch (const std::exception&) {
        throw ConfigError(s.at("member"), "expected H1..H10");
    }
    CatalogueParams p;
    p.betas = s.get<std::vector<double>>("betas", p.betas);
    p.theta1 = s.get<double>("theta1", p.theta1);
    p.alpha = s.get<double>("alpha", p.alpha);
    p.theta2 = s.get<double>("theta2", p.theta2);
    p.lambda = s.get<double>("lambda", p.lambda);
    p.depth = s.get<int>("depth", p.depth);
    return guarded(s.path(), [&] { return GrowthCatalogue(id, p); });
}

stochastic::TailModel parse_tail(Section s) {
    using stochastic::TailModel;
    const auto family = s.require<std::string>("family");
    TailModel t = guarded(s.path(), [&]() -> TailModel {
        if (family == "normal") return TailModel::normal(s.get<double>("sigma", 1.0));
        if (family == "symmetric_power") {
            const double alpha = s.require<double>("alpha");
            const double cl = s.get<double>("c_lower", 0.5);
            return TailModel::symmetric_power(alpha, cl, s.get<double>("c_upper", 0.5));
        }
        if (family == "weibull") {
            const double scale = s.get<double>("scale", 1.0);
            return TailModel::weibull(scale, s.get<double>("shape", 1.0));
        }
        if (family == "uniform") return TailModel::uniform(s.get<double>("half_width", 1.0));
        if (family == "custom_quantile") {
            auto u = s.require<std::vector<double>>("probabilities");
            return TailModel::custom_quantile(std::move(u), s.require<std::vector<double>>("values"));
        }
        throw ConfigError(s.at("family"),
                          "unknown tail family '" + family + "' (normal|symmetric_power|weibull|uniform|custom_quantile)");
    });
    s.finish();
    return t;
}

void parse_forcing(Section s, ExperimentConfig& cfg) {
    using stochastic::ForcingGenerator;
    const auto type = s.require<std::string>("type");
    auto noise = [&]() -> std::optional<stochastic::TailModel> {
        if (auto n = s.optional_child("noise")) return parse_tail(*n);
        return std::nullopt;
    };
    if (type == "explicit") {
        cfg.forcing_values = s.require<std::vector<double>>("values");
    } else if (type == "iid") {
        auto n = noise();
        if (!n) throw ConfigError(s.at("noise"), "iid forcing needs a noise model");
        cfg.forcing = ForcingGenerator::iid(*n, cfg.seed);
    } else if (type == "random_walk" || type == "geometric_random_walk") {
        const double drift = s.get<double>("drift", 0.0);
        auto n = noise();
        cfg.forcing = guarded(s.path(), [&] {
            return type == "random_walk" ? ForcingGenerator::random_walk(drift, n, cfg.seed)
                                         : ForcingGenerator::geometric_random_walk(drift, n, cfg.seed);
        });
    } else if (type == "catalogue") {
        cfg.forcing = ForcingGenerator::catalogue(parse_member(s));
    } else if (type == "modulated") {
        auto base_section = s.child("base");
        GrowthCatalogue base = parse_member(base_section);
        base_section.finish();
        if (s.has("pattern")) {
            auto pattern = s.require<std::vector<double>>("pattern");
            cfg.forcing = guarded(s.path(), [&] { return ForcingGenerator::modulated_periodic(base, pattern); });
        } else {
            auto factor = s.optional_child("factor");
            if (!factor) throw ConfigError(s.path(), "modulated forcing needs either 'pattern' or 'factor'");
            auto tail = parse_tail(*factor);
            const double offset = s.get<double>("offset", 0.0);
            const double scale = s.get<double>("scale", 1.0);
            cfg.forcing = guarded(s.path(), [&] {
                return ForcingGenerator::modulated_iid(base, tail, offset, scale, cfg.seed);
            });
        }
    } else {
        throw ConfigError(s.at("type"), "unknown forcing type '" + type +
                                            "' (explicit|iid|random_walk|geometric_random_walk|catalogue|modulated)");
    }
    s.finish();
}

ScalingSpec parse_scaling(Section s) {
    ScalingSpec spec;
    const auto type = s.require<std::string>("type");
    if (type == "catalogue") {
        spec.type = ScalingSpec::Type::catalogue;
        spec.member = parse_member(s);
        spec.lambda = spec.member->lambda();
    } else if (type == "sqrt_two_log") {
        spec.type = ScalingSpec::Type::sqrt_two_log;
    } else if (type == "explicit") {
        spec.type = ScalingSpec::Type::explicit_values;
        spec.values = s.require<std::vector<double>>("values");
        spec.start = to_size(s.get<std::uint64_t>("start", 0));
        spec.lambda = s.require<double>("lambda");
    } else {
        throw ConfigError(s.at("type"), "unknown scaling type '" + type + "' (catalogue|sqrt_two_log|explicit)");
    }
    s.finish();
    return spec;
}

Nonlinearity parse_nonlinearity(Section s) {
    const auto name = s.require<std::string>("name");
    const double delta = s.get<double>("delta", 0.1);
    const double savings = s.get<double>("s", 0.2);
    s.finish();
    return guarded(s.path(), [&] { return Nonlinearity::from_name(name, delta, savings); });
}

asymptotics::ConvexFunctional parse_phi(Section s) {
    using asymptotics::ConvexFunctional;
    const auto kind = s.get<std::string>("kind", "power");
    ConvexFunctional phi = guarded(s.path(), [&]() -> ConvexFunctional {
        if (kind == "power") return ConvexFunctional::power(s.get<double>("p", 2.0));
        if (kind == "exp") return ConvexFunctional::exponential();
        if (kind == "hinge") return ConvexFunctional::hinge(s.get<double>("c", 0.0));
        throw ConfigError(s.at("kind"), "unknown functional '" + kind + "' (power|exp|hinge)");
    });
    s.finish();
    return phi;
}

std::pair<double, double> parse_band(Section& s, const std::string& key) {
    const auto v = s.require<std::vector<double>>(key);
    if (v.size() != 2 || !(v[0] <= v[1])) throw ConfigError(s.at(key), "expected [lo, hi] with lo <= hi");
    return {v[0], v[1]};
}

void parse_ensemble(Section s, ExperimentConfig& cfg) {
    auto& e = cfg.ensemble;
    e.paths = to_size(s.get<std::uint64_t>("paths", e.paths));
    if (e.paths == 0) throw ConfigError(s.at("paths"), "need at least one path");
    if (auto st = s.optional<std::string>("statistic"))
        e.statistic = guarded(s.at("statistic"), [&] { return stochastic::statistic_from_name(*st); });
    if (s.has("band")) std::tie(e.band_lo, e.band_hi) = parse_band(s, "band");
    e.required_fraction = s.get<double>("required_fraction", e.required_fraction);
    if (!(e.required_fraction >= 0.0 && e.required_fraction <= 1.0))
        throw ConfigError(s.at("required_fraction"), "expected a value in [0,1]");
    if (s.has("median_band")) e.median_band = parse_band(s, "median_band");
    e.threads = static_cast<unsigned>(s.get<std::uint64_t>("threads", 0));
    s.finish();
}

void parse_tolerances(Section s, Tolerances& t) {
    auto positive = [&](const std::string& key, double& slot) {
        slot = s.get<double>(key, slot);
        if (!(slot > 0.0)) throw ConfigError(s.at(key), "tolerance must be positive");
    };
    positive("growth2", t.growth2);
    positive("growth3", t.growth3);
    positive("periodic", t.periodic);
    positive("ergodic", t.ergodic);
    positive("nonlinear", t.nonlinear);
    positive("backward_error", t.backward_error);
    t.fluct_slack = s.get<double>("fluct_slack", t.fluct_slack);
    if (!(t.fluct_slack >= 0.0)) throw ConfigError(s.at("fluct_slack"), "slack must be non-negative");
    s.finish();
}

void parse_limsup(Section s, asymptotics::LimsupOptions& o) {
    o.burn_in_fraction = s.get<double>("burn_in_fraction", o.burn_in_fraction);
    if (!(o.burn_in_fraction >= 0.0 && o.burn_in_fraction < 1.0))
        throw ConfigError(s.at("burn_in_fraction"), "expected a value in [0,1)");
    o.zero_threshold = s.get<double>("zero_threshold", o.zero_threshold);
    if (!(o.zero_threshold > 0.0)) throw ConfigError(s.at("zero_threshold"), "expected a positive value");
    o.growth_factor = s.get<double>("growth_factor", o.growth_factor);
    if (!(o.growth_factor > 1.0)) throw ConfigError(s.at("growth_factor"), "expected a value > 1");
    s.finish();
}

void require_forcing(const ExperimentConfig& cfg) {
    if (!cfg.forcing && !cfg.forcing_values) throw ConfigError("$.forcing", "mode '" + cfg.mode + "' needs a forcing");
}

void require_scaling(const ExperimentConfig& cfg) {
    if (!cfg.scaling) throw ConfigError("$.scaling", "mode '" + cfg.mode + "' needs a scaling sequence");
}

} // namespace

const std::vector<std::string>& modes() {
    static const std::vector<std::string> all{"solve",          "spectrum",      "classify",    "verify-growth2",
                                              "verify-growth3", "verify-periodic", "verify-ergodic", "verify-fluct",
                                              "verify-phi",     "envelope",      "ensemble",    "verify-nonlinear"};
    return all;
}

asymptotics::ScalingModel ScalingSpec::build(std::size_t horizon) const {
    using asymptotics::ScalingModel;
    switch (type) {
    case Type::catalogue: return ScalingModel::from_catalogue(*member, horizon);
    case Type::sqrt_two_log: return ScalingModel::sqrt_two_log(horizon);
    case Type::explicit_values:
        if (start + values.size() < horizon + 1)
            throw ConfigError("$.scaling.values", "explicit scaling must cover indices up to the horizon");
        return ScalingModel::custom(Trajectory(start, values), lambda, "explicit");
    }
    return ScalingModel::sqrt_two_log(horizon);
}

ExperimentConfig parse_config(const json& doc, std::optional<std::string> mode, std::optional<std::uint64_t> seed) {
    ExperimentConfig cfg;
    Section root(doc, "$", cfg.echo);

    auto doc_mode = root.optional<std::string>("mode");
    if (mode && doc_mode && *mode != *doc_mode)
        throw ConfigError("$.mode", "config declares mode '" + *doc_mode + "' but '" + *mode + "' was requested");
    if (!mode && !doc_mode) throw ConfigError("$.mode", "no mode given");
    cfg.mode = mode ? *mode : *doc_mode;
    if (std::find(modes().begin(), modes().end(), cfg.mode) == modes().end())
        throw ConfigError("$.mode", "unknown mode '" + cfg.mode + "'");
    cfg.echo["mode"] = cfg.mode;

    cfg.horizon = to_size(root.get<std::uint64_t>("horizon", cfg.horizon));
    if (cfg.horizon < 1) throw ConfigError("$.horizon", "horizon must be >= 1");
    cfg.seed = root.get<std::uint64_t>("seed", 0);
    if (seed) {
        cfg.seed = *seed;
        cfg.echo["seed"] = *seed;
    }
    cfg.log_domain = root.get<bool>("log_domain", false);
    cfg.xi = root.get<double>("xi", 0.0);

    if (auto k = root.optional_child("kernel")) cfg.kernel = parse_kernel(*k);
    else cfg.echo["kernel"] = json{{"type", "zero"}};
    if (auto f = root.optional_child("forcing")) parse_forcing(*f, cfg);
    if (auto s = root.optional_child("scaling")) cfg.scaling = parse_scaling(*s);
    if (auto n = root.optional_child("nonlinearity")) cfg.nonlinearity = parse_nonlinearity(*n);
    if (auto t = root.optional_child("tail")) cfg.tail = parse_tail(*t);
    if (auto p = root.optional_child("phi")) cfg.phi = parse_phi(*p);
    else cfg.echo["phi"] = json{{"kind", "power"}, {"p", 2.0}};

    cfg.lambda_grid = root.get<std::vector<double>>("lambda_grid", {});
    cfg.K_grid = root.get<std::vector<double>>("K_grid", {});
    if (auto v = root.optional<std::uint64_t>("period_hint")) cfg.period_hint = to_size(*v);
    if (auto v = root.optional<std::uint64_t>("expected_period")) cfg.expected_period = to_size(*v);
    cfg.target = root.optional<double>("target");
    cfg.expected_crossing = root.optional<double>("expected_crossing");
    cfg.expected_verdict = root.optional<std::string>("expected_verdict");
    cfg.expected_case = root.optional<std::string>("expected_case");
    cfg.expected_class = root.optional<std::string>("expected_class");

    if (auto e = root.optional_child("ensemble")) parse_ensemble(*e, cfg);
    if (auto t = root.optional_child("tolerances")) parse_tolerances(*t, cfg.tol);
    else {
        json tol_echo;
        parse_tolerances(Section(json::object(), "$.tolerances", tol_echo), cfg.tol);
        cfg.echo["tolerances"] = tol_echo;
    }
    json limsup_echo;
    if (auto l = root.optional_child("limsup")) parse_limsup(*l, cfg.limsup);
    else {
        parse_limsup(Section(json::object(), "$.limsup", limsup_echo), cfg.limsup);
        cfg.echo["limsup"] = limsup_echo;
    }
    root.finish();

    const std::string& m = cfg.mode;
    if (m == "solve" || m.rfind("verify-", 0) == 0 || m == "ensemble") require_forcing(cfg);
    if (m == "verify-growth3" || m == "verify-periodic" || m == "verify-ergodic" || m == "verify-fluct" ||
        m == "verify-nonlinear" || m == "envelope")
        require_scaling(cfg);
    if ((m == "classify" || m == "envelope") && !cfg.tail) throw ConfigError("$.tail", "mode '" + m + "' needs a tail model");
    if (m == "envelope" && cfg.K_grid.empty()) throw ConfigError("$.K_grid", "envelope needs a K grid");
    if (m == "ensemble" && !cfg.ensemble.statistic)
        throw ConfigError("$.ensemble.statistic", "ensemble mode needs a statistic");
    if (m == "verify-nonlinear" && !cfg.nonlinearity)
        throw ConfigError("$.nonlinearity", "verify-nonlinear needs a nonlinearity");
    if (cfg.nonlinearity && cfg.log_domain) throw ConfigError("$.log_domain", "nonlinear solves run in plain doubles");
    if (cfg.forcing_values && cfg.forcing_values->size() < cfg.horizon)
        throw ConfigError("$.forcing.values", "explicit forcing must list H(1.." + std::to_string(cfg.horizon) + ")");
    if (cfg.scaling) guarded("$.scaling", [&] { return cfg.scaling->build(cfg.horizon); });
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, std::optional<std::string> mode,
                             std::optional<std::uint64_t> seed) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string(), "cannot open config file");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string(), std::string("invalid JSON: ") + e.what());
    }
    return parse_config(doc, std::move(mode), seed);
}

} // namespace volterra::lab
