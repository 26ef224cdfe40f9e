#include "freefront/config.hpp"
#include "freefront/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace freefront {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& val) {
    double out = 0.0;
    const char* first = val.data();
    const char* last = val.data() + val.size();
    auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last)
        throw ConfigError("key '" + key + "': not a number: '" + val + "'");
    return out;
}

int parse_int(const std::string& key, const std::string& val) {
    int out = 0;
    auto res = std::from_chars(val.data(), val.data() + val.size(), out);
    if (res.ec != std::errc{} || res.ptr != val.data() + val.size())
        throw ConfigError("key '" + key + "': not an integer: '" + val + "'");
    return out;
}

const char* kKnownKeys[] = {
    "d1", "d2", "mu", "rho", "h0", "T",
    "kernel.family", "kernel.a", "kernel.sigma",
    "reaction.kind", "reaction.a", "reaction.b", "reaction.c",
    "grid.N", "grid.dt", "grid.recheck",
    "init.u0", "init.v0", "init.u0_amp", "init.v0_amp",
    "picard.tol", "picard.max", "theta", "output.snapshots",
};

bool known_key(const std::string& k) {
    for (const char* s : kKnownKeys)
        if (k == s) return true;
    return false;
}

} // namespace

std::string fmt_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ConfigMap parse_config_text(const std::string& text) {
    ConfigMap map;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'",
                              lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value",
                              lineno);
        if (map.count(key))
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'",
                              lineno);
        map[key] = val;
    }
    return map;
}

ConfigMap parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string render_config(const ConfigMap& map) {
    std::ostringstream out;
    for (const auto& [k, v] : map) out << k << " = " << v << "\n";
    return out.str();
}

std::function<double(double)> make_profile(const std::string& name, double amp,
                                           double h0) {
    if (name == "bump") {
        const double k = M_PI / (2.0 * h0);
        return [amp, k, h0](double x) {
            return std::abs(x) >= h0 ? 0.0 : amp * std::cos(k * x);
        };
    }
    if (name == "parabola") {
        return [amp, h0](double x) {
            return std::abs(x) >= h0 ? 0.0 : amp * (1.0 - (x / h0) * (x / h0));
        };
    }
    throw ConfigError("unknown initial profile '" + name + "' (want bump or parabola)");
}

ProblemConfig build_problem(const ConfigMap& map, bool allow_nonlipschitz) {
    for (const auto& [k, v] : map)
        if (!known_key(k)) throw ConfigError("unknown key '" + k + "'");

    auto need = [&](const std::string& key) -> const std::string& {
        auto it = map.find(key);
        if (it == map.end()) throw ConfigError("missing required key '" + key + "'");
        return it->second;
    };
    auto opt = [&](const std::string& key, const std::string& def) -> std::string {
        auto it = map.find(key);
        return it == map.end() ? def : it->second;
    };

    ProblemConfig cfg;
    cfg.d1 = parse_double("d1", need("d1"));
    cfg.d2 = parse_double("d2", need("d2"));
    cfg.mu = parse_double("mu", need("mu"));
    cfg.rho = parse_double("rho", need("rho"));
    cfg.h0 = parse_double("h0", need("h0"));
    cfg.T = parse_double("T", need("T"));
    if (cfg.d1 <= 0.0 || cfg.d2 <= 0.0) throw ConfigError("d1 and d2 must be > 0");
    if (cfg.mu < 0.0 || cfg.rho < 0.0) throw ConfigError("mu and rho must be >= 0");
    if (cfg.h0 <= 0.0) throw ConfigError("h0 must be > 0");
    if (cfg.T <= 0.0) throw ConfigError("T must be > 0");

    const std::string family = need("kernel.family");
    const double ka = parse_double("kernel.a", need("kernel.a"));
    switch (kernel_family_from_name(family)) {
        case KernelFamily::uniform:
            cfg.kernel = KernelSpec::uniform(ka);
            break;
        case KernelFamily::tent:
            cfg.kernel = KernelSpec::tent(ka);
            break;
        case KernelFamily::truncated_gaussian:
            cfg.kernel = KernelSpec::truncated_gaussian(
                ka, parse_double("kernel.sigma", opt("kernel.sigma", fmt_g17(ka / 2.0))));
            break;
        case KernelFamily::custom:
            throw ConfigError("custom kernels cannot be built from a config file");
    }
    if (!cfg.kernel.lipschitz() && !allow_nonlipschitz)
        throw ConfigError("uniform kernel violates the Lipschitz hypothesis; "
                          "pass --allow-nonlipschitz-kernel to admit it");

    const std::string rkind = need("reaction.kind");
    const double ra = parse_double("reaction.a", need("reaction.a"));
    const double rb = parse_double("reaction.b", need("reaction.b"));
    const double rc = parse_double("reaction.c", need("reaction.c"));
    switch (reaction_kind_from_name(rkind)) {
        case ReactionKind::competition:
            cfg.reaction = ReactionModel::competition(ra, rb, rc);
            break;
        case ReactionKind::prey_predator:
            cfg.reaction = ReactionModel::prey_predator(ra, rb, rc);
            break;
        case ReactionKind::custom:
            throw ConfigError("custom reactions cannot be built from a config file");
    }

    cfg.N = parse_int("grid.N", need("grid.N"));
    if (cfg.N < 5 || cfg.N % 2 == 0) throw ConfigError("grid.N must be odd and >= 5");

    const std::string dts = need("grid.dt");
    if (dts == "auto") {
        cfg.dt_auto = true;
        cfg.dt = 0.0;
    } else {
        cfg.dt_auto = false;
        cfg.dt = parse_double("grid.dt", dts);
        if (cfg.dt <= 0.0) throw ConfigError("grid.dt must be > 0 or 'auto'");
    }
    cfg.recheck_every = parse_int("grid.recheck", opt("grid.recheck", "20"));
    if (cfg.recheck_every < 1) throw ConfigError("grid.recheck must be >= 1");

    const std::string u0_name = need("init.u0");
    const std::string v0_name = need("init.v0");
    const double u0_amp = parse_double("init.u0_amp", opt("init.u0_amp", "1"));
    const double v0_amp = parse_double("init.v0_amp", opt("init.v0_amp", "1"));
    if (u0_amp < 0.0 || v0_amp < 0.0) throw ConfigError("profile amplitudes must be >= 0");
    cfg.u0 = make_profile(u0_name, u0_amp, cfg.h0);
    cfg.v0 = make_profile(v0_name, v0_amp, cfg.h0);

    cfg.picard_tol = parse_double("picard.tol", opt("picard.tol", "1e-10"));
    cfg.picard_max = parse_int("picard.max", opt("picard.max", "8"));
    cfg.theta = parse_double("theta", opt("theta", "1"));
    cfg.snapshots = parse_int("output.snapshots", opt("output.snapshots", "200"));
    if (cfg.picard_tol <= 0.0) throw ConfigError("picard.tol must be > 0");
    if (cfg.picard_max < 1) throw ConfigError("picard.max must be >= 1");
    if (cfg.theta < 0.5 || cfg.theta > 1.0) throw ConfigError("theta must be in [1/2, 1]");
    if (cfg.snapshots < 2) throw ConfigError("output.snapshots must be >= 2");

    // built-in kernels, profiles and reactions are all even / x-independent
    cfg.symmetric_expected = true;

    // canonical echo: every key the build saw, numbers re-serialized
    ConfigMap echo;
    echo["d1"] = fmt_g17(cfg.d1);
    echo["d2"] = fmt_g17(cfg.d2);
    echo["mu"] = fmt_g17(cfg.mu);
    echo["rho"] = fmt_g17(cfg.rho);
    echo["h0"] = fmt_g17(cfg.h0);
    echo["T"] = fmt_g17(cfg.T);
    echo["kernel.family"] = family;
    echo["kernel.a"] = fmt_g17(ka);
    if (cfg.kernel.family == KernelFamily::truncated_gaussian)
        echo["kernel.sigma"] = fmt_g17(cfg.kernel.sigma);
    echo["reaction.kind"] = rkind;
    echo["reaction.a"] = fmt_g17(ra);
    echo["reaction.b"] = fmt_g17(rb);
    echo["reaction.c"] = fmt_g17(rc);
    echo["grid.N"] = std::to_string(cfg.N);
    echo["grid.dt"] = cfg.dt_auto ? "auto" : fmt_g17(cfg.dt);
    echo["grid.recheck"] = std::to_string(cfg.recheck_every);
    echo["init.u0"] = u0_name;
    echo["init.v0"] = v0_name;
    echo["init.u0_amp"] = fmt_g17(u0_amp);
    echo["init.v0_amp"] = fmt_g17(v0_amp);
    echo["picard.tol"] = fmt_g17(cfg.picard_tol);
    echo["picard.max"] = std::to_string(cfg.picard_max);
    echo["theta"] = fmt_g17(cfg.theta);
    echo["output.snapshots"] = std::to_string(cfg.snapshots);
    cfg.echo = std::move(echo);
    return cfg;
}

ConfigMap config_echo(const ProblemConfig& cfg) {
    if (!cfg.echo.empty()) return cfg.echo;
    ConfigMap echo;
    echo["d1"] = fmt_g17(cfg.d1);
    echo["d2"] = fmt_g17(cfg.d2);
    echo["mu"] = fmt_g17(cfg.mu);
    echo["rho"] = fmt_g17(cfg.rho);
    echo["h0"] = fmt_g17(cfg.h0);
    echo["T"] = fmt_g17(cfg.T);
    echo["kernel.family"] = kernel_family_name(cfg.kernel.family);
    echo["kernel.a"] = fmt_g17(cfg.kernel.a);
    if (cfg.kernel.family == KernelFamily::truncated_gaussian)
        echo["kernel.sigma"] = fmt_g17(cfg.kernel.sigma);
    echo["reaction.kind"] = reaction_kind_name(cfg.reaction.kind);
    if (cfg.reaction.kind != ReactionKind::custom) {
        echo["reaction.a"] = fmt_g17(cfg.reaction.a);
        echo["reaction.b"] = fmt_g17(cfg.reaction.b);
        echo["reaction.c"] = fmt_g17(cfg.reaction.c);
    }
    echo["grid.N"] = std::to_string(cfg.N);
    echo["grid.dt"] = cfg.dt_auto ? "auto" : fmt_g17(cfg.dt);
    echo["grid.recheck"] = std::to_string(cfg.recheck_every);
    echo["picard.tol"] = fmt_g17(cfg.picard_tol);
    echo["picard.max"] = std::to_string(cfg.picard_max);
    echo["theta"] = fmt_g17(cfg.theta);
    echo["output.snapshots"] = std::to_string(cfg.snapshots);
    return echo;
}

} // namespace freefront
