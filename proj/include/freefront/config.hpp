#ifndef FREEFRONT_CONFIG_HPP
#define FREEFRONT_CONFIG_HPP

#include "freefront/kernels.hpp"
#include "freefront/reactions.hpp"

#include <functional>
#include <map>
#include <string>

namespace freefront {

/// Flat `key = value` file with `#` comments. Keys are dotted.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config_text(const std::string& text);
ConfigMap parse_config_file(const std::string& path);

/// Canonical rendering: sorted keys, one `key = value` per line, numbers
/// re-serialized with 17 significant digits so render(parse(.)) is stable.
std::string render_config(const ConfigMap& map);

/// 17-significant-digit formatting (lossless double round-trip).
std::string fmt_g17(double v);

/// Named initial profile on [-h0, h0], vanishing at the endpoints:
/// `bump` = amp*cos(pi x/(2 h0)), `parabola` = amp*(1 - (x/h0)^2).
std::function<double(double)> make_profile(const std::string& name, double amp,
                                           double h0);

struct ProblemConfig {
    double d1 = 1.0, d2 = 1.0;   // diffusivities
    double mu = 1.0, rho = 1.0;  // front-response coefficients
    double h0 = 1.0;             // initial habitat half-width
    double T = 1.0;              // horizon

    KernelSpec kernel = KernelSpec::uniform(1.0);
    ReactionModel reaction = ReactionModel::competition(1.0, 1.0, 1.0);

    int N = 201;          // odd node count on [-1, 1]
    double dt = 0.0;      // fixed step; <= 0 means auto-selected
    bool dt_auto = true;

    double picard_tol = 1e-10;
    int picard_max = 8;
    double theta = 1.0;     // v-step weight in [1/2, 1]
    int snapshots = 200;    // max field snapshot count
    int recheck_every = 20; // auto-dt re-selection cadence

    std::function<double(double)> u0, v0;

    /// Mirror-symmetric problem (even data, x-free reaction): enables the
    /// symmetry monitors. Set automatically for file-built configs.
    bool symmetric_expected = false;

    ConfigMap echo;  // canonical key/value view for run headers

    bool degenerate_fronts() const { return mu == 0.0 && rho == 0.0; }
};

/// Builds and sanity-checks a problem instance from a parsed config.
/// Unknown keys and missing required keys raise ConfigError naming the key.
ProblemConfig build_problem(const ConfigMap& map, bool allow_nonlipschitz = false);

/// The canonical echo of a programmatically constructed config (tests, sweeps).
ConfigMap config_echo(const ProblemConfig& cfg);

} // namespace freefront

#endif
