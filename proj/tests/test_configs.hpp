#ifndef FREEFRONT_TEST_CONFIGS_HPP
#define FREEFRONT_TEST_CONFIGS_HPP

#include "freefront/config.hpp"

#include <cmath>
#include <string>

namespace fftest {

/// Config text for the standard suite: d1 = d2 = mu = rho = 1, h0 = 1,
/// a = b = c = 1, bump initials of amplitude 0.5, N = 201, T = 2.
inline std::string standard_config_text(const std::string& reaction,
                                        const std::string& kernel) {
    return "d1 = 1\nd2 = 1\nmu = 1\nrho = 1\nh0 = 1\nT = 2\n"
           "kernel.family = " + kernel + "\nkernel.a = 1\n"
           "reaction.kind = " + reaction + "\n"
           "reaction.a = 1\nreaction.b = 1\nreaction.c = 1\n"
           "grid.N = 201\ngrid.dt = auto\n"
           "init.u0 = bump\ninit.v0 = bump\n"
           "init.u0_amp = 0.5\ninit.v0_amp = 0.5\n";
}

inline freefront::ProblemConfig standard_config(const std::string& reaction,
                                                const std::string& kernel,
                                                const std::string& overrides = "") {
    freefront::ConfigMap map =
        freefront::parse_config_text(standard_config_text(reaction, kernel));
    for (const auto& [k, v] : freefront::parse_config_text(overrides)) map[k] = v;
    return freefront::build_problem(map, /*allow_nonlipschitz=*/true);
}

/// Degenerate heat-mode problem: frozen fronts, zero reactions, u0 = 0,
/// v0 = cos(pi x/2) on [-1, 1]. The closed-form solution is
/// exp(-d2 (pi/2)^2 t) cos(pi x / 2).
inline freefront::ProblemConfig heat_mode_config(int n, double T, double dt,
                                                 double theta) {
    freefront::ProblemConfig cfg;
    cfg.d1 = 1.0;
    cfg.d2 = 1.0;
    cfg.mu = 0.0;
    cfg.rho = 0.0;
    cfg.h0 = 1.0;
    cfg.T = T;
    cfg.N = n;
    cfg.dt = dt;
    cfg.dt_auto = dt <= 0.0;
    cfg.theta = theta;
    cfg.kernel = freefront::KernelSpec::uniform(1.0);
    cfg.reaction = freefront::ReactionModel::none();
    cfg.u0 = [](double) { return 0.0; };
    cfg.v0 = freefront::make_profile("bump", 1.0, 1.0);
    cfg.symmetric_expected = true;
    return cfg;
}

inline double heat_mode_decay(double d2, double t) {
    return std::exp(-d2 * (M_PI / 2.0) * (M_PI / 2.0) * t);
}

} // namespace fftest

#endif
