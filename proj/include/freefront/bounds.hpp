#ifndef FREEFRONT_BOUNDS_HPP
#define FREEFRONT_BOUNDS_HPP

#include "freefront/config.hpp"
#include "freefront/kernels.hpp"

#include <limits>
#include <string>
#include <vector>

namespace freefront {

/// One time level of the recorded front history.
struct FrontRecord {
    double t = 0.0;
    double g = 0.0, h = 0.0;
    double gdot = 0.0, hdot = 0.0;
    int picard_iters = 0;
    double residual = 0.0;
    bool picard_converged = true;
    double picard_max_ratio = std::numeric_limits<double>::quiet_NaN();
};

/// Constants derived from the hypotheses before any solve. They feed the
/// invariant monitors; the scheme itself never uses them.
struct AprioriBounds {
    double sup_u0 = 0.0, sup_v0 = 0.0, sup_v0_prime = 0.0;

    double k1 = 0.0;   // max(|u0|_inf, k0): solution ceiling for u
    double k2 = 0.0;   // max(|v0|_inf, Theta(k1)): ceiling for v
    double L = 0.0;    // L(k1, k2)
    double Lstar = 0.0;
    double k3 = 0.0;   // flux ceiling: max(1/h0, sqrt(L/(2 d2)), |v0'|_inf/k2)

    double eps_bar = 0.0, delta0 = 0.0;  // kernel floor
    double eps0 = 0.0;                   // 0.5*min(eps_bar, 8 mu k3/(rho k1))
    double M = 0.0;                      // 2 h0 + eps0/4
    double T0 = 0.0;                     // certified window for the Gamma_T set
    double Rbar = 0.0;                   // mu k3 + rho k1 M
    double rho_c0 = 0.0, rho_c0_star = 0.0;  // front-speed floors

    bool rho_zero = false;  // speed floors vacuous; growth monitors disabled
    bool mu_zero = false;   // eps0 constraint vacuous

    double L_u0 = 0.0, L_J = 0.0;  // informational only

    double mu = 0.0, rho = 0.0, h0 = 0.0;  // carried for the callables below

    /// Speed ceiling R(t) = mu k3 + 2 (h0 rho k1 + mu k3) e^{rho k1 t}.
    double R(double t) const;

    /// Width ceiling 2 [h0 + mu k3/(rho k1)] e^{rho k1 t}; +inf when rho k1 = 0.
    double growth_bound(double t) const;
};

/// Evaluates the initial-data norms on the grid and assembles every constant.
AprioriBounds compute_bounds(const ProblemConfig& cfg, const KernelFloor& floor);

/// One Gamma_T membership condition, reported not asserted.
struct GammaCondition {
    std::string name;
    bool checked = false;  // false when degenerate (rho = 0 etc.)
    bool ok = true;
    double first_violation_t = std::numeric_limits<double>::quiet_NaN();
    double worst = 0.0;
};

struct GammaReport {
    double window_end = 0.0;  // min(requested T, T0, trajectory end)
    std::vector<GammaCondition> conditions;
    bool all_ok() const;
};

/// Checks the discrete front history against the Gamma_T definition
///   rho c0 <= h'(t) <= Rbar, -Rbar <= g'(t) <= -rho c0*, h(T)-g(T) <= M
/// on [0, min(T, T0)]. Ceilings get `speed_slack` relative slack, the width
/// condition 1e-9. Informational when the floors are degenerate.
GammaReport check_gamma_membership(const std::vector<FrontRecord>& history,
                                   const AprioriBounds& b, double T,
                                   double speed_slack = 0.05);

} // namespace freefront

#endif
