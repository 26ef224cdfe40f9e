#ifndef FREEFRONT_STEPPER_HPP
#define FREEFRONT_STEPPER_HPP

#include "freefront/bounds.hpp"
#include "freefront/config.hpp"
#include "freefront/pde.hpp"

#include <limits>
#include <string>
#include <vector>

namespace freefront {

/// One time level of the coupled solve.
struct SimState {
    double t = 0.0;
    FrontPair fronts;
    Field w, z;
    int picard_iters = 0;
    double residual = 0.0;  // last front change per unit time
    bool picard_converged = true;
    double picard_max_ratio = std::numeric_limits<double>::quiet_NaN();
    double min_w_preclamp = 0.0, min_z_preclamp = 0.0;  // from the last step
};

struct FrontSpeeds {
    double gdot = 0.0, hdot = 0.0;
    double vx_left = 0.0, vx_right = 0.0;  // physical v_x at the fronts
};

/// Front laws of the coupled system:
///   hdot = -mu v_x(h) + rho int_g^h Jtail(h - x) u dx,
///   gdot = -mu v_x(g) - rho int_g^h Jtail(x - g) u dx.
FrontSpeeds front_speeds(const FrontPair& fp, const Field& w, const Field& z,
                         const KernelSpec& k, const ReferenceGrid& grid,
                         double mu, double rho);

/// One coupled step: Picard iteration over (front candidates -> field solves
/// -> recomputed speeds) until successive candidates agree to picard_tol*dt
/// or picard_max sweeps. Divergence (residual growing three sweeps in a row)
/// raises PicardDiverged.
SimState advance_step(const StepContext& ctx, const SimState& s, double dt,
                      double mu, double rho, double picard_tol, int picard_max);

struct FieldSnapshot {
    double t = 0.0;
    FrontPair fronts;
    std::vector<double> y;  // reference coordinates (empty for Eulerian solvers)
    std::vector<double> x;  // physical node positions at snapshot time
    Field w, z;
};

/// Running extremes gathered by the invariant monitors.
struct MonitorReport {
    bool check_fronts = false;    // strict expansion expected
    bool check_flux = false;      // 0 < -v_x(h), v_x(g) <= k3*1.05
    bool check_growth = false;    // width ceiling (needs rho k1 > 0)
    bool check_symmetry = false;

    double min_w = 0.0, max_w = 0.0, min_z = 0.0, max_z = 0.0;
    double min_w_preclamp = 0.0, min_z_preclamp = 0.0;
    double min_h_increment = std::numeric_limits<double>::infinity();
    double max_g_increment = -std::numeric_limits<double>::infinity();
    double max_speed_over_R = 0.0;
    double min_flux_right = std::numeric_limits<double>::infinity();
    double max_flux_right = 0.0;  // -v_x at h
    double min_flux_left = std::numeric_limits<double>::infinity();
    double max_flux_left = 0.0;   // v_x at g
    double max_width_over_growth = 0.0;
    double max_sym_front = 0.0;   // |g + h|
    double max_sym_w = 0.0, max_sym_z = 0.0;
    double frac_picard_converged = 1.0;
    double max_picard_ratio = 0.0;
    double final_dx_eff = 0.0;    // (h-g)/(N-1) at the horizon

    bool breached = false;
    std::string breach_detail;
};

struct Trajectory {
    std::vector<FrontRecord> fronts;
    std::vector<FieldSnapshot> snapshots;
    SimState final_state;
    AprioriBounds bounds;
    MonitorReport monitor;
    GammaReport gamma;
    double dt_initial = 0.0, dt_final = 0.0, dt_min = 0.0;
    long steps = 0;
};

/// Marches the coupled system from 0 to cfg.T, monitoring the a-priori
/// invariants at every accepted step. Auto dt re-selects every
/// cfg.recheck_every steps as the fronts accelerate.
Trajectory run(const ProblemConfig& cfg);

} // namespace freefront

#endif
