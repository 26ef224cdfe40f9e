#ifndef FREEFRONT_ORACLE_HPP
#define FREEFRONT_ORACLE_HPP

#include "freefront/stepper.hpp"

#include <limits>
#include <vector>

namespace freefront {

/// Fixed Eulerian window for the cross-check solver.
struct OracleConfig {
    double X = 0.0;   // half-width; <= 0 derives from the growth bound * 1.2
    int Nx = 2001;    // odd node count on [-X, X]
    double dt = 0.0;  // <= 0 selects 0.4*min(dx^2/(2 d2), 1/(d1 + L))
};

/// Fully explicit reference solver in physical coordinates. Fields live on
/// the fixed window (zero outside the habitat), the nonlocal term is a
/// direct quadrature, the tail mass comes from its own quadrature table,
/// and v_x at the fronts is extracted from the Eulerian grid. Shares only
/// kernel/reaction evaluation with the main solver.
Trajectory oracle_run(const ProblemConfig& cfg, OracleConfig ocfg);

/// Piecewise-linear sample of a snapshot field at physical x (0 outside
/// the habitat). `which` = 0 for u/w, 1 for v/z.
double sample_snapshot(const FieldSnapshot& snap, int which, double x);

/// Pointwise comparison of two snapshots over the intersection of their
/// habitats at `npoints` uniform probes.
struct FieldDiff {
    double max_du = 0.0, max_dv = 0.0;
};
FieldDiff compare_snapshots(const FieldSnapshot& a, const FieldSnapshot& b,
                            int npoints = 2001);

/// Discrete comparison-principle case: two ordered initial bumps evolved by
/// step_u_explicit under prescribed expanding fronts, with the reaction
/// replaced by a frozen bounded coefficient field rho(x)*psi.
struct ComparisonCase {
    unsigned seed = 0;
    int N = 61;
    double h0 = 1.0;
    double d1 = 1.0;
    double T = 0.5;
    int steps = 200;
};

struct ComparisonReport {
    bool ok = true;
    double min_psi = 0.0;       // most negative psi node seen
    double min_gap = 0.0;       // most negative (psi_tilde - psi)
    double first_violation_t = std::numeric_limits<double>::quiet_NaN();
    int first_violation_node = -1;
};

/// Asserts psi >= -1e-13 and psi_tilde - psi >= -1e-13 at every step.
ComparisonReport comparison_test(const ComparisonCase& cs);

/// One grid refinement level.
struct RefinementLevel {
    double dt = 0.0;
    int N = 0;
};

struct ConvergenceReport {
    std::vector<RefinementLevel> levels;
    std::vector<double> h_final;
    double p_h = std::numeric_limits<double>::quiet_NaN();
    double p_w = std::numeric_limits<double>::quiet_NaN();
    double p_z = std::numeric_limits<double>::quiet_NaN();
    double dh12 = 0.0, dh23 = 0.0;
    double dw12 = 0.0, dw23 = 0.0;
    double dz12 = 0.0, dz23 = 0.0;
    bool monotone = true;  // false = orders unreliable, reported not fatal
};

/// Richardson orders for h(T) and the L-inf field differences across the
/// levels (coarse to fine). Needs at least 3 levels; node sets must be
/// equal or nested (N -> 2N-1).
ConvergenceReport convergence_study(const ProblemConfig& cfg,
                                    const std::vector<RefinementLevel>& levels);

/// Builds a standard ladder: base dt from the config (a probe run picks
/// 0.9x the smallest auto-selected step when grid.dt = auto), halved per
/// level; N fixed, or nested-doubled when `refine_space`.
std::vector<RefinementLevel> make_levels(const ProblemConfig& cfg, int nlevels,
                                         bool refine_space);

} // namespace freefront

#endif
