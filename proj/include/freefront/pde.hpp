#ifndef FREEFRONT_PDE_HPP
#define FREEFRONT_PDE_HPP

#include "freefront/kernels.hpp"
#include "freefront/reactions.hpp"
#include "freefront/transform.hpp"

#include <vector>

namespace freefront {

/// Node values on the reference grid; boundary entries stay 0.
using Field = std::vector<double>;

enum class Side { left, right };

/// Everything the single-equation steppers share for one run.
struct StepContext {
    const ReferenceGrid& grid;
    const KernelSpec& kernel;
    const ReactionModel& reaction;
    double d1 = 1.0;
    double d2 = 1.0;
    double L = 0.0;     // reaction Lipschitz bound entering the stability limit
    double theta = 1.0; // v-step weight in [1/2, 1]
};

/// int_g^h J(x_i - x') u(x') dx' at every node, by trapezoid on the shared
/// grid. J is evaluated once per node-distance magnitude, which keeps the
/// discrete operator exactly even under mirror symmetry.
Field nonlocal_operator(const FrontPair& fp, const Field& w, const KernelSpec& k,
                        const ReferenceGrid& grid);

/// Largest |zeta| over [-1, 1] for the finite-difference front speeds
/// (hd, gd) = (next - cur)/dt measured against the width of `fp`.
double max_zeta_fd(const FrontPair& fp, const FrontPair& fp_next, double dt);

/// Explicit stability limit of the u-step: dt <= 0.9/(d1 + L + max|zeta|/dy).
double u_step_dt_limit(const StepContext& ctx, double max_zeta);

/// One explicit Euler step of the transformed nonlocal equation
///   w_t = d1 (J*w - w) + f1(t, x, w, z) + zeta w_y      (upwind advection).
/// Boundary nodes are forced to 0; negatives in [-1e-13, 0) clamp to 0 and
/// anything below -1e-10 aborts with NegativeOvershoot.
Field step_u_explicit(const StepContext& ctx, const FrontPair& fp,
                      const FrontPair& fp_next, const Field& w, const Field& z,
                      double t, double dt, double* min_preclamp = nullptr);

/// One theta-scheme step of the transformed parabolic equation
///   z_t = d2 xi z_yy + zeta z_y + f2(t, x, w, z),
/// with the operator built at the time-theta front pair, central advection
/// switching to upwind where the cell Peclet number exceeds 2, and the
/// reaction explicit at the old level. Tridiagonal solve per step.
Field step_v_implicit(const StepContext& ctx, const FrontPair& fp,
                      const FrontPair& fp_next, const Field& z, const Field& w,
                      double t, double dt, double* min_preclamp = nullptr);

/// Physical v_x at a front: one-sided second-order z_y at y = +-1 times
/// the chain-rule factor 2/(h - g).
double boundary_gradient(const Field& z, const FrontPair& fp, Side side,
                         const ReferenceGrid& grid);

/// Thomas algorithm; `lower[0]` and `upper[n-1]` are ignored.
std::vector<double> solve_tridiagonal(std::vector<double> lower,
                                      std::vector<double> diag,
                                      std::vector<double> upper,
                                      std::vector<double> rhs);

} // namespace freefront

#endif
