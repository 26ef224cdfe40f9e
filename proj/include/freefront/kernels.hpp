#ifndef FREEFRONT_KERNELS_HPP
#define FREEFRONT_KERNELS_HPP

#include <functional>
#include <string>

namespace freefront {

enum class KernelFamily { uniform, tent, truncated_gaussian, custom };

const char* kernel_family_name(KernelFamily f);
KernelFamily kernel_family_from_name(const std::string& name);

/// A compactly supported dispersal kernel J on [-a, a].
///
/// Built-in families are even by construction and integrate to 1:
///   uniform             J(x) = 1/(2a)
///   tent                J(x) = (1 - |x|/a)/a
///   truncated_gaussian  J(x) = C (exp(-x^2/(2 s^2)) - exp(-a^2/(2 s^2)))
/// The Gaussian is shifted to vanish at the cutoff before renormalizing,
/// so every non-uniform family is Lipschitz on all of R. The uniform
/// family jumps at +-a and is only admitted when the caller opts in.
struct KernelSpec {
    KernelFamily family = KernelFamily::uniform;
    double a = 1.0;      // support radius
    double sigma = 0.0;  // truncated_gaussian only
    std::function<double(double)> density;  // custom only; evaluated on [-a, a]

    double operator()(double x) const;

    /// Lipschitz on all of R? (uniform and discontinuous customs are not)
    bool lipschitz() const;

    /// Interior Lipschitz constant of J; informational, not used by the solver.
    double lipschitz_constant() const;

    static KernelSpec uniform(double a);
    static KernelSpec tent(double a);
    static KernelSpec truncated_gaussian(double a, double sigma);
    static KernelSpec custom(double a, std::function<double(double)> density,
                             bool lipschitz_on_R = false);

private:
    double norm_ = 0.0;       // truncated_gaussian normalizer C
    double shift_ = 0.0;      // exp(-a^2/(2 sigma^2))
    bool custom_lipschitz_ = false;
};

/// Positivity floor near the origin: J > delta0 on (-eps_bar, eps_bar).
struct KernelFloor {
    double eps_bar = 0.0;
    double delta0 = 0.0;
};

/// Checks unit mass (trapezoid, 1e5 panels, 1e-10), symmetry, nonnegativity,
/// J(0) > 0, and the Lipschitz requirement unless `allow_nonlipschitz`.
/// Returns the floor with eps_bar = min(a/2, h0/8) and delta0 = 0.99 times
/// the minimum of J over a 1001-point grid on [-eps_bar, eps_bar].
KernelFloor validate_kernel(const KernelSpec& k, double h0,
                            bool allow_nonlipschitz = false);

/// Tail mass  J(s) = int_s^inf J(r) dr.  Closed form per family; custom
/// kernels fall back to fine-grid quadrature.
double tail_mass(const KernelSpec& k, double s);

/// Trapezoid quadrature of J over [-a, a] with `panels` panels (Kahan sum).
double kernel_mass_trapezoid(const KernelSpec& k, long panels = 100000);

} // namespace freefront

#endif
