#ifndef FREEFRONT_REACTIONS_HPP
#define FREEFRONT_REACTIONS_HPP

#include <functional>
#include <string>

namespace freefront {

enum class ReactionKind { competition, prey_predator, custom };

const char* reaction_kind_name(ReactionKind k);
ReactionKind reaction_kind_from_name(const std::string& name);

using ReactionFn = std::function<double(double t, double x, double u, double v)>;

/// Growth terms f1 (for the nonlocal species) and f2 (for the local one),
/// plus the structural constants the a-priori bounds need.
///
/// Built-ins:
///   competition    f1 = u(a - u - b v),  f2 = v(1 - v - c u)
///   prey_predator  f1 = u(a - u - b v),  f2 = v(1 - v + c u)
struct ReactionModel {
    ReactionKind kind = ReactionKind::competition;
    double a = 1.0, b = 1.0, c = 1.0;  // built-in parameters

    ReactionFn f1, f2;
    double k0 = 1.0;  // f1 < 0 above this density
    double r = 1.0;   // f1 <= r*u below k0
    std::function<double(double)> theta;                  // Theta(k)
    std::function<double(double, double)> lipschitz;      // L(c1, c2)
    std::function<double(double, double)> lipschitz_x;    // L*(c1, c2)

    static ReactionModel competition(double a, double b, double c);
    static ReactionModel prey_predator(double a, double b, double c);
    static ReactionModel custom(ReactionFn f1, ReactionFn f2, double k0, double r,
                                std::function<double(double)> theta,
                                std::function<double(double, double)> lipschitz,
                                std::function<double(double, double)> lipschitz_x);
    /// All-zero reactions; valid for degenerate test problems only.
    static ReactionModel none();
};

/// Evaluates f1 or f2; rejects negative densities.
double evaluate_f(const ReactionModel& m, int which, double t, double x,
                  double u, double v);

struct ReactionReport {
    bool passed = false;
    double k0 = 0.0, r = 0.0, theta_k1 = 0.0;
    double worst_f1_above_k0 = 0.0;  // max of f1 over the u > k0 samples
    double worst_f2_above_theta = 0.0;
    std::string note;
};

/// Samples the hypothesis conditions: zero lines, f1 < 0 for u > k0,
/// f1 <= r*u on (0, k0], f2 < 0 for v >= Theta(k)(1 + 1e-6).
/// (u,v) on a 101x101 grid over [0, 2*k1_probe]^2 (plus a v-band above
/// Theta for the f2 condition), (t,x) on an 11x11 grid over [0,1]x[-1,1].
ReactionReport validate_reaction(const ReactionModel& m, double k1_probe);

/// Sampled Lipschitz estimate for custom models: max partial difference
/// quotient over a 501x501 grid on [0,c1]x[0,c2], times a 1.1 safety factor.
double sampled_lipschitz(const ReactionFn& f, double c1, double c2);

} // namespace freefront

#endif
