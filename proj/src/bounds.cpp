#include "freefront/bounds.hpp"
#include "freefront/error.hpp"
#include "freefront/transform.hpp"

#include <algorithm>
#include <cmath>

namespace freefront {

double AprioriBounds::R(double t) const {
    return mu * k3 + 2.0 * (h0 * rho * k1 + mu * k3) * std::exp(rho * k1 * t);
}

double AprioriBounds::growth_bound(double t) const {
    if (rho * k1 <= 0.0) return std::numeric_limits<double>::infinity();
    return 2.0 * (h0 + mu * k3 / (rho * k1)) * std::exp(rho * k1 * t);
}

namespace {

double trapz_profile(const std::function<double(double)>& f, double lo, double hi,
                     int n = 2001) {
    if (hi <= lo) return 0.0;
    const double h = (hi - lo) / (n - 1);
    double sum = 0.5 * (f(lo) + f(hi));
    for (int i = 1; i < n - 1; ++i) sum += f(lo + i * h);
    return sum * h;
}

} // namespace

AprioriBounds compute_bounds(const ProblemConfig& cfg, const KernelFloor& floor) {
    AprioriBounds b;
    b.mu = cfg.mu;
    b.rho = cfg.rho;
    b.h0 = cfg.h0;
    b.eps_bar = floor.eps_bar;
    b.delta0 = floor.delta0;
    b.rho_zero = cfg.rho == 0.0;
    b.mu_zero = cfg.mu == 0.0;

    const ReferenceGrid grid(cfg.N);
    const double delta = 1e-6 * cfg.h0;
    double lu0 = 0.0;
    for (int j = 0; j < grid.N; ++j) {
        const double x = cfg.h0 * grid.y[j];
        b.sup_u0 = std::max(b.sup_u0, std::abs(cfg.u0(x)));
        b.sup_v0 = std::max(b.sup_v0, std::abs(cfg.v0(x)));
        double dv;
        if (j == 0)
            dv = (cfg.v0(x + delta) - cfg.v0(x)) / delta;
        else if (j == grid.N - 1)
            dv = (cfg.v0(x) - cfg.v0(x - delta)) / delta;
        else
            dv = (cfg.v0(x + delta) - cfg.v0(x - delta)) / (2.0 * delta);
        b.sup_v0_prime = std::max(b.sup_v0_prime, std::abs(dv));
        if (j > 0) {
            const double xp = cfg.h0 * grid.y[j - 1];
            lu0 = std::max(lu0, std::abs(cfg.u0(x) - cfg.u0(xp)) / (x - xp));
        }
    }
    b.L_u0 = lu0;
    b.L_J = cfg.kernel.lipschitz_constant();

    b.k1 = std::max(b.sup_u0, cfg.reaction.k0);
    b.k2 = std::max(b.sup_v0, cfg.reaction.theta(b.k1));
    b.L = cfg.reaction.lipschitz(b.k1, b.k2);
    b.Lstar = cfg.reaction.lipschitz_x(b.k1, b.k2);
    b.k3 = std::max({1.0 / cfg.h0, std::sqrt(b.L / (2.0 * cfg.d2)),
                     b.sup_v0_prime / b.k2});

    // eps0 sits at the midpoint of the admissible interval (0, min(eps_bar, cap))
    double cap = std::numeric_limits<double>::infinity();
    if (cfg.rho > 0.0 && b.k1 > 0.0 && cfg.mu > 0.0)
        cap = 8.0 * cfg.mu * b.k3 / (cfg.rho * b.k1);
    b.eps0 = 0.5 * std::min(b.eps_bar, cap);  // mu = 0 flagged, fallback to eps_bar

    b.M = 2.0 * cfg.h0 + b.eps0 / 4.0;
    b.Rbar = cfg.mu * b.k3 + cfg.rho * b.k1 * b.M;
    const double denom = 4.0 * (2.0 * cfg.mu * b.k3 + cfg.rho * b.k1 * b.M);
    b.T0 = denom > 0.0 ? b.eps0 / denom : std::numeric_limits<double>::infinity();

    const double decay =
        std::isfinite(b.T0) ? std::exp(-(cfg.d1 + b.L) * b.T0) : 0.0;
    b.rho_c0 = (b.eps0 / 4.0) * b.delta0 * cfg.rho * decay *
               trapz_profile(cfg.u0, cfg.h0 - b.eps0 / 4.0, cfg.h0);
    b.rho_c0_star = (b.eps0 / 4.0) * b.delta0 * cfg.rho * decay *
                    trapz_profile(cfg.u0, -cfg.h0, -cfg.h0 + b.eps0 / 4.0);
    return b;
}

bool GammaReport::all_ok() const {
    return std::all_of(conditions.begin(), conditions.end(),
                       [](const GammaCondition& c) { return !c.checked || c.ok; });
}

GammaReport check_gamma_membership(const std::vector<FrontRecord>& history,
                                   const AprioriBounds& b, double T,
                                   double speed_slack) {
    GammaReport rep;
    if (history.empty()) return rep;
    rep.window_end = std::min({T, b.T0, history.back().t});

    const bool floors_apply = !b.rho_zero && b.rho_c0 > 0.0 && b.rho_c0_star > 0.0;
    GammaCondition hdot_floor{"rho_c0 <= hdot", floors_apply};
    GammaCondition hdot_ceil{"hdot <= Rbar", true};
    GammaCondition gdot_floor{"-Rbar <= gdot", true};
    GammaCondition gdot_ceil{"gdot <= -rho_c0_star", floors_apply};
    GammaCondition width{"h(T)-g(T) <= M", true};

    auto fail = [](GammaCondition& c, double t, double worst) {
        if (c.ok) c.first_violation_t = t;
        c.ok = false;
        c.worst = worst;
    };

    const double ceil_bound = b.Rbar * (1.0 + speed_slack);
    for (const auto& r : history) {
        if (r.t <= 0.0 || r.t > rep.window_end) continue;
        if (floors_apply && r.hdot < b.rho_c0) fail(hdot_floor, r.t, r.hdot);
        if (r.hdot > ceil_bound) fail(hdot_ceil, r.t, r.hdot);
        if (-r.gdot > ceil_bound) fail(gdot_floor, r.t, r.gdot);
        if (floors_apply && r.gdot > -b.rho_c0_star) fail(gdot_ceil, r.t, r.gdot);
    }

    // width is pinned at the end of the window
    const FrontRecord* last = &history.front();
    for (const auto& r : history)
        if (r.t <= rep.window_end) last = &r;
    width.worst = last->h - last->g;
    if (width.worst > b.M * (1.0 + 1e-9)) {
        width.ok = false;
        width.first_violation_t = last->t;
    }

    rep.conditions = {hdot_floor, hdot_ceil, gdot_floor, gdot_ceil, width};
    return rep;
}

} // namespace freefront
