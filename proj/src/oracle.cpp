#include "freefront/oracle.hpp"
#include "freefront/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace freefront {

namespace {

// Quadrature-built tail table: independent route to int_s^inf J.
class TailTable {
public:
    TailTable(const KernelSpec& k, int n = 20001) : a_(k.a), vals_(n, 0.0) {
        ds_ = a_ / (n - 1);
        for (int i = n - 2; i >= 0; --i) {
            const double s0 = i * ds_, s1 = (i + 1) * ds_;
            vals_[i] = vals_[i + 1] + 0.5 * (k(s0) + k(s1)) * ds_;
        }
    }

    double operator()(double s) const {
        if (s >= a_) return 0.0;
        if (s <= 0.0) return vals_[0];  // callers only pass s >= 0
        const double p = s / ds_;
        const int i = std::min(static_cast<int>(p), static_cast<int>(vals_.size()) - 2);
        const double f = p - i;
        return vals_[i] * (1.0 - f) + vals_[i + 1] * f;
    }

private:
    double a_, ds_;
    std::vector<double> vals_;
};

// v_x at a front from the Eulerian grid: quadratic through the front point
// (value 0) and the two nearest live nodes. Nodes within half a cell of the
// front are cut cells holding 0 and are skipped.
double front_gradient(const std::vector<double>& v, double dx, double x0,
                      double front, int ilo, int ihi, bool right) {
    int i1, i2;  // i1 nearest the front
    if (right) {
        i1 = ihi;
        if (front - (x0 + ihi * dx) < 0.5 * dx) --i1;
        i2 = i1 - 1;
    } else {
        i1 = ilo;
        if ((x0 + ilo * dx) - front < 0.5 * dx) ++i1;
        i2 = i1 + 1;
    }
    const double x1 = x0 + i1 * dx, x2 = x0 + i2 * dx;
    const double v1 = v[i1], v2 = v[i2];
    // derivative at x = front of the quadratic through (front,0),(x1,v1),(x2,v2)
    return v1 * (front - x2) / ((x1 - x2) * (x1 - front)) +
           v2 * (front - x1) / ((x2 - x1) * (x2 - front));
}

} // namespace

Trajectory oracle_run(const ProblemConfig& cfg, OracleConfig ocfg) {
    const KernelFloor floor = validate_kernel(cfg.kernel, cfg.h0, true);
    const AprioriBounds b = compute_bounds(cfg, floor);

    if (ocfg.X <= 0.0) {
        const double gb = b.growth_bound(cfg.T);
        ocfg.X = std::isfinite(gb) ? 0.6 * gb  // 1.2 * half-width bound
                                   : 1.2 * (cfg.h0 + cfg.mu * b.k3 * cfg.T);
        ocfg.X = std::max(ocfg.X, cfg.h0 + cfg.kernel.a);
    }
    if (ocfg.Nx < 9 || ocfg.Nx % 2 == 0)
        throw ConfigError("oracle Nx must be odd and >= 9");
    const int nx = ocfg.Nx;
    const double dx = 2.0 * ocfg.X / (nx - 1);
    const double x0 = -ocfg.X;

    if (ocfg.dt <= 0.0)
        ocfg.dt = 0.4 * std::min(dx * dx / (2.0 * cfg.d2), 1.0 / (cfg.d1 + b.L));
    const double dt_limit =
        0.4 * std::min(dx * dx / (2.0 * cfg.d2), 1.0 / (cfg.d1 + b.L));
    if (ocfg.dt > dt_limit * (1.0 + 1e-12))
        throw Error(ErrorKind::CFLViolated, "oracle dt exceeds its explicit limit");

    const TailTable tail(cfg.kernel);
    const int ksup = std::min(nx - 1, static_cast<int>(std::ceil(cfg.kernel.a / dx)));
    std::vector<double> row(ksup + 1);
    for (int d = 0; d <= ksup; ++d) row[d] = cfg.kernel(d * dx);

    std::vector<double> u(nx, 0.0), v(nx, 0.0);
    for (int i = 0; i < nx; ++i) {
        const double x = x0 + i * dx;
        if (std::abs(x) < cfg.h0) {
            u[i] = std::max(0.0, cfg.u0(x));
            v[i] = std::max(0.0, cfg.v0(x));
        }
    }

    double g = -cfg.h0, h = cfg.h0, t = 0.0;

    Trajectory traj;
    traj.bounds = b;

    auto active_range = [&](int& ilo, int& ihi) {
        ilo = static_cast<int>(std::floor((g - x0) / dx)) + 1;
        ihi = static_cast<int>(std::ceil((h - x0) / dx)) - 1;
        while (x0 + ilo * dx <= g) ++ilo;
        while (x0 + ihi * dx >= h) --ihi;
    };

    auto speeds = [&](int ilo, int ihi) {
        FrontSpeeds s;
        s.vx_right = front_gradient(v, dx, x0, h, ilo, ihi, true);
        s.vx_left = front_gradient(v, dx, x0, g, ilo, ihi, false);
        double tr = 0.0, tl = 0.0;
        for (int i = ilo; i <= ihi; ++i) {
            const double x = x0 + i * dx;
            tr += tail(h - x) * u[i];
            tl += tail(x - g) * u[i];
        }
        s.hdot = -cfg.mu * s.vx_right + cfg.rho * tr * dx;
        s.gdot = -cfg.mu * s.vx_left - cfg.rho * tl * dx;
        return s;
    };

    auto snapshot = [&](const FrontPair& fp) {
        FieldSnapshot snap;
        snap.t = t;
        snap.fronts = fp;
        snap.x.resize(nx);
        for (int i = 0; i < nx; ++i) snap.x[i] = x0 + i * dx;
        snap.w = u;
        snap.z = v;
        traj.snapshots.push_back(std::move(snap));
    };

    {
        int ilo, ihi;
        active_range(ilo, ihi);
        const FrontSpeeds s0 = speeds(ilo, ihi);
        traj.fronts.push_back(FrontRecord{0.0, g, h, s0.gdot, s0.hdot});
        snapshot(FrontPair{g, h, s0.gdot, s0.hdot});
    }
    traj.dt_initial = traj.dt_min = ocfg.dt;

    const int snap_total = std::max(2, cfg.snapshots);
    int next_snap = 1;
    std::vector<double> un(nx, 0.0), vn(nx, 0.0);

    while (t < cfg.T * (1.0 - 1e-14)) {
        const double dt = std::min(ocfg.dt, cfg.T - t);
        int ilo, ihi;
        active_range(ilo, ihi);
        if (ilo < 2 || ihi > nx - 3)
            throw Error(ErrorKind::WindowExceeded,
                        "front reached the Eulerian window edge", t);

        const FrontSpeeds sp = speeds(ilo, ihi);

        std::fill(un.begin(), un.end(), 0.0);
        std::fill(vn.begin(), vn.end(), 0.0);
        bool u_live = false;
        for (int i = ilo; i <= ihi && !u_live; ++i) u_live = u[i] != 0.0;

        // v nodes within half a cell of a front are cut cells pinned to 0;
        // the last live node uses a one-sided stencil reaching the true front
        const int vhi = (h - (x0 + ihi * dx) < 0.5 * dx) ? ihi - 1 : ihi;
        const int vlo = ((x0 + ilo * dx) - g < 0.5 * dx) ? ilo + 1 : ilo;
        const double dr = h - (x0 + vhi * dx);
        const double dl = (x0 + vlo * dx) - g;

        for (int i = ilo; i <= ihi; ++i) {
            const double x = x0 + i * dx;
            if (u_live) {  // f1 vanishes at u = 0, so zero u stays zero
                double conv = 0.0;
                const int jlo = std::max(ilo, i - ksup), jhi = std::min(ihi, i + ksup);
                for (int j = jlo; j <= jhi; ++j) conv += row[std::abs(i - j)] * u[j];
                conv *= dx;
                un[i] = u[i] + dt * (cfg.d1 * (conv - u[i]) +
                                     cfg.reaction.f1(t, x, u[i], v[i]));
            }
            if (i < vlo || i > vhi) continue;  // cut cell, stays 0
            double lap;
            if (i == vlo && i == vhi)
                lap = -2.0 * v[i] / (dl * dr);
            else if (i == vhi)
                lap = 2.0 * (v[i - 1] / (dx * (dx + dr)) - v[i] / (dx * dr));
            else if (i == vlo)
                lap = 2.0 * (v[i + 1] / (dx * (dx + dl)) - v[i] / (dx * dl));
            else
                lap = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (dx * dx);
            vn[i] = v[i] + dt * (cfg.d2 * lap + cfg.reaction.f2(t, x, u[i], v[i]));
        }
        for (int i = ilo; i <= ihi; ++i) {
            if (un[i] < -1e-10 || vn[i] < -1e-10)
                throw Error(ErrorKind::NegativeOvershoot, "oracle field went negative",
                            t, i);
            if (un[i] < 0.0) un[i] = 0.0;
            if (vn[i] < 0.0) vn[i] = 0.0;
        }
        u.swap(un);
        v.swap(vn);
        g += dt * sp.gdot;
        h += dt * sp.hdot;
        t += dt;

        // nodes swept outside the habitat stay zero
        int nlo, nhi;
        active_range(nlo, nhi);
        for (int i = 0; i < nlo; ++i) u[i] = v[i] = 0.0;
        for (int i = nhi + 1; i < nx; ++i) u[i] = v[i] = 0.0;

        const FrontSpeeds ns = speeds(nlo, nhi);
        traj.fronts.push_back(FrontRecord{t, g, h, ns.gdot, ns.hdot});

        const double snap_dt = cfg.T / (snap_total - 1);
        while (next_snap < snap_total && t >= next_snap * snap_dt * (1.0 - 1e-14)) {
            if (traj.snapshots.back().t != t)
                snapshot(FrontPair{g, h, ns.gdot, ns.hdot});
            ++next_snap;
        }
        ++traj.steps;
    }
    if (traj.snapshots.back().t != t) {
        int nlo, nhi;
        active_range(nlo, nhi);
        const FrontSpeeds ns = speeds(nlo, nhi);
        snapshot(FrontPair{g, h, ns.gdot, ns.hdot});
    }

    traj.dt_final = ocfg.dt;
    traj.final_state.t = t;
    traj.final_state.fronts = traj.snapshots.back().fronts;
    traj.final_state.w = u;
    traj.final_state.z = v;
    return traj;
}

double sample_snapshot(const FieldSnapshot& snap, int which, double x) {
    if (x <= snap.fronts.g || x >= snap.fronts.h) return 0.0;
    const std::vector<double>& xs = snap.x;
    const Field& f = which == 0 ? snap.w : snap.z;
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin() || it == xs.end()) return 0.0;
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double x1 = xs[i - 1], x2 = xs[i];
    const double f1 = f[i - 1], f2 = f[i];
    return f1 + (f2 - f1) * (x - x1) / (x2 - x1);
}

FieldDiff compare_snapshots(const FieldSnapshot& a, const FieldSnapshot& b,
                            int npoints) {
    const double lo = std::max(a.fronts.g, b.fronts.g);
    const double hi = std::min(a.fronts.h, b.fronts.h);
    FieldDiff d;
    for (int i = 0; i < npoints; ++i) {
        const double x = lo + (hi - lo) * i / (npoints - 1);
        d.max_du = std::max(d.max_du, std::abs(sample_snapshot(a, 0, x) -
                                               sample_snapshot(b, 0, x)));
        d.max_dv = std::max(d.max_dv, std::abs(sample_snapshot(a, 1, x) -
                                               sample_snapshot(b, 1, x)));
    }
    return d;
}

ComparisonReport comparison_test(const ComparisonCase& cs) {
    std::mt19937 rng(cs.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const double sh = 0.5 * unit(rng);  // prescribed front speeds (h up, g down)
    const double sg = 0.5 * unit(rng);
    const double amp1 = 0.2 + 0.8 * unit(rng);
    const double amp2 = 0.8 * unit(rng);

    // frozen coefficient field rho(x) in [-1, 1], piecewise linear
    const int nknots = 21;
    const double xspan = cs.h0 + std::max(sh, sg) * cs.T + 1.0;
    std::vector<double> knots(nknots);
    for (double& kv : knots) kv = 2.0 * unit(rng) - 1.0;
    auto rho_field = [knots, xspan](double x) {
        const double p = (x + xspan) / (2.0 * xspan) * (nknots - 1);
        const int i = std::clamp(static_cast<int>(p), 0, nknots - 2);
        const double f = p - i;
        return knots[i] * (1.0 - f) + knots[i + 1] * f;
    };
    const ReactionModel reaction = ReactionModel::custom(
        [rho_field](double, double x, double u, double) { return rho_field(x) * u; },
        [](double, double, double, double) { return 0.0; }, 1.0, 1.0,
        [](double) { return 1.0; }, [](double, double) { return 1.0; }, nullptr);

    const ReferenceGrid grid(cs.N);
    const KernelSpec kernel = KernelSpec::tent(1.0);
    const StepContext ctx{grid, kernel, reaction, cs.d1, 1.0, 1.0, 1.0};

    Field psi(cs.N, 0.0), psi_t(cs.N, 0.0), zero(cs.N, 0.0);
    for (int j = 1; j < cs.N - 1; ++j) {
        const double x = cs.h0 * grid.y[j];
        const double bump = std::cos(M_PI * x / (2.0 * cs.h0));
        const double extra = 1.0 - (x / cs.h0) * (x / cs.h0);
        psi[j] = amp1 * bump;
        psi_t[j] = amp1 * bump + amp2 * extra;
    }

    auto front_at = [&](double t) {
        return FrontPair{-cs.h0 - sg * t, cs.h0 + sh * t, -sg, sh};
    };
    const double mz0 = max_zeta_fd(front_at(0.0), front_at(1e-6), 1e-6);
    const double dt = std::min(cs.T / cs.steps, 0.45 / (cs.d1 + 1.0 + mz0 / grid.dy));

    ComparisonReport rep;
    double t = 0.0;
    for (int s = 0; s < cs.steps; ++s) {
        const FrontPair fp = front_at(t);
        const FrontPair fp_next = front_at(t + dt);
        psi = step_u_explicit(ctx, fp, fp_next, psi, zero, t, dt);
        psi_t = step_u_explicit(ctx, fp, fp_next, psi_t, zero, t, dt);
        t += dt;
        for (int j = 0; j < cs.N; ++j) {
            const double gap = psi_t[j] - psi[j];
            rep.min_psi = std::min(rep.min_psi, psi[j]);
            rep.min_gap = std::min(rep.min_gap, gap);
            if ((psi[j] < -1e-13 || gap < -1e-13) && rep.ok) {
                rep.ok = false;
                rep.first_violation_t = t;
                rep.first_violation_node = j;
            }
        }
    }
    return rep;
}

namespace {

double richardson(double d12, double d23) {
    if (d12 <= 0.0 || d23 <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    return std::log2(d12 / d23);
}

// L-inf difference of two final fields on the coarser node set
double field_diff(const Field& coarse, const Field& fine) {
    const std::size_t nc = coarse.size(), nf = fine.size();
    if (nc == nf) {
        double d = 0.0;
        for (std::size_t j = 0; j < nc; ++j)
            d = std::max(d, std::abs(coarse[j] - fine[j]));
        return d;
    }
    if (nf != 2 * nc - 1)
        throw ConfigError("refinement levels must have equal or nested grids");
    double d = 0.0;
    for (std::size_t j = 0; j < nc; ++j)
        d = std::max(d, std::abs(coarse[j] - fine[2 * j]));
    return d;
}

} // namespace

ConvergenceReport convergence_study(const ProblemConfig& cfg,
                                    const std::vector<RefinementLevel>& levels) {
    if (levels.size() < 3)
        throw ConfigError("convergence study needs at least 3 levels");

    ConvergenceReport rep;
    rep.levels = levels;
    std::vector<SimState> finals;
    for (const RefinementLevel& lv : levels) {
        ProblemConfig c = cfg;
        c.dt = lv.dt;
        c.dt_auto = false;
        c.N = lv.N;
        c.snapshots = 2;
        Trajectory tr = run(c);
        finals.push_back(std::move(tr.final_state));
        rep.h_final.push_back(finals.back().fronts.h);
    }

    const std::size_t k = finals.size();
    rep.dh12 = std::abs(rep.h_final[k - 3] - rep.h_final[k - 2]);
    rep.dh23 = std::abs(rep.h_final[k - 2] - rep.h_final[k - 1]);
    rep.dw12 = field_diff(finals[k - 3].w, finals[k - 2].w);
    rep.dw23 = field_diff(finals[k - 2].w, finals[k - 1].w);
    rep.dz12 = field_diff(finals[k - 3].z, finals[k - 2].z);
    rep.dz23 = field_diff(finals[k - 2].z, finals[k - 1].z);
    rep.p_h = richardson(rep.dh12, rep.dh23);
    rep.p_w = richardson(rep.dw12, rep.dw23);
    rep.p_z = richardson(rep.dz12, rep.dz23);
    auto mono = [](double d12, double d23) {
        return d23 < d12 || (d12 == 0.0 && d23 == 0.0);
    };
    rep.monotone = mono(rep.dh12, rep.dh23) && mono(rep.dw12, rep.dw23) &&
                   mono(rep.dz12, rep.dz23);
    return rep;
}

std::vector<RefinementLevel> make_levels(const ProblemConfig& cfg, int nlevels,
                                         bool refine_space) {
    if (nlevels < 3) throw ConfigError("need at least 3 levels");
    double dt0 = cfg.dt;
    if (cfg.dt_auto) {
        ProblemConfig probe = cfg;
        probe.snapshots = 2;
        Trajectory tr = run(probe);
        dt0 = 0.9 * tr.dt_min;
    }
    std::vector<RefinementLevel> levels;
    int n = cfg.N;
    double dt = dt0;
    for (int i = 0; i < nlevels; ++i) {
        levels.push_back(RefinementLevel{dt, n});
        dt *= 0.5;
        if (refine_space) n = 2 * n - 1;
    }
    return levels;
}

} // namespace freefront
