#include "freefront/stepper.hpp"
#include "freefront/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace freefront {

FrontSpeeds front_speeds(const FrontPair& fp, const Field& w, const Field& z,
                         const KernelSpec& k, const ReferenceGrid& grid,
                         double mu, double rho) {
    FrontSpeeds s;
    s.vx_right = boundary_gradient(z, fp, Side::right, grid);
    s.vx_left = boundary_gradient(z, fp, Side::left, grid);

    const double scale = 0.5 * fp.width();
    double tail_r = 0.0, tail_l = 0.0;
    for (int j = 0; j < grid.N; ++j) {
        const double x = phys_of_ref(fp, grid.y[j]);
        tail_r += grid.weight(j) * tail_mass(k, fp.h - x) * w[j];
        tail_l += grid.weight(j) * tail_mass(k, x - fp.g) * w[j];
    }
    s.hdot = -mu * s.vx_right + rho * scale * tail_r;
    s.gdot = -mu * s.vx_left - rho * scale * tail_l;
    return s;
}

SimState advance_step(const StepContext& ctx, const SimState& s, double dt,
                      double mu, double rho, double picard_tol, int picard_max) {
    double gd = s.fronts.gdot;
    double hd = s.fronts.hdot;

    Field w_next, z_next;
    FrontPair fp_cand;
    double min_w_pre = 0.0, min_z_pre = 0.0;
    double res = 0.0, res_prev = 0.0;
    double max_ratio = std::numeric_limits<double>::quiet_NaN();
    bool converged = false;
    int grow_streak = 0;
    int iters = 0;

    for (int k = 1; k <= picard_max; ++k) {
        fp_cand = FrontPair{s.fronts.g + dt * gd, s.fronts.h + dt * hd, gd, hd};
        w_next = step_u_explicit(ctx, s.fronts, fp_cand, s.w, s.z, s.t, dt, &min_w_pre);
        z_next = step_v_implicit(ctx, s.fronts, fp_cand, s.z, s.w, s.t, dt, &min_z_pre);
        const FrontSpeeds ns = front_speeds(fp_cand, w_next, z_next, ctx.kernel,
                                            ctx.grid, mu, rho);
        // change the next candidate pair would make
        res = dt * std::max(std::abs(ns.gdot - gd), std::abs(ns.hdot - hd));
        iters = k;
        if (k >= 2 && res_prev > 0.0) {
            const double ratio = res / res_prev;
            max_ratio = std::isnan(max_ratio) ? ratio : std::max(max_ratio, ratio);
            if (res > res_prev) {
                if (++grow_streak >= 3)
                    throw Error(ErrorKind::PicardDiverged,
                                "residual grew 3 straight sweeps (res = " +
                                    std::to_string(res) + ")", s.t);
            } else {
                grow_streak = 0;
            }
        }
        res_prev = res;
        gd = ns.gdot;
        hd = ns.hdot;
        if (res < picard_tol * dt) {
            converged = true;
            break;
        }
    }

    SimState out;
    out.t = s.t + dt;
    out.fronts = FrontPair{fp_cand.g, fp_cand.h, gd, hd};
    out.w = std::move(w_next);
    out.z = std::move(z_next);
    out.picard_iters = iters;
    out.residual = res / dt;
    out.picard_converged = converged;
    out.picard_max_ratio = max_ratio;
    out.min_w_preclamp = min_w_pre;
    out.min_z_preclamp = min_z_pre;
    return out;
}

namespace {

struct Extremes {
    double mn, mx;
};

Extremes field_extremes(const Field& f) {
    Extremes e{f[0], f[0]};
    for (double v : f) {
        e.mn = std::min(e.mn, v);
        e.mx = std::max(e.mx, v);
    }
    return e;
}

double asymmetry(const Field& f) {
    double a = 0.0;
    const int n = static_cast<int>(f.size());
    for (int j = 0; j < n / 2; ++j)
        a = std::max(a, std::abs(f[j] - f[n - 1 - j]));
    return a;
}

[[noreturn]] void breach(MonitorReport& mon, const std::string& what, double t) {
    mon.breached = true;
    mon.breach_detail = what;
    std::ostringstream os;
    os << what << " at t = " << t;
    throw Error(ErrorKind::InvariantBreached, os.str(), t);
}

} // namespace

Trajectory run(const ProblemConfig& cfg) {
    const ReferenceGrid grid(cfg.N);
    // admission of the kernel was decided when the config was built
    const KernelFloor floor = validate_kernel(cfg.kernel, cfg.h0, true);
    const AprioriBounds b = compute_bounds(cfg, floor);
    const StepContext ctx{grid, cfg.kernel, cfg.reaction, cfg.d1, cfg.d2, b.L,
                          cfg.theta};

    SimState s;
    s.w.resize(grid.N);
    s.z.resize(grid.N);
    for (int j = 0; j < grid.N; ++j) {
        const double x = cfg.h0 * grid.y[j];
        s.w[j] = cfg.u0(x);
        s.z[j] = cfg.v0(x);
        if (s.w[j] < 0.0 || s.z[j] < 0.0)
            throw ConfigError("initial data negative at x = " + std::to_string(x));
    }
    const double amp_tol = 1e-12 * std::max({1.0, b.sup_u0, b.sup_v0});
    if (std::abs(s.w[0]) > amp_tol || std::abs(s.w[grid.N - 1]) > amp_tol ||
        std::abs(s.z[0]) > amp_tol || std::abs(s.z[grid.N - 1]) > amp_tol)
        throw ConfigError("initial profiles must vanish at +-h0");
    s.w[0] = s.w[grid.N - 1] = 0.0;
    s.z[0] = s.z[grid.N - 1] = 0.0;

    s.fronts = FrontPair{-cfg.h0, cfg.h0, 0.0, 0.0};
    {
        const FrontSpeeds sp0 =
            front_speeds(s.fronts, s.w, s.z, cfg.kernel, grid, cfg.mu, cfg.rho);
        s.fronts.gdot = sp0.gdot;
        s.fronts.hdot = sp0.hdot;
    }

    Trajectory traj;
    traj.bounds = b;
    MonitorReport& mon = traj.monitor;
    mon.check_fronts = (cfg.mu > 0.0 && b.sup_v0 > 0.0) ||
                       (cfg.rho > 0.0 && b.sup_u0 > 0.0);
    mon.check_flux = b.sup_v0 > 0.0;
    mon.check_growth = cfg.rho > 0.0 && b.k1 > 0.0;
    mon.check_symmetry = cfg.symmetric_expected;

    auto record = [&](const SimState& st) {
        traj.fronts.push_back(FrontRecord{st.t, st.fronts.g, st.fronts.h,
                                          st.fronts.gdot, st.fronts.hdot,
                                          st.picard_iters, st.residual,
                                          st.picard_converged, st.picard_max_ratio});
    };
    auto snapshot = [&](const SimState& st) {
        FieldSnapshot snap;
        snap.t = st.t;
        snap.fronts = st.fronts;
        snap.y = grid.y;
        snap.x.resize(grid.N);
        for (int j = 0; j < grid.N; ++j) snap.x[j] = phys_of_ref(st.fronts, grid.y[j]);
        snap.w = st.w;
        snap.z = st.z;
        traj.snapshots.push_back(std::move(snap));
    };

    record(s);
    snapshot(s);
    {
        const Extremes ew = field_extremes(s.w), ez = field_extremes(s.z);
        mon.min_w = ew.mn, mon.max_w = ew.mx;
        mon.min_z = ez.mn, mon.max_z = ez.mx;
    }

    const double k1_cap = b.k1 * (1.0 + 1e-6);
    const double k2_cap = b.k2 * (1.0 + 1e-6);
    const double k3_cap = b.k3 * 1.05;
    const double dt_min = 1e-12 * cfg.T;

    auto auto_dt = [&](const SimState& st) {
        const double mz = 2.0 *
                          std::max(std::abs(st.fronts.hdot), std::abs(st.fronts.gdot)) /
                          st.fronts.width();
        return 0.45 / (cfg.d1 + b.L + mz / grid.dy);
    };

    double dt = cfg.dt_auto ? auto_dt(s) : cfg.dt;
    traj.dt_initial = dt;
    traj.dt_min = dt;

    const int snap_total = std::max(2, cfg.snapshots);
    int next_snap = 1;  // index 0 recorded above

    long step = 0;
    while (s.t < cfg.T * (1.0 - 1e-14)) {
        if (cfg.dt_auto && step > 0 && step % cfg.recheck_every == 0) {
            dt = auto_dt(s);
            traj.dt_min = std::min(traj.dt_min, dt);
        }
        const double dt_step = std::min(dt, cfg.T - s.t);
        if (dt_step < dt_min)
            throw Error(ErrorKind::HorizonUnreachable,
                        "dt underflow: " + std::to_string(dt_step), s.t);

        const SimState prev = std::move(s);
        s = advance_step(ctx, prev, dt_step, cfg.mu, cfg.rho, cfg.picard_tol,
                         cfg.picard_max);
        ++step;

        // --- invariant monitors -----------------------------------------
        const Extremes ew = field_extremes(s.w), ez = field_extremes(s.z);
        mon.min_w = std::min(mon.min_w, ew.mn);
        mon.max_w = std::max(mon.max_w, ew.mx);
        mon.min_z = std::min(mon.min_z, ez.mn);
        mon.max_z = std::max(mon.max_z, ez.mx);
        mon.min_w_preclamp = std::min(mon.min_w_preclamp, s.min_w_preclamp);
        mon.min_z_preclamp = std::min(mon.min_z_preclamp, s.min_z_preclamp);
        if (ew.mx > k1_cap) breach(mon, "u exceeds k1", s.t);
        if (ez.mx > k2_cap) breach(mon, "v exceeds k2", s.t);

        const double dh = s.fronts.h - prev.fronts.h;
        const double dg = s.fronts.g - prev.fronts.g;
        mon.min_h_increment = std::min(mon.min_h_increment, dh);
        mon.max_g_increment = std::max(mon.max_g_increment, dg);
        if (mon.check_fronts && (dh <= 0.0 || dg >= 0.0))
            breach(mon, "front expansion stalled", s.t);

        const double Rt = b.R(s.t);
        const double speed = std::max(s.fronts.hdot, -s.fronts.gdot);
        if (Rt > 0.0)
            mon.max_speed_over_R = std::max(mon.max_speed_over_R, speed / Rt);
        if (speed > Rt * 1.05 + 1e-300) breach(mon, "front speed exceeds R(t)", s.t);

        const double flux_r = -boundary_gradient(s.z, s.fronts, Side::right, grid);
        const double flux_l = boundary_gradient(s.z, s.fronts, Side::left, grid);
        mon.min_flux_right = std::min(mon.min_flux_right, flux_r);
        mon.max_flux_right = std::max(mon.max_flux_right, flux_r);
        mon.min_flux_left = std::min(mon.min_flux_left, flux_l);
        mon.max_flux_left = std::max(mon.max_flux_left, flux_l);
        if (mon.check_flux) {
            if (flux_r <= 0.0 || flux_l <= 0.0)
                breach(mon, "boundary flux lost positivity", s.t);
            if (flux_r > k3_cap || flux_l > k3_cap)
                breach(mon, "boundary flux exceeds k3", s.t);
        }

        if (mon.check_growth) {
            const double ratio = s.fronts.width() / b.growth_bound(s.t);
            mon.max_width_over_growth = std::max(mon.max_width_over_growth, ratio);
            if (ratio > 1.05) breach(mon, "habitat width exceeds growth bound", s.t);
        }

        if (mon.check_symmetry) {
            mon.max_sym_front =
                std::max(mon.max_sym_front, std::abs(s.fronts.g + s.fronts.h));
            mon.max_sym_w = std::max(mon.max_sym_w, asymmetry(s.w));
            mon.max_sym_z = std::max(mon.max_sym_z, asymmetry(s.z));
        }

        if (!std::isnan(s.picard_max_ratio))
            mon.max_picard_ratio = std::max(mon.max_picard_ratio, s.picard_max_ratio);

        record(s);
        const double snap_dt = cfg.T / (snap_total - 1);
        while (next_snap < snap_total && s.t >= next_snap * snap_dt * (1.0 - 1e-14)) {
            if (traj.snapshots.back().t != s.t) snapshot(s);
            ++next_snap;
        }
    }

    if (traj.snapshots.back().t != s.t) snapshot(s);

    long conv = 0;
    for (std::size_t i = 1; i < traj.fronts.size(); ++i)
        if (traj.fronts[i].picard_converged && traj.fronts[i].picard_iters <= 8) ++conv;
    mon.frac_picard_converged =
        traj.fronts.size() > 1 ? static_cast<double>(conv) / (traj.fronts.size() - 1)
                               : 1.0;
    mon.final_dx_eff = s.fronts.width() / (cfg.N - 1);

    traj.gamma = check_gamma_membership(traj.fronts, b, std::min(cfg.T, b.T0));
    traj.dt_final = dt;
    traj.steps = step;
    traj.final_state = std::move(s);
    return traj;
}

} // namespace freefront
