#include "freefront/error.hpp"
#include "freefront/stepper.hpp"
#include "test_configs.hpp"

#include <doctest.h>

#include <cmath>

using namespace freefront;

namespace {

ProblemConfig small_competition(const std::string& kernel = "tent") {
    return fftest::standard_config("competition", kernel,
                                   "grid.N = 101\nT = 0.3\n");
}

// replicate the run() initial state for direct advance_step tests
SimState initial_state(const ProblemConfig& cfg, const ReferenceGrid& grid) {
    SimState s;
    s.w.resize(grid.N);
    s.z.resize(grid.N);
    for (int j = 0; j < grid.N; ++j) {
        s.w[j] = cfg.u0(cfg.h0 * grid.y[j]);
        s.z[j] = cfg.v0(cfg.h0 * grid.y[j]);
    }
    s.w[0] = s.w[grid.N - 1] = s.z[0] = s.z[grid.N - 1] = 0.0;
    s.fronts = FrontPair{-cfg.h0, cfg.h0, 0.0, 0.0};
    const FrontSpeeds sp =
        front_speeds(s.fronts, s.w, s.z, cfg.kernel, grid, cfg.mu, cfg.rho);
    s.fronts.gdot = sp.gdot;
    s.fronts.hdot = sp.hdot;
    return s;
}

} // namespace

TEST_CASE("front speeds vanish for zero fields") {
    const ReferenceGrid grid(41);
    const Field zero(grid.N, 0.0);
    const FrontSpeeds s = front_speeds(FrontPair{-1, 1}, zero, zero,
                                       KernelSpec::tent(1.0), grid, 1.0, 1.0);
    CHECK(s.gdot == 0.0);
    CHECK(s.hdot == 0.0);
}

TEST_CASE("rho = 0: hdot is the bare flux term") {
    const ReferenceGrid grid(101);
    Field z(grid.N), w(grid.N, 0.3);
    for (int j = 0; j < grid.N; ++j) z[j] = 0.5 * (1.0 - grid.y[j] * grid.y[j]);
    // v_x(h) = -1 exactly (one-sided formula is exact on quadratics)
    const FrontSpeeds s = front_speeds(FrontPair{-1, 1}, w, z, KernelSpec::tent(1.0),
                                       grid, 1.0, 0.0);
    CHECK(s.vx_right == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(s.hdot == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.gdot == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("mu = 0: tail term vs brute-force double integral of the flux law") {
    const ReferenceGrid grid(201);
    const KernelSpec uni = KernelSpec::uniform(4.0);
    const double k1 = 0.8, rho = 1.3;
    Field w(grid.N, k1), z(grid.N, 0.0);

    const FrontSpeeds s = front_speeds(FrontPair{-1, 1}, w, z, uni, grid, 0.0, rho);
    // J tail is linear over the habitat: int_{-1}^{1} (a - (1-x))/(2a) dx = 0.75
    CHECK(s.hdot == doctest::Approx(rho * k1 * 0.75).epsilon(1e-13));

    // brute force: rho int_g^h int_h^{x+a} J(x-y) dy dx * k1, 1e4 panels each
    const int np = 10000;
    double outer = 0.0;
    for (int i = 0; i <= np; ++i) {
        const double x = -1.0 + 2.0 * i / np;
        const double ylo = 1.0, yhi = x + uni.a;
        double inner = 0.0;
        if (yhi > ylo) {
            const double hy = (yhi - ylo) / np;
            inner = 0.5 * (uni(x - ylo) + uni(x - yhi));
            for (int j = 1; j < np; ++j) inner += uni(x - (ylo + j * hy));
            inner *= hy;
        }
        const double wgt = (i == 0 || i == np) ? 0.5 : 1.0;
        outer += wgt * inner * k1;
    }
    outer *= 2.0 / np * rho;
    CHECK(std::abs(s.hdot - outer) / outer <= 1e-4);
}

TEST_CASE("advance_step: zero data is a one-sweep fixed point") {
    ProblemConfig cfg = fftest::heat_mode_config(41, 1.0, 0.01, 1.0);
    cfg.v0 = [](double) { return 0.0; };
    const ReferenceGrid grid(cfg.N);
    const StepContext ctx{grid, cfg.kernel, cfg.reaction, cfg.d1, cfg.d2, 0.0, 1.0};
    const SimState s0 = initial_state(cfg, grid);
    const SimState s1 = advance_step(ctx, s0, 0.01, cfg.mu, cfg.rho, 1e-10, 8);
    CHECK(s1.picard_iters == 1);
    CHECK(s1.residual == 0.0);
    CHECK(s1.fronts.g == s0.fronts.g);
    CHECK(s1.fronts.h == s0.fronts.h);
    CHECK(s1.t == 0.01);
    for (double v : s1.w) CHECK(v == 0.0);
    for (double v : s1.z) CHECK(v == 0.0);
}

TEST_CASE("picard_max = 1 is the forward coupling; gap shrinks as O(dt^2)") {
    const ProblemConfig cfg = small_competition();
    const ReferenceGrid grid(cfg.N);
    const KernelFloor floor = validate_kernel(cfg.kernel, cfg.h0, true);
    const AprioriBounds b = compute_bounds(cfg, floor);
    const StepContext ctx{grid, cfg.kernel, cfg.reaction, cfg.d1, cfg.d2, b.L,
                          cfg.theta};
    const SimState s0 = initial_state(cfg, grid);

    auto gap_at = [&](double dt) {
        const SimState fwd = advance_step(ctx, s0, dt, cfg.mu, cfg.rho, 1e-300, 1);
        const SimState cpl = advance_step(ctx, s0, dt, cfg.mu, cfg.rho, 1e-300, 8);
        return std::abs(fwd.fronts.h - cpl.fronts.h);
    };
    const double g1 = gap_at(2e-3);
    const double g2 = gap_at(1e-3);
    CHECK(g1 > 0.0);
    const double ratio = g1 / g2;
    CHECK(ratio >= 3.2);
    CHECK(ratio <= 4.8);
}

TEST_CASE("degenerate heat mode matches the separation-of-variables solution") {
    const ProblemConfig cfg = fftest::heat_mode_config(101, 0.05, 1e-4, 1.0);
    const Trajectory traj = run(cfg);
    const ReferenceGrid grid(cfg.N);
    const double decay = fftest::heat_mode_decay(cfg.d2, cfg.T);
    double err = 0.0;
    for (int j = 0; j < cfg.N; ++j) {
        const double exact = decay * std::cos(M_PI * grid.y[j] / 2.0);
        err = std::max(err, std::abs(traj.final_state.z[j] - exact));
    }
    CHECK(err <= 1e-3);
    // fronts never moved
    CHECK(traj.final_state.fronts.h == 1.0);
    CHECK(traj.final_state.fronts.g == -1.0);
    for (double v : traj.final_state.w) CHECK(v == 0.0);
}

TEST_CASE("competition run: monitors hold at every step") {
    const ProblemConfig cfg = small_competition();
    const Trajectory traj = run(cfg);
    const MonitorReport& m = traj.monitor;
    const AprioriBounds& b = traj.bounds;

    CHECK(!m.breached);
    CHECK(m.min_w_preclamp >= -1e-10);
    CHECK(m.min_z_preclamp >= -1e-10);
    CHECK(m.min_w >= 0.0);
    CHECK(m.max_w <= b.k1 * (1.0 + 1e-6));
    CHECK(m.max_z <= b.k2 * (1.0 + 1e-6));
    CHECK(m.min_h_increment > 0.0);
    CHECK(m.max_g_increment < 0.0);
    CHECK(m.max_speed_over_R <= 1.05);
    CHECK(m.min_flux_right > 0.0);
    CHECK(m.max_flux_right <= b.k3 * 1.05);
    CHECK(m.min_flux_left > 0.0);
    CHECK(m.max_flux_left <= b.k3 * 1.05);
    CHECK(m.max_width_over_growth <= 1.05);
    CHECK(m.frac_picard_converged == 1.0);
    CHECK(m.max_picard_ratio <= 0.9);

    // trajectory shape
    CHECK(traj.fronts.size() == static_cast<std::size_t>(traj.steps) + 1);
    CHECK(traj.fronts.front().t == 0.0);
    CHECK(traj.fronts.back().t == doctest::Approx(cfg.T).epsilon(1e-12));
    CHECK(traj.snapshots.front().t == 0.0);
    CHECK(traj.snapshots.back().t == traj.fronts.back().t);
    CHECK(traj.snapshots.size() <= static_cast<std::size_t>(cfg.snapshots));

    // strict monotonicity of the recorded fronts
    for (std::size_t i = 1; i < traj.fronts.size(); ++i) {
        CHECK(traj.fronts[i].h > traj.fronts[i - 1].h);
        CHECK(traj.fronts[i].g < traj.fronts[i - 1].g);
        CHECK(traj.fronts[i].t > traj.fronts[i - 1].t);
    }
}

TEST_CASE("symmetric config stays symmetric to round-off") {
    const ProblemConfig cfg = small_competition();
    const Trajectory traj = run(cfg);
    CHECK(traj.monitor.check_symmetry);
    CHECK(traj.monitor.max_sym_front <= 1e-8 * cfg.h0);
    CHECK(traj.monitor.max_sym_w <= 1e-8 * traj.bounds.k1);
    CHECK(traj.monitor.max_sym_z <= 1e-8 * traj.bounds.k2);
}

TEST_CASE("identical configs give bit-identical trajectories") {
    const ProblemConfig cfg = small_competition();
    const Trajectory a = run(cfg);
    const Trajectory b = run(cfg);
    REQUIRE(a.fronts.size() == b.fronts.size());
    for (std::size_t i = 0; i < a.fronts.size(); ++i) {
        CHECK(a.fronts[i].t == b.fronts[i].t);
        CHECK(a.fronts[i].g == b.fronts[i].g);
        CHECK(a.fronts[i].h == b.fronts[i].h);
        CHECK(a.fronts[i].gdot == b.fronts[i].gdot);
        CHECK(a.fronts[i].hdot == b.fronts[i].hdot);
    }
    REQUIRE(a.final_state.w.size() == b.final_state.w.size());
    for (std::size_t j = 0; j < a.final_state.w.size(); ++j) {
        CHECK(a.final_state.w[j] == b.final_state.w[j]);
        CHECK(a.final_state.z[j] == b.final_state.z[j]);
    }
}

TEST_CASE("an unstable fixed dt fails at step 0 with CFLViolated") {
    const ProblemConfig cfg = small_competition("tent");
    ProblemConfig bad = cfg;
    bad.dt = 10.0;
    bad.dt_auto = false;
    CHECK_THROWS_WITH_AS(run(bad), doctest::Contains("CFLViolated"), Error);
}

TEST_CASE("gamma membership report on a standard run") {
    const ProblemConfig cfg = small_competition();
    const Trajectory traj = run(cfg);
    // the certified window [0, T0] sits inside the run
    CHECK(traj.gamma.window_end == doctest::Approx(traj.bounds.T0));
    CHECK(traj.gamma.all_ok());
}
