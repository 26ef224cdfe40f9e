#include "freefront/error.hpp"
#include "freefront/pde.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace freefront;

namespace {

Field mode_field(const ReferenceGrid& grid) {
    Field z(grid.N);
    for (int j = 0; j < grid.N; ++j) z[j] = std::sin(M_PI * (grid.y[j] + 1.0) / 2.0);
    z[0] = z[grid.N - 1] = 0.0;
    return z;
}

double trapz_field(const ReferenceGrid& grid, const Field& f, double width) {
    double s = 0.0;
    for (int j = 0; j < grid.N; ++j) s += grid.weight(j) * f[j];
    return 0.5 * width * s;
}

} // namespace

TEST_CASE("nonlocal operator: constants reproduce, zero stays zero") {
    const ReferenceGrid grid(81);
    const KernelSpec tent = KernelSpec::tent(0.5);  // kinks land on nodes
    const FrontPair fp{-1.0, 1.0};

    Field c(grid.N, 0.7);
    const Field out = nonlocal_operator(fp, c, tent, grid);
    for (int j = 0; j < grid.N; ++j) {
        const double x = phys_of_ref(fp, grid.y[j]);
        if (std::abs(x) <= 1.0 - 0.5)  // support inside the habitat
            CHECK(out[j] == doctest::Approx(0.7).epsilon(1e-13));
        CHECK(out[j] >= 0.0);
        CHECK(out[j] <= 0.7 * (1.0 + 1e-12));
    }

    const Field zero(grid.N, 0.0);
    for (double v : nonlocal_operator(fp, zero, tent, grid)) CHECK(v == 0.0);
}

TEST_CASE("nonlocal operator vs brute-force quadrature (N=5 spec case)") {
    const ReferenceGrid grid(5);
    const KernelSpec uni = KernelSpec::uniform(4.0);
    const FrontPair fp{-1.0, 1.0};
    const Field w{0.0, 1.0, 2.0, 1.0, 0.0};

    const Field out = nonlocal_operator(fp, w, uni, grid);
    // J = 1/8 over the whole habitat; trapezoid of the hat = 2
    CHECK(out[2] == doctest::Approx(0.25).epsilon(1e-12));

    // brute force: 1e4-panel trapezoid of J(x_i - x') * what(x'), what = pw-linear
    auto what = [&](double x) {
        const double y = ref_of_phys(fp, x);
        const double p = (y + 1.0) / grid.dy;
        const int j = std::min(static_cast<int>(p), grid.N - 2);
        const double f = p - j;
        return w[j] * (1.0 - f) + w[j + 1] * f;
    };
    const int npan = 10000;
    for (int i = 0; i < grid.N; ++i) {
        const double xi_ = phys_of_ref(fp, grid.y[i]);
        double acc = 0.5 * (uni(xi_ - (-1.0)) * what(-1.0) + uni(xi_ - 1.0) * what(1.0));
        for (int p = 1; p < npan; ++p) {
            const double x = -1.0 + 2.0 * p / npan;
            acc += uni(xi_ - x) * what(x);
        }
        acc *= 2.0 / npan;
        if (acc > 1e-12)
            CHECK(std::abs(out[i] - acc) / acc <= 1e-3);
    }
}

TEST_CASE("u step: zero field is a fixed point") {
    const ReferenceGrid grid(41);
    const KernelSpec k = KernelSpec::tent(1.0);
    const ReactionModel m = ReactionModel::competition(1.0, 1.0, 1.0);
    const StepContext ctx{grid, k, m, 1.0, 1.0, m.lipschitz(1.0, 1.0), 1.0};
    const FrontPair fp{-1.0, 1.0, -0.3, 0.3};
    const FrontPair fp_next{-1.003, 1.003, -0.3, 0.3};

    Field w(grid.N, 0.0), z(grid.N, 0.4);
    z[0] = z[grid.N - 1] = 0.0;
    const Field out = step_u_explicit(ctx, fp, fp_next, w, z, 0.0, 0.01);
    for (double v : out) CHECK(v == 0.0);
}

TEST_CASE("u step: constants persist away from the boundary influence") {
    const ReferenceGrid grid(81);
    const KernelSpec k = KernelSpec::tent(0.25);
    const ReactionModel m = ReactionModel::none();
    const StepContext ctx{grid, k, m, 1.0, 1.0, 0.0, 1.0};
    const FrontPair fp{-1.0, 1.0, 0.0, 0.0};  // frozen: no advection term

    Field w(grid.N, 0.5);
    w[0] = w[grid.N - 1] = 0.0;
    const Field out = step_u_explicit(ctx, fp, fp, w, w, 0.0, 0.05);
    for (int j = 0; j < grid.N; ++j) {
        const double x = phys_of_ref(fp, grid.y[j]);
        // keep the kernel support clear of the boundary zeros
        if (std::abs(x) <= 0.7)
            CHECK(out[j] == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("u step: interior spike leaks mass through the zero exterior") {
    const ReferenceGrid grid(41);
    const KernelSpec k = KernelSpec::uniform(4.0);  // support reaches outside
    const ReactionModel m = ReactionModel::none();
    const StepContext ctx{grid, k, m, 1.0, 1.0, 0.0, 1.0};
    const FrontPair fp{-1.0, 1.0, 0.0, 0.0};

    Field w(grid.N, 0.0);
    w[grid.N / 2] = 1.0;
    const Field out = step_u_explicit(ctx, fp, fp, w, w, 0.0, 0.1);
    CHECK(trapz_field(grid, out, fp.width()) < trapz_field(grid, w, fp.width()));
}

TEST_CASE("u step: CFL guard") {
    const ReferenceGrid grid(41);
    const KernelSpec k = KernelSpec::tent(1.0);
    const ReactionModel m = ReactionModel::competition(1.0, 1.0, 1.0);
    const double L = m.lipschitz(1.0, 1.0);
    const StepContext ctx{grid, k, m, 1.0, 1.0, L, 1.0};
    const FrontPair fp{-1.0, 1.0, 0.0, 0.0};

    Field w(grid.N, 0.1);
    w[0] = w[grid.N - 1] = 0.0;
    const double limit = u_step_dt_limit(ctx, 0.0);
    CHECK(limit == doctest::Approx(0.9 / (1.0 + L)).epsilon(1e-15));
    CHECK_THROWS_WITH_AS(step_u_explicit(ctx, fp, fp, w, w, 0.0, limit * 1.01),
                         doctest::Contains("CFLViolated"), Error);
    CHECK_NOTHROW(step_u_explicit(ctx, fp, fp, w, w, 0.0, limit * 0.99));
}

TEST_CASE("u step: a forcing that breaks the zero line trips NegativeOvershoot") {
    const ReferenceGrid grid(41);
    const KernelSpec k = KernelSpec::tent(1.0);
    auto sink = [](double, double, double, double) { return -100.0; };
    const ReactionModel m = ReactionModel::custom(
        sink, sink, 1.0, 1.0, [](double) { return 1.0; },
        [](double, double) { return 0.0; }, nullptr);
    const StepContext ctx{grid, k, m, 1.0, 1.0, 0.0, 1.0};
    const FrontPair fp{-1.0, 1.0, 0.0, 0.0};
    Field w(grid.N, 0.0);
    CHECK_THROWS_WITH_AS(step_u_explicit(ctx, fp, fp, w, w, 0.0, 0.01),
                         doctest::Contains("NegativeOvershoot"), Error);
}

TEST_CASE("v step: backward Euler contracts the first Dirichlet mode exactly") {
    const ReferenceGrid grid(201);
    const KernelSpec k = KernelSpec::tent(1.0);
    const ReactionModel m = ReactionModel::none();
    const double d2 = 1.3;
    const StepContext ctx{grid, k, m, 1.0, d2, 0.0, 1.0};
    const FrontPair fp{-1.0, 1.0, 0.0, 0.0};  // frozen symmetric, xi = 1

    const Field z0 = mode_field(grid);
    const Field z1 = step_v_implicit(ctx, fp, fp, z0, z0, 0.0, 0.01);

    const double lam_h =
        2.0 / (grid.dy * grid.dy) * (1.0 - std::cos(M_PI * grid.dy / 2.0));
    const double factor = 1.0 / (1.0 + 0.01 * d2 * lam_h);
    for (int j = 0; j < grid.N; ++j)
        CHECK(std::abs(z1[j] - factor * z0[j]) <= 1e-12);
}

TEST_CASE("v step: zero field stays zero") {
    const ReferenceGrid grid(41);
    const KernelSpec k = KernelSpec::tent(1.0);
    const ReactionModel m = ReactionModel::prey_predator(1.0, 1.0, 1.0);
    const StepContext ctx{grid, k, m, 1.0, 1.0, 0.0, 1.0};
    const FrontPair fp{-1.0, 1.0, -0.2, 0.2};
    const FrontPair fp_next{-1.002, 1.002, -0.2, 0.2};

    Field z(grid.N, 0.0), w(grid.N, 0.8);
    w[0] = w[grid.N - 1] = 0.0;
    const Field out = step_v_implicit(ctx, fp, fp_next, z, w, 0.0, 0.01);
    for (double v : out) CHECK(v == 0.0);
}

TEST_CASE("boundary gradient: exact on quadratics, mode derivative") {
    const ReferenceGrid grid(201);
    Field z(grid.N);
    for (int j = 0; j < grid.N; ++j) z[j] = 1.0 - grid.y[j] * grid.y[j];
    CHECK(boundary_gradient(z, FrontPair{-1, 1}, Side::right, grid) ==
          doctest::Approx(-2.0).epsilon(1e-11));
    CHECK(boundary_gradient(z, FrontPair{-1, 1}, Side::left, grid) ==
          doctest::Approx(2.0).epsilon(1e-11));

    const Field zero(grid.N, 0.0);
    CHECK(boundary_gradient(zero, FrontPair{-1, 1}, Side::right, grid) == 0.0);

    const Field mode = mode_field(grid);
    // z_y(1) = -pi/2, scaled by 2/(h-g) = 1/2
    CHECK(boundary_gradient(mode, FrontPair{-2, 2}, Side::right, grid) ==
          doctest::Approx(-M_PI / 4.0).epsilon(1e-3));
}

TEST_CASE("positivity: both steppers keep random nonnegative data nonnegative") {
    const ReferenceGrid grid(61);
    const KernelSpec k = KernelSpec::tent(1.0);
    const ReactionModel m = ReactionModel::competition(1.0, 1.0, 1.0);
    const double L = m.lipschitz(2.0, 2.0);
    const StepContext ctx{grid, k, m, 1.0, 1.0, L, 1.0};

    std::mt19937 rng(41);
    std::uniform_real_distribution<double> uu(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        Field w(grid.N), z(grid.N);
        for (int j = 1; j < grid.N - 1; ++j) {
            w[j] = uu(rng);
            z[j] = uu(rng);
        }
        w[0] = w[grid.N - 1] = z[0] = z[grid.N - 1] = 0.0;
        const double sh = 0.5 * uu(rng), sg = 0.5 * uu(rng);
        const FrontPair fp{-1.0 - 0.1 * trial * 0.01, 1.0 + 0.1 * trial * 0.01, -sg, sh};
        const double mz = 2.0 * std::max(sh, sg) / fp.width();
        const double dt = 0.9 * u_step_dt_limit(ctx, mz);
        const FrontPair fp_next{fp.g - dt * sg, fp.h + dt * sh, -sg, sh};

        double pre_u = 0.0, pre_v = 0.0;
        const Field wn = step_u_explicit(ctx, fp, fp_next, w, z, 0.0, dt, &pre_u);
        const Field zn = step_v_implicit(ctx, fp, fp_next, z, w, 0.0, dt, &pre_v);
        CHECK(pre_u >= -1e-13);
        CHECK(pre_v >= -1e-13);
        for (int j = 0; j < grid.N; ++j) {
            CHECK(wn[j] >= 0.0);
            CHECK(zn[j] >= 0.0);
        }
    }
}

TEST_CASE("ordering: the scalar nonlocal step is monotone") {
    const ReferenceGrid grid(61);
    const KernelSpec k = KernelSpec::tent(1.0);
    const ReactionModel m = ReactionModel::none();
    const StepContext ctx{grid, k, m, 1.0, 1.0, 0.0, 1.0};
    const FrontPair fp{-1.1, 1.3, -0.2, 0.4};

    std::mt19937 rng(43);
    std::uniform_real_distribution<double> uu(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        Field lo(grid.N, 0.0), hi(grid.N, 0.0);
        for (int j = 1; j < grid.N - 1; ++j) {
            lo[j] = uu(rng);
            hi[j] = lo[j] + uu(rng);
        }
        const double mz = 2.0 * 0.4 / fp.width();
        const double dt = 0.9 * u_step_dt_limit(ctx, mz);
        const FrontPair fp_next{fp.g - dt * 0.2, fp.h + dt * 0.4, -0.2, 0.4};
        const Field lo_n = step_u_explicit(ctx, fp, fp_next, lo, lo, 0.0, dt);
        const Field hi_n = step_u_explicit(ctx, fp, fp_next, hi, hi, 0.0, dt);
        for (int j = 0; j < grid.N; ++j) CHECK(hi_n[j] >= lo_n[j] - 1e-13);
    }
}

TEST_CASE("boundedness: one step respects the a-priori ceilings") {
    const ReferenceGrid grid(61);
    const KernelSpec k = KernelSpec::tent(1.0);
    for (const ReactionModel& m : {ReactionModel::competition(1.0, 1.0, 1.0),
                                   ReactionModel::prey_predator(1.0, 1.0, 1.0)}) {
        const double k1 = 1.0;
        const double k2 = std::max(1.0, m.theta(k1));
        const double L = m.lipschitz(k1, k2);
        const StepContext ctx{grid, k, m, 1.0, 1.0, L, 1.0};
        const FrontPair fp{-1.0, 1.0, -0.3, 0.3};

        std::mt19937 rng(47);
        std::uniform_real_distribution<double> uu(0.0, 1.0);
        for (int trial = 0; trial < 50; ++trial) {
            Field w(grid.N, 0.0), z(grid.N, 0.0);
            for (int j = 1; j < grid.N - 1; ++j) {
                w[j] = k1 * uu(rng);
                z[j] = k2 * uu(rng);
            }
            const double dt = 0.9 * u_step_dt_limit(ctx, 0.3);
            const FrontPair fp_next{fp.g - dt * 0.3, fp.h + dt * 0.3, -0.3, 0.3};
            const Field wn = step_u_explicit(ctx, fp, fp_next, w, z, 0.0, dt);
            const Field zn = step_v_implicit(ctx, fp, fp_next, z, w, 0.0, dt);
            for (int j = 0; j < grid.N; ++j) {
                CHECK(wn[j] <= k1 * (1.0 + m.r * dt) + 1e-12);
                CHECK(zn[j] <= k2 * (1.0 + L * dt) + 1e-12);
            }
        }
    }
}

TEST_CASE("tridiagonal solver against direct residual check") {
    std::mt19937 rng(53);
    std::uniform_real_distribution<double> uu(-1.0, 1.0);
    const int n = 40;
    std::vector<double> lo(n), dg(n), up(n), rhs(n);
    for (int i = 0; i < n; ++i) {
        lo[i] = uu(rng);
        up[i] = uu(rng);
        dg[i] = 3.0 + std::abs(uu(rng));  // diagonally dominant
        rhs[i] = uu(rng);
    }
    const std::vector<double> x = solve_tridiagonal(lo, dg, up, rhs);
    for (int i = 0; i < n; ++i) {
        double r = dg[i] * x[i] - rhs[i];
        if (i > 0) r += lo[i] * x[i - 1];
        if (i < n - 1) r += up[i] * x[i + 1];
        CHECK(std::abs(r) <= 1e-12);
    }
}
