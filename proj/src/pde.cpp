#include "freefront/pde.hpp"
#include "freefront/error.hpp"

#include <algorithm>
#include <cmath>

namespace freefront {

namespace {

constexpr double kClampFloor = -1e-13;  // round-off band, silently zeroed
constexpr double kAbortFloor = -1e-10;  // scheme failure below this

void clamp_or_abort(Field& f, double t, const char* who, double* min_preclamp) {
    double mn = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double v = f[i];
        if (v < mn) mn = v;
        if (v < kAbortFloor)
            throw Error(ErrorKind::NegativeOvershoot,
                        std::string(who) + " produced " + std::to_string(v), t,
                        static_cast<int>(i));
        if (v < 0.0 && v >= kClampFloor) f[i] = 0.0;
    }
    if (min_preclamp) *min_preclamp = mn;
}

} // namespace

Field nonlocal_operator(const FrontPair& fp, const Field& w, const KernelSpec& k,
                        const ReferenceGrid& grid) {
    const int n = grid.N;
    if (fp.width() <= 0.0)
        throw Error(ErrorKind::DegenerateInterval, "h <= g in nonlocal operator");
    const double scale = 0.5 * fp.width();  // dx = scale * dy

    // kernel row over node-distance magnitudes; zero beyond the support
    int ksup = static_cast<int>(std::ceil(k.a / (scale * grid.dy)));
    ksup = std::min(ksup, n - 1);
    std::vector<double> row(ksup + 1);
    for (int d = 0; d <= ksup; ++d) row[d] = k(scale * d * grid.dy);

    std::vector<double> q(n);
    for (int j = 0; j < n; ++j) q[j] = scale * grid.weight(j) * w[j];

    Field out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const int jlo = std::max(0, i - ksup);
        const int jhi = std::min(n - 1, i + ksup);
        double acc = 0.0;
        for (int j = jlo; j <= jhi; ++j) acc += row[std::abs(i - j)] * q[j];
        out[i] = acc;
    }
    return out;
}

double max_zeta_fd(const FrontPair& fp, const FrontPair& fp_next, double dt) {
    const double w = fp.width();
    if (w <= 0.0) throw Error(ErrorKind::DegenerateInterval, "h <= g");
    const double hd = (fp_next.h - fp.h) / dt;
    const double gd = (fp_next.g - fp.g) / dt;
    return std::max(std::abs(2.0 * hd / w), std::abs(2.0 * gd / w));
}

double u_step_dt_limit(const StepContext& ctx, double max_zeta) {
    return 0.9 / (ctx.d1 + ctx.L + max_zeta / ctx.grid.dy);
}

Field step_u_explicit(const StepContext& ctx, const FrontPair& fp,
                      const FrontPair& fp_next, const Field& w, const Field& z,
                      double t, double dt, double* min_preclamp) {
    const ReferenceGrid& grid = ctx.grid;
    const int n = grid.N;
    const double width = fp.width();
    if (width <= 0.0 || fp_next.width() <= 0.0)
        throw Error(ErrorKind::DegenerateInterval, "h <= g in u step", t);

    const double mz = max_zeta_fd(fp, fp_next, dt);
    if (dt > u_step_dt_limit(ctx, mz))
        throw Error(ErrorKind::CFLViolated,
                    "dt = " + std::to_string(dt) + " exceeds " +
                        std::to_string(u_step_dt_limit(ctx, mz)), t);

    const Field conv = nonlocal_operator(fp, w, ctx.kernel, grid);
    const double hd = (fp_next.h - fp.h) / dt;
    const double gd = (fp_next.g - fp.g) / dt;

    Field out(n, 0.0);
    for (int i = 1; i < n - 1; ++i) {
        const double y = grid.y[i];
        const double x = phys_of_ref(fp, y);
        const double zt = ((hd + gd) + (hd - gd) * y) / width;
        double adv = 0.0;
        if (zt > 0.0)
            adv = zt * (w[i + 1] - w[i]) / grid.dy;
        else if (zt < 0.0)
            adv = zt * (w[i] - w[i - 1]) / grid.dy;
        const double rate =
            ctx.d1 * (conv[i] - w[i]) + ctx.reaction.f1(t, x, w[i], z[i]) + adv;
        out[i] = w[i] + dt * rate;
    }
    clamp_or_abort(out, t, "u step", min_preclamp);
    return out;
}

Field step_v_implicit(const StepContext& ctx, const FrontPair& fp,
                      const FrontPair& fp_next, const Field& z, const Field& w,
                      double t, double dt, double* min_preclamp) {
    const ReferenceGrid& grid = ctx.grid;
    const int n = grid.N;
    const double th = ctx.theta;
    if (fp.width() <= 0.0 || fp_next.width() <= 0.0)
        throw Error(ErrorKind::DegenerateInterval, "h <= g in v step", t);

    const double g_th = fp.g + th * (fp_next.g - fp.g);
    const double h_th = fp.h + th * (fp_next.h - fp.h);
    const double width_th = h_th - g_th;
    const double hd = (fp_next.h - fp.h) / dt;
    const double gd = (fp_next.g - fp.g) / dt;
    const double xi_th = 4.0 / (width_th * width_th);
    const double diff = ctx.d2 * xi_th / (grid.dy * grid.dy);

    // operator A = d2*xi z_yy + zeta z_y as tridiagonal coefficients
    std::vector<double> alo(n, 0.0), adiag(n, 0.0), aup(n, 0.0);
    for (int i = 1; i < n - 1; ++i) {
        const double zt = ((hd + gd) + (hd - gd) * grid.y[i]) / width_th;
        double lo = diff, dg = -2.0 * diff, up = diff;
        const double peclet = std::abs(zt) * grid.dy / (ctx.d2 * xi_th);
        if (peclet <= 2.0) {
            lo -= zt / (2.0 * grid.dy);
            up += zt / (2.0 * grid.dy);
        } else if (zt > 0.0) {
            dg -= zt / grid.dy;
            up += zt / grid.dy;
        } else {
            dg += zt / grid.dy;
            lo -= zt / grid.dy;
        }
        alo[i] = lo;
        adiag[i] = dg;
        aup[i] = up;
    }

    std::vector<double> mlo(n, 0.0), mdiag(n, 1.0), mup(n, 0.0), rhs(n, 0.0);
    for (int i = 1; i < n - 1; ++i) {
        mlo[i] = -th * dt * alo[i];
        mdiag[i] = 1.0 - th * dt * adiag[i];
        mup[i] = -th * dt * aup[i];
        const double x = phys_of_ref(fp, grid.y[i]);
        const double az =
            alo[i] * z[i - 1] + adiag[i] * z[i] + aup[i] * z[i + 1];
        rhs[i] = z[i] + (1.0 - th) * dt * az +
                 dt * ctx.reaction.f2(t, x, w[i], z[i]);
    }
    // Dirichlet rows
    mdiag[0] = mdiag[n - 1] = 1.0;
    rhs[0] = rhs[n - 1] = 0.0;

    Field out = solve_tridiagonal(std::move(mlo), std::move(mdiag), std::move(mup),
                                  std::move(rhs));
    clamp_or_abort(out, t, "v step", min_preclamp);
    return out;
}

double boundary_gradient(const Field& z, const FrontPair& fp, Side side,
                         const ReferenceGrid& grid) {
    const int n = grid.N;
    if (n < 5) throw Error(ErrorKind::OutOfRange, "need N >= 5 for boundary gradient");
    double zy;
    if (side == Side::right)
        zy = (3.0 * z[n - 1] - 4.0 * z[n - 2] + z[n - 3]) / (2.0 * grid.dy);
    else
        zy = (-3.0 * z[0] + 4.0 * z[1] - z[2]) / (2.0 * grid.dy);
    return 2.0 / fp.width() * zy;
}

std::vector<double> solve_tridiagonal(std::vector<double> lower,
                                      std::vector<double> diag,
                                      std::vector<double> upper,
                                      std::vector<double> rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(diag[i - 1]) < 1e-300)
            throw Error(ErrorKind::SingularSystem,
                        "zero pivot at row " + std::to_string(i - 1));
        const double m = lower[i] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    if (std::abs(diag[n - 1]) < 1e-300)
        throw Error(ErrorKind::SingularSystem, "zero pivot at last row");
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i];
    return x;
}

} // namespace freefront
