#include "freefront/reactions.hpp"
#include "freefront/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace freefront {

const char* reaction_kind_name(ReactionKind k) {
    switch (k) {
        case ReactionKind::competition: return "competition";
        case ReactionKind::prey_predator: return "prey_predator";
        case ReactionKind::custom: return "custom";
    }
    return "unknown";
}

ReactionKind reaction_kind_from_name(const std::string& name) {
    if (name == "competition") return ReactionKind::competition;
    if (name == "prey_predator") return ReactionKind::prey_predator;
    if (name == "custom") return ReactionKind::custom;
    throw ConfigError("unknown reaction kind '" + name + "'");
}

ReactionModel ReactionModel::competition(double a, double b, double c) {
    if (a <= 0.0 || b <= 0.0 || c <= 0.0)
        throw ConfigError("reaction parameters a, b, c must be > 0");
    ReactionModel m;
    m.kind = ReactionKind::competition;
    m.a = a;
    m.b = b;
    m.c = c;
    m.f1 = [a, b](double, double, double u, double v) { return u * (a - u - b * v); };
    m.f2 = [c](double, double, double u, double v) { return v * (1.0 - v - c * u); };
    m.k0 = a;
    m.r = a;
    m.theta = [](double) { return 1.0; };
    // corner bounds of |df/du|, |df/dv| over [0,c1]x[0,c2]
    m.lipschitz = [a, b, c](double c1, double c2) {
        return std::max({a + 2.0 * c1 + b * c2, b * c1, 1.0 + 2.0 * c2 + c * c1, c * c2});
    };
    m.lipschitz_x = [](double, double) { return 0.0; };
    return m;
}

ReactionModel ReactionModel::prey_predator(double a, double b, double c) {
    if (a <= 0.0 || b <= 0.0 || c <= 0.0)
        throw ConfigError("reaction parameters a, b, c must be > 0");
    ReactionModel m;
    m.kind = ReactionKind::prey_predator;
    m.a = a;
    m.b = b;
    m.c = c;
    m.f1 = [a, b](double, double, double u, double v) { return u * (a - u - b * v); };
    m.f2 = [c](double, double, double u, double v) { return v * (1.0 - v + c * u); };
    m.k0 = a;
    m.r = a;
    m.theta = [c](double k) { return 1.0 + c * k; };
    m.lipschitz = [a, b, c](double c1, double c2) {
        return std::max({a + 2.0 * c1 + b * c2, b * c1, 1.0 + 2.0 * c2 + c * c1, c * c2});
    };
    m.lipschitz_x = [](double, double) { return 0.0; };
    return m;
}

ReactionModel ReactionModel::custom(ReactionFn f1, ReactionFn f2, double k0, double r,
                                    std::function<double(double)> theta,
                                    std::function<double(double, double)> lipschitz,
                                    std::function<double(double, double)> lipschitz_x) {
    ReactionModel m;
    m.kind = ReactionKind::custom;
    m.f1 = std::move(f1);
    m.f2 = std::move(f2);
    m.k0 = k0;
    m.r = r;
    m.theta = std::move(theta);
    if (lipschitz) {
        m.lipschitz = std::move(lipschitz);
    } else {
        const ReactionFn g1 = m.f1, g2 = m.f2;
        m.lipschitz = [g1, g2](double c1, double c2) {
            return std::max(sampled_lipschitz(g1, c1, c2), sampled_lipschitz(g2, c1, c2));
        };
    }
    m.lipschitz_x = lipschitz_x ? std::move(lipschitz_x)
                                : [](double, double) { return 0.0; };
    return m;
}

ReactionModel ReactionModel::none() {
    auto zero = [](double, double, double, double) { return 0.0; };
    return custom(zero, zero, 1.0, 1.0, [](double) { return 1.0; },
                  [](double, double) { return 0.0; }, nullptr);
}

double evaluate_f(const ReactionModel& m, int which, double t, double x,
                  double u, double v) {
    if (u < 0.0 || v < 0.0)
        throw Error(ErrorKind::NegativeDensityInput,
                    "u = " + std::to_string(u) + ", v = " + std::to_string(v), t);
    return which == 1 ? m.f1(t, x, u, v) : m.f2(t, x, u, v);
}

double sampled_lipschitz(const ReactionFn& f, double c1, double c2) {
    const int n = 501;
    const double du = c1 / (n - 1), dv = c2 / (n - 1);
    double lmax = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = i * du;
        double prev = f(0.0, 0.0, u, 0.0);
        for (int j = 1; j < n; ++j) {
            const double cur = f(0.0, 0.0, u, j * dv);
            lmax = std::max(lmax, std::abs(cur - prev) / dv);
            prev = cur;
        }
    }
    for (int j = 0; j < n; ++j) {
        const double v = j * dv;
        double prev = f(0.0, 0.0, 0.0, v);
        for (int i = 1; i < n; ++i) {
            const double cur = f(0.0, 0.0, i * du, v);
            lmax = std::max(lmax, std::abs(cur - prev) / du);
            prev = cur;
        }
    }
    return 1.1 * lmax;
}

namespace {

std::string sample_str(double t, double x, double u, double v, double f) {
    std::ostringstream os;
    os << "(t=" << t << ", x=" << x << ", u=" << u << ", v=" << v << ") -> " << f;
    return os.str();
}

} // namespace

ReactionReport validate_reaction(const ReactionModel& m, double k1_probe) {
    if (k1_probe <= 0.0) throw ConfigError("k1_probe must be > 0");

    const int nuv = 101, ntx = 11;
    const double umax = 2.0 * k1_probe;
    const double theta_k = m.theta(k1_probe);
    const double theta_slack = 1e-6 * theta_k;

    ReactionReport rep;
    rep.k0 = m.k0;
    rep.r = m.r;
    rep.theta_k1 = theta_k;
    rep.worst_f1_above_k0 = -1e300;
    rep.worst_f2_above_theta = -1e300;

    for (int it = 0; it < ntx; ++it) {
        const double t = static_cast<double>(it) / (ntx - 1);
        for (int ix = 0; ix < ntx; ++ix) {
            const double x = -1.0 + 2.0 * ix / (ntx - 1);
            for (int i = 0; i < nuv; ++i) {
                const double u = umax * i / (nuv - 1);
                for (int j = 0; j < nuv; ++j) {
                    const double v = umax * j / (nuv - 1);

                    // zero lines of condition (f)
                    const double f1_0v = m.f1(t, x, 0.0, v);
                    if (std::abs(f1_0v) > 1e-12)
                        throw Error(ErrorKind::ZeroLineViolated,
                                    "f1(t,x,0,v) != 0 at " + sample_str(t, x, 0, v, f1_0v), t);
                    const double f2_u0 = m.f2(t, x, u, 0.0);
                    if (std::abs(f2_u0) > 1e-12)
                        throw Error(ErrorKind::ZeroLineViolated,
                                    "f2(t,x,u,0) != 0 at " + sample_str(t, x, u, 0, f2_u0), t);

                    const double f1 = m.f1(t, x, u, v);
                    if (u > m.k0) {
                        rep.worst_f1_above_k0 = std::max(rep.worst_f1_above_k0, f1);
                        if (f1 >= 0.0)
                            throw Error(ErrorKind::SignConditionViolated,
                                        "(f1): f1 >= 0 for u > k0 at " +
                                            sample_str(t, x, u, v, f1), t);
                    } else if (u > 0.0 && f1 > m.r * u) {
                        throw Error(ErrorKind::SignConditionViolated,
                                    "(f1): f1 > r*u at " + sample_str(t, x, u, v, f1), t);
                    }

                    // (f2): v sampled on a band above Theta(k1_probe)
                    const double u2 = k1_probe * i / (nuv - 1);
                    const double v2 = theta_k + theta_slack + umax * j / (nuv - 1);
                    const double f2 = m.f2(t, x, u2, v2);
                    rep.worst_f2_above_theta = std::max(rep.worst_f2_above_theta, f2);
                    if (f2 >= 0.0)
                        throw Error(ErrorKind::SignConditionViolated,
                                    "(f2): f2 >= 0 for v >= Theta(k) at " +
                                        sample_str(t, x, u2, v2, f2), t);
                }
            }
        }
    }

    // built-ins carry closed-form constants; cross-check them
    if (m.kind == ReactionKind::competition || m.kind == ReactionKind::prey_predator) {
        if (m.k0 != m.a || m.r != m.a)
            throw Error(ErrorKind::SignConditionViolated, "built-in constants k0, r must equal a");
        const double want = m.kind == ReactionKind::competition ? 1.0 : 1.0 + m.c * k1_probe;
        if (std::abs(theta_k - want) > 1e-12)
            throw Error(ErrorKind::SignConditionViolated, "built-in Theta(k) mismatch");
    }

    rep.passed = true;
    rep.note = "sampled " + std::to_string(nuv) + "x" + std::to_string(nuv) + " (u,v), " +
               std::to_string(ntx) + "x" + std::to_string(ntx) + " (t,x)";
    return rep;
}

} // namespace freefront
