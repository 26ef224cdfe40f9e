#include "freefront/kernels.hpp"
#include "freefront/error.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace freefront {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::MassNotUnit: return "MassNotUnit";
        case ErrorKind::NotSymmetric: return "NotSymmetric";
        case ErrorKind::NegativeValue: return "NegativeValue";
        case ErrorKind::ZeroAtOrigin: return "ZeroAtOrigin";
        case ErrorKind::NotLipschitz: return "NotLipschitz";
        case ErrorKind::SignConditionViolated: return "SignConditionViolated";
        case ErrorKind::ZeroLineViolated: return "ZeroLineViolated";
        case ErrorKind::NegativeDensityInput: return "NegativeDensityInput";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::DegenerateInterval: return "DegenerateInterval";
        case ErrorKind::CFLViolated: return "CFLViolated";
        case ErrorKind::NegativeOvershoot: return "NegativeOvershoot";
        case ErrorKind::SingularSystem: return "SingularSystem";
        case ErrorKind::PicardDiverged: return "PicardDiverged";
        case ErrorKind::InvariantBreached: return "InvariantBreached";
        case ErrorKind::HorizonUnreachable: return "HorizonUnreachable";
        case ErrorKind::WindowExceeded: return "WindowExceeded";
        case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

const char* kernel_family_name(KernelFamily f) {
    switch (f) {
        case KernelFamily::uniform: return "uniform";
        case KernelFamily::tent: return "tent";
        case KernelFamily::truncated_gaussian: return "truncated_gaussian";
        case KernelFamily::custom: return "custom";
    }
    return "unknown";
}

KernelFamily kernel_family_from_name(const std::string& name) {
    if (name == "uniform") return KernelFamily::uniform;
    if (name == "tent") return KernelFamily::tent;
    if (name == "truncated_gaussian") return KernelFamily::truncated_gaussian;
    if (name == "custom") return KernelFamily::custom;
    throw ConfigError("unknown kernel family '" + name + "'");
}

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrtHalfPi = 1.2533141373155003;  // sqrt(pi/2)

// int_{-a}^{a} exp(-x^2/(2 s^2)) dx = s*sqrt(2*pi)*erf(a/(s*sqrt(2)))
double gauss_box_mass(double a, double sigma) {
    return sigma * 2.0 * kSqrtHalfPi * std::erf(a / (sigma * kSqrt2));
}

} // namespace

KernelSpec KernelSpec::uniform(double a) {
    if (a <= 0.0) throw ConfigError("kernel support radius must be > 0");
    KernelSpec k;
    k.family = KernelFamily::uniform;
    k.a = a;
    return k;
}

KernelSpec KernelSpec::tent(double a) {
    if (a <= 0.0) throw ConfigError("kernel support radius must be > 0");
    KernelSpec k;
    k.family = KernelFamily::tent;
    k.a = a;
    return k;
}

KernelSpec KernelSpec::truncated_gaussian(double a, double sigma) {
    if (a <= 0.0) throw ConfigError("kernel support radius must be > 0");
    if (sigma <= 0.0) throw ConfigError("kernel sigma must be > 0");
    KernelSpec k;
    k.family = KernelFamily::truncated_gaussian;
    k.a = a;
    k.sigma = sigma;
    k.shift_ = std::exp(-a * a / (2.0 * sigma * sigma));
    k.norm_ = 1.0 / (gauss_box_mass(a, sigma) - 2.0 * a * k.shift_);
    return k;
}

KernelSpec KernelSpec::custom(double a, std::function<double(double)> density,
                              bool lipschitz_on_R) {
    if (a <= 0.0) throw ConfigError("kernel support radius must be > 0");
    KernelSpec k;
    k.family = KernelFamily::custom;
    k.a = a;
    k.density = std::move(density);
    k.custom_lipschitz_ = lipschitz_on_R;
    return k;
}

double KernelSpec::operator()(double x) const {
    const double r = std::abs(x);
    if (r > a) return 0.0;
    switch (family) {
        case KernelFamily::uniform:
            return 0.5 / a;
        case KernelFamily::tent:
            return (1.0 - r / a) / a;
        case KernelFamily::truncated_gaussian:
            return norm_ * (std::exp(-r * r / (2.0 * sigma * sigma)) - shift_);
        case KernelFamily::custom:
            return density(r);
    }
    return 0.0;
}

bool KernelSpec::lipschitz() const {
    switch (family) {
        case KernelFamily::uniform: return false;
        case KernelFamily::custom: return custom_lipschitz_;
        default: return true;
    }
}

double KernelSpec::lipschitz_constant() const {
    switch (family) {
        case KernelFamily::uniform:
            return 0.0;  // interior slope; the jump at +-a has no finite constant
        case KernelFamily::tent:
            return 1.0 / (a * a);
        case KernelFamily::truncated_gaussian: {
            // max of |J'| = C * x/s^2 * exp(-x^2/(2 s^2)) on [0, a]
            if (sigma <= a)
                return norm_ * std::exp(-0.5) / sigma;
            return norm_ * a / (sigma * sigma) * shift_;
        }
        case KernelFamily::custom: {
            // sampled slope estimate
            const int n = 2001;
            double lmax = 0.0;
            double prev = (*this)(-a);
            const double h = 2.0 * a / (n - 1);
            for (int i = 1; i < n; ++i) {
                const double cur = (*this)(-a + i * h);
                lmax = std::max(lmax, std::abs(cur - prev) / h);
                prev = cur;
            }
            return lmax;
        }
    }
    return 0.0;
}

double kernel_mass_trapezoid(const KernelSpec& k, long panels) {
    const double h = 2.0 * k.a / static_cast<double>(panels);
    double sum = 0.5 * (k(-k.a) + k(k.a));
    double comp = 0.0;  // Kahan compensation
    for (long i = 1; i < panels; ++i) {
        const double term = k(-k.a + static_cast<double>(i) * h);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum * h;
}

KernelFloor validate_kernel(const KernelSpec& k, double h0, bool allow_nonlipschitz) {
    if (h0 <= 0.0) throw ConfigError("h0 must be > 0");

    if (k(0.0) <= 0.0)
        throw Error(ErrorKind::ZeroAtOrigin, "J(0) must be positive");

    const int nsamp = 4001;
    const double h = 2.0 * k.a / (nsamp - 1);
    for (int i = 0; i < nsamp; ++i) {
        const double x = -k.a + i * h;
        const double jx = k(x);
        if (jx < 0.0)
            throw Error(ErrorKind::NegativeValue,
                        "J < 0 at x = " + std::to_string(x), -1.0, i);
        if (jx != k(-x))
            throw Error(ErrorKind::NotSymmetric,
                        "J(x) != J(-x) at x = " + std::to_string(x), -1.0, i);
    }

    const double mass = kernel_mass_trapezoid(k);
    if (std::abs(mass - 1.0) > 1e-10)
        throw Error(ErrorKind::MassNotUnit,
                    "integral of J = " + std::to_string(mass));

    if (!k.lipschitz() && !allow_nonlipschitz)
        throw Error(ErrorKind::NotLipschitz,
                    std::string(kernel_family_name(k.family)) +
                        " kernel is not Lipschitz on R; pass "
                        "--allow-nonlipschitz-kernel to admit it");

    KernelFloor floor;
    floor.eps_bar = std::min(k.a / 2.0, h0 / 8.0);
    double jmin = k(0.0);
    const int ngrid = 1001;
    for (int i = 0; i < ngrid; ++i) {
        const double x = -floor.eps_bar + 2.0 * floor.eps_bar * i / (ngrid - 1);
        jmin = std::min(jmin, k(x));
    }
    floor.delta0 = 0.99 * jmin;
    if (floor.delta0 <= 0.0)
        throw Error(ErrorKind::NegativeValue,
                    "kernel has no positive floor on (-eps_bar, eps_bar)");
    return floor;
}

double tail_mass(const KernelSpec& k, double s) {
    if (s < 0.0) return 1.0 - tail_mass(k, -s);
    if (s >= k.a) return 0.0;
    switch (k.family) {
        case KernelFamily::uniform:
            return (k.a - s) / (2.0 * k.a);
        case KernelFamily::tent: {
            const double d = k.a - s;
            return d * d / (2.0 * k.a * k.a);
        }
        case KernelFamily::truncated_gaussian: {
            const double sg = k.sigma;
            const double erf_a = std::erf(k.a / (sg * kSqrt2));
            const double erf_s = std::erf(s / (sg * kSqrt2));
            const double shift = std::exp(-k.a * k.a / (2.0 * sg * sg));
            const double norm = 1.0 / (gauss_box_mass(k.a, sg) - 2.0 * k.a * shift);
            return norm * (sg * kSqrtHalfPi * (erf_a - erf_s) - (k.a - s) * shift);
        }
        case KernelFamily::custom: {
            // fine trapezoid over [s, a]
            const long n = 20000;
            const double h = (k.a - s) / n;
            double sum = 0.5 * (k(s) + k(k.a));
            for (long i = 1; i < n; ++i) sum += k(s + i * h);
            return sum * h;
        }
    }
    return 0.0;
}

} // namespace freefront
