#include "freefront/transform.hpp"
#include "freefront/error.hpp"

#include <cmath>

namespace freefront {

ReferenceGrid::ReferenceGrid(int n) : N(n) {
    if (n < 5 || n % 2 == 0)
        throw ConfigError("grid.N must be odd and >= 5, got " + std::to_string(n));
    dy = 2.0 / (n - 1);
    y.resize(n);
    const int mid = (n - 1) / 2;
    y[mid] = 0.0;
    for (int j = 0; j < mid; ++j) {
        y[j] = -1.0 + 2.0 * j / static_cast<double>(n - 1);
        y[n - 1 - j] = -y[j];
    }
}

double phys_of_ref(const FrontPair& fp, double y) {
    if (y < -1.0 - 1e-12 || y > 1.0 + 1e-12)
        throw Error(ErrorKind::OutOfRange, "y = " + std::to_string(y));
    return 0.5 * ((fp.h - fp.g) * y + fp.h + fp.g);
}

double ref_of_phys(const FrontPair& fp, double x) {
    if (fp.h <= fp.g)
        throw Error(ErrorKind::DegenerateInterval, "h <= g");
    const double tol = 1e-12 * std::max({1.0, std::abs(fp.g), std::abs(fp.h)});
    if (x < fp.g - tol || x > fp.h + tol)
        throw Error(ErrorKind::OutOfRange, "x = " + std::to_string(x));
    return (2.0 * x - fp.g - fp.h) / (fp.h - fp.g);
}

double xi(const FrontPair& fp) {
    const double w = fp.width();
    if (w <= 0.0)
        throw Error(ErrorKind::DegenerateInterval, "h <= g");
    return 4.0 / (w * w);
}

double zeta(const FrontPair& fp, double y) {
    const double w = fp.width();
    if (w <= 0.0)
        throw Error(ErrorKind::DegenerateInterval, "h <= g");
    return (fp.hdot + fp.gdot) / w + (fp.hdot - fp.gdot) * y / w;
}

} // namespace freefront
