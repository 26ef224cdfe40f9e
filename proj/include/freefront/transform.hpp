#ifndef FREEFRONT_TRANSFORM_HPP
#define FREEFRONT_TRANSFORM_HPP

#include <vector>

namespace freefront {

/// Moving habitat endpoints and their speeds.
struct FrontPair {
    double g = -1.0;
    double h = 1.0;
    double gdot = 0.0;
    double hdot = 0.0;

    double width() const { return h - g; }
};

/// Uniform grid on the reference interval [-1, 1]. Node count is odd so 0
/// is a node; nodes are stored antisymmetrically (y[n-1-j] == -y[j] bitwise)
/// so mirror-symmetric runs stay symmetric to round-off.
struct ReferenceGrid {
    explicit ReferenceGrid(int n);

    int N;
    double dy;
    std::vector<double> y;

    /// Trapezoid weight of node j, in y units (dy, halved at the ends).
    double weight(int j) const { return (j == 0 || j == N - 1) ? 0.5 * dy : dy; }
};

// x(t,y) = ((h-g)y + h+g)/2
double phys_of_ref(const FrontPair& fp, double y);

// y(t,x) = (2x - g - h)/(h - g)
double ref_of_phys(const FrontPair& fp, double x);

// xi(t) = 4/(h-g)^2, the diffusion rescale of the fixed-domain equation
double xi(const FrontPair& fp);

// zeta(t,y) = (h'+g')/(h-g) + (h'-g')y/(h-g), the grid-motion advection
double zeta(const FrontPair& fp, double y);

} // namespace freefront

#endif
