#pragma once

// Closed-form hyperbolic trigonometry: the inversion r(x) = log coth(x/2),
// ball volumes, the tube-width function, the tangency radius of a wedge
// neighborhood, the convex-hull width, and the smoothing-circle radius.
// Angles are radians throughout.

#include <cmath>
#include <numbers>

#include "error.hpp"

namespace pleatlab {

struct TubeQuery {
    int dimension = 2; // n, the hypersurface dimension
    double area = 1.0; // hyperbolic n-volume A > 0
};

struct WedgeParams {
    double theta; // dihedral angle in (0, pi)
    double eps;   // neighborhood radius > 0
    double r;     // junction distance > 0
};

// r(x) = log coth(x/2) = log1p(2 / (e^x - 1)); a strictly decreasing
// involution of (0, inf).
inline double inversion_r(double x) {
    if (!(x > 0.0)) throw domain_error("inversion_r: x must be positive");
    return std::log1p(2.0 / std::expm1(x));
}

namespace detail {

// Vol(S^{d}) for d = 0..7; supports ball volumes up to n = 8.
inline constexpr double kSphereVolume[8] = {
    2.0,
    2.0 * std::numbers::pi,
    4.0 * std::numbers::pi,
    2.0 * std::numbers::pi * std::numbers::pi,
    8.0 * std::numbers::pi * std::numbers::pi / 3.0,
    std::numbers::pi * std::numbers::pi * std::numbers::pi,
    16.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi / 15.0,
    std::numbers::pi * std::numbers::pi * std::numbers::pi * std::numbers::pi / 3.0,
};

// int_0^rho sinh^k t dt by the standard reduction formula.
inline double sinh_power_integral(int k, double rho) {
    if (k == 0) return rho;
    if (k == 1) return std::cosh(rho) - 1.0;
    const double sh = std::sinh(rho), ch = std::cosh(rho);
    return (std::pow(sh, k - 1) * ch) / k -
           (double(k - 1) / k) * sinh_power_integral(k - 2, rho);
}

} // namespace detail

// Volume of the hyperbolic n-ball of radius rho:
// Vol(S^{n-1}) * int_0^rho sinh^{n-1} t dt.  Supported for n in [1,8].
inline double ball_volume(int n, double rho) {
    if (n < 1 || n > 8) throw config_error("ball_volume: supported dimensions are 1..8");
    if (!(rho >= 0.0)) throw domain_error("ball_volume: radius must be nonnegative");
    return detail::kSphereVolume[n - 1] * detail::sinh_power_integral(n - 1, rho);
}

// Tube width c(A) solving V_n(r(2c)) = A; the composition V_n . r is
// strictly decreasing, so the inverse is found by bisection with bracket
// auto-expansion.
inline double tube_width(const TubeQuery& query) {
    const int n = query.dimension;
    const double area = query.area;
    if (n < 1 || n > 8) throw config_error("tube_width: supported dimensions are 1..8");
    if (!(area > 0.0)) throw domain_error("tube_width: area must be positive");

    const auto g = [n](double x) { return ball_volume(n, inversion_r(x)); };

    double lo = 1e-3, hi = 1.0;
    for (int i = 0; g(lo) < area; ++i) {
        if (i > 600 || lo < 1e-300)
            throw numeric_error("tube_width: failed to bracket below; area too large");
        lo *= 0.25;
    }
    for (int i = 0; g(hi) > area; ++i) {
        if (i > 600) throw numeric_error("tube_width: failed to bracket above");
        hi *= 4.0;
    }
    for (int i = 0; i < 400 && (hi - lo) > 1e-12 * lo; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) >= area ? lo : hi) = mid;
    }
    return 0.5 * (0.5 * (lo + hi));
}

// r(theta) = arccosh(cosh(eps) sqrt(1 + cot^2(theta/2) coth^2(eps))): the
// distance from the wedge vertex beyond which the supporting geodesic of the
// eps-neighborhood boundary avoids the whole neighborhood.
inline double tangency_radius(double theta, double eps) {
    if (!(theta > 0.0 && theta < std::numbers::pi))
        throw domain_error("tangency_radius: theta must lie in (0, pi)");
    if (!(eps > 0.0)) throw domain_error("tangency_radius: eps must be positive");
    const double c = (std::cos(0.5 * theta) / std::sin(0.5 * theta)) / std::tanh(eps);
    return std::acosh(std::cosh(eps) * std::sqrt(1.0 + c * c));
}

// cosh w = cosh(eps) / sin(theta/2)
inline double hull_width(double theta, double eps) {
    if (!(theta > 0.0 && theta < std::numbers::pi))
        throw domain_error("hull_width: theta must lie in (0, pi)");
    if (!(eps >= 0.0)) throw domain_error("hull_width: eps must be nonnegative");
    const double arg = std::cosh(eps) / std::sin(0.5 * theta);
    if (arg < 1.0) throw domain_error("hull_width: arccosh argument below 1");
    return std::acosh(arg);
}

// R = r tan(theta/2), the radius of the smoothing circle in normal
// coordinates.
inline double smoothing_radius(double r, double theta) {
    if (!(r > 0.0)) throw domain_error("smoothing_radius: r must be positive");
    if (!(theta > 0.0 && theta < std::numbers::pi))
        throw domain_error("smoothing_radius: theta must lie in (0, pi)");
    return r * std::tan(0.5 * theta);
}

} // namespace pleatlab
