#pragma once

// The ray-arc-ray cross-section of the bend-and-smooth construction, built
// in geodesic normal coordinates at the wedge vertex.  Radial distances in
// this chart equal hyperbolic distances along rays, so the marked junction
// points and the tangency of the smoothing circle are unambiguous.  The
// wedge is laid out symmetrically about the +x bisector: rays at angles
// -theta/2 and +theta/2, smoothing circle centered on the bisector at
// coordinate distance r / cos(theta/2), tangent to both rays at the
// distance-r marks.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"
#include "formulas.hpp"
#include "lorentz.hpp"

namespace pleatlab {

// Calibration constant for the curvature certificate sup kappa_g * R <= C.
// Measured max over the sweep theta in [2.0, pi), r in (0, 0.5] is near 1;
// rounded up to one significant figure and frozen.
inline constexpr double kCurvatureCalibration = 2.0;

struct SmoothedProfile {
    double theta = 0.0;      // wedge angle
    double r = 0.0;          // junction distance along each ray
    double R = 0.0;          // Euclidean arc radius r * tan(theta/2)
    double ray_extent = 0.0; // coordinate length of each ray piece past the junction
    int samples = 0;         // dense samples across the profile
    bool degenerate = false; // theta == pi: straight geodesic, no arc

    double alpha = 0.0;                   // theta / 2
    std::array<double, 2> center{0., 0.}; // smoothing-circle center
    double half_psi = 0.0;                // (pi - theta) / 2, arc half-angle

    double arc_coord_length() const { return degenerate ? 0.0 : R * (std::numbers::pi - theta); }
    double total_coord_length() const { return 2.0 * ray_extent + arc_coord_length(); }
    double junction_in() const { return ray_extent; }
    double junction_out() const { return ray_extent + arc_coord_length(); }

    bool on_arc(double u) const {
        return !degenerate && u > junction_in() && u < junction_out();
    }

    // Coordinate point at parameter u (Euclidean arclength along the curve,
    // from the far end of the incoming ray).
    std::array<double, 2> coord_at(double u) const {
        if (degenerate) {
            // straight line through the origin along the y-axis
            const double y = u - (r + ray_extent);
            return {0.0, y};
        }
        const double ca = std::cos(alpha), sa = std::sin(alpha);
        if (u <= junction_in()) {
            const double rho = r + ray_extent - u;
            return {rho * ca, -rho * sa};
        }
        if (u >= junction_out()) {
            const double rho = r + (u - junction_out());
            return {rho * ca, rho * sa};
        }
        const double psi = half_psi - (u - junction_in()) / R;
        return {center[0] - R * std::cos(psi), center[1] - R * std::sin(psi)};
    }

    // Unit tangent of the coordinate curve at parameter u.
    std::array<double, 2> coord_tangent(double u) const {
        if (degenerate) return {0.0, 1.0};
        const double ca = std::cos(alpha), sa = std::sin(alpha);
        if (u <= junction_in()) return {-ca, sa};
        if (u >= junction_out()) return {ca, sa};
        const double psi = half_psi - (u - junction_in()) / R;
        return {-std::sin(psi), std::cos(psi)};
    }
};

namespace detail {

// exp map at the origin of H^2: radial coordinate distance = hyperbolic
// distance.
inline std::array<double, 3> lift_to_hyperboloid(const std::array<double, 2>& u) {
    const double rho = std::hypot(u[0], u[1]);
    const double f = rho < 1e-8 ? 1.0 + rho * rho / 6.0 : std::sinh(rho) / rho;
    return {f * u[0], f * u[1], std::cosh(rho)};
}

inline double q3(const std::array<double, 3>& x) {
    return x[0] * x[0] + x[1] * x[1] - x[2] * x[2];
}
inline double ip3(const std::array<double, 3>& x, const std::array<double, 3>& y) {
    return x[0] * y[0] + x[1] * y[1] - x[2] * y[2];
}

inline double chord_dist(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    const std::array<double, 3> d{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
    return 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, q3(d))));
}

// Geodesic curvature at parameter u by central differences on the lifted
// curve.  For gamma(u) on the hyperboloid with speed sigma, the curvature
// vector is the projection of gamma'' / sigma^2 orthogonal to the point and
// the tangent.
inline double hyperbolic_curvature_fd(const SmoothedProfile& p, double u, double du) {
    const auto b = lift_to_hyperboloid(p.coord_at(u));
    const auto bp = lift_to_hyperboloid(p.coord_at(u + du));
    const auto bm = lift_to_hyperboloid(p.coord_at(u - du));
    std::array<double, 3> d1, d2;
    for (int i = 0; i < 3; ++i) {
        d1[i] = (bp[i] - bm[i]) / (2.0 * du);
        d2[i] = (bp[i] - 2.0 * b[i] + bm[i]) / (du * du);
    }
    const double sigma2 = q3(d1);
    std::array<double, 3> w = d2;
    const double cb = ip3(w, b); // remove the point component (Q(b) = -1)
    for (int i = 0; i < 3; ++i) w[i] += cb * b[i];
    const double ct = ip3(w, d1) / sigma2;
    for (int i = 0; i < 3; ++i) w[i] -= ct * d1[i];
    return std::sqrt(std::max(0.0, q3(w))) / sigma2;
}

} // namespace detail

inline SmoothedProfile build_profile(double theta, double r, int samples = 40000,
                                     double ray_extent = -1.0) {
    if (!(r > 0.0)) throw domain_error("build_profile: r must be positive");
    if (!(theta > 0.0 && theta <= std::numbers::pi))
        throw domain_error("build_profile: theta must lie in (0, pi]");
    if (samples < 1000) throw config_error("build_profile: need at least 1000 samples");

    SmoothedProfile p;
    p.theta = theta;
    p.r = r;
    p.samples = samples;
    p.ray_extent = ray_extent > 0.0 ? ray_extent : r;
    p.alpha = 0.5 * theta;
    if (theta == std::numbers::pi) {
        p.degenerate = true;
        p.R = std::numeric_limits<double>::infinity();
        return p;
    }
    p.R = smoothing_radius(r, theta);
    p.center = {r / std::cos(p.alpha), 0.0};
    p.half_psi = 0.5 * (std::numbers::pi - theta);
    return p;
}

struct CurvatureSample {
    double s = 0.0;     // hyperbolic arclength from the start of the profile
    double kappa = 0.0; // geodesic curvature in the hyperbolic metric
    bool on_arc = false;
};

struct CurvatureReport {
    std::vector<CurvatureSample> samples;
    double sup_curvature = 0.0;
    double arc_length = 0.0; // hyperbolic length of the smoothing arc
};

namespace detail {

inline double arc_hyperbolic_length(const SmoothedProfile& p, int pieces = 20000) {
    if (p.degenerate) return 0.0;
    const double lo = p.junction_in(), hi = p.junction_out();
    double len = 0.0;
    auto prev = lift_to_hyperboloid(p.coord_at(lo));
    for (int i = 1; i <= pieces; ++i) {
        auto cur = lift_to_hyperboloid(p.coord_at(lo + (hi - lo) * i / pieces));
        len += chord_dist(prev, cur);
        prev = cur;
    }
    return len;
}

} // namespace detail

inline CurvatureReport curvature_profile(const SmoothedProfile& p) {
    if (p.samples < 1000)
        throw config_error("curvature_profile: sampling too coarse");

    CurvatureReport report;
    const double total = p.total_coord_length();
    const double du = total / p.samples;

    // cumulative hyperbolic arclength over the dense grid
    std::vector<double> s(p.samples + 1, 0.0);
    auto prev = detail::lift_to_hyperboloid(p.coord_at(0.0));
    for (int i = 1; i <= p.samples; ++i) {
        auto cur = detail::lift_to_hyperboloid(p.coord_at(i * du));
        s[i] = s[i - 1] + detail::chord_dist(prev, cur);
        prev = cur;
    }

    struct Piece {
        double lo, hi;
        bool arc;
    };
    std::vector<Piece> pieces;
    if (p.degenerate) {
        pieces.push_back({0.0, total, false});
    } else {
        pieces.push_back({0.0, p.junction_in(), false});
        pieces.push_back({p.junction_in(), p.junction_out(), true});
        pieces.push_back({p.junction_out(), total, false});
    }

    for (const Piece& piece : pieces) {
        const double len = piece.hi - piece.lo;
        // FD step: small against the arc radius for accuracy, capped by the
        // piece so the window never straddles a junction
        const double step = piece.arc ? std::min(len / 8.0, 0.05 * std::min(p.R, 20.0))
                                      : std::min(len / 8.0, 0.01);
        const int i_lo = static_cast<int>(std::ceil((piece.lo + step) / du));
        const int i_hi = static_cast<int>(std::floor((piece.hi - step) / du));
        if (piece.arc && i_hi - i_lo < 32)
            throw config_error("curvature_profile: sampling too coarse for the arc");
        for (int i = i_lo; i <= i_hi; ++i) {
            const double kappa = detail::hyperbolic_curvature_fd(p, i * du, step);
            report.samples.push_back({s[i], kappa, piece.arc});
            report.sup_curvature = std::max(report.sup_curvature, kappa);
        }
    }
    report.arc_length = detail::arc_hyperbolic_length(p);
    return report;
}

// (theta, sup kappa_g) along an increasing theta grid at fixed r.
inline std::vector<std::pair<double, double>> decay_sweep(double r,
                                                          const std::vector<double>& thetas) {
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        if (!(thetas[i] > 0.0 && thetas[i] < std::numbers::pi))
            throw domain_error("decay_sweep: grid must lie in (0, pi)");
        if (i > 0 && thetas[i] <= thetas[i - 1])
            throw invalid_input("decay_sweep: grid must be increasing");
    }
    std::vector<std::pair<double, double>> out;
    out.reserve(thetas.size());
    for (double theta : thetas)
        out.emplace_back(theta, curvature_profile(build_profile(theta, r)).sup_curvature);
    return out;
}

struct LengthReport {
    double arc_len = 0.0;
    double corner_len = 0.0; // the replaced corner path, two radial legs of length r
    bool strict = false;
};

inline LengthReport length_decrease(const SmoothedProfile& p) {
    if (p.degenerate) throw invalid_input("length_decrease: profile is degenerate");
    LengthReport rep;
    rep.arc_len = detail::arc_hyperbolic_length(p);
    rep.corner_len = 2.0 * p.r;
    rep.strict = rep.arc_len < rep.corner_len;
    return rep;
}

struct SupportWitness {
    double t = 0.0; // parameter along the supporting geodesic
    std::array<double, 3> point{0., 0., 0.};
    int ray = 0;        // 1 or 2: which neighborhood the geodesic met
    double depth = 0.0; // penetration below eps
};

struct SupportReport {
    bool pass = true;
    std::optional<SupportWitness> witness;
    double vertex_distance = 0.0; // d(p, o)
};

namespace detail {

// Distance from x in H^2 to the geodesic ray from the origin along +x.
inline double dist_to_ray(const std::array<double, 3>& x) {
    const double foot = std::atanh(x[0] / x[2]);
    if (foot >= 0.0) return std::asinh(std::abs(x[1]));
    return std::acosh(std::max(1.0, x[2])); // nearest point is the vertex
}

inline std::array<double, 3> rotate_xy(const std::array<double, 3>& x, double phi) {
    const double c = std::cos(phi), s = std::sin(phi);
    return {c * x[0] - s * x[1], s * x[0] + c * x[1], x[2]};
}

inline SupportReport supporting_check_impl(double theta, double eps, double s,
                                           bool with_second_ray) {
    if (!(eps > 0.0)) throw domain_error("supporting_geodesic_check: eps must be positive");
    if (!(s > 0.0)) throw domain_error("supporting_geodesic_check: s must be positive");

    // p sits on the convex-side boundary of the eps-neighborhood of ray 1
    // (the side facing ray 2), at hypercycle arclength s from the point
    // above the vertex; its foot on the ray is at parameter u.
    const double u = s / std::cosh(eps);
    const double ce = std::cosh(eps), se = std::sinh(eps);
    const std::array<double, 3> axis{std::sinh(u), 0.0, std::cosh(u)};
    const std::array<double, 3> axis_dir{std::cosh(u), 0.0, std::sinh(u)};
    const std::array<double, 3> p{ce * axis[0], se, ce * axis[2]};
    // radial unit tangent at p; the supporting geodesic is its orthogonal
    // complement through p, i.e. the geodesic tangent to the equidistant
    // curve
    const std::array<double, 3> tau = axis_dir;

    SupportReport report;
    report.vertex_distance = std::acosh(ce * std::cosh(u));

    double reach = report.vertex_distance + 8.0;
    if (with_second_ray) reach += tangency_radius(theta, eps);
    const double step = 1e-4;
    const auto n_steps = static_cast<long>(reach / step);
    for (long i = -n_steps; i <= n_steps; ++i) {
        const double t = i * step;
        const double ch = std::cosh(t), sh = std::sinh(t);
        const std::array<double, 3> x{ch * p[0] + sh * tau[0], ch * p[1] + sh * tau[1],
                                      ch * p[2] + sh * tau[2]};
        double d = dist_to_ray(x);
        int ray = 1;
        if (with_second_ray) {
            const double d2 = dist_to_ray(rotate_xy(x, -theta));
            if (d2 < d) {
                d = d2;
                ray = 2;
            }
        }
        if (d < eps - 1e-9 && std::abs(t) > 1e-6) {
            report.pass = false;
            report.witness = SupportWitness{t, x, ray, eps - d};
            return report;
        }
    }
    return report;
}

} // namespace detail

// Lemma-style supporting-geodesic test: rays at angle theta from the vertex,
// p on the convex-side boundary of the eps-neighborhood of ray 1 at
// arclength s; Pass iff the sampled neighborhood of both rays meets the
// tangent geodesic at p only within the contact window.
inline SupportReport supporting_geodesic_check(double theta, double eps, double s) {
    if (!(theta > 0.0 && theta < std::numbers::pi))
        throw domain_error("supporting_geodesic_check: theta must lie in (0, pi)");
    return detail::supporting_check_impl(theta, eps, s, true);
}

// Single-ray control: the neighborhood of one ray is convex, so this passes
// for every s.
inline SupportReport supporting_geodesic_check_single_ray(double eps, double s) {
    return detail::supporting_check_impl(0.0, eps, s, false);
}

// Hypercycle arclength position giving vertex distance d on the eps-boundary.
inline double boundary_arclength_for_distance(double eps, double d) {
    if (!(d > eps)) throw domain_error("boundary_arclength_for_distance: need d > eps");
    const double u = std::acosh(std::cosh(d) / std::cosh(eps));
    return u * std::cosh(eps);
}

// Distance from the wedge vertex to the geodesic joining the ideal endpoints
// of the two rays, computed from the model (lightlike endpoints and the
// polar spacelike vector), independent of the closed-form width.
inline double wedge_width_numeric(double theta) {
    if (!(theta > 0.0 && theta < std::numbers::pi))
        throw domain_error("wedge_width_numeric: theta must lie in (0, pi)");
    const std::array<double, 3> b1{1.0, 0.0, 1.0};
    const std::array<double, 3> b2{std::cos(theta), std::sin(theta), 1.0};
    // J (b1 x b2): Lorentz-orthogonal to both endpoints
    const std::array<double, 3> w{b1[1] * b2[2] - b1[2] * b2[1],
                                  b1[2] * b2[0] - b1[0] * b2[2],
                                  -(b1[0] * b2[1] - b1[1] * b2[0])};
    const double qw = detail::q3(w);
    if (!(qw > 0.0)) throw numeric_error("wedge_width_numeric: degenerate endpoint pair");
    const double pairing = std::abs(w[2]); // |<o, w>| with o = (0,0,1)
    return std::asinh(pairing / std::sqrt(qw));
}

} // namespace pleatlab
