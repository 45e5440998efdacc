#pragma once

// Finite wall systems on the ideal circle: a wall is a chord given by its
// two endpoint angles, and its halfspaces are the two open arcs.  Walls
// cross exactly when their endpoints interleave.  General position (all
// endpoint angles pairwise distinct) is required; callers perturb.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"

namespace pleatlab {

namespace detail {

inline double wrap_angle(double t) {
    const double two_pi = 2.0 * std::numbers::pi;
    t = std::fmod(t, two_pi);
    if (t < 0.0) t += two_pi;
    return t;
}

inline double circle_gap(double a, double b) {
    const double two_pi = 2.0 * std::numbers::pi;
    double g = std::abs(wrap_angle(a) - wrap_angle(b));
    return std::min(g, two_pi - g);
}

// t strictly inside the ccw arc from `from` to `to`
inline bool in_ccw_arc(double t, double from, double to) {
    const double two_pi = 2.0 * std::numbers::pi;
    double span = wrap_angle(to - from);
    if (span == 0.0) span = two_pi;
    const double off = wrap_angle(t - from);
    return off > 0.0 && off < span;
}

} // namespace detail

inline constexpr double kEndpointTol = 1e-12;

struct Wall {
    double a, b; // distinct ideal angles in [0, 2pi)

    Wall(double a_, double b_) : a(detail::wrap_angle(a_)), b(detail::wrap_angle(b_)) {
        if (detail::circle_gap(a, b) <= kEndpointTol)
            throw invalid_input("Wall: endpoints must be distinct");
    }

    // halfspace 0 is the ccw arc a -> b, halfspace 1 the arc b -> a
    int side(double t) const { return detail::in_ccw_arc(t, a, b) ? 0 : 1; }

    bool touches(double t) const {
        return detail::circle_gap(t, a) <= kEndpointTol || detail::circle_gap(t, b) <= kEndpointTol;
    }

    Wall rotated(double phi) const { return Wall(a + phi, b + phi); }
};

// Chord interleaving: the endpoints of w2 lie in different open arcs of w1.
inline bool crosses(const Wall& w1, const Wall& w2) {
    if (w1.touches(w2.a) || w1.touches(w2.b))
        throw invalid_input("crosses: walls share an endpoint (general position violated)");
    return w1.side(w2.a) != w1.side(w2.b);
}

// Do the open arcs (wall w1, side s1) and (wall w2, side s2) intersect?
// With distinct endpoints, two open arcs meet iff some endpoint of one lies
// inside the other (containment included).
inline bool halfspaces_intersect(const Wall& w1, int s1, const Wall& w2, int s2) {
    const double f1 = s1 == 0 ? w1.a : w1.b, t1 = s1 == 0 ? w1.b : w1.a;
    const double f2 = s2 == 0 ? w2.a : w2.b, t2 = s2 == 0 ? w2.b : w2.a;
    return detail::in_ccw_arc(f2, f1, t1) || detail::in_ccw_arc(t2, f1, t1) ||
           detail::in_ccw_arc(f1, f2, t2) || detail::in_ccw_arc(t1, f2, t2);
}

struct WallSystem {
    std::vector<Wall> walls;
    int symmetry_n = 1; // rotations by 2 pi k / N are declared to permute the walls

    WallSystem(std::vector<Wall> ws, int symmetry = 1)
        : walls(std::move(ws)), symmetry_n(symmetry) {
        if (symmetry_n < 1) throw invalid_input("WallSystem: symmetry order must be >= 1");
        std::vector<double> endpoints;
        for (const Wall& w : walls) {
            endpoints.push_back(w.a);
            endpoints.push_back(w.b);
        }
        for (std::size_t i = 0; i < endpoints.size(); ++i)
            for (std::size_t j = i + 1; j < endpoints.size(); ++j)
                if (detail::circle_gap(endpoints[i], endpoints[j]) <= kEndpointTol)
                    throw invalid_input("WallSystem: endpoint angles must be pairwise distinct");
    }

    std::size_t size() const { return walls.size(); }
};

// First wall (by index) whose halfspaces split the boundary pair.
inline std::optional<std::size_t> separates_pair(const WallSystem& ws, double b1, double b2) {
    for (const Wall& w : ws.walls)
        if (w.touches(b1) || w.touches(b2))
            throw invalid_input("separates_pair: boundary point coincides with a wall endpoint");
    for (std::size_t i = 0; i < ws.walls.size(); ++i)
        if (ws.walls[i].side(b1) != ws.walls[i].side(b2)) return i;
    return std::nullopt;
}

struct FillingReport {
    bool filling = false;
    int resolution = 0;
    long pairs_checked = 0;
    std::optional<std::pair<double, double>> first_unseparated;
};

// Bounded-search semi-decision: does some wall separate every pair of an
// N-point grid (offset off the wall endpoints)?  A positive answer is
// "filling at resolution N", not a proof of strong filling.
inline FillingReport filling_at_resolution(const WallSystem& ws, int resolution) {
    if (resolution < 2) throw invalid_input("filling_at_resolution: need at least 2 points");
    const double two_pi = 2.0 * std::numbers::pi;
    double offset = 0.2371;
    for (int attempt = 0; attempt < 64; ++attempt) {
        bool clear = true;
        for (int i = 0; i < resolution && clear; ++i) {
            const double t = two_pi * (i + offset) / resolution;
            for (const Wall& w : ws.walls)
                if (w.touches(t)) {
                    clear = false;
                    break;
                }
        }
        if (clear) break;
        offset += 1.0 / 97.0;
        if (attempt == 63)
            throw numeric_error("filling_at_resolution: could not place grid off endpoints");
    }

    FillingReport rep;
    rep.resolution = resolution;
    rep.filling = true;
    for (int i = 0; i < resolution; ++i) {
        for (int j = i + 1; j < resolution; ++j) {
            const double t1 = two_pi * (i + offset) / resolution;
            const double t2 = two_pi * (j + offset) / resolution;
            ++rep.pairs_checked;
            if (!separates_pair(ws, t1, t2)) {
                rep.filling = false;
                if (!rep.first_unseparated) rep.first_unseparated = {t1, t2};
            }
        }
    }
    return rep;
}

} // namespace pleatlab
