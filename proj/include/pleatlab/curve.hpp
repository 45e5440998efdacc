#pragma once

// Unit-speed curves of prescribed geodesic curvature on the hyperbolic
// plane, integrated in the embedding: b'' = b + kappa(t) n(t), where n is
// the rotation of b' by +pi/2 in the tangent plane.  A classical order-4
// one-step method with per-step projection back onto the constraint set
// keeps the samples on the hyperboloid, and the comparison certificate
// checks d(a(t), b(t)) <= k (cosh t - 1) against the tangent geodesic.

#include <array>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "error.hpp"
#include "lorentz.hpp"

namespace pleatlab {

struct CurvatureProfile {
    std::function<double(double)> kappa; // signed curvature at arclength t
    double bound = 0.0;                  // k with sup|kappa| <= k

    static CurvatureProfile constant(double k) {
        return {[k](double) { return k; }, std::abs(k)};
    }
    static CurvatureProfile geodesic() { return constant(0.0); }
};

struct IntegratorConfig {
    double step = 1e-3; // h in (0, 0.01]
    bool project = true;
};

// Samples at t = 0, h, 2h, ..., T; each sample carries the point and the
// unit tangent.
struct SampledCurve {
    double step = 0.0;
    std::vector<TangentVector> samples;

    double duration() const { return step * (samples.size() - 1); }
};

// k (cosh t - 1), the deviation bound between a geodesic and a tangent
// k-geodesic.
inline double deviation_bound(double k, double t) {
    if (k < 0.0 || t < 0.0) throw domain_error("deviation_bound: k and t must be nonnegative");
    return k * (std::cosh(t) - 1.0);
}

namespace detail {

using Vec3 = std::array<double, 3>;

inline double q3(const Vec3& x) { return x[0] * x[0] + x[1] * x[1] - x[2] * x[2]; }
inline double ip3(const Vec3& x, const Vec3& y) {
    return x[0] * y[0] + x[1] * y[1] - x[2] * y[2];
}

// J (p x v): the unit normal completing (p, v) to an oriented frame.
inline Vec3 plane_normal(const Vec3& p, const Vec3& v) {
    return {p[1] * v[2] - p[2] * v[1], p[2] * v[0] - p[0] * v[2],
            -(p[0] * v[1] - p[1] * v[0])};
}

struct CurveState {
    Vec3 p, v;
};

inline CurveState rhs(const CurveState& y, double kappa) {
    const Vec3 n = plane_normal(y.p, y.v);
    CurveState d;
    d.p = y.v;
    for (int i = 0; i < 3; ++i) d.v[i] = y.p[i] + kappa * n[i];
    return d;
}

inline CurveState axpy(const CurveState& y, double a, const CurveState& d) {
    CurveState r;
    for (int i = 0; i < 3; ++i) {
        r.p[i] = y.p[i] + a * d.p[i];
        r.v[i] = y.v[i] + a * d.v[i];
    }
    return r;
}

inline double constraint_defect(const CurveState& y) {
    double w = std::abs(q3(y.p) + 1.0);
    w = std::max(w, std::abs(q3(y.v) - 1.0));
    return std::max(w, std::abs(ip3(y.p, y.v)));
}

inline void project_state(CurveState& y) {
    const double np = std::sqrt(-q3(y.p));
    for (int i = 0; i < 3; ++i) y.p[i] /= np;
    const double ip = ip3(y.p, y.v);
    for (int i = 0; i < 3; ++i) y.v[i] += ip * y.p[i]; // <p,p> = -1
    const double nv = std::sqrt(q3(y.v));
    for (int i = 0; i < 3; ++i) y.v[i] /= nv;
}

// One classical RK4 step from time t, then constraint handling.
inline void rk4_step(CurveState& y, double t, double h, const CurvatureProfile& profile,
                     bool project) {
    const auto kap = [&](double s) {
        const double k = profile.kappa(s);
        if (std::abs(k) > profile.bound + 1e-12)
            throw invalid_input("integrate_curve: |kappa(t)| exceeds the stated bound");
        return k;
    };
    const CurveState k1 = rhs(y, kap(t));
    const CurveState k2 = rhs(axpy(y, 0.5 * h, k1), kap(t + 0.5 * h));
    const CurveState k3 = rhs(axpy(y, 0.5 * h, k2), kap(t + 0.5 * h));
    const CurveState k4 = rhs(axpy(y, h, k3), kap(t + h));
    for (int i = 0; i < 3; ++i) {
        y.p[i] += h / 6.0 * (k1.p[i] + 2.0 * k2.p[i] + 2.0 * k3.p[i] + k4.p[i]);
        y.v[i] += h / 6.0 * (k1.v[i] + 2.0 * k2.v[i] + 2.0 * k3.v[i] + k4.v[i]);
    }
    if (constraint_defect(y) > 1e-6)
        throw numeric_error("integrate_curve: constraint drift beyond 1e-6 before projection");
    if (project) project_state(y);
}

inline CurveState initial_state(const HPoint& p0, const TangentVector& v0) {
    if (p0.v.size() != 3)
        throw invalid_input("integrate_curve: curve work is restricted to the hyperbolic plane");
    if (dist(p0, v0.base) > 1e-8)
        throw invalid_input("integrate_curve: tangent vector not based at p0");
    return {{p0.v[0], p0.v[1], p0.v[2]}, {v0.dir[0], v0.dir[1], v0.dir[2]}};
}

inline void check_config(const IntegratorConfig& cfg) {
    if (!(cfg.step > 0.0 && cfg.step <= 0.01))
        throw config_error("IntegratorConfig: step must lie in (0, 0.01]");
}

inline TangentVector to_sample(const CurveState& y) {
    return TangentVector(HPoint(LorentzVector{y.p[0], y.p[1], y.p[2]}),
                         LorentzVector{y.v[0], y.v[1], y.v[2]});
}

} // namespace detail

inline SampledCurve integrate_curve(const HPoint& p0, const TangentVector& v0,
                                    const CurvatureProfile& profile, double T,
                                    const IntegratorConfig& cfg) {
    detail::check_config(cfg);
    if (!(T > 0.0)) throw domain_error("integrate_curve: T must be positive");
    detail::CurveState y = detail::initial_state(p0, v0);

    const std::size_t steps = static_cast<std::size_t>(std::llround(T / cfg.step));
    SampledCurve curve;
    curve.step = cfg.step;
    curve.samples.reserve(steps + 1);
    curve.samples.push_back(detail::to_sample(y));
    for (std::size_t i = 0; i < steps; ++i) {
        detail::rk4_step(y, i * cfg.step, cfg.step, profile, cfg.project);
        curve.samples.push_back(detail::to_sample(y));
    }
    return curve;
}

struct ComparisonReport {
    double max_ratio = 0.0;
    bool pass = true;
};

// Integrate the geodesic a and the kappa = k curve b from identical initial
// data and certify d(a(t), b(t)) <= k(cosh t - 1) at every sample.
inline ComparisonReport verify_comparison_profile(const CurvatureProfile& profile, double T,
                                                  const IntegratorConfig& cfg) {
    detail::check_config(cfg);
    if (!(T > 0.0 && T <= 6.0))
        throw domain_error("verify_comparison: T must lie in (0, 6]");

    const HPoint p0 = HPoint::basepoint(2);
    const TangentVector v0(p0, LorentzVector{1.0, 0.0, 0.0});
    detail::CurveState a = detail::initial_state(p0, v0);
    detail::CurveState b = a;
    const CurvatureProfile zero = CurvatureProfile::geodesic();

    ComparisonReport report;
    const std::size_t steps = static_cast<std::size_t>(std::llround(T / cfg.step));
    for (std::size_t i = 0; i < steps; ++i) {
        const double t0 = i * cfg.step;
        detail::rk4_step(a, t0, cfg.step, zero, cfg.project);
        detail::rk4_step(b, t0, cfg.step, profile, cfg.project);
        const double t = (i + 1) * cfg.step;
        double chord = 0.0;
        for (int j = 0; j < 3; ++j) {
            const double dj = a.p[j] - b.p[j];
            chord += (j == 2 ? -dj * dj : dj * dj);
        }
        const double d = 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, chord)));
        const double bound = deviation_bound(profile.bound, t);
        if (d > bound * (1.0 + 1e-5) + 1e-9) report.pass = false;
        if (bound > 0.0) report.max_ratio = std::max(report.max_ratio, d / bound);
    }
    return report;
}

inline ComparisonReport verify_comparison(double k, double T, const IntegratorConfig& cfg) {
    if (!(k > 0.0 && k < 1.0)) throw domain_error("verify_comparison: k must lie in (0, 1)");
    return verify_comparison_profile(CurvatureProfile::constant(k), T, cfg);
}

// A curve with |kappa| <= k stays within deviation_bound(k, t) of the
// geodesic sharing its initial data.
inline bool cone_trap_check(const SampledCurve& curve, double k) {
    if (curve.samples.empty()) throw invalid_input("cone_trap_check: empty curve");
    const TangentVector& start = curve.samples.front();
    for (std::size_t i = 1; i < curve.samples.size(); ++i) {
        const double t = i * curve.step;
        const HPoint axis = geodesic_point(start.base, start, t);
        const double d = dist(curve.samples[i].base, axis);
        if (d > deviation_bound(k, t) * (1.0 + 1e-5) + 1e-9) return false;
    }
    return true;
}

} // namespace pleatlab
