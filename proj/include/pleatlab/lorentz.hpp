#pragma once

// Hyperboloid-model primitives for H^m sitting inside Minkowski space of
// signature (m,1).  Convention used everywhere in this library: the bilinear
// form is <x,y> = x_0 y_0 + ... + x_{m-1} y_{m-1} - x_m y_m, i.e. the time
// coordinate comes last.  H^m is the upper sheet {Q(x) = -1, x_m > 0}.

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <vector>

#include "error.hpp"

namespace pleatlab {

// Constructors accept data within this distance of their constraint set and
// renormalize; anything farther off is rejected.
inline constexpr double kConstraintReject = 1e-6;

struct LorentzVector {
    std::vector<double> c;

    LorentzVector() = default;
    explicit LorentzVector(std::vector<double> coords) : c(std::move(coords)) { validate(); }
    LorentzVector(std::initializer_list<double> coords) : c(coords) { validate(); }

    std::size_t size() const { return c.size(); }
    std::size_t dim() const { return c.size() - 1; } // m
    double operator[](std::size_t i) const { return c[i]; }
    double& operator[](std::size_t i) { return c[i]; }
    double last() const { return c.back(); }

    // Q(x) = <x,x>
    double q() const {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < c.size(); ++i) s += c[i] * c[i];
        return s - c.back() * c.back();
    }

    LorentzVector& operator+=(const LorentzVector& o) {
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
        return *this;
    }
    LorentzVector& operator-=(const LorentzVector& o) {
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
        return *this;
    }
    LorentzVector& operator*=(double s) {
        for (double& x : c) x *= s;
        return *this;
    }

  private:
    void validate() const {
        if (c.size() < 3)
            throw invalid_input("LorentzVector: need m >= 2, i.e. at least 3 coordinates");
        for (double x : c)
            if (!std::isfinite(x)) throw invalid_input("LorentzVector: non-finite coordinate");
    }
};

inline LorentzVector operator+(LorentzVector a, const LorentzVector& b) { return a += b; }
inline LorentzVector operator-(LorentzVector a, const LorentzVector& b) { return a -= b; }
inline LorentzVector operator*(double s, LorentzVector a) { return a *= s; }

inline double lorentz_inner(const LorentzVector& x, const LorentzVector& y) {
    if (x.size() != y.size()) throw invalid_input("lorentz_inner: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) s += x[i] * y[i];
    return s - x.last() * y.last();
}

// Point on the upper sheet.  The constructor renormalizes x / sqrt(-Q(x));
// inputs with |Q + 1| > kConstraintReject or x_m <= 0 are rejected.
struct HPoint {
    LorentzVector v;

    explicit HPoint(LorentzVector x) : v(std::move(x)) {
        const double qv = v.q();
        if (std::abs(qv + 1.0) > kConstraintReject)
            throw invalid_input("HPoint: |Q(x)+1| exceeds rejection threshold");
        if (v.last() <= 0.0) throw invalid_input("HPoint: not on the upper sheet");
        v *= 1.0 / std::sqrt(-qv);
    }

    std::size_t dim() const { return v.dim(); }

    static HPoint basepoint(std::size_t m) {
        std::vector<double> c(m + 1, 0.0);
        c.back() = 1.0;
        return HPoint(LorentzVector(std::move(c)));
    }
};

// Unit tangent vector at a base point.  The constructor projects the
// direction onto the tangent space and normalizes it; raw data farther than
// kConstraintReject from the constraints is rejected.
struct TangentVector {
    HPoint base;
    LorentzVector dir;

    TangentVector(HPoint p, LorentzVector d) : base(std::move(p)), dir(std::move(d)) {
        if (dir.size() != base.v.size()) throw invalid_input("TangentVector: dimension mismatch");
        const double ip = lorentz_inner(base.v, dir);
        if (std::abs(ip) > kConstraintReject)
            throw invalid_input("TangentVector: direction not orthogonal to base");
        // <base,base> = -1, so adding ip*base removes the base component
        dir += ip * base.v;
        const double qd = dir.q();
        if (std::abs(qd - 1.0) > kConstraintReject)
            throw invalid_input("TangentVector: direction not unit spacelike");
        dir *= 1.0 / std::sqrt(qd);
    }
};

// Totally geodesic hyperplane {x in H^m : <x,normal> = 0}, normal unit
// spacelike.
struct Hyperplane {
    LorentzVector normal;

    explicit Hyperplane(LorentzVector n) : normal(std::move(n)) {
        const double qn = normal.q();
        if (std::abs(qn - 1.0) > kConstraintReject)
            throw invalid_input("Hyperplane: normal not unit spacelike");
        normal *= 1.0 / std::sqrt(qn);
    }

    // Normalize an arbitrary spacelike vector.
    static Hyperplane from_spacelike(const LorentzVector& n) {
        const double qn = n.q();
        if (!(qn > 0.0)) throw invalid_input("Hyperplane: vector is not spacelike");
        LorentzVector u = n;
        u *= 1.0 / std::sqrt(qn);
        return Hyperplane(std::move(u));
    }
};

// Point of the ideal boundary, stored as the lightlike ray scaled to last
// coordinate 1.
struct BoundaryPoint {
    LorentzVector ray;

    explicit BoundaryPoint(LorentzVector r) : ray(std::move(r)) {
        if (ray.last() <= 0.0) throw invalid_input("BoundaryPoint: ray must point forward");
        ray *= 1.0 / ray.last();
        double s2 = 0.0;
        for (std::size_t i = 0; i + 1 < ray.size(); ++i) s2 += ray[i] * ray[i];
        if (std::abs(s2 - 1.0) > kConstraintReject)
            throw invalid_input("BoundaryPoint: |Q(ray)| exceeds rejection threshold");
        const double inv = 1.0 / std::sqrt(s2);
        for (std::size_t i = 0; i + 1 < ray.size(); ++i) ray[i] *= inv;
    }
};

// cosh d = -<p,q>.  Computed through the chord Q(p-q) = 4 sinh^2(d/2), which
// stays accurate for nearby points where the inner product saturates at -1.
inline double dist(const HPoint& p, const HPoint& q) {
    const double mip = -lorentz_inner(p.v, q.v);
    if (mip < 1.0 - 1e-9) throw invalid_input("dist: input off the upper sheet");
    double qc = (p.v - q.v).q();
    if (qc < 0.0) qc = 0.0;
    return 2.0 * std::asinh(0.5 * std::sqrt(qc));
}

// gamma(t) = cosh(t) p + sinh(t) v
inline HPoint geodesic_point(const HPoint& p, const TangentVector& v, double t) {
    if (p.v.size() != v.base.v.size() || dist(p, v.base) > 1e-8)
        throw invalid_input("geodesic_point: tangent vector not based at p");
    return HPoint(std::cosh(t) * p.v + std::sinh(t) * v.dir);
}

// Geodesic flow: the point together with the parallel-transported velocity.
inline TangentVector geodesic_flow(const HPoint& p, const TangentVector& v, double t) {
    HPoint pt(std::cosh(t) * p.v + std::sinh(t) * v.dir);
    return TangentVector(pt, std::sinh(t) * p.v + std::cosh(t) * v.dir);
}

struct HyperplaneRelation {
    enum class Kind { intersecting, tangent, disjoint, coincident };
    Kind kind;
    double angle = 0.0;      // dihedral angle, set when intersecting
    double separation = 0.0; // distance between the hyperplanes, set when disjoint
};

// cos(angle) = |<u1,u2>| for transverse hyperplanes; |<u1,u2>| = 1 within
// 1e-12 is surfaced as tangency (or coincidence when the normals agree up to
// sign) and |<u1,u2>| > 1 gives the separation arccosh|<u1,u2>|.
inline HyperplaneRelation hyperplane_angle(const Hyperplane& u1, const Hyperplane& u2) {
    if (u1.normal.size() != u2.normal.size())
        throw invalid_input("hyperplane_angle: dimension mismatch");
    double same = 0.0, opp = 0.0;
    for (std::size_t i = 0; i < u1.normal.size(); ++i) {
        same = std::max(same, std::abs(u1.normal[i] - u2.normal[i]));
        opp = std::max(opp, std::abs(u1.normal[i] + u2.normal[i]));
    }
    if (same <= 1e-9 || opp <= 1e-9)
        return {HyperplaneRelation::Kind::coincident, 0.0, 0.0};
    const double g = std::abs(lorentz_inner(u1.normal, u2.normal));
    if (std::abs(g - 1.0) <= 1e-12) return {HyperplaneRelation::Kind::tangent, 0.0, 0.0};
    if (g < 1.0) return {HyperplaneRelation::Kind::intersecting, std::acos(g), 0.0};
    return {HyperplaneRelation::Kind::disjoint, 0.0, std::acosh(g)};
}

struct HyperplaneProjection {
    HPoint foot;
    double signed_dist; // sinh(signed_dist) = <x, normal>
};

// Nearest-point projection onto the hyperplane; 1-Lipschitz.
inline HyperplaneProjection project_to_hyperplane(const HPoint& x, const Hyperplane& u) {
    if (x.v.size() != u.normal.size())
        throw invalid_input("project_to_hyperplane: dimension mismatch");
    const double s = lorentz_inner(x.v, u.normal);
    LorentzVector f = x.v - s * u.normal; // Q(f) = -1 - s^2
    f *= 1.0 / std::sqrt(1.0 + s * s);
    return {HPoint(std::move(f)), std::asinh(s)};
}

// Equidistant push: cosh(t) p + sinh(t) u for p on the hyperplane.
inline HPoint push_off(const HPoint& p, const Hyperplane& u, double t) {
    const double s = lorentz_inner(p.v, u.normal);
    if (std::abs(s) > kConstraintReject)
        throw invalid_input("push_off: point is not on the hyperplane");
    HPoint base = project_to_hyperplane(p, u).foot; // scrub residual offset
    return HPoint(std::cosh(t) * base.v + std::sinh(t) * u.normal);
}

enum class Separation { separated, same_side, on_limit };

inline Separation separates(const Hyperplane& u, const BoundaryPoint& b1,
                            const BoundaryPoint& b2) {
    const double s1 = lorentz_inner(b1.ray, u.normal);
    const double s2 = lorentz_inner(b2.ray, u.normal);
    if (std::abs(s1) <= 1e-12 || std::abs(s2) <= 1e-12) return Separation::on_limit;
    return (s1 > 0) != (s2 > 0) ? Separation::separated : Separation::same_side;
}

// Small dense square matrix, used for isometry application and the
// G^T J G = J check.
struct Matrix {
    std::size_t n = 0;
    std::vector<double> a; // row-major

    Matrix() = default;
    explicit Matrix(std::size_t size) : n(size), a(size * size, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    static Matrix identity(std::size_t size) {
        Matrix m(size);
        for (std::size_t i = 0; i < size; ++i) m.at(i, i) = 1.0;
        return m;
    }

    // J = diag(1, ..., 1, -1)
    static Matrix minkowski(std::size_t size) {
        Matrix m = identity(size);
        m.at(size - 1, size - 1) = -1.0;
        return m;
    }

    LorentzVector apply(const LorentzVector& x) const {
        if (x.size() != n) throw invalid_input("Matrix::apply: dimension mismatch");
        std::vector<double> r(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) r[i] += at(i, j) * x[j];
        return LorentzVector(std::move(r));
    }

    Matrix mul(const Matrix& o) const {
        Matrix r(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const double aik = at(i, k);
                for (std::size_t j = 0; j < n; ++j) r.at(i, j) += aik * o.at(k, j);
            }
        return r;
    }

    Matrix transposed() const {
        Matrix r(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    // max |(G^T J G - J)_{ij}|
    double minkowski_defect() const {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k + 1 < n; ++k) s += at(k, i) * at(k, j);
                s -= at(n - 1, i) * at(n - 1, j);
                const double target = (i == j) ? (i + 1 == n ? -1.0 : 1.0) : 0.0;
                worst = std::max(worst, std::abs(s - target));
            }
        return worst;
    }

    bool preserves_minkowski(double tol = 1e-9) const { return minkowski_defect() <= tol; }
};

} // namespace pleatlab
