#pragma once

// Exact arithmetic in the real quadratic field Q(sqrt(d)), d squarefree > 1.
// Elements are stored in the integral basis of the ring of integers:
// {1, sqrt(d)} when d != 1 (mod 4) and {1, (1+sqrt(d))/2} when d == 1
// (mod 4).  Coordinates are exact rationals (GMP), so ring elements carry
// integer coordinates and field elements arising from pivoting stay exact.
// Sign queries are answered without floating point by comparing x^2 with
// d y^2 in the presentation x + y sqrt(d).

#include <cmath>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "error.hpp"

namespace pleatlab {

struct RingBasis {
    long d = 2;        // squarefree, > 1
    bool half = false; // omega = (1 + sqrt(d)) / 2 instead of sqrt(d)

    bool operator==(const RingBasis&) const = default;

    // omega^2 = m + t * omega
    long omega_sq_const() const { return half ? (d - 1) / 4 : d; }
    long omega_sq_lin() const { return half ? 1 : 0; }
};

inline RingBasis ring_basis(long d) {
    if (d <= 1) throw invalid_input("ring_basis: d must be greater than 1");
    for (long p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0) throw invalid_input("ring_basis: d must be squarefree");
    return {d, d % 4 == 1};
}

// a + b * omega with exact rational coordinates.
struct QuadElem {
    mpq_class a, b;
    RingBasis basis;

    QuadElem() : a(0), b(0) {}
    QuadElem(mpq_class a_, mpq_class b_, RingBasis basis_)
        : a(std::move(a_)), b(std::move(b_)), basis(basis_) {
        a.canonicalize();
        b.canonicalize();
    }
    static QuadElem integer(long v, RingBasis basis) { return {mpq_class(v), mpq_class(0), basis}; }
    static QuadElem sqrt_d(RingBasis basis) {
        // sqrt(d) = omega, or 2*omega - 1 in the half-integer basis
        if (basis.half) return {mpq_class(-1), mpq_class(2), basis};
        return {mpq_class(0), mpq_class(1), basis};
    }

    bool is_zero() const { return a == 0 && b == 0; }

    // presentation x + y sqrt(d)
    std::pair<mpq_class, mpq_class> xy() const {
        if (basis.half) return {a + b / 2, b / 2};
        return {a, b};
    }

    // Galois conjugate, sqrt(d) -> -sqrt(d)
    QuadElem conj() const {
        if (basis.half) return {a + b, -b, basis};
        return {a, -b, basis};
    }

    QuadElem operator+(const QuadElem& o) const { return {a + o.a, b + o.b, basis}; }
    QuadElem operator-(const QuadElem& o) const { return {a - o.a, b - o.b, basis}; }
    QuadElem operator-() const { return {-a, -b, basis}; }

    QuadElem operator*(const QuadElem& o) const {
        const long m = basis.omega_sq_const();
        const long t = basis.omega_sq_lin();
        mpq_class na = a * o.a + m * (b * o.b);
        mpq_class nb = a * o.b + b * o.a + t * (b * o.b);
        return {std::move(na), std::move(nb), basis};
    }

    QuadElem inverse() const {
        // 1 / (x + y sqrt(d)) = (x - y sqrt(d)) / (x^2 - d y^2)
        auto [x, y] = xy();
        mpq_class norm = x * x - basis.d * (y * y);
        if (norm == 0) throw domain_error("QuadElem: element is not invertible");
        return from_xy(x / norm, -y / norm, basis);
    }

    QuadElem operator/(const QuadElem& o) const { return *this * o.inverse(); }

    bool operator==(const QuadElem& o) const { return a == o.a && b == o.b; }

    // sign under the embedding sqrt(d) -> +sqrt(d) (or the conjugate one)
    int sign(bool conjugate_embedding = false) const {
        auto [x, y] = xy();
        if (conjugate_embedding) y = -y;
        const int sx = sgn(x), sy = sgn(y);
        if (sx == 0 && sy == 0) return 0;
        if (sx >= 0 && sy >= 0) return 1;
        if (sx <= 0 && sy <= 0) return -1;
        // mixed signs: compare x^2 against d y^2
        mpq_class lhs = x * x, rhs = basis.d * (y * y);
        if (lhs == rhs) return 0;
        const bool x_dominates = lhs > rhs;
        return x_dominates ? sx : sy;
    }

    double to_double(bool conjugate_embedding = false) const {
        auto [x, y] = xy();
        const double sq = std::sqrt(static_cast<double>(basis.d));
        return x.get_d() + (conjugate_embedding ? -1.0 : 1.0) * y.get_d() * sq;
    }

    static QuadElem from_xy(const mpq_class& x, const mpq_class& y, RingBasis basis) {
        if (basis.half) return {x - y, 2 * y, basis};
        return {x, y, basis};
    }

    std::string str() const {
        return a.get_str() + (basis.half ? " + (" : " + (") + b.get_str() +
               (basis.half ? ")*w" : ")*sqrt(d)");
    }

  private:
    static int sgn(const mpq_class& v) { return mpq_sgn(v.get_mpq_t()); }
};

} // namespace pleatlab
