#pragma once

// Integral orthogonal groups of admissible quadratic forms over Q(sqrt(d)):
// exact admissibility and form-preservation tests, bounded-height
// enumeration of the cone-preserving group, numeric conjugation to the
// standard Lorentz form by diag(1, ..., 1, d^{-1/4}), and the
// rational-hyperplane dihedral-angle search.
//
// Heights are measured in integral-basis coordinates, which keeps the
// d == 1 (mod 4) half-integer case uniform.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "error.hpp"
#include "lorentz.hpp"
#include "quadfield.hpp"

namespace pleatlab {

struct QuadForm {
    std::size_t n1 = 0; // matrix size n+1
    RingBasis basis;
    std::vector<QuadElem> entries; // row-major, symmetric

    QuadForm(std::size_t size, RingBasis basis_, std::vector<QuadElem> e)
        : n1(size), basis(basis_), entries(std::move(e)) {
        if (entries.size() != n1 * n1) throw invalid_input("QuadForm: wrong entry count");
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = i + 1; j < n1; ++j)
                if (!(at(i, j) == at(j, i))) throw invalid_input("QuadForm: not symmetric");
    }

    static QuadForm diagonal(RingBasis basis, const std::vector<QuadElem>& diag) {
        const std::size_t n = diag.size();
        std::vector<QuadElem> e(n * n, QuadElem::integer(0, basis));
        for (std::size_t i = 0; i < n; ++i) e[i * n + i] = diag[i];
        return QuadForm(n, basis, std::move(e));
    }

    const QuadElem& at(std::size_t i, std::size_t j) const { return entries[i * n1 + j]; }
    QuadElem& at(std::size_t i, std::size_t j) { return entries[i * n1 + j]; }

    bool is_diagonal() const {
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = 0; j < n1; ++j)
                if (i != j && !at(i, j).is_zero()) return false;
        return true;
    }

    QuadElem bilinear(const std::vector<QuadElem>& u, const std::vector<QuadElem>& v) const {
        if (u.size() != n1 || v.size() != n1)
            throw invalid_input("QuadForm::bilinear: dimension mismatch");
        QuadElem s = QuadElem::integer(0, basis);
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = 0; j < n1; ++j) s = s + at(i, j) * u[i] * v[j];
        return s;
    }

    QuadElem eval(const std::vector<QuadElem>& v) const { return bilinear(v, v); }
};

struct LatticeElement {
    std::size_t n1 = 0;
    std::vector<QuadElem> t; // row-major

    LatticeElement() = default;
    LatticeElement(std::size_t size, std::vector<QuadElem> e) : n1(size), t(std::move(e)) {
        if (t.size() != n1 * n1) throw invalid_input("LatticeElement: wrong entry count");
    }

    static LatticeElement identity(std::size_t size, RingBasis basis) {
        std::vector<QuadElem> e(size * size, QuadElem::integer(0, basis));
        for (std::size_t i = 0; i < size; ++i) e[i * size + i] = QuadElem::integer(1, basis);
        return LatticeElement(size, std::move(e));
    }

    const QuadElem& at(std::size_t i, std::size_t j) const { return t[i * n1 + j]; }
    QuadElem& at(std::size_t i, std::size_t j) { return t[i * n1 + j]; }

    std::vector<QuadElem> column(std::size_t j) const {
        std::vector<QuadElem> c;
        c.reserve(n1);
        for (std::size_t i = 0; i < n1; ++i) c.push_back(at(i, j));
        return c;
    }

    LatticeElement mul(const LatticeElement& o) const {
        if (n1 != o.n1) throw invalid_input("LatticeElement::mul: dimension mismatch");
        const RingBasis basis = t.front().basis;
        std::vector<QuadElem> r(n1 * n1, QuadElem::integer(0, basis));
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t k = 0; k < n1; ++k)
                for (std::size_t j = 0; j < n1; ++j)
                    r[i * n1 + j] = r[i * n1 + j] + at(i, k) * o.at(k, j);
        return LatticeElement(n1, std::move(r));
    }

    bool operator==(const LatticeElement& o) const { return n1 == o.n1 && t == o.t; }

    std::string key() const {
        std::string s;
        for (const QuadElem& e : t) {
            s += e.a.get_str();
            s += ',';
            s += e.b.get_str();
            s += ';';
        }
        return s;
    }
};

// Signature of the real evaluation of F under one embedding, computed by
// exact congruence diagonalization; comparisons of sqrt(d)-irrational
// quantities reduce to exact sign evaluations.
inline std::pair<int, int> form_signature(const QuadForm& F, bool conjugate_embedding) {
    const std::size_t n = F.n1;
    std::vector<QuadElem> m = F.entries;
    auto at = [&](std::size_t i, std::size_t j) -> QuadElem& { return m[i * n + j]; };

    int pos = 0, neg = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (at(k, k).is_zero()) {
            std::size_t j = k + 1;
            for (; j < n; ++j)
                if (!at(j, j).is_zero()) break;
            if (j < n) { // swap rows and columns k <-> j
                for (std::size_t c = 0; c < n; ++c) std::swap(at(k, c), at(j, c));
                for (std::size_t r = 0; r < n; ++r) std::swap(at(r, k), at(r, j));
            } else {
                for (j = k + 1; j < n; ++j)
                    if (!at(k, j).is_zero()) break;
                if (j == n) throw invalid_input("form_signature: degenerate form");
                // add row/col j into k; the new diagonal entry is 2 F_kj
                for (std::size_t c = 0; c < n; ++c) at(k, c) = at(k, c) + at(j, c);
                for (std::size_t r = 0; r < n; ++r) at(r, k) = at(r, k) + at(r, j);
            }
        }
        const QuadElem pivot = at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const QuadElem c = at(i, k) / pivot;
            for (std::size_t j = k + 1; j < n; ++j) at(i, j) = at(i, j) - c * at(k, j);
            at(i, k) = QuadElem::integer(0, F.basis);
            at(k, i) = QuadElem::integer(0, F.basis);
        }
        const int s = pivot.sign(conjugate_embedding);
        if (s == 0) throw invalid_input("form_signature: degenerate form");
        (s > 0 ? pos : neg) += 1;
    }
    return {pos, neg};
}

// Admissible: negative index 1 in the distinguished embedding and positive
// definite under the Galois conjugate.
inline bool is_admissible(const QuadForm& F) {
    const auto [pos, neg] = form_signature(F, false);
    if (!(neg == 1 && pos + 1 == static_cast<int>(F.n1))) return false;
    const auto [cpos, cneg] = form_signature(F, true);
    return cneg == 0 && cpos == static_cast<int>(F.n1);
}

// Exact test T^t F T = F; never touches floating point.
inline bool preserves_form(const LatticeElement& T, const QuadForm& F) {
    if (T.n1 != F.n1) throw invalid_input("preserves_form: dimension mismatch");
    const std::size_t n = F.n1;
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<QuadElem> ci = T.column(i);
        for (std::size_t j = i; j < n; ++j) {
            if (!(F.bilinear(ci, T.column(j)) == F.at(i, j))) return false;
        }
    }
    return true;
}

// Numeric sheet-preservation test: evaluate T on a timelike test vector and
// require the sign of the distinguished (negative-diagonal) coordinate to
// survive with margin 1e-9.  Test vectors whose image lands within the
// margin of the cone boundary are skipped; if all candidates are
// inconclusive an error is raised.
inline bool preserves_cone_components(const LatticeElement& T, const QuadForm& F) {
    if (T.n1 != F.n1) throw invalid_input("preserves_cone_components: dimension mismatch");
    if (!F.is_diagonal())
        throw config_error("preserves_cone_components: implemented for diagonal forms");
    const std::size_t n = F.n1;

    std::size_t i_neg = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (F.at(i, i).sign() < 0) {
            if (i_neg != n) throw invalid_input("preserves_cone_components: form not Lorentzian");
            i_neg = i;
        }
    }
    if (i_neg == n) throw invalid_input("preserves_cone_components: form not Lorentzian");

    // candidate timelike vectors: e_neg, then slight mixtures kept inside
    // the cone (verified exactly)
    std::vector<std::vector<double>> candidates;
    std::vector<double> base(n, 0.0);
    base[i_neg] = 1.0;
    candidates.push_back(base);
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i_neg) continue;
        for (double sgn : {1.0, -1.0}) {
            // f(e_neg + s/8 e_j) = F_neg + F_jj/64 exactly (diagonal form)
            QuadElem fv = F.at(i_neg, i_neg) +
                          F.at(j, j) * QuadElem(mpq_class(1, 64), mpq_class(0), F.basis);
            if (fv.sign() >= 0) continue;
            auto v = base;
            v[j] = sgn * 0.125;
            candidates.push_back(v);
        }
    }

    for (const auto& v : candidates) {
        double img = 0.0;
        for (std::size_t j = 0; j < n; ++j) img += T.at(i_neg, j).to_double() * v[j];
        if (std::abs(img) <= 1e-9) continue; // too close to the cone boundary
        return img > 0.0;
    }
    throw numeric_error("preserves_cone_components: all test vectors inconclusive");
}

namespace detail {

inline std::vector<QuadElem> coordinate_values(RingBasis basis, long H) {
    std::vector<QuadElem> vals;
    vals.reserve((2 * H + 1) * (2 * H + 1));
    for (long a = -H; a <= H; ++a)
        for (long b = -H; b <= H; ++b)
            vals.emplace_back(mpq_class(a), mpq_class(b), basis);
    return vals;
}

inline bool lattice_element_less(const LatticeElement& x, const LatticeElement& y) {
    for (std::size_t i = 0; i < x.t.size(); ++i) {
        if (x.t[i].a != y.t[i].a) return x.t[i].a < y.t[i].a;
        if (x.t[i].b != y.t[i].b) return x.t[i].b < y.t[i].b;
    }
    return false;
}

} // namespace detail

// All T in O'(F, R_K) whose basis coordinates lie in [-H, H], assembled
// column by column: candidate columns carry the right diagonal norm, pairs
// are pruned by the exact bilinear constraints, and the survivors are
// filtered by cone preservation.
inline std::vector<LatticeElement> enumerate_elements(const QuadForm& F, long H) {
    if (!F.is_diagonal()) throw config_error("enumerate_elements: form must be diagonal");
    if (F.n1 > 3) throw config_error("enumerate_elements: supported up to 3x3");
    if (H < 1 || H > 4) throw config_error("enumerate_elements: height must lie in [1, 4]");
    if (!is_admissible(F)) throw invalid_input("enumerate_elements: form is not admissible");

    const std::size_t n = F.n1;
    const RingBasis basis = F.basis;
    const std::vector<QuadElem> vals = detail::coordinate_values(basis, H);
    const std::size_t nv = vals.size();

    // f(v) = sum_i F_ii v_i^2; cache the per-coordinate contributions
    std::vector<std::vector<QuadElem>> contrib(n);
    for (std::size_t i = 0; i < n; ++i) {
        contrib[i].reserve(nv);
        for (const QuadElem& v : vals) contrib[i].push_back(F.at(i, i) * v * v);
    }

    // candidate columns per distinct diagonal value
    std::vector<std::vector<std::vector<QuadElem>>> class_cols; // per class
    std::vector<std::size_t> class_of(n);
    std::vector<QuadElem> class_value;
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t c = class_value.size();
        for (std::size_t k = 0; k < class_value.size(); ++k)
            if (class_value[k] == F.at(j, j)) c = k;
        class_of[j] = c;
        if (c == class_value.size()) class_value.push_back(F.at(j, j));
    }
    class_cols.resize(class_value.size());

    std::vector<std::size_t> idx(n, 0);
    while (true) {
        QuadElem f = contrib[0][idx[0]];
        for (std::size_t i = 1; i < n; ++i) f = f + contrib[i][idx[i]];
        for (std::size_t c = 0; c < class_value.size(); ++c) {
            if (f == class_value[c]) {
                std::vector<QuadElem> v;
                v.reserve(n);
                for (std::size_t i = 0; i < n; ++i) v.push_back(vals[idx[i]]);
                class_cols[c].push_back(std::move(v));
            }
        }
        std::size_t pos = 0;
        while (pos < n && ++idx[pos] == nv) idx[pos++] = 0;
        if (pos == n) break;
    }

    std::vector<LatticeElement> result;
    std::vector<const std::vector<QuadElem>*> cols(n, nullptr);
    auto assemble = [&](auto&& self, std::size_t j) -> void {
        if (j == n) {
            std::vector<QuadElem> entries(n * n, QuadElem::integer(0, basis));
            for (std::size_t cj = 0; cj < n; ++cj)
                for (std::size_t i = 0; i < n; ++i) entries[i * n + cj] = (*cols[cj])[i];
            LatticeElement T(n, std::move(entries));
            if (preserves_cone_components(T, F)) result.push_back(std::move(T));
            return;
        }
        for (const auto& cand : class_cols[class_of[j]]) {
            bool ok = true;
            for (std::size_t i = 0; i < j && ok; ++i)
                ok = F.bilinear(*cols[i], cand).is_zero(); // F_ij = 0 off-diagonal
            if (!ok) continue;
            cols[j] = &cand;
            self(self, j + 1);
        }
    };
    assemble(assemble, 0);

    std::sort(result.begin(), result.end(), detail::lattice_element_less);
    return result;
}

// G = M^{-1} T M with M = diag(1, ..., 1, d^{-1/4}); G preserves the
// standard form J = diag(1, ..., 1, -1).
inline Matrix conjugate_to_lorentz(const LatticeElement& T) {
    const std::size_t n = T.n1;
    const double root4 = std::pow(static_cast<double>(T.t.front().basis.d), 0.25);
    Matrix G(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double g = T.at(i, j).to_double();
            if (j + 1 == n) g /= root4;
            if (i + 1 == n) g *= root4;
            G.at(i, j) = g;
        }
    return G;
}

// Lorentz-model hyperplane with normal M^{-1} e, for exact e with f(e) > 0.
inline Hyperplane rational_hyperplane(const std::vector<QuadElem>& e, const QuadForm& F) {
    if (e.size() != F.n1) throw invalid_input("rational_hyperplane: dimension mismatch");
    if (F.eval(e).sign() <= 0)
        throw invalid_input("rational_hyperplane: f(e) must be positive");
    const double root4 = std::pow(static_cast<double>(F.basis.d), 0.25);
    std::vector<double> n(F.n1);
    for (std::size_t i = 0; i < F.n1; ++i) {
        n[i] = e[i].to_double();
        if (i + 1 == F.n1) n[i] *= root4;
    }
    return Hyperplane::from_spacelike(LorentzVector(std::move(n)));
}

struct AngleHit {
    std::vector<QuadElem> e1, e2;
    double angle = 0.0;
};

struct AngleSearchResult {
    std::vector<AngleHit> hits;
    std::array<long, 90> histogram{}; // uniform bins over (0, pi/2]
    long vectors = 0;                 // spacelike representatives enumerated
    long pairs_transverse = 0;
};

namespace detail {

inline std::string projective_key(const std::vector<QuadElem>& e) {
    // normalize so the first nonzero coordinate is 1; identifies scalar
    // multiples over the field, including sign
    std::size_t lead = e.size();
    for (std::size_t i = 0; i < e.size(); ++i)
        if (!e[i].is_zero()) {
            lead = i;
            break;
        }
    std::string key;
    const QuadElem inv = e[lead].inverse();
    for (const QuadElem& x : e) {
        const QuadElem y = x * inv;
        key += y.a.get_str();
        key += ',';
        key += y.b.get_str();
        key += ';';
    }
    return key;
}

} // namespace detail

// Enumerate spacelike exact vectors of bounded height (one representative
// per projective class), compute all pairwise transverse intersection
// angles, and return the pairs landing in (lo, hi) sorted by angle.  An
// empty hit list together with the histogram is a valid outcome.
inline AngleSearchResult angle_search(const QuadForm& F, long H, double lo, double hi) {
    if (F.n1 > 3) throw config_error("angle_search: supported up to 3x3");
    if (H < 1 || H > 2) throw config_error("angle_search: height must lie in [1, 2]");
    if (!(0.0 < lo && lo < hi && hi < std::acos(-1.0)))
        throw invalid_input("angle_search: need an open interval inside (0, pi)");

    const std::size_t n = F.n1;
    const std::vector<QuadElem> vals = detail::coordinate_values(F.basis, H);
    const std::size_t nv = vals.size();

    std::vector<std::vector<QuadElem>> reps;
    std::vector<QuadElem> rep_norm;
    std::unordered_set<std::string> seen;
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        std::vector<QuadElem> e;
        e.reserve(n);
        bool zero = true;
        for (std::size_t i = 0; i < n; ++i) {
            e.push_back(vals[idx[i]]);
            zero = zero && e.back().is_zero();
        }
        if (!zero) {
            const QuadElem f = F.eval(e);
            if (f.sign() > 0 && seen.insert(detail::projective_key(e)).second) {
                reps.push_back(std::move(e));
                rep_norm.push_back(f);
            }
        }
        std::size_t pos = 0;
        while (pos < n && ++idx[pos] == nv) idx[pos++] = 0;
        if (pos == n) break;
    }

    AngleSearchResult out;
    out.vectors = static_cast<long>(reps.size());
    const double half_pi = std::acos(0.0);
    for (std::size_t i = 0; i < reps.size(); ++i) {
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            const QuadElem B = F.bilinear(reps[i], reps[j]);
            const QuadElem ff = rep_norm[i] * rep_norm[j];
            if (!((ff - B * B).sign() > 0)) continue; // tangent or disjoint
            ++out.pairs_transverse;
            const double cosang =
                std::abs(B.to_double()) / std::sqrt(rep_norm[i].to_double() * rep_norm[j].to_double());
            const double angle = std::acos(std::min(1.0, std::max(-1.0, cosang)));
            int bin = static_cast<int>(angle / half_pi * 90.0);
            bin = std::min(std::max(bin, 0), 89);
            out.histogram[bin] += 1;
            if (angle > lo && angle < hi) out.hits.push_back({reps[i], reps[j], angle});
        }
    }
    std::stable_sort(out.hits.begin(), out.hits.end(),
                     [](const AngleHit& a, const AngleHit& b) { return a.angle < b.angle; });
    return out;
}

struct ClosureReport {
    long inverses_checked = 0;
    long inverses_missing = 0;
    long products_checked = 0;
    long products_missing = 0;
};

namespace detail {

inline bool within_height(const LatticeElement& T, long H) {
    for (const QuadElem& e : T.t) {
        if (e.a.get_den() != 1 || e.b.get_den() != 1) return false;
        if (abs(e.a) > H || abs(e.b) > H) return false;
    }
    return true;
}

} // namespace detail

// Post-hoc group-structure check on an enumerated set: inverses and products
// that stay within height H must already be members.  Failures are reported,
// not raised.
inline ClosureReport closure_check(const std::vector<LatticeElement>& elems, const QuadForm& F,
                                   long H) {
    ClosureReport rep;
    std::unordered_set<std::string> members;
    for (const auto& e : elems) members.insert(e.key());

    const std::size_t n = F.n1;
    for (const auto& T : elems) {
        // T^{-1} = F^{-1} T^t F, entrywise exact (diagonal F)
        if (F.is_diagonal()) {
            std::vector<QuadElem> inv(n * n, QuadElem::integer(0, F.basis));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    inv[i * n + j] = T.at(j, i) * F.at(j, j) / F.at(i, i);
            LatticeElement Ti(n, std::move(inv));
            if (detail::within_height(Ti, H)) {
                ++rep.inverses_checked;
                if (!members.count(Ti.key())) ++rep.inverses_missing;
            }
        }
        for (const auto& S : elems) {
            LatticeElement P = T.mul(S);
            if (detail::within_height(P, H)) {
                ++rep.products_checked;
                if (!members.count(P.key())) ++rep.products_missing;
            }
        }
    }
    return rep;
}

} // namespace pleatlab
