#pragma once

// Evaluation of invariants on étale algebras, cutting and splitting
// homomorphisms, and integrality/torsion tests.

#include <set>
#include <stdexcept>
#include <vector>

#include "ww/bases.hpp"
#include "ww/multireal.hpp"
#include "ww/tpoly.hpp"

namespace ww {

// One tensor factor of an étale algebra description: either a multiquadratic
// algebra E_{d_1} x ... x E_{d_m} (x K when n is odd) or the multireal algebra
// R_s = (E_{-1})^s x K^{n-2s}.
struct AlgebraFactor {
    int n = 0;
    bool is_multireal = false;
    int s = 0;
    std::vector<SquareClass> deltas;

    static AlgebraFactor multireal(int n, int s) {
        if (n < 0 || s < 0 || 2 * s > n) throw std::invalid_argument("multireal algebra needs 0 <= 2s <= n");
        AlgebraFactor f;
        f.n = n;
        f.is_multireal = true;
        f.s = s;
        return f;
    }
    static AlgebraFactor multiquadratic(int n, std::vector<SquareClass> deltas) {
        if (static_cast<int>(deltas.size()) != n / 2)
            throw std::invalid_argument("multiquadratic algebra of degree n needs floor(n/2) square classes");
        AlgebraFactor f;
        f.n = n;
        f.deltas = std::move(deltas);
        return f;
    }
};

using EtaleAlgebraSpec = std::vector<AlgebraFactor>;

inline EtaleAlgebraSpec multireal_algebra(const MultiDegree& d, const MultiIndex& s) {
    EtaleAlgebraSpec a;
    for (size_t j = 0; j < d.size(); ++j) a.push_back(AlgebraFactor::multireal(d.n[j], s[j]));
    return a;
}

// beta_0(A), ..., beta_m(A) for a single factor.
inline std::vector<WittClassQ> beta_values(const AlgebraFactor& f) {
    const int m = f.n / 2;
    std::vector<WittClassQ> e(static_cast<size_t>(m + 1));
    if (f.is_multireal) {
        for (int i = 0; i <= m; ++i) e[i] = WittClassQ(checked_mul(pow2(i), binom(m - f.s, i)));
        return e;
    }
    e[0] = WittClassQ::one();
    int used = 0;
    for (const auto& d : f.deltas) {
        WittClassQ tr = trace_class(d);
        ++used;
        for (int i = used; i >= 1; --i) e[i] += e[i - 1] * tr;
    }
    return e;
}

inline WittInvariant to_beta(const WittInvariant& inv) { return convert_basis(inv, Basis::beta); }

template <class R>
WittClassQ eval_invariant(const Invariant<R>& inv, const EtaleAlgebraSpec& alg) {
    if (alg.size() != inv.degree().size()) throw std::invalid_argument("algebra and invariant have different arity");
    for (size_t j = 0; j < alg.size(); ++j)
        if (alg[j].n != inv.degree().n[j]) throw std::invalid_argument("algebra degree does not match the invariant");
    WittInvariant b = inv.basis() == Basis::beta ? promote(inv) : to_beta(promote(inv));
    std::vector<std::vector<WittClassQ>> vals;
    for (const auto& f : alg) vals.push_back(beta_values(f));
    WittClassQ total;
    for (const auto& [i, c] : b.coeffs()) {
        WittClassQ term = c;
        for (size_t j = 0; j < i.size() && !term.is_zero(); ++j) term = term * vals[j][static_cast<size_t>(i[j])];
        total += term;
    }
    return total;
}

// Symbolic restriction to multiquadratic algebras: component j contributes the
// variables following those of components 0..j-1.
inline TPoly eval_symbolic(const IntInvariant& inv) {
    if (inv.basis() != Basis::beta) throw std::invalid_argument("symbolic evaluation expects beta coefficients");
    const MultiIndex m = inv.degree().m();
    int total = 0;
    std::vector<int> offset;
    for (int x : m) {
        offset.push_back(total);
        total += x;
    }
    TPoly out(total);
    for (const auto& [i, c] : inv.coeffs()) {
        TPoly term(total, c);
        for (size_t j = 0; j < m.size(); ++j) {
            TPoly e(total);
            Mask block = 0;
            for (int v = 1; v <= m[j]; ++v) block |= bit(offset[j] + v);
            for (Mask J = block;; J = (J - 1) & block) {
                if (std::popcount(J) == i[j]) e += TPoly::monomial(total, J);
                if (J == 0) break;
            }
            term = term * e;
        }
        out += term;
    }
    return out;
}

template <class R>
MultirealValues<WittClassQ> multireal_values(const Invariant<R>& inv) {
    WittInvariant b = inv.basis() == Basis::beta ? promote(inv) : to_beta(promote(inv));
    return multireal_from_beta(b);
}

enum class CutFlavor { round, square, brace };

template <class R>
Invariant<R> cut(const Invariant<R>& inv, const MultiIndex& u, CutFlavor flavor) {
    if (inv.basis() != Basis::beta) throw std::invalid_argument("cut expects beta coefficients");
    if (u.size() != inv.degree().size()) throw std::invalid_argument("cut vector has the wrong arity");
    Invariant<R> cur = inv;
    for (size_t j = 0; j < u.size(); ++j) {
        if (u[j] < 0) throw std::invalid_argument("cut vector must be nonnegative");
        for (int step = 0; step < u[j]; ++step) {
            std::vector<int> nd = cur.degree().n;
            if (nd[j] < 2) throw std::domain_error("degree underflow in cut");
            nd[j] -= 2;
            Invariant<R> next{MultiDegree(nd), Basis::beta};
            const int mnew = nd[j] / 2;
            for (const auto& [i, c] : cur.coeffs()) {
                MultiIndex lower = i;
                --lower[j];
                switch (flavor) {
                    case CutFlavor::round:
                        if (i[j] <= mnew) next.add(i, c);
                        if (i[j] >= 1) next.add(lower, coeff_scaled(c, 2));
                        break;
                    case CutFlavor::square:
                        if (i[j] <= mnew) next.add(i, c);
                        break;
                    case CutFlavor::brace:
                        if (i[j] >= 1) next.add(lower, c);
                        break;
                }
            }
            cur = next;
        }
    }
    return cur;
}

// spl_j: degree (..., n_j - 2, ..., 2) with the new last factor carrying Tr(E).
template <class R>
Invariant<R> split(const Invariant<R>& inv, size_t j) {
    if (inv.basis() != Basis::beta) throw std::invalid_argument("split expects beta coefficients");
    if (j >= inv.degree().size()) throw std::invalid_argument("split slot out of range");
    std::vector<int> nd = inv.degree().n;
    if (nd[j] < 2) throw std::domain_error("degree underflow in split");
    nd[j] -= 2;
    nd.push_back(2);
    Invariant<R> out{MultiDegree(nd), Basis::beta};
    const int mnew = nd[j] / 2;
    for (const auto& [i, c] : inv.coeffs()) {
        if (i[j] <= mnew) {
            MultiIndex a = i;
            a.push_back(0);
            out.add(a, c);
        }
        if (i[j] >= 1) {
            MultiIndex b = i;
            --b[j];
            b.push_back(1);
            out.add(b, c);
        }
    }
    return out;
}

// Odd primes at which some coefficient has a nonzero residue.
inline std::set<i64> ramified_primes(const WittInvariant& inv) {
    std::set<i64> out;
    for (const auto& [i, c] : inv.coeffs())
        for (const auto& [p, r] : c.residues()) out.insert(p);
    return out;
}

inline std::set<i64> ramified_primes(const IntInvariant&) { return {}; }

// True iff every multireal value has signature zero.
inline bool torsion_check(const WittInvariant& inv) {
    bool multireal_zero = true;
    for (const auto& [s, w] : multireal_values(inv))
        if (w.signature() != 0) multireal_zero = false;
    bool coeff_zero = true;
    const WittInvariant beta = to_beta(inv);
    for (const auto& [i, c] : beta.coeffs())
        if (c.signature() != 0) coeff_zero = false;
    if (multireal_zero != coeff_zero) throw std::logic_error("torsion tests disagree");
    return multireal_zero;
}

inline bool torsion_check(const IntInvariant& inv) { return torsion_check(promote(inv)); }

}  // namespace ww
