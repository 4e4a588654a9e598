#pragma once

// Welschinger-Witt invariants: surfaces and their aliases, Welschinger tables,
// the unique beta-integral invariant with prescribed multireal values, and
// Witt-Grothendieck lifts.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ww/evaluate.hpp"
#include "ww/multireal.hpp"

namespace ww {

enum class SurfaceKind { P2_blowup, P1xP1, P3_aggregate };

// Blow-up of P^2 in points grouped into blocks of sizes n_1..n_r, with the
// divisor d_0 L - sum_j d_j E_j (E_j summed over the block).
struct SurfaceClass {
    SurfaceKind kind = SurfaceKind::P2_blowup;
    std::vector<int> n;
    std::vector<int> d;

    SurfaceClass() = default;
    SurfaceClass(std::vector<int> blocks, std::vector<int> divisor, SurfaceKind k = SurfaceKind::P2_blowup)
        : kind(k), n(std::move(blocks)), d(std::move(divisor)) {
        if (kind == SurfaceKind::P3_aggregate) {
            if (d.size() != 1 || d[0] < 1) throw std::invalid_argument("a P3 class is a single positive degree");
            return;
        }
        if (d.size() != n.size() + 1) throw std::invalid_argument("divisor needs one coefficient per block plus d_0");
        for (int x : n)
            if (x < 1) throw std::invalid_argument("block sizes must be positive");
        if (n0() < 0) throw std::invalid_argument("number of point conditions n_0 is negative");
    }

    static SurfaceClass p2(int degree) { return SurfaceClass({}, {degree}); }

    // n_0 = 3 d_0 - sum_j n_j d_j - 1
    int n0() const {
        if (kind == SurfaceKind::P3_aggregate) return 2 * d[0] - 2;
        int v = 3 * d[0] - 1;
        for (size_t j = 0; j < n.size(); ++j) v -= n[j] * d[j + 1];
        return v;
    }
    int total_points() const {
        int t = 0;
        for (int x : n) t += x;
        return t;
    }
    MultiDegree degree() const {
        std::vector<int> v{n0()};
        if (kind != SurfaceKind::P3_aggregate) v.insert(v.end(), n.begin(), n.end());
        return MultiDegree(v);
    }

    friend bool operator==(const SurfaceClass&, const SurfaceClass&) = default;
};

// Merge blocks with equal divisor coefficient and order them by descending coefficient.
inline SurfaceClass canonical_blocks(const SurfaceClass& c) {
    if (c.kind == SurfaceKind::P3_aggregate) return c;
    std::map<int, int, std::greater<>> merged;
    for (size_t j = 0; j < c.n.size(); ++j) merged[c.d[j + 1]] += c.n[j];
    std::vector<int> n, d{c.d[0]};
    for (auto [coef, size] : merged) {
        n.push_back(size);
        d.push_back(coef);
    }
    return SurfaceClass(n, d);
}

struct WelschingerTable {
    SurfaceClass surface;
    MultirealValues<i64> values;

    void validate() const {
        for (const auto& s : index_set(surface.degree()))
            if (!values.count(s)) throw std::invalid_argument("Welschinger table is missing entry " + index_to_string(s));
        if (values.size() != index_set(surface.degree()).size())
            throw std::invalid_argument("Welschinger table has entries outside the index set");
    }
};

struct TableNotBetaIntegral : std::domain_error {
    explicit TableNotBetaIntegral(const NotBetaIntegral& e)
        : std::domain_error(std::string("table not beta-integral: ") + e.what()) {}
};

inline MultirealTriangle triangle_semantics(const WelschingerTable& table) {
    table.validate();
    return triangle_from_multireal(table.surface.degree(), table.values);
}

inline IntInvariant build_vw(const WelschingerTable& table) {
    try {
        return beta_from_triangle(triangle_semantics(table));
    } catch (const NotBetaIntegral& e) {
        throw TableNotBetaIntegral(e);
    }
}

inline WelschingerTable table_from_invariant(const SurfaceClass& surface, const IntInvariant& inv) {
    if (!(inv.degree() == surface.degree())) throw std::invalid_argument("invariant degree does not match the surface");
    return WelschingerTable{surface, multireal_from_beta(inv)};
}

// P1 x P1 with bidegree (d1, d2) and one real blown-up point is P^2 blown up in two real points.
inline SurfaceClass alias_p1xp1(int d1, int d2) {
    if (d1 < 0 || d2 < 0 || d1 + d2 < 1) throw std::invalid_argument("invalid bidegree");
    return SurfaceClass({1, 1}, {d1 + d2, d1, d2});
}

// Symmetric class (a, a) with the two blown-up points forming one block.
inline SurfaceClass alias_p1xp1_symmetric(int a) {
    if (a < 1) throw std::invalid_argument("invalid degree");
    return SurfaceClass({2}, {2 * a, a});
}

// Summands (d1, d2) with d1 + d2 = d and 0 <= d1 < d2.
inline std::vector<std::pair<int, int>> p3_summands(int d) {
    std::vector<std::pair<int, int>> out;
    for (int d1 = 0; 2 * d1 < d; ++d1) out.emplace_back(d1, d - d1);
    return out;
}

inline std::vector<SurfaceClass> alias_p3(int d) {
    std::vector<SurfaceClass> out;
    for (auto [a, b] : p3_summands(d)) out.push_back(alias_p1xp1(a, b));
    return out;
}

// Sum of invariants of degree (2d - 1, 1, 1) read in degree 2d - 2.
inline IntInvariant p3_aggregate(int d, const std::vector<IntInvariant>& summands) {
    IntInvariant out(MultiDegree{2 * d - 2});
    for (const auto& s : summands) {
        if (!(s.degree() == MultiDegree{2 * d - 1, 1, 1}) || s.basis() != Basis::beta)
            throw std::invalid_argument("P3 summand has the wrong degree");
        for (const auto& [i, c] : s.coeffs()) out.add({i[0]}, c);
    }
    return out;
}

// Rank of the Witt-Grothendieck lift of beta_i on an algebra of degree n.
inline i64 lifted_beta_rank(const MultiDegree& d, const MultiIndex& i) {
    const MultiIndex m = d.m();
    i64 r = 1;
    for (size_t j = 0; j < m.size(); ++j) r = checked_mul(r, checked_mul(pow2(i[j]), binom(m[j], i[j])));
    return r;
}

struct LiftedInvariant {
    IntInvariant invariant;
    i64 hyperbolic = 0;  // number of copies of h = <1, -1>
    i64 rank = 0;

    GWLift evaluate(const EtaleAlgebraSpec& alg) const {
        return GWLift(rank, eval_invariant(invariant, alg));
    }
};

struct LiftError : std::domain_error {
    using std::domain_error::domain_error;
};

inline LiftedInvariant wg_lift(const IntInvariant& inv, i64 gw, i64 wel0) {
    if (inv.basis() != Basis::beta) throw std::invalid_argument("lift expects beta coefficients");
    if (gw < 0) throw LiftError("Gromov-Witten count must be nonnegative");
    if (mod(gw - wel0, 2) != 0) throw LiftError("parity mismatch between GW count and Welschinger number");
    i64 base = 0;
    for (const auto& [i, c] : inv.coeffs()) base = checked_add(base, checked_mul(c, lifted_beta_rank(inv.degree(), i)));
    if (base != wel0) throw LiftError("Welschinger number does not match the invariant at the totally real algebra");
    if (gw < base) throw LiftError("negative hyperbolic padding");
    return LiftedInvariant{inv, (gw - base) / 2, gw};
}

enum class GuardStatus { quadratic_side_defined, welschinger_only };

struct GuardReport {
    GuardStatus status = GuardStatus::welschinger_only;
    int surface_degree = 0;
    std::string reason;
};

inline GuardReport hypothesis_guard(const SurfaceClass& c) {
    GuardReport r;
    if (c.kind == SurfaceKind::P3_aggregate) {
        r.reason = "threefold aggregate; only Welschinger numbers are available";
        return r;
    }
    const int points = c.total_points();
    r.surface_degree = 9 - points;
    if (points <= 5) {
        r.status = GuardStatus::quadratic_side_defined;
        r.reason = "del Pezzo surface of degree at least 4";
    } else if (points == 6 && c.n0() != 5) {
        r.status = GuardStatus::quadratic_side_defined;
        r.reason = "cubic surface with n_0 != 5";
    } else if (points == 6) {
        r.reason = "cubic surface with n_0 = 5 is excluded";
    } else {
        r.reason = "more than six blown-up points";
    }
    return r;
}

}  // namespace ww
