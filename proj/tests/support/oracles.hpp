#pragma once

// Independent reference computations used by the unit, property and
// acceptance tests.  Nothing here is part of the library surface.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ww/ww.hpp"

namespace ww::oracle {

using BigInt = boost::multiprecision::cpp_int;

// ---- rational plane curves ----

// N_d by the Kontsevich recursion.
inline std::vector<BigInt> kontsevich(int max_degree) {
    auto binom_big = [](int n, int k) -> BigInt {
        if (k < 0 || k > n) return 0;
        BigInt r = 1;
        for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    std::vector<BigInt> N(static_cast<size_t>(max_degree + 1), 0);
    if (max_degree >= 1) N[1] = 1;
    for (int d = 2; d <= max_degree; ++d) {
        BigInt sum = 0;
        for (int a = 1; a < d; ++a) {
            const int b = d - a;
            BigInt term = BigInt(a * a) * (b * b) * binom_big(3 * d - 4, 3 * a - 2) -
                          BigInt(a * a * a) * b * binom_big(3 * d - 4, 3 * a - 1);
            sum += N[a] * N[b] * term;
        }
        N[d] = sum;
    }
    return N;
}

// ---- determinants ----

// Fraction-free Gaussian elimination.
inline BigInt bareiss_det(const IntMatrix& M) {
    const size_t n = M.size();
    if (n == 0) return 1;
    std::vector<std::vector<BigInt>> A(n, std::vector<BigInt>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) A[i][j] = M[i][j];
    BigInt prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (A[k][k] == 0) {
            size_t r = k + 1;
            while (r < n && A[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(A[k], A[r]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev;
        prev = A[k][k];
    }
    return sign * A[n - 1][n - 1];
}

// ---- Witt equivalence via Hilbert symbols ----

// (a, b)_p for nonzero integers; p = 0 stands for the real place.
inline int hilbert_symbol(i64 a, i64 b, i64 p) {
    if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
    int alpha = 0, beta = 0;
    while (a % p == 0) a /= p, ++alpha;
    while (b % p == 0) b /= p, ++beta;
    if (p == 2) {
        auto eps = [](i64 u) { return static_cast<int>(mod((u - 1) / 2, 2)); };
        auto omega = [](i64 u) { return static_cast<int>(mod((mod(u, 16) * mod(u, 16) - 1) / 8, 2)); };
        int e = eps(a) * eps(b) + alpha * omega(b) + beta * omega(a);
        return e % 2 ? -1 : 1;
    }
    int r = ((alpha * beta) % 2 && mod(p, 4) == 3) ? -1 : 1;
    if (beta % 2) r *= legendre(a, p);
    if (alpha % 2) r *= legendre(b, p);
    return r;
}

inline int hasse_invariant(const std::vector<i64>& entries, i64 p) {
    int h = 1;
    for (size_t i = 0; i < entries.size(); ++i)
        for (size_t j = i + 1; j < entries.size(); ++j) h *= hilbert_symbol(entries[i], entries[j], p);
    return h;
}

// Isometry of diagonal forms over Q by rank, discriminant, signature and Hasse invariants.
inline bool isometric(const std::vector<i64>& f, const std::vector<i64>& g) {
    if (f.size() != g.size()) return false;
    i64 df = 1, dg = 1;
    int sf = 0, sg = 0;
    std::set<i64> places{0, 2};
    for (i64 a : f) {
        df = squarefree_part(checked_mul(df, a));
        sf += a > 0 ? 1 : -1;
        for (const auto& [p, e] : factorize(std::llabs(a))) places.insert(p);
    }
    for (i64 a : g) {
        dg = squarefree_part(checked_mul(dg, a));
        sg += a > 0 ? 1 : -1;
        for (const auto& [p, e] : factorize(std::llabs(a))) places.insert(p);
    }
    if (df != dg || sf != sg) return false;
    for (i64 p : places)
        if (hasse_invariant(f, p) != hasse_invariant(g, p)) return false;
    return true;
}

// f and g are Witt equivalent iff f + (-g) is a sum of hyperbolic planes.
inline bool witt_equivalent(const DiagonalForm& f, const DiagonalForm& g) {
    std::vector<i64> q = f.values();
    for (i64 b : g.values()) q.push_back(-b);
    if (q.size() % 2) return false;
    std::vector<i64> hyp;
    for (size_t i = 0; i < q.size() / 2; ++i) {
        hyp.push_back(1);
        hyp.push_back(-1);
    }
    return isometric(q, hyp);
}

// ---- evaluation on multiquadratic algebras ----

// beta_i as the sum over i-subsets of tensor products of trace forms, as an explicit diagonal form.
inline DiagonalForm beta_form(const std::vector<SquareClass>& deltas, int i) {
    DiagonalForm out;
    const int m = static_cast<int>(deltas.size());
    for (Mask J = 0; J < (Mask{1} << m); ++J) {
        if (std::popcount(J) != i) continue;
        DiagonalForm term{1};
        for (int j = 0; j < m; ++j)
            if (J & (Mask{1} << j)) term = term * trace_form(deltas[static_cast<size_t>(j)]);
        out = out + term;
    }
    return out;
}

// Value of a beta-basis invariant at a product of multiquadratic algebras.
inline WittClassQ eval_multiquadratic(const WittInvariant& inv, const std::vector<std::vector<SquareClass>>& deltas) {
    WittClassQ total;
    for (const auto& [i, c] : inv.coeffs()) {
        DiagonalForm f{1};
        for (size_t j = 0; j < i.size(); ++j) f = f * beta_form(deltas[j], i[j]);
        if (f.rank() == 0) continue;
        total += c * diag_to_wittq(f);
    }
    return total;
}

// ---- floor diagrams: grouping oracle ----

using Row = std::array<int, 5>;
using Key = std::vector<Row>;

// Isomorphism-invariant key of a marked diagram: the smallest sorted
// description over all relabellings of the vertices.
inline Key marked_key(const FloorDiagram& D, const std::vector<int>& phi) {
    const int k = D.num_vertices();
    std::vector<int> perm(static_cast<size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    Key best;
    bool first = true;
    do {
        Key key;
        for (int v = 0; v < k; ++v) key.push_back({0, perm[v], D.theta()[v], phi[static_cast<size_t>(v)], 0});
        for (size_t e = 0; e < D.edges().size(); ++e) {
            const auto& E = D.edges()[e];
            key.push_back({1, perm[E.from], perm[E.to], E.weight,
                           phi[static_cast<size_t>(D.edge_element(static_cast<int>(e)))]});
        }
        for (size_t i = 0; i < D.sources().size(); ++i)
            key.push_back({2, perm[D.sources()[i]], phi[static_cast<size_t>(D.source_element(static_cast<int>(i)))], 0, 0});
        for (size_t i = 0; i < D.sinks().size(); ++i)
            key.push_back({3, perm[D.sinks()[i]], phi[static_cast<size_t>(D.sink_element(static_cast<int>(i)))], 0, 0});
        std::sort(key.begin(), key.end());
        if (first || key < best) best = key;
        first = false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Every valid floor diagram of the class on labelled vertices, without any
// isomorphism reduction.  Weights are tried up to 2 d0.
inline std::vector<FloorDiagram> labelled_diagrams(const FloorClass& c) {
    const int k = c.vertices();
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) pairs.emplace_back(a, b);
    std::vector<std::vector<std::pair<int, int>>> trees;
    const int np = static_cast<int>(pairs.size());
    for (Mask S = 0; S < (Mask{1} << np); ++S) {
        if (std::popcount(S) != k - 1) continue;
        std::vector<int> parent(static_cast<size_t>(k));
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
        bool ok = true;
        std::vector<std::pair<int, int>> t;
        for (int i = 0; i < np; ++i)
            if (S & (Mask{1} << i)) {
                int a = find(pairs[i].first), b = find(pairs[i].second);
                if (a == b) ok = false;
                parent[a] = b;
                t.push_back(pairs[i]);
            }
        if (ok) trees.push_back(t);
    }
    auto multisets = [&](int count) {
        std::vector<std::vector<int>> out;
        std::vector<int> cur;
        std::function<void(int)> rec = [&](int lo) {
            if (static_cast<int>(cur.size()) == count) {
                out.push_back(cur);
                return;
            }
            for (int v = lo; v < k; ++v) {
                cur.push_back(v);
                rec(v);
                cur.pop_back();
            }
        };
        rec(0);
        return out;
    };
    const auto src_choices = multisets(c.sources());
    const auto snk_choices = multisets(c.sinks());
    const int max_w = 2 * c.d0;
    std::vector<FloorDiagram> out;
    for (const auto& t : trees) {
        const int ne = static_cast<int>(t.size());
        for (Mask orient = 0; orient < (Mask{1} << ne); ++orient) {
            std::vector<int> w(static_cast<size_t>(ne), 1);
            while (true) {
                std::vector<BoundedEdge> edges;
                for (int e = 0; e < ne; ++e) {
                    auto [a, b] = t[static_cast<size_t>(e)];
                    if (orient & (Mask{1} << e)) std::swap(a, b);
                    edges.push_back({a, b, w[static_cast<size_t>(e)]});
                }
                for (Mask th = 0; th < (Mask{1} << k); ++th) {
                    std::vector<int> theta(static_cast<size_t>(k));
                    for (int v = 0; v < k; ++v) theta[static_cast<size_t>(v)] = (th >> v) & 1;
                    for (const auto& src : src_choices)
                        for (const auto& snk : snk_choices) {
                            FloorDiagram D(c, theta, edges, src, snk);
                            if (D.violation().empty()) out.push_back(D);
                        }
                }
                int e = 0;
                while (e < ne && w[static_cast<size_t>(e)] == max_w) w[static_cast<size_t>(e++)] = 1;
                if (e == ne) break;
                ++w[static_cast<size_t>(e)];
            }
        }
    }
    return out;
}

// All maps with the required fiber sizes that pass the marking conditions.
inline void for_each_marking(const FloorDiagram& D, int s, const std::function<void(const std::vector<int>&)>& f) {
    const int n = D.num_elements();
    const int slots = n - s;
    std::vector<int> left(static_cast<size_t>(slots + 1));
    for (int j = 1; j <= slots; ++j) left[static_cast<size_t>(j)] = j <= s ? 2 : 1;
    std::vector<int> phi(static_cast<size_t>(n), 0);
    std::function<void(int)> rec = [&](int x) {
        if (x == n) {
            if (MarkedDiagram{D, s, phi}.violation().empty()) f(phi);
            return;
        }
        for (int j = 1; j <= slots; ++j) {
            if (!left[static_cast<size_t>(j)]) continue;
            bool ok = true;
            for (int y : D.lower_covers(x))
                if (y < x && phi[static_cast<size_t>(y)] > j) ok = false;
            for (int y : D.upper_covers(x))
                if (y < x && phi[static_cast<size_t>(y)] < j) ok = false;
            if (!ok) continue;
            --left[static_cast<size_t>(j)];
            phi[static_cast<size_t>(x)] = j;
            rec(x + 1);
            ++left[static_cast<size_t>(j)];
        }
        phi[static_cast<size_t>(x)] = 0;
    };
    rec(0);
}

struct GroupedMarkings {
    std::set<Key> all;
    std::set<Key> essential;
};

inline GroupedMarkings group_markings(const FloorClass& c, int s) {
    GroupedMarkings g;
    for (const auto& D : labelled_diagrams(c))
        for_each_marking(D, s, [&](const std::vector<int>& phi) {
            Key key = marked_key(D, phi);
            if (g.all.insert(key).second && is_essential(MarkedDiagram{D, s, phi})) g.essential.insert(key);
        });
    return g;
}

// Classes in the floor-diagram domain with 1 <= d0 <= max_d0.
inline std::vector<FloorClass> classes_up_to(int max_d0) {
    std::vector<FloorClass> out;
    for (int d0 = 1; d0 <= max_d0; ++d0)
        for (int d1 = 0; d1 < d0; ++d1)
            for (int d2 = 0; d2 <= d1 && d1 + d2 <= d0; ++d2)
                for (int d3 = 0; d3 <= d2; ++d3) out.push_back(normalize_class({d0, d1, d2, d3}));
    return out;
}

// ---- twin-tree identity ----

// Compares the defining twin factor times its edge brackets with the
// closed form at every sign vector on the labels of T.  Returns an empty
// string on success.
inline std::string check_twin_identity(const MarkedDiagram& md, const TwinTree& T) {
    const int s = md.s;
    const FloorDiagram& D = md.diagram;
    TPoly lhs = twin_factor(s, T.labels, T.omega_infinity());
    std::map<int, int> twin_edge_weight;
    for (size_t e = 0; e < D.edges().size(); ++e) {
        const int j = md.phi[static_cast<size_t>(D.edge_element(static_cast<int>(e)))];
        if (j <= s && (T.labels & bit(j))) {
            lhs = lhs * TPoly::bracket(s, D.edges()[e].weight, j);
            twin_edge_weight[j] = D.edges()[e].weight;
        }
    }
    if (twin_edge_weight.size() != T.edge_labels.size()) return "twin edge labels do not match the edge fibers";
    std::vector<int> labels;
    for (int j = 1; j <= s; ++j)
        if (T.labels & bit(j)) labels.push_back(j);
    const int t = static_cast<int>(labels.size());
    const int parity = T.omega_infinity() % 2;
    for (Mask eps = 0; eps < (Mask{1} << t); ++eps) {
        std::vector<int> signs(static_cast<size_t>(s), 1);
        for (int a = 0; a < t; ++a)
            if (eps & (Mask{1} << a)) signs[static_cast<size_t>(labels[static_cast<size_t>(a)] - 1)] = -1;
        i64 rhs = 1;
        for (const auto& [j, w] : twin_edge_weight) rhs *= TPoly::bracket(s, i64{w} * w, j).eval_signs(signs);
        i64 sum = 0;
        for (Mask J = 0; J < (Mask{1} << t); ++J) {
            if (std::popcount(J) % 2 != parity) continue;
            i64 prod = 1;
            for (int a = 0; a < t; ++a)
                if (J & (Mask{1} << a)) prod *= signs[static_cast<size_t>(labels[static_cast<size_t>(a)] - 1)];
            sum += prod;
        }
        rhs *= sum;
        if (lhs.eval_signs(signs) != rhs) return "twin identity fails at a sign vector";
    }
    return {};
}

// ---- random data ----

class Random {
public:
    explicit Random(uint64_t seed) : gen_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
    bool coin() { return uniform(0, 1) == 1; }

    // Nonzero integer built from primes up to 50.
    i64 nonzero() {
        static const std::vector<i64> primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
        i64 v = coin() ? 1 : -1;
        const int factors = uniform(0, 3);
        for (int i = 0; i < factors; ++i) v *= primes[static_cast<size_t>(uniform(0, static_cast<int>(primes.size()) - 1))];
        return v;
    }
    SquareClass square_class() { return SquareClass(nonzero()); }
    DiagonalForm form(int max_rank) {
        DiagonalForm f;
        const int r = uniform(0, max_rank);
        for (int i = 0; i < r; ++i) f.push(square_class());
        return f;
    }
    WittClassQ witt() { return diag_to_wittq(form(4)); }
    MultiDegree degree(int max_vars, int max_n) {
        std::vector<int> n;
        const int r = uniform(1, max_vars);
        for (int i = 0; i < r; ++i) n.push_back(uniform(0, max_n));
        return MultiDegree(n);
    }
    IntInvariant int_invariant(const MultiDegree& d, int bound = 50) {
        IntInvariant inv(d);
        for (const auto& i : index_set(d)) inv.set(i, uniform(-bound, bound));
        return inv;
    }
    WittInvariant witt_invariant(const MultiDegree& d, Basis b = Basis::beta) {
        WittInvariant inv(d, b);
        for (const auto& i : index_set(d))
            if (uniform(0, 2)) inv.set(i, witt());
        return inv;
    }
    TPoly tpoly(int s) {
        TPoly p(s);
        for (Mask J = 0; J < (Mask{1} << s); ++J)
            if (uniform(0, 2) == 0) p += TPoly::monomial(s, J, uniform(-9, 9));
        return p;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace ww::oracle
