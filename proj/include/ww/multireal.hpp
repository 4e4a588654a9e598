#pragma once

// Multireal values of beta-invariants, the matrices M_m and the multireal
// triangle linking multireal values to beta-coefficients.

#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ww/invariant.hpp"

namespace ww {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<i64>>;

// (M_m)_{s,i} = 2^i binom(m - s, i): value of beta_i at R_s.
inline IntMatrix multireal_matrix(int m) {
    if (m < 0) throw std::invalid_argument("m must be nonnegative");
    IntMatrix M(static_cast<size_t>(m + 1), std::vector<i64>(static_cast<size_t>(m + 1), 0));
    for (int s = 0; s <= m; ++s)
        for (int i = 0; i <= m; ++i) M[s][i] = checked_mul(pow2(i), binom(m - s, i));
    return M;
}

inline i64 multireal_entry(const MultiIndex& m, const MultiIndex& s, const MultiIndex& i) {
    i64 v = 1;
    for (size_t j = 0; j < m.size(); ++j) v = checked_mul(v, checked_mul(pow2(i[j]), binom(m[j] - s[j], i[j])));
    return v;
}

// Kronecker product of the M_{m_j}; rows and columns in lexicographic index order.
inline IntMatrix kron_multireal(const MultiIndex& m) {
    auto idx = index_box(m);
    IntMatrix K(idx.size(), std::vector<i64>(idx.size(), 0));
    for (size_t a = 0; a < idx.size(); ++a)
        for (size_t b = 0; b < idx.size(); ++b) K[a][b] = multireal_entry(m, idx[a], idx[b]);
    return K;
}

// Multireal values w_s for s in N_m, keyed by s.
template <class R>
using MultirealValues = std::map<MultiIndex, R>;

template <class R>
MultirealValues<R> multireal_from_beta(const Invariant<R>& inv) {
    if (inv.basis() != Basis::beta) throw std::invalid_argument("multireal_from_beta expects beta coefficients");
    const MultiIndex m = inv.degree().m();
    MultirealValues<R> w;
    for (const auto& s : index_box(m)) {
        R acc{};
        for (const auto& [i, c] : inv.coeffs()) {
            i64 e = multireal_entry(m, s, i);
            if (e) acc = coeff_add(acc, coeff_scaled(c, e));
        }
        w[s] = acc;
    }
    return w;
}

struct NotBetaIntegral : std::domain_error {
    MultiIndex u, i;
    Rational value;
    NotBetaIntegral(MultiIndex u_, MultiIndex i_, Rational v)
        : std::domain_error("not beta-integral: triangle entry c_" + index_to_string(i_) + "^" + index_to_string(u_) +
                            " = " + v.str()),
          u(std::move(u_)),
          i(std::move(i_)),
          value(std::move(v)) {}
};

class MultirealTriangle {
public:
    MultirealTriangle() = default;
    explicit MultirealTriangle(MultiDegree degree) : degree_(std::move(degree)) {}

    const MultiDegree& degree() const { return degree_; }
    const std::map<std::pair<MultiIndex, MultiIndex>, Rational>& entries() const { return entries_; }

    // c_i^u
    const Rational& at(const MultiIndex& u, const MultiIndex& i) const {
        auto it = entries_.find({u, i});
        if (it == entries_.end()) throw std::out_of_range("triangle cell outside the index set");
        return it->second;
    }
    bool has(const MultiIndex& u, const MultiIndex& i) const { return entries_.count({u, i}) > 0; }
    void set(const MultiIndex& u, const MultiIndex& i, Rational v) { entries_[{u, i}] = std::move(v); }

    // First non-integral cell in recursion order, if any.
    std::optional<std::pair<MultiIndex, MultiIndex>> first_non_integral() const {
        for (const auto& i : index_set(degree_))
            for (const auto& u : index_set(degree_))
                if (has(u, i) && denominator(at(u, i)) != 1) return std::make_pair(u, i);
        return std::nullopt;
    }

    std::vector<Rational> row(int i) const {
        if (degree_.size() != 1) throw std::invalid_argument("row() needs a single-variable triangle");
        std::vector<Rational> out;
        for (int u = 0; u + i <= degree_.n[0] / 2; ++u) out.push_back(at({u}, {i}));
        return out;
    }

    std::string to_csv() const {
        std::ostringstream os;
        if (degree_.size() == 1) {
            const int m = degree_.n[0] / 2;
            for (int i = 0; i <= m; ++i) {
                auto r = row(i);
                for (size_t u = 0; u < r.size(); ++u) os << (u ? "," : "") << r[u].str();
                os << "\n";
            }
            return os.str();
        }
        os << "i,u,value\n";
        for (const auto& i : index_set(degree_))
            for (const auto& u : index_set(degree_))
                if (has(u, i)) os << index_to_string(i) << "," << index_to_string(u) << "," << at(u, i).str() << "\n";
        return os.str();
    }

    friend bool operator==(const MultirealTriangle&, const MultirealTriangle&) = default;

private:
    MultiDegree degree_{0};
    std::map<std::pair<MultiIndex, MultiIndex>, Rational> entries_;
};

namespace detail {

inline bool fits(const MultiIndex& a, const MultiIndex& b, const MultiIndex& m) {
    for (size_t j = 0; j < m.size(); ++j)
        if (a[j] + b[j] > m[j]) return false;
    return true;
}

inline MultiIndex shifted(MultiIndex a, size_t j, int by) {
    a[j] += by;
    return a;
}

}  // namespace detail

// Forward recursion: c_0^u = w_{m-u}, c_i^u = (c_{i-e_j}^{u+e_j} - c_{i-e_j}^u) / 2.
// Every admissible j is evaluated and required to agree.
inline MultirealTriangle triangle_from_multireal(const MultiDegree& degree, const MultirealValues<i64>& w) {
    const MultiIndex m = degree.m();
    auto idx = index_box(m);
    for (const auto& s : idx)
        if (!w.count(s)) throw std::invalid_argument("multireal vector missing entry " + index_to_string(s));
    MultirealTriangle T(degree);
    std::vector<std::vector<MultiIndex>> by_weight(static_cast<size_t>(degree.total_m() + 1));
    for (const auto& i : idx) by_weight[index_weight(i)].push_back(i);
    const MultiIndex zero(m.size(), 0);
    for (const auto& u : idx) {
        MultiIndex s(m.size());
        for (size_t j = 0; j < m.size(); ++j) s[j] = m[j] - u[j];
        T.set(u, zero, Rational(w.at(s)));
    }
    for (size_t k = 1; k < by_weight.size(); ++k) {
        for (const auto& i : by_weight[k]) {
            for (const auto& u : idx) {
                if (!detail::fits(u, i, m)) continue;
                std::optional<Rational> val;
                for (size_t j = 0; j < m.size(); ++j) {
                    if (i[j] == 0) continue;
                    MultiIndex prev = detail::shifted(i, j, -1);
                    Rational v = (T.at(detail::shifted(u, j, 1), prev) - T.at(u, prev)) / 2;
                    if (val && *val != v) throw std::logic_error("multireal triangle recursion depends on the direction");
                    val = v;
                }
                T.set(u, i, *val);
            }
        }
    }
    return T;
}

// Inverse recursion from the left column: c_i^u = c_i^{u-e_j} + 2 c_{i+e_j}^{u-e_j}.
inline MultirealTriangle triangle_from_beta(const IntInvariant& inv) {
    if (inv.basis() != Basis::beta) throw std::invalid_argument("triangle_from_beta expects beta coefficients");
    const MultiDegree& degree = inv.degree();
    const MultiIndex m = degree.m();
    auto idx = index_box(m);
    MultirealTriangle T(degree);
    const MultiIndex zero(m.size(), 0);
    for (const auto& i : idx) T.set(zero, i, Rational(inv.get(i)));
    std::vector<std::vector<MultiIndex>> by_weight(static_cast<size_t>(degree.total_m() + 1));
    for (const auto& u : idx) by_weight[index_weight(u)].push_back(u);
    for (size_t k = 1; k < by_weight.size(); ++k) {
        for (const auto& u : by_weight[k]) {
            for (const auto& i : idx) {
                if (!detail::fits(u, i, m)) continue;
                std::optional<Rational> val;
                for (size_t j = 0; j < m.size(); ++j) {
                    if (u[j] == 0) continue;
                    MultiIndex prev = detail::shifted(u, j, -1);
                    Rational v = T.at(prev, i) + 2 * T.at(prev, detail::shifted(i, j, 1));
                    if (val && *val != v) throw std::logic_error("inverse triangle recursion depends on the direction");
                    val = v;
                }
                T.set(u, i, *val);
            }
        }
    }
    return T;
}

inline IntInvariant beta_from_triangle(const MultirealTriangle& T) {
    if (auto bad = T.first_non_integral()) throw NotBetaIntegral(bad->first, bad->second, T.at(bad->first, bad->second));
    IntInvariant inv(T.degree(), Basis::beta);
    const MultiIndex zero(T.degree().size(), 0);
    for (const auto& i : index_set(T.degree())) {
        BigInt v = numerator(T.at(zero, i));
        if (v > BigInt(std::numeric_limits<i64>::max()) || v < BigInt(std::numeric_limits<i64>::min()))
            throw ArithmeticError("beta-coefficient exceeds 64-bit range");
        inv.set(i, static_cast<i64>(v));
    }
    return inv;
}

inline IntInvariant beta_from_multireal(const MultiDegree& degree, const MultirealValues<i64>& w) {
    return beta_from_triangle(triangle_from_multireal(degree, w));
}

// Single-variable convenience: w given as (w_0, ..., w_m).
inline MultirealValues<i64> multireal_vector(const std::vector<i64>& w) {
    MultirealValues<i64> out;
    for (size_t s = 0; s < w.size(); ++s) out[{static_cast<int>(s)}] = w[s];
    return out;
}

}  // namespace ww
