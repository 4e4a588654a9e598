#pragma once

// Multidegrees, multi-indices and Witt invariants stored by coefficients
// over one of the bases beta, lambda, alpha, chi.

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "ww/arith.hpp"
#include "ww/witt.hpp"

namespace ww {

using MultiIndex = std::vector<int>;

struct MultiDegree {
    std::vector<int> n;

    MultiDegree() = default;
    MultiDegree(std::initializer_list<int> v) : n(v) { validate(); }
    explicit MultiDegree(std::vector<int> v) : n(std::move(v)) { validate(); }

    size_t size() const { return n.size(); }
    MultiIndex m() const {
        MultiIndex out;
        for (int x : n) out.push_back(x / 2);
        return out;
    }
    int total_m() const {
        int t = 0;
        for (int x : n) t += x / 2;
        return t;
    }
    bool contains(const MultiIndex& i) const {
        if (i.size() != n.size()) return false;
        for (size_t j = 0; j < n.size(); ++j)
            if (i[j] < 0 || i[j] > n[j] / 2) return false;
        return true;
    }

    friend bool operator==(const MultiDegree&, const MultiDegree&) = default;

private:
    void validate() const {
        if (n.empty()) throw std::invalid_argument("multidegree needs at least one component");
        for (int x : n)
            if (x < 0) throw std::invalid_argument("multidegree components must be nonnegative");
    }
};

// All multi-indices 0 <= i <= bound, in lexicographic order.
inline std::vector<MultiIndex> index_box(const MultiIndex& bound) {
    std::vector<MultiIndex> out;
    MultiIndex cur(bound.size(), 0);
    for (int b : bound)
        if (b < 0) return out;
    while (true) {
        out.push_back(cur);
        int j = static_cast<int>(bound.size()) - 1;
        while (j >= 0 && cur[j] == bound[j]) {
            cur[j] = 0;
            --j;
        }
        if (j < 0) break;
        ++cur[j];
    }
    return out;
}

inline std::vector<MultiIndex> index_set(const MultiDegree& d) { return index_box(d.m()); }

inline int index_weight(const MultiIndex& i) {
    int t = 0;
    for (int x : i) t += x;
    return t;
}

inline std::string index_to_string(const MultiIndex& i) {
    if (i.size() == 1) return std::to_string(i[0]);
    std::string s = "(";
    for (size_t j = 0; j < i.size(); ++j) s += (j ? "," : "") + std::to_string(i[j]);
    return s + ")";
}

enum class Basis { beta, lambda, alpha, chi };

inline std::string basis_name(Basis b) {
    switch (b) {
        case Basis::beta: return "beta";
        case Basis::lambda: return "lambda";
        case Basis::alpha: return "alpha";
        case Basis::chi: return "chi";
    }
    return "beta";
}

inline Basis basis_from_name(const std::string& s) {
    if (s == "beta") return Basis::beta;
    if (s == "lambda") return Basis::lambda;
    if (s == "alpha") return Basis::alpha;
    if (s == "chi") return Basis::chi;
    throw std::invalid_argument("unknown basis: " + s);
}

inline std::string basis_symbol(Basis b) {
    switch (b) {
        case Basis::beta: return "b";
        case Basis::lambda: return "l";
        case Basis::alpha: return "a";
        case Basis::chi: return "c";
    }
    return "b";
}

// Coefficient helpers shared by integer and W(Q) coefficients.
inline bool coeff_is_zero(i64 c) { return c == 0; }
inline bool coeff_is_zero(const WittClassQ& c) { return c.is_zero(); }
inline i64 coeff_scaled(i64 c, i64 k) { return checked_mul(c, k); }
inline WittClassQ coeff_scaled(const WittClassQ& c, i64 k) { return c.scaled(k); }
inline i64 coeff_add(i64 a, i64 b) { return checked_add(a, b); }
inline WittClassQ coeff_add(const WittClassQ& a, const WittClassQ& b) { return a + b; }
inline WittClassQ to_witt(i64 c) { return WittClassQ(c); }
inline const WittClassQ& to_witt(const WittClassQ& c) { return c; }
inline std::string coeff_string(i64 c) { return std::to_string(c); }
inline std::string coeff_string(const WittClassQ& c) { return c.to_string(); }

template <class R>
class Invariant {
public:
    static_assert(std::is_same_v<R, i64> || std::is_same_v<R, WittClassQ>);

    Invariant() = default;
    explicit Invariant(MultiDegree degree, Basis basis = Basis::beta)
        : degree_(std::move(degree)), basis_(basis) {}

    static Invariant single(int n, const std::vector<R>& coeffs, Basis basis = Basis::beta) {
        Invariant inv(MultiDegree{n}, basis);
        for (size_t i = 0; i < coeffs.size(); ++i) inv.set({static_cast<int>(i)}, coeffs[i]);
        return inv;
    }

    const MultiDegree& degree() const { return degree_; }
    Basis basis() const { return basis_; }
    const std::map<MultiIndex, R>& coeffs() const { return coeffs_; }
    static constexpr bool integral_mode() { return std::is_same_v<R, i64>; }

    R get(const MultiIndex& i) const {
        auto it = coeffs_.find(i);
        return it == coeffs_.end() ? R{} : it->second;
    }
    void set(const MultiIndex& i, const R& c) {
        if (!degree_.contains(i))
            throw std::out_of_range("index " + index_to_string(i) + " outside the index set of the degree");
        if (coeff_is_zero(c))
            coeffs_.erase(i);
        else
            coeffs_[i] = c;
    }
    void add(const MultiIndex& i, const R& c) { set(i, coeff_add(get(i), c)); }
    bool is_zero() const { return coeffs_.empty(); }

    // Dense coefficient vector for single-variable invariants.
    std::vector<R> dense() const {
        if (degree_.size() != 1) throw std::invalid_argument("dense() needs a single-variable invariant");
        std::vector<R> out(static_cast<size_t>(degree_.n[0] / 2 + 1));
        for (const auto& [i, c] : coeffs_) out[static_cast<size_t>(i[0])] = c;
        return out;
    }

    Invariant operator+(const Invariant& o) const {
        require_compatible(o);
        Invariant r = *this;
        for (const auto& [i, c] : o.coeffs_) r.add(i, c);
        return r;
    }
    Invariant operator-() const {
        Invariant r(degree_, basis_);
        for (const auto& [i, c] : coeffs_) r.coeffs_[i] = coeff_scaled(c, -1);
        return r;
    }
    Invariant operator-(const Invariant& o) const { return *this + (-o); }

    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [i, c] : coeffs_) {
            std::string cs = coeff_string(c);
            bool neg = cs[0] == '-';
            if (first)
                os << (neg ? "-" : "");
            else
                os << (neg ? " - " : " + ");
            first = false;
            os << (neg ? cs.substr(1) : cs) << " " << basis_symbol(basis_) << index_to_string(i);
        }
        return os.str();
    }

    friend bool operator==(const Invariant&, const Invariant&) = default;

private:
    void require_compatible(const Invariant& o) const {
        if (!(o.degree_ == degree_) || o.basis_ != basis_)
            throw std::invalid_argument("invariants of different degree or basis");
    }

    MultiDegree degree_{0};
    Basis basis_ = Basis::beta;
    std::map<MultiIndex, R> coeffs_;
};

using IntInvariant = Invariant<i64>;
using WittInvariant = Invariant<WittClassQ>;

inline WittInvariant promote(const IntInvariant& inv) {
    WittInvariant out(inv.degree(), inv.basis());
    for (const auto& [i, c] : inv.coeffs()) out.set(i, WittClassQ(c));
    return out;
}

inline const WittInvariant& promote(const WittInvariant& inv) { return inv; }

// Back to integer mode; every coefficient must be an integer multiple of <1>.
inline IntInvariant demote(const WittInvariant& inv) {
    IntInvariant out(inv.degree(), inv.basis());
    for (const auto& [i, c] : inv.coeffs()) {
        if (!c.is_integer())
            throw std::domain_error("coefficient at " + index_to_string(i) + " is not an integer multiple of <1>: " +
                                    c.to_string());
        out.set(i, c.signature());
    }
    return out;
}

}  // namespace ww
