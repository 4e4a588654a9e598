#pragma once

// The ring Z[t_1, ..., t_s] / (t_j^2 = 2 t_j).  Elements are integer
// combinations of squarefree monomials t_J, encoded as bit masks of J.

#include <bit>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ww/arith.hpp"
#include "ww/witt.hpp"

namespace ww {

using Mask = std::uint64_t;

inline Mask bit(int j) { return Mask{1} << (j - 1); }  // variables are 1-based

class TPoly {
public:
    TPoly() = default;
    explicit TPoly(int num_vars, i64 constant = 0) : s_(check_vars(num_vars)) {
        if (constant) c_[0] = constant;
    }

    static TPoly monomial(int num_vars, Mask J, i64 c = 1) {
        TPoly p(num_vars);
        if (c) p.c_[J] = c;
        return p;
    }
    static TPoly t(int num_vars, int j) { return monomial(num_vars, bit(j)); }
    // u_j = 2 - t_j
    static TPoly u(int num_vars, int j) { return TPoly(num_vars, 2) - t(num_vars, j); }
    static TPoly t_set(int num_vars, Mask J) { return monomial(num_vars, J); }
    static TPoly u_set(int num_vars, Mask J) {
        TPoly p(num_vars, 1);
        for (int j = 1; j <= num_vars; ++j)
            if (J & bit(j)) p = p * u(num_vars, j);
        return p;
    }
    // [w]_j: 1 + (w-1)/2 u_j for odd w, w/2 u_j for even w.
    static TPoly bracket(int num_vars, i64 w, int j) {
        if (w % 2) return TPoly(num_vars, 1) + u(num_vars, j).scaled((w - 1) / 2);
        return u(num_vars, j).scaled(w / 2);
    }

    int num_vars() const { return s_; }
    const std::map<Mask, i64>& coeffs() const { return c_; }
    i64 coeff(Mask J) const {
        auto it = c_.find(J);
        return it == c_.end() ? 0 : it->second;
    }
    bool is_zero() const { return c_.empty(); }

    TPoly& operator+=(const TPoly& o) {
        require_same(o);
        for (auto [J, c] : o.c_) add_term(J, c);
        return *this;
    }
    TPoly operator+(const TPoly& o) const {
        TPoly r = *this;
        return r += o;
    }
    TPoly operator-() const { return scaled(-1); }
    TPoly operator-(const TPoly& o) const { return *this + (-o); }
    TPoly& operator-=(const TPoly& o) { return *this += -o; }

    TPoly operator*(const TPoly& o) const {
        require_same(o);
        TPoly r(s_);
        for (auto [J, a] : c_)
            for (auto [K, b] : o.c_) {
                i64 c = checked_mul(checked_mul(a, b), pow2(std::popcount(J & K)));
                r.add_term(J | K, c);
            }
        return r;
    }
    TPoly& operator*=(const TPoly& o) { return *this = *this * o; }

    TPoly scaled(i64 k) const {
        TPoly r(s_);
        if (k == 0) return r;
        for (auto [J, c] : c_) r.c_[J] = checked_mul(c, k);
        return r;
    }

    // Exact division by two; every coefficient must be even.
    TPoly halved() const {
        TPoly r(s_);
        for (auto [J, c] : c_) {
            if (c % 2) throw ArithmeticError("not divisible by 2: odd coefficient in halving");
            r.c_[J] = c / 2;
        }
        return r;
    }

    // Substitute t_j -> 2 (delta_j = +1) or t_j -> 0 (delta_j = -1).
    i64 eval_signs(const std::vector<int>& signs) const {
        if (static_cast<int>(signs.size()) != s_)
            throw std::invalid_argument("sign vector length does not match the number of variables");
        Mask zero_vars = 0;
        for (int j = 1; j <= s_; ++j) {
            if (signs[j - 1] != 1 && signs[j - 1] != -1) throw std::invalid_argument("signs must be +1 or -1");
            if (signs[j - 1] == -1) zero_vars |= bit(j);
        }
        i64 total = 0;
        for (auto [J, c] : c_) {
            if (J & zero_vars) continue;
            total = checked_add(total, checked_mul(c, pow2(std::popcount(J))));
        }
        return total;
    }

    // Substitute t_j -> Tr(E_{delta_j}) = <2, 2 delta_j> in W(Q).
    WittClassQ eval_wittq(const std::vector<SquareClass>& deltas) const {
        if (static_cast<int>(deltas.size()) != s_)
            throw std::invalid_argument("delta vector length does not match the number of variables");
        std::vector<WittClassQ> tr;
        for (const auto& d : deltas) tr.push_back(trace_class(d));
        WittClassQ total;
        for (auto [J, c] : c_) {
            WittClassQ m = WittClassQ::one();
            for (int j = 1; j <= s_ && !m.is_zero(); ++j)
                if (J & bit(j)) m = m * tr[j - 1];
            total += m.scaled(c);
        }
        return total;
    }

    // Specialise one variable to a sign, keeping the variable count.
    TPoly specialize(int j, int sign) const {
        TPoly r(s_);
        for (auto [J, c] : c_) {
            if (!(J & bit(j))) {
                r.add_term(J, c);
            } else if (sign == 1) {
                r.add_term(J & ~bit(j), checked_mul(c, 2));
            }
        }
        return r;
    }

    // Same polynomial viewed in a ring with more (or, if unused, fewer) variables.
    TPoly with_vars(int num_vars) const {
        TPoly r(num_vars);
        for (auto [J, c] : c_) {
            if (num_vars < 64 && (J >> num_vars) != 0) throw std::invalid_argument("variable out of range");
            r.c_[J] = c;
        }
        return r;
    }

    // Symmetric iff the coefficient of t_J depends only on |J|.
    bool is_symmetric() const {
        std::vector<i64> by_size(static_cast<size_t>(s_) + 1, 0);
        std::vector<bool> seen(static_cast<size_t>(s_) + 1, false);
        for (auto [J, c] : c_) {
            int k = std::popcount(J);
            if (!seen[k]) {
                seen[k] = true;
                by_size[k] = c;
            } else if (by_size[k] != c) {
                return false;
            }
        }
        for (int k = 0; k <= s_; ++k) {
            i64 expected = seen[k] ? binom(s_, k) : 0;
            i64 count = 0;
            for (auto [J, c] : c_)
                if (std::popcount(J) == k) ++count;
            if (seen[k] && count != expected) return false;
        }
        return true;
    }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto [J, c] : c_) {
            i64 a = c < 0 ? -c : c;
            if (first)
                os << (c < 0 ? "-" : "");
            else
                os << (c < 0 ? " - " : " + ");
            first = false;
            if (J == 0) {
                os << a;
                continue;
            }
            if (a != 1) os << a << "*";
            bool firstvar = true;
            for (int j = 1; j <= s_; ++j)
                if (J & bit(j)) {
                    os << (firstvar ? "" : "*") << "t" << j;
                    firstvar = false;
                }
        }
        return os.str();
    }

    friend bool operator==(const TPoly&, const TPoly&) = default;

private:
    static int check_vars(int s) {
        if (s < 0 || s > 63) throw std::invalid_argument("number of t-variables must be in [0, 63]");
        return s;
    }
    void require_same(const TPoly& o) const {
        if (o.s_ != s_) throw std::invalid_argument("t-polynomials over different variable sets");
    }
    void add_term(Mask J, i64 c) {
        if (!c) return;
        auto it = c_.find(J);
        if (it == c_.end()) {
            c_.emplace(J, c);
            return;
        }
        it->second = checked_add(it->second, c);
        if (!it->second) c_.erase(it);
    }

    int s_ = 0;
    std::map<Mask, i64> c_;
};

inline TPoly tpoly_mul(const TPoly& a, const TPoly& b) { return a * b; }
inline TPoly tpoly_add(const TPoly& a, const TPoly& b) { return a + b; }
inline TPoly tpoly_halve(const TPoly& a) { return a.halved(); }
inline i64 tpoly_eval_signs(const TPoly& a, const std::vector<int>& signs) { return a.eval_signs(signs); }
inline WittClassQ tpoly_eval_wittq(const TPoly& a, const std::vector<SquareClass>& deltas) {
    return a.eval_wittq(deltas);
}

// Elementary symmetric polynomial beta'_i = sum over |J| = i of t_J.
inline TPoly elementary_t(int num_vars, int i) {
    TPoly p(num_vars);
    if (i < 0 || i > num_vars) return p;
    const Mask full = num_vars == 64 ? ~Mask{0} : (Mask{1} << num_vars) - 1;
    for (Mask J = 0;; ++J) {
        if (std::popcount(J) == i) p += TPoly::monomial(num_vars, J);
        if (J == full) break;
    }
    return p;
}

}  // namespace ww
