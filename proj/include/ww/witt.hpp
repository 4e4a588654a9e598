#pragma once

// Quadratic-form classes over Q: square classes, diagonal forms, the Witt rings
// W(F_p) and W(Q) in canonical coordinates, and Witt-Grothendieck lifts.

#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "ww/arith.hpp"

namespace ww {

inline i64 squarefree_part(i64 n) {
    if (n == 0) throw ArithmeticError("zero has no square class");
    i64 out = n < 0 ? -1 : 1;
    for (auto [p, e] : factorize(n))
        if (e % 2) out = checked_mul(out, p);
    return out;
}

class SquareClass {
public:
    SquareClass() = default;
    explicit SquareClass(i64 n) : value_(squarefree_part(n)) {}
    SquareClass(i64 num, i64 den) : value_(squarefree_part(num)) {
        if (den == 0) throw ArithmeticError("zero denominator");
        *this = *this * SquareClass(den);
    }

    i64 value() const { return value_; }
    int sign() const { return value_ < 0 ? -1 : 1; }

    SquareClass operator*(const SquareClass& o) const {
        i64 g = std::gcd(value_, o.value_);
        SquareClass r;
        r.value_ = checked_mul(value_ / g, o.value_ / g);
        return r;
    }
    SquareClass operator-() const {
        SquareClass r;
        r.value_ = -value_;
        return r;
    }

    friend bool operator==(const SquareClass&, const SquareClass&) = default;
    friend auto operator<=>(const SquareClass&, const SquareClass&) = default;

private:
    i64 value_ = 1;
};

class DiagonalForm {
public:
    DiagonalForm() = default;
    DiagonalForm(std::initializer_list<i64> entries) {
        for (i64 a : entries) entries_.emplace_back(a);
    }
    explicit DiagonalForm(std::vector<SquareClass> entries) : entries_(std::move(entries)) {}

    static DiagonalForm from_integers(const std::vector<i64>& entries) {
        DiagonalForm f;
        for (i64 a : entries) f.entries_.emplace_back(a);
        return f;
    }

    size_t rank() const { return entries_.size(); }
    const std::vector<SquareClass>& entries() const { return entries_; }

    void push(SquareClass a) { entries_.push_back(a); }

    DiagonalForm operator+(const DiagonalForm& o) const {
        DiagonalForm r = *this;
        r.entries_.insert(r.entries_.end(), o.entries_.begin(), o.entries_.end());
        return r;
    }
    DiagonalForm operator*(const DiagonalForm& o) const {
        DiagonalForm r;
        r.entries_.reserve(entries_.size() * o.entries_.size());
        for (const auto& a : entries_)
            for (const auto& b : o.entries_) r.entries_.push_back(a * b);
        return r;
    }
    DiagonalForm operator-() const {
        DiagonalForm r = *this;
        for (auto& a : r.entries_) a = -a;
        return r;
    }

    std::vector<i64> values() const {
        std::vector<i64> out;
        for (const auto& a : entries_) out.push_back(a.value());
        return out;
    }

private:
    std::vector<SquareClass> entries_;
};

// Element of W(F_p), p odd.  For p = 1 mod 4 the pair (a, b) stands for
// a<1> + b<u> with u the least non-residue; for p = 3 mod 4 the value a in
// Z/4 stands for a<1> and b is unused.
class WFpClass {
public:
    WFpClass() = default;
    explicit WFpClass(i64 p, int a = 0, int b = 0) : p_(p) {
        if (split()) {
            a_ = static_cast<int>(mod(a, 2));
            b_ = static_cast<int>(mod(b, 2));
        } else {
            a_ = static_cast<int>(mod(a, 4));
            b_ = 0;
        }
    }

    // Class of the rank-one form <x> for a unit x mod p.
    static WFpClass of_unit(i64 p, i64 x) {
        int l = legendre(x, p);
        if (l == 0) throw ArithmeticError("not a unit mod p");
        if (p % 4 == 1) return l == 1 ? WFpClass(p, 1, 0) : WFpClass(p, 0, 1);
        return l == 1 ? WFpClass(p, 1) : WFpClass(p, 3);
    }

    i64 prime() const { return p_; }
    bool split() const { return p_ % 4 == 1; }
    int a() const { return a_; }
    int b() const { return b_; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    WFpClass operator+(const WFpClass& o) const { return WFpClass(p_, a_ + o.a_, b_ + o.b_); }
    WFpClass operator-() const { return WFpClass(p_, -a_, -b_); }
    WFpClass operator-(const WFpClass& o) const { return *this + (-o); }
    WFpClass operator*(const WFpClass& o) const {
        if (split()) return WFpClass(p_, a_ * o.a_ + b_ * o.b_, a_ * o.b_ + b_ * o.a_);
        return WFpClass(p_, a_ * o.a_);
    }
    WFpClass scaled(i64 k) const {
        if (split()) return WFpClass(p_, static_cast<int>(mod(k, 2)) * a_, static_cast<int>(mod(k, 2)) * b_);
        return WFpClass(p_, static_cast<int>(mod(mod(k, 4) * a_, 4)));
    }

    friend bool operator==(const WFpClass&, const WFpClass&) = default;

private:
    i64 p_ = 3;
    int a_ = 0;
    int b_ = 0;
};

class WittClassQ;
WittClassQ diag_to_wittq(const DiagonalForm& f);

// Element of W(Q) stored as (signature, dyadic bit, residues at odd primes).
class WittClassQ {
public:
    WittClassQ() = default;
    WittClassQ(i64 n) : sig_(n) {}  // n<1>

    static WittClassQ zero() { return WittClassQ(); }
    static WittClassQ one() { return WittClassQ(1); }
    static WittClassQ angle(i64 a) { return diag_to_wittq(DiagonalForm{a}); }
    static WittClassQ from_coordinates(i64 sig, int dy, std::map<i64, WFpClass> res) {
        WittClassQ w;
        w.sig_ = sig;
        w.dy_ = static_cast<int>(mod(dy, 2));
        for (auto& [p, c] : res)
            if (!c.is_zero()) w.res_.emplace(p, c);
        return w;
    }

    i64 signature() const { return sig_; }
    int dyadic() const { return dy_; }
    const std::map<i64, WFpClass>& residues() const { return res_; }

    bool is_zero() const { return sig_ == 0 && dy_ == 0 && res_.empty(); }
    // True iff the class lies in the subring generated by <1> and <2>.
    bool unramified_at_odd_primes() const { return res_.empty(); }
    // True iff the class is an integer multiple of <1>.
    bool is_integer() const { return dy_ == 0 && res_.empty(); }

    WFpClass residue(i64 p) const {
        auto it = res_.find(p);
        return it == res_.end() ? WFpClass(p) : it->second;
    }

    WittClassQ operator+(const WittClassQ& o) const {
        WittClassQ r = *this;
        r += o;
        return r;
    }
    WittClassQ& operator+=(const WittClassQ& o) {
        sig_ = checked_add(sig_, o.sig_);
        dy_ = (dy_ + o.dy_) % 2;
        for (const auto& [p, c] : o.res_) add_residue(p, c);
        return *this;
    }
    WittClassQ operator-() const {
        WittClassQ r;
        r.sig_ = -sig_;
        r.dy_ = dy_;
        for (const auto& [p, c] : res_) r.res_.emplace(p, -c);
        return r;
    }
    WittClassQ operator-(const WittClassQ& o) const { return *this + (-o); }
    WittClassQ& operator-=(const WittClassQ& o) { return *this += -o; }

    WittClassQ scaled(i64 k) const {
        WittClassQ r;
        r.sig_ = checked_mul(sig_, k);
        r.dy_ = static_cast<int>(mod(k, 2)) * dy_;
        for (const auto& [p, c] : res_) {
            WFpClass s = c.scaled(k);
            if (!s.is_zero()) r.res_.emplace(p, s);
        }
        return r;
    }

    WittClassQ operator*(const WittClassQ& o) const;
    WittClassQ& operator*=(const WittClassQ& o) { return *this = *this * o; }

    // Deterministic diagonal representative built from the coordinates.
    DiagonalForm representative() const;

    std::string to_string() const;

    friend bool operator==(const WittClassQ&, const WittClassQ&) = default;

private:
    void add_residue(i64 p, const WFpClass& c) {
        auto it = res_.find(p);
        if (it == res_.end()) {
            if (!c.is_zero()) res_.emplace(p, c);
            return;
        }
        it->second = it->second + c;
        if (it->second.is_zero()) res_.erase(it);
    }

    // Residue-carrying part of the representative.
    DiagonalForm residue_form() const;

    i64 sig_ = 0;
    int dy_ = 0;
    std::map<i64, WFpClass> res_;
};

inline WittClassQ diag_to_wittq(const DiagonalForm& f) {
    i64 sig = 0;
    int dy = 0;
    std::map<i64, WFpClass> res;
    for (const auto& e : f.entries()) {
        i64 a = e.value();
        sig += a < 0 ? -1 : 1;
        for (auto [p, v] : factorize(a)) {
            if (p == 2) {
                dy ^= 1;
                continue;
            }
            WFpClass c = WFpClass::of_unit(p, a / p);
            auto it = res.find(p);
            if (it == res.end())
                res.emplace(p, c);
            else
                it->second = it->second + c;
        }
    }
    return WittClassQ::from_coordinates(sig, dy, std::move(res));
}

namespace detail {

// A diagonal form whose only nonzero residue is the given class at p.
inline DiagonalForm residue_generator(const WFpClass& c) {
    const i64 p = c.prime();
    DiagonalForm f;
    if (!c.split()) {
        if (c.a() == 1) f.push(SquareClass(p));
        if (c.a() == 2) f = DiagonalForm{p, p};
        if (c.a() == 3) f.push(SquareClass(-p));
        return f;
    }
    if (c.a()) f.push(SquareClass(p));
    if (c.b()) {
        const i64 u = least_nonresidue(p);
        DiagonalForm g{checked_mul(u, p)};
        if (u != 2) {
            // <u p> also has a residue at u; cancel it with a form living at u < p.
            WFpClass stray = WFpClass::of_unit(u, p);
            g = g + residue_generator(-stray);
        }
        f = f + g;
    }
    return f;
}

}  // namespace detail

inline DiagonalForm WittClassQ::residue_form() const {
    DiagonalForm f;
    for (const auto& [p, c] : res_) f = f + detail::residue_generator(c);
    return f;
}

inline DiagonalForm WittClassQ::representative() const {
    DiagonalForm f = residue_form();
    WittClassQ r = diag_to_wittq(f);
    int b = (dy_ - r.dy_ + 2) % 2;
    i64 a = sig_ - r.sig_ - b;
    if (b) f.push(SquareClass(2));
    for (i64 i = 0; i < std::llabs(a); ++i) f.push(SquareClass(a < 0 ? -1 : 1));
    return f;
}

inline WittClassQ WittClassQ::operator*(const WittClassQ& o) const {
    // Split each factor as R + a<1> + b<2> with R carrying the residues; the
    // R-parts are multiplied through their diagonal representatives.
    DiagonalForm r1 = residue_form(), r2 = o.residue_form();
    WittClassQ c1 = diag_to_wittq(r1), c2 = diag_to_wittq(r2);
    WittClassQ z1 = *this - c1, z2 = o - c2;
    const i64 b1 = z1.dy_, a1 = z1.sig_ - b1;
    const i64 b2 = z2.dy_, a2 = z2.sig_ - b2;

    WittClassQ out;
    if (r1.rank() && r2.rank()) out += diag_to_wittq(r1 * r2);
    const DiagonalForm two{2};
    if (r1.rank()) {
        out += c1.scaled(a2);
        if (b2) out += diag_to_wittq(r1 * two);
    }
    if (r2.rank()) {
        out += c2.scaled(a1);
        if (b1) out += diag_to_wittq(r2 * two);
    }
    // (a1 + b1<2>)(a2 + b2<2>) with <2>^2 = <1>
    i64 ones = checked_add(checked_mul(a1, a2), b1 * b2);
    i64 twos = a1 * b2 + a2 * b1;
    WittClassQ z;
    z.sig_ = checked_add(ones, twos);
    z.dy_ = static_cast<int>(mod(twos, 2));
    out += z;
    return out;
}

inline std::string WittClassQ::to_string() const {
    std::ostringstream os;
    if (res_.empty()) {
        i64 a = sig_ - dy_;
        if (!dy_) {
            os << a;
        } else if (a == 0) {
            os << "<2>";
        } else {
            os << "(<2> " << (a < 0 ? "- " : "+ ") << std::llabs(a) << ")";
        }
        return os.str();
    }
    os << "[sig " << sig_ << ", dy " << dy_ << ", res";
    for (const auto& [p, c] : res_) {
        os << " " << p << ":";
        if (c.split())
            os << "(" << c.a() << "," << c.b() << ")";
        else
            os << c.a();
    }
    os << "]";
    return os.str();
}

inline WittClassQ wittq_add(const WittClassQ& a, const WittClassQ& b) { return a + b; }
inline WittClassQ wittq_mul(const WittClassQ& a, const WittClassQ& b) { return a * b; }

// Trace form of E_delta = K[x]/(x^2 - delta).
inline DiagonalForm trace_form(const SquareClass& delta) {
    return DiagonalForm(std::vector<SquareClass>{SquareClass(2), SquareClass(2) * delta});
}

inline WittClassQ trace_class(const SquareClass& delta) { return diag_to_wittq(trace_form(delta)); }

// Element of the Witt-Grothendieck ring: rank together with the Witt class.
struct GWLift {
    i64 rank = 0;
    WittClassQ witt;

    GWLift() = default;
    GWLift(i64 r, WittClassQ w) : rank(r), witt(std::move(w)) {
        if (rank < 0) throw ArithmeticError("negative rank");
        if (mod(rank - witt.signature(), 2) != 0)
            throw ArithmeticError("rank parity does not match the Witt class");
    }
    static GWLift of_form(const DiagonalForm& f) {
        return GWLift(static_cast<i64>(f.rank()), diag_to_wittq(f));
    }

    friend bool operator==(const GWLift&, const GWLift&) = default;
};

}  // namespace ww
