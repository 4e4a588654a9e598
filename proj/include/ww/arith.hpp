#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ww {

using i64 = std::int64_t;

struct ArithmeticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticError("integer overflow in addition");
    return r;
}

inline i64 checked_sub(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticError("integer overflow in subtraction");
    return r;
}

inline i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticError("integer overflow in multiplication");
    return r;
}

inline i64 binom(i64 n, i64 k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    i64 r = 1;
    for (i64 i = 1; i <= k; ++i) {
        // r * (n - k + i) is divisible by i
        r = checked_mul(r, n - k + i) / i;
    }
    return r;
}

// Number of multisets of size k drawn from n kinds.
inline i64 multichoose(i64 n, i64 k) {
    if (k < 0) return 0;
    if (k == 0) return 1;
    if (n <= 0) return 0;
    return binom(n + k - 1, k);
}

inline i64 pow2(int e) {
    if (e < 0 || e > 62) throw ArithmeticError("power of two out of range");
    return i64{1} << e;
}

inline i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

inline i64 powmod(i64 base, i64 e, i64 m) {
    __int128 r = 1, b = mod(base, m);
    while (e > 0) {
        if (e & 1) r = (r * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return static_cast<i64>(r);
}

// Legendre symbol for an odd prime p; returns 0, 1 or -1.
inline int legendre(i64 a, i64 p) {
    i64 r = powmod(a, (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

// Primes up to a bound, sieved once and shared.
class PrimeTable {
public:
    static constexpr i64 kDefaultBound = 1000000;

    static const std::vector<i64>& primes(i64 bound = kDefaultBound) {
        static std::mutex mu;
        static std::map<i64, std::vector<i64>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(bound);
        if (it != cache.end()) return it->second;
        std::vector<bool> composite(static_cast<size_t>(bound + 1), false);
        std::vector<i64> out;
        for (i64 i = 2; i <= bound; ++i) {
            if (composite[static_cast<size_t>(i)]) continue;
            out.push_back(i);
            for (i64 j = i * i; j <= bound; j += i) composite[static_cast<size_t>(j)] = true;
        }
        return cache.emplace(bound, std::move(out)).first->second;
    }
};

inline i64& factor_bound() {
    static i64 bound = PrimeTable::kDefaultBound;
    return bound;
}

// Prime factorization of |n| (n != 0) as prime -> exponent.
// Throws when a cofactor is left that cannot be certified prime within the bound.
inline std::map<i64, int> factorize(i64 n) {
    if (n == 0) throw ArithmeticError("cannot factor zero");
    std::map<i64, int> out;
    unsigned long long m = n < 0 ? static_cast<unsigned long long>(-(n + 1)) + 1ULL
                                 : static_cast<unsigned long long>(n);
    const i64 bound = factor_bound();
    if (m < 1000) {
        for (unsigned long long p = 2; p * p <= m; ++p) {
            while (m % p == 0) {
                ++out[static_cast<i64>(p)];
                m /= p;
            }
        }
        if (m > 1) ++out[static_cast<i64>(m)];
        return out;
    }
    for (i64 p : PrimeTable::primes(bound)) {
        auto up = static_cast<unsigned long long>(p);
        if (up * up > m) break;
        while (m % up == 0) {
            ++out[p];
            m /= up;
        }
    }
    if (m > 1) {
        __int128 b = bound;
        if (static_cast<__int128>(m) > b * b)
            throw ArithmeticError("factorization bound exceeded for " + std::to_string(n));
        ++out[static_cast<i64>(m)];
    }
    return out;
}

inline int valuation(i64 n, i64 p) {
    if (n == 0) throw ArithmeticError("valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// Smallest positive quadratic non-residue modulo an odd prime.
inline i64 least_nonresidue(i64 p) {
    for (i64 a = 2; a < p; ++a)
        if (legendre(a, p) == -1) return a;
    throw ArithmeticError("no non-residue found");
}

}  // namespace ww
