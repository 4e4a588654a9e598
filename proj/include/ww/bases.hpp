#pragma once

// Change of basis between beta, lambda, alpha and chi.  Multivariable
// invariants are converted one tensor factor at a time.

#include <stdexcept>
#include <vector>

#include "ww/invariant.hpp"
#include "ww/tpoly.hpp"

namespace ww {

using WittMatrix = std::vector<std::vector<WittClassQ>>;

namespace detail {

inline WittClassQ angle_pow2(int e) { return (e % 2) ? WittClassQ::angle(2) : WittClassQ::one(); }

inline WittMatrix square_zero(int m) {
    return WittMatrix(static_cast<size_t>(m + 1), std::vector<WittClassQ>(static_cast<size_t>(m + 1)));
}

inline i64 gamma_coeff(int m, int i, int k) {
    i64 s = 0;
    for (int j = k; j <= i; ++j) {
        i64 term = checked_mul(multichoose(m, j - k), binom(m - j, i - j));
        s = (j - k) % 2 ? checked_sub(s, term) : checked_add(s, term);
    }
    return s;
}

inline i64 delta_coeff(int m, int i, int k) {
    if (i < 0) return 0;
    i64 s = 0;
    for (int j = k; j <= i; ++j) {
        i64 term = checked_mul(binom(m - k, j - k), binom(m, i - j));
        s = (j - k) % 2 ? checked_sub(s, term) : checked_add(s, term);
    }
    return s;
}

}  // namespace detail

// Row i of the result expresses the chi_i in the beta basis.
inline std::vector<std::vector<i64>> chi_to_beta_integer(int n) {
    const int m = n / 2;
    std::vector<TPoly> gen(static_cast<size_t>(m + 1), TPoly(m));
    gen[0] = TPoly(m, 1);
    for (int j = 1; j <= m; ++j) {
        // Tr Sym^k E_a = floor((k+1)/2) t + [k even]
        std::vector<TPoly> next(static_cast<size_t>(m + 1), TPoly(m));
        for (int a = 0; a <= m; ++a) {
            if (gen[a].is_zero()) continue;
            for (int k = 0; a + k <= m; ++k) {
                TPoly f = TPoly::t(m, j).scaled((k + 1) / 2) + TPoly(m, k % 2 == 0 ? 1 : 0);
                next[a + k] += gen[a] * f;
            }
        }
        gen = std::move(next);
    }
    if (n % 2) {
        // Sym^k K = K has trace <1>
        std::vector<TPoly> next(static_cast<size_t>(m + 1), TPoly(m));
        for (int a = 0; a <= m; ++a)
            for (int k = 0; a + k <= m; ++k) next[a + k] += gen[a];
        gen = std::move(next);
    }
    std::vector<std::vector<i64>> X(static_cast<size_t>(m + 1), std::vector<i64>(static_cast<size_t>(m + 1), 0));
    for (int i = 0; i <= m; ++i) {
        if (!gen[i].is_symmetric()) throw std::logic_error("chi restriction is not symmetric");
        for (int l = 0; l <= m; ++l) X[i][l] = gen[i].coeff(l == 0 ? 0 : (Mask{1} << l) - 1);
        if (X[i][i] != 1) throw std::logic_error("chi to beta matrix is not unitriangular");
        for (int l = i + 1; l <= m; ++l)
            if (X[i][l] != 0) throw std::logic_error("chi to beta matrix is not triangular");
    }
    return X;
}

inline std::vector<std::vector<i64>> unitriangular_inverse(const std::vector<std::vector<i64>>& X) {
    const size_t N = X.size();
    std::vector<std::vector<i64>> Y(N, std::vector<i64>(N, 0));
    // Y X = I with both lower unitriangular
    for (size_t i = 0; i < N; ++i) {
        Y[i][i] = 1;
        for (size_t k = i; k-- > 0;) {
            i64 s = 0;
            for (size_t l = k + 1; l <= i; ++l) s = checked_add(s, checked_mul(Y[i][l], X[l][k]));
            Y[i][k] = -s;
        }
    }
    return Y;
}

// Row i: the basis element X_i of degree n written in the beta basis.
inline WittMatrix basis_to_beta_matrix(Basis basis, int n) {
    const int m = n / 2;
    WittMatrix A = detail::square_zero(m);
    switch (basis) {
        case Basis::beta:
            for (int i = 0; i <= m; ++i) A[i][i] = WittClassQ::one();
            break;
        case Basis::lambda:
            for (int i = 0; i <= m; ++i)
                for (int k = 0; k <= i; ++k) {
                    WittClassQ c = WittClassQ(detail::delta_coeff(m, i, k));
                    if (n % 2) c += WittClassQ::angle(2).scaled(detail::delta_coeff(m, i - 1, k));
                    A[i][k] = detail::angle_pow2(i - k) * c;
                }
            break;
        case Basis::alpha:
            // alpha_i = sum_j (-1)^{i-j} binom(m-j, i-j) <2^j> beta_j
            for (int i = 0; i <= m; ++i)
                for (int j = 0; j <= i; ++j) {
                    i64 c = binom(m - j, i - j) * ((i - j) % 2 ? -1 : 1);
                    A[i][j] = detail::angle_pow2(j).scaled(c);
                }
            break;
        case Basis::chi: {
            auto X = chi_to_beta_integer(n);
            for (int i = 0; i <= m; ++i)
                for (int k = 0; k <= m; ++k) A[i][k] = WittClassQ(X[i][k]);
            break;
        }
    }
    return A;
}

// Row i: beta_i of degree n written in the given basis.
inline WittMatrix beta_to_basis_matrix(Basis basis, int n) {
    const int m = n / 2;
    WittMatrix B = detail::square_zero(m);
    switch (basis) {
        case Basis::beta:
            for (int i = 0; i <= m; ++i) B[i][i] = WittClassQ::one();
            break;
        case Basis::lambda:
            for (int i = 0; i <= m; ++i)
                for (int k = 0; k <= i; ++k) {
                    if (n % 2 == 0) {
                        B[i][k] = detail::angle_pow2(i - k).scaled(detail::gamma_coeff(m, i, k));
                    } else {
                        WittClassQ c;
                        for (int u = k; u <= i; ++u)
                            c += detail::angle_pow2(i - u).scaled(detail::gamma_coeff(m, i, u) * ((u - k) % 2 ? -1 : 1));
                        B[i][k] = c;
                    }
                }
            break;
        case Basis::alpha:
            // beta_i = sum_j <2^i> binom(m-j, i-j) alpha_j
            for (int i = 0; i <= m; ++i)
                for (int j = 0; j <= i; ++j) B[i][j] = detail::angle_pow2(i).scaled(binom(m - j, i - j));
            break;
        case Basis::chi: {
            auto Y = unitriangular_inverse(chi_to_beta_integer(n));
            for (int i = 0; i <= m; ++i)
                for (int k = 0; k <= m; ++k) B[i][k] = WittClassQ(Y[i][k]);
            break;
        }
    }
    return B;
}

namespace detail {

// New coefficient at index k of component j: sum_i c_i M[i][k].
inline WittInvariant apply_factor(const WittInvariant& inv, size_t j, const WittMatrix& M, Basis target) {
    WittInvariant out(inv.degree(), target);
    for (const auto& [i, c] : inv.coeffs()) {
        const auto& row = M[static_cast<size_t>(i[j])];
        for (size_t k = 0; k < row.size(); ++k) {
            if (row[k].is_zero()) continue;
            MultiIndex idx = i;
            idx[j] = static_cast<int>(k);
            out.add(idx, c * row[k]);
        }
    }
    return out;
}

}  // namespace detail

inline WittInvariant convert_basis(const WittInvariant& inv, Basis target) {
    if (inv.basis() == target) return inv;
    WittInvariant cur = inv;
    if (cur.basis() != Basis::beta) {
        for (size_t j = 0; j < cur.degree().size(); ++j)
            cur = detail::apply_factor(cur, j, basis_to_beta_matrix(inv.basis(), cur.degree().n[j]),
                                       j + 1 == cur.degree().size() ? Basis::beta : inv.basis());
    }
    if (target == Basis::beta) return cur;
    for (size_t j = 0; j < cur.degree().size(); ++j)
        cur = detail::apply_factor(cur, j, beta_to_basis_matrix(target, cur.degree().n[j]),
                                   j + 1 == cur.degree().size() ? target : Basis::beta);
    return cur;
}

inline WittInvariant convert_basis(const IntInvariant& inv, Basis target) { return convert_basis(promote(inv), target); }

}  // namespace ww
