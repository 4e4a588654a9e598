#pragma once

// Built-in Welschinger tables.  Names: "p2-d<d>" (d <= 6), "p1xp1-<a>-<b>",
// "p1xp1sym-<a>" (a <= 3).  Tables for P1 x P1 with one ruling degree at most
// two are generated from closed formulas.

#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

#include "ww/welschinger.hpp"

namespace ww {

namespace detail {

inline MultirealValues<i64> first_slot_table(const MultiDegree& d, const std::vector<i64>& w) {
    MultirealValues<i64> out;
    for (const auto& s : index_set(d)) {
        bool rest_zero = true;
        for (size_t j = 1; j < s.size(); ++j) rest_zero = rest_zero && s[j] == 0;
        out[s] = rest_zero ? w.at(static_cast<size_t>(s[0])) : 0;
    }
    return out;
}

inline const std::vector<std::vector<i64>>& p2_tables() {
    static const std::vector<std::vector<i64>> t = {
        {1, 1},
        {1, 1, 1},
        {8, 6, 4, 2, 0},
        {240, 144, 80, 40, 16, 0},
        {18264, 9096, 4272, 1872, 744, 248, 64, 64},
        {2845440, 1209600, 490368, 188544, 67968, 22400, 6400, 1536, 1024},
    };
    return t;
}

// Values for P1 x P1, bidegree (a, b) with a <= b, where tabulated.
inline std::optional<std::vector<i64>> p1xp1_table(int a, int b) {
    if (a == 3 && b == 4) return std::vector<i64>{18424, 9256, 4432, 2032, 904, 408, 224};
    if (a == 3 && b == 5) return std::vector<i64>{268575, 125855, 56831, 24831, 10559, 4415, 1887, 991};
    if (a == 4 && b == 5)
        return std::vector<i64>{28312064, 11406848, 4428160, 1659264, 602496, 213888, 75776, 28160, 13056};
    return std::nullopt;
}

// floor((k+1)/2) 2^(k-1): curves of class k F_1 + 2 F_2 through k+1 conjugate pairs.
inline i64 two_ruling_count(int k) { return k < 1 ? 0 : checked_mul((k + 1) / 2, pow2(k - 1)); }

}  // namespace detail

// V for P1 x P1 bidegree (a, b), a <= b, in beta coefficients where it is known in closed form.
inline std::optional<IntInvariant> p1xp1_closed_form(int a, int b) {
    if (a > b) std::swap(a, b);
    const SurfaceClass c = alias_p1xp1(a, b);
    IntInvariant inv(c.degree());
    if (a == 0) {
        if (b == 1) inv.set({0, 0, 0}, 1);
        return inv;  // no irreducible rational curves in a multiple of a ruling
    }
    if (a == 1) {
        inv.set({0, 0, 0}, 1);
        return inv;
    }
    if (a == 2) {
        // sum_{i < b} count(b - i) beta_i
        for (int i = 0; i < b; ++i) inv.set({i, 0, 0}, detail::two_ruling_count(b - i));
        return inv;
    }
    return std::nullopt;
}

inline std::optional<WelschingerTable> p1xp1_fixture(int a, int b) {
    const SurfaceClass c = alias_p1xp1(a, b);
    if (auto inv = p1xp1_closed_form(a, b)) return table_from_invariant(c, *inv);
    if (auto w = detail::p1xp1_table(std::min(a, b), std::max(a, b)))
        return WelschingerTable{c, detail::first_slot_table(c.degree(), *w)};
    return std::nullopt;
}

inline std::optional<WelschingerTable> p1xp1_symmetric_fixture(int a) {
    const SurfaceClass c = alias_p1xp1_symmetric(a);
    MultirealValues<i64> w;
    switch (a) {
        case 1:
            w = {{{0, 0}, 1}, {{0, 1}, 1}, {{1, 0}, 1}, {{1, 1}, 1}};
            break;
        case 2:
            w = {{{0, 0}, 8}, {{0, 1}, 6}, {{1, 0}, 6}, {{1, 1}, 4}, {{2, 0}, 4}, {{2, 1}, 2}, {{3, 0}, 2}, {{3, 1}, 0}};
            break;
        case 3:
            w = {{{0, 0}, 1086}, {{0, 1}, 576}, {{1, 0}, 606}, {{1, 1}, 288}, {{2, 0}, 318}, {{2, 1}, 128},
                 {{3, 0}, 158},  {{3, 1}, 48},  {{4, 0}, 78},  {{4, 1}, 16},  {{5, 0}, 46},  {{5, 1}, 16}};
            break;
        default:
            return std::nullopt;
    }
    return WelschingerTable{c, w};
}

inline std::optional<WelschingerTable> p2_fixture(int d) {
    if (d < 1 || d > static_cast<int>(detail::p2_tables().size())) return std::nullopt;
    return WelschingerTable{SurfaceClass::p2(d), multireal_vector(detail::p2_tables()[static_cast<size_t>(d - 1)])};
}

inline std::optional<IntInvariant> p3_invariant(int d) {
    std::vector<IntInvariant> parts;
    for (auto [a, b] : p3_summands(d)) {
        auto t = p1xp1_fixture(a, b);
        if (!t) return std::nullopt;
        parts.push_back(build_vw(*t));
    }
    return p3_aggregate(d, parts);
}

inline std::optional<WelschingerTable> builtin_table(const std::string& name) {
    std::smatch mt;
    if (std::regex_match(name, mt, std::regex(R"(p2-d(\d+))"))) return p2_fixture(std::stoi(mt[1]));
    if (std::regex_match(name, mt, std::regex(R"(p1xp1-(\d+)-(\d+))")))
        return p1xp1_fixture(std::stoi(mt[1]), std::stoi(mt[2]));
    if (std::regex_match(name, mt, std::regex(R"(p1xp1sym-(\d+))"))) return p1xp1_symmetric_fixture(std::stoi(mt[1]));
    return std::nullopt;
}

inline std::vector<std::string> builtin_table_names() {
    return {"p2-d1",      "p2-d2",      "p2-d3",      "p2-d4",      "p2-d5",      "p2-d6",
            "p1xp1-3-4",  "p1xp1-3-5",  "p1xp1-4-5",  "p1xp1sym-1", "p1xp1sym-2", "p1xp1sym-3"};
}

}  // namespace ww
