#pragma once

// Fixture-driven verification suites.  Expected values are read from
// <data>/expected.json and Welschinger tables from <data>/tables/<name>.json.

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ww/bases.hpp"
#include "ww/fixtures.hpp"
#include "ww/json_io.hpp"
#include "ww/quad.hpp"
#include "ww/welschinger.hpp"

namespace ww {

struct VerificationCheck {
    std::string id;
    std::string expected;
    std::string computed;
    bool pass = false;
};

struct VerificationReport {
    std::string suite;
    std::vector<VerificationCheck> checks;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void add(std::string id, std::string expected, std::string computed) {
        bool ok = expected == computed;
        checks.push_back({std::move(id), std::move(expected), std::move(computed), ok});
    }
};

struct MissingFixture : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline json to_json(const VerificationReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back(json{{"id", c.id}, {"expected", c.expected}, {"computed", c.computed},
                              {"status", c.pass ? "pass" : "fail"}});
    return json{{"suite", r.suite}, {"status", r.passed() ? "pass" : "fail"}, {"checks", checks}};
}

class Verifier {
public:
    Verifier(std::filesystem::path data_dir, EnumOptions opt) : dir_(std::move(data_dir)), opt_(std::move(opt)) {}

    static const std::vector<std::string>& suite_names() {
        static const std::vector<std::string> names = {"tables",   "bases",    "triangle",
                                                       "fd-small", "fd-p1p1",  "ramification"};
        return names;
    }

    VerificationReport run(const std::string& suite) {
        VerificationReport r{suite, {}};
        if (suite == "tables") tables(r);
        else if (suite == "bases") bases(r);
        else if (suite == "triangle") triangle(r);
        else if (suite == "fd-small") fd_small(r);
        else if (suite == "fd-p1p1") fd_p1p1(r);
        else if (suite == "ramification") ramification(r);
        else throw std::invalid_argument("unknown suite: " + suite);
        return r;
    }

    const json& expected() {
        if (expected_.is_null()) expected_ = load(dir_ / "expected.json");
        return expected_;
    }

    WelschingerTable table(const std::string& name) {
        return table_from_json(load(dir_ / "tables" / (name + ".json")));
    }

private:
    static json load(const std::filesystem::path& file) {
        std::ifstream in(file);
        if (!in) throw MissingFixture("missing fixture: " + file.string());
        return json::parse(in);
    }

    static WittClassQ coeff(const json& j) {
        if (j.is_number_integer()) return WittClassQ(j.get<i64>());
        return WittClassQ(j.value("one", i64{0})) + WittClassQ::angle(2).scaled(j.value("two", i64{0}));
    }

    // Single-variable invariant of degree n from a dense coefficient list.
    static WittInvariant dense(int n, Basis basis, const json& coeffs) {
        WittInvariant out(MultiDegree{n}, basis);
        for (size_t i = 0; i < coeffs.size(); ++i) out.add({static_cast<int>(i)}, coeff(coeffs[i]));
        return out;
    }

    static WittInvariant sparse(const MultiDegree& d, Basis basis, const json& coeffs) {
        WittInvariant out(d, basis);
        for (const auto& c : coeffs) out.add(c.at("i").get<MultiIndex>(), coeff(c.at("c")));
        return out;
    }

    // An invariant of degree (n, 1, ...) compared through its first slot.
    static WittInvariant first_slot(const WittInvariant& inv) {
        WittInvariant out(MultiDegree{inv.degree().n[0]}, inv.basis());
        for (const auto& [i, c] : inv.coeffs()) out.add({i[0]}, c);
        return out;
    }

    void compare(VerificationReport& r, const std::string& id, const WittInvariant& expected,
                 const WittInvariant& computed) {
        r.add(id, expected.to_string(), computed.to_string());
    }

    void tables(VerificationReport& r) {
        const json& e = expected();
        for (int d = 1; d <= 6; ++d) {
            const std::string key = std::to_string(d);
            IntInvariant v = build_vw(table("p2-d" + key));
            const int n = v.degree().n[0];
            compare(r, "p2 d=" + key + " beta", dense(n, Basis::beta, e["p2"]["beta"][key]), promote(v));
            compare(r, "p2 d=" + key + " lambda", dense(n, Basis::lambda, e["p2"]["lambda"][key]),
                    convert_basis(v, Basis::lambda));
            if (e["p2"]["chi"].contains(key))
                compare(r, "p2 d=" + key + " chi", dense(n, Basis::chi, e["p2"]["chi"][key]),
                        convert_basis(v, Basis::chi));
        }
        for (const auto& [key, row] : e["p1xp1"]["beta"].items()) {
            const auto comma = key.find(',');
            const int a = std::stoi(key.substr(0, comma)), b = std::stoi(key.substr(comma + 1));
            WittInvariant v = first_slot(promote(build_vw(table("p1xp1-" + std::to_string(a) + "-" + std::to_string(b)))));
            const int n = v.degree().n[0];
            compare(r, "p1xp1 " + key + " beta", dense(n, Basis::beta, row), v);
            compare(r, "p1xp1 " + key + " lambda", dense(n, Basis::lambda, e["p1xp1"]["lambda"][key]),
                    convert_basis(v, Basis::lambda));
            compare(r, "p1xp1 " + key + " chi", dense(n, Basis::chi, e["p1xp1"]["chi"][key]),
                    convert_basis(v, Basis::chi));
        }
        for (const auto& [key, row] : e["p1xp1"]["two_ruling_lambda"].items()) {
            const int a = std::stoi(key);
            WittInvariant v = first_slot(promote(*p1xp1_closed_form(a, 2)));
            compare(r, "p1xp1 (" + key + ",2) lambda", dense(v.degree().n[0], Basis::lambda, row),
                    convert_basis(v, Basis::lambda));
        }
        {
            WittInvariant v = first_slot(promote(*p1xp1_closed_form(2, 4)));
            compare(r, "p1xp1 2,4 chi", dense(v.degree().n[0], Basis::chi, e["p1xp1"]["chi"]["2,4"]),
                    convert_basis(v, Basis::chi));
        }
        for (const auto& [key, row] : e["p1xp1"]["symmetric_beta"].items()) {
            WelschingerTable t = table("p1xp1sym-" + key);
            IntInvariant v = build_vw(t);
            compare(r, "p1xp1 sym a=" + key + " beta", sparse(v.degree(), Basis::beta, row), promote(v));
            compare(r, "p1xp1 sym a=" + key + " lambda",
                    sparse(v.degree(), Basis::lambda, e["p1xp1"]["symmetric_lambda"][key]),
                    convert_basis(v, Basis::lambda));
        }
    }

    void bases(VerificationReport& r) {
        for (int n = 0; n <= 13; ++n) {
            const int m = n / 2;
            for (int i = 0; i <= m; ++i) {
                WittInvariant b(MultiDegree{n}, Basis::beta);
                b.add({i}, WittClassQ::one());
                b.add({m - i}, WittClassQ::angle(2));
                for (Basis via : {Basis::lambda, Basis::chi, Basis::alpha}) {
                    WittInvariant back = convert_basis(convert_basis(b, via), Basis::beta);
                    r.add("n=" + std::to_string(n) + " i=" + std::to_string(i) + " beta->" + basis_name(via) + "->beta",
                          b.to_string(), back.to_string());
                }
                WittInvariant l = convert_basis(b, Basis::lambda);
                r.add("n=" + std::to_string(n) + " i=" + std::to_string(i) + " lambda->chi->lambda", l.to_string(),
                      convert_basis(convert_basis(l, Basis::chi), Basis::lambda).to_string());
            }
        }
    }

    void triangle(VerificationReport& r) {
        const json& rows = expected()["p2"]["triangle_d4"];
        MultirealTriangle T = triangle_semantics(table("p2-d4"));
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t k = 0; k < rows[i].size(); ++k) {
                const int u = static_cast<int>(k);
                r.add("d=4 row " + std::to_string(i) + " col " + std::to_string(k), rows[i][k].get<std::string>(),
                      T.at({u}, {static_cast<int>(i)}).str());
            }
        for (int d = 1; d <= 6; ++d) {
            WelschingerTable t = table("p2-d" + std::to_string(d));
            r.add("d=" + std::to_string(d) + " triangle round trip", to_json(triangle_semantics(t)).dump(),
                  to_json(triangle_from_beta(build_vw(t))).dump());
        }
    }

    void fd_small(VerificationReport& r) {
        const json& e = expected();
        for (int d = 1; d <= 4; ++d) {
            FloorClass c = normalize_class({d, 0, 0, 0});
            QuadInvariantResult q = quad_invariant(c, c.elements() / 2, opt_, false);
            compare(r, "fd (" + c.to_string() + ") beta", dense(c.elements(), Basis::beta, e["p2"]["beta"][std::to_string(d)]),
                    promote(beta_extract(q)));
            r.add("fd (" + c.to_string() + ") classical", std::to_string(e["p2"]["classical"][d - 1].get<i64>()),
                  std::to_string(classical_count(c, opt_)));
        }
        FloorClass c4 = normalize_class({4, 0, 0, 0});
        const auto& w = e["p2"]["welschinger"]["4"];
        for (int s = 0; s < static_cast<int>(w.size()); ++s)
            r.add("fd (4,0,0,0) wel s=" + std::to_string(s), std::to_string(w[s].get<i64>()),
                  std::to_string(welschinger_via_fd(c4, s, opt_)));
        for (const auto& row : e["blowups_chi"]) {
            std::vector<int> div = row.at("d").get<std::vector<int>>();
            std::array<int, 4> cls{div[0], 0, 0, 0};
            std::vector<int> blocks = row.at("n").get<std::vector<int>>();
            // each block here is a single real point; the divisor coefficients fill the class
            for (size_t j = 0; j < blocks.size(); ++j) cls[j + 1] = div[j + 1];
            FloorClass c = normalize_class(cls);
            QuadInvariantResult q = quad_invariant(c, c.elements() / 2, opt_, false);
            compare(r, "fd (" + c.to_string() + ") chi", dense(c.elements(), Basis::chi, row.at("chi")),
                    convert_basis(beta_extract(q), Basis::chi));
        }
    }

    void fd_p1p1(VerificationReport& r) {
        const json& e = expected();
        for (int a = 1; a <= 5; ++a) {
            FloorClass c = normalize_class({a + 2, a, 2, 0});
            QuadInvariantResult q = quad_invariant(c, c.elements() / 2, opt_, false);
            r.add("fd (" + c.to_string() + ") wel s=m", std::to_string(detail::two_ruling_count(a)),
                  std::to_string(welschinger_via_fd(q)));
            compare(r, "fd (" + c.to_string() + ") beta", first_slot(promote(*p1xp1_closed_form(a, 2))),
                    promote(beta_extract(q)));
        }
        {
            FloorClass c = normalize_class({6, 4, 2, 0});
            QuadInvariantResult q = quad_invariant(c, c.elements() / 2, opt_, false);
            compare(r, "fd (6,4,2,0) chi", dense(c.elements(), Basis::chi, e["p1xp1"]["chi"]["2,4"]),
                    convert_basis(beta_extract(q), Basis::chi));
        }
        for (auto [key, cls] : std::vector<std::pair<std::string, std::array<int, 4>>>{
                 {"3,4", {7, 4, 3, 0}}, {"3,5", {8, 5, 3, 0}}, {"4,5", {9, 5, 4, 0}}}) {
            FloorClass c = normalize_class(cls);
            QuadInvariantResult q = quad_invariant(c, c.elements() / 2, opt_, false);
            compare(r, "fd (" + c.to_string() + ") beta", dense(c.elements(), Basis::beta, e["p1xp1"]["beta"][key]),
                    promote(beta_extract(q)));
        }
    }

    void ramification(VerificationReport& r) {
        std::vector<std::array<int, 4>> classes = {{1, 0, 0, 0}, {2, 0, 0, 0}, {3, 0, 0, 0}, {4, 0, 0, 0},
                                                   {3, 1, 0, 0}, {4, 2, 0, 0}, {4, 1, 1, 0}, {4, 2, 2, 0},
                                                   {4, 2, 1, 1}, {6, 4, 2, 0}, {7, 4, 3, 0}};
        for (auto cls : classes) {
            FloorClass c = normalize_class(cls);
            QuadInvariantResult q = quad_invariant(c, c.elements() / 2, opt_, false);
            WittInvariant b = promote(beta_extract(q));
            std::string primes;
            for (i64 p : ramified_primes(b)) primes += std::to_string(p) + " ";
            r.add("fd (" + c.to_string() + ") ramified primes", "", primes);
            // the lambda form of an integral invariant converts back without residues
            WittInvariant back = to_beta(convert_basis(b, Basis::lambda));
            primes.clear();
            for (i64 p : ramified_primes(back)) primes += std::to_string(p) + " ";
            r.add("fd (" + c.to_string() + ") lambda round trip ramified primes", "", primes);
        }
    }

    std::filesystem::path dir_;
    EnumOptions opt_;
    json expected_;
};

}  // namespace ww
