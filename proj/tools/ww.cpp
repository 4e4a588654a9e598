// Command-line front end: Witt classes, Welschinger-Witt invariants, floor
// diagrams and fixture verification.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ww/ww.hpp"

#ifndef WW_DATA_DIR
#define WW_DATA_DIR "data"
#endif

namespace {

using namespace ww;

enum Exit { ok = 0, failed = 1, usage = 2, internal = 3 };

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::vector<i64> parse_ints(const std::string& s) {
    std::vector<i64> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            size_t pos = 0;
            out.push_back(std::stoll(item, &pos));
            if (pos != item.size()) throw UsageError("not an integer: " + item);
        } catch (const std::logic_error&) {
            throw UsageError("not an integer: " + item);
        }
    }
    return out;
}

std::vector<int> parse_small_ints(const std::string& s) {
    std::vector<int> out;
    for (i64 v : parse_ints(s)) out.push_back(static_cast<int>(v));
    return out;
}

DiagonalForm parse_form(const std::string& s) {
    static const std::regex entry(R"(\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*)");
    DiagonalForm f;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        std::smatch m;
        if (!std::regex_match(item, m, entry)) throw UsageError("parse error in form entry '" + item + "'");
        const i64 num = std::stoll(m[1]);
        const i64 den = m[2].matched ? std::stoll(m[2]) : 1;
        if (num == 0) throw UsageError("zero entry in diagonal form");
        if (den == 0) throw UsageError("zero denominator in form entry '" + item + "'");
        f.push(SquareClass(num, den));
    }
    if (f.rank() == 0) throw UsageError("empty form");
    return f;
}

// ---- witt ----

int cmd_witt(const std::string& form, const std::string& format) {
    const DiagonalForm f = parse_form(form);
    const WittClassQ w = diag_to_wittq(f);
    std::vector<i64> primes;
    for (const auto& [p, c] : w.residues()) primes.push_back(p);
    if (format == "json") {
        json j = to_json(w);
        j["rank"] = f.rank();
        j["ramified_primes"] = primes;
        j["representative"] = w.representative().values();
        std::cout << j.dump(2) << "\n";
        return ok;
    }
    std::cout << "class: " << w.to_string() << "\n";
    std::cout << "rank: " << f.rank() << "\n";
    std::cout << "signature: " << w.signature() << "\n";
    std::cout << "dyadic: " << w.dyadic() << "\n";
    std::cout << "residues:";
    if (w.residues().empty()) std::cout << " none";
    for (const auto& [p, c] : w.residues()) {
        std::cout << " " << p << ":";
        if (c.split())
            std::cout << "(" << c.a() << "," << c.b() << ")";
        else
            std::cout << c.a();
    }
    std::cout << "\nramified primes:";
    if (primes.empty()) std::cout << " none";
    for (i64 p : primes) std::cout << " " << p;
    std::cout << "\nrepresentative: <";
    auto rep = w.representative().values();
    for (size_t i = 0; i < rep.size(); ++i) std::cout << (i ? ", " : "") << rep[i];
    std::cout << ">\n";
    return ok;
}

// ---- wel-build ----

struct WelOptions {
    std::string surface = "p2";
    int degree = 0;
    std::string bidegree;
    std::string blocks, divisor;
    std::string table = "builtin";
    std::string basis = "beta";
    std::string format = "text";
    i64 gw = -1;
};

SurfaceClass surface_for(const WelOptions& o) {
    if (o.surface == "p2") {
        if (o.degree < 1) throw UsageError("--degree is required for p2");
        return SurfaceClass::p2(o.degree);
    }
    if (o.surface == "p1xp1") {
        auto b = parse_small_ints(o.bidegree);
        if (b.size() != 2) throw UsageError("--bidegree a,b is required for p1xp1");
        return alias_p1xp1(b[0], b[1]);
    }
    if (o.surface == "p1xp1sym") {
        if (o.degree < 1) throw UsageError("--degree is required for p1xp1sym");
        return alias_p1xp1_symmetric(o.degree);
    }
    if (o.surface == "blowup") return SurfaceClass(parse_small_ints(o.blocks), parse_small_ints(o.divisor));
    throw UsageError("unknown surface: " + o.surface);
}

std::string builtin_name(const WelOptions& o) {
    if (o.surface == "p2") return "p2-d" + std::to_string(o.degree);
    if (o.surface == "p1xp1") {
        auto b = parse_small_ints(o.bidegree);
        return "p1xp1-" + std::to_string(b[0]) + "-" + std::to_string(b[1]);
    }
    if (o.surface == "p1xp1sym") return "p1xp1sym-" + std::to_string(o.degree);
    throw UsageError("no built-in tables for surface " + o.surface + "; pass --table FILE");
}

void print_invariant(const IntInvariant& v, const WelOptions& o, const std::optional<MultirealTriangle>& T,
                     const std::optional<LiftedInvariant>& lift, const GuardReport& guard) {
    const Basis basis = basis_from_name(o.basis);
    const WittInvariant shown = convert_basis(v, basis);
    if (o.format == "json") {
        json j{{"invariant", to_json(shown)}, {"beta", to_json(v)},
               {"guard", {{"status", guard.status == GuardStatus::quadratic_side_defined ? "quadratic-side-defined"
                                                                                        : "welschinger-only"},
                          {"reason", guard.reason}}}};
        if (T) j["triangle"] = to_json(*T);
        if (lift) j["lift"] = {{"rank", lift->rank}, {"hyperbolic", lift->hyperbolic}};
        std::cout << j.dump(2) << "\n";
    } else if (o.format == "csv") {
        if (!T) throw UsageError("no triangle available for this surface");
        std::cout << T->to_csv();
    } else {
        std::cout << shown.to_string() << "\n";
        if (lift) std::cout << "lift: rank " << lift->rank << ", hyperbolic copies " << lift->hyperbolic << "\n";
        std::cout << "guard: " << guard.reason << "\n";
    }
}

int cmd_wel_build(const WelOptions& o) {
    if (o.surface == "p3") {
        if (o.degree < 1) throw UsageError("--degree is required for p3");
        auto v = p3_invariant(o.degree);
        if (!v) throw UsageError("no tables available for the P3 summands of degree " + std::to_string(o.degree));
        print_invariant(*v, o, std::nullopt, std::nullopt, hypothesis_guard(SurfaceClass({}, {o.degree}, SurfaceKind::P3_aggregate)));
        return ok;
    }
    WelschingerTable table;
    if (o.table == "builtin") {
        auto t = builtin_table(builtin_name(o));
        if (!t) throw UsageError("no built-in table " + builtin_name(o));
        table = *t;
    } else {
        std::ifstream in(o.table);
        if (!in) throw UsageError("cannot read table file " + o.table);
        table = table_from_json(json::parse(in));
    }
    const SurfaceClass expected = surface_for(o);
    if (!(canonical_blocks(table.surface) == canonical_blocks(expected)) && o.surface != "blowup")
        throw UsageError("table surface does not match the requested surface");
    const MultirealTriangle T = triangle_semantics(table);
    const IntInvariant v = build_vw(table);
    std::optional<LiftedInvariant> lift;
    if (o.gw >= 0) lift = wg_lift(v, o.gw, table.values.at(MultiIndex(v.degree().n.size(), 0)));
    print_invariant(v, o, T, lift, hypothesis_guard(table.surface));
    return ok;
}

// ---- fd ----

struct FdOptions {
    std::string action;
    std::string cls;
    std::string s = "m";
    std::string emit;
    std::string format = "text";
    int jobs = 1;
    std::string cache_dir;
};

int cmd_fd(const FdOptions& o) {
    auto d = parse_small_ints(o.cls);
    if (d.size() != 4) throw UsageError("--class needs four integers");
    const FloorClass c = normalize_class({d[0], d[1], d[2], d[3]});
    EnumOptions opt;
    opt.jobs = o.jobs;
    if (!o.cache_dir.empty()) opt.cache_dir = o.cache_dir;
    const int m = c.elements() / 2;
    int s = m;
    if (o.s != "m") {
        auto v = parse_small_ints(o.s);
        if (v.size() != 1) throw UsageError("--s takes an integer or 'm'");
        s = v[0];
    }
    if (s < 0 || s > m) throw UsageError("--s must lie in [0, " + std::to_string(m) + "]");

    if (o.action == "classical") {
        i64 n = classical_count(c, opt);
        if (o.format == "json")
            std::cout << json{{"class", c.as_array()}, {"classical", n}}.dump(2) << "\n";
        else
            std::cout << n << "\n";
        return ok;
    }
    if (o.action == "list") {
        QuadInvariantResult r = quad_invariant(c, s, opt);
        if (o.format == "json") {
            std::cout << to_json(r).dump(2) << "\n";
        } else {
            for (const auto& e : r.ledger) std::cout << to_json(e.marked).dump() << "  mu = " << e.mult.to_string() << "\n";
            std::cout << r.ledger.size() << " essential classes\n";
        }
        return ok;
    }
    if (o.action == "wel") {
        i64 w = welschinger_via_fd(quad_invariant(c, s, opt, false));
        if (o.format == "json")
            std::cout << json{{"class", c.as_array()}, {"s", s}, {"welschinger", w}}.dump(2) << "\n";
        else
            std::cout << w << "\n";
        return ok;
    }
    if (o.action == "quad") {
        QuadInvariantResult r = quad_invariant(c, s, opt, false);
        const std::string emit = o.emit.empty() ? "tpoly" : o.emit;
        json j{{"class", c.as_array()}, {"s", s}};
        std::string text;
        if (emit == "tpoly") {
            j["value"] = to_json(r.value);
            text = r.value.to_string();
        } else if (emit == "beta") {
            IntInvariant b = beta_extract(r);
            j["beta"] = to_json(b);
            text = b.to_string();
        } else if (emit == "int") {
            i64 w = welschinger_via_fd(r);
            j["welschinger"] = w;
            text = std::to_string(w);
        } else {
            throw UsageError("--emit must be tpoly, beta or int");
        }
        std::cout << (o.format == "json" ? j.dump(2) : text) << "\n";
        return ok;
    }
    throw UsageError("unknown fd action: " + o.action);
}

// ---- verify ----

int cmd_verify(const std::string& suite, const std::string& data_dir, const std::string& format, int jobs,
               const std::string& cache_dir) {
    EnumOptions opt;
    opt.jobs = jobs;
    if (!cache_dir.empty()) opt.cache_dir = cache_dir;
    Verifier v(data_dir, opt);
    std::vector<std::string> suites;
    if (suite == "all")
        suites = Verifier::suite_names();
    else
        suites = {suite};
    bool all_pass = true;
    json out = json::array();
    for (const auto& name : suites) {
        VerificationReport r = v.run(name);
        all_pass = all_pass && r.passed();
        if (format == "json") {
            out.push_back(to_json(r));
            continue;
        }
        for (const auto& c : r.checks) {
            std::cout << (c.pass ? "PASS " : "FAIL ") << name << ": " << c.id;
            if (!c.pass) std::cout << "  expected [" << c.expected << "] computed [" << c.computed << "]";
            std::cout << "\n";
        }
        std::cout << name << ": " << (r.passed() ? "pass" : "FAIL") << " (" << r.checks.size() << " checks)\n";
    }
    if (format == "json") std::cout << out.dump(2) << "\n";
    return all_pass ? ok : failed;
}

// ---- tables ----

int cmd_tables_export(const std::string& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& name : builtin_table_names()) {
        std::ofstream out(std::filesystem::path(dir) / (name + ".json"));
        out << to_json(*builtin_table(name)).dump(1) << "\n";
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Witt invariants, Welschinger-Witt invariants and floor diagrams"};
    app.require_subcommand(1);

    std::string form, witt_format = "text";
    auto* witt = app.add_subcommand("witt", "canonical Witt class of a diagonal form over Q");
    witt->add_option("form", form, "comma-separated nonzero rationals, e.g. 1,1,-1 or 3/5,2")->required();
    witt->add_option("--format", witt_format)->check(CLI::IsMember({"text", "json"}));

    WelOptions wel;
    auto* wb = app.add_subcommand("wel-build", "Welschinger-Witt invariant from a Welschinger table");
    wb->add_option("--surface", wel.surface)->check(CLI::IsMember({"p2", "p1xp1", "p1xp1sym", "p3", "blowup"}));
    wb->add_option("--degree", wel.degree);
    wb->add_option("--bidegree", wel.bidegree, "a,b");
    wb->add_option("--blocks", wel.blocks, "block sizes n_1,...,n_r (surface blowup)");
    wb->add_option("--divisor", wel.divisor, "d_0,d_1,...,d_r (surface blowup)");
    wb->add_option("--table", wel.table, "'builtin' or a JSON table file");
    wb->add_option("--basis", wel.basis)->check(CLI::IsMember({"beta", "lambda", "alpha", "chi"}));
    wb->add_option("--format", wel.format)->check(CLI::IsMember({"text", "json", "csv"}));
    wb->add_option("--gw", wel.gw, "complex count for the Witt-Grothendieck lift");

    FdOptions fd;
    auto* fdc = app.add_subcommand("fd", "floor diagrams");
    fdc->add_option("action", fd.action)->required()->check(CLI::IsMember({"list", "quad", "wel", "classical"}));
    fdc->add_option("--class", fd.cls, "d0,d1,d2,d3")->required();
    fdc->add_option("--s", fd.s, "number of conjugate pairs, or 'm'");
    fdc->add_option("--emit", fd.emit)->check(CLI::IsMember({"tpoly", "beta", "int"}));
    fdc->add_option("--format", fd.format)->check(CLI::IsMember({"text", "json"}));
    fdc->add_option("--jobs", fd.jobs)->check(CLI::PositiveNumber);
    fdc->add_option("--cache-dir", fd.cache_dir);

    std::string suite, data_dir = WW_DATA_DIR, verify_format = "text", verify_cache;
    int verify_jobs = 1;
    auto* ver = app.add_subcommand("verify", "check computed values against fixtures");
    std::vector<std::string> suite_choices = Verifier::suite_names();
    suite_choices.push_back("all");
    ver->add_option("suite", suite)->required()->check(CLI::IsMember(suite_choices));
    ver->add_option("--data-dir", data_dir);
    ver->add_option("--format", verify_format)->check(CLI::IsMember({"text", "json"}));
    ver->add_option("--jobs", verify_jobs)->check(CLI::PositiveNumber);
    ver->add_option("--cache-dir", verify_cache);

    std::string export_dir;
    auto* tables = app.add_subcommand("tables", "built-in Welschinger tables");
    tables->require_subcommand(1);
    auto* tab = tables->add_subcommand("export", "write the built-in tables as JSON files");
    tab->add_option("--out", export_dir)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*witt) return cmd_witt(form, witt_format);
        if (*wb) return cmd_wel_build(wel);
        if (*fdc) return cmd_fd(fd);
        if (*ver) return cmd_verify(suite, data_dir, verify_format, verify_jobs, verify_cache);
        if (*tab) return cmd_tables_export(export_dir);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return usage;
    } catch (const ClassOutsideDomain& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const MissingFixture& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const AsymmetricSum& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return internal;
    } catch (const ArithmeticError& e) {
        const std::string msg = e.what();
        std::cerr << "error: " << msg << "\n";
        return msg.find("halving") != std::string::npos ? internal : failed;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return usage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return failed;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return internal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return failed;
    }
    return usage;
}
