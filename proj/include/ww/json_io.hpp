#pragma once

// JSON conversions for the library types.

#include <string>
#include <vector>

#include "json.hpp"
#include "ww/marking.hpp"
#include "ww/multireal.hpp"
#include "ww/tpoly.hpp"
#include "ww/welschinger.hpp"

namespace ww {

using json = nlohmann::ordered_json;

inline json to_json(const WittClassQ& w) {
    json res = json::object();
    for (const auto& [p, c] : w.residues()) res[std::to_string(p)] = json::array({c.a(), c.b()});
    return json{{"text", w.to_string()}, {"sig", w.signature()}, {"dyadic", w.dyadic()}, {"residues", res}};
}

inline WittClassQ wittq_from_json(const json& j) {
    if (j.is_number_integer()) return WittClassQ(j.get<i64>());
    std::map<i64, WFpClass> res;
    for (const auto& [p, c] : j.at("residues").items()) {
        i64 prime = std::stoll(p);
        res.emplace(prime, WFpClass(prime, c.at(0).get<int>(), c.at(1).get<int>()));
    }
    return WittClassQ::from_coordinates(j.at("sig").get<i64>(), j.at("dyadic").get<int>(), res);
}

inline json to_json(const TPoly& p) {
    json terms = json::array();
    for (const auto& [J, c] : p.coeffs()) {
        json vars = json::array();
        for (int j = 1; j <= p.num_vars(); ++j)
            if (J & bit(j)) vars.push_back(j);
        terms.push_back(json{{"t", vars}, {"c", c}});
    }
    return json{{"vars", p.num_vars()}, {"terms", terms}};
}

inline TPoly tpoly_from_json(const json& j) {
    const int s = j.at("vars").get<int>();
    TPoly out(s);
    for (const auto& term : j.at("terms")) {
        Mask J = 0;
        for (int v : term.at("t").get<std::vector<int>>()) J |= bit(v);
        out += TPoly::monomial(s, J, term.at("c").get<i64>());
    }
    return out;
}

inline json coeff_json(i64 c) { return c; }
inline json coeff_json(const WittClassQ& c) { return c.is_integer() ? json(c.signature()) : to_json(c); }

template <class R>
json to_json(const Invariant<R>& inv) {
    json coeffs = json::array();
    for (const auto& [i, c] : inv.coeffs()) coeffs.push_back(json{{"i", i}, {"c", coeff_json(c)}});
    return json{{"degree", inv.degree().n}, {"basis", basis_name(inv.basis())}, {"coeffs", coeffs},
                {"text", inv.to_string()}};
}

inline WittInvariant invariant_from_json(const json& j) {
    WittInvariant out(MultiDegree(j.at("degree").get<std::vector<int>>()),
                      basis_from_name(j.at("basis").get<std::string>()));
    for (const auto& c : j.at("coeffs")) out.add(c.at("i").get<MultiIndex>(), wittq_from_json(c.at("c")));
    return out;
}

inline json to_json(const MultirealTriangle& T) {
    json cells = json::array();
    for (const auto& i : index_set(T.degree()))
        for (const auto& u : index_set(T.degree()))
            if (T.has(u, i)) cells.push_back(json{{"i", i}, {"u", u}, {"value", T.at(u, i).str()}});
    return json{{"degree", T.degree().n}, {"cells", cells}};
}

inline std::string surface_kind_name(SurfaceKind k) {
    switch (k) {
        case SurfaceKind::P2_blowup: return "p2-blowup";
        case SurfaceKind::P1xP1: return "p1xp1";
        case SurfaceKind::P3_aggregate: return "p3";
    }
    return "?";
}

inline SurfaceKind surface_kind_from_name(const std::string& s) {
    if (s == "p2-blowup") return SurfaceKind::P2_blowup;
    if (s == "p1xp1") return SurfaceKind::P1xP1;
    if (s == "p3") return SurfaceKind::P3_aggregate;
    throw std::invalid_argument("unknown surface kind: " + s);
}

inline json to_json(const SurfaceClass& c) {
    return json{{"kind", surface_kind_name(c.kind)}, {"n", c.n}, {"d", c.d}};
}

inline SurfaceClass surface_from_json(const json& j) {
    return SurfaceClass(j.value("n", std::vector<int>{}), j.at("d").get<std::vector<int>>(),
                        surface_kind_from_name(j.value("kind", std::string("p2-blowup"))));
}

inline json to_json(const WelschingerTable& t) {
    json values = json::array();
    for (const auto& [s, w] : t.values) values.push_back(json{{"s", s}, {"w", w}});
    return json{{"surface", to_json(t.surface)}, {"values", values}};
}

inline WelschingerTable table_from_json(const json& j) {
    WelschingerTable t{surface_from_json(j.at("surface")), {}};
    for (const auto& v : j.at("values")) t.values[v.at("s").get<MultiIndex>()] = v.at("w").get<i64>();
    t.validate();
    return t;
}

inline json to_json(const FloorDiagram& D) {
    json ed = json::array();
    for (const auto& e : D.edges()) ed.push_back(json::array({e.from, e.to, e.weight}));
    return json{{"ve", D.theta()}, {"ed", ed}, {"src", D.sources()}, {"snk", D.sinks()}};
}

inline FloorDiagram diagram_from_json(const FloorClass& c, const json& j) {
    std::vector<BoundedEdge> edges;
    for (const auto& e : j.at("ed")) edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
    return FloorDiagram(c, j.at("ve").get<std::vector<int>>(), edges, j.at("src").get<std::vector<int>>(),
                        j.at("snk").get<std::vector<int>>());
}

inline json to_json(const MarkedDiagram& md) {
    json j = to_json(md.diagram);
    j["phi"] = md.phi;
    return j;
}

}  // namespace ww
