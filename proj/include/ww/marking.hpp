#pragma once

// s-markings of floor diagrams: generation up to equivalence, the twin-tree /
// V / C partition, and quadratic multiplicities.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ww/floor_diagram.hpp"
#include "ww/tpoly.hpp"

namespace ww {

struct MarkedDiagram {
    FloorDiagram diagram;
    int s = 0;
    std::vector<int> phi;  // per element, values in 1..s+r

    int slots() const { return diagram.num_elements() - s; }

    // Elements carrying label j, in index order.
    std::vector<int> fiber(int j) const {
        std::vector<int> out;
        for (size_t x = 0; x < phi.size(); ++x)
            if (phi[x] == j) out.push_back(static_cast<int>(x));
        return out;
    }

    std::string violation() const {
        if (auto v = diagram.violation(); !v.empty()) return v;
        const int n = diagram.num_elements();
        if (static_cast<int>(phi.size()) != n) return "marking has the wrong length";
        if (s < 0 || 2 * s > n) return "invalid number of pairs";
        std::vector<int> count(static_cast<size_t>(slots() + 1), 0);
        for (int j : phi) {
            if (j < 1 || j > slots()) return "label out of range";
            ++count[static_cast<size_t>(j)];
        }
        for (int j = 1; j <= slots(); ++j)
            if (count[static_cast<size_t>(j)] != (j <= s ? 2 : 1)) return "wrong fiber size";
        for (int x = 0; x < n; ++x)
            for (int y : diagram.upper_covers(x))
                if (phi[static_cast<size_t>(x)] > phi[static_cast<size_t>(y)]) return "marking is not monotone";
        return {};
    }
};

struct TwinTree {
    Mask labels = 0;  // pair labels j in T
    int root = 0;     // twin root label
    int root_weight = 1;
    int sinks = 0;    // number of twin sinks
    int sources = 0;  // number of twin sources
    std::vector<int> edge_labels;  // twin edges (labels whose fiber is two bounded edges)

    int omega_infinity() const { return root_weight + sinks + sources; }
};

struct MarkingPartition {
    Mask V = 0, C = 0;
    std::map<int, int> v_weight;  // j in V -> weight of the edge in P_j
    std::vector<TwinTree> twins;

    Mask twin_labels() const {
        Mask m = 0;
        for (const auto& t : twins) m |= t.labels;
        return m;
    }
};

namespace detail {

// Elements of the branch hanging from vertex v through element x.
inline std::vector<int> branch_elements(const FloorDiagram& D, int v, int x) {
    std::vector<int> out;
    std::vector<std::pair<int, int>> stack{{x, v}};  // (element, element it was reached from)
    while (!stack.empty()) {
        auto [y, from] = stack.back();
        stack.pop_back();
        out.push_back(y);
        std::vector<int> nbrs = D.lower_covers(y);
        nbrs.insert(nbrs.end(), D.upper_covers(y).begin(), D.upper_covers(y).end());
        for (int z : nbrs)
            if (z != from) stack.emplace_back(z, y);
    }
    return out;
}

}  // namespace detail

inline MarkingPartition partition_marking(const MarkedDiagram& md) {
    const FloorDiagram& D = md.diagram;
    MarkingPartition P;
    canon::Rooted R(D, &md.phi);
    for (int v = 0; v < D.num_vertices(); ++v) {
        std::vector<std::pair<canon::Code, int>> branches;
        for (int x : R.children(v, -1)) branches.emplace_back(R.branch(v, x), x);
        std::sort(branches.begin(), branches.end());
        for (size_t i = 0; i + 1 < branches.size(); ++i) {
            if (branches[i].first != branches[i + 1].first) continue;
            const int x = branches[i].second;
            TwinTree T;
            T.root = md.phi[static_cast<size_t>(x)];
            T.root_weight = D.weight(x);
            for (int y : detail::branch_elements(D, v, x)) {
                const int j = md.phi[static_cast<size_t>(y)];
                if (j > md.s) throw std::logic_error("twin tree contains an unpaired label");
                T.labels |= bit(j);
                switch (D.kind(y)) {
                    case ElementKind::sink: ++T.sinks; break;
                    case ElementKind::source: ++T.sources; break;
                    case ElementKind::edge: T.edge_labels.push_back(j); break;
                    default: break;
                }
            }
            std::sort(T.edge_labels.begin(), T.edge_labels.end());
            P.twins.push_back(T);
            ++i;  // labels occur at most twice, so equal branches come in pairs
        }
    }
    const Mask twin = P.twin_labels();
    for (int j = 1; j <= md.s; ++j) {
        if (twin & bit(j)) continue;
        auto f = md.fiber(j);
        if (D.covers(f[0], f[1]) || D.covers(f[1], f[0])) {
            P.V |= bit(j);
            P.v_weight[j] = D.kind(f[0]) == ElementKind::vertex ? D.weight(f[1]) : D.weight(f[0]);
        } else {
            P.C |= bit(j);
        }
    }
    return P;
}

inline bool is_essential(const MarkedDiagram& md, const MarkingPartition& P) {
    const Mask twin = P.twin_labels();
    const FloorDiagram& D = md.diagram;
    for (size_t i = 0; i < D.edges().size(); ++i) {
        if (D.edges()[i].weight % 2) continue;
        const int j = md.phi[static_cast<size_t>(D.edge_element(static_cast<int>(i)))];
        if (j > md.s || !(twin & bit(j))) return false;
    }
    return true;
}

inline bool is_essential(const MarkedDiagram& md) { return is_essential(md, partition_marking(md)); }

// (t_T + (-1)^parity u_T) / 2
inline TPoly twin_factor(int num_vars, Mask labels, int parity) {
    TPoly sum = TPoly::t_set(num_vars, labels);
    TPoly u = TPoly::u_set(num_vars, labels);
    sum = parity % 2 ? sum - u : sum + u;
    return sum.halved();
}

inline TPoly multiplicity(const MarkedDiagram& md, const MarkingPartition& P) {
    if (!is_essential(md, P)) throw std::invalid_argument("multiplicity requires an essential marking");
    const int s = md.s;
    const FloorDiagram& D = md.diagram;
    TPoly mu = TPoly::t_set(s, P.C);
    for (size_t i = 0; i < D.edges().size(); ++i) {
        const int j = md.phi[static_cast<size_t>(D.edge_element(static_cast<int>(i)))];
        if (j <= s) mu = mu * TPoly::bracket(s, D.edges()[i].weight, j);
    }
    for (const auto& T : P.twins) mu = mu * twin_factor(s, T.labels, T.omega_infinity());
    return mu;
}

inline TPoly multiplicity(const MarkedDiagram& md) { return multiplicity(md, partition_marking(md)); }

// Generates the markings of one diagram, one representative per equivalence class.
class MarkingGenerator {
public:
    using Step = std::vector<int>;  // elements receiving the current label

    MarkingGenerator(const FloorDiagram& D, int s) : D_(D), s_(s), n_(D.num_elements()) {
        if (s < 0 || 2 * s > n_) throw std::invalid_argument("marking needs 0 <= 2s <= n");
        if (n_ > 63) throw std::domain_error("diagram too large for marking enumeration");
        prev_same_.assign(static_cast<size_t>(n_), -1);
        for (auto kind : {ElementKind::source, ElementKind::sink}) {
            std::map<int, int> last;
            for (int x = 0; x < n_; ++x) {
                if (D.kind(x) != kind) continue;
                int v = D.attached_vertex(x);
                if (auto it = last.find(v); it != last.end()) prev_same_[static_cast<size_t>(x)] = it->second;
                last[v] = x;
            }
        }
        compute_symmetries();
    }

    // Choices for the first label; each one roots a disjoint subtree of the search.
    std::vector<Step> first_steps() const { return steps(1, 0); }

    // Calls emit(phi) for each representative below the given first step
    // (or for all representatives when first is null).
    void run(const std::function<void(const std::vector<int>&)>& emit, const Step* first = nullptr) const {
        std::vector<int> phi(static_cast<size_t>(n_), 0);
        if (first) {
            uint64_t mask = 0;
            for (int x : *first) {
                phi[static_cast<size_t>(x)] = 1;
                mask |= uint64_t{1} << x;
            }
            recurse(2, mask, phi, emit);
        } else {
            recurse(1, 0, phi, emit);
        }
    }

    // Number of nontrivial vertex symmetries of the diagram.
    size_t symmetry_count() const { return symmetries_.size(); }

private:
    bool assigned(uint64_t mask, int x) const { return (mask >> x) & 1; }

    bool available(uint64_t mask, int x) const {
        if (assigned(mask, x)) return false;
        for (int y : D_.lower_covers(x))
            if (!assigned(mask, y)) return false;
        return true;
    }

    // Leaves at a vertex receive nondecreasing labels in index order.
    bool leaf_order_ok(uint64_t mask, int x, int partner) const {
        int p = prev_same_[static_cast<size_t>(x)];
        return p < 0 || assigned(mask, p) || p == partner;
    }

    std::vector<Step> steps(int label, uint64_t mask) const {
        std::vector<Step> out;
        if (label <= s_) {
            for (int x = 0; x < n_; ++x) {
                if (!available(mask, x)) continue;
                for (int y = x + 1; y < n_; ++y)
                    if (available(mask, y) && leaf_order_ok(mask, x, y) && leaf_order_ok(mask, y, x))
                        out.push_back({x, y});
                if (!leaf_order_ok(mask, x, -1)) continue;
                for (int y : D_.upper_covers(x)) {
                    if (assigned(mask, y)) continue;
                    bool ready = true;
                    for (int z : D_.lower_covers(y))
                        if (z != x && !assigned(mask, z)) ready = false;
                    if (ready && leaf_order_ok(mask, y, x)) out.push_back({std::min(x, y), std::max(x, y)});
                }
            }
        } else {
            for (int x = 0; x < n_; ++x)
                if (available(mask, x) && leaf_order_ok(mask, x, -1)) out.push_back({x});
        }
        return out;
    }

    void recurse(int label, uint64_t mask, std::vector<int>& phi,
                 const std::function<void(const std::vector<int>&)>& emit) const {
        if (label > n_ - s_) {
            if (is_orbit_minimal(phi)) emit(phi);
            return;
        }
        for (const auto& st : steps(label, mask)) {
            uint64_t next = mask;
            for (int x : st) {
                phi[static_cast<size_t>(x)] = label;
                next |= uint64_t{1} << x;
            }
            recurse(label + 1, next, phi, emit);
            for (int x : st) phi[static_cast<size_t>(x)] = 0;
        }
    }

    // Sort labels among the sources (sinks) at each vertex.
    void normalize_leaves(std::vector<int>& phi) const {
        for (const auto& group : leaf_groups_) {
            std::vector<int> labels;
            for (int x : group) labels.push_back(phi[static_cast<size_t>(x)]);
            std::sort(labels.begin(), labels.end());
            for (size_t i = 0; i < group.size(); ++i) phi[static_cast<size_t>(group[i])] = labels[i];
        }
    }

    bool is_orbit_minimal(const std::vector<int>& phi) const {
        std::vector<int> image(phi.size());
        for (const auto& psi : symmetries_) {
            for (size_t x = 0; x < phi.size(); ++x) image[static_cast<size_t>(psi[x])] = phi[x];
            normalize_leaves(image);
            if (image < phi) return false;
        }
        return true;
    }

    void compute_symmetries() {
        const int k = D_.num_vertices();
        std::vector<std::vector<int>> src_at(static_cast<size_t>(k)), snk_at(static_cast<size_t>(k));
        for (int x = 0; x < n_; ++x) {
            if (D_.kind(x) == ElementKind::source) src_at[static_cast<size_t>(D_.attached_vertex(x))].push_back(x);
            if (D_.kind(x) == ElementKind::sink) snk_at[static_cast<size_t>(D_.attached_vertex(x))].push_back(x);
        }
        for (int v = 0; v < k; ++v) {
            if (src_at[v].size() > 1) leaf_groups_.push_back(src_at[v]);
            if (snk_at[v].size() > 1) leaf_groups_.push_back(snk_at[v]);
        }
        std::map<std::pair<int, int>, std::pair<int, int>> edge_of;  // (from,to) -> (element, weight)
        for (size_t i = 0; i < D_.edges().size(); ++i) {
            const auto& e = D_.edges()[i];
            edge_of[{e.from, e.to}] = {D_.edge_element(static_cast<int>(i)), e.weight};
        }
        std::vector<int> pi(static_cast<size_t>(k));
        std::iota(pi.begin(), pi.end(), 0);
        do {
            bool ok = true, identity = true;
            for (int v = 0; v < k && ok; ++v) {
                identity = identity && pi[v] == v;
                ok = D_.theta()[v] == D_.theta()[pi[v]] && src_at[v].size() == src_at[pi[v]].size() &&
                     snk_at[v].size() == snk_at[pi[v]].size();
            }
            if (!ok || identity) continue;
            std::vector<int> psi(static_cast<size_t>(n_), -1);
            for (int v = 0; v < k; ++v) psi[static_cast<size_t>(v)] = pi[v];
            for (const auto& [ends, ew] : edge_of) {
                auto it = edge_of.find({pi[ends.first], pi[ends.second]});
                if (it == edge_of.end() || it->second.second != ew.second) {
                    ok = false;
                    break;
                }
                psi[static_cast<size_t>(ew.first)] = it->second.first;
            }
            if (!ok) continue;
            for (int v = 0; v < k; ++v) {
                for (size_t i = 0; i < src_at[v].size(); ++i)
                    psi[static_cast<size_t>(src_at[v][i])] = src_at[pi[v]][i];
                for (size_t i = 0; i < snk_at[v].size(); ++i)
                    psi[static_cast<size_t>(snk_at[v][i])] = snk_at[pi[v]][i];
            }
            symmetries_.push_back(psi);
        } while (std::next_permutation(pi.begin(), pi.end()));
    }

    const FloorDiagram& D_;
    int s_, n_;
    std::vector<int> prev_same_;
    std::vector<std::vector<int>> leaf_groups_;
    std::vector<std::vector<int>> symmetries_;  // element maps induced by nontrivial vertex symmetries
};

}  // namespace ww
