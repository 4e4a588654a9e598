#pragma once

// Floor diagrams of class (d0, d1, d2, d3): weighted oriented trees with a
// {0,1}-labelling of the vertices, together with their canonical forms.

#include <algorithm>
#include <array>
#include <functional>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ww {

struct FloorClass {
    int d0 = 1, d1 = 0, d2 = 0, d3 = 0;

    int vertices() const { return d0 - d1; }
    int sources() const { return d0 - d2 - d3; }
    int sinks() const { return d1; }
    int theta_ones() const { return d3; }
    // number of vertices where theta + div equals 1
    int slope_ones() const { return d0 - d1 - d2; }
    int elements() const { return 3 * d0 - d1 - d2 - d3 - 1; }
    int max_pairs() const { return elements() / 2; }

    std::array<int, 4> as_array() const { return {d0, d1, d2, d3}; }
    std::string to_string() const {
        return std::to_string(d0) + "," + std::to_string(d1) + "," + std::to_string(d2) + "," + std::to_string(d3);
    }
    friend bool operator==(const FloorClass&, const FloorClass&) = default;
};

struct ClassOutsideDomain : std::domain_error {
    using std::domain_error::domain_error;
};

inline FloorClass normalize_class(std::array<int, 4> d) {
    for (int x : d)
        if (x < 0) throw std::invalid_argument("class entries must be nonnegative");
    std::sort(d.begin() + 1, d.end(), std::greater<>());
    FloorClass c{d[0], d[1], d[2], d[3]};
    if (c.d0 <= c.d1 || c.d0 - c.d1 - c.d2 < 0)
        throw ClassOutsideDomain("class outside floor-diagram domain: " + c.to_string());
    return c;
}

struct BoundedEdge {
    int from = 0, to = 0;
    int weight = 1;
    friend bool operator==(const BoundedEdge&, const BoundedEdge&) = default;
    friend auto operator<=>(const BoundedEdge&, const BoundedEdge&) = default;
};

enum class ElementKind { vertex, edge, source, sink };

// Elements are numbered: vertices, then bounded edges, then sources, then sinks.
class FloorDiagram {
public:
    FloorDiagram() = default;
    FloorDiagram(FloorClass cls, std::vector<int> theta, std::vector<BoundedEdge> edges, std::vector<int> sources,
                 std::vector<int> sinks)
        : cls_(cls), theta_(std::move(theta)), edges_(std::move(edges)), src_(std::move(sources)), snk_(std::move(sinks)) {
        build_order();
    }

    const FloorClass& floor_class() const { return cls_; }
    const std::vector<int>& theta() const { return theta_; }
    const std::vector<BoundedEdge>& edges() const { return edges_; }
    const std::vector<int>& sources() const { return src_; }
    const std::vector<int>& sinks() const { return snk_; }

    int num_vertices() const { return static_cast<int>(theta_.size()); }
    int num_elements() const { return num_vertices() + static_cast<int>(edges_.size() + src_.size() + snk_.size()); }

    ElementKind kind(int x) const {
        int V = num_vertices(), E = static_cast<int>(edges_.size()), S = static_cast<int>(src_.size());
        if (x < V) return ElementKind::vertex;
        if (x < V + E) return ElementKind::edge;
        if (x < V + E + S) return ElementKind::source;
        return ElementKind::sink;
    }
    int edge_index(int x) const { return x - num_vertices(); }
    int source_element(int i) const { return num_vertices() + static_cast<int>(edges_.size()) + i; }
    int sink_element(int i) const { return num_vertices() + static_cast<int>(edges_.size() + src_.size()) + i; }
    int edge_element(int i) const { return num_vertices() + i; }

    // Weight of an edge element (sources and sinks have weight 1).
    int weight(int x) const {
        switch (kind(x)) {
            case ElementKind::edge: return edges_[static_cast<size_t>(edge_index(x))].weight;
            case ElementKind::source:
            case ElementKind::sink: return 1;
            default: return 0;
        }
    }
    // The vertex an infinite edge is attached to.
    int attached_vertex(int x) const {
        if (kind(x) == ElementKind::source) return src_[static_cast<size_t>(x - source_element(0))];
        if (kind(x) == ElementKind::sink) return snk_[static_cast<size_t>(x - sink_element(0))];
        throw std::invalid_argument("not an infinite edge");
    }

    // Direct predecessors / successors in the path order.
    const std::vector<int>& lower_covers(int x) const { return order_->lower[static_cast<size_t>(x)]; }
    const std::vector<int>& upper_covers(int x) const { return order_->upper[static_cast<size_t>(x)]; }
    bool covers(int lo, int hi) const {
        const auto& l = lower_covers(hi);
        return std::find(l.begin(), l.end(), lo) != l.end();
    }
    bool less(int a, int b) const { return a != b && order_->below[static_cast<size_t>(b)][static_cast<size_t>(a)]; }
    bool comparable(int a, int b) const { return less(a, b) || less(b, a); }

    int divergence(int v) const {
        int d = 0;
        for (int s : src_) d += s == v;
        for (int s : snk_) d -= s == v;
        for (const auto& e : edges_) {
            if (e.to == v) d += e.weight;
            if (e.from == v) d -= e.weight;
        }
        return d;
    }

    // Checks the defining conditions of a floor diagram of its class.
    std::string violation() const {
        const FloorClass& c = cls_;
        const int V = num_vertices();
        if (V != c.vertices()) return "wrong number of vertices";
        if (static_cast<int>(edges_.size()) != V - 1) return "not a tree: edge count";
        if (static_cast<int>(src_.size()) != c.sources()) return "wrong number of sources";
        if (static_cast<int>(snk_.size()) != c.sinks()) return "wrong number of sinks";
        std::vector<int> parent(static_cast<size_t>(V));
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
        for (const auto& e : edges_) {
            if (e.weight < 1) return "nonpositive weight";
            int a = find(e.from), b = find(e.to);
            if (a == b) return "not a tree: cycle";
            parent[a] = b;
        }
        int theta1 = 0, slope1 = 0;
        for (int v = 0; v < V; ++v) {
            if (theta_[v] != 0 && theta_[v] != 1) return "theta not in {0,1}";
            theta1 += theta_[v];
            int r = theta_[v] + divergence(v);
            if (r != 0 && r != 1) return "theta + div not in {0,1}";
            slope1 += r;
        }
        if (theta1 != c.theta_ones()) return "wrong number of theta = 1";
        if (slope1 != c.slope_ones()) return "wrong number of theta + div = 1";
        return {};
    }

    friend bool operator==(const FloorDiagram& a, const FloorDiagram& b) {
        return a.cls_ == b.cls_ && a.theta_ == b.theta_ && a.edges_ == b.edges_ && a.src_ == b.src_ &&
               a.snk_ == b.snk_;
    }

private:
    struct Order {
        std::vector<std::vector<int>> lower, upper;
        std::vector<std::vector<bool>> below;  // below[x][y]: y < x
    };

    void build_order() {
        const int n = num_elements();
        auto order = std::make_shared<Order>();
        order->lower.assign(static_cast<size_t>(n), {});
        order->upper.assign(static_cast<size_t>(n), {});
        auto link = [&](int lo, int hi) {
            order->lower[static_cast<size_t>(hi)].push_back(lo);
            order->upper[static_cast<size_t>(lo)].push_back(hi);
        };
        for (size_t i = 0; i < edges_.size(); ++i) {
            int x = edge_element(static_cast<int>(i));
            link(edges_[i].from, x);
            link(x, edges_[i].to);
        }
        for (size_t i = 0; i < src_.size(); ++i) link(source_element(static_cast<int>(i)), src_[i]);
        for (size_t i = 0; i < snk_.size(); ++i) link(snk_[i], sink_element(static_cast<int>(i)));
        auto& below = order->below;
        below.assign(static_cast<size_t>(n), std::vector<bool>(static_cast<size_t>(n), false));
        for (int x = 0; x < n; ++x) {
            std::vector<int> stack(order->lower[static_cast<size_t>(x)]);
            while (!stack.empty()) {
                int y = stack.back();
                stack.pop_back();
                if (below[static_cast<size_t>(x)][static_cast<size_t>(y)]) continue;
                below[static_cast<size_t>(x)][static_cast<size_t>(y)] = true;
                for (int z : order->lower[static_cast<size_t>(y)]) stack.push_back(z);
            }
        }
        order_ = std::move(order);
    }

    FloorClass cls_;
    std::vector<int> theta_;
    std::vector<BoundedEdge> edges_;
    std::vector<int> src_, snk_;
    std::shared_ptr<const Order> order_;  // shared between copies
};

// Canonical codes.  A code is an integer sequence; labels (a marking) are
// optional and, when present, are part of the code.
namespace canon {

enum Token : int { open = -1, close = -2, src = -3, snk = -4, out_edge = -5, in_edge = -6 };

using Code = std::vector<int>;

struct Rooted {
    const FloorDiagram& D;
    const std::vector<int>* labels;
    std::vector<std::vector<int>> incident;  // bounded edge indices per vertex

    Rooted(const FloorDiagram& d, const std::vector<int>* l) : D(d), labels(l) {
        incident.assign(static_cast<size_t>(D.num_vertices()), {});
        for (size_t i = 0; i < D.edges().size(); ++i) {
            incident[static_cast<size_t>(D.edges()[i].from)].push_back(static_cast<int>(i));
            incident[static_cast<size_t>(D.edges()[i].to)].push_back(static_cast<int>(i));
        }
    }

    int label(int x) const { return labels ? (*labels)[static_cast<size_t>(x)] : 0; }

    // Branch hanging from vertex v through element x (an incident edge, source or sink).
    Code branch(int v, int x) const {
        Code c;
        switch (D.kind(x)) {
            case ElementKind::source:
                c = {src, label(x)};
                break;
            case ElementKind::sink:
                c = {snk, label(x)};
                break;
            case ElementKind::edge: {
                const auto& e = D.edges()[static_cast<size_t>(D.edge_index(x))];
                int other = e.from == v ? e.to : e.from;
                c = {e.from == v ? out_edge : in_edge, e.weight, label(x)};
                Code sub = vertex(other, D.edge_index(x));
                c.insert(c.end(), sub.begin(), sub.end());
                break;
            }
            default:
                throw std::logic_error("branch root must be an edge");
        }
        return c;
    }

    // Elements incident to v other than the parent edge.
    std::vector<int> children(int v, int parent_edge) const {
        std::vector<int> out;
        for (int e : incident[static_cast<size_t>(v)])
            if (e != parent_edge) out.push_back(D.edge_element(e));
        for (size_t i = 0; i < D.sources().size(); ++i)
            if (D.sources()[i] == v) out.push_back(D.source_element(static_cast<int>(i)));
        for (size_t i = 0; i < D.sinks().size(); ++i)
            if (D.sinks()[i] == v) out.push_back(D.sink_element(static_cast<int>(i)));
        return out;
    }

    Code vertex(int v, int parent_edge) const {
        std::vector<Code> parts;
        for (int x : children(v, parent_edge)) parts.push_back(branch(v, x));
        std::sort(parts.begin(), parts.end());
        Code c = {open, D.theta()[static_cast<size_t>(v)], label(v)};
        for (const auto& p : parts) c.insert(c.end(), p.begin(), p.end());
        c.push_back(close);
        return c;
    }

    // Elements in canonical traversal order from v.
    void order(int v, int parent_edge, std::vector<int>& out) const {
        out.push_back(v);
        std::vector<std::pair<Code, int>> parts;
        for (int x : children(v, parent_edge)) parts.emplace_back(branch(v, x), x);
        std::stable_sort(parts.begin(), parts.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [code, x] : parts) {
            out.push_back(x);
            if (D.kind(x) == ElementKind::edge) {
                const auto& e = D.edges()[static_cast<size_t>(D.edge_index(x))];
                order(e.from == v ? e.to : e.from, D.edge_index(x), out);
            }
        }
    }
};

inline Code code(const FloorDiagram& D, const std::vector<int>* labels = nullptr) {
    Rooted R(D, labels);
    Code best;
    for (int v = 0; v < D.num_vertices(); ++v) {
        Code c = R.vertex(v, -1);
        if (v == 0 || c < best) best = std::move(c);
    }
    return best;
}

}  // namespace canon

// Relabel a diagram so that its element numbering follows the canonical traversal.
inline FloorDiagram canonical_representative(const FloorDiagram& D) {
    canon::Rooted R(D, nullptr);
    int root = 0;
    canon::Code best;
    for (int v = 0; v < D.num_vertices(); ++v) {
        canon::Code c = R.vertex(v, -1);
        if (v == 0 || c < best) {
            best = std::move(c);
            root = v;
        }
    }
    std::vector<int> order;
    R.order(root, -1, order);
    std::vector<int> vmap(static_cast<size_t>(D.num_vertices()), -1);
    int next = 0;
    for (int x : order)
        if (D.kind(x) == ElementKind::vertex) vmap[static_cast<size_t>(x)] = next++;
    std::vector<int> theta(static_cast<size_t>(D.num_vertices()));
    for (int v = 0; v < D.num_vertices(); ++v) theta[static_cast<size_t>(vmap[v])] = D.theta()[static_cast<size_t>(v)];
    std::vector<BoundedEdge> edges;
    std::vector<int> src, snk;
    for (int x : order) {
        switch (D.kind(x)) {
            case ElementKind::edge: {
                auto e = D.edges()[static_cast<size_t>(D.edge_index(x))];
                edges.push_back({vmap[static_cast<size_t>(e.from)], vmap[static_cast<size_t>(e.to)], e.weight});
                break;
            }
            case ElementKind::source: src.push_back(vmap[static_cast<size_t>(D.attached_vertex(x))]); break;
            case ElementKind::sink: snk.push_back(vmap[static_cast<size_t>(D.attached_vertex(x))]); break;
            default: break;
        }
    }
    return FloorDiagram(D.floor_class(), theta, edges, src, snk);
}

namespace detail {

inline void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> ind(static_cast<size_t>(n), 0);
    if (k < 0 || k > n) return;
    std::fill(ind.end() - k, ind.end(), 1);
    do {
        f(ind);
    } while (std::next_permutation(ind.begin(), ind.end()));
}

inline void for_each_composition(int total, int parts, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> c(static_cast<size_t>(parts), 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == parts - 1) {
            c[static_cast<size_t>(i)] = left;
            f(c);
            return;
        }
        for (int x = 0; x <= left; ++x) {
            c[static_cast<size_t>(i)] = x;
            rec(i + 1, left - x);
        }
    };
    if (parts == 0) {
        if (total == 0) f(c);
        return;
    }
    rec(0, total);
}

// All labelled trees on k vertices, as undirected edge lists (Pruefer decoding).
inline std::vector<std::vector<std::pair<int, int>>> labelled_trees(int k) {
    std::vector<std::vector<std::pair<int, int>>> out;
    if (k == 1) {
        out.push_back({});
        return out;
    }
    if (k == 2) {
        out.push_back({{0, 1}});
        return out;
    }
    std::vector<int> seq(static_cast<size_t>(k - 2), 0);
    while (true) {
        std::vector<int> degree(static_cast<size_t>(k), 1);
        for (int x : seq) ++degree[static_cast<size_t>(x)];
        std::vector<std::pair<int, int>> edges;
        for (int x : seq) {
            for (int leaf = 0; leaf < k; ++leaf)
                if (degree[static_cast<size_t>(leaf)] == 1) {
                    edges.emplace_back(leaf, x);
                    --degree[static_cast<size_t>(leaf)];
                    --degree[static_cast<size_t>(x)];
                    break;
                }
        }
        int u = -1, w = -1;
        for (int v = 0; v < k; ++v)
            if (degree[static_cast<size_t>(v)] == 1) (u < 0 ? u : w) = v;
        edges.emplace_back(u, w);
        out.push_back(edges);
        int i = k - 3;
        while (i >= 0 && seq[static_cast<size_t>(i)] == k - 1) seq[static_cast<size_t>(i--)] = 0;
        if (i < 0) break;
        ++seq[static_cast<size_t>(i)];
    }
    return out;
}

}  // namespace detail

// All floor diagrams of the class up to isomorphism, in canonical form and
// sorted by canonical code.
inline std::vector<FloorDiagram> enumerate_diagrams(const FloorClass& c) {
    const int k = c.vertices();
    std::set<canon::Code> seen;
    std::vector<std::pair<canon::Code, FloorDiagram>> found;
    for (const auto& tree : detail::labelled_trees(k)) {
        // leaf-peeling order for solving edge weights from vertex balances
        std::vector<std::vector<int>> inc(static_cast<size_t>(k));
        for (size_t i = 0; i < tree.size(); ++i) {
            inc[static_cast<size_t>(tree[i].first)].push_back(static_cast<int>(i));
            inc[static_cast<size_t>(tree[i].second)].push_back(static_cast<int>(i));
        }
        for (unsigned orient = 0; orient < (1u << tree.size()); ++orient) {
            std::vector<BoundedEdge> edges;
            for (size_t i = 0; i < tree.size(); ++i) {
                auto [a, b] = tree[i];
                edges.push_back((orient >> i) & 1 ? BoundedEdge{b, a, 0} : BoundedEdge{a, b, 0});
            }
            detail::for_each_subset(k, c.theta_ones(), [&](const std::vector<int>& theta) {
                detail::for_each_subset(k, c.slope_ones(), [&](const std::vector<int>& slope) {
                    detail::for_each_composition(c.sources(), k, [&](const std::vector<int>& src) {
                        detail::for_each_composition(c.sinks(), k, [&](const std::vector<int>& snk) {
                            // balance(v) = incoming bounded weight - outgoing bounded weight
                            std::vector<int> balance(static_cast<size_t>(k));
                            for (int v = 0; v < k; ++v)
                                balance[v] = (slope[v] - theta[v]) - src[v] + snk[v];
                            std::vector<int> remaining(static_cast<size_t>(k));
                            for (int v = 0; v < k; ++v) remaining[v] = static_cast<int>(inc[v].size());
                            std::vector<bool> done(tree.size(), false);
                            auto es = edges;
                            std::vector<int> queue;
                            for (int v = 0; v < k; ++v)
                                if (remaining[v] == 1) queue.push_back(v);
                            size_t solved = 0;
                            while (!queue.empty()) {
                                int v = queue.back();
                                queue.pop_back();
                                if (remaining[v] != 1) continue;
                                int ei = -1;
                                for (int e : inc[v])
                                    if (!done[static_cast<size_t>(e)]) ei = e;
                                auto& e = es[static_cast<size_t>(ei)];
                                int w = e.to == v ? balance[v] : -balance[v];
                                if (w < 1) return;
                                e.weight = w;
                                done[static_cast<size_t>(ei)] = true;
                                ++solved;
                                int other = e.to == v ? e.from : e.to;
                                balance[other] += e.to == other ? -w : w;
                                remaining[v] = 0;
                                if (--remaining[other] == 1) queue.push_back(other);
                            }
                            if (solved != tree.size()) return;
                            std::vector<int> sources, sinks;
                            for (int v = 0; v < k; ++v) {
                                sources.insert(sources.end(), static_cast<size_t>(src[v]), v);
                                sinks.insert(sinks.end(), static_cast<size_t>(snk[v]), v);
                            }
                            FloorDiagram D(c, theta, es, sources, sinks);
                            if (!D.violation().empty()) return;
                            canon::Code code = canon::code(D);
                            if (seen.insert(code).second) found.emplace_back(code, canonical_representative(D));
                        });
                    });
                });
            });
        }
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<FloorDiagram> out;
    for (auto& [code, D] : found) {
        for (const auto& e : D.edges())
            if (e.weight > c.d0) throw std::logic_error("edge weight exceeds d0");
        out.push_back(std::move(D));
    }
    return out;
}

}  // namespace ww
