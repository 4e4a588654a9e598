#pragma once

// Quadratic Gromov-Witten invariants of toric del Pezzo surfaces as sums of
// quadratic multiplicities over marked floor diagrams.

#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ww/floor_diagram.hpp"
#include "ww/invariant.hpp"
#include "ww/json_io.hpp"
#include "ww/marking.hpp"
#include "ww/tpoly.hpp"

namespace ww {

inline const char* fd_generator_version() { return "ww-fd-1"; }

struct EnumOptions {
    int jobs = 1;
    std::optional<std::string> cache_dir;  // falls back to WW_CACHE_DIR; no caching when neither is set

    std::optional<std::filesystem::path> resolved_cache_dir() const {
        if (cache_dir) return std::filesystem::path(*cache_dir);
        if (const char* env = std::getenv("WW_CACHE_DIR"); env && *env) return std::filesystem::path(env);
        return std::nullopt;
    }
};

// One equivalence class of s-marked diagrams.
struct MarkedEntry {
    MarkedDiagram marked;
    bool essential = false;
    TPoly mult;  // zero unless essential
};

namespace detail {

inline std::filesystem::path cache_file(const std::filesystem::path& dir, const FloorClass& c, int s) {
    return dir / ("fd_" + std::to_string(c.d0) + "_" + std::to_string(c.d1) + "_" + std::to_string(c.d2) + "_" +
                  std::to_string(c.d3) + "_s" + std::to_string(s) + ".jsonl");
}

inline json cache_header(const FloorClass& c, int s) {
    return json{{"class", c.as_array()}, {"s", s}, {"gen_version", fd_generator_version()}};
}

using EntryVisitor = std::function<void(MarkedEntry&&)>;

// Streams every class to the visitor in a fixed order.  Tasks (a diagram and a
// first-label choice) run in parallel in batches; each batch is delivered in
// task order from the calling thread.
inline void generate(const FloorClass& c, int s, int jobs, const EntryVisitor& visit) {
    const std::vector<FloorDiagram> diagrams = enumerate_diagrams(c);
    std::vector<MarkingGenerator> gens;
    gens.reserve(diagrams.size());
    for (const auto& D : diagrams) gens.emplace_back(D, s);

    struct Task {
        size_t diagram;
        MarkingGenerator::Step first;
    };
    std::vector<Task> tasks;
    for (size_t d = 0; d < diagrams.size(); ++d)
        for (auto& st : gens[d].first_steps()) tasks.push_back({d, std::move(st)});

    const size_t workers = static_cast<size_t>(std::max(1, jobs));
    const size_t batch = std::max<size_t>(1, 4 * workers);
    for (size_t lo = 0; lo < tasks.size(); lo += batch) {
        const size_t hi = std::min(tasks.size(), lo + batch);
        std::vector<std::vector<MarkedEntry>> results(hi - lo);
        std::atomic<size_t> next{lo};
        std::exception_ptr failure;
        std::mutex failure_lock;
        auto worker = [&] {
            try {
                for (size_t t; (t = next.fetch_add(1)) < hi;) {
                    const Task& task = tasks[t];
                    const FloorDiagram& D = diagrams[task.diagram];
                    gens[task.diagram].run(
                        [&](const std::vector<int>& phi) {
                            MarkedEntry e;
                            e.marked = MarkedDiagram{D, s, phi};
                            MarkingPartition P = partition_marking(e.marked);
                            e.essential = is_essential(e.marked, P);
                            e.mult = e.essential ? multiplicity(e.marked, P) : TPoly(s);
                            results[t - lo].push_back(std::move(e));
                        },
                        &task.first);
                }
            } catch (...) {
                std::lock_guard<std::mutex> g(failure_lock);
                if (!failure) failure = std::current_exception();
                next = hi;
            }
        };
        const size_t n_workers = std::min(workers, hi - lo);
        if (n_workers == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (size_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        if (failure) std::rethrow_exception(failure);
        for (auto& r : results)
            for (auto& e : r) visit(std::move(e));
    }
}

inline json cache_line(const MarkedEntry& e) {
    json j = to_json(e.marked);
    j["mult"] = e.essential ? to_json(e.mult) : json(nullptr);
    return j;
}

inline MarkedEntry entry_from_cache_line(const FloorClass& c, int s, const json& j) {
    MarkedEntry e;
    e.marked = MarkedDiagram{diagram_from_json(c, j), s, j.at("phi").get<std::vector<int>>()};
    e.essential = !j.at("mult").is_null();
    e.mult = e.essential ? tpoly_from_json(j.at("mult")) : TPoly(s);
    return e;
}

// Replays a cache file; returns false (without calling the visitor) when the
// header does not match.
inline bool replay_cache(const std::filesystem::path& file, const FloorClass& c, int s, const EntryVisitor& visit) {
    std::ifstream in(file);
    if (!in) return false;
    std::string line;
    if (!std::getline(in, line)) return false;
    try {
        if (json::parse(line) != cache_header(c, s)) return false;
    } catch (const json::exception&) {
        return false;
    }
    while (std::getline(in, line))
        if (!line.empty()) visit(entry_from_cache_line(c, s, json::parse(line)));
    return true;
}

}  // namespace detail

// Visits all equivalence classes of s-marked diagrams of the class, essential or not.
inline void visit_marked(const FloorClass& c, int s, const EnumOptions& opt, const detail::EntryVisitor& visit) {
    if (s < 0 || 2 * s > c.elements()) throw std::invalid_argument("marking needs 0 <= 2s <= n");
    const auto dir = opt.resolved_cache_dir();
    if (!dir) {
        detail::generate(c, s, opt.jobs, visit);
        return;
    }
    const auto file = detail::cache_file(*dir, c, s);
    if (detail::replay_cache(file, c, s, visit)) return;
    std::filesystem::create_directories(file.parent_path());
    auto tmp = file;
    tmp += ".tmp." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
        out << detail::cache_header(c, s).dump() << "\n";
        detail::generate(c, s, opt.jobs, [&](MarkedEntry&& e) {
            out << detail::cache_line(e).dump() << "\n";
            visit(std::move(e));
        });
        if (!out) throw std::runtime_error("failed writing cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, file);
}

inline std::vector<MarkedEntry> enumerate_all_marked(const FloorClass& c, int s, const EnumOptions& opt = {}) {
    std::vector<MarkedEntry> out;
    visit_marked(c, s, opt, [&](MarkedEntry&& e) { out.push_back(std::move(e)); });
    return out;
}

inline std::vector<MarkedEntry> enumerate_marked(const FloorClass& c, int s, const EnumOptions& opt = {}) {
    std::vector<MarkedEntry> out;
    visit_marked(c, s, opt, [&](MarkedEntry&& e) {
        if (e.essential) out.push_back(std::move(e));
    });
    return out;
}

struct QuadInvariantResult {
    FloorClass cls;
    int s = 0;
    TPoly value;
    std::vector<MarkedEntry> ledger;  // essential classes with their multiplicities
};

// Without a ledger only the value is kept, which bounds memory for large classes.
inline QuadInvariantResult quad_invariant(const FloorClass& c, int s, const EnumOptions& opt = {},
                                          bool keep_ledger = true) {
    QuadInvariantResult r{c, s, TPoly(s), {}};
    visit_marked(c, s, opt, [&](MarkedEntry&& e) {
        if (!e.essential) return;
        r.value += e.mult;
        if (keep_ledger) r.ledger.push_back(std::move(e));
    });
    return r;
}

struct AsymmetricSum : std::logic_error {
    using std::logic_error::logic_error;
};

// Sum a_i beta_i with a_i the coefficient of t_{1..i}; requires s = m.
inline IntInvariant beta_extract(const QuadInvariantResult& r) {
    const int n = r.cls.elements();
    if (r.s != n / 2) throw std::invalid_argument("beta extraction needs the maximal number of pairs");
    if (!r.value.is_symmetric()) throw AsymmetricSum("asymmetric sum");
    IntInvariant out(MultiDegree{n});
    for (int i = 0; i <= r.s; ++i) out.set({i}, r.value.coeff(i == 0 ? 0 : (Mask{1} << i) - 1));
    return out;
}

// Complex count: sum over 0-marked diagrams of the product of squared edge weights.
inline i64 classical_count(const FloorClass& c, const EnumOptions& opt = {}) {
    i64 total = 0;
    visit_marked(c, 0, opt, [&](MarkedEntry&& e) {
        i64 w = 1;
        for (const auto& edge : e.marked.diagram.edges()) w = checked_mul(w, checked_mul(edge.weight, edge.weight));
        total = checked_add(total, w);
    });
    return total;
}

inline i64 welschinger_via_fd(const QuadInvariantResult& r) {
    return r.value.eval_signs(std::vector<int>(static_cast<size_t>(r.s), -1));
}

inline i64 welschinger_via_fd(const FloorClass& c, int s, const EnumOptions& opt = {}) {
    return welschinger_via_fd(quad_invariant(c, s, opt));
}

inline json to_json(const QuadInvariantResult& r) {
    json ledger = json::array();
    for (const auto& e : r.ledger) {
        json j = to_json(e.marked);
        j["mult"] = to_json(e.mult);
        ledger.push_back(j);
    }
    return json{{"class", r.cls.as_array()}, {"s", r.s}, {"value", to_json(r.value)}, {"ledger", ledger}};
}

}  // namespace ww
