#include "gpack/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gpack/copies.hpp"
#include "gpack/errors.hpp"
#include "gpack/lp.hpp"
#include "gpack/rng.hpp"

namespace gpack {

namespace {

PackedCopy to_packed(const CopyIndex& idx, uint32_t c) {
    auto tuple = idx.copy_vertices(c);
    return PackedCopy{idx.pattern_id(c), std::vector<Vertex>(tuple.begin(), tuple.end())};
}

// Maximal packing by repeatedly drawing a uniformly random copy among
// those still edge-disjoint from the selection.
std::vector<uint32_t> greedy_over_index(const CopyIndex& idx, Rng& rng) {
    size_t m = idx.host().size();
    std::vector<uint8_t> edge_used(m, 0);
    std::vector<uint32_t> alive(idx.copy_count());
    std::iota(alive.begin(), alive.end(), 0);
    std::vector<uint32_t> chosen;
    while (!alive.empty()) {
        uint32_t pick = alive[rng.below(alive.size())];
        chosen.push_back(pick);
        for (size_t e : idx.copy_edges(pick)) edge_used[e] = 1;
        std::vector<uint32_t> next;
        next.reserve(alive.size());
        for (uint32_t c : alive) {
            bool free = true;
            for (size_t e : idx.copy_edges(c))
                if (edge_used[e]) {
                    free = false;
                    break;
                }
            if (free) next.push_back(c);
        }
        alive = std::move(next);
    }
    return chosen;
}

struct Search {
    const CopyIndex& idx;
    std::vector<uint32_t> order;                 // copy ids, largest first
    std::vector<std::vector<uint32_t>> edges_of; // per copy, host edge ids
    size_t min_edges;
    size_t budget;
    size_t lp_floor;

    std::vector<uint64_t> used;  // edge bitset
    size_t free_edges;
    std::vector<uint32_t> current;
    std::vector<uint32_t> best;
    size_t nodes = 0;
    bool aborted = false;
    bool proven = false;

    bool copy_free(uint32_t c) const {
        for (uint32_t e : edges_of[c])
            if (used[e >> 6] & (uint64_t(1) << (e & 63))) return false;
        return true;
    }

    void mark(uint32_t c, bool on) {
        for (uint32_t e : edges_of[c]) {
            if (on)
                used[e >> 6] |= uint64_t(1) << (e & 63);
            else
                used[e >> 6] &= ~(uint64_t(1) << (e & 63));
        }
        if (on)
            free_edges -= edges_of[c].size();
        else
            free_edges += edges_of[c].size();
    }

    void offer_current() {
        if (current.size() > best.size()) {
            best = current;
            if (best.size() >= lp_floor) proven = true;
        }
    }

    // Include/exclude branching over `order`; the exclude branch is
    // the loop continuation so recursion depth tracks only inclusions.
    void dive(size_t pos) {
        if (aborted || proven) return;
        if (++nodes > budget) {
            aborted = true;
            return;
        }
        while (true) {
            if (current.size() + free_edges / min_edges <= best.size()) return;
            while (pos < order.size() && !copy_free(order[pos])) ++pos;
            if (pos == order.size()) {
                offer_current();
                return;
            }
            uint32_t c = order[pos];
            mark(c, true);
            current.push_back(c);
            offer_current();
            dive(pos + 1);
            current.pop_back();
            mark(c, false);
            if (aborted || proven) return;
            ++pos;  // exclude c
        }
    }
};

}  // namespace

ExactResult exact_packing(const Graph& G, const Family& F, size_t budget, size_t cap) {
    auto host = std::make_shared<Graph>(G);
    auto index = std::make_shared<CopyIndex>(enumerate_unlabeled_copies(host, F, cap));
    if (index->capped())
        throw BudgetError("copy enumeration hit the cap of " + std::to_string(cap));
    ExactResult result;
    if (index->copy_count() == 0) return result;

    Search s{*index, {}, {}, F.min_edges(), budget, 0, {}, G.size(), {}, {}, 0, false, false};
    s.order.resize(index->copy_count());
    std::iota(s.order.begin(), s.order.end(), 0);
    std::stable_sort(s.order.begin(), s.order.end(), [&](uint32_t a, uint32_t b) {
        return index->pattern_of(a).size() > index->pattern_of(b).size();
    });
    s.edges_of.resize(index->copy_count());
    for (size_t c = 0; c < index->copy_count(); ++c)
        for (size_t e : index->copy_edges(c))
            s.edges_of[c].push_back(static_cast<uint32_t>(e));
    s.used.assign((G.size() + 63) / 64, 0);

    LpResult lp = solve_packing_lp(index, LpMode::Float);
    s.lp_floor = static_cast<size_t>(std::floor(lp.value_double + 1e-6));

    Rng rng(mix_seed(0x67706163u, Stream::GreedyPacking));  // fixed incumbent stream
    s.best = greedy_over_index(*index, rng);
    if (s.best.size() >= s.lp_floor) s.proven = true;

    if (!s.proven) s.dive(0);

    for (uint32_t c : s.best) result.packing.copies.push_back(to_packed(*index, c));
    result.nodes = s.nodes;
    result.status = (s.aborted && !s.proven) ? SearchStatus::LowerBound
                                             : SearchStatus::Optimal;
    return result;
}

IntegerPacking greedy_packing(const Graph& G, const Family& F, uint64_t seed, size_t cap) {
    auto host = std::make_shared<Graph>(G);
    auto index = std::make_shared<CopyIndex>(enumerate_unlabeled_copies(host, F, cap));
    if (index->capped())
        throw BudgetError("copy enumeration hit the cap of " + std::to_string(cap));
    Rng rng(mix_seed(seed, Stream::GreedyPacking));
    IntegerPacking p;
    for (uint32_t c : greedy_over_index(*index, rng))
        p.copies.push_back(to_packed(*index, c));
    return p;
}

PackingVerdict verify_integer_packing(const Graph& G, const Family& F,
                                      const IntegerPacking& p) {
    PackingVerdict v;
    std::vector<uint8_t> edge_used(G.size(), 0);
    for (size_t k = 0; k < p.copies.size(); ++k) {
        const PackedCopy& c = p.copies[k];
        if (c.pattern_id >= F.size()) {
            v.ok = false;
            v.message = "copy " + std::to_string(k) + " names pattern " +
                        std::to_string(c.pattern_id) + " outside the family";
            return v;
        }
        const Graph& pat = F.member(c.pattern_id);
        if (c.vertices.size() != pat.order()) {
            v.ok = false;
            v.message = "copy " + std::to_string(k) + " has " +
                        std::to_string(c.vertices.size()) + " vertices, pattern needs " +
                        std::to_string(pat.order());
            return v;
        }
        std::vector<Vertex> sorted = c.vertices;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            v.ok = false;
            v.message = "copy " + std::to_string(k) + " repeats a vertex";
            return v;
        }
        for (Vertex u : c.vertices)
            if (u >= G.order()) {
                v.ok = false;
                v.message = "copy " + std::to_string(k) + " uses vertex " +
                            std::to_string(u) + " outside the host";
                return v;
            }
        for (const Edge& pe : pat.edges()) {
            size_t e = G.edge_index(c.vertices[pe.u], c.vertices[pe.v]);
            if (e == SIZE_MAX) {
                v.ok = false;
                v.message = "copy " + std::to_string(k) + " maps pattern edge (" +
                            std::to_string(pe.u) + "," + std::to_string(pe.v) +
                            ") to a non-edge";
                return v;
            }
            if (edge_used[e]) {
                Edge he = G.edges()[e];
                v.ok = false;
                v.message = "copies share edge (" + std::to_string(he.u) + "," +
                            std::to_string(he.v) + ")";
                return v;
            }
            edge_used[e] = 1;
        }
    }
    return v;
}

std::string packing_to_text(const IntegerPacking& p) {
    std::ostringstream out;
    for (const PackedCopy& c : p.copies) {
        out << c.pattern_id << ':';
        for (Vertex v : c.vertices) out << ' ' << v;
        out << '\n';
    }
    return out.str();
}

IntegerPacking packing_from_text(const std::string& text) {
    IntegerPacking p;
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError("expected \"pattern_id: v1 v2 ...\"", line_no);
        PackedCopy c;
        try {
            c.pattern_id = static_cast<uint32_t>(std::stoul(line.substr(0, colon)));
        } catch (...) {
            throw ParseError("bad pattern id", line_no);
        }
        std::istringstream rest(line.substr(colon + 1));
        long long v;
        while (rest >> v) {
            if (v < 0) throw ParseError("negative vertex id", line_no);
            c.vertices.push_back(static_cast<Vertex>(v));
        }
        if (!rest.eof()) throw ParseError("bad vertex list", line_no);
        if (c.vertices.empty()) throw ParseError("empty copy", line_no);
        p.copies.push_back(std::move(c));
    }
    return p;
}

}  // namespace gpack
