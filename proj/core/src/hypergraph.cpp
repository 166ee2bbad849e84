#include "gpack/hypergraph.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "gpack/errors.hpp"
#include "gpack/rng.hpp"

namespace gpack {

namespace {

uint64_t tuple_hash(std::span<const uint32_t> sorted) {
    uint64_t h = 0x243F6A8885A308D3ull;
    for (uint32_t v : sorted) h = mix64(h ^ (v + 0x9E3779B97F4A7C15ull));
    return h;
}

}  // namespace

UniformHypergraph::UniformHypergraph(uint32_t q, uint32_t r) : q_(q), r_(r) {
    if (r == 0) throw ArgumentError("uniformity must be positive");
    if (r > q) throw ArgumentError("uniformity exceeds vertex count");
}

void UniformHypergraph::add_edge(std::span<const uint32_t> vertices) {
    if (vertices.size() != r_)
        throw ArgumentError("hyperedge needs exactly " + std::to_string(r_) + " vertices");
    std::vector<uint32_t> sorted(vertices.begin(), vertices.end());
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] >= q_) throw ArgumentError("hyperedge vertex out of range");
        if (i && sorted[i] == sorted[i - 1])
            throw ArgumentError("hyperedge repeats vertex " + std::to_string(sorted[i]));
    }
    uint64_t h = tuple_hash(sorted);
    auto [lo, hi] = edge_lookup_.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
        auto other = edge(it->second);
        if (std::equal(other.begin(), other.end(), sorted.begin(), sorted.end()))
            throw ArgumentError("duplicate hyperedge");
    }
    edge_lookup_.emplace(h, static_cast<uint32_t>(edge_count()));
    verts_.insert(verts_.end(), sorted.begin(), sorted.end());
}

std::string UniformHypergraph::serialize() const {
    std::ostringstream out;
    out << q_ << ' ' << r_ << '\n';
    for (size_t e = 0; e < edge_count(); ++e) {
        auto ed = edge(e);
        for (size_t i = 0; i < ed.size(); ++i) out << (i ? " " : "") << ed[i];
        out << '\n';
    }
    return out.str();
}

UniformHypergraph UniformHypergraph::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    long long q = -1, r = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream head(line);
        if (!(head >> q >> r) || q < 0 || r <= 0)
            throw ParseError("expected header \"q r\"", line_no);
        break;
    }
    if (q < 0) throw ParseError("missing header \"q r\"");
    UniformHypergraph L(static_cast<uint32_t>(q), static_cast<uint32_t>(r));
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::vector<uint32_t> vs;
        long long v;
        while (row >> v) {
            if (v < 0) throw ParseError("negative vertex id", line_no);
            vs.push_back(static_cast<uint32_t>(v));
        }
        try {
            L.add_edge(vs);
        } catch (const ArgumentError& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    return L;
}

UniformHypergraph complete_uniform_hypergraph(uint32_t q, uint32_t r) {
    UniformHypergraph L(q, r);
    std::vector<uint32_t> pick(r);
    for (uint32_t i = 0; i < r; ++i) pick[i] = i;
    while (true) {
        L.add_edge(pick);
        // next lexicographic combination
        size_t i = r;
        while (i > 0 && pick[i - 1] == q - r + (i - 1)) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
    }
    return L;
}

namespace {

std::unordered_map<uint64_t, uint64_t> codegree_table(const UniformHypergraph& L) {
    std::unordered_map<uint64_t, uint64_t> codeg;
    for (size_t e = 0; e < L.edge_count(); ++e) {
        auto ed = L.edge(e);
        for (size_t a = 0; a < ed.size(); ++a)
            for (size_t b = a + 1; b < ed.size(); ++b)
                ++codeg[(static_cast<uint64_t>(ed[a]) << 32) | ed[b]];
    }
    return codeg;
}

}  // namespace

DegreeProfile degree_profile(const UniformHypergraph& L) {
    DegreeProfile p;
    if (L.order() == 0) return p;
    std::vector<uint64_t> deg(L.order(), 0);
    for (size_t e = 0; e < L.edge_count(); ++e)
        for (uint32_t v : L.edge(e)) ++deg[v];
    p.d_min = *std::min_element(deg.begin(), deg.end());
    p.d_max = *std::max_element(deg.begin(), deg.end());
    for (const auto& [key, c] : codegree_table(L)) {
        (void)key;
        p.max_codegree = std::max(p.max_codegree, c);
    }
    p.suggested_d = static_cast<double>(L.uniformity()) *
                    static_cast<double>(L.edge_count()) / static_cast<double>(L.order());
    return p;
}

PippengerVerdict check_pippenger_conditions(const UniformHypergraph& L, double mu,
                                            double d) {
    if (!(mu > 0)) throw ArgumentError("mu must be positive");
    PippengerVerdict v;
    std::vector<uint64_t> deg(L.order(), 0);
    for (size_t e = 0; e < L.edge_count(); ++e)
        for (uint32_t x : L.edge(e)) ++deg[x];
    for (uint32_t x = 0; x < L.order(); ++x) {
        double dx = static_cast<double>(deg[x]);
        if (!(dx > (1 - mu) * d) || !(dx < (1 + mu) * d)) {
            v.ok = false;
            v.message = "vertex " + std::to_string(x) + " has degree " +
                        std::to_string(deg[x]) + " outside ((1-mu)d, (1+mu)d)";
            return v;
        }
    }
    for (const auto& [key, c] : codegree_table(L)) {
        if (!(static_cast<double>(c) < mu * d)) {
            uint32_t x = static_cast<uint32_t>(key >> 32);
            uint32_t y = static_cast<uint32_t>(key & 0xFFFFFFFFu);
            v.ok = false;
            v.message = "pair (" + std::to_string(x) + "," + std::to_string(y) +
                        ") has codegree " + std::to_string(c) + " >= mu*d";
            return v;
        }
    }
    return v;
}

HyperMatching nibble_matching(const UniformHypergraph& L, double beta,
                              double bite_fraction, uint64_t seed, size_t max_rounds) {
    Rng rng(mix_seed(seed, Stream::Nibble));
    HyperMatching matching;
    if (L.edge_count() == 0) return matching;
    uint32_t q = L.order(), r = L.uniformity();
    std::vector<uint8_t> covered(q, 0);
    size_t uncovered = q;
    std::vector<uint32_t> alive(L.edge_count());
    for (size_t e = 0; e < alive.size(); ++e) alive[e] = static_cast<uint32_t>(e);

    double stop_at = beta * static_cast<double>(q) / 2.0;
    for (size_t round = 0; round < max_rounds; ++round) {
        if (alive.empty() || static_cast<double>(uncovered) <= stop_at) break;
        double avg_deg = static_cast<double>(r) * static_cast<double>(alive.size()) /
                         static_cast<double>(uncovered);
        double p = avg_deg > 0 ? std::min(1.0, bite_fraction / avg_deg) : 1.0;
        std::vector<uint32_t> sampled;
        for (uint32_t e : alive)
            if (rng.bernoulli(p)) sampled.push_back(e);
        // Keep the pairwise-disjoint sampled ones, first come first kept.
        for (uint32_t e : sampled) {
            auto ed = L.edge(e);
            bool free = true;
            for (uint32_t x : ed)
                if (covered[x]) {
                    free = false;
                    break;
                }
            if (!free) continue;
            matching.edge_ids.push_back(e);
            for (uint32_t x : ed) {
                covered[x] = 1;
                --uncovered;
            }
        }
        std::vector<uint32_t> next;
        next.reserve(alive.size());
        for (uint32_t e : alive) {
            auto ed = L.edge(e);
            bool free = true;
            for (uint32_t x : ed)
                if (covered[x]) {
                    free = false;
                    break;
                }
            if (free) next.push_back(e);
        }
        alive = std::move(next);
    }
    // Greedy sweep: the result is maximal whatever the rounds did.
    rng.shuffle(alive);
    for (uint32_t e : alive) {
        auto ed = L.edge(e);
        bool free = true;
        for (uint32_t x : ed)
            if (covered[x]) {
                free = false;
                break;
            }
        if (!free) continue;
        matching.edge_ids.push_back(e);
        for (uint32_t x : ed) {
            covered[x] = 1;
            --uncovered;
        }
    }
    return matching;
}

HyperMatching greedy_matching(const UniformHypergraph& L, uint64_t seed) {
    Rng rng(mix_seed(seed, Stream::GreedyMatching));
    std::vector<uint32_t> order(L.edge_count());
    for (size_t e = 0; e < order.size(); ++e) order[e] = static_cast<uint32_t>(e);
    rng.shuffle(order);
    std::vector<uint8_t> covered(L.order(), 0);
    HyperMatching matching;
    for (uint32_t e : order) {
        auto ed = L.edge(e);
        bool free = true;
        for (uint32_t x : ed)
            if (covered[x]) {
                free = false;
                break;
            }
        if (!free) continue;
        matching.edge_ids.push_back(e);
        for (uint32_t x : ed) covered[x] = 1;
    }
    return matching;
}

MatchingVerdict verify_matching(const UniformHypergraph& L, const HyperMatching& m) {
    MatchingVerdict v;
    std::vector<uint8_t> covered(L.order(), 0);
    for (uint32_t e : m.edge_ids) {
        if (e >= L.edge_count()) {
            v.ok = false;
            v.message = "matching names hyperedge " + std::to_string(e) +
                        " outside the hypergraph";
            return v;
        }
        for (uint32_t x : L.edge(e)) {
            if (covered[x]) {
                v.ok = false;
                v.message = "matching reuses vertex " + std::to_string(x);
                return v;
            }
            covered[x] = 1;
        }
    }
    return v;
}

}  // namespace gpack
