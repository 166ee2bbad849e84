#include "gpack/copies.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "gpack/canonical.hpp"
#include "gpack/errors.hpp"

namespace gpack {

namespace {

// Search order over pattern vertices: grow a connected front, most
// constrained vertex first, so candidate sets shrink early.
struct SearchPlan {
    std::vector<Vertex> ord;                // position -> pattern vertex
    std::vector<size_t> pdeg;               // pattern degree at position
    std::vector<std::vector<size_t>> back;  // earlier positions adjacent in pattern
};

SearchPlan make_plan(const Graph& pattern) {
    Vertex k = pattern.order();
    SearchPlan plan;
    std::vector<bool> placed(k, false);
    std::vector<size_t> pos_of(k, 0);
    for (Vertex step = 0; step < k; ++step) {
        Vertex best = k;
        size_t best_conn = 0, best_deg = 0;
        for (Vertex v = 0; v < k; ++v) {
            if (placed[v]) continue;
            size_t conn = 0;
            for (Vertex w : pattern.neighbors(v))
                if (placed[w]) ++conn;
            size_t deg = pattern.degree(v);
            if (best == k || conn > best_conn ||
                (conn == best_conn && deg > best_deg)) {
                best = v;
                best_conn = conn;
                best_deg = deg;
            }
        }
        placed[best] = true;
        pos_of[best] = plan.ord.size();
        plan.ord.push_back(best);
        plan.pdeg.push_back(pattern.degree(best));
        std::vector<size_t> back;
        for (Vertex w : pattern.neighbors(best))
            if (w != best && placed[w]) back.push_back(pos_of[w]);
        std::sort(back.begin(), back.end());
        plan.back.push_back(std::move(back));
    }
    return plan;
}

// Visits every injective edge-preserving tuple; vertex_masks, when
// present, restricts the image of pattern vertex i to masks[i].
// visit returns false to abort the whole search (cap handling).
template <class Visit>
void enumerate_embeddings(const Graph& host, const Graph& pattern,
                          const std::vector<std::vector<uint64_t>>* vertex_masks,
                          Visit&& visit) {
    Vertex k = pattern.order();
    if (k == 0 || k > host.order()) return;
    SearchPlan plan = make_plan(pattern);
    size_t words = host.word_count();
    std::vector<uint64_t> full(words, ~uint64_t(0));
    if (host.order() & 63) full[words - 1] = (uint64_t(1) << (host.order() & 63)) - 1;
    std::vector<uint64_t> used(words, 0);
    std::vector<std::vector<uint64_t>> cand(k, std::vector<uint64_t>(words));
    std::vector<Vertex> tuple(k, 0);
    bool stop = false;

    auto rec = [&](auto&& self, Vertex d) -> void {
        if (stop) return;
        if (d == k) {
            if (!visit(tuple)) stop = true;
            return;
        }
        auto& c = cand[d];
        const std::vector<uint64_t>* base =
            vertex_masks ? &(*vertex_masks)[plan.ord[d]] : &full;
        for (size_t w = 0; w < words; ++w) c[w] = (*base)[w] & ~used[w];
        for (size_t b : plan.back[d]) {
            const auto& row = host.adjacency_bits(tuple[plan.ord[b]]);
            for (size_t w = 0; w < words; ++w) c[w] &= row[w];
        }
        for (size_t w = 0; w < words && !stop; ++w) {
            uint64_t bits = c[w];
            while (bits && !stop) {
                int bit = std::countr_zero(bits);
                bits &= bits - 1;
                Vertex v = static_cast<Vertex>((w << 6) + bit);
                if (host.degree(v) < plan.pdeg[d]) continue;
                tuple[plan.ord[d]] = v;
                used[w] |= uint64_t(1) << bit;
                self(self, d + 1);
                used[w] &= ~(uint64_t(1) << bit);
            }
        }
    };
    rec(rec, 0);
}

struct CopyAccumulator {
    std::vector<uint32_t> pattern_ids;
    std::vector<Vertex> vertices;
    std::vector<uint64_t> offsets{0};
    bool capped = false;
    size_t cap;

    explicit CopyAccumulator(size_t cap) : cap(cap) {}

    bool add(uint32_t pid, const std::vector<Vertex>& tuple) {
        if (pattern_ids.size() >= cap) {
            capped = true;
            return false;
        }
        pattern_ids.push_back(pid);
        vertices.insert(vertices.end(), tuple.begin(), tuple.end());
        offsets.push_back(vertices.size());
        return true;
    }

    // Canonical output order: by pattern, then tuple lexicographically.
    void sort_canonical() {
        size_t count = pattern_ids.size();
        std::vector<uint32_t> order(count);
        std::iota(order.begin(), order.end(), 0);
        auto tuple_of = [&](uint32_t c) {
            return std::span<const Vertex>(vertices.data() + offsets[c],
                                           offsets[c + 1] - offsets[c]);
        };
        std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
            if (pattern_ids[a] != pattern_ids[b]) return pattern_ids[a] < pattern_ids[b];
            auto ta = tuple_of(a), tb = tuple_of(b);
            return std::lexicographical_compare(ta.begin(), ta.end(), tb.begin(), tb.end());
        });
        std::vector<uint32_t> pids(count);
        std::vector<Vertex> verts;
        verts.reserve(vertices.size());
        std::vector<uint64_t> offs{0};
        offs.reserve(count + 1);
        for (size_t i = 0; i < count; ++i) {
            uint32_t c = order[i];
            pids[i] = pattern_ids[c];
            auto t = tuple_of(c);
            verts.insert(verts.end(), t.begin(), t.end());
            offs.push_back(verts.size());
        }
        pattern_ids = std::move(pids);
        vertices = std::move(verts);
        offsets = std::move(offs);
    }
};

bool tuple_is_canonical(const std::vector<Vertex>& tuple,
                        const std::vector<std::vector<Vertex>>& auts) {
    for (const auto& sigma : auts) {
        for (size_t i = 0; i < tuple.size(); ++i) {
            Vertex a = tuple[i], b = tuple[sigma[i]];
            if (a < b) break;
            if (a > b) return false;
        }
    }
    return true;
}

std::vector<std::vector<uint64_t>> class_masks(const Graph& host,
                                               const std::vector<std::vector<Vertex>>& classes) {
    size_t words = host.word_count();
    std::vector<uint64_t> seen(words, 0);
    std::vector<std::vector<uint64_t>> masks(classes.size(),
                                             std::vector<uint64_t>(words, 0));
    for (size_t i = 0; i < classes.size(); ++i) {
        for (Vertex v : classes[i]) {
            if (v >= host.order())
                throw ArgumentError("partite class vertex out of range");
            if (seen[v >> 6] & (uint64_t(1) << (v & 63)))
                throw ArgumentError("partite classes overlap");
            seen[v >> 6] |= uint64_t(1) << (v & 63);
            masks[i][v >> 6] |= uint64_t(1) << (v & 63);
        }
    }
    return masks;
}

}  // namespace

CopyIndex CopyIndex::from_parts(std::shared_ptr<const Graph> host,
                                std::vector<Graph> patterns, CopyKind kind,
                                std::vector<uint32_t> pattern_ids,
                                std::vector<Vertex> flat_vertices,
                                std::vector<uint64_t> offsets, bool capped) {
    CopyIndex idx;
    idx.host_ = std::move(host);
    idx.patterns_ = std::move(patterns);
    idx.kind_ = kind;
    idx.capped_ = capped;
    idx.pattern_ids_ = std::move(pattern_ids);
    idx.vertices_ = std::move(flat_vertices);
    idx.offsets_ = std::move(offsets);
    if (idx.offsets_.empty()) idx.offsets_.push_back(0);
    idx.build_edge_index();
    return idx;
}

void CopyIndex::build_edge_index() {
    size_t m = host_->size();
    per_edge_offsets_.assign(m + 1, 0);
    size_t count = copy_count();
    for (size_t c = 0; c < count; ++c) {
        auto tuple = copy_vertices(c);
        for (const Edge& pe : pattern_of(c).edges()) {
            size_t idx = host_->edge_index(tuple[pe.u], tuple[pe.v]);
            if (idx == SIZE_MAX) throw Error("copy uses a non-edge of the host");
            ++per_edge_offsets_[idx + 1];
        }
    }
    for (size_t e = 0; e < m; ++e) per_edge_offsets_[e + 1] += per_edge_offsets_[e];
    per_edge_copies_.assign(per_edge_offsets_[m], 0);
    std::vector<uint64_t> cursor(per_edge_offsets_.begin(), per_edge_offsets_.end() - 1);
    for (size_t c = 0; c < count; ++c) {
        auto tuple = copy_vertices(c);
        for (const Edge& pe : pattern_of(c).edges()) {
            size_t idx = host_->edge_index(tuple[pe.u], tuple[pe.v]);
            per_edge_copies_[cursor[idx]++] = static_cast<uint32_t>(c);
        }
    }
}

std::vector<size_t> CopyIndex::copy_edges(size_t c) const {
    auto tuple = copy_vertices(c);
    std::vector<size_t> out;
    out.reserve(pattern_of(c).size());
    for (const Edge& pe : pattern_of(c).edges())
        out.push_back(host_->edge_index(tuple[pe.u], tuple[pe.v]));
    return out;
}

std::span<const uint32_t> CopyIndex::copies_through_edge(Edge e) const {
    size_t idx = host_->edge_index(e.u, e.v);
    if (idx == SIZE_MAX) return {};
    return copies_through_edge(idx);
}

namespace {

CopyIndex enumerate_impl(std::shared_ptr<const Graph> host, std::vector<Graph> patterns,
                         bool unlabeled, size_t cap) {
    CopyAccumulator acc(cap);
    for (uint32_t pid = 0; pid < patterns.size(); ++pid) {
        std::vector<std::vector<Vertex>> auts;
        if (unlabeled) auts = automorphisms(patterns[pid]);
        enumerate_embeddings(*host, patterns[pid], nullptr,
                             [&](const std::vector<Vertex>& tuple) {
                                 if (unlabeled && !tuple_is_canonical(tuple, auts))
                                     return true;
                                 return acc.add(pid, tuple);
                             });
        if (acc.capped) break;
    }
    acc.sort_canonical();
    return CopyIndex::from_parts(std::move(host), std::move(patterns),
                                 unlabeled ? CopyKind::Unlabeled : CopyKind::Labeled,
                                 std::move(acc.pattern_ids), std::move(acc.vertices),
                                 std::move(acc.offsets), acc.capped);
}

}  // namespace

CopyIndex enumerate_unlabeled_copies(std::shared_ptr<const Graph> host, const Family& F,
                                     size_t cap) {
    return enumerate_impl(std::move(host), F.members(), true, cap);
}

CopyIndex enumerate_unlabeled_copies(std::shared_ptr<const Graph> host,
                                     const Graph& pattern, size_t cap) {
    return enumerate_impl(std::move(host), {pattern}, true, cap);
}

CopyIndex enumerate_labeled_copies(std::shared_ptr<const Graph> host, const Family& F,
                                   size_t cap) {
    return enumerate_impl(std::move(host), F.members(), false, cap);
}

CopyIndex enumerate_labeled_copies(std::shared_ptr<const Graph> host,
                                   const std::vector<Graph>& patterns, size_t cap) {
    return enumerate_impl(std::move(host), patterns, false, cap);
}

CopyIndex expand_to_labeled(const CopyIndex& unlabeled) {
    if (unlabeled.kind() != CopyKind::Unlabeled)
        throw ArgumentError("expand_to_labeled expects an unlabeled index");
    std::vector<std::vector<std::vector<Vertex>>> auts;
    for (const Graph& p : unlabeled.patterns()) auts.push_back(automorphisms(p));
    CopyAccumulator acc(SIZE_MAX);
    std::vector<Vertex> relabeled;
    for (size_t c = 0; c < unlabeled.copy_count(); ++c) {
        auto tuple = unlabeled.copy_vertices(c);
        for (const auto& sigma : auts[unlabeled.pattern_id(c)]) {
            relabeled.resize(tuple.size());
            for (size_t i = 0; i < tuple.size(); ++i) relabeled[i] = tuple[sigma[i]];
            acc.add(unlabeled.pattern_id(c), relabeled);
        }
    }
    acc.sort_canonical();
    return CopyIndex::from_parts(unlabeled.host_ptr(), unlabeled.patterns(),
                                 CopyKind::Labeled, std::move(acc.pattern_ids),
                                 std::move(acc.vertices), std::move(acc.offsets),
                                 unlabeled.capped());
}

CopyIndex enumerate_partite_copies(std::shared_ptr<const Graph> host, const Graph& pattern,
                                   const std::vector<std::vector<Vertex>>& classes,
                                   size_t cap) {
    if (classes.size() != pattern.order())
        throw ArgumentError("partite enumeration needs one class per pattern vertex");
    auto masks = class_masks(*host, classes);
    CopyAccumulator acc(cap);
    enumerate_embeddings(*host, pattern, &masks,
                         [&](const std::vector<Vertex>& tuple) { return acc.add(0, tuple); });
    acc.sort_canonical();
    return CopyIndex::from_parts(std::move(host), {pattern}, CopyKind::Partite,
                                 std::move(acc.pattern_ids), std::move(acc.vertices),
                                 std::move(acc.offsets), acc.capped);
}

void for_each_partite_copy(const Graph& host, const Graph& pattern,
                           const std::vector<std::vector<Vertex>>& classes,
                           const std::function<void(std::span<const Vertex>)>& fn) {
    if (classes.size() != pattern.order())
        throw ArgumentError("partite enumeration needs one class per pattern vertex");
    auto masks = class_masks(host, classes);
    enumerate_embeddings(host, pattern, &masks, [&](const std::vector<Vertex>& tuple) {
        fn(std::span<const Vertex>(tuple.data(), tuple.size()));
        return true;
    });
}

std::string dump_copies(const CopyIndex& index) {
    std::ostringstream out;
    for (size_t c = 0; c < index.copy_count(); ++c) {
        out << index.pattern_id(c) << ':';
        for (Vertex v : index.copy_vertices(c)) out << ' ' << v;
        out << '\n';
    }
    return out.str();
}

}  // namespace gpack
