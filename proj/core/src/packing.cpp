#include "gpack/packing.hpp"

#include <sstream>

#include "gpack/canonical.hpp"
#include "gpack/errors.hpp"

namespace gpack {

FractionalPacking::FractionalPacking(std::shared_ptr<const CopyIndex> index,
                                     std::vector<Rat> weights)
    : index_(std::move(index)), weights_(std::move(weights)) {
    if (weights_.size() != index_->copy_count())
        throw ArgumentError("packing needs one weight per copy");
}

size_t FractionalPacking::support_size() const {
    size_t s = 0;
    for (const Rat& w : weights_)
        if (w != 0) ++s;
    return s;
}

Rat FractionalPacking::edge_load(size_t edge_idx) const {
    Rat load = 0;
    for (uint32_t c : index_->copies_through_edge(edge_idx)) load += weights_[c];
    return load;
}

Rat packing_weight(const FractionalPacking& psi) {
    Rat w = 0;
    for (const Rat& x : psi.weights()) w += x;
    return w;
}

FractionalPacking labeled_normalize(const FractionalPacking& psi) {
    const CopyIndex& idx = psi.index();
    if (idx.kind() != CopyKind::Unlabeled)
        throw ArgumentError("labeled_normalize expects an unlabeled packing");
    auto labeled = std::make_shared<CopyIndex>(expand_to_labeled(idx));
    std::vector<Rat> aut_size;
    for (const Graph& p : idx.patterns())
        aut_size.push_back(Rat(static_cast<unsigned long>(automorphism_count(p))));

    // Labeled copies are sorted by (pattern, tuple); recover, for each
    // labeled copy, its unlabeled source by canonicalizing the tuple.
    // Cheaper and simpler: distribute from the unlabeled side by
    // regenerating each copy's labeled versions and locating them.
    std::vector<std::vector<std::vector<Vertex>>> auts;
    for (const Graph& p : idx.patterns()) auts.push_back(automorphisms(p));
    std::vector<Rat> weights(labeled->copy_count(), Rat(0));
    // Binary search over the labeled index for a (pattern, tuple) key.
    auto locate = [&](uint32_t pid, const std::vector<Vertex>& t) -> size_t {
        size_t lo = 0, hi = labeled->copy_count();
        while (lo < hi) {
            size_t mid = (lo + hi) / 2;
            uint32_t mp = labeled->pattern_id(mid);
            bool less;
            if (mp != pid) {
                less = mp < pid;
            } else {
                auto mt = labeled->copy_vertices(mid);
                less = std::lexicographical_compare(mt.begin(), mt.end(), t.begin(),
                                                    t.end());
            }
            if (less)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo;
    };
    std::vector<Vertex> relabeled;
    for (size_t c = 0; c < idx.copy_count(); ++c) {
        if (psi.weight(c) == 0) continue;
        uint32_t pid = idx.pattern_id(c);
        Rat share = psi.weight(c) / aut_size[pid];
        auto tuple = idx.copy_vertices(c);
        for (const auto& sigma : auts[pid]) {
            relabeled.resize(tuple.size());
            for (size_t i = 0; i < tuple.size(); ++i) relabeled[i] = tuple[sigma[i]];
            size_t at = locate(pid, relabeled);
            weights[at] += share;
        }
    }
    return FractionalPacking(std::move(labeled), std::move(weights));
}

FractionalPacking restrict_packing(const FractionalPacking& psi,
                                   const std::function<bool(size_t)>& keep) {
    std::vector<Rat> weights = psi.weights();
    for (size_t c = 0; c < weights.size(); ++c)
        if (!keep(c)) weights[c] = 0;
    return FractionalPacking(psi.index_ptr(), std::move(weights));
}

FractionalVerdict verify_fractional(const FractionalPacking& psi, double tol) {
    FractionalVerdict v;
    Rat lo = rat_from_double(-tol), hi = Rat(1) + rat_from_double(tol);
    for (size_t c = 0; c < psi.weights().size(); ++c) {
        const Rat& w = psi.weight(c);
        if (w < lo || w > hi) {
            v.ok = false;
            v.message = "copy " + std::to_string(c) + " has weight " + rat_str(w) +
                        " outside [0,1]";
            return v;
        }
    }
    const Graph& host = psi.index().host();
    for (size_t e = 0; e < host.size(); ++e) {
        Rat load = psi.edge_load(e);
        if (load > v.worst_load) {
            v.worst_load = load;
            v.worst_edge = e;
        }
    }
    if (v.worst_load > hi) {
        v.ok = false;
        Edge e = host.edges()[v.worst_edge];
        v.message = "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                    ") carries load " + rat_str(v.worst_load);
    }
    return v;
}

}  // namespace gpack
