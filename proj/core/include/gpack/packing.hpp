#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gpack/copies.hpp"
#include "gpack/rational.hpp"

namespace gpack {

// Weight per copy of an index; all arithmetic is exact rational so
// verification identities hold without tolerances.
class FractionalPacking {
  public:
    FractionalPacking() = default;
    explicit FractionalPacking(std::shared_ptr<const CopyIndex> index)
        : index_(std::move(index)), weights_(index_->copy_count(), Rat(0)) {}
    FractionalPacking(std::shared_ptr<const CopyIndex> index, std::vector<Rat> weights);

    const CopyIndex& index() const { return *index_; }
    std::shared_ptr<const CopyIndex> index_ptr() const { return index_; }
    const Rat& weight(size_t c) const { return weights_[c]; }
    void set_weight(size_t c, Rat w) { weights_[c] = std::move(w); }
    const std::vector<Rat>& weights() const { return weights_; }
    size_t support_size() const;

    // Exact load of host edge e: sum of weights of copies through it.
    Rat edge_load(size_t edge_idx) const;

  private:
    std::shared_ptr<const CopyIndex> index_;
    std::vector<Rat> weights_;
};

// w(psi): sum of all weights.
Rat packing_weight(const FractionalPacking& psi);

// Unlabeled -> labeled: each copy becomes |Aut| labeled copies at
// weight/|Aut|; total weight and edge loads are unchanged.
FractionalPacking labeled_normalize(const FractionalPacking& psi);

// Zeroes the weight of every copy not accepted by keep.
FractionalPacking restrict_packing(const FractionalPacking& psi,
                                   const std::function<bool(size_t)>& keep);

struct FractionalVerdict {
    bool ok = true;
    std::string message;
    size_t worst_edge = 0;   // host edge index of the worst load
    Rat worst_load = 0;
};

// Accepts iff every weight is in [-tol, 1+tol] and every edge load
// is at most 1 + tol.
FractionalVerdict verify_fractional(const FractionalPacking& psi, double tol = 0.0);

}  // namespace gpack
