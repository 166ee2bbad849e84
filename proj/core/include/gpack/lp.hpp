#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gpack/family.hpp"
#include "gpack/packing.hpp"

namespace gpack {

enum class LpMode { Exact, Float };

struct LpResult {
    Rat value = 0;             // optimal w(psi)
    double value_double = 0;   // same, as double
    FractionalPacking packing;
    Rat dual_value = 0;        // optimal fractional cover value
    std::vector<Rat> dual;     // cover weight per host edge index
    LpMode mode = LpMode::Exact;
    size_t iterations = 0;
};

// Maximize w(psi) subject to per-edge load <= 1, psi >= 0, over the
// copies of the index. Exact mode works in rationals throughout and
// asserts primal = dual; float mode reports both within tolerance.
LpResult solve_packing_lp(std::shared_ptr<const CopyIndex> index, LpMode mode);

// Enumerates unlabeled copies of F in G, then solves. Throws
// BudgetError when the copy cap is hit (no bound is reported).
LpResult solve_fractional_packing(const Graph& G, const Family& F, LpMode mode,
                                  size_t cap = kDefaultCopyCap);

// JSON with the value (exact fraction string in exact mode) and the
// support with weights.
std::string lp_result_json(const LpResult& r);

}  // namespace gpack
