#include "gpack/lp.hpp"

#include <algorithm>
#include <sstream>

#include "gpack/errors.hpp"

namespace gpack {

namespace {

// Revised simplex, maximizing 1.x subject to Ax <= 1, x >= 0, where A
// is the 0/1 edge-copy incidence matrix restricted to covered rows.
// T is Rat (exact) or double (tolerance-based with refactorization).
template <class T>
struct Simplex {
    size_t rows, cols;
    const std::vector<std::vector<uint32_t>>& col_rows;  // per column, sorted row ids
    T eps;

    std::vector<size_t> basis;          // per row: variable id (cols+i = slack i)
    std::vector<uint8_t> in_basis;      // per variable id
    std::vector<std::vector<T>> binv;   // rows x rows
    std::vector<T> xb;                  // basic values
    std::vector<T> y;                   // dual prices
    std::vector<T> w;                   // entering column in basis coordinates
    size_t pivots = 0;
    bool bland = false;
    size_t degenerate_run = 0;

    Simplex(size_t rows, size_t cols, const std::vector<std::vector<uint32_t>>& col_rows,
            T eps)
        : rows(rows), cols(cols), col_rows(col_rows), eps(eps) {
        basis.resize(rows);
        in_basis.assign(cols + rows, 0);
        binv.assign(rows, std::vector<T>(rows, T(0)));
        xb.assign(rows, T(1));
        y.assign(rows, T(0));
        w.assign(rows, T(0));
        for (size_t i = 0; i < rows; ++i) {
            basis[i] = cols + i;
            in_basis[cols + i] = 1;
            binv[i][i] = T(1);
        }
    }

    void compute_prices() {
        for (size_t j = 0; j < rows; ++j) {
            T v(0);
            for (size_t i = 0; i < rows; ++i)
                if (basis[i] < cols) v += binv[i][j];
            y[j] = v;
        }
    }

    T reduced_cost(size_t var) const {
        if (var < cols) {
            T d(1);
            for (uint32_t r : col_rows[var]) d -= y[r];
            return d;
        }
        return -y[var - cols];
    }

    // Entering variable: largest reduced cost, or first positive one
    // once Bland's rule is engaged. SIZE_MAX means optimal.
    size_t choose_entering() {
        compute_prices();
        size_t best = SIZE_MAX;
        T best_d(0);
        for (size_t var = 0; var < cols + rows; ++var) {
            if (in_basis[var]) continue;
            T d = reduced_cost(var);
            if (d > eps) {
                if (bland) return var;
                if (best == SIZE_MAX || d > best_d) {
                    best = var;
                    best_d = d;
                }
            }
        }
        return best;
    }

    void compute_direction(size_t var) {
        if (var < cols) {
            for (size_t i = 0; i < rows; ++i) {
                T v(0);
                for (uint32_t r : col_rows[var]) v += binv[i][r];
                w[i] = v;
            }
        } else {
            size_t s = var - cols;
            for (size_t i = 0; i < rows; ++i) w[i] = binv[i][s];
        }
    }

    void pivot(size_t var, size_t lr) {
        T piv = w[lr];
        for (size_t j = 0; j < rows; ++j) binv[lr][j] /= piv;
        xb[lr] /= piv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == lr) continue;
            if (w[i] == T(0)) continue;
            T f = w[i];
            for (size_t j = 0; j < rows; ++j) binv[i][j] -= f * binv[lr][j];
            xb[i] -= f * xb[lr];
        }
        in_basis[basis[lr]] = 0;
        basis[lr] = var;
        in_basis[var] = 1;
        ++pivots;
    }

    // Rebuilds B^-1 from the basis by Gauss-Jordan; float mode only,
    // counters accumulated rounding.
    void refactorize() {
        std::vector<std::vector<T>> m(rows, std::vector<T>(2 * rows, T(0)));
        for (size_t i = 0; i < rows; ++i) {
            size_t var = basis[i];
            if (var < cols) {
                for (uint32_t r : col_rows[var]) m[r][i] = T(1);
            } else {
                m[var - cols][i] = T(1);
            }
            m[i][rows + i] = T(1);
        }
        for (size_t col = 0; col < rows; ++col) {
            size_t pr = col;
            for (size_t i = col + 1; i < rows; ++i)
                if (abs_val(m[i][col]) > abs_val(m[pr][col])) pr = i;
            std::swap(m[col], m[pr]);
            if (m[col][col] == T(0)) throw Error("singular basis during refactorization");
            T piv = m[col][col];
            for (size_t j = col; j < 2 * rows; ++j) m[col][j] /= piv;
            for (size_t i = 0; i < rows; ++i) {
                if (i == col || m[i][col] == T(0)) continue;
                T f = m[i][col];
                for (size_t j = col; j < 2 * rows; ++j) m[i][j] -= f * m[col][j];
            }
        }
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < rows; ++j) binv[i][j] = m[i][rows + j];
        for (size_t i = 0; i < rows; ++i) {
            T v(0);
            for (size_t j = 0; j < rows; ++j) v += binv[i][j];
            xb[i] = v;  // b is all-ones
        }
    }

    static T abs_val(const T& v) { return v < T(0) ? T(-v) : v; }

    size_t solve() {
        size_t max_iter = 50000 + 100 * (rows + cols);
        for (size_t iter = 0; iter < max_iter; ++iter) {
            size_t var = choose_entering();
            if (var == SIZE_MAX) return iter;
            compute_direction(var);
            size_t lr = SIZE_MAX;
            for (size_t i = 0; i < rows; ++i) {
                if (!(w[i] > eps)) continue;
                if (lr == SIZE_MAX) {
                    lr = i;
                    continue;
                }
                T lhs = xb[i] * w[lr], rhs = xb[lr] * w[i];
                if (lhs < rhs || (lhs == rhs && basis[i] < basis[lr])) lr = i;
            }
            if (lr == SIZE_MAX) throw Error("unbounded packing LP");
            bool degenerate = !(xb[lr] > eps);
            pivot(var, lr);
            if (degenerate) {
                if (++degenerate_run >= 50) bland = true;
            } else {
                degenerate_run = 0;
            }
            if constexpr (std::is_same_v<T, double>) {
                if (pivots % 256 == 0) refactorize();
            }
        }
        throw Error("simplex iteration limit exceeded");
    }
};

}  // namespace

LpResult solve_packing_lp(std::shared_ptr<const CopyIndex> index, LpMode mode) {
    const CopyIndex& idx = *index;
    const Graph& host = idx.host();
    size_t cols = idx.copy_count();

    LpResult result;
    result.mode = mode;
    result.dual.assign(host.size(), Rat(0));
    if (cols == 0) {
        result.packing = FractionalPacking(index);
        return result;
    }

    // Compress rows to edges covered by at least one copy.
    std::vector<size_t> row_of_edge(host.size(), SIZE_MAX);
    std::vector<size_t> edge_of_row;
    for (size_t e = 0; e < host.size(); ++e) {
        if (!idx.copies_through_edge(e).empty()) {
            row_of_edge[e] = edge_of_row.size();
            edge_of_row.push_back(e);
        }
    }
    size_t rows = edge_of_row.size();
    std::vector<std::vector<uint32_t>> col_rows(cols);
    for (size_t c = 0; c < cols; ++c) {
        for (size_t e : idx.copy_edges(c))
            col_rows[c].push_back(static_cast<uint32_t>(row_of_edge[e]));
        std::sort(col_rows[c].begin(), col_rows[c].end());
    }

    std::vector<Rat> weights(cols, Rat(0));
    if (mode == LpMode::Exact) {
        Simplex<Rat> s(rows, cols, col_rows, Rat(0));
        result.iterations = s.solve();
        for (size_t i = 0; i < rows; ++i)
            if (s.basis[i] < cols) weights[s.basis[i]] = s.xb[i];
        s.compute_prices();
        Rat dual_value = 0;
        for (size_t i = 0; i < rows; ++i) {
            result.dual[edge_of_row[i]] = s.y[i];
            dual_value += s.y[i];
        }
        result.dual_value = dual_value;
        Rat primal = 0;
        for (const Rat& x : weights) primal += x;
        if (primal != dual_value)
            throw Error("exact LP lost strong duality: " + rat_str(primal) + " vs " +
                        rat_str(dual_value));
        result.value = primal;
    } else {
        Simplex<double> s(rows, cols, col_rows, 1e-9);
        result.iterations = s.solve();
        for (size_t i = 0; i < rows; ++i)
            if (s.basis[i] < cols && s.xb[i] > 0) weights[s.basis[i]] = rat_from_double(s.xb[i]);
        // Exact feasibility repair: clamp to [0,1] and rescale so no
        // edge load exceeds 1, removing float slop bit-for-bit.
        for (Rat& x : weights) {
            if (x < 0) x = 0;
            if (x > 1) x = 1;
        }
        Rat max_load = 0;
        for (size_t e = 0; e < host.size(); ++e) {
            Rat load = 0;
            for (uint32_t c : idx.copies_through_edge(e)) load += weights[c];
            if (load > max_load) max_load = load;
        }
        if (max_load > 1)
            for (Rat& x : weights) x /= max_load;
        Rat primal = 0;
        for (const Rat& x : weights) primal += x;
        result.value = primal;
        s.compute_prices();
        Rat dual_value = 0;
        for (size_t i = 0; i < rows; ++i) {
            Rat yi = rat_from_double(s.y[i]);
            if (yi < 0) yi = 0;
            result.dual[edge_of_row[i]] = yi;
            dual_value += yi;
        }
        result.dual_value = dual_value;
    }
    result.value_double = rat_to_double(result.value);
    result.packing = FractionalPacking(index, std::move(weights));
    return result;
}

LpResult solve_fractional_packing(const Graph& G, const Family& F, LpMode mode,
                                  size_t cap) {
    auto host = std::make_shared<Graph>(G);
    auto index = std::make_shared<CopyIndex>(enumerate_unlabeled_copies(host, F, cap));
    if (index->capped())
        throw BudgetError("copy enumeration hit the cap of " + std::to_string(cap) +
                          "; no fractional bound reported");
    return solve_packing_lp(std::move(index), mode);
}

std::string lp_result_json(const LpResult& r) {
    std::ostringstream out;
    out << "{\"mode\":\"" << (r.mode == LpMode::Exact ? "exact" : "float") << "\"";
    out << ",\"value\":\"" << rat_str(r.value) << "\"";
    out << ",\"value_double\":" << r.value_double;
    out << ",\"dual_value\":\"" << rat_str(r.dual_value) << "\"";
    out << ",\"iterations\":" << r.iterations;
    out << ",\"support\":[";
    bool first = true;
    for (size_t c = 0; c < r.packing.weights().size(); ++c) {
        if (r.packing.weight(c) == 0) continue;
        if (!first) out << ',';
        first = false;
        out << "{\"copy\":" << c << ",\"pattern\":" << r.packing.index().pattern_id(c)
            << ",\"vertices\":[";
        auto tuple = r.packing.index().copy_vertices(c);
        for (size_t i = 0; i < tuple.size(); ++i) {
            if (i) out << ',';
            out << tuple[i];
        }
        out << "],\"weight\":\"" << rat_str(r.packing.weight(c)) << "\"}";
    }
    out << "]}";
    return out.str();
}

}  // namespace gpack
