#include "gpack/regularity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gpack/copies.hpp"
#include "gpack/errors.hpp"
#include "gpack/rng.hpp"

namespace gpack {

namespace {

void check_gamma(double gamma) {
    if (!(gamma > 0) || !(gamma < 1))
        throw ArgumentError("gamma must lie strictly between 0 and 1");
}

std::vector<Vertex> pick_subset(const std::vector<Vertex>& from, size_t size, Rng& rng) {
    std::vector<Vertex> at = rng.sample(static_cast<Vertex>(from.size()),
                                        static_cast<Vertex>(size));
    std::vector<Vertex> out;
    out.reserve(size);
    for (Vertex i : at) out.push_back(from[i]);
    return out;
}

// Degree/codegree certificate. With d = d(A,B), D the largest
// deviation of deg_A(y) from d|A| over y in B, and K the largest
// deviation of codeg_A(y,y') from d^2|A|, every pair X,Y with
// |X| >= gamma|A|, |Y| >= gamma|B| satisfies, by Cauchy-Schwarz,
//   |d(X,Y) - d|^2 <= (d|A| + D) / (gamma^2 |A||B|)
//                     + (K + 2dD) / (gamma |A|).
// The pair is certified regular when that bound is below gamma^2.
bool certify_degree_codegree(const Graph& G, const std::vector<Vertex>& A,
                             const std::vector<Vertex>& B, double gamma, double d) {
    size_t words = G.word_count();
    std::vector<uint64_t> a_mask(words, 0);
    for (Vertex v : A) a_mask[v >> 6] |= uint64_t(1) << (v & 63);
    std::vector<std::vector<uint64_t>> rows;
    rows.reserve(B.size());
    std::vector<double> deg(B.size());
    double big_d = 0;
    for (size_t y = 0; y < B.size(); ++y) {
        std::vector<uint64_t> row(words);
        const auto& adj = G.adjacency_bits(B[y]);
        size_t cnt = 0;
        for (size_t w = 0; w < words; ++w) {
            row[w] = adj[w] & a_mask[w];
            cnt += static_cast<size_t>(std::popcount(row[w]));
        }
        deg[y] = static_cast<double>(cnt);
        big_d = std::max(big_d, std::fabs(deg[y] - d * static_cast<double>(A.size())));
        rows.push_back(std::move(row));
    }
    double big_k = 0;
    double dd_a = d * d * static_cast<double>(A.size());
    for (size_t y = 0; y < B.size(); ++y) {
        for (size_t z = y + 1; z < B.size(); ++z) {
            size_t cd = 0;
            for (size_t w = 0; w < words; ++w)
                cd += static_cast<size_t>(std::popcount(rows[y][w] & rows[z][w]));
            big_k = std::max(big_k, std::fabs(static_cast<double>(cd) - dd_a));
        }
    }
    double na = static_cast<double>(A.size()), nb = static_cast<double>(B.size());
    double bound = (d * na + big_d) / (gamma * gamma * na * nb) +
                   (big_k + 2 * d * big_d) / (gamma * na);
    return bound < gamma * gamma;
}

}  // namespace

PairVerdict check_regular_pair(const Graph& G, const std::vector<Vertex>& A,
                               const std::vector<Vertex>& B, double gamma,
                               RegularityMethod method, uint64_t seed, size_t samples) {
    check_gamma(gamma);
    PairVerdict v;
    v.method = method;
    v.density = G.pair_density(A, B);  // validates disjoint, nonempty
    // Constant-density pairs are regular for every gamma.
    if (v.density == 0 || v.density == 1) {
        v.regular = true;
        return v;
    }
    if (method == RegularityMethod::DegreeCodegree) {
        v.regular = certify_degree_codegree(G, A, B, gamma, rat_to_double(v.density));
        return v;
    }
    Rat gamma_rat = rat_from_double(gamma);
    size_t sa = static_cast<size_t>(std::floor(gamma * static_cast<double>(A.size()))) + 1;
    size_t sb = static_cast<size_t>(std::floor(gamma * static_cast<double>(B.size()))) + 1;
    sa = std::min(sa, A.size());
    sb = std::min(sb, B.size());
    Rng rng(mix_seed(seed, Stream::PairCheck));
    for (size_t s = 0; s < samples; ++s) {
        std::vector<Vertex> x = pick_subset(A, sa, rng);
        std::vector<Vertex> y = pick_subset(B, sb, rng);
        Rat dxy = G.pair_density(x, y);
        Rat dev = dxy - v.density;
        if (dev < 0) dev = -dev;
        if (dev >= gamma_rat) {
            v.regular = false;
            v.witness_x = std::move(x);
            v.witness_y = std::move(y);
            return v;
        }
    }
    v.regular = true;  // one-sided: no violation found among the samples
    return v;
}

PairAssessment::PairAssessment(size_t classes, double gamma,
                               std::vector<PairVerdict> verdicts)
    : classes_(classes), gamma_(gamma), verdicts_(std::move(verdicts)) {
    if (verdicts_.size() != classes_ * (classes_ - 1) / 2)
        throw ArgumentError("pair assessment needs one verdict per class pair");
}

const PairVerdict& PairAssessment::verdict(size_t i, size_t j) const {
    if (i > j) std::swap(i, j);
    if (i == j || j >= classes_) throw ArgumentError("bad class pair");
    return verdicts_[i * (2 * classes_ - i - 1) / 2 + (j - i - 1)];
}

std::string PairAssessment::to_csv() const {
    std::ostringstream out;
    out << "i,j,density,regular,method\n";
    for (const PairVerdict& v : verdicts_) {
        out << v.i << ',' << v.j << ',' << rat_str(v.density) << ','
            << (v.regular ? "true" : "false") << ','
            << (v.method == RegularityMethod::Sampling ? "sampling" : "degree-codegree")
            << '\n';
    }
    return out.str();
}

PairAssessment assess_regular_pairs(const Graph& G, const VertexPartition& p,
                                    double gamma, RegularityMethod method,
                                    uint64_t seed, size_t samples) {
    check_gamma(gamma);
    size_t m = p.class_count();
    std::vector<PairVerdict> verdicts;
    verdicts.reserve(m * (m - 1) / 2);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = i + 1; j < m; ++j) {
            PairVerdict v = check_regular_pair(G, p.class_members(i), p.class_members(j),
                                               gamma, method,
                                               mix_seed(seed, Stream::PairCheck, i, j),
                                               samples);
            v.i = i;
            v.j = j;
            verdicts.push_back(std::move(v));
        }
    }
    return PairAssessment(m, gamma, std::move(verdicts));
}

std::pair<VertexPartition, PartitionVerdict> regularity_partition(const Graph& G,
                                                                  double gamma,
                                                                  size_t max_classes,
                                                                  uint64_t seed) {
    check_gamma(gamma);
    size_t m0 = static_cast<size_t>(std::ceil(1.0 / gamma));
    if (m0 > max_classes)
        throw ArgumentError("max_classes below the ceil(1/gamma) starting classes");
    if (m0 > G.order()) m0 = G.order();
    VertexPartition part = equitable_partition(G.order(), m0, mix_seed(seed, Stream::RegularityRefine));
    PartitionVerdict verdict;
    for (size_t round = 0;; ++round) {
        verdict.rounds = round;
        PairAssessment a = assess_regular_pairs(G, part, gamma, RegularityMethod::Sampling,
                                                mix_seed(seed, Stream::RegularityRefine, round));
        size_t m = part.class_count();
        size_t pairs = m * (m - 1) / 2;
        size_t irregular = 0;
        // Witness subsets become split keys for their classes.
        std::vector<std::vector<std::vector<Vertex>>> atoms(m);
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i + 1; j < m; ++j) {
                const PairVerdict& v = a.verdict(i, j);
                if (v.regular) continue;
                ++irregular;
                if (v.has_witness()) {
                    atoms[i].push_back(v.witness_x);
                    atoms[j].push_back(v.witness_y);
                }
            }
        verdict.irregular_fraction =
            pairs == 0 ? 0.0 : static_cast<double>(irregular) / static_cast<double>(pairs);
        if (verdict.irregular_fraction <= gamma) {
            verdict.certified = true;
            return {std::move(part), verdict};
        }
        bool can_split = 2 * m <= max_classes;
        for (size_t i = 0; i < m && can_split; ++i)
            if (part.class_members(i).size() < 2) can_split = false;
        if (!can_split) {
            verdict.certified = false;
            return {std::move(part), verdict};
        }
        // Halve every class, grouping members by their atom-membership
        // profile so witness sets stay (approximately) intact.
        std::vector<std::vector<Vertex>> next;
        next.reserve(2 * m);
        for (size_t i = 0; i < m; ++i) {
            std::vector<Vertex> members = part.class_members(i);
            Rng rng(mix_seed(seed, Stream::RegularityRefine, round, i));
            rng.shuffle(members);
            std::vector<uint64_t> key(members.size(), 0);
            for (size_t t = 0; t < atoms[i].size() && t < 63; ++t) {
                std::vector<uint64_t> in_atom((G.order() + 63) / 64, 0);
                for (Vertex v : atoms[i][t]) in_atom[v >> 6] |= uint64_t(1) << (v & 63);
                for (size_t k = 0; k < members.size(); ++k)
                    if (in_atom[members[k] >> 6] & (uint64_t(1) << (members[k] & 63)))
                        key[k] |= uint64_t(1) << t;
            }
            std::vector<size_t> order(members.size());
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&](size_t x, size_t y) { return key[x] < key[y]; });
            size_t half = members.size() / 2;
            std::vector<Vertex> lo, hi;
            for (size_t k = 0; k < order.size(); ++k)
                (k < half ? lo : hi).push_back(members[order[k]]);
            std::sort(lo.begin(), lo.end());
            std::sort(hi.begin(), hi.end());
            next.push_back(std::move(lo));
            next.push_back(std::move(hi));
        }
        part = VertexPartition(G.order(), std::move(next), PartitionOrigin::Regularized);
    }
}

std::string DiscardReport::to_json() const {
    std::ostringstream out;
    out << "{\"internal\":" << internal << ",\"irregular\":" << irregular
        << ",\"sparse\":" << sparse << ",\"discarded\":" << discarded
        << ",\"kept\":" << kept << ",\"bound\":" << bound
        << ",\"within_bound\":" << (within_bound ? "true" : "false") << "}";
    return out.str();
}

std::pair<Graph, DiscardReport> discard_edges(const Graph& G, const VertexPartition& p,
                                              const PairAssessment& a, double delta) {
    if (p.order() != G.order())
        throw ArgumentError("partition order does not match the graph");
    Rat delta_rat = rat_from_double(delta);
    DiscardReport report;
    std::vector<uint8_t> keep(G.size(), 0);
    for (size_t e = 0; e < G.size(); ++e) {
        Edge edge = G.edges()[e];
        size_t ci = p.class_of(edge.u), cj = p.class_of(edge.v);
        if (ci == cj) {
            ++report.internal;
            continue;
        }
        const PairVerdict& v = a.verdict(ci, cj);
        if (!v.regular) {
            ++report.irregular;
            continue;
        }
        if (v.density < delta_rat) {
            ++report.sparse;
            continue;
        }
        keep[e] = 1;
        ++report.kept;
    }
    report.discarded = report.internal + report.irregular + report.sparse;
    report.bound = 0.72 * delta * static_cast<double>(G.order()) *
                   static_cast<double>(G.order());
    report.within_bound = static_cast<double>(report.discarded) < report.bound;
    Graph g_star = G.filter_edges([&](size_t e) { return keep[e] != 0; });
    return {std::move(g_star), report};
}

ReducedGraph build_reduced_graph(const VertexPartition& p, const PairAssessment& a,
                                 double delta) {
    size_t m = p.class_count();
    if (a.class_count() != m)
        throw ArgumentError("assessment size does not match the partition");
    Rat delta_rat = rat_from_double(delta);
    ReducedGraph R;
    R.base = Graph(static_cast<Vertex>(m));
    R.partition = p;
    R.gamma = a.gamma();
    R.delta = delta;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j) {
            const PairVerdict& v = a.verdict(i, j);
            if (v.regular && v.density >= delta_rat)
                R.base.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
        }
    R.densities.assign(R.base.size(), Rat(0));
    for (size_t e = 0; e < R.base.size(); ++e) {
        Edge edge = R.base.edges()[e];
        R.densities[e] = a.verdict(edge.u, edge.v).density;
    }
    return R;
}

const Rat& ReducedGraph::density_of(size_t i, size_t j) const {
    size_t e = base.edge_index(static_cast<Vertex>(i), static_cast<Vertex>(j));
    if (e == SIZE_MAX) throw ArgumentError("no reduced edge between those classes");
    return densities[e];
}

FractionalPacking project_packing_to_reduced(const FractionalPacking& psi_star,
                                             const VertexPartition& p,
                                             const ReducedGraph& R) {
    const CopyIndex& src = psi_star.index();
    if (src.kind() != CopyKind::Labeled)
        throw ArgumentError("projection expects a labeled packing");
    auto base = std::make_shared<Graph>(R.base);
    auto reduced_index = std::make_shared<CopyIndex>(
        enumerate_labeled_copies(base, src.patterns()));
    std::vector<Rat> weights(reduced_index->copy_count(), Rat(0));

    // Binary search for (pattern, tuple) in the sorted reduced index.
    auto locate = [&](uint32_t pid, const std::vector<Vertex>& t) -> size_t {
        size_t lo = 0, hi = reduced_index->copy_count();
        while (lo < hi) {
            size_t mid = (lo + hi) / 2;
            uint32_t mp = reduced_index->pattern_id(mid);
            bool less;
            if (mp != pid) {
                less = mp < pid;
            } else {
                auto mt = reduced_index->copy_vertices(mid);
                less = std::lexicographical_compare(mt.begin(), mt.end(), t.begin(), t.end());
            }
            if (less)
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo == reduced_index->copy_count()) return SIZE_MAX;
        if (reduced_index->pattern_id(lo) != pid) return SIZE_MAX;
        auto found = reduced_index->copy_vertices(lo);
        if (!std::equal(found.begin(), found.end(), t.begin(), t.end())) return SIZE_MAX;
        return lo;
    };

    std::vector<Vertex> sig;
    for (size_t c = 0; c < src.copy_count(); ++c) {
        if (psi_star.weight(c) == 0) continue;
        auto tuple = src.copy_vertices(c);
        sig.resize(tuple.size());
        for (size_t i = 0; i < tuple.size(); ++i)
            sig[i] = static_cast<Vertex>(p.class_of(tuple[i]));
        std::vector<Vertex> sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ArgumentError("projection support contains a copy with two vertices in one class");
        size_t at = locate(src.pattern_id(c), sig);
        if (at == SIZE_MAX)
            throw ArgumentError("projection support contains a copy over a discarded pair");
        weights[at] += psi_star.weight(c);
    }
    size_t n = p.order(), m = p.class_count();
    Rat scale = Rat(static_cast<unsigned long>(m)) * Rat(static_cast<unsigned long>(m)) /
                (Rat(static_cast<unsigned long>(n)) * Rat(static_cast<unsigned long>(n)));
    for (Rat& w : weights) w *= scale;
    return FractionalPacking(std::move(reduced_index), std::move(weights));
}

ReducedLoadVerdict verify_reduced_load(const FractionalPacking& psi_prime,
                                       const ReducedGraph& R) {
    ReducedLoadVerdict v;
    for (size_t e = 0; e < R.base.size(); ++e) {
        Rat load = psi_prime.edge_load(e);
        if (load > R.densities[e]) {
            v.ok = false;
            v.worst_edge = e;
            v.load = load;
            v.bound = R.densities[e];
            return v;
        }
    }
    return v;
}

std::string CountingReport::to_json() const {
    std::ostringstream out;
    out << "{\"edges_total\":" << edges_total << ",\"edges_ok\":" << edges_ok
        << ",\"fraction_ok\":" << fraction_ok
        << ",\"max_relative_deviation\":" << max_relative_deviation
        << ",\"survives\":" << (survives ? "true" : "false") << "}";
    return out.str();
}

CountingReport counting_lemma_check(const Graph& W, const Graph& pattern,
                                    const std::vector<std::vector<Vertex>>& classes,
                                    double zeta, double delta) {
    Vertex k = pattern.order();
    if (classes.size() != k)
        throw ArgumentError("counting check needs one class per pattern vertex");
    size_t t = classes[0].size();
    for (const auto& cls : classes)
        if (cls.size() != t) throw ArgumentError("counting check needs equal class sizes");

    std::vector<Rat> pair_density(pattern.size());
    Rat product = 1;
    Rat delta_rat = rat_from_double(delta);
    for (size_t pe = 0; pe < pattern.size(); ++pe) {
        Edge e = pattern.edges()[pe];
        pair_density[pe] = W.pair_density(classes[e.u], classes[e.v]);
        if (pair_density[pe] < delta_rat)
            throw ArgumentError("pattern-edge pair density below delta");
        product *= pair_density[pe];
    }
    double t_pow = std::pow(static_cast<double>(t), static_cast<double>(k) - 2.0);

    std::vector<uint64_t> counts(W.size(), 0);
    for_each_partite_copy(W, pattern, classes, [&](std::span<const Vertex> tuple) {
        for (const Edge& pe : pattern.edges())
            ++counts[W.edge_index(tuple[pe.u], tuple[pe.v])];
    });

    std::vector<std::vector<Vertex>> sorted_classes = classes;
    for (auto& cls : sorted_classes) std::sort(cls.begin(), cls.end());

    CountingReport report;
    double slack = zeta * t_pow;
    for (size_t pe = 0; pe < pattern.size(); ++pe) {
        Edge cls_edge = pattern.edges()[pe];
        double expected =
            t_pow * rat_to_double(product / pair_density[pe]);
        // Every W-edge between this class pair carries a c(e) value;
        // each appears once, seen from its class-u endpoint.
        for (Vertex u : classes[cls_edge.u]) {
            for (Vertex v : W.neighbors(u)) {
                size_t e = W.edge_index(u, v);
                if (!std::binary_search(sorted_classes[cls_edge.v].begin(),
                                        sorted_classes[cls_edge.v].end(), v))
                    continue;
                ++report.edges_total;
                double c = static_cast<double>(counts[e]);
                double dev = std::fabs(c - expected);
                if (dev < slack) ++report.edges_ok;
                report.max_relative_deviation =
                    std::max(report.max_relative_deviation, dev / t_pow);
                report.edge_indices.push_back(e);
                report.counts.push_back(counts[e]);
                report.expected.push_back(expected);
            }
        }
    }
    report.fraction_ok = report.edges_total == 0
                             ? 1.0
                             : static_cast<double>(report.edges_ok) /
                                   static_cast<double>(report.edges_total);
    report.survives = report.fraction_ok >= 1.0 - zeta;
    return report;
}

}  // namespace gpack
