#include "gpack/partition.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "gpack/errors.hpp"
#include "gpack/rng.hpp"

namespace gpack {

VertexPartition::VertexPartition(Vertex n, std::vector<std::vector<Vertex>> classes,
                                 PartitionOrigin origin)
    : n_(n), classes_(std::move(classes)), origin_(origin) {
    class_of_.assign(n_, SIZE_MAX);
    for (size_t i = 0; i < classes_.size(); ++i) {
        if (classes_[i].empty()) throw ArgumentError("empty partition class");
        for (Vertex v : classes_[i]) {
            if (v >= n_) throw ArgumentError("partition vertex out of range");
            if (class_of_[v] != SIZE_MAX) throw ArgumentError("partition classes overlap");
            class_of_[v] = i;
        }
    }
    for (Vertex v = 0; v < n_; ++v)
        if (class_of_[v] == SIZE_MAX)
            throw ArgumentError("vertex " + std::to_string(v) + " not covered by partition");
}

std::string VertexPartition::to_json() const {
    std::ostringstream out;
    out << '[';
    for (size_t i = 0; i < classes_.size(); ++i) {
        if (i) out << ',';
        out << '[';
        for (size_t k = 0; k < classes_[i].size(); ++k) {
            if (k) out << ',';
            out << classes_[i][k];
        }
        out << ']';
    }
    out << ']';
    return out.str();
}

VertexPartition VertexPartition::from_json(const std::string& text, Vertex n,
                                           PartitionOrigin origin) {
    std::vector<std::vector<Vertex>> classes;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto expect = [&](char c) {
        skip_ws();
        if (i >= text.size() || text[i] != c)
            throw ParseError(std::string("partition JSON: expected '") + c + "'");
        ++i;
    };
    expect('[');
    skip_ws();
    if (i < text.size() && text[i] == ']') {
        ++i;
    } else {
        while (true) {
            expect('[');
            std::vector<Vertex> cls;
            skip_ws();
            if (i < text.size() && text[i] == ']') {
                ++i;
            } else {
                while (true) {
                    skip_ws();
                    size_t start = i;
                    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                        ++i;
                    if (start == i) throw ParseError("partition JSON: expected vertex id");
                    cls.push_back(static_cast<Vertex>(std::stoul(text.substr(start, i - start))));
                    skip_ws();
                    if (i < text.size() && text[i] == ',') {
                        ++i;
                        continue;
                    }
                    expect(']');
                    break;
                }
            }
            classes.push_back(std::move(cls));
            skip_ws();
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            expect(']');
            break;
        }
    }
    skip_ws();
    if (i != text.size()) throw ParseError("partition JSON: trailing characters");
    return VertexPartition(n, std::move(classes), origin);
}

VertexPartition equitable_partition(Vertex n, size_t m, uint64_t seed) {
    if (m == 0 || m > n) throw ArgumentError("class count must satisfy 1 <= m <= n");
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex(0));
    Rng rng(mix_seed(seed, Stream::EquitablePartition));
    rng.shuffle(order);
    // First (n mod m) classes get the extra vertex.
    std::vector<std::vector<Vertex>> classes(m);
    size_t base = n / m, extra = n % m;
    size_t pos = 0;
    for (size_t i = 0; i < m; ++i) {
        size_t sz = base + (i < extra ? 1 : 0);
        classes[i].assign(order.begin() + pos, order.begin() + pos + sz);
        std::sort(classes[i].begin(), classes[i].end());
        pos += sz;
    }
    return VertexPartition(n, std::move(classes), PartitionOrigin::Equitable);
}

VertexPartition refine_partition(const VertexPartition& p, size_t factor, uint64_t seed) {
    if (factor == 0) throw ArgumentError("refinement factor must be positive");
    std::vector<std::vector<Vertex>> out;
    out.reserve(p.class_count() * factor);
    for (size_t i = 0; i < p.class_count(); ++i) {
        std::vector<Vertex> members = p.class_members(i);
        if (members.size() < factor)
            throw ArgumentError("class " + std::to_string(i) + " of size " +
                                std::to_string(members.size()) +
                                " cannot be split into " + std::to_string(factor) +
                                " parts");
        Rng rng(mix_seed(seed, Stream::RefinePartition, i));
        rng.shuffle(members);
        size_t base = members.size() / factor, extra = members.size() % factor;
        size_t pos = 0;
        for (size_t k = 0; k < factor; ++k) {
            size_t sz = base + (k < extra ? 1 : 0);
            std::vector<Vertex> part(members.begin() + pos, members.begin() + pos + sz);
            std::sort(part.begin(), part.end());
            out.push_back(std::move(part));
            pos += sz;
        }
    }
    return VertexPartition(p.order(), std::move(out), PartitionOrigin::Refined);
}

}  // namespace gpack
