#include "gpack/family.hpp"

#include <algorithm>

#include "gpack/canonical.hpp"
#include "gpack/errors.hpp"

namespace gpack {

namespace {

void validate_members(const std::vector<Graph>& members,
                      const std::vector<std::string>& names) {
    if (members.empty()) throw ArgumentError("family must have at least one member");
    if (members.size() != names.size())
        throw ArgumentError("family needs one name per member");
    for (size_t i = 0; i < members.size(); ++i) {
        const Graph& g = members[i];
        const std::string& name = names[i];
        if (g.order() > kMaxPatternOrder)
            throw ArgumentError("family member " + name + " exceeds " +
                                std::to_string(kMaxPatternOrder) + " vertices");
        if (g.order() < 3 && g.size() < 2)
            throw ArgumentError("family member " + name +
                                " needs at least 3 vertices or 2 edges");
        if (g.order() == 2 && g.size() == 1)
            throw ArgumentError("single-edge pattern K2 cannot be a family member");
        if (!g.isolated_vertices().empty())
            throw ArgumentError("family member " + name + " has an isolated vertex");
        if (g.size() == 0)
            throw ArgumentError("family member " + name + " has no edges");
    }
    for (size_t i = 0; i < members.size(); ++i)
        for (size_t j = i + 1; j < members.size(); ++j)
            if (are_isomorphic(members[i], members[j]))
                throw ArgumentError("family members " + names[i] + " and " + names[j] +
                                    " are isomorphic");
}

}  // namespace

Family Family::of(std::vector<Graph> members, std::vector<std::string> names) {
    validate_members(members, names);
    Family f;
    f.members_ = std::move(members);
    f.names_ = std::move(names);
    f.bounded_ = true;
    return f;
}

Family Family::of_unbounded(std::vector<Graph> members, std::vector<std::string> names) {
    Family f = of(std::move(members), std::move(names));
    f.bounded_ = false;
    return f;
}

Vertex Family::max_order() const {
    Vertex k = 0;
    for (const Graph& g : members_) k = std::max(k, g.order());
    return k;
}

size_t Family::min_edges() const {
    size_t m = SIZE_MAX;
    for (const Graph& g : members_) m = std::min(m, g.size());
    return m;
}

std::string Family::spec_string() const {
    std::string out;
    for (size_t i = 0; i < names_.size(); ++i) {
        if (i) out += ',';
        out += names_[i];
    }
    return out;
}

Family parse_family_spec(const std::string& spec) {
    std::vector<Graph> members;
    std::vector<std::string> names;
    size_t pos = 0;
    while (pos <= spec.size()) {
        size_t comma = spec.find(',', pos);
        std::string item = spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (item.empty()) throw ParseError("empty item in family spec \"" + spec + "\"");
        size_t colon = item.find(':');
        if (colon != std::string::npos) {
            std::string name = item.substr(0, colon);
            std::string path = item.substr(colon + 1);
            if (name.empty() || path.empty())
                throw ParseError("family spec item \"" + item +
                                 "\" must be name:path");
            members.push_back(Graph::load(path));
            names.push_back(name);
        } else {
            members.push_back(named_pattern(item));
            names.push_back(item);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return Family::of(std::move(members), std::move(names));
}

}  // namespace gpack
