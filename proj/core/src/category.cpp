// SPDX-License-Identifier: Apache-2.0
#include "covcat/category.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace covcat {

std::optional<ObjectIndex> LinearCategory::find_object(std::string_view name) const {
    const auto it = std::lower_bound(objects_.begin(), objects_.end(), name);
    if (it == objects_.end() || *it != name) {
        return std::nullopt;
    }
    return static_cast<ObjectIndex>(it - objects_.begin());
}

ObjectIndex LinearCategory::index_of(std::string_view name) const {
    if (auto idx = find_object(name)) {
        return *idx;
    }
    throw std::out_of_range("unknown object \"" + std::string(name) + "\"");
}

std::size_t LinearCategory::dim(ObjectIndex src, ObjectIndex dst) const {
    const auto it = homs_.find(HomKey{src, dst});
    return it == homs_.end() ? 0 : it->second.size();
}

std::span<const std::string> LinearCategory::basis(ObjectIndex src, ObjectIndex dst) const {
    const auto it = homs_.find(HomKey{src, dst});
    if (it == homs_.end()) {
        return {};
    }
    return it->second;
}

std::size_t LinearCategory::total_dimension() const {
    std::size_t total = 0;
    for (const auto& [key, basis] : homs_) {
        total += basis.size();
    }
    return total;
}

std::optional<LinearCategory::BasisRef> LinearCategory::find_basis(std::string_view name) const {
    for (const auto& [key, basis] : homs_) {
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (basis[i] == name) {
                return BasisRef{key, i};
            }
        }
    }
    return std::nullopt;
}

Vector LinearCategory::basis_vector(ObjectIndex src, ObjectIndex dst, std::size_t i) const {
    Vector v = zero(src, dst);
    v.at(i) = 1;
    return v;
}

Vector LinearCategory::zero(ObjectIndex src, ObjectIndex dst) const {
    return zero_vector(field_, dim(src, dst));
}

const Vector* LinearCategory::structure_constant(ObjectIndex x, ObjectIndex y, ObjectIndex z, std::size_t i,
                                                 std::size_t j) const {
    const auto it = composition_.find(Triple{x, y, z});
    if (it == composition_.end()) {
        return nullptr;
    }
    const Vector& v = it->second.at(j * dim(x, y) + i);
    return v.empty() ? nullptr : &v;
}

Vector LinearCategory::compose(ObjectIndex x, ObjectIndex y, ObjectIndex z, const Vector& g,
                               const Vector& f) const {
    const std::size_t dxy = dim(x, y);
    const std::size_t dyz = dim(y, z);
    if (f.size() != dxy || g.size() != dyz) {
        throw std::invalid_argument("compose: coordinate vectors do not match hom dimensions");
    }
    Vector out = zero(x, z);
    const auto it = composition_.find(Triple{x, y, z});
    if (it == composition_.end()) {
        return out;
    }
    for (std::size_t j = 0; j < dyz; ++j) {
        if (Field::is_zero(g[j])) {
            continue;
        }
        for (std::size_t i = 0; i < dxy; ++i) {
            if (Field::is_zero(f[i])) {
                continue;
            }
            const Vector& c = it->second[j * dxy + i];
            if (c.empty()) {
                continue;
            }
            const Scalar scale = field_.mul(g[j], f[i]);
            out = axpy(field_, out, scale, c);
        }
    }
    return out;
}

bool operator==(const LinearCategory& a, const LinearCategory& b) {
    return a.field_ == b.field_ && a.objects_ == b.objects_ && a.homs_ == b.homs_ &&
           a.identities_ == b.identities_ && a.composition_ == b.composition_;
}

CategoryBuilder::CategoryBuilder(Field field, std::vector<std::string> objects) : category_(field) {
    std::sort(objects.begin(), objects.end());
    if (std::adjacent_find(objects.begin(), objects.end()) != objects.end()) {
        throw std::invalid_argument("duplicate object name");
    }
    if (std::any_of(objects.begin(), objects.end(), [](const auto& s) { return s.empty(); })) {
        throw std::invalid_argument("empty object name");
    }
    category_.objects_ = std::move(objects);
    category_.identities_.assign(category_.objects_.size(), Vector{});
}

CategoryBuilder& CategoryBuilder::set_hom(ObjectIndex src, ObjectIndex dst, std::vector<std::string> basis) {
    if (src >= category_.objects_.size() || dst >= category_.objects_.size()) {
        throw std::out_of_range("set_hom: object index out of range");
    }
    if (basis.empty()) {
        category_.homs_.erase(HomKey{src, dst});
    } else {
        category_.homs_[HomKey{src, dst}] = std::move(basis);
    }
    return *this;
}

CategoryBuilder& CategoryBuilder::set_identity(ObjectIndex x, Vector coordinates) {
    for (auto& c : coordinates) {
        c = field().normalize(c);
    }
    category_.identities_.at(x) = std::move(coordinates);
    return *this;
}

CategoryBuilder& CategoryBuilder::set_composition(ObjectIndex x, ObjectIndex y, ObjectIndex z, std::size_t i,
                                                  std::size_t j, Vector result) {
    const std::size_t dxy = dim(x, y);
    const std::size_t dyz = dim(y, z);
    if (i >= dxy || j >= dyz) {
        throw std::out_of_range("set_composition: basis index outside hom space");
    }
    if (result.size() != dim(x, z)) {
        throw std::invalid_argument("set_composition: result has wrong dimension for hom(" +
                                    category_.objects_[x] + ", " + category_.objects_[z] + ")");
    }
    for (auto& c : result) {
        c = field().normalize(c);
    }
    auto& table = category_.composition_[LinearCategory::Triple{x, y, z}];
    table.resize(dxy * dyz);
    table[j * dxy + i] = is_zero_vector(result) ? Vector{} : std::move(result);
    return *this;
}

CategoryBuilder& CategoryBuilder::make_basis_names_unique() {
    std::map<std::string, int> seen;
    for (auto& [key, basis] : category_.homs_) {
        for (auto& name : basis) {
            ++seen[name];
        }
    }
    std::map<std::string, int> next;
    std::set<std::string> taken;
    for (const auto& [name, count] : seen) {
        taken.insert(name);
    }
    for (auto& [key, basis] : category_.homs_) {
        for (auto& name : basis) {
            if (seen[name] < 2) {
                continue;
            }
            int& n = next[name];
            ++n;
            if (n == 1) {
                continue;
            }
            std::string candidate;
            int suffix = n;
            do {
                candidate = name + "#" + std::to_string(suffix++);
            } while (taken.count(candidate) != 0);
            taken.insert(candidate);
            name = candidate;
        }
    }
    return *this;
}

LinearCategory CategoryBuilder::build() && {
    std::set<std::string_view> names;
    for (const auto& [key, basis] : category_.homs_) {
        for (const auto& name : basis) {
            if (!names.insert(name).second) {
                throw std::invalid_argument("basis name \"" + name + "\" is used twice");
            }
        }
    }
    for (ObjectIndex x = 0; x < category_.objects_.size(); ++x) {
        auto& id = category_.identities_[x];
        if (id.empty()) {
            id = category_.zero(x, x);
        } else if (id.size() != dim(x, x)) {
            throw std::invalid_argument("identity of \"" + category_.objects_[x] + "\" has wrong dimension");
        }
    }
    // Composition tables may have been created before a hom was resized.
    for (auto it = category_.composition_.begin(); it != category_.composition_.end();) {
        const auto [x, y, z] = it->first;
        if (dim(x, y) == 0 || dim(y, z) == 0) {
            throw std::invalid_argument("composition table refers to an absent hom space");
        }
        if (std::all_of(it->second.begin(), it->second.end(), [](const Vector& v) { return v.empty(); })) {
            it = category_.composition_.erase(it);
        } else {
            it->second.resize(dim(x, y) * dim(y, z));
            ++it;
        }
    }
    return std::move(category_);
}

std::string_view to_string(Violation::Kind kind) {
    switch (kind) {
        case Violation::Kind::Structure: return "structure";
        case Violation::Kind::Associativity: return "associativity";
        case Violation::Kind::LeftUnit: return "left-unit";
        case Violation::Kind::RightUnit: return "right-unit";
        case Violation::Kind::Centrality: return "centrality";
        case Violation::Kind::ObjectMap: return "object-map";
        case Violation::Kind::Dimension: return "dimension";
        case Violation::Kind::ZeroHom: return "zero-hom";
        case Violation::Kind::Identity: return "identity";
        case Violation::Kind::Composition: return "composition";
    }
    return "unknown";
}

ValidationReport validate_category(const LinearCategory& c) {
    ValidationReport report;
    const std::size_t n = c.object_count();
    const auto name = [&](ObjectIndex s, ObjectIndex d, std::size_t i) { return c.basis(s, d)[i]; };

    // Units: 1_y∘f = f = f∘1_x.
    for (const auto& [key, basis] : c.homs()) {
        const auto [x, y] = key;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const Vector f = c.basis_vector(x, y, i);
            if (c.compose(x, y, y, c.identity(y), f) != f) {
                report.violations.push_back({Violation::Kind::LeftUnit,
                                             "1_" + c.object_name(y) + " ∘ " + basis[i] + " != " + basis[i],
                                             {basis[i]}});
            }
            if (c.compose(x, x, y, f, c.identity(x)) != f) {
                report.violations.push_back({Violation::Kind::RightUnit,
                                             basis[i] + " ∘ 1_" + c.object_name(x) + " != " + basis[i],
                                             {basis[i]}});
            }
        }
    }

    // Centrality of 1_x in End(x).
    for (ObjectIndex x = 0; x < n; ++x) {
        for (std::size_t i = 0; i < c.dim(x, x); ++i) {
            const Vector e = c.basis_vector(x, x, i);
            if (c.compose(x, x, x, c.identity(x), e) != c.compose(x, x, x, e, c.identity(x))) {
                report.violations.push_back({Violation::Kind::Centrality,
                                             "1_" + c.object_name(x) + " does not commute with " + name(x, x, i),
                                             {name(x, x, i)}});
            }
        }
    }

    // Associativity on composable basis triples f: w→x, g: x→y, h: y→z.
    for (const auto& [kf, bf] : c.homs()) {
        const auto [w, x] = kf;
        for (const auto& [kg, bg] : c.homs()) {
            if (kg.src != x) {
                continue;
            }
            const ObjectIndex y = kg.dst;
            for (const auto& [kh, bh] : c.homs()) {
                if (kh.src != y) {
                    continue;
                }
                const ObjectIndex z = kh.dst;
                for (std::size_t i = 0; i < bf.size(); ++i) {
                    const Vector f = c.basis_vector(w, x, i);
                    for (std::size_t j = 0; j < bg.size(); ++j) {
                        const Vector g = c.basis_vector(x, y, j);
                        const Vector gf = c.compose(w, x, y, g, f);
                        for (std::size_t k = 0; k < bh.size(); ++k) {
                            const Vector h = c.basis_vector(y, z, k);
                            const Vector left = c.compose(w, x, z, c.compose(x, y, z, h, g), f);
                            const Vector right = c.compose(w, y, z, h, gf);
                            if (left != right) {
                                report.violations.push_back(
                                    {Violation::Kind::Associativity,
                                     "(" + bh[k] + " ∘ " + bg[j] + ") ∘ " + bf[i] + " != " + bh[k] + " ∘ (" +
                                         bg[j] + " ∘ " + bf[i] + ")",
                                     {bf[i], bg[j], bh[k]}});
                            }
                        }
                    }
                }
            }
        }
    }
    return report;
}

bool is_nonzero_walk(const LinearCategory& c, const SignedWalk& walk) {
    ObjectIndex at = walk.origin;
    for (const auto& step : walk.steps) {
        if (step.sign != 1 && step.sign != -1) {
            return false;
        }
        if (step.source >= c.object_count() || step.target >= c.object_count()) {
            return false;
        }
        if (step.morphism.size() != c.dim(step.source, step.target) || is_zero_vector(step.morphism)) {
            return false;
        }
        if (step.start() != at) {
            return false;
        }
        at = step.end();
    }
    return true;
}

namespace {

/// Undirected adjacency over pairs of distinct objects with a non-zero hom.
std::vector<std::vector<ObjectIndex>> walk_graph(const LinearCategory& c) {
    std::vector<std::set<ObjectIndex>> adj(c.object_count());
    for (const auto& [key, basis] : c.homs()) {
        if (key.src != key.dst) {
            adj[key.src].insert(key.dst);
            adj[key.dst].insert(key.src);
        }
    }
    std::vector<std::vector<ObjectIndex>> out;
    out.reserve(adj.size());
    for (auto& s : adj) {
        out.emplace_back(s.begin(), s.end());
    }
    return out;
}

}  // namespace

std::optional<SignedWalk> find_walk(const LinearCategory& c, ObjectIndex from, ObjectIndex to) {
    const auto adj = walk_graph(c);
    std::vector<std::optional<ObjectIndex>> parent(c.object_count());
    std::vector<bool> seen(c.object_count(), false);
    std::deque<ObjectIndex> queue{from};
    seen.at(from) = true;
    while (!queue.empty()) {
        const ObjectIndex x = queue.front();
        queue.pop_front();
        for (ObjectIndex y : adj[x]) {
            if (!seen[y]) {
                seen[y] = true;
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    if (!seen.at(to)) {
        return std::nullopt;
    }
    std::vector<ObjectIndex> path{to};
    while (path.back() != from) {
        path.push_back(*parent[path.back()]);
    }
    std::reverse(path.begin(), path.end());
    SignedWalk walk{from, {}};
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        const ObjectIndex a = path[k];
        const ObjectIndex b = path[k + 1];
        if (c.dim(a, b) > 0) {
            walk.steps.push_back(WalkStep{a, b, c.basis_vector(a, b, 0), 1});
        } else {
            walk.steps.push_back(WalkStep{b, a, c.basis_vector(b, a, 0), -1});
        }
    }
    return walk;
}

Components connected_components(const LinearCategory& c) {
    const auto adj = walk_graph(c);
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    Components out;
    out.part_of.assign(c.object_count(), unset);
    for (ObjectIndex start = 0; start < c.object_count(); ++start) {
        if (out.part_of[start] != unset) {
            continue;
        }
        const std::size_t id = out.parts.size();
        std::vector<ObjectIndex> members;
        std::deque<ObjectIndex> queue{start};
        out.part_of[start] = id;
        while (!queue.empty()) {
            const ObjectIndex x = queue.front();
            queue.pop_front();
            members.push_back(x);
            for (ObjectIndex y : adj[x]) {
                if (out.part_of[y] == unset) {
                    out.part_of[y] = id;
                    queue.push_back(y);
                }
            }
        }
        std::sort(members.begin(), members.end());
        out.parts.push_back(std::move(members));
    }
    return out;
}

}  // namespace covcat
