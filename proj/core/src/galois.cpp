// SPDX-License-Identifier: Apache-2.0
#include "covcat/galois.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace covcat {

namespace {

void require_connected(const LinearCategory& c, const char* what) {
    if (!connected_components(c).connected()) {
        throw PreconditionError(PreconditionError::Reason::NotConnected, std::string(what) + " is not connected");
    }
}

/// Transport between the fibre blocks at y and at its image: the matrix
/// (block at image)⁻¹ · (block at y), mapping the summands at y onto the
/// summands at the image.
struct Transport {
    const FibreBlock* here = nullptr;
    const FibreBlock* there = nullptr;
    Matrix matrix;
};

std::optional<Transport> transport(const CoveringCertificate& cert, StarSide side, ObjectIndex y, ObjectIndex hy,
                                   ObjectIndex other) {
    const FibreBlock* here = cert.find(side, y, other);
    const FibreBlock* there = cert.find(side, hy, other);
    if (here == nullptr || there == nullptr) {
        return std::nullopt;
    }
    return Transport{here, there, *there->inverse * here->matrix};
}

std::size_t summand_width(const FibreBlock& block, std::size_t k) {
    const std::size_t end = k + 1 < block.offsets.size() ? block.offsets[k + 1] : block.matrix.cols();
    return end - block.offsets[k];
}

std::optional<std::size_t> partner_position(const FibreBlock& block, ObjectIndex partner) {
    const auto it = std::find(block.partners.begin(), block.partners.end(), partner);
    if (it == block.partners.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - block.partners.begin());
}

/// Whether the component `part` maps isomorphically onto the base.
bool component_isomorphic(const LinearFunctor& f, const std::vector<ObjectIndex>& part) {
    const LinearCategory& base = f.target();
    if (part.size() != base.object_count()) {
        return false;
    }
    std::set<ObjectIndex> hit;
    for (ObjectIndex x : part) {
        hit.insert(f(x));
    }
    if (hit.size() != base.object_count()) {
        return false;
    }
    for (ObjectIndex x : part) {
        for (ObjectIndex y : part) {
            const std::size_t ds = f.source().dim(x, y);
            if (ds != base.dim(f(x), f(y))) {
                return false;
            }
            if (ds > 0 && !rank_and_inverse(f.matrix(x, y)).inverse) {
                return false;
            }
        }
    }
    return true;
}

/// The inverse of f on an isomorphic component, as a functor B → C.
LinearFunctor section_on(const LinearFunctor& f, const std::vector<ObjectIndex>& part) {
    const LinearCategory& base = f.target();
    std::vector<ObjectIndex> lift(base.object_count());
    for (ObjectIndex x : part) {
        lift[f(x)] = x;
    }
    std::map<HomKey, Matrix> matrices;
    for (const auto& [key, basis] : base.homs()) {
        matrices.emplace(key, *rank_and_inverse(f.matrix(lift[key.src], lift[key.dst])).inverse);
    }
    return LinearFunctor(f.target_ptr(), f.source_ptr(), std::move(lift), std::move(matrices));
}

}  // namespace

std::optional<LinearFunctor> lift_endofunctor(const CoveringCertificate& cert, ObjectIndex from, ObjectIndex to) {
    const LinearFunctor& f = cert.functor;
    const LinearCategory& c = f.source();
    require_connected(c, "the covering's source");
    if (f(from) != f(to)) {
        return std::nullopt;
    }
    const std::size_t n = c.object_count();
    std::vector<std::optional<ObjectIndex>> image(n);
    image[from] = to;
    std::deque<ObjectIndex> queue{from};
    while (!queue.empty()) {
        const ObjectIndex y = queue.front();
        queue.pop_front();
        for (ObjectIndex z = 0; z < n; ++z) {
            if (image[z] || z == y) {
                continue;
            }
            const bool outgoing = c.dim(y, z) > 0;
            if (!outgoing && c.dim(z, y) == 0) {
                continue;
            }
            const StarSide side = outgoing ? StarSide::Outgoing : StarSide::Incoming;
            const auto t = transport(cert, side, y, *image[y], f(z));
            if (!t) {
                return std::nullopt;
            }
            const std::size_t k = *partner_position(*t->here, z);
            const std::size_t col0 = t->here->offsets[k];
            const std::size_t width = summand_width(*t->here, k);
            // The image of hom(y, z) must land in a single summand.
            std::optional<std::size_t> landing;
            for (std::size_t r = 0; r < t->matrix.rows(); ++r) {
                bool nonzero = false;
                for (std::size_t col = col0; col < col0 + width; ++col) {
                    nonzero = nonzero || !Field::is_zero(t->matrix.at(r, col));
                }
                if (!nonzero) {
                    continue;
                }
                std::size_t owner = 0;
                while (owner + 1 < t->there->offsets.size() && t->there->offsets[owner + 1] <= r) {
                    ++owner;
                }
                if (landing && *landing != owner) {
                    return std::nullopt;
                }
                landing = owner;
            }
            if (!landing) {
                return std::nullopt;
            }
            image[z] = t->there->partners[*landing];
            queue.push_back(z);
        }
    }

    std::vector<ObjectIndex> objects(n);
    for (ObjectIndex x = 0; x < n; ++x) {
        if (!image[x]) {
            return std::nullopt;
        }
        objects[x] = *image[x];
    }

    std::map<HomKey, Matrix> matrices;
    for (const auto& [key, basis] : c.homs()) {
        const auto [y, z] = key;
        const auto t = transport(cert, StarSide::Outgoing, y, objects[y], f(z));
        if (!t) {
            return std::nullopt;
        }
        const std::size_t k = *partner_position(*t->here, z);
        const auto landing = partner_position(*t->there, objects[z]);
        if (!landing) {
            return std::nullopt;
        }
        const std::size_t col0 = t->here->offsets[k];
        const std::size_t width = summand_width(*t->here, k);
        const std::size_t row0 = t->there->offsets[*landing];
        const std::size_t height = summand_width(*t->there, *landing);
        for (std::size_t r = 0; r < t->matrix.rows(); ++r) {
            if (r >= row0 && r < row0 + height) {
                continue;
            }
            for (std::size_t col = col0; col < col0 + width; ++col) {
                if (!Field::is_zero(t->matrix.at(r, col))) {
                    return std::nullopt;
                }
            }
        }
        matrices.emplace(key, t->matrix.block(row0, col0, height, width));
    }

    LinearFunctor h(f.source_ptr(), f.source_ptr(), std::move(objects), std::move(matrices));
    if (!validate_functor(h).ok() || !functor_equal(compose(f, h), f) || !is_isomorphism(h)) {
        return std::nullopt;
    }
    return h;
}

bool DeckGroup::acts_freely() const {
    for (std::size_t g = 0; g < elements.size(); ++g) {
        if (g == identity) {
            continue;
        }
        for (ObjectIndex x = 0; x < action[g].size(); ++x) {
            if (action[g][x] == x) {
                return false;
            }
        }
    }
    return true;
}

bool DeckGroup::is_transitive_on(std::span<const ObjectIndex> fibre) const {
    if (fibre.empty()) {
        return true;
    }
    std::set<ObjectIndex> orbit;
    for (const auto& row : action) {
        orbit.insert(row[fibre.front()]);
    }
    return std::all_of(fibre.begin(), fibre.end(), [&](ObjectIndex x) { return orbit.count(x) != 0; });
}

DeckGroup deck_group(const CoveringCertificate& cert) {
    const LinearFunctor& f = cert.functor;
    require_connected(f.source(), "the covering's source");
    DeckGroup group;
    const auto& fibre = cert.fibres.front();
    group.anchor = fibre.front();
    for (ObjectIndex x : fibre) {
        if (auto h = lift_endofunctor(cert, group.anchor, x)) {
            if (x == group.anchor) {
                group.identity = group.elements.size();
            }
            group.action.push_back(h->object_map());
            group.elements.push_back(std::move(*h));
        }
    }
    const std::size_t n = group.elements.size();
    const auto locate = [&](const LinearFunctor& h) -> std::size_t {
        for (std::size_t k = 0; k < n; ++k) {
            if (group.action[k][group.anchor] == h(group.anchor)) {
                if (!functor_equal(group.elements[k], h)) {
                    break;
                }
                return k;
            }
        }
        throw std::logic_error("deck_group: the lifts are not closed under composition");
    };
    group.products.assign(n, std::vector<std::size_t>(n, 0));
    group.inverses.assign(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t k = locate(compose(group.elements[a], group.elements[b]));
            group.products[a][b] = k;
            if (k == group.identity) {
                group.inverses[a] = b;
            }
        }
        if (group.inverses[a] == n) {
            throw std::logic_error("deck_group: an element has no inverse among the lifts");
        }
    }
    return group;
}

std::optional<Section> sections_through(const CoveringCertificate& cert, ObjectIndex x) {
    const LinearFunctor& f = cert.functor;
    require_connected(f.target(), "the base");
    const Components comps = connected_components(f.source());
    const auto& part = comps.parts[comps.part_of.at(x)];
    if (!component_isomorphic(f, part)) {
        return std::nullopt;
    }
    return Section{section_on(f, part)};
}

TrivialityResult is_trivial_covering(const CoveringCertificate& cert) {
    const LinearFunctor& f = cert.functor;
    require_connected(f.target(), "the base");
    TrivialityResult result;
    result.components = connected_components(f.source());
    for (std::size_t k = 0; k < result.components.parts.size(); ++k) {
        const bool iso = component_isomorphic(f, result.components.parts[k]);
        result.component_isomorphic.push_back(iso);
        if (!iso && !result.first_failure) {
            result.first_failure = k;
        }
    }
    result.trivial = !result.first_failure.has_value();
    if (!result.trivial) {
        return result;
    }

    const auto& parts = result.components.parts;
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        labels.push_back(std::to_string(k));
    }
    CategoryWithFunctor product = product_with_set(f.target_ptr(), labels);
    const LinearCategory& pc = *product.category;
    const LinearCategory& base = f.target();
    std::vector<ObjectIndex> objects(pc.object_count());
    std::vector<std::vector<ObjectIndex>> lifts(parts.size(), std::vector<ObjectIndex>(base.object_count()));
    for (std::size_t k = 0; k < parts.size(); ++k) {
        for (ObjectIndex x : parts[k]) {
            lifts[k][f(x)] = x;
        }
        for (ObjectIndex b = 0; b < base.object_count(); ++b) {
            objects[pc.index_of(pair_name(base.object_name(b), labels[k]))] = lifts[k][b];
        }
    }
    std::map<HomKey, Matrix> matrices;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        for (const auto& [key, basis] : base.homs()) {
            const HomKey pk{pc.index_of(pair_name(base.object_name(key.src), labels[k])),
                            pc.index_of(pair_name(base.object_name(key.dst), labels[k]))};
            matrices.emplace(pk, *rank_and_inverse(f.matrix(lifts[k][key.src], lifts[k][key.dst])).inverse);
        }
    }
    LinearFunctor comparison(product.category, f.source_ptr(), std::move(objects), std::move(matrices));
    if (!is_isomorphism(comparison) || !functor_equal(compose(f, comparison), product.functor)) {
        throw std::logic_error("is_trivial_covering: component isomorphisms do not assemble into B x E");
    }
    result.product = std::move(product);
    result.comparison = std::move(comparison);
    return result;
}

std::string_view to_string(GaloisStatus status) {
    switch (status) {
        case GaloisStatus::NotConnected: return "NotConnected";
        case GaloisStatus::NotCovering: return "NotCovering";
        case GaloisStatus::NonGalois: return "NonGalois";
        case GaloisStatus::Galois: return "Galois";
    }
    return "unknown";
}

std::string_view to_string(GaloisMethod method) {
    return method == GaloisMethod::Direct ? "direct" : "fibre";
}

GaloisVerdict is_galois(const LinearFunctor& f, GaloisMethod method) {
    GaloisVerdict v;
    v.method = method;
    v.components = connected_components(f.source());
    if (!v.components.connected()) {
        v.status = GaloisStatus::NotConnected;
        return v;
    }
    CoveringCheck check = check_covering(f);
    if (!check.certificate) {
        v.status = GaloisStatus::NotCovering;
        v.covering_failure = std::move(check.failure);
        return v;
    }
    v.certificate = std::move(check.certificate);
    v.fibre = v.certificate->fibres.front();

    if (method == GaloisMethod::Direct) {
        v.group = deck_group(*v.certificate);
        v.status = v.group->is_transitive_on(v.fibre) ? GaloisStatus::Galois : GaloisStatus::NonGalois;
        return v;
    }

    const FibreProduct square = fibre_product(f, f);
    v.square_objects = square.category->object_count();
    v.square = square.category;
    CoveringCheck projection = check_covering(square.first_projection);
    if (!projection.certificate) {
        v.status = GaloisStatus::NonGalois;
        v.square_failure = std::move(projection.failure);
        return v;
    }
    v.square_triviality = is_trivial_covering(*projection.certificate);
    v.status = v.square_triviality->trivial ? GaloisStatus::Galois : GaloisStatus::NonGalois;
    return v;
}

Quotient quotient_by_group(const CategoryPtr& c, std::span<const LinearFunctor> group) {
    const std::size_t n = c->object_count();
    if (group.empty()) {
        throw PreconditionError(PreconditionError::Reason::NotFree, "quotient_by_group: empty group");
    }
    const LinearFunctor id = identity_functor(c);
    for (const auto& g : group) {
        if (!same_category(g.source_ptr(), c) || !same_category(g.target_ptr(), c)) {
            throw PreconditionError(PreconditionError::Reason::NotFree,
                                    "quotient_by_group: element is not an endofunctor of the category");
        }
        if (functor_equal(g, id)) {
            continue;
        }
        for (ObjectIndex x = 0; x < n; ++x) {
            if (g(x) == x) {
                throw PreconditionError(PreconditionError::Reason::NotFree,
                                        "quotient_by_group: a non-identity element fixes " + c->object_name(x));
            }
        }
    }

    // to_rep[x]: element carrying x to its representative; from_rep[x]: the reverse.
    std::vector<ObjectIndex> rep(n);
    std::vector<std::size_t> to_rep(n);
    std::vector<std::size_t> from_rep(n);
    for (ObjectIndex x = 0; x < n; ++x) {
        rep[x] = x;
        for (const auto& g : group) {
            rep[x] = std::min(rep[x], g(x));
        }
    }
    for (ObjectIndex x = 0; x < n; ++x) {
        std::optional<std::size_t> down;
        std::optional<std::size_t> up;
        for (std::size_t k = 0; k < group.size(); ++k) {
            if (group[k](x) == rep[x]) {
                down = down ? down : k;
            }
            if (group[k](rep[x]) == x) {
                up = up ? up : k;
            }
        }
        if (!down || !up) {
            throw PreconditionError(PreconditionError::Reason::NotFree,
                                    "quotient_by_group: the elements do not form a group");
        }
        to_rep[x] = *down;
        from_rep[x] = *up;
    }

    std::vector<ObjectIndex> reps;
    std::vector<std::string> names;
    for (ObjectIndex x = 0; x < n; ++x) {
        if (rep[x] == x) {
            reps.push_back(x);
            names.push_back(c->object_name(x));
        }
    }
    CategoryBuilder builder(c->field(), names);
    std::vector<ObjectIndex> orbit_of(n);
    for (ObjectIndex x = 0; x < n; ++x) {
        orbit_of[x] = builder.index_of(c->object_name(rep[x]));
    }
    const std::size_t m = reps.size();
    std::vector<ObjectIndex> representatives(m);
    for (ObjectIndex x : reps) {
        representatives[orbit_of[x]] = x;
    }
    std::vector<std::vector<ObjectIndex>> members(m);
    for (ObjectIndex x = 0; x < n; ++x) {
        members[orbit_of[x]].push_back(x);
    }

    // offset[(a, y)]: where hom(rep(a), y) starts inside hom(a, orbit(y)).
    std::map<std::pair<ObjectIndex, ObjectIndex>, std::size_t> offset;
    for (ObjectIndex a = 0; a < m; ++a) {
        const ObjectIndex xr = representatives[a];
        for (ObjectIndex b = 0; b < m; ++b) {
            std::vector<std::string> basis;
            for (ObjectIndex y : members[b]) {
                offset[{a, y}] = basis.size();
                const auto names_y = c->basis(xr, y);
                basis.insert(basis.end(), names_y.begin(), names_y.end());
            }
            builder.set_hom(a, b, std::move(basis));
        }
    }
    const auto embed = [&](ObjectIndex a, ObjectIndex y, const Vector& v) {
        Vector out = zero_vector(c->field(), 0);
        const ObjectIndex b = orbit_of[y];
        std::size_t width = 0;
        for (ObjectIndex w : members[b]) {
            width += c->dim(representatives[a], w);
        }
        out.assign(width, Scalar(0));
        const std::size_t off = offset.at({a, y});
        for (std::size_t i = 0; i < v.size(); ++i) {
            out[off + i] = v[i];
        }
        return out;
    };

    for (ObjectIndex a = 0; a < m; ++a) {
        const ObjectIndex xr = representatives[a];
        if (c->dim(xr, xr) > 0) {
            builder.set_identity(a, embed(a, xr, c->identity(xr)));
        }
    }
    for (ObjectIndex a = 0; a < m; ++a) {
        const ObjectIndex xr = representatives[a];
        for (ObjectIndex b = 0; b < m; ++b) {
            const ObjectIndex yr = representatives[b];
            for (ObjectIndex y : members[b]) {
                const std::size_t dfy = c->dim(xr, y);
                if (dfy == 0) {
                    continue;
                }
                const LinearFunctor& h = group[from_rep[y]];  // h(yr) = y
                for (ObjectIndex z = 0; z < n; ++z) {
                    const std::size_t dgz = c->dim(yr, z);
                    if (dgz == 0) {
                        continue;
                    }
                    const ObjectIndex hz = h(z);
                    for (std::size_t i = 0; i < dfy; ++i) {
                        const Vector fv = c->basis_vector(xr, y, i);
                        for (std::size_t j = 0; j < dgz; ++j) {
                            const Vector hg = h.apply(yr, z, c->basis_vector(yr, z, j));
                            const Vector product = c->compose(xr, y, hz, hg, fv);
                            if (is_zero_vector(product)) {
                                continue;
                            }
                            builder.set_composition(a, b, orbit_of[z], offset.at({a, y}) + i,
                                                    offset.at({b, z}) + j, embed(a, hz, product));
                        }
                    }
                }
            }
        }
    }
    auto quotient = std::make_shared<const LinearCategory>(std::move(builder).build());

    std::map<HomKey, Matrix> matrices;
    for (const auto& [key, basis] : c->homs()) {
        const auto [x, y] = key;
        const LinearFunctor& k = group[to_rep[x]];  // k(x) = rep(x)
        const ObjectIndex a = orbit_of[x];
        const ObjectIndex b = orbit_of[y];
        Matrix m(c->field(), quotient->dim(a, b), basis.size());
        const Matrix& km = k.matrix(x, y);
        const std::size_t off = offset.at({a, k(y)});
        for (std::size_t r = 0; r < km.rows(); ++r) {
            for (std::size_t col = 0; col < km.cols(); ++col) {
                m.set(off + r, col, km.at(r, col));
            }
        }
        matrices.emplace(key, std::move(m));
    }
    LinearFunctor projection(c, quotient, orbit_of, std::move(matrices));
    return Quotient{quotient, std::move(projection), std::move(orbit_of), std::move(representatives)};
}

StructureIso structure_iso(const LinearFunctor& f) {
    GaloisVerdict verdict = is_galois(f, GaloisMethod::Direct);
    switch (verdict.status) {
        case GaloisStatus::NotConnected:
            throw PreconditionError(PreconditionError::Reason::NotConnected, "structure_iso: source not connected");
        case GaloisStatus::NotCovering:
            throw PreconditionError(PreconditionError::Reason::NotCovering, "structure_iso: not a covering");
        case GaloisStatus::NonGalois:
            throw PreconditionError(PreconditionError::Reason::NotGalois, "structure_iso: covering is not Galois");
        case GaloisStatus::Galois:
            break;
    }
    DeckGroup group = std::move(*verdict.group);
    Quotient quotient = quotient_by_group(f.source_ptr(), group.elements);
    const LinearCategory& q = *quotient.category;
    const LinearCategory& c = f.source();

    std::vector<ObjectIndex> objects(q.object_count());
    for (ObjectIndex a = 0; a < q.object_count(); ++a) {
        objects[a] = f(quotient.representatives[a]);
    }
    std::map<HomKey, Matrix> matrices;
    for (const auto& [key, basis] : q.homs()) {
        const ObjectIndex xr = quotient.representatives[key.src];
        Matrix m(c.field(), f.target().dim(objects[key.src], objects[key.dst]), 0);
        for (ObjectIndex y = 0; y < c.object_count(); ++y) {
            if (quotient.orbit_of[y] == key.dst && c.dim(xr, y) > 0) {
                m = hconcat(m, f.matrix(xr, y));
            }
        }
        matrices.emplace(key, std::move(m));
    }
    LinearFunctor comparison(quotient.category, f.target_ptr(), std::move(objects), std::move(matrices));
    if (!is_isomorphism(comparison) || !functor_equal(compose(comparison, quotient.projection), f)) {
        throw std::logic_error("structure_iso: the induced functor is not an isomorphism factoring the covering");
    }

    bool unique = true;
    for (const auto& [key, basis] : q.homs()) {
        Matrix images(c.field(), basis.size(), 0);
        for (const auto& [ck, cb] : c.homs()) {
            if (quotient.orbit_of[ck.src] == key.src && quotient.orbit_of[ck.dst] == key.dst) {
                images = hconcat(images, quotient.projection.matrix(ck.src, ck.dst));
            }
        }
        unique = unique && rank(images) == basis.size();
    }
    return StructureIso{std::move(group), std::move(quotient), std::move(comparison), unique};
}

UniversalityReport check_universal_against(const LinearFunctor& u, std::span<const LinearFunctor> family) {
    if (!connected_components(u.source()).connected()) {
        throw PreconditionError(PreconditionError::Reason::NotConnected, "universality: source is not connected");
    }
    if (!check_covering(u)) {
        throw PreconditionError(PreconditionError::Reason::NotCovering, "universality: functor is not a covering");
    }
    for (std::size_t k = 0; k < family.size(); ++k) {
        if (!same_category(u.target_ptr(), family[k].target_ptr())) {
            throw PreconditionError(PreconditionError::Reason::Mismatch,
                                    "universality: family member " + std::to_string(k) + " has another base");
        }
        if (is_galois(family[k], GaloisMethod::Direct).status != GaloisStatus::Galois) {
            throw PreconditionError(PreconditionError::Reason::NotGalois,
                                    "universality: family member " + std::to_string(k) + " is not Galois");
        }
    }
    UniversalityReport report;
    report.universal_relative_to_family = true;
    for (const auto& member : family) {
        UniversalityMember result;
        const FibreProduct product = fibre_product(u, member);
        result.product_objects = product.category->object_count();
        CoveringCheck check = check_covering(product.first_projection);
        if (!check.certificate) {
            result.projection_failure = std::move(check.failure);
        } else {
            result.triviality = is_trivial_covering(*check.certificate);
            result.pass = result.triviality->trivial;
        }
        report.universal_relative_to_family = report.universal_relative_to_family && result.pass;
        report.members.push_back(std::move(result));
    }
    return report;
}

}  // namespace covcat
