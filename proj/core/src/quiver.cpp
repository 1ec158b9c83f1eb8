// SPDX-License-Identifier: Apache-2.0
#include "covcat/quiver.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace covcat {

namespace {

using Path = std::vector<std::size_t>;

struct QuiverIndex {
    std::map<std::string, std::size_t> arrow;
    std::vector<std::size_t> arrow_src;  ///< category object index
    std::vector<std::size_t> arrow_dst;
};

std::string path_name(const Quiver& q, const std::string& vertex, const Path& p) {
    if (p.empty()) {
        return "id_" + vertex;
    }
    std::string name;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        if (!name.empty()) {
            name += "*";
        }
        name += q.arrows[*it].name;
    }
    return name;
}

/// Longest first, then by name.
bool path_order(const Quiver& q, const Path& a, const Path& b) {
    if (a.size() != b.size()) {
        return a.size() > b.size();
    }
    return path_name(q, "", a) < path_name(q, "", b);
}

void require_acyclic(const LinearCategory& shape, const QuiverIndex& index) {
    const std::size_t n = shape.object_count();
    std::vector<std::size_t> indegree(n, 0);
    std::vector<std::vector<std::size_t>> out(n);
    for (std::size_t a = 0; a < index.arrow_src.size(); ++a) {
        out[index.arrow_src[a]].push_back(index.arrow_dst[a]);
        ++indegree[index.arrow_dst[a]];
    }
    std::vector<std::size_t> ready;
    for (std::size_t v = 0; v < n; ++v) {
        if (indegree[v] == 0) {
            ready.push_back(v);
        }
    }
    std::size_t visited = 0;
    while (!ready.empty()) {
        const std::size_t v = ready.back();
        ready.pop_back();
        ++visited;
        for (std::size_t w : out[v]) {
            if (--indegree[w] == 0) {
                ready.push_back(w);
            }
        }
    }
    if (visited != n) {
        throw std::invalid_argument("quiver has an oriented cycle; path categories need an acyclic quiver");
    }
}

}  // namespace

Vector PathCategory::element(const std::string& src, const std::string& dst,
                             const std::vector<PathTerm>& combination) const {
    const ObjectIndex x = category->index_of(src);
    const ObjectIndex y = category->index_of(dst);
    const HomKey key{x, y};
    const Field& field = category->field();
    const auto paths_it = all_paths.find(key);
    if (paths_it == all_paths.end()) {
        if (combination.empty()) {
            return {};
        }
        throw std::invalid_argument("no paths from " + src + " to " + dst);
    }
    const auto& paths = paths_it->second;
    Vector v = zero_vector(field, paths.size());
    for (const auto& term : combination) {
        Path p;
        for (const auto& name : term.path) {
            const auto it = std::find_if(quiver.arrows.begin(), quiver.arrows.end(),
                                         [&](const Arrow& a) { return a.name == name; });
            if (it == quiver.arrows.end()) {
                throw std::invalid_argument("unknown arrow \"" + name + "\"");
            }
            p.push_back(static_cast<std::size_t>(it - quiver.arrows.begin()));
        }
        const auto pos = std::find(paths.begin(), paths.end(), p);
        if (pos == paths.end()) {
            throw std::invalid_argument("term is not a path from " + src + " to " + dst);
        }
        auto& slot = v[static_cast<std::size_t>(pos - paths.begin())];
        slot = field.add(slot, field.normalize(term.coeff));
    }
    const Vector reduced = ideal.at(key).reduce(v);
    Vector coords;
    const auto basis_it = basis_paths.find(key);
    if (basis_it == basis_paths.end()) {
        return coords;
    }
    for (const auto& bp : basis_it->second) {
        const auto pos = std::find(paths.begin(), paths.end(), bp);
        coords.push_back(reduced[static_cast<std::size_t>(pos - paths.begin())]);
    }
    return coords;
}

PathCategory path_category(const Quiver& quiver, const std::vector<Relation>& relations, const Field& field) {
    CategoryBuilder builder(field, quiver.vertices);
    const std::size_t n = builder.objects().size();

    QuiverIndex index;
    for (std::size_t a = 0; a < quiver.arrows.size(); ++a) {
        const Arrow& arrow = quiver.arrows[a];
        if (arrow.name.empty() || !index.arrow.emplace(arrow.name, a).second) {
            throw std::invalid_argument("duplicate or empty arrow name \"" + arrow.name + "\"");
        }
        const auto& objs = builder.objects();
        const auto has = [&](const std::string& v) { return std::binary_search(objs.begin(), objs.end(), v); };
        if (!has(arrow.source) || !has(arrow.target)) {
            throw std::invalid_argument("arrow \"" + arrow.name + "\" has an endpoint that is not a vertex");
        }
        index.arrow_src.push_back(builder.index_of(arrow.source));
        index.arrow_dst.push_back(builder.index_of(arrow.target));
    }

    {
        // Topological check on a bare copy of the object set.
        CategoryBuilder shape(field, quiver.vertices);
        require_acyclic(std::move(shape).build(), index);
    }

    // All paths, grouped by endpoints.
    std::map<HomKey, std::vector<Path>> paths;
    for (ObjectIndex x = 0; x < n; ++x) {
        std::vector<std::pair<ObjectIndex, Path>> stack{{x, {}}};
        while (!stack.empty()) {
            auto [at, p] = stack.back();
            stack.pop_back();
            paths[HomKey{x, at}].push_back(p);
            for (std::size_t a = 0; a < quiver.arrows.size(); ++a) {
                if (index.arrow_src[a] == at) {
                    Path next = p;
                    next.push_back(a);
                    stack.emplace_back(index.arrow_dst[a], std::move(next));
                }
            }
        }
    }
    for (auto& [key, list] : paths) {
        std::sort(list.begin(), list.end(), [&](const Path& a, const Path& b) { return path_order(quiver, a, b); });
    }
    const auto position = [&](const HomKey& key, const Path& p) {
        const auto& list = paths.at(key);
        return static_cast<std::size_t>(std::find(list.begin(), list.end(), p) - list.begin());
    };

    // Relations, closed under pre- and post-composition with paths.
    std::map<HomKey, std::vector<Vector>> generators;
    for (const auto& relation : relations) {
        if (relation.empty()) {
            throw std::invalid_argument("empty relation");
        }
        std::optional<HomKey> ends;
        std::vector<std::pair<Path, Scalar>> terms;
        for (const auto& term : relation) {
            if (term.path.empty()) {
                throw std::invalid_argument("relation term with an empty path");
            }
            Path p;
            for (const auto& name : term.path) {
                const auto it = index.arrow.find(name);
                if (it == index.arrow.end()) {
                    throw std::invalid_argument("relation uses unknown arrow \"" + name + "\"");
                }
                if (!p.empty() && index.arrow_dst[p.back()] != index.arrow_src[it->second]) {
                    throw std::invalid_argument("relation term is not a composable path");
                }
                p.push_back(it->second);
            }
            const HomKey key{index.arrow_src[p.front()], index.arrow_dst[p.back()]};
            if (ends && !(*ends == key)) {
                throw std::invalid_argument("relation combines paths with different endpoints");
            }
            ends = key;
            terms.emplace_back(std::move(p), field.normalize(term.coeff));
        }
        const ObjectIndex u = ends->src;
        const ObjectIndex v = ends->dst;
        for (ObjectIndex x = 0; x < n; ++x) {
            const auto before = paths.find(HomKey{x, u});
            if (before == paths.end()) {
                continue;
            }
            for (ObjectIndex y = 0; y < n; ++y) {
                const auto after = paths.find(HomKey{v, y});
                if (after == paths.end()) {
                    continue;
                }
                const HomKey target{x, y};
                for (const auto& pre : before->second) {
                    for (const auto& post : after->second) {
                        Vector g = zero_vector(field, paths.at(target).size());
                        for (const auto& [mid, coeff] : terms) {
                            Path full = pre;
                            full.insert(full.end(), mid.begin(), mid.end());
                            full.insert(full.end(), post.begin(), post.end());
                            auto& slot = g[position(target, full)];
                            slot = field.add(slot, coeff);
                        }
                        generators[target].push_back(std::move(g));
                    }
                }
            }
        }
    }

    PathCategory out;
    out.quiver = quiver;
    for (const auto& [key, list] : paths) {
        const auto gen = generators.find(key);
        EchelonBasis ideal = EchelonBasis::span(field, list.size(),
                                                gen == generators.end() ? std::vector<Vector>{} : gen->second);
        std::vector<bool> pivot(list.size(), false);
        for (auto p : ideal.pivots()) {
            pivot[p] = true;
        }
        std::vector<Path> basis;
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (!pivot[i]) {
                basis.push_back(list[i]);
            }
        }
        // Shortest first in the emitted basis.
        std::reverse(basis.begin(), basis.end());
        std::stable_sort(basis.begin(), basis.end(), [&](const Path& a, const Path& b) {
            if (a.size() != b.size()) {
                return a.size() < b.size();
            }
            return path_name(quiver, "", a) < path_name(quiver, "", b);
        });
        std::vector<std::string> names;
        for (const auto& p : basis) {
            names.push_back(path_name(quiver, builder.objects()[key.src], p));
        }
        builder.set_hom(key.src, key.dst, std::move(names));
        out.all_paths.emplace(key, list);
        out.ideal.emplace(key, std::move(ideal));
        if (!basis.empty()) {
            out.basis_paths.emplace(key, std::move(basis));
        }
    }

    // Reduction of a single path to basis coordinates.
    const auto reduce_path = [&](const HomKey& key, const Path& p) {
        const auto& list = paths.at(key);
        Vector v = zero_vector(field, list.size());
        v[position(key, p)] = 1;
        const Vector r = out.ideal.at(key).reduce(v);
        Vector coords;
        const auto it = out.basis_paths.find(key);
        if (it != out.basis_paths.end()) {
            for (const auto& bp : it->second) {
                coords.push_back(r[position(key, bp)]);
            }
        }
        return coords;
    };

    for (ObjectIndex x = 0; x < n; ++x) {
        const HomKey endo{x, x};
        if (out.basis_paths.count(endo) != 0) {
            builder.set_identity(x, reduce_path(endo, {}));
        }
    }
    for (const auto& [kf, bf] : out.basis_paths) {
        for (const auto& [kg, bg] : out.basis_paths) {
            if (kg.src != kf.dst) {
                continue;
            }
            const HomKey kz{kf.src, kg.dst};
            if (out.basis_paths.count(kz) == 0) {
                continue;
            }
            for (std::size_t i = 0; i < bf.size(); ++i) {
                for (std::size_t j = 0; j < bg.size(); ++j) {
                    Path full = bf[i];
                    full.insert(full.end(), bg[j].begin(), bg[j].end());
                    Vector r = reduce_path(kz, full);
                    if (!is_zero_vector(r)) {
                        builder.set_composition(kf.src, kf.dst, kg.dst, i, j, std::move(r));
                    }
                }
            }
        }
    }
    out.category = std::make_shared<const LinearCategory>(std::move(builder).build());
    return out;
}

LinearFunctor functor_from_arrow_images(const PathCategory& source, const CategoryPtr& target,
                                        const std::map<std::string, std::string>& object_map,
                                        const std::map<std::string, Vector>& arrow_images) {
    const LinearCategory& src = *source.category;
    const Field& field = src.field();
    std::vector<ObjectIndex> objects(src.object_count());
    for (ObjectIndex x = 0; x < objects.size(); ++x) {
        const auto it = object_map.find(src.object_name(x));
        if (it == object_map.end()) {
            throw std::invalid_argument("object " + src.object_name(x) + " has no image");
        }
        objects[x] = target->index_of(it->second);
    }
    std::vector<Vector> images;
    for (const auto& arrow : source.quiver.arrows) {
        const auto it = arrow_images.find(arrow.name);
        if (it == arrow_images.end()) {
            throw std::invalid_argument("arrow " + arrow.name + " has no image");
        }
        const ObjectIndex fs = objects[src.index_of(arrow.source)];
        const ObjectIndex ft = objects[src.index_of(arrow.target)];
        if (it->second.size() != target->dim(fs, ft)) {
            throw std::invalid_argument("image of arrow " + arrow.name + " has the wrong dimension");
        }
        Vector img = it->second;
        for (auto& c : img) {
            c = field.normalize(c);
        }
        images.push_back(std::move(img));
    }

    std::map<HomKey, Matrix> matrices;
    for (const auto& [key, basis] : source.basis_paths) {
        const ObjectIndex fx = objects[key.src];
        std::vector<Vector> columns;
        for (const auto& p : basis) {
            Vector image = target->identity(fx);
            ObjectIndex at = fx;
            for (std::size_t a : p) {
                const ObjectIndex next = objects[src.index_of(source.quiver.arrows[a].target)];
                image = target->compose(fx, at, next, images[a], image);
                at = next;
            }
            columns.push_back(std::move(image));
        }
        matrices.emplace(key, Matrix::from_columns(field, target->dim(fx, objects[key.dst]), columns));
    }
    return LinearFunctor(source.category, target, std::move(objects), std::move(matrices));
}

}  // namespace covcat
