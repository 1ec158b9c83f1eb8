// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "covcat/category.hpp"
#include "covcat/functor.hpp"

namespace covcat {

struct Arrow {
    std::string name;
    std::string source;
    std::string target;
};

/// A finite quiver. path_category() requires it to be acyclic.
struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
};

/// coeff · (arrow path). Arrows are listed in traversal order, so
/// {"b", "c"} is the composite c∘b.
struct PathTerm {
    std::vector<std::string> path;
    Scalar coeff;
};

/// A linear combination of parallel paths; empty paths are not allowed.
using Relation = std::vector<PathTerm>;

/// A path category together with the path that each basis morphism stands
/// for. Basis morphisms are paths (identities are the trivial paths "id_x",
/// composites are named "c*b" for c∘b).
struct PathCategory {
    CategoryPtr category;
    Quiver quiver;
    /// For each present hom, the arrow-index path of every basis morphism
    /// (empty path for the identity).
    std::map<HomKey, std::vector<std::vector<std::size_t>>> basis_paths;
    /// Echelon basis of the relation ideal in each hom, over the paths listed
    /// in `all_paths` (longest first).
    std::map<HomKey, std::vector<std::vector<std::size_t>>> all_paths;
    std::map<HomKey, EchelonBasis> ideal;

    /// Coordinates of a combination of paths from `src` to `dst` in the
    /// basis of the quotient. Throws on malformed or non-parallel paths.
    [[nodiscard]] Vector element(const std::string& src, const std::string& dst,
                                 const std::vector<PathTerm>& combination) const;
};

/// Throws std::invalid_argument for cyclic quivers and malformed relations.
[[nodiscard]] PathCategory path_category(const Quiver& quiver, const std::vector<Relation>& relations,
                                         const Field& field);

/// The functor out of a path category determined by arrow images. Every
/// arrow must be given an image in hom(F(source), F(target)).
[[nodiscard]] LinearFunctor functor_from_arrow_images(const PathCategory& source, const CategoryPtr& target,
                                                      const std::map<std::string, std::string>& object_map,
                                                      const std::map<std::string, Vector>& arrow_images);

}  // namespace covcat
