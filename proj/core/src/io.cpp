// SPDX-License-Identifier: Apache-2.0
#include "covcat/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace covcat::io {

namespace {

const Json& require(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) {
        throw DocumentError(where + ": missing field \"" + key + "\"");
    }
    return j.at(key);
}

std::string require_string(const Json& j, const char* key, const std::string& where) {
    const Json& v = require(j, key, where);
    if (!v.is_string()) {
        throw DocumentError(where + ": field \"" + key + "\" must be a string");
    }
    return v.get<std::string>();
}

const Json& require_array(const Json& j, const char* key, const std::string& where) {
    const Json& v = require(j, key, where);
    if (!v.is_array()) {
        throw DocumentError(where + ": field \"" + key + "\" must be an array");
    }
    return v;
}

Vector vector_from_json(const Field& field, const Json& j, const std::string& where) {
    if (!j.is_array()) {
        throw DocumentError(where + ": expected an array of coefficients");
    }
    Vector v;
    for (const auto& x : j) {
        v.push_back(scalar_from_json(field, x));
    }
    return v;
}

Json vector_to_json(const Vector& v) {
    Json out = Json::array();
    for (const auto& x : v) {
        out.push_back(scalar_to_json(x));
    }
    return out;
}

void check_format(const Json& j, const char* expected) {
    if (j.is_object() && j.contains("format") && j.at("format") != expected) {
        throw DocumentError("expected a " + std::string(expected) + " document, found " +
                            j.at("format").dump());
    }
}

}  // namespace

Json parse_document(const std::string& text, const std::string& label) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < limit; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw DocumentError(label + ":" + std::to_string(line) + ":" + std::to_string(column) +
                                ": JSON syntax error: " + e.what(),
                            line, column);
    }
}

Json read_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DocumentError("cannot open " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_document(buffer.str(), path);
}

std::string dump(const Json& document) {
    return document.dump(2) + "\n";
}

void write_document(const std::string& path, const Json& document) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << dump(document);
}

std::string document_name(const Json& j, const std::string& fallback) {
    if (j.is_object() && j.contains("name") && j.at("name").is_string()) {
        return j.at("name").get<std::string>();
    }
    return fallback;
}

std::string document_format(const Json& j) {
    if (j.is_object() && j.contains("format") && j.at("format").is_string()) {
        return j.at("format").get<std::string>();
    }
    return {};
}

Json field_to_json(const Field& field) {
    if (field.kind() == Field::Kind::Rationals) {
        return Json{{"kind", "Q"}};
    }
    return Json{{"kind", "Fp"}, {"p", field.characteristic()}};
}

Field field_from_json(const Json& j) {
    const std::string kind = require_string(j, "kind", "field");
    if (kind == "Q") {
        return Field::rationals();
    }
    if (kind == "Fp") {
        const Json& p = require(j, "p", "field");
        if (!p.is_number_unsigned() && !(p.is_number_integer() && p.get<long long>() > 0)) {
            throw DocumentError("field: \"p\" must be a positive integer");
        }
        try {
            return Field::prime(p.get<std::uint64_t>());
        } catch (const std::invalid_argument& e) {
            throw DocumentError(std::string("field: ") + e.what());
        }
    }
    throw DocumentError("field: unknown kind \"" + kind + "\"");
}

Json scalar_to_json(const Scalar& s) {
    return Field::format(s);
}

Scalar scalar_from_json(const Field& field, const Json& j) {
    try {
        if (j.is_string()) {
            return field.parse(j.get<std::string>());
        }
        if (j.is_number_integer()) {
            return field.normalize(Scalar(std::to_string(j.get<long long>())));
        }
    } catch (const std::exception& e) {
        throw DocumentError(std::string("coefficient: ") + e.what());
    }
    throw DocumentError("coefficient must be a decimal string or \"num/den\", found " + j.dump());
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        rows.push_back(vector_to_json(m.row(r)));
    }
    return rows;
}

Json category_to_json(const LinearCategory& c, const std::string& name) {
    Json j;
    j["format"] = kCategoryFormat;
    j["name"] = name;
    j["field"] = field_to_json(c.field());
    j["objects"] = c.objects();
    Json homs = Json::array();
    for (const auto& [key, basis] : c.homs()) {
        homs.push_back(Json{{"src", c.object_name(key.src)}, {"dst", c.object_name(key.dst)}, {"basis", basis}});
    }
    j["homs"] = homs;
    Json identity = Json::object();
    for (ObjectIndex x = 0; x < c.object_count(); ++x) {
        identity[c.object_name(x)] = vector_to_json(c.identity(x));
    }
    j["identity"] = identity;
    Json composition = Json::array();
    for (const auto& [kf, bf] : c.homs()) {
        for (const auto& [kg, bg] : c.homs()) {
            if (kg.src != kf.dst) {
                continue;
            }
            const auto target = c.basis(kf.src, kg.dst);
            for (std::size_t i = 0; i < bf.size(); ++i) {
                for (std::size_t j2 = 0; j2 < bg.size(); ++j2) {
                    const Vector* v = c.structure_constant(kf.src, kf.dst, kg.dst, i, j2);
                    if (v == nullptr) {
                        continue;
                    }
                    Json result = Json::array();
                    for (std::size_t k = 0; k < v->size(); ++k) {
                        if (!Field::is_zero((*v)[k])) {
                            result.push_back(Json{{"basis", target[k]}, {"coeff", scalar_to_json((*v)[k])}});
                        }
                    }
                    composition.push_back(Json{{"f", bf[i]}, {"g", bg[j2]}, {"result", result}});
                }
            }
        }
    }
    j["composition"] = composition;
    return j;
}

LinearCategory category_from_json(const Json& j) {
    check_format(j, kCategoryFormat);
    const Field field = field_from_json(require(j, "field", "category"));
    std::vector<std::string> objects;
    for (const auto& o : require_array(j, "objects", "category")) {
        if (!o.is_string()) {
            throw DocumentError("category: object names must be strings");
        }
        objects.push_back(o.get<std::string>());
    }
    std::unique_ptr<CategoryBuilder> builder;
    try {
        builder = std::make_unique<CategoryBuilder>(field, objects);
    } catch (const std::invalid_argument& e) {
        throw DocumentError(std::string("category: ") + e.what());
    }
    const auto object = [&](const Json& h, const char* key) {
        const std::string name = require_string(h, key, "category hom");
        try {
            return builder->index_of(name);
        } catch (const std::out_of_range&) {
            throw DocumentError("category: hom refers to unknown object \"" + name + "\"");
        }
    };

    struct Located {
        HomKey hom;
        std::size_t index;
    };
    std::map<std::string, Located> by_name;
    std::set<HomKey> seen;
    for (const auto& h : require_array(j, "homs", "category")) {
        const HomKey key{object(h, "src"), object(h, "dst")};
        if (!seen.insert(key).second) {
            throw DocumentError("category: hom (" + h.at("src").get<std::string>() + ", " +
                                h.at("dst").get<std::string>() + ") listed twice");
        }
        std::vector<std::string> basis;
        for (const auto& b : require_array(h, "basis", "category hom")) {
            if (!b.is_string()) {
                throw DocumentError("category: basis names must be strings");
            }
            const std::string name = b.get<std::string>();
            if (!by_name.emplace(name, Located{key, basis.size()}).second) {
                throw DocumentError("category: basis name \"" + name + "\" is used twice");
            }
            basis.push_back(name);
        }
        builder->set_hom(key.src, key.dst, std::move(basis));
    }

    const auto dim = [&](ObjectIndex a, ObjectIndex b) {
        std::size_t d = 0;
        for (const auto& [name, loc] : by_name) {
            d += (loc.hom == HomKey{a, b}) ? 1 : 0;
        }
        return d;
    };

    if (j.contains("identity")) {
        const Json& ids = j.at("identity");
        if (!ids.is_object()) {
            throw DocumentError("category: \"identity\" must map object names to coordinate arrays");
        }
        for (const auto& [name, coords] : ids.items()) {
            ObjectIndex x;
            try {
                x = builder->index_of(name);
            } catch (const std::out_of_range&) {
                throw DocumentError("category: identity given for unknown object \"" + name + "\"");
            }
            Vector v = vector_from_json(field, coords, "identity of " + name);
            if (v.size() != dim(x, x)) {
                throw DocumentError("category: identity of \"" + name + "\" has " + std::to_string(v.size()) +
                                    " coordinates, expected " + std::to_string(dim(x, x)));
            }
            builder->set_identity(x, std::move(v));
        }
    }

    if (j.contains("composition")) {
        for (const auto& entry : require_array(j, "composition", "category")) {
            const std::string fname = require_string(entry, "f", "composition");
            const std::string gname = require_string(entry, "g", "composition");
            const auto fi = by_name.find(fname);
            const auto gi = by_name.find(gname);
            if (fi == by_name.end() || gi == by_name.end()) {
                throw DocumentError("composition: unknown basis morphism in (" + gname + " ∘ " + fname + ")");
            }
            if (fi->second.hom.dst != gi->second.hom.src) {
                throw DocumentError("composition: " + gname + " ∘ " + fname + " is not composable");
            }
            const ObjectIndex x = fi->second.hom.src;
            const ObjectIndex y = fi->second.hom.dst;
            const ObjectIndex z = gi->second.hom.dst;
            Vector result = zero_vector(field, dim(x, z));
            for (const auto& term : require_array(entry, "result", "composition")) {
                const std::string bname = require_string(term, "basis", "composition result");
                const auto bi = by_name.find(bname);
                if (bi == by_name.end() || !(bi->second.hom == HomKey{x, z})) {
                    throw DocumentError("composition: \"" + bname + "\" is not a basis morphism of the composite's hom");
                }
                result[bi->second.index] =
                    field.add(result[bi->second.index], scalar_from_json(field, require(term, "coeff", "composition")));
            }
            builder->set_composition(x, y, z, fi->second.index, gi->second.index, std::move(result));
        }
    }
    try {
        return std::move(*builder).build();
    } catch (const std::invalid_argument& e) {
        throw DocumentError(std::string("category: ") + e.what());
    }
}

Json quiver_to_json(const QuiverDocument& doc) {
    Json j;
    j["format"] = kQuiverFormat;
    j["name"] = doc.name;
    j["field"] = field_to_json(doc.field);
    j["vertices"] = doc.quiver.vertices;
    Json arrows = Json::array();
    for (const auto& a : doc.quiver.arrows) {
        arrows.push_back(Json{{"name", a.name}, {"src", a.source}, {"dst", a.target}});
    }
    j["arrows"] = arrows;
    Json relations = Json::array();
    for (const auto& r : doc.relations) {
        Json terms = Json::array();
        for (const auto& t : r) {
            terms.push_back(Json{{"path", t.path}, {"coeff", scalar_to_json(doc.field.normalize(t.coeff))}});
        }
        relations.push_back(terms);
    }
    j["relations"] = relations;
    return j;
}

QuiverDocument quiver_from_json(const Json& j) {
    check_format(j, kQuiverFormat);
    QuiverDocument doc;
    doc.name = document_name(j, "");
    doc.field = j.contains("field") ? field_from_json(j.at("field")) : Field::rationals();
    for (const auto& v : require_array(j, "vertices", "quiver")) {
        if (!v.is_string()) {
            throw DocumentError("quiver: vertex names must be strings");
        }
        doc.quiver.vertices.push_back(v.get<std::string>());
    }
    for (const auto& a : require_array(j, "arrows", "quiver")) {
        doc.quiver.arrows.push_back(Arrow{require_string(a, "name", "arrow"), require_string(a, "src", "arrow"),
                                          require_string(a, "dst", "arrow")});
    }
    if (j.contains("relations")) {
        for (const auto& r : require_array(j, "relations", "quiver")) {
            if (!r.is_array()) {
                throw DocumentError("quiver: each relation must be an array of terms");
            }
            Relation relation;
            for (const auto& t : r) {
                PathTerm term;
                for (const auto& step : require_array(t, "path", "relation term")) {
                    if (!step.is_string()) {
                        throw DocumentError("quiver: relation paths list arrow names");
                    }
                    term.path.push_back(step.get<std::string>());
                }
                term.coeff = scalar_from_json(doc.field, require(t, "coeff", "relation term"));
                relation.push_back(std::move(term));
            }
            doc.relations.push_back(std::move(relation));
        }
    }
    return doc;
}

namespace {

Json combination_to_json(const std::vector<std::string>& basis, const Vector& v) {
    Json terms = Json::array();
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!Field::is_zero(v[k])) {
            terms.push_back(Json{{"basis", basis[k]}, {"coeff", scalar_to_json(v[k])}});
        }
    }
    return terms;
}

Vector combination_from_json(const Field& field, const std::map<std::string, std::size_t>& index,
                             const Json& terms, const std::string& where) {
    if (!terms.is_array()) {
        throw DocumentError(where + ": expected an array of {basis, coeff} terms");
    }
    Vector v = zero_vector(field, index.size());
    for (const auto& t : terms) {
        const std::string name = require_string(t, "basis", where);
        const auto it = index.find(name);
        if (it == index.end()) {
            throw DocumentError(where + ": unknown basis element \"" + name + "\"");
        }
        v[it->second] = field.add(v[it->second], scalar_from_json(field, require(t, "coeff", where)));
    }
    return v;
}

}  // namespace

Json algebra_to_json(const AlgebraDocument& doc) {
    const AlgebraData& a = doc.algebra;
    Json j;
    j["format"] = kAlgebraFormat;
    j["name"] = doc.name;
    j["field"] = field_to_json(a.field);
    j["basis"] = a.basis;
    Json products = Json::array();
    for (std::size_t l = 0; l < a.basis.size(); ++l) {
        for (std::size_t r = 0; r < a.basis.size(); ++r) {
            if (!is_zero_vector(a.products[l][r])) {
                products.push_back(Json{{"left", a.basis[l]},
                                        {"right", a.basis[r]},
                                        {"result", combination_to_json(a.basis, a.products[l][r])}});
            }
        }
    }
    j["products"] = products;
    Json idempotents = Json::array();
    for (const auto& e : doc.idempotents) {
        idempotents.push_back(Json{{"name", e.name}, {"element", combination_to_json(a.basis, e.element)}});
    }
    j["idempotents"] = idempotents;
    return j;
}

AlgebraDocument algebra_from_json(const Json& j) {
    check_format(j, kAlgebraFormat);
    AlgebraDocument doc;
    doc.name = document_name(j, "");
    AlgebraData& a = doc.algebra;
    a.field = j.contains("field") ? field_from_json(j.at("field")) : Field::rationals();
    std::map<std::string, std::size_t> index;
    for (const auto& b : require_array(j, "basis", "algebra")) {
        if (!b.is_string()) {
            throw DocumentError("algebra: basis names must be strings");
        }
        if (!index.emplace(b.get<std::string>(), a.basis.size()).second) {
            throw DocumentError("algebra: basis name " + b.dump() + " is used twice");
        }
        a.basis.push_back(b.get<std::string>());
    }
    const std::size_t n = a.basis.size();
    a.products.assign(n, std::vector<Vector>(n, zero_vector(a.field, n)));
    if (j.contains("products")) {
        for (const auto& p : require_array(j, "products", "algebra")) {
            const std::string left = require_string(p, "left", "algebra product");
            const std::string right = require_string(p, "right", "algebra product");
            if (!index.contains(left) || !index.contains(right)) {
                throw DocumentError("algebra: product of unknown basis elements " + left + " · " + right);
            }
            a.products[index.at(left)][index.at(right)] =
                combination_from_json(a.field, index, require(p, "result", "algebra product"), "algebra product");
        }
    }
    for (const auto& e : require_array(j, "idempotents", "algebra")) {
        doc.idempotents.push_back(NamedIdempotent{
            require_string(e, "name", "idempotent"),
            combination_from_json(a.field, index, require(e, "element", "idempotent"), "idempotent")});
    }
    return doc;
}

Json functor_to_json(const LinearFunctor& f, const std::string& name, const std::string& source_name,
                     const std::string& target_name) {
    Json j;
    j["format"] = kFunctorFormat;
    j["name"] = name;
    j["source"] = source_name;
    j["target"] = target_name;
    Json objects = Json::object();
    for (ObjectIndex x = 0; x < f.source().object_count(); ++x) {
        objects[f.source().object_name(x)] = f.target().object_name(f(x));
    }
    j["object_map"] = objects;
    Json matrices = Json::array();
    for (const auto& [key, m] : f.matrices()) {
        matrices.push_back(Json{{"src", f.source().object_name(key.src)},
                                {"dst", f.source().object_name(key.dst)},
                                {"matrix", matrix_to_json(m)}});
    }
    j["hom_matrices"] = matrices;
    return j;
}

LinearFunctor functor_from_json(const Json& j, const CategoryPtr& source, const CategoryPtr& target) {
    check_format(j, kFunctorFormat);
    const Field& field = source->field();
    const Json& om = require(j, "object_map", "functor");
    if (!om.is_object()) {
        throw DocumentError("functor: \"object_map\" must be an object");
    }
    std::vector<ObjectIndex> objects(source->object_count(), target->object_count());
    for (const auto& [from, to] : om.items()) {
        const auto x = source->find_object(from);
        if (!x) {
            throw DocumentError("functor: object_map mentions unknown source object \"" + from + "\"");
        }
        if (!to.is_string()) {
            throw DocumentError("functor: object_map values must be object names");
        }
        const auto y = target->find_object(to.get<std::string>());
        if (!y) {
            throw DocumentError("functor: object_map sends \"" + from + "\" to unknown object " + to.dump());
        }
        objects[*x] = *y;
    }
    for (ObjectIndex x = 0; x < objects.size(); ++x) {
        if (objects[x] == target->object_count()) {
            throw DocumentError("functor: object \"" + source->object_name(x) + "\" has no image");
        }
    }
    std::map<HomKey, Matrix> matrices;
    if (j.contains("hom_matrices")) {
        for (const auto& entry : require_array(j, "hom_matrices", "functor")) {
            const std::string s = require_string(entry, "src", "hom matrix");
            const std::string d = require_string(entry, "dst", "hom matrix");
            const auto x = source->find_object(s);
            const auto y = source->find_object(d);
            if (!x || !y) {
                throw DocumentError("functor: hom matrix for unknown objects (" + s + ", " + d + ")");
            }
            const std::size_t cols = source->dim(*x, *y);
            std::vector<Vector> rows;
            for (const auto& row : require_array(entry, "matrix", "hom matrix")) {
                Vector v = vector_from_json(field, row, "hom matrix (" + s + ", " + d + ")");
                if (v.size() != cols) {
                    throw DocumentError("functor: matrix on (" + s + ", " + d + ") needs " + std::to_string(cols) +
                                        " columns");
                }
                rows.push_back(std::move(v));
            }
            if (cols == 0) {
                throw DocumentError("functor: matrix given for the zero hom (" + s + ", " + d + ")");
            }
            if (!matrices.emplace(HomKey{*x, *y}, Matrix::from_rows(field, rows, cols)).second) {
                throw DocumentError("functor: hom (" + s + ", " + d + ") listed twice");
            }
        }
    }
    try {
        return LinearFunctor(source, target, std::move(objects), std::move(matrices));
    } catch (const std::invalid_argument& e) {
        throw DocumentError(std::string("functor: ") + e.what());
    }
}

namespace {

Json block_to_json(const FibreBlock& block, const LinearFunctor& f) {
    const LinearCategory& src = f.source();
    const LinearCategory& dst = f.target();
    Json columns = Json::array();
    for (std::size_t k = 0; k < block.partners.size(); ++k) {
        const ObjectIndex y = block.partners[k];
        const auto basis = block.side == StarSide::Outgoing ? src.basis(block.lift, y) : src.basis(y, block.lift);
        columns.push_back(Json{{"object", src.object_name(y)}, {"basis", std::vector<std::string>(basis.begin(), basis.end())}});
    }
    const auto rows = block.side == StarSide::Outgoing ? dst.basis(block.base, block.other)
                                                       : dst.basis(block.other, block.base);
    return Json{{"side", std::string(to_string(block.side))},
                {"lift", src.object_name(block.lift)},
                {"base", dst.object_name(block.base)},
                {"toward", dst.object_name(block.other)},
                {"source_dimension", block.source_dimension()},
                {"target_dimension", block.target_dimension()},
                {"columns", columns},
                {"rows", std::vector<std::string>(rows.begin(), rows.end())},
                {"matrix", matrix_to_json(block.matrix)}};
}

}  // namespace

Json certificate_to_json(const CoveringCertificate& cert, const std::string& functor_name) {
    const LinearFunctor& f = cert.functor;
    Json j;
    j["format"] = kCertificateFormat;
    j["functor"] = functor_name;
    Json fibres = Json::object();
    for (ObjectIndex b = 0; b < cert.fibres.size(); ++b) {
        Json lifts = Json::array();
        for (ObjectIndex x : cert.fibres[b]) {
            lifts.push_back(f.source().object_name(x));
        }
        fibres[f.target().object_name(b)] = lifts;
    }
    j["fibres"] = fibres;
    Json blocks = Json::array();
    for (const auto& block : cert.blocks) {
        Json bj = block_to_json(block, f);
        bj["inverse"] = matrix_to_json(*block.inverse);
        blocks.push_back(bj);
    }
    j["blocks"] = blocks;
    return j;
}

Json covering_failure_to_json(const CoveringFailure& failure, const LinearFunctor& f) {
    Json j;
    j["reason"] = std::string(to_string(failure.reason));
    j["message"] = failure.message;
    if (failure.reason == CoveringFailure::Reason::NotSurjective) {
        j["missing_object"] = f.target().object_name(failure.missing_object);
    }
    if (failure.block) {
        j["block"] = block_to_json(*failure.block, f);
        j["rank"] = failure.rank;
        j["surjective"] = failure.rank == failure.block->target_dimension();
        j["injective"] = failure.rank == failure.block->source_dimension();
    }
    return j;
}

Json deck_group_to_json(const DeckGroup& group, const LinearCategory& source) {
    Json j;
    j["order"] = group.order();
    j["anchor"] = source.object_name(group.anchor);
    j["acts_freely"] = group.acts_freely();
    Json action = Json::array();
    for (const auto& row : group.action) {
        Json m = Json::object();
        for (ObjectIndex x = 0; x < row.size(); ++x) {
            m[source.object_name(x)] = source.object_name(row[x]);
        }
        action.push_back(m);
    }
    j["action"] = action;
    j["multiplication"] = group.products;
    return j;
}

Json components_to_json(const Components& components, const LinearCategory& c) {
    Json parts = Json::array();
    for (const auto& part : components.parts) {
        Json names = Json::array();
        for (ObjectIndex x : part) {
            names.push_back(c.object_name(x));
        }
        parts.push_back(names);
    }
    return parts;
}

Json triviality_to_json(const TrivialityResult& result, const LinearCategory& source) {
    Json j;
    j["trivial"] = result.trivial;
    j["components"] = components_to_json(result.components, source);
    j["component_isomorphic"] = result.component_isomorphic;
    if (result.first_failure) {
        j["first_failing_component"] = *result.first_failure;
    }
    if (result.comparison) {
        j["labels"] = result.components.parts.size();
        Json iso = Json::object();
        const LinearFunctor& alpha = *result.comparison;
        for (ObjectIndex x = 0; x < alpha.source().object_count(); ++x) {
            iso[alpha.source().object_name(x)] = alpha.target().object_name(alpha(x));
        }
        j["product_isomorphism"] = iso;
    }
    return j;
}

}  // namespace covcat::io
