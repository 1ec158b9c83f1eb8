// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "covcat/algebra.hpp"
#include "covcat/covering.hpp"
#include "covcat/functor.hpp"
#include "covcat/galois.hpp"
#include "covcat/quiver.hpp"

namespace covcat::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kCategoryFormat = "lincat/v1";
inline constexpr const char* kQuiverFormat = "quiver/v1";
inline constexpr const char* kFunctorFormat = "linfun/v1";
inline constexpr const char* kAlgebraFormat = "algebra/v1";
inline constexpr const char* kCertificateFormat = "covcert/v1";
inline constexpr const char* kVerdictFormat = "verdict/v1";

/// Malformed input. `line` and `column` are 1-based and 0 when unknown.
class DocumentError : public std::runtime_error {
public:
    DocumentError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : std::runtime_error(what), line_(line), column_(column) {}
    [[nodiscard]] std::size_t line() const { return line_; }
    [[nodiscard]] std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Parses JSON text; syntax errors become DocumentError with line/column.
[[nodiscard]] Json parse_document(const std::string& text, const std::string& label);
[[nodiscard]] Json read_document(const std::string& path);
/// Two-space indented, trailing newline.
void write_document(const std::string& path, const Json& document);
[[nodiscard]] std::string dump(const Json& document);

[[nodiscard]] Json field_to_json(const Field& field);
[[nodiscard]] Field field_from_json(const Json& j);
[[nodiscard]] Json scalar_to_json(const Scalar& s);
[[nodiscard]] Scalar scalar_from_json(const Field& field, const Json& j);
[[nodiscard]] Json matrix_to_json(const Matrix& m);

[[nodiscard]] Json category_to_json(const LinearCategory& c, const std::string& name);
[[nodiscard]] LinearCategory category_from_json(const Json& j);

struct QuiverDocument {
    std::string name;
    Field field = Field::rationals();
    Quiver quiver;
    std::vector<Relation> relations;
};

[[nodiscard]] Json quiver_to_json(const QuiverDocument& doc);
[[nodiscard]] QuiverDocument quiver_from_json(const Json& j);

struct AlgebraDocument {
    std::string name;
    AlgebraData algebra;
    std::vector<NamedIdempotent> idempotents;
};

/// "algebra/v1": `field`, `basis` (names), `products` (array of {left,
/// right, result: [{basis, coeff}]}, omitted products are zero) and
/// `idempotents` (array of {name, element: [{basis, coeff}]}).
[[nodiscard]] Json algebra_to_json(const AlgebraDocument& doc);
[[nodiscard]] AlgebraDocument algebra_from_json(const Json& j);

[[nodiscard]] Json functor_to_json(const LinearFunctor& f, const std::string& name, const std::string& source_name,
                                   const std::string& target_name);
/// Reads hom_matrices against already resolved categories.
[[nodiscard]] LinearFunctor functor_from_json(const Json& j, const CategoryPtr& source, const CategoryPtr& target);

[[nodiscard]] Json certificate_to_json(const CoveringCertificate& cert, const std::string& functor_name);
[[nodiscard]] Json covering_failure_to_json(const CoveringFailure& failure, const LinearFunctor& f);
[[nodiscard]] Json deck_group_to_json(const DeckGroup& group, const LinearCategory& source);
[[nodiscard]] Json triviality_to_json(const TrivialityResult& result, const LinearCategory& source);
[[nodiscard]] Json components_to_json(const Components& components, const LinearCategory& c);

/// Reads the document name, falling back to `fallback` when absent.
[[nodiscard]] std::string document_name(const Json& j, const std::string& fallback);
[[nodiscard]] std::string document_format(const Json& j);

}  // namespace covcat::io
