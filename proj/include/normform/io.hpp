#pragma once

#include <string>

#include <json.hpp>

#include "normform/normalizer.hpp"

namespace normform {

using Json = nlohmann::json;

// Exact JSON forms. Rationals are "p/q" strings; every reader throws
// ParseError on a shape or number problem and leaves invariants to the
// validators.

Json to_json(const Poly& p);
Json to_json(const HoloPoly& p);
Json to_json(const ModelSpec& m);
Json to_json(const DefiningSeries& m);
Json to_json(const FormalMap& map);
Json to_json(const ClassRecord& r);

Rational rational_from_json(const Json& j);
Poly poly_from_json(const Json& j, int n);
HoloPoly holo_poly_from_json(const Json& j, int n);
/// Validated model (ValidationError on a broken invariant).
ModelSpec model_from_json(const Json& j);
DefiningSeries defining_from_json(const Json& j);
FormalMap map_from_json(const Json& j, int n);
Monomial monomial_from_json(const Json& j, int n);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace normform
