#pragma once

#include <json.hpp>
#include <string>
#include <string_view>

#include "boxdeconv/deconv.hpp"
#include "boxdeconv/partition.hpp"

namespace boxdeconv::io {

using Json = nlohmann::json;

/// Accepts {"dim": d, "vectors": [[...], ...]} or a bare list of vectors.
DirectionList parse_phi(const Json& j);
Json phi_json(const DirectionList& phi);

/// A JSON list of "p/q" strings or numbers, or a comma-separated string.
RationalVector parse_vector(std::string_view text);
IntVector parse_int_vector(std::string_view text);
Json vector_json(const RationalVector& v);

/// JSON list of "re,im" strings or numbers.
ParameterList parse_parameters(const Json& j);

/// {"support": [[...], ...], "values": ["re,im", ...]}
LatticeFunction parse_lattice_function(const Json& j, std::size_t dim);
Json lattice_function_json(const LatticeFunction& f);

/// "p/q" or "p/q,p/q" when exact in Q(i); {"order": m, "coefficients": [...]} for other
/// cyclotomic values; "%.17g,%.17g" otherwise.
Json value_json(const Value& v);
/// Inverse of value_json; `exact` selects the reading of a string value.
Value parse_value(const Json& j, bool exact);

}  // namespace boxdeconv::io
