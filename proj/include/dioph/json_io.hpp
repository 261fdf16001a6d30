#pragma once

#include <string>

#include <json.hpp>

#include "dioph/core.hpp"

namespace dioph {

using Json = nlohmann::json;

/// {"n_dim": N, "u": [["1","0"],...], "v": "2"}; big integers as decimal strings.
Json to_json(const RationalGroupPoint& z);
RationalGroupPoint point_from_json(const Json& j);

/// {"num": "...", "den": "..."}
Json rational_json(const Rat& x);
Rat rational_from_json(const Json& j);

/// Reads {"n_dim": N, "polys": [[{"coeff": "3", "exps": [1,0,0,0]}, ...], ...]}.
PolynomialFamily family_from_json(const Json& j);

} // namespace dioph
