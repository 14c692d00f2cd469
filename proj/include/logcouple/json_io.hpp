#pragma once

#include "logcouple/definable.hpp"
#include "logcouple/gensfun.hpp"

#include "json.hpp"

namespace logcouple {

using nlohmann::json;

/// Schema violations are reported as DomainError; malformed element text
/// inside a string field is a ParseError.

json to_json(const GammaExt& g);
GammaExt gamma_ext_from_json(const json& j);
GammaElement gamma_from_json(const json& j);

/// {"vars": ["x0",...], "coeffs": {"x0": "p/q", ...}, "offset": elem}.
/// A bare string in linear-form syntax is also accepted on input.
json to_json(const PsiFunction& f);
PsiFunction psi_function_from_json(const json& j);

/// A PsiFunction object plus "constraints": [{"kind","i","j","c"}, ...].
json to_json(const ConstrainedImage& c);
ConstrainedImage constrained_image_from_json(const json& j);

/// A JSON array of PsiFunctions; a `;`-separated string is also accepted.
json to_json(const ImageUnion& u);
ImageUnion image_union_from_json(const json& j);

/// {"arity": m, "terms": [{"var": i, "shift": k, "coeff": "p/q"}, ...], "offset": elem}.
/// Repeated (var, shift) pairs are summed.
json to_json(const GenSFunction& f);
GenSFunction gensfun_from_json(const json& j);

/// {"arity": n, "products": [[unary, ...], ...]} where each factor is one
/// component object or an array of them (a union).
json to_json(const NaryRep& rep);
NaryRep rep_from_json(const json& j);

json to_json(const TruncatedVector& v);

/// Reads and parses a JSON file; throws DomainError if it cannot be read.
json read_json_file(const std::string& path);

}  // namespace logcouple
