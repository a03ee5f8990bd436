#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "sympf/matrix.hpp"
#include "sympf/orbit4.hpp"
#include "sympf/skew.hpp"

namespace sympf {

using Json = nlohmann::json;

// Wraps nlohmann parse failures into Errc::kParse.
Json parse_json(std::string_view text);

// Skew matrix document: {"n": k, "upper": [scalars...]} listing the strict
// upper triangle row-major, or the shorthand {"n": k, "standard": true} for
// J. Scalars are JSON numbers in float mode and "p/q" strings (integers also
// accepted) in rational mode.
Json skew_to_json(const SkewMatrix<Rational>& m);
Json skew_to_json(const SkewMatrix<double>& m);
SkewMatrix<Rational> skew_from_json_rational(const Json& doc);
SkewMatrix<double> skew_from_json_float(const Json& doc);

// Dense square matrix document: {"n": k, "rows": [[...], ...]} with 2k rows
// of 2k scalars; used for symplectic candidates and witnesses.
Json dense_to_json(const Mat<Rational>& m);
Json dense_to_json(const Mat<double>& m);
Mat<Rational> dense_from_json_rational(const Json& doc);
Mat<double> dense_from_json_float(const Json& doc);

Json label_to_json(const OrbitLabel<Rational>& label);
Json label_to_json(const OrbitLabel<double>& label);

Json certificate_to_json(const WitnessCertificate<Rational>& cert);
Json certificate_to_json(const WitnessCertificate<double>& cert);

}  // namespace sympf
