#include "sympf/io.hpp"

#include <cmath>

namespace sympf {

namespace {

Json scalar_json(const Rational& x) { return rational_to_string(x); }
Json scalar_json(double x) { return x; }

Rational scalar_from_json_rational(const Json& v) {
  if (v.is_string()) return rational_from_string(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number())
    throw Error(Errc::kParse, "rational mode requires \"p/q\" strings or integers, got a non-integer number");
  throw Error(Errc::kParse, "expected a rational scalar");
}

double scalar_from_json_float(const Json& v) {
  if (v.is_number()) return v.get<double>();
  throw Error(Errc::kParse, "float mode requires JSON numbers");
}

int read_half_dim(const Json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer())
    throw Error(Errc::kParse, "matrix document needs an integer field \"n\"");
  const int n = doc["n"].get<int>();
  if (n < 1) throw Error(Errc::kDimension, "matrix half-dimension must be positive");
  return n;
}

template <typename S, typename ReadScalar>
SkewMatrix<S> skew_from_json(const Json& doc, ReadScalar read_scalar) {
  const int n = read_half_dim(doc);
  if (doc.value("standard", false)) return SkewMatrix<S>::standard(n);
  if (!doc.contains("upper") || !doc["upper"].is_array())
    throw Error(Errc::kParse, "matrix document needs an \"upper\" array (or \"standard\": true)");
  const Json& upper = doc["upper"];
  const size_t expected = static_cast<size_t>(n) * (2 * n - 1);
  if (upper.size() != expected)
    throw Error(Errc::kParse, "\"upper\" must list the strict upper triangle: expected " +
                                  std::to_string(expected) + " entries, got " + std::to_string(upper.size()));
  std::vector<S> entries;
  entries.reserve(expected);
  for (const Json& v : upper) entries.push_back(read_scalar(v));
  return SkewMatrix<S>::from_upper(n, std::move(entries));
}

template <typename S>
Json skew_json(const SkewMatrix<S>& m) {
  Json upper = Json::array();
  for (const S& x : m.upper()) upper.push_back(scalar_json(x));
  return Json{{"n", m.half_dim()}, {"upper", std::move(upper)}};
}

template <typename S, typename ReadScalar>
Mat<S> dense_from_json(const Json& doc, ReadScalar read_scalar) {
  const int n = read_half_dim(doc);
  const int d = 2 * n;
  if (!doc.contains("rows") || !doc["rows"].is_array() || doc["rows"].size() != static_cast<size_t>(d))
    throw Error(Errc::kParse, "dense matrix document needs a \"rows\" array of 2n rows");
  Mat<S> m(d, d);
  for (int i = 0; i < d; ++i) {
    const Json& row = doc["rows"][i];
    if (!row.is_array() || row.size() != static_cast<size_t>(d))
      throw Error(Errc::kParse, "dense matrix rows must each hold 2n scalars");
    for (int j = 0; j < d; ++j) m.at(i, j) = read_scalar(row[j]);
  }
  return m;
}

template <typename S>
Json dense_json(const Mat<S>& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"n", m.rows() / 2}, {"rows", std::move(rows)}};
}

template <typename S>
Json label_json(const OrbitLabel<S>& label) {
  Json out{{"family", family_name(label.family)}, {"p", scalar_json(label.p)}};
  if (label.q) out["q"] = scalar_json(*label.q);
  return out;
}

template <typename S>
Json certificate_json(const WitnessCertificate<S>& cert) {
  return Json{{"source", skew_json(cert.source)},
              {"target", skew_json(cert.target)},
              {"witness", dense_json(cert.witness.matrix())},
              {"verified", cert.verified},
              {"mode", ScalarTraits<S>::mode_name()}};
}

}  // namespace

Json parse_json(std::string_view text) {
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw Error(Errc::kParse, "malformed JSON");
  return doc;
}

Json skew_to_json(const SkewMatrix<Rational>& m) { return skew_json(m); }
Json skew_to_json(const SkewMatrix<double>& m) { return skew_json(m); }

SkewMatrix<Rational> skew_from_json_rational(const Json& doc) {
  return skew_from_json<Rational>(doc, scalar_from_json_rational);
}
SkewMatrix<double> skew_from_json_float(const Json& doc) { return skew_from_json<double>(doc, scalar_from_json_float); }

Json dense_to_json(const Mat<Rational>& m) { return dense_json(m); }
Json dense_to_json(const Mat<double>& m) { return dense_json(m); }

Mat<Rational> dense_from_json_rational(const Json& doc) {
  return dense_from_json<Rational>(doc, scalar_from_json_rational);
}
Mat<double> dense_from_json_float(const Json& doc) { return dense_from_json<double>(doc, scalar_from_json_float); }

Json label_to_json(const OrbitLabel<Rational>& label) { return label_json(label); }
Json label_to_json(const OrbitLabel<double>& label) { return label_json(label); }

Json certificate_to_json(const WitnessCertificate<Rational>& cert) { return certificate_json(cert); }
Json certificate_to_json(const WitnessCertificate<double>& cert) { return certificate_json(cert); }

}  // namespace sympf
