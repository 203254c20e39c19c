#include "boxdeconv/io.hpp"

#include <cctype>
#include <cstdio>

#include "boxdeconv/errors.hpp"

namespace boxdeconv::io {

namespace {

Rational rational_of(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return to_q(j.get<long long>());
  if (j.is_number()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
    return parse_rational(buf);
  }
  fail(ErrorCode::InvalidInput, "expected a rational, got " + j.dump());
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

DirectionList parse_phi(const Json& j) {
  Json vectors = j.is_object() ? j.at("vectors") : j;
  if (!vectors.is_array() || vectors.empty()) fail(ErrorCode::EmptyList, "no directions given");
  std::size_t dim = j.is_object() && j.contains("dim") ? j.at("dim").get<std::size_t>() : vectors.at(0).size();
  IntMatrix rows;
  for (const auto& v : vectors) {
    IntVector row;
    for (const auto& x : v) {
      if (!x.is_number_integer()) fail(ErrorCode::InvalidInput, "direction entries must be integers");
      row.push_back(x.get<long long>());
    }
    rows.push_back(std::move(row));
  }
  return DirectionList(dim, std::move(rows));
}

Json phi_json(const DirectionList& phi) { return {{"dim", phi.dim()}, {"vectors", phi.vectors()}}; }

RationalVector parse_vector(std::string_view text) {
  std::string s = trim(text);
  RationalVector out;
  if (!s.empty() && s.front() == '[') {
    Json j = Json::parse(s);
    for (const auto& x : j) out.push_back(rational_of(x));
    return out;
  }
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string::npos) comma = s.size();
    std::string piece = trim(std::string_view(s).substr(start, comma - start));
    if (piece.empty()) fail(ErrorCode::InvalidInput, "empty vector entry in '" + s + "'");
    out.push_back(parse_rational(piece));
    start = comma + 1;
  }
  return out;
}

IntVector parse_int_vector(std::string_view text) {
  IntVector out;
  for (const auto& q : parse_vector(text)) {
    if (!is_integer(q)) fail(ErrorCode::InvalidInput, "expected an integer vector");
    out.push_back(floor_to_int(q));
  }
  return out;
}

Json vector_json(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

ParameterList parse_parameters(const Json& j) {
  ParameterList out;
  for (const auto& x : j) {
    if (x.is_string())
      out.push_back(parse_complex(x.get<std::string>()));
    else if (x.is_number())
      out.emplace_back(x.get<double>(), 0.0);
    else
      fail(ErrorCode::InvalidInput, "parameter must be \"re,im\" or a number");
  }
  return out;
}

LatticeFunction parse_lattice_function(const Json& j, std::size_t dim) {
  const Json& support = j.at("support");
  const Json& values = j.at("values");
  if (support.size() != values.size()) fail(ErrorCode::InvalidInput, "support and values differ in length");
  LatticeFunction f(dim);
  for (std::size_t i = 0; i < support.size(); ++i) {
    IntVector point = support[i].get<IntVector>();
    if (point.size() != dim) fail(ErrorCode::DimensionMismatch, "support point has the wrong dimension");
    GaussianRational z = values[i].is_string() ? parse_gaussian(values[i].get<std::string>())
                                               : GaussianRational{rational_of(values[i]), Rational(0)};
    f.set(point, f(point) + z);
  }
  return f;
}

Json lattice_function_json(const LatticeFunction& f) {
  Json support = Json::array(), values = Json::array();
  for (const auto& [point, z] : f.values()) {
    support.push_back(point);
    values.push_back(to_string(z));
  }
  return {{"support", support}, {"values", values}};
}

Json value_json(const Value& v) {
  if (!v.exact) return format_complex(v.numeric);
  if (auto g = v.gaussian()) return sgn(g->im) == 0 ? to_string(g->re) : to_string(*g);
  Json coeffs = Json::array();
  for (const auto& c : v.exact_value.coefficients()) coeffs.push_back(to_string(c));
  return {{"order", v.exact_value.order()}, {"coefficients", coeffs}};
}

Value parse_value(const Json& j, bool exact) {
  if (j.is_object()) {
    RationalVector c;
    for (const auto& x : j.at("coefficients")) c.push_back(rational_of(x));
    return Value::from_exact(Cyclotomic::from_coefficients(j.at("order").get<long>(), c));
  }
  const std::string s = j.get<std::string>();
  if (exact) return Value::from_exact(Cyclotomic::gaussian(parse_gaussian(s)));
  return Value::from_numeric(parse_complex(s));
}

}  // namespace boxdeconv::io
