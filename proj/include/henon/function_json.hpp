#pragma once

#include <string>

#include <json.hpp>

#include "henon/function.hpp"

namespace henon {

/// JSON encoding of complex numbers: [re, im], with a bare number accepted
/// as a real value on input.
inline Complex complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2) return Complex(j[0].get<double>(), j[1].get<double>());
  throw std::invalid_argument("expected a number or [re, im] pair");
}

inline nlohmann::json complex_to_json(Complex z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

/// Function document schema (see README):
///   {"kind":"exp"}
///   {"kind":"poly","coefficients":[c0, c1, ...]}          ascending powers
///   {"kind":"lacunary","terms":[{"log2_coeff":..,"phase":..,"exponent":..}]}
///   {"kind":"product","factors":[a1, a2, ...]}            the zeros a_l
inline EntireFunction function_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "exp") return EntireFunction::make_exp();
  if (kind == "poly") {
    std::vector<Complex> coeffs;
    for (const auto& c : j.at("coefficients")) coeffs.push_back(complex_from_json(c));
    return EntireFunction::make_poly(std::move(coeffs));
  }
  if (kind == "lacunary") {
    std::vector<EntireFunction::LacunaryTerm> terms;
    for (const auto& t : j.at("terms")) {
      EntireFunction::LacunaryTerm lt;
      lt.log2_coeff = t.at("log2_coeff").get<double>();
      lt.phase = t.value("phase", 0.0);
      lt.exponent = t.at("exponent").get<std::int64_t>();
      terms.push_back(lt);
    }
    return EntireFunction::make_lacunary(std::move(terms));
  }
  if (kind == "product") {
    std::vector<Complex> zeros;
    for (const auto& a : j.at("factors")) zeros.push_back(complex_from_json(a));
    return EntireFunction::make_product(std::move(zeros));
  }
  throw std::invalid_argument("unknown function kind: " + kind);
}

inline nlohmann::json function_to_json(const EntireFunction& f) {
  nlohmann::json j;
  switch (f.kind()) {
    case EntireFunction::Kind::exp:
      j["kind"] = "exp";
      break;
    case EntireFunction::Kind::poly: {
      j["kind"] = "poly";
      auto arr = nlohmann::json::array();
      for (const auto& c : f.coefficients()) arr.push_back(complex_to_json(c));
      j["coefficients"] = std::move(arr);
      break;
    }
    case EntireFunction::Kind::lacunary: {
      j["kind"] = "lacunary";
      auto arr = nlohmann::json::array();
      for (const auto& t : f.lacunary_terms())
        arr.push_back({{"log2_coeff", t.log2_coeff}, {"phase", t.phase}, {"exponent", t.exponent}});
      j["terms"] = std::move(arr);
      break;
    }
    case EntireFunction::Kind::product: {
      j["kind"] = "product";
      auto arr = nlohmann::json::array();
      for (const auto& a : f.product_zeros()) arr.push_back(complex_to_json(a));
      j["factors"] = std::move(arr);
      break;
    }
  }
  return j;
}

}  // namespace henon
