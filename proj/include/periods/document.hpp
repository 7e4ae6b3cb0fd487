#pragma once

// JSON torus documents:
//
//   {
//     "g": 1,
//     "M": [[1, 0.5], [0, 0.8660254037844386]],   // 2g x 2g, row-major
//     "conjugation": [[1, 1], [0, -1]],           // optional, integers
//     "form_lambda": [1, 0],                      // optional, [re, im]
//     "C_g": 1,                                   // optional, > 0
//     "tolerance": 1e-9                           // optional, > 0
//   }
//
// Numbers are written in shortest round-trip form, keys in the order above.

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "periods/errors.hpp"
#include "periods/intlat.hpp"
#include "periods/linalg.hpp"

namespace periods {

struct TorusDocument {
  int g = 1;
  RealMatrix<double> M;
  std::optional<IntegerMatrix> conjugation;
  std::optional<std::complex<double>> form_lambda;
  std::optional<double> C_g;
  std::optional<double> tolerance;
};

namespace detail {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] inline void malformed(const std::string& where, const std::string& what) {
  raise(ErrorKind::MalformedDocument, where + ": " + what);
}

inline const ordered_json& expect_square_array(const ordered_json& v, const std::string& key,
                                               std::size_t n) {
  if (!v.is_array()) malformed(key, "expected an array of rows");
  if (v.size() != n)
    malformed(key, "expected " + std::to_string(n) + " rows, got " + std::to_string(v.size()));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row = key + "[" + std::to_string(i) + "]";
    if (!v[i].is_array()) malformed(row, "expected an array");
    if (v[i].size() != n)
      malformed(row, "expected " + std::to_string(n) + " columns, got " +
                         std::to_string(v[i].size()));
  }
  return v;
}

inline double positive_number(const ordered_json& v, const std::string& key) {
  if (!v.is_number()) malformed(key, "expected a number");
  const double x = v.get<double>();
  if (!(x > 0) || !std::isfinite(x)) malformed(key, "expected a positive finite number");
  return x;
}

}  // namespace detail

inline TorusDocument parse_document(std::string_view text) {
  using detail::malformed;
  detail::ordered_json root;
  try {
    root = detail::ordered_json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    malformed("document", e.what());
  }
  if (!root.is_object()) malformed("document", "expected a JSON object");
  for (const auto& [key, value] : root.items()) {
    if (key != "g" && key != "M" && key != "conjugation" && key != "form_lambda" &&
        key != "C_g" && key != "tolerance")
      malformed(key, "unknown key");
  }

  TorusDocument doc;
  if (!root.contains("g")) malformed("g", "missing");
  if (!root["g"].is_number_integer() || root["g"].get<long long>() < 1 ||
      root["g"].get<long long>() > 64)
    malformed("g", "expected an integer between 1 and 64");
  doc.g = root["g"].get<int>();
  const std::size_t n = std::size_t(2 * doc.g);

  if (!root.contains("M")) malformed("M", "missing");
  const auto& m = detail::expect_square_array(root["M"], "M", n);
  doc.M.resize(Eigen::Index(n), Eigen::Index(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& e = m[i][j];
      if (!e.is_number() || !std::isfinite(e.get<double>()))
        malformed("M[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                  "expected a finite number");
      doc.M(Eigen::Index(i), Eigen::Index(j)) = e.get<double>();
    }

  if (root.contains("conjugation") && !root["conjugation"].is_null()) {
    const auto& c = detail::expect_square_array(root["conjugation"], "conjugation", n);
    IntegerMatrix C(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const auto& e = c[i][j];
        if (!e.is_number_integer())
          malformed("conjugation[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                    "expected an integer");
        C(i, j) = e.get<long long>();
      }
    doc.conjugation = std::move(C);
  }

  if (root.contains("form_lambda") && !root["form_lambda"].is_null()) {
    const auto& f = root["form_lambda"];
    if (!f.is_array() || f.size() != 2) malformed("form_lambda", "expected [re, im]");
    for (std::size_t k = 0; k < 2; ++k)
      if (!f[k].is_number() || !std::isfinite(f[k].get<double>()))
        malformed("form_lambda[" + std::to_string(k) + "]", "expected a finite number");
    doc.form_lambda = std::complex<double>(f[0].get<double>(), f[1].get<double>());
  }

  if (root.contains("C_g") && !root["C_g"].is_null())
    doc.C_g = detail::positive_number(root["C_g"], "C_g");
  if (root.contains("tolerance") && !root["tolerance"].is_null())
    doc.tolerance = detail::positive_number(root["tolerance"], "tolerance");
  return doc;
}

inline std::string serialize_document(const TorusDocument& doc) {
  detail::ordered_json root;
  root["g"] = doc.g;
  auto rows = detail::ordered_json::array();
  for (Eigen::Index i = 0; i < doc.M.rows(); ++i) {
    auto row = detail::ordered_json::array();
    for (Eigen::Index j = 0; j < doc.M.cols(); ++j) row.push_back(doc.M(i, j));
    rows.push_back(std::move(row));
  }
  root["M"] = std::move(rows);
  if (doc.conjugation) {
    auto crows = detail::ordered_json::array();
    for (std::size_t i = 0; i < doc.conjugation->rows(); ++i) {
      auto row = detail::ordered_json::array();
      for (std::size_t j = 0; j < doc.conjugation->cols(); ++j)
        row.push_back((*doc.conjugation)(i, j).convert_to<long long>());
      crows.push_back(std::move(row));
    }
    root["conjugation"] = std::move(crows);
  }
  if (doc.form_lambda)
    root["form_lambda"] = detail::ordered_json::array({doc.form_lambda->real(), doc.form_lambda->imag()});
  if (doc.C_g) root["C_g"] = *doc.C_g;
  if (doc.tolerance) root["tolerance"] = *doc.tolerance;
  return root.dump() + "\n";
}

}  // namespace periods
