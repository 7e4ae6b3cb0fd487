#pragma once

// Command-line driver: `verify`, `dual` and `random` over torus documents.
// Exit status: 0 all checks pass, 1 some check fails, 2 bad input.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "periods/document.hpp"
#include "periods/realstruct.hpp"
#include "periods/report.hpp"
#include "periods/torus.hpp"

namespace periods {

struct VerifyOptions {
  std::optional<double> tolerance;  // overrides the document
  std::optional<double> C_g;        // overrides the document
  std::optional<bool> oracle;       // default: on for g <= 3
};

inline ComplexTorus<double> document_torus(const TorusDocument& doc, std::optional<double> tol = {}) {
  return ComplexTorus<double>(doc.g, doc.M,
                              tol.value_or(doc.tolerance.value_or(ComplexTorus<double>::default_tolerance)));
}

/// Runs every check that applies to the document. Throws periods::Error on
/// invalid input.
inline Report verify_document(const TorusDocument& doc, const VerifyOptions& opts = {}) {
  const auto T = document_torus(doc, opts.tolerance);
  const HodgeForm<double> omega{doc.g, doc.form_lambda.value_or(1.0)};
  const NormalizationConstant<double> C(opts.C_g.value_or(doc.C_g.value_or(1.0)));
  const bool oracle = opts.oracle.value_or(doc.g <= 3);

  Report report = verify_hermitian_duality(T, omega, C, oracle);
  if (!doc.conjugation) return report;

  const auto rs = make_real_structure(T, *doc.conjugation);
  const auto dual = dual_real_structure(rs);
  report.add_exact("component_count", component_count(rs), component_count(dual));

  const auto index = index_formula_check(rs);
  const double expected_index = std::ldexp(1.0, doc.g) / double(index.components);
  report.add(CheckRecord{"index_formula", index.index.convert_to<double>(), expected_index,
                         std::abs(index.index.convert_to<double>() - expected_index), 0,
                         index.holds});

  const auto detq = det_q_relation_check(rs);
  report.add_close("det_q_relation", detq.lhs, detq.rhs, T.tolerance());
  if (oracle)
    report.add_close("real_period_oracle", real_period(rs, omega), real_period_oracle(rs, omega),
                     T.tolerance());
  report.add_close("bsd_duality", bsd_norm(rs, omega),
                   bsd_norm(dual, duality_transport(T, omega)), T.tolerance());
  return report;
}

/// (M^T)^{-1}, conjugation -C^T, transported form coefficient.
inline TorusDocument dual_document(const TorusDocument& doc) {
  const auto T = document_torus(doc);
  TorusDocument out = doc;
  out.M = dual_torus(T).period_matrix();
  if (doc.conjugation) {
    const auto rs = make_real_structure(T, *doc.conjugation);
    out.conjugation = dual_real_structure(rs).conjugation();
  }
  if (doc.form_lambda)
    out.form_lambda = duality_transport(T, HodgeForm<double>{doc.g, *doc.form_lambda}).lambda;
  return out;
}

inline TorusDocument random_document(int g, int a, int b, int r, std::uint64_t seed) {
  const auto inst = random_real_torus<double>(g, a, b, r, seed);
  TorusDocument doc;
  doc.g = g;
  doc.M = inst.torus.period_matrix();
  doc.conjugation = inst.structure.conjugation();
  doc.form_lambda = std::complex<double>(1, 0);
  return doc;
}

namespace detail {

inline std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream file(path);
  if (!file) raise(ErrorKind::MalformedDocument, "cannot read " + path);
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

}  // namespace detail

/// Entry point shared by the executable and the tests; args excludes argv[0].
inline int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"Periods of complex tori and their duals"};
  app.require_subcommand(1);

  std::string path;
  VerifyOptions opts;
  double tolerance = 0, cg = 0;
  bool oracle_on = false, oracle_off = false;
  auto* verify = app.add_subcommand("verify", "Run the verification suite on a torus document");
  verify->add_option("file", path, "Document path, or - for standard input")->required();
  auto* tol_opt = verify->add_option("--tolerance", tolerance, "Relative tolerance")
                      ->check(CLI::PositiveNumber);
  auto* cg_opt = verify->add_option("--cg", cg, "Normalization constant C(g)")
                     ->check(CLI::PositiveNumber);
  auto* on = verify->add_flag("--oracle", oracle_on, "Force the exterior-algebra checks");
  verify->add_flag("--no-oracle", oracle_off, "Skip the exterior-algebra checks")->excludes(on);

  auto* dual = app.add_subcommand("dual", "Print the dual torus document");
  dual->add_option("file", path, "Document path, or - for standard input")->required();

  int g = 0, a = 0, b = 0, r = 0;
  std::uint64_t seed = 0;
  auto* random = app.add_subcommand("random", "Print a random torus with real structure");
  random->add_option("--g", g, "Dimension")->required();
  random->add_option("--a", a, "Number of trivial summands")->required();
  random->add_option("--b", b, "Number of sign summands")->required();
  random->add_option("--r", r, "Number of regular summands")->required();
  random->add_option("--seed", seed, "Seed")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      if (*tol_opt) opts.tolerance = tolerance;
      if (*cg_opt) opts.C_g = cg;
      if (oracle_on) opts.oracle = true;
      if (oracle_off) opts.oracle = false;
      const Report report = verify_document(parse_document(detail::read_input(path, in)), opts);
      report.write(out);
      return report.passed() ? 0 : 1;
    }
    if (dual->parsed()) {
      out << serialize_document(dual_document(parse_document(detail::read_input(path, in))));
      return 0;
    }
    out << serialize_document(random_document(g, a, b, r, seed));
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace periods
