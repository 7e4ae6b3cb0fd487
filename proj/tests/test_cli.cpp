#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "periods/cli.hpp"

using namespace periods;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(PERIODS_FIXTURE_DIR) + "/" + name; }
std::string data(const std::string& name) { return std::string(PERIODS_TEST_DATA_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string line_for(const std::string& report, const std::string& check) {
  std::istringstream lines(report);
  for (std::string line; std::getline(lines, line);)
    if (line.rfind("check name=" + check + " ", 0) == 0) return line;
  return {};
}

}  // namespace

TEST(CmdVerify, SquareFixture) {
  const auto r = run({"verify", fixture("square.json")});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(line_for(r.out, "component_count").find("lhs=2 rhs=2 "), std::string::npos);
  EXPECT_NE(r.out.find("summary pass=true"), std::string::npos);
}

TEST(CmdVerify, HexagonalFixture) {
  const auto r = run({"verify", fixture("hexagonal.json")});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(line_for(r.out, "component_count").find("lhs=1 rhs=1 "), std::string::npos);
  EXPECT_NE(line_for(r.out, "index_formula").find("lhs=2 "), std::string::npos);
}

TEST(CmdVerify, IdentityConjugation) {
  const auto r = run({"verify", data("identity_conjugation.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("WrongFixedRank"), std::string::npos) << r.err;
}

TEST(CmdVerify, InvalidInputsExitTwo) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"not_involution.json", "NotInvolution"},
      {"singular_period_matrix.json", "SingularPeriodMatrix"},
      {"bad_entry.json", "M[1][0]"},
      {"bad_shape.json", "M: expected 4 rows"},
      {"fractional_conjugation.json", "conjugation[1][0]"},
      {"not_json.json", "MalformedDocument"},
  };
  for (const auto& [file, needle] : cases) {
    const auto r = run({"verify", data(file)});
    EXPECT_EQ(r.code, 2) << file;
    EXPECT_NE(r.err.find(needle), std::string::npos) << file << ": " << r.err;
  }
  EXPECT_EQ(run({"verify", data("does_not_exist.json")}).code, 2);
}

TEST(CmdVerify, ReadsStandardInput) {
  const auto r = run({"verify", "-"}, slurp(fixture("square.json")));
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST(CmdVerify, FailingCheckExitsOne) {
  // zero is rejected as a tolerance; an absurdly tight one lets rounding fail
  const auto r = run({"verify", "--tolerance", "1e-300", fixture("skew_g2_no_real_structure.json")});
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_NE(r.out.find("summary pass=false"), std::string::npos);
  EXPECT_EQ(run({"verify", "--tolerance", "0", fixture("square.json")}).code, 2);
}

TEST(CmdVerify, OracleFlags) {
  const auto off = run({"verify", "--no-oracle", fixture("square.json")});
  EXPECT_EQ(off.code, 0);
  EXPECT_EQ(line_for(off.out, "faltings_oracle"), "");
  EXPECT_EQ(line_for(off.out, "real_period_oracle"), "");
  const auto on = run({"verify", "--oracle", fixture("square.json")});
  EXPECT_NE(line_for(on.out, "serre_pairing"), "");
  EXPECT_EQ(run({"verify", "--oracle", "--no-oracle", fixture("square.json")}).code, 2);
}

TEST(CmdVerify, NormalizationConstantFlag) {
  const auto r = run({"verify", "--no-oracle", "--cg", "0.5", fixture("square.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(line_for(r.out, "faltings_duality").rfind("check name=faltings_duality lhs=1 rhs=1 ", 0), 0u)
      << r.out;
}

TEST(CmdVerify, MetricChecksOnlyWithoutConjugation) {
  const auto r = run({"verify", fixture("skew_g2_no_real_structure.json")});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(line_for(r.out, "faltings_duality"), "");
  EXPECT_EQ(line_for(r.out, "component_count"), "");
}

TEST(CmdDual, Examples) {
  const auto id = parse_document(run({"dual", "-"}, R"({"g":1,"M":[[1,0],[0,1]]})").out);
  EXPECT_EQ(id.M, (RealMatrix<double>(RealMatrix<double>::Identity(2, 2))));

  const auto d = parse_document(run({"dual", "-"}, R"({"g":1,"M":[[2,0],[0,1]]})").out);
  RealMatrix<double> expected(2, 2);
  expected << 0.5, 0, 0, 1;
  EXPECT_EQ(d.M, expected);

  const auto f = parse_document(
      run({"dual", "-"}, R"({"g":1,"M":[[1,0],[0,1]],"form_lambda":[1,0]})").out);
  ASSERT_TRUE(f.form_lambda);
  EXPECT_EQ(*f.form_lambda, std::complex<double>(-1, 0));
}

TEST(CmdDual, ConjugationBecomesNegatedTranspose) {
  const auto d = parse_document(run({"dual", fixture("hexagonal.json")}).out);
  ASSERT_TRUE(d.conjugation);
  EXPECT_EQ(*d.conjugation, (IntegerMatrix{{-1, 0}, {-1, 1}}));
  EXPECT_EQ(run({"dual", data("identity_conjugation.json")}).code, 2);
}

TEST(CmdDual, TwiceRoundTrips) {
  for (const auto& entry : fs::directory_iterator(PERIODS_FIXTURE_DIR)) {
    const auto original = parse_document(slurp(entry.path().string()));
    const auto once = run({"dual", entry.path().string()});
    ASSERT_EQ(once.code, 0) << once.err;
    const auto twice = parse_document(run({"dual", "-"}, once.out).out);
    EXPECT_LE((twice.M - original.M).norm(), 1e-12 * original.M.norm()) << entry.path();
    EXPECT_EQ(twice.conjugation, original.conjugation) << entry.path();
    if (original.form_lambda) {
      EXPECT_LE(std::abs(*twice.form_lambda - *original.form_lambda),
                1e-12 * std::abs(*original.form_lambda));
    }
  }
}

TEST(CmdRandom, VerifiesWithExpectedComponents) {
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
      {{"--g", "1", "--a", "1", "--b", "1", "--r", "0", "--seed", "7"}, "lhs=2 rhs=2 "},
      {{"--g", "1", "--a", "0", "--b", "0", "--r", "1", "--seed", "7"}, "lhs=1 rhs=1 "},
      {{"--g", "2", "--a", "1", "--b", "1", "--r", "1", "--seed", "1"}, "lhs=2 rhs=2 "},
  };
  for (const auto& [flags, expected] : cases) {
    std::vector<std::string> args{"random"};
    args.insert(args.end(), flags.begin(), flags.end());
    const auto doc = run(args);
    ASSERT_EQ(doc.code, 0) << doc.err;
    const auto r = run({"verify", "-"}, doc.out);
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(line_for(r.out, "component_count").find(expected), std::string::npos) << r.out;
  }
}

TEST(CmdRandom, ByteIdenticalForIdenticalArguments) {
  const std::vector<std::string> args{"random", "--g", "3", "--a", "1", "--b", "1", "--r", "2", "--seed", "99"};
  const auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
}

TEST(CmdRandom, InvalidCounts) {
  const auto r = run({"random", "--g", "2", "--a", "1", "--b", "0", "--r", "1", "--seed", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("InvalidCounts"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"random", "--g", "1"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Document, SerializeParseRoundTrip) {
  const auto doc = parse_document(slurp(fixture("square_product_g2.json")));
  const auto again = parse_document(serialize_document(doc));
  EXPECT_EQ(again.g, doc.g);
  EXPECT_EQ(again.M, doc.M);
  EXPECT_EQ(again.conjugation, doc.conjugation);
  EXPECT_EQ(again.form_lambda, doc.form_lambda);
}

TEST(Document, RejectsUnknownKeysAndBadScalars) {
  auto kind = [](const std::string& text) {
    try {
      parse_document(text);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(kind(R"({"g":1,"M":[[1,0],[0,1]],"extra":1})").find("extra: unknown key"), std::string::npos);
  EXPECT_NE(kind(R"({"g":0,"M":[]})").find("g:"), std::string::npos);
  EXPECT_NE(kind(R"({"g":1,"M":[[1,0],[0,1]],"C_g":-1})").find("C_g"), std::string::npos);
  EXPECT_NE(kind(R"({"g":1,"M":[[1,0],[0,1]],"form_lambda":[1]})").find("form_lambda"), std::string::npos);
  EXPECT_NE(kind(R"({"g":1,"M":[[1,0],[0]]})").find("M[1]"), std::string::npos);
}

TEST(Fixtures, AllPassWithinFiveSeconds) {
  const auto start = std::chrono::steady_clock::now();
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(PERIODS_FIXTURE_DIR)) {
    const auto r = run({"verify", entry.path().string()});
    EXPECT_EQ(r.code, 0) << entry.path() << "\n" << r.out << r.err;
    ++count;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_GE(count, 5u);
  EXPECT_LT(seconds, 5.0);
}
