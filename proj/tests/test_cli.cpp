#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "forminv/document.hpp"
#include "support.hpp"

using namespace forminv;
using namespace forminv::testing;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::filesystem::path scratch_dir() {
  static std::filesystem::path dir = [] {
    std::filesystem::path d =
        std::filesystem::temp_directory_path() /
        ("forminv_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
}

CliResult run_cli(const std::string& args, const std::string& input) {
  const char* bin = std::getenv("FORMINV_BIN");
  REQUIRE(bin != nullptr);
  static int counter = 0;
  std::filesystem::path base = scratch_dir() / std::to_string(counter++);
  std::filesystem::path in = base.string() + ".in";
  std::filesystem::path out = base.string() + ".out";
  std::filesystem::path err = base.string() + ".err";
  write_file(in, input);
  std::string cmd = std::string("'") + bin + "' " + args + " < '" +
                    in.string() + "' > '" + out.string() + "' 2> '" +
                    err.string() + "'";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return CliResult{WEXITSTATUS(status), read_file(out), read_file(err)};
}

const char* kSquareDoc =
    R"({"vars": 1, "trunc": 8, "components": [[{"exps": [2], "coeff": "1"}]]})";

FormalMap catalan_map(int trunc) {
  return make_map(trunc, {{{{1}, "1"},
                           {{2}, "1"},
                           {{3}, "2"},
                           {{4}, "5"},
                           {{5}, "14"},
                           {{6}, "42"},
                           {{7}, "132"},
                           {{8}, "429"}}});
}

}  // namespace

TEST_CASE("invert emits the catalan inverse and verifies it") {
  CliResult r = run_cli("invert --t 1 --verify", kSquareDoc);
  CHECK(r.exit_code == 0);
  CHECK(r.out == format_map_document(catalan_map(8)));
  CHECK(r.err ==
        "verify: ok (both compositions equal the identity through degree 8)\n");
}

TEST_CASE("invert output bytes do not depend on repetition or threads") {
  CliResult a = run_cli("invert --t 1", kSquareDoc);
  CliResult b = run_cli("invert --t 1", kSquareDoc);
  CliResult c = run_cli("invert --t 1 --threads 4", kSquareDoc);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("invert at t zero returns the identity") {
  CliResult r = run_cli("invert --t 0", kSquareDoc);
  CHECK(r.exit_code == 0);
  CHECK(r.out == format_map_document(FormalMap::identity(1, 8)));
}

TEST_CASE("invert accepts rational and complex deformation values") {
  CliResult half = run_cli("invert --t 1/2", kSquareDoc);
  CHECK(half.exit_code == 0);
  CHECK(half.out == format_map_document(make_map(
                        8, {{{{1}, "1"},
                             {{2}, "1/2"},
                             {{3}, "1/2"},
                             {{4}, "5/8"},
                             {{5}, "7/8"},
                             {{6}, "21/16"},
                             {{7}, "33/16"},
                             {{8}, "429/128"}}})));
  CliResult imag = run_cli("invert --t 0+1i --verify", kSquareDoc);
  CHECK(imag.exit_code == 0);
  CHECK(imag.out == format_map_document(make_map(
                        8, {{{{1}, "1"},
                             {{2}, "0+1i"},
                             {{3}, "-2"},
                             {{4}, "0-5i"},
                             {{5}, "14"},
                             {{6}, "0+42i"},
                             {{7}, "-132"},
                             {{8}, "0-429i"}}})));
}

TEST_CASE("the truncation override lowers or raises the working bound") {
  CliResult lower = run_cli("invert --t 1 --trunc 5", kSquareDoc);
  CHECK(lower.exit_code == 0);
  CHECK(lower.out == format_map_document(make_map(
                         5, {{{{1}, "1"},
                              {{2}, "1"},
                              {{3}, "2"},
                              {{4}, "5"},
                              {{5}, "14"}}})));

  const char* short_doc =
      R"({"vars": 1, "trunc": 3, "components": [[{"exps": [2], "coeff": "1"}]]})";
  CliResult raise = run_cli("invert --t 1 --trunc 6", short_doc);
  CHECK(raise.exit_code == 0);
  CHECK(raise.out == format_map_document(make_map(
                         6, {{{{1}, "1"},
                              {{2}, "1"},
                              {{3}, "2"},
                              {{4}, "5"},
                              {{5}, "14"},
                              {{6}, "42"}}})));
}

TEST_CASE("input and output files replace the standard streams") {
  std::filesystem::path in = scratch_dir() / "square_in.json";
  std::filesystem::path out = scratch_dir() / "square_out.json";
  write_file(in, kSquareDoc);
  CliResult r = run_cli("invert --t 1 --verify --in '" + in.string() +
                            "' --out '" + out.string() + "'",
                        "");
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  CHECK(r.err ==
        "verify: ok (both compositions equal the identity through degree 8)\n");
  CHECK(read_file(out) == format_map_document(catalan_map(8)));
}

TEST_CASE("malformed input exits with the parse failure code") {
  CliResult r = run_cli("invert", "this is not json");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("error:") != std::string::npos);

  CliResult missing = run_cli("invert --in /nonexistent/input.json", "");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("bad command lines exit with the parse failure code") {
  CHECK(run_cli("", "").exit_code == 2);
  CHECK(run_cli("unknown-command", "").exit_code == 2);
  CHECK(run_cli("invert --no-such-flag", kSquareDoc).exit_code == 2);
  CHECK(run_cli("trees --leaves 0", "").exit_code == 2);
  CHECK(run_cli("trees", "").exit_code == 2);
}

TEST_CASE("help requests succeed") {
  CHECK(run_cli("--help", "").exit_code == 0);
  CHECK(run_cli("invert --help", "").exit_code == 0);
}

TEST_CASE("violated preconditions exit with the domain failure code") {
  const char* constant_doc =
      R"({"vars": 1, "trunc": 4, "components": [[{"exps": [0], "coeff": "1"}]]})";
  CHECK(run_cli("invert", constant_doc).exit_code == 3);

  const char* linear_doc =
      R"({"vars": 1, "trunc": 4, "components": [[{"exps": [1], "coeff": "1"}]]})";
  CHECK(run_cli("invert --t 1", linear_doc).exit_code == 3);

  const char* wrong_quad =
      R"({"vars": 1, "trunc": 4, "terms": [{"exps": [2], "coeff": "1"}]})";
  CHECK(run_cli("legendre", wrong_quad).exit_code == 3);
}

TEST_CASE("legendre reports its conjugate and the self-check") {
  const char* doc =
      R"({"vars": 1, "trunc": 6, "terms": [{"exps": [2], "coeff": "1/2"}, {"exps": [3], "coeff": "-1/3"}]})";
  CliResult r = run_cli("legendre --check", doc);
  CHECK(r.exit_code == 0);
  CHECK(r.out == format_poly_document(make_series(1, 6, {{{2}, "1/2"},
                                                         {{3}, "1/3"},
                                                         {{4}, "1/2"},
                                                         {{5}, "1"},
                                                         {{6}, "7/3"}})));
  CHECK(r.err ==
        "check: ok (gradient maps invert each other through degree 5; "
        "conjugating twice restores the input)\n");
}

TEST_CASE("burgers lists the deformation slices") {
  const char* doc =
      R"({"vars": 1, "trunc": 7, "terms": [{"exps": [3], "coeff": "1/3"}]})";
  std::string expected = format_poly_document_list(
      {make_series(1, 7, {{{3}, "1/3"}}), make_series(1, 7, {{{4}, "1/2"}}),
       make_series(1, 7, {{{5}, "1"}}), make_series(1, 7, {{{6}, "7/3"}}),
       make_series(1, 7, {{{7}, "6"}})});
  CliResult r = run_cli("burgers --torder 5", doc);
  CHECK(r.exit_code == 0);
  CHECK(r.out == expected);
  CHECK(r.err == "residual: ok (evolution equation holds at t-orders 2..5)\n");

  CliResult defaulted = run_cli("burgers", doc);
  CHECK(defaulted.out == expected);

  const char* small =
      R"({"vars": 1, "trunc": 3, "terms": [{"exps": [3], "coeff": "1/3"}]})";
  CliResult single = run_cli("burgers", small);
  CHECK(single.exit_code == 0);
  CHECK(single.err == "residual: ok (no evolution orders to check at t-order 1)\n");
}

TEST_CASE("trees lists classes with their weights") {
  CliResult three = run_cli("trees --leaves 3", "");
  CHECK(three.exit_code == 0);
  CHECK(three.out ==
        "((oo)o) leaves=3 vertices=5 alpha=2 pruned_factorial=2 beta=4\n");

  CliResult four = run_cli("trees --leaves 4", "");
  CHECK(four.out ==
        "(((oo)o)o) leaves=4 vertices=7 alpha=2 pruned_factorial=6 beta=12\n"
        "((oo)(oo)) leaves=4 vertices=7 alpha=8 pruned_factorial=3 beta=24\n");

  CliResult stats = run_cli("trees --leaves 8 --stats", "");
  CHECK(stats.out == "23\n");
}

TEST_CASE("the scan reports witnesses with their scanned range") {
  const char* doc =
      R"({"vars": 2, "trunc": 3, "terms": [{"exps": [3, 0], "coeff": "1"}, {"exps": [2, 1], "coeff": "0+3i"}, {"exps": [1, 2], "coeff": "-3"}, {"exps": [0, 3], "coeff": "0-1i"}]})";
  CliResult r = run_cli("jc-scan --torder 6 --window 3", doc);
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "POLYNOMIAL_WITNESSED(1)\n"
        "largest nonzero t-order: 1; 5 zero slices through t-order 6\n"
        "a witness covers the scanned range only; the general statement "
        "is not decided\n");

  CliResult undecided = run_cli("jc-scan --torder 6 --window 6", doc);
  CHECK(undecided.exit_code == 0);
  CHECK(undecided.out ==
        "UNDECIDED\n"
        "largest nonzero t-order: 1; zero run of 5 after it is shorter than "
        "the window of 6 (scanned through t-order 6)\n"
        "a witness covers the scanned range only; the general statement "
        "is not decided\n");

  CliResult lifted = run_cli("jc-scan --torder 10 --window 5", doc);
  CHECK(lifted.exit_code == 0);
  CHECK(lifted.out.find("POLYNOMIAL_WITNESSED(1)") == 0);

  const char* zero_doc = R"({"vars": 2, "trunc": 3, "terms": []})";
  CliResult zero = run_cli("jc-scan", zero_doc);
  CHECK(zero.exit_code == 0);
  CHECK(zero.out.find("POLYNOMIAL_WITNESSED(0)\n"
                      "zero potential; the deformation is constant in t\n") == 0);

  const char* off_cone =
      R"({"vars": 2, "trunc": 8, "terms": [{"exps": [2, 1], "coeff": "1"}]})";
  CHECK(run_cli("jc-scan --torder 3", off_cone).exit_code == 3);
}
