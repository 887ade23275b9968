#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "oracle.hpp"
#include "veq/cli.hpp"
#include "veq/spec_file.hpp"

using namespace veq;

namespace {

std::string data(const std::string& name) { return std::string(VEQ_DATA_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const std::string path = std::string(VEQ_TEST_TMP) + "/" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("spec files print canonically and reparse to the same value") {
  for (const char* f : {"B2.veq", "T3.veq", "F1.veq", "C3.veq", "C3_corrupt.veq"}) {
    const auto s = parse_spec(slurp(data(f)));
    const std::string printed = print_spec(s);
    CHECK(parse_spec(printed) == s);
    CHECK(print_spec(parse_spec(printed)) == printed);
  }
}

TEST_CASE("a short matrix row is reported at its closing bracket") {
  const std::string text = "instance bool_matrix { V = 2 }\nmatrix X : V -|> V = [1 0 ; 1]\n";
  const std::string row = "matrix X : V -|> V = [1 0 ; 1]";
  try {
    (void)parse_spec(text);
    FAIL("parsed a ragged matrix");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == static_cast<int>(row.find(']')) + 1);
    CHECK(e.expected() == "2 entries in the row");
  }
}

TEST_CASE("a cell without its arrow is reported at the codomain") {
  const std::string cell = "cell a : [J] / (id_A, id_A) J";
  try {
    (void)parse_spec("object A\nproarrow J : A -|> A\n" + cell + "\n");
    FAIL("parsed a cell without =>");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == static_cast<int>(cell.rfind('J')) + 1);
  }
}

TEST_CASE("undeclared names and missing compositions are resolution errors") {
  try {
    (void)load_spec(parse_spec("object A\nproarrow J : A -|> B\n"));
    FAIL("resolved an undeclared object");
  } catch (const ResolutionError& e) {
    CHECK(e.line() == 2);
  }
  try {
    (void)load_spec(parse_spec("object A\nobject B\nvarrow f : A -> B\nvarrow g : B -> A\n"));
    FAIL("built a vertical category without its compositions");
  } catch (const ResolutionError& e) {
    CHECK(std::string(e.what()).find("missing vcomp") != std::string::npos);
  }
}

TEST_CASE("matrix declarations name existing matrices") {
  const auto loaded = load_spec_file(data("B2.veq"));
  REQUIRE(loaded.matrices);
  const auto& me = *loaded.matrices;
  const auto s = *me.find_proarrow("S");
  CHECK(oracle::entries(me, s) == oracle::IntMatrix{{0, 1}, {1, 0}});
  CHECK(oracle::entries(me, *me.find_proarrow("L")) == oracle::IntMatrix{{0}, {1}});
  REQUIRE(loaded.fragments.size() == 1);
  CHECK(loaded.fragments[0].proarrows.size() == 2);
  CHECK(loaded.fragments[0].objects.size() == 2);
}

TEST_CASE("validate exit codes follow the laws") {
  auto ok = run({"validate", data("C3.veq")});
  CHECK(ok.code == 0);
  auto bad = run({"validate", data("C3_corrupt.veq")});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("associativity") != std::string::npos);
}

TEST_CASE("input errors exit with 2 and say where") {
  const std::string cell = "cell a : [J] / (id_A, id_A) J";
  const auto path = temp_file("broken.veq", "object A\nproarrow J : A -|> A\n" + cell + "\n");
  auto r = run({"validate", path});
  CHECK(r.code == 2);
  const std::string where = "line 3, column " + std::to_string(cell.rfind('J') + 1);
  CHECK((r.out + r.err).find(where) != std::string::npos);
  auto lines = run({"--format", "lines", "validate", path});
  CHECK(lines.code == 2);
  CHECK(lines.out.rfind("CHECK input fail", 0) == 0);
  auto missing = run({"validate", data("no_such_file.veq")});
  CHECK(missing.code == 2);
  auto usage = run({"frobnicate"});
  CHECK(usage.code == 2);
}

TEST_CASE("derivations report what they find") {
  auto comp = run({"derive", data("B2.veq"), "--what", "composite:R,L"});
  CHECK(comp.code == 0);
  // [1 0] [0 ; 1] = [0]
  CHECK(comp.out.find("m_UU_0") != std::string::npos);
  auto unit = run({"derive", data("F1.veq"), "--what", "unit:A"});
  CHECK(unit.code == 1);
  CHECK(unit.out.find("NotFound") != std::string::npos);
}

TEST_CASE("line format gives one parsable line per finding") {
  auto r = run({"--format", "lines", "validate", data("C3.veq")});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream words(line);
    std::string tag, name, status;
    words >> tag >> name >> status;
    CHECK(tag == "CHECK");
    CHECK(status == "pass");
    ++n;
  }
  CHECK(n > 0);
}

TEST_CASE("a starved candidate budget exits with 3") {
  auto r = run({"verify", data("B2.veq"), "--theorem", "equipment", "--bounds", "candidates=5"});
  CHECK(r.code == 3);
}
