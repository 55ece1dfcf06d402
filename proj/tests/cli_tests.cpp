// End-to-end checks of the command-line interface: exit-code contract
// (0 positive verdict, 1 negative, 2 input error) and byte-stable JSON.
// Takes the binary path as argv[1].

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "cubical/cone.hpp"
#include "cubical/constructions.hpp"
#include "cubical/cube_complex.hpp"
#include "cubical/isometry.hpp"

namespace {

std::string binary;
int failures = 0;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string out_path = "cli_test_stdout.tmp";
  std::string cmd = binary + " " + args + " > " + out_path + " 2> cli_test_stderr.tmp";
  int status = std::system(cmd.c_str());
  int code = status == -1 ? -1 : WEXITSTATUS(status);
  std::ifstream in(out_path);
  std::ostringstream os;
  os << in.rdbuf();
  return {code, os.str()};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

void expect(bool ok, const std::string& what) {
  if (ok) {
    std::cout << "ok: " << what << "\n";
  } else {
    ++failures;
    std::cout << "FAILED: " << what << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <path-to-binary>\n";
    return 2;
  }
  binary = argv[1];

  using namespace cubical;

  write_file("grid.json", grid_complex({5, 5}).to_json_string());
  write_file("cone.json", build_cone_plane(5, 3).to_json_string());
  write_file("torus.json", build_torus({1, 8}, {7, 4}).complex.to_json_string());
  write_file("rotation.json",
             RationalOrthoAffine({{Rational(3, 5), Rational(-4, 5)},
                                  {Rational(4, 5), Rational(3, 5)}},
                                 {Rational(0), Rational(0)})
                 .to_json_string());
  write_file("swap.json",
             RationalOrthoAffine({{Rational(-5, 13), Rational(12, 13)},
                                  {Rational(12, 13), Rational(5, 13)}},
                                 {Rational(0), Rational(0)})
                 .to_json_string());
  write_file("perm.json",
             RationalOrthoAffine({{Rational(0), Rational(1)}, {Rational(1), Rational(0)}},
                                 {Rational(1), Rational(0)})
                 .to_json_string());
  write_file("shear.json", "{\"n\":2,\"A\":[[\"1\",\"1\"],[\"0\",\"1\"]],\"b\":[\"0\",\"0\"]}\n");
  write_file("truncated.json", "{\"dimension\": 2, \"cells\": [");

  // Three squares around one vertex: a closed 3-cycle link.
  {
    std::vector<Cell> cells;
    cells.push_back({"c", 0, {}});
    for (int i = 0; i < 3; ++i) {
      auto n = std::to_string(i);
      cells.push_back({"x" + n, 0, {}});
      cells.push_back({"y" + n, 0, {}});
    }
    for (int i = 0; i < 3; ++i) {
      auto n = std::to_string(i), m = std::to_string((i + 1) % 3);
      cells.push_back({"s" + n, 1, {{"c", {1, false}}, {"x" + n, {1, true}}}});
      cells.push_back({"p" + n, 1, {{"x" + n, {1, false}}, {"y" + n, {1, true}}}});
      cells.push_back({"q" + n, 1, {{"x" + m, {1, false}}, {"y" + n, {1, true}}}});
      cells.push_back({"f" + n, 2,
                       {{"s" + n, {1, false}},
                        {"q" + n, {1, true}},
                        {"s" + m, {2, false}},
                        {"p" + n, {2, true}}}});
    }
    write_file("triple.json", CubeComplex(2, cells).to_json_string());
  }

  auto check_grid = run("check grid.json");
  expect(check_grid.exit_code == 0, "check accepts the grid patch");
  expect(check_grid.output.find("\"npc\": true") != std::string::npos, "check reports npc");

  auto check_stdin = run("check - < grid.json");
  expect(check_stdin.exit_code == 0, "check reads stdin via -");

  auto check_triple = run("check triple.json");
  expect(check_triple.exit_code == 1, "check rejects the cyclic triple");
  expect(check_triple.output.find("\"c\"") != std::string::npos, "offending vertex listed");

  expect(run("check truncated.json").exit_code == 2, "check flags malformed input");

  auto analyze_swap = run("analyze swap.json");
  expect(analyze_swap.exit_code == 0, "analyze runs on the swap reflection");
  expect(analyze_swap.output.find("\"cubical\": false") != std::string::npos,
         "swap reflection is not cubical");
  expect(analyze_swap.output.find("b_strict") != std::string::npos, "swap has a strict block");

  auto analyze_perm = run("analyze perm.json");
  expect(analyze_perm.exit_code == 0, "analyze runs on a signed permutation");
  expect(analyze_perm.output.find("\"cubical\": true") != std::string::npos,
         "signed permutation is cubical");

  expect(run("analyze shear.json").exit_code == 1, "analyze rejects a shear");

  auto dev_cone = run("develop cone.json rotation.json --seed s:0:0,0 --radius 3");
  expect(dev_cone.exit_code == 0, "develop runs on the cone patch");
  expect(dev_cone.output.find("v:apex") != std::string::npos, "cone development finds the apex");
  expect(dev_cone.output.find("\"circle\"") != std::string::npos, "apex classifies as a circle");

  auto dev_grid = run("develop grid.json rotation.json --seed x12:2,2 --radius 2");
  expect(dev_grid.exit_code == 0, "develop runs on the grid patch");
  expect(dev_grid.output.find("\"branch_vertices\": []") != std::string::npos,
         "grid development has no branch vertices");

  expect(run("develop grid.json perm.json --seed x12:2,2").exit_code == 1,
         "develop rejects a cubical trace");
  expect(run("develop grid.json rotation.json --seed nope").exit_code == 2,
         "develop rejects a bad seed");

  auto dot = run("develop grid.json rotation.json --seed x12:2,2 --radius 2 --format dot");
  expect(dot.exit_code == 0 && dot.output.rfind("graph development", 0) == 0,
         "develop emits a dot dual graph");

  auto classify_torus = run("classify torus.json");
  expect(classify_torus.exit_code == 0, "classify runs on the torus");
  expect(classify_torus.output.find("euclidean") != std::string::npos, "torus is euclidean");

  auto doubles = run("generate doubles --limit 8");
  expect(doubles.exit_code == 0, "generate doubles runs");
  expect(doubles.output.find("65") != std::string::npos, "doubles list includes norm 65");

  auto gen_torus = run("generate torus --a 1,8 --b 7,4");
  expect(gen_torus.exit_code == 0, "generate torus runs");
  {
    auto parsed = CubeComplex::from_json_string(gen_torus.output);
    expect(parsed.count_of_dim(2) == 52, "generated torus has 52 squares");
    expect(parsed.to_json_string() == gen_torus.output, "torus JSON is canonical");
  }

  expect(run("generate cone --n 3 --radius 2").exit_code == 2, "generate rejects cone order 3");

  auto gen_cone = run("generate cone --n 5 --radius 2");
  expect(gen_cone.exit_code == 0, "generate cone runs");
  {
    auto parsed = CubeComplex::from_json_string(gen_cone.output);
    expect(parsed.to_json_string() == gen_cone.output, "cone JSON is canonical");
  }

  auto cover = run("generate cover --a 1,0 --b 0,1 --degree 3 --sigma-a 2,1,3 --sigma-b 1,3,2");
  expect(cover.exit_code == 0, "generate cover runs");
  {
    auto parsed = CubeComplex::from_json_string(cover.output);
    expect(parsed.count_of_dim(2) == 3, "cover has three sheets of squares");
  }

  std::remove("cli_test_stdout.tmp");
  std::remove("cli_test_stderr.tmp");
  std::cout << (failures ? "FAILURES: " : "all cli checks passed: ") << failures << "\n";
  return failures ? 1 : 0;
}
