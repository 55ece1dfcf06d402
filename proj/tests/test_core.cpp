#include <map>
#include <set>

#include "doctest.h"

#include "cubical/cone.hpp"
#include "cubical/cube_complex.hpp"

using namespace cubical;

namespace {

// One square with consistent facets, built by hand.
CubeComplex single_square() {
  std::vector<Cell> cells = {
      {"v00", 0, {}},
      {"v10", 0, {}},
      {"v01", 0, {}},
      {"v11", 0, {}},
      {"bottom", 1, {{"v00", {1, false}}, {"v10", {1, true}}}},
      {"top", 1, {{"v01", {1, false}}, {"v11", {1, true}}}},
      {"left", 1, {{"v00", {1, false}}, {"v01", {1, true}}}},
      {"right", 1, {{"v10", {1, false}}, {"v11", {1, true}}}},
      {"sq", 2,
       {{"left", {1, false}}, {"right", {1, true}}, {"bottom", {2, false}}, {"top", {2, true}}}},
  };
  return CubeComplex(2, cells);
}

// Three squares glued cyclically around a central vertex: the center's link
// is a 3-cycle, so the complex is not NPC.
CubeComplex three_squares_cycle() {
  std::vector<Cell> cells;
  cells.push_back({"c", 0, {}});
  for (int i = 0; i < 3; ++i) {
    auto n = std::to_string(i);
    cells.push_back({"x" + n, 0, {}});
    cells.push_back({"y" + n, 0, {}});
  }
  for (int i = 0; i < 3; ++i) {
    auto n = std::to_string(i), m = std::to_string((i + 1) % 3);
    // Spoke i runs from the center to x_i; square i spans spokes i and i+1.
    cells.push_back({"spoke" + n, 1, {{"c", {1, false}}, {"x" + n, {1, true}}}});
    cells.push_back({"rim_a" + n, 1, {{"x" + n, {1, false}}, {"y" + n, {1, true}}}});
    cells.push_back({"rim_b" + n, 1, {{"x" + m, {1, false}}, {"y" + n, {1, true}}}});
    cells.push_back({"sq" + n, 2,
                     {{"spoke" + n, {1, false}},
                      {"rim_b" + n, {1, true}},
                      {"spoke" + m, {2, false}},
                      {"rim_a" + n, {2, true}}}});
  }
  return CubeComplex(2, cells);
}

}  // namespace

TEST_CASE("validate accepts the model square") {
  auto c = single_square();
  CHECK(c.validate().ok());
  // Idempotent and side effect free.
  CHECK(c.validate().ok());
}

TEST_CASE("validate flags a square with a missing facet") {
  std::vector<Cell> cells = {
      {"v0", 0, {}},
      {"v1", 0, {}},
      {"e", 1, {{"v0", {1, false}}, {"v1", {1, true}}}},
      {"sq", 2, {{"e", {1, false}}, {"e", {1, true}}, {"e", {2, false}}}},
  };
  CubeComplex c(2, cells);
  auto report = c.validate();
  REQUIRE_FALSE(report.ok());
  bool facet_count = false;
  for (const auto& v : report.violations)
    if (v.cell == "sq" && v.message.find("facet count") != std::string::npos) facet_count = true;
  CHECK(facet_count);
}

TEST_CASE("generated 3x3 grid matches an independently built face poset") {
  auto grid = grid_complex({3, 3});
  CHECK(grid.validate().ok());

  // Expected cells assembled by direct formulas.
  std::map<CellId, std::vector<std::pair<std::string, CellId>>> expected;
  for (long long i = 0; i <= 3; ++i)
    for (long long j = 0; j <= 3; ++j)
      expected["x:" + std::to_string(i) + "," + std::to_string(j)] = {};
  auto id = [](const std::string& axes, long long i, long long j) {
    return "x" + axes + ":" + std::to_string(i) + "," + std::to_string(j);
  };
  for (long long i = 0; i < 3; ++i)
    for (long long j = 0; j <= 3; ++j)
      expected[id("1", i, j)] = {{"-1", id("", i, j)}, {"+1", id("", i + 1, j)}};
  for (long long i = 0; i <= 3; ++i)
    for (long long j = 0; j < 3; ++j)
      expected[id("2", i, j)] = {{"-1", id("", i, j)}, {"+1", id("", i, j + 1)}};
  for (long long i = 0; i < 3; ++i)
    for (long long j = 0; j < 3; ++j)
      expected[id("12", i, j)] = {{"-1", id("2", i, j)},
                                  {"+1", id("2", i + 1, j)},
                                  {"-2", id("1", i, j)},
                                  {"+2", id("1", i, j + 1)}};

  REQUIRE(grid.cells().size() == expected.size());
  for (const auto& cell : grid.cells()) {
    REQUIRE(expected.count(cell.id) == 1);
    std::set<std::pair<std::string, CellId>> got, want;
    for (const auto& f : cell.facets) got.insert({f.face.str(), f.id});
    for (const auto& f : expected.at(cell.id)) want.insert(f);
    CHECK(got == want);
  }
}

TEST_CASE("vertex links: square corner, grid interior, cone apex") {
  auto square = single_square();
  auto corner = square.vertex_link("v00");
  CHECK(corner.vertex_count() == 2);
  CHECK(corner.f_vector() == std::vector<long long>{2, 1});  // one arc

  auto grid = grid_complex({2, 2});
  auto inner = grid.vertex_link("x:1,1");
  CHECK(inner.as_single_cycle() == 4);

  auto cone = build_cone_plane(5, 2);
  CHECK(cone.vertex_link("v:apex").as_single_cycle() == 5);
}

TEST_CASE("ascending links across dimensions") {
  auto grid = grid_complex({3, 3});
  // Interior edge: two squares, no higher cubes.
  auto asc = grid.ascending_link("x1:1,1");
  CHECK(asc.f_vector() == std::vector<long long>{2});
  CHECK_FALSE(asc.is_connected());

  // Top square: locally maximal.
  CHECK(grid.ascending_link("x12:1,1").empty());

  // Central axis edge of a 2x2x2 block lies in four 3-cubes: its ascending
  // link is a 4-cycle. Dropping one cube leaves a path on three squares.
  auto block = grid_complex({2, 2, 2});
  CHECK(block.ascending_link("x3:1,1,0").as_single_cycle() == 4);

  std::vector<Cell> pruned;
  for (const auto& c : block.cells())
    if (c.id != "x123:1,1,0") pruned.push_back(c);
  CubeComplex seven(3, pruned);
  auto path = seven.ascending_link("x3:1,1,0");
  CHECK(path.f_vector() == std::vector<long long>{4, 3});
  CHECK(path.is_connected());
  CHECK_FALSE(path.as_single_cycle().has_value());
}

TEST_CASE("flag detection") {
  // Empty 3-cycle: a 3-clique with no triangle.
  auto c3 = SimplicialComplex::from_simplices({{"a", "b"}, {"b", "c"}, {"a", "c"}});
  CHECK_FALSE(c3.is_flag());

  auto c4 = SimplicialComplex::from_simplices({{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}});
  CHECK(c4.is_flag());

  // K4 with all four triangles but no solid tetrahedron.
  auto k4 = SimplicialComplex::from_simplices(
      {{"a", "b", "c"}, {"a", "b", "d"}, {"a", "c", "d"}, {"b", "c", "d"}});
  CHECK_FALSE(k4.is_flag());
}

TEST_CASE("npc check: grid, cyclic triple, cone plane") {
  CHECK(grid_complex({3, 3}).check_npc().npc);

  auto triple = three_squares_cycle();
  REQUIRE(triple.validate().ok());
  auto report = triple.check_npc();
  CHECK_FALSE(report.npc);
  REQUIRE(report.offenders.size() == 1);
  CHECK(report.offenders[0].vertex == "c");
  CHECK(report.offenders[0].reason == "link not flag");

  CHECK(build_cone_plane(5, 3).check_npc().npc);
}

TEST_CASE("locally maximal cubes") {
  auto grid = grid_complex({2, 2});
  auto maximal = grid.locally_maximal_cubes();
  CHECK(maximal.size() == 4);
  for (const auto& id : maximal) CHECK(grid.cell(id).dim == 2);

  auto edge = grid_complex({1});
  CHECK(edge.locally_maximal_cubes() == std::vector<CellId>{"x1:0"});

  // Square with a pendant edge: both are locally maximal.
  auto base = single_square();
  std::vector<Cell> cells = base.cells();
  cells.push_back({"w", 0, {}});
  cells.push_back({"pendant", 1, {{"v11", {1, false}}, {"w", {1, true}}}});
  CubeComplex augmented(2, cells);
  REQUIRE(augmented.validate().ok());
  CHECK(augmented.locally_maximal_cubes() == std::vector<CellId>{"pendant", "sq"});
}

TEST_CASE("interior point links decompose as joins") {
  auto grid = grid_complex({3, 3});
  auto edge_link = grid.interior_point_link("x1:1,1");
  REQUIRE(edge_link.join_decomposition.has_value());
  CHECK(edge_link.join_decomposition->sphere_factor.vertex_count() == 2);
  CHECK(edge_link.link.as_single_cycle() == 4);
  CHECK(edge_link.flag);

  // Locally maximal square: the join degenerates to the in-cube sphere.
  auto square_link = grid.interior_point_link("x12:1,1");
  CHECK(square_link.join_decomposition->residual.empty());
  CHECK(square_link.link.as_single_cycle() == 4);

  // Central axis edge of the 2x2x2 block: S^0 joined with a 4-cycle is the
  // octahedron.
  auto block = grid_complex({2, 2, 2});
  auto inner = block.interior_point_link("x3:1,1,0");
  CHECK(SimplicialComplex::isomorphic(inner.link, octahedral_sphere(2)));

  CHECK_THROWS_AS(grid.interior_point_link("x:1,1"), std::invalid_argument);
}

TEST_CASE("link invariants on NPC grids") {
  auto grid = grid_complex({3, 3});
  auto npc = grid.check_npc();
  REQUIRE(npc.npc);
  for (const auto& cell : grid.cells()) {
    if (cell.dim == 0) CHECK(grid.vertex_link(cell.id).is_flag());
    // Ascending link empty exactly for locally maximal cells.
  }
  auto maximal = grid.locally_maximal_cubes();
  std::set<CellId> maximal_set(maximal.begin(), maximal.end());
  for (const auto& cell : grid.cells())
    CHECK(grid.ascending_link(cell.id).empty() == (maximal_set.count(cell.id) > 0));

  // The ascending link of an edge matches the link of the corresponding
  // vertex direction inside a corner link.
  auto asc = grid.ascending_link("x1:1,1");
  CHECK(asc.f_vector() == std::vector<long long>{2});
}

TEST_CASE("interior links embed in vertex links on locally euclidean patches") {
  // The common link of interior points of a cell matches the link of any of
  // its corner vertices in flat regions, and the ascending link matches the
  // link of the cell's direction simplex inside the vertex link.
  auto grid = grid_complex({3, 3});
  CHECK(SimplicialComplex::isomorphic(grid.interior_point_link("x1:1,1").link,
                                      grid.vertex_link("x:1,1")));

  auto block = grid_complex({2, 2, 2});
  CHECK(SimplicialComplex::isomorphic(block.interior_point_link("x3:1,1,0").link,
                                      block.vertex_link("x:1,1,1")));
  // S^0 directions along the edge join with the 4-cycle of cubes around it.
  CHECK(SimplicialComplex::isomorphic(block.ascending_link("x3:1,1,0"), octahedral_sphere(1)));
}

TEST_CASE("link graphs export to dot") {
  auto grid = grid_complex({2, 2});
  auto dot = grid.vertex_link("x:1,1").to_dot("link");
  CHECK(dot.rfind("graph link", 0) == 0);
  CHECK(dot.find("--") != std::string::npos);
}

TEST_CASE("quotient complexes: the one-square torus") {
  // One square, two loop edges, one vertex; the link is still a 4-cycle.
  std::vector<Cell> cells = {
      {"v", 0, {}},
      {"e1", 1, {{"v", {1, false}}, {"v", {1, true}}}},
      {"e2", 1, {{"v", {1, false}}, {"v", {1, true}}}},
      {"sq", 2, {{"e2", {1, false}}, {"e2", {1, true}}, {"e1", {2, false}}, {"e1", {2, true}}}},
  };
  CubeComplex torus(2, cells);
  REQUIRE(torus.validate().ok());
  CHECK(torus.vertex_link("v").as_single_cycle() == 4);
  CHECK(torus.check_npc().npc);
  // Each loop edge sees the square from both sides.
  CHECK(torus.ascending_link("e1").f_vector() == std::vector<long long>{2});
}

TEST_CASE("complex JSON round trip is canonical") {
  auto cone = build_cone_plane(5, 2);
  auto text = cone.to_json_string();
  auto parsed = CubeComplex::from_json_string(text);
  CHECK(parsed.to_json_string() == text);
  CHECK(parsed.cells().size() == cone.cells().size());
  CHECK_THROWS(CubeComplex::from_json_string("{\"dimension\": 2"));
}
