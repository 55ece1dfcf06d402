// Command-line front end: JSON in, JSON out, exit codes 0 (success or
// positive verdict), 1 (negative verdict), 2 (input error).

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cubical/cone.hpp"
#include "cubical/constructions.hpp"
#include "cubical/cube_complex.hpp"
#include "cubical/develop.hpp"
#include "cubical/isometry.hpp"

namespace {

using nlohmann::json;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << text;
}

json rational_vec_json(const cubical::RatVec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

json rational_mat_json(const cubical::RatMat& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(rational_vec_json(row));
  return out;
}

json block_kind_json(cubical::BlockKind k) {
  switch (k) {
    case cubical::BlockKind::Lambda: return "lambda";
    case cubical::BlockKind::B0: return "b0";
    default: return "b_strict";
  }
}

cubical::Vec2 parse_vec2(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw std::runtime_error("expected x,y");
  return {std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1))};
}

int cmd_check(const std::string& input, const std::string& output) {
  cubical::CubeComplex complex = cubical::CubeComplex::from_json_string(read_input(input));
  auto validation = complex.validate();
  if (!validation.ok()) {
    std::cerr << "invalid complex:\n" << validation.summary();
    return 2;
  }
  auto report = complex.check_npc();
  json j;
  j["npc"] = report.npc;
  json offenders = json::array();
  for (const auto& o : report.offenders)
    offenders.push_back({{"vertex", o.vertex}, {"reason", o.reason}});
  j["offending_vertices"] = offenders;
  write_output(output, j.dump(2) + "\n");
  return report.npc ? 0 : 1;
}

int cmd_analyze(const std::string& input, const std::string& output) {
  json parsed = json::parse(read_input(input));
  // Orthogonality failures are a verdict, not an input error.
  cubical::RatMat a;
  for (const auto& row : parsed.at("A")) {
    cubical::RatVec r;
    for (const auto& x : row) r.push_back(cubical::Rational::parse(x.get<std::string>()));
    a.push_back(r);
  }
  if (!cubical::check_orthogonal(a)) {
    std::cerr << "not orthogonal: A^T A != I\n";
    return 1;
  }
  auto t = cubical::RationalOrthoAffine::from_json_string(read_input(input));

  json j;
  j["n"] = t.n;
  j["cubical"] = cubical::is_cubical_map(t);
  auto nf = cubical::normal_form(t);
  json blocks = json::array();
  for (const auto& blk : nf.blocks)
    blocks.push_back({{"kind", block_kind_json(blk.kind)},
                      {"coords", blk.coords},
                      {"matrix", rational_mat_json(blk.matrix)},
                      {"translation", rational_vec_json(blk.translation)}});
  j["normal_form"] = {{"permutation", nf.permutation},
                      {"integer_shift", nf.integer_shift},
                      {"post", rational_mat_json(nf.post)},
                      {"blocks", blocks},
                      {"lambda_rank", nf.lambda_rank()}};
  auto split = cubical::preserves_proper_hypersurface(t);
  if (split) {
    j["preserves_proper_hypersurface"] = {{"free_coords", split->hypersurface.free_coords},
                                          {"offsets", split->hypersurface.offsets},
                                          {"coords1", split->coords1},
                                          {"coords2", split->coords2}};
  } else {
    j["preserves_proper_hypersurface"] = nullptr;
  }
  if (!cubical::is_cubical_map(t)) {
    auto spec = cubical::product_structure(t);
    json factors = json::array();
    for (const auto& f : spec.factors)
      factors.push_back({{"dimension", f.dimension},
                         {"coords", f.coords},
                         {"kind", f.standard ? "standard" : "possibly_singular"}});
    j["product_structure"] = {{"cube_rank", spec.lambda_rank}, {"factors", factors}};
  } else {
    j["product_structure"] = nullptr;
  }
  write_output(output, j.dump(2) + "\n");
  return 0;
}

int cmd_develop(const std::string& complex_path, const std::string& isometry_path,
                const std::string& seed, int radius, const std::string& format,
                const std::string& output) {
  cubical::CubeComplex complex = cubical::CubeComplex::from_json_string(read_input(complex_path));
  auto tau = cubical::RationalOrthoAffine::from_json_string(read_input(isometry_path));
  if (!complex.has_cell(seed) || complex.cell(seed).dim != complex.dimension()) {
    std::cerr << "seed must name a top-dimensional cube\n";
    return 2;
  }
  if (cubical::is_cubical_map(tau)) {
    std::cerr << "cubical trace: nothing to develop\n";
    return 1;
  }
  auto chart = cubical::Chart::identity(seed, complex.dimension());
  auto result = cubical::develop(complex, chart, tau, radius);
  if (format == "dot")
    write_output(output, cubical::development_dual_graph_dot(complex, result));
  else
    write_output(output, result.to_json_string());
  return 0;
}

int cmd_classify(const std::string& input, const std::string& output) {
  cubical::CubeComplex complex = cubical::CubeComplex::from_json_string(read_input(input));
  auto report = cubical::classify_universal_cover(complex);
  json j;
  json orders = json::object();
  for (const auto& [v, k] : report.cone_orders) orders[v] = k;
  j["cone_orders"] = orders;
  j["chi"] = report.euler_characteristic;
  j["gauss_bonnet_holds"] = report.gauss_bonnet_holds;
  j["classification"] = cubical::cone_class_name(report.classification);
  write_output(output, j.dump(2) + "\n");
  return report.classification == cubical::ConeClass::Invalid ? 1 : 0;
}

int cmd_generate(const std::string& kind, int n, int radius, long long limit,
                 const std::string& a_str, const std::string& b_str, int degree,
                 const std::string& sigma_a, const std::string& sigma_b,
                 const std::string& output) {
  if (kind == "cone") {
    write_output(output, cubical::build_cone_plane(n, radius).to_json_string());
    return 0;
  }
  if (kind == "torus") {
    auto torus = cubical::build_torus(parse_vec2(a_str), parse_vec2(b_str));
    write_output(output, torus.complex.to_json_string());
    return 0;
  }
  if (kind == "doubles") {
    json j = json::array();
    for (const auto& p : cubical::find_pythagorean_doubles(limit))
      j.push_back({{"a", p.a}, {"b", p.b}, {"norm_sq", p.norm_sq}});
    write_output(output, j.dump(2) + "\n");
    return 0;
  }
  if (kind == "cover") {
    auto torus = cubical::build_torus(parse_vec2(a_str), parse_vec2(b_str));
    cubical::CoverSpec spec;
    spec.degree = degree;
    auto parse_perm = [degree](const std::string& s) {
      cubical::Perm p;
      std::stringstream ss(s);
      std::string item;
      while (std::getline(ss, item, ',')) p.push_back(std::stoi(item) - 1);
      if (static_cast<int>(p.size()) != degree)
        throw std::runtime_error("permutation length must equal the degree");
      return p;
    };
    spec.sigma_a = parse_perm(sigma_a);
    spec.sigma_b = parse_perm(sigma_b);
    write_output(output, cubical::branched_cover(torus, spec).to_json_string());
    return 0;
  }
  std::cerr << "unknown kind: " << kind << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cubical: combinatorial cube complexes and exact Euclidean isometries"};
  app.require_subcommand(1);

  std::string input, output, format = "json";

  auto* check = app.add_subcommand("check", "validate a complex and test the link condition");
  check->add_option("complex", input, "complex JSON file, or - for stdin")->required();
  check->add_option("--output", output, "output path (default stdout)");

  std::string iso_path, seed;
  int radius = 3;
  auto* analyze = app.add_subcommand("analyze", "normal form and verdicts for an isometry");
  analyze->add_option("isometry", input, "isometry JSON file, or - for stdin")->required();
  analyze->add_option("--output", output, "output path (default stdout)");

  auto* dev = app.add_subcommand("develop", "develop a trace across a complex");
  dev->add_option("complex", input, "complex JSON file")->required();
  dev->add_option("isometry", iso_path, "isometry JSON file")->required();
  dev->add_option("--seed", seed, "id of the seed cube")->required();
  dev->add_option("--radius", radius, "combinatorial radius")->check(CLI::PositiveNumber);
  dev->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  dev->add_option("--output", output, "output path (default stdout)");

  auto* classify = app.add_subcommand("classify", "classify a square surface");
  classify->add_option("surface", input, "surface JSON file, or - for stdin")->required();
  classify->add_option("--output", output, "output path (default stdout)");

  std::string kind, a_str = "1,0", b_str = "0,1", sigma_a, sigma_b;
  int cone_n = 5, degree = 1;
  long long limit = 8;
  auto* gen = app.add_subcommand("generate", "emit cone planes, tori, doubles, or covers");
  gen->add_option("kind", kind, "cone | torus | doubles | cover")->required();
  gen->add_option("--n", cone_n, "cone order");
  gen->add_option("--radius", radius, "patch radius")->check(CLI::PositiveNumber);
  gen->add_option("--limit", limit, "coordinate bound for doubles");
  gen->add_option("--a", a_str, "lattice vector a as x,y");
  gen->add_option("--b", b_str, "lattice vector b as x,y");
  gen->add_option("--degree", degree, "number of sheets");
  gen->add_option("--sigma-a", sigma_a, "one-line permutation, comma separated, 1-indexed");
  gen->add_option("--sigma-b", sigma_b, "one-line permutation, comma separated, 1-indexed");
  gen->add_option("--output", output, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(check)) return cmd_check(input, output);
    if (app.got_subcommand(analyze)) return cmd_analyze(input, output);
    if (app.got_subcommand(dev)) return cmd_develop(input, iso_path, seed, radius, format, output);
    if (app.got_subcommand(classify)) return cmd_classify(input, output);
    if (app.got_subcommand(gen))
      return cmd_generate(kind, cone_n, radius, limit, a_str, b_str, degree, sigma_a, sigma_b,
                          output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
