// plurigreen: command-line front end.
//
// Exit codes: 0 success, 2 spec or IO error, 3 solver error, 4 a check
// that ran to completion and FAILS. Errors are printed to stderr as
// {"error": {"code": ..., "message": ...}}.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <random>
#include <set>

#include "plurigreen/cases.hpp"
#include "plurigreen/error.hpp"
#include "plurigreen/exponents.hpp"
#include "plurigreen/extremal.hpp"
#include "plurigreen/serialize.hpp"
#include "plurigreen/transforms.hpp"

namespace fs = std::filesystem;
using namespace plurigreen;

namespace {

constexpr int kExitSpec = 2;
constexpr int kExitSolver = 3;
constexpr int kExitFails = 4;

const char* kGridHelp =
    "Grid of evaluation points on the variety:\n"
    "  shell:RMIN:RMAX:COUNT  COUNT points with norms spread geometrically over [RMIN, RMAX]\n"
    "  box:LO:HI:COUNT        chart parameters with real and imaginary parts uniform in [LO, HI]";

// Where the variety, compact set and maps come from.
struct Source {
  std::string case_name;
  std::string variety_path;
  std::string compact_path;
};

struct Problem {
  std::optional<CaseRecord> record;  // copy of the registry entry, when --case is used
  std::optional<VarietySpec> variety;
  std::optional<CompactSetSpec> compact;
};

void add_source_options(CLI::App* cmd, Source& s) {
  cmd->add_option("--case", s.case_name, "Registered case (see `cases list`)");
  cmd->add_option("--variety", s.variety_path, "Variety JSON (bare, or with a \"variety\" member)");
  cmd->add_option("--compact", s.compact_path,
                  "Compact-set JSON (bare, or with a \"compact\" member)");
}

Problem load(const Source& s, bool need_compact) {
  Problem p;
  if (!s.case_name.empty()) {
    p.record = find_case(s.case_name);
    p.variety = p.record->variety;
    p.compact = p.record->compacts.at(p.record->default_compact);
  }
  if (!s.variety_path.empty()) {
    const Json doc = read_json_file(s.variety_path);
    p.variety = variety_from_json(doc);
    if (s.compact_path.empty() && doc.is_object() && doc.contains("compact")) {
      p.compact = compact_from_json(doc);
    }
  }
  if (!s.compact_path.empty()) p.compact = compact_from_json(read_json_file(s.compact_path));
  if (!p.variety) throw Error(ErrorCode::InvalidSpec, "give --case or --variety");
  if (need_compact && !p.compact) throw Error(ErrorCode::InvalidSpec, "no compact set given");
  if (p.compact) validate_compact(*p.variety, *p.compact);
  return p;
}

// "[p1, p2, ...]" or a single polynomial; commas inside parentheses are kept.
std::vector<MultiPoly> parse_poly_list(std::string text, const std::vector<std::string>& names) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.erase(0, 1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw Error(ErrorCode::Parse, "unterminated polynomial list");
    text = text.substr(1, text.size() - 2);
  }
  std::vector<MultiPoly> out;
  int depth = 0;
  std::string cur;
  for (char ch : text + ",") {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      if (cur.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_poly(cur, names));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (out.empty()) throw Error(ErrorCode::Parse, "empty polynomial list");
  return out;
}

// Maps of a case live on the case variety or on one of its related
// varieties; the one with matching dimension is the domain.
VarietySpec map_domain(const CaseRecord& c, const std::vector<MultiPoly>& f) {
  const int n = f.front().num_vars();
  if (n == c.variety.ambient_dim()) return c.variety;
  for (const auto& [name, v] : c.related) {
    if (v.ambient_dim() == n) return v;
  }
  throw Error(ErrorCode::InvalidSpec, "no domain of dimension " + std::to_string(n));
}

std::vector<MultiPoly> random_poly(int num_vars, int degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  MultiPoly p(num_vars);
  for (const auto& e : graded_exponents(num_vars, degree)) p.add_term(e, Complex(g(rng), g(rng)));
  return {p};
}

Schedule parse_schedule(const std::string& text, int per_radius, std::uint64_t seed) {
  if (text.empty()) {
    Schedule s = Schedule::standard();
    s.per_radius = per_radius;
    s.seed = seed;
    return s;
  }
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
  char c1 = 0;
  char c2 = 0;
  std::istringstream in(text);
  if (!(in >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || !in.eof()) {
    throw Error(ErrorCode::Parse, "schedule must be LO:HI:COUNT");
  }
  return Schedule::geometric(lo, hi, count, per_radius, seed);
}

// Shell grids start at 1.5, or at 1.5 times the smallest norm found on V
// when V stays away from the origin (the Viviani curve has ||z|| >= 2).
std::string default_shell(const VarietySpec& v, double span, int count) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> expo(-3.0, 3.0);
  double smallest = std::numeric_limits<double>::infinity();
  for (const auto& ch : v.charts()) {
    for (int i = 0; i < 4000; ++i) {
      Point t = random_unit_vector(ch.param_dim, rng);
      const double s = std::pow(10.0, expo(rng));
      for (auto& c : t) c *= s;
      smallest = std::min(smallest, norm(ch.eval(t)));
    }
  }
  const double lo = std::max(1.5, 1.5 * smallest);
  return "shell:" + format_real(lo) + ":" + format_real(lo * span) + ":" + std::to_string(count);
}

void emit(const fs::path& out_dir, const std::string& file, const std::string& content) {
  write_text_file(out_dir / file, content);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Values from a JSON config file become flags unless given explicitly.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  const Json cfg = read_json_file(path);
  if (!cfg.is_object()) throw Error(ErrorCode::InvalidSpec, "config must be a JSON object");
  std::set<std::string> given;
  for (const auto& a : args) {
    if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') - 2));
  }
  for (const auto& [key, value] : cfg.items()) {
    if (given.count(key)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + key);
    } else {
      args.push_back("--" + key);
      args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
  return args;
}

int report_error(const std::string& code, const std::string& message, int exit_code) {
  std::cerr << Json{{"error", {{"code", code}, {"message", message}}}}.dump() << "\n";
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Siciak extremal functions on algebraic sets, exponents of polynomial maps"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config;
  std::string out = "plurigreen_out";
  app.add_option("--config", config, "JSON file of default flag values")->check(CLI::ExistingFile);
  app.add_option("--out", out, "Directory for artifacts")->capture_default_str();

  // green
  auto* green = app.add_subcommand("green", "Evaluate a Green-function estimate on a grid");
  Source g_src;
  std::string g_method = "christoffel";
  int g_degree = 8;
  std::string g_grid;
  int g_design = 2000;
  std::uint64_t g_seed = 7;
  std::string g_oracle;
  bool g_intrinsic = false;
  bool g_cest = false;
  add_source_options(green, g_src);
  green
      ->add_option("--method", g_method,
                   "christoffel | discrete-siciak | closed-form | functional-equation")
      ->capture_default_str();
  green->add_option("--degree", g_degree, "Polynomial degree n")->capture_default_str();
  green->add_option(
      "--grid", g_grid,
      std::string(kGridHelp) +
          "\nDefault: 64 shell points over [r, 10r], r = max(1.5, 1.5 min norm on V)");
  green->add_option("--design-size", g_design, "Sample points of K")->capture_default_str();
  green->add_option("--seed", g_seed, "Random seed")->capture_default_str();
  green->add_option("--oracle", g_oracle, "Closed form to use with --method closed-form");
  green->add_flag("--intrinsic", g_intrinsic, "Grade monomials by their growth on V (siciak)");
  green->add_flag("--growth-constant", g_cest, "Also estimate C in V <= log(1+|z|) + C");

  // exponents
  auto* expo = app.add_subcommand("exponents", "Growth, Lojasiewicz and order exponents of a map");
  Source e_src;
  std::string e_map;
  std::string e_poly;
  bool e_exact = false;
  std::string e_schedule;
  int e_per_radius = 64;
  std::uint64_t e_seed = 7;
  std::string e_kinds = "growth,loja";
  add_source_options(expo, e_src);
  expo->add_option("--map", e_map, "Map of the case (default: its first map)");
  expo->add_option("--poly", e_poly, "Map components, e.g. '[w, w z - 1]'");
  expo->add_flag("--exact", e_exact, "Exact rational exponents along the charts");
  expo->add_option("--schedule", e_schedule, "Escape radii LO:HI:COUNT (default 1e2:1e6:8)");
  expo->add_option("--per-radius", e_per_radius, "Samples per radius")->capture_default_str();
  expo->add_option("--seed", e_seed, "Random seed")->capture_default_str();
  expo->add_option("--kinds", e_kinds,
                   "Comma list of growth, loja, order, properness, cone, equality")
      ->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "Check k V_{f^-1 K} <= V_K o f <= l V_{f^-1 K}");
  std::string v_case;
  SandwichOptions v_opts;
  double v_k = NAN;
  double v_l = NAN;
  verify->add_option("--case", v_case, "cusp | cross | sphere_polyhedron")->required();
  verify->add_option("--k", v_k, "Lower constant (default: Lojasiewicz exponent of f)");
  verify->add_option("--l", v_l, "Upper constant (default: growth exponent of f)");
  verify->add_option("--degree", v_opts.degree, "Degree of estimated Green functions")
      ->capture_default_str();
  verify->add_option("--design-size", v_opts.design_size, "Design size")->capture_default_str();
  verify->add_option("--testpoints", v_opts.testpoints, "Test points")->capture_default_str();
  verify->add_option("--seed", v_opts.seed, "Random seed")->capture_default_str();

  // bw
  auto* bw = app.add_subcommand("bw", "Bernstein-Walsh certificate for a polynomial");
  Source b_src;
  std::string b_poly = "random";
  std::string b_grade;
  int b_random_degree = 4;
  std::string b_grid;
  int b_design = 2000;
  int b_degree = 16;
  std::uint64_t b_seed = 7;
  std::string b_green;
  double b_tau = NAN;
  add_source_options(bw, b_src);
  bw->add_option("--poly", b_poly, "'[p]' or 'random'")->capture_default_str();
  bw->add_option("--grade", b_grade, "exact | estimate | a number (default: exact if available)");
  bw->add_option("--random-degree", b_random_degree, "Degree of --poly random")
      ->capture_default_str();
  bw->add_option("--grid", b_grid,
                 std::string(kGridHelp) +
                     "\nDefault: 200 shell points over [r, 50r], r = max(1.5, 1.5 min norm on V)");
  bw->add_option("--design-size", b_design, "Sample points of K")->capture_default_str();
  bw->add_option("--degree", b_degree, "Christoffel degree when no closed form exists")
      ->capture_default_str();
  bw->add_option("--seed", b_seed, "Random seed")->capture_default_str();
  bw->add_option("--green", b_green, "Closed form of the case to use");
  bw->add_option("--tau", b_tau, "Tolerance (default 0.05 grade + 0.1)");

  // cases
  auto* cases = app.add_subcommand("cases", "Registered worked examples");
  cases->require_subcommand(1);
  auto* cases_list = cases->add_subcommand("list", "Names, summaries and provenance");
  auto* cases_export = cases->add_subcommand("export", "Variety, compact sets and maps as JSON");
  std::string export_name;
  cases_export->add_option("name", export_name, "Case name")->required();

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = merge_config(args);
  } catch (const Error& e) {
    return report_error(std::string(error_code_name(e.code())), e.what(), kExitSpec);
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("USAGE", e.what(), kExitSpec);
  }

  const fs::path out_dir(out);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (*green) {
      const Problem p = load(g_src, g_method != "closed-form" && g_method != "functional-equation");
      const VarietySpec& v = *p.variety;
      GreenEstimate est;
      if (g_method == "christoffel" || g_method == "discrete-siciak") {
        const SampleDesign design = sample_compact(v, *p.compact, g_design, g_seed);
        if (g_method == "christoffel") {
          est = christoffel_estimate(design, g_degree);
        } else if (g_intrinsic) {
          est = siciak_on_variety_estimate(v, design, g_degree);
        } else {
          est = discrete_siciak_estimate(design, g_degree);
        }
        emit(out_dir, "design.csv", design_csv(design));
      } else if (g_method == "closed-form") {
        if (!p.record || p.record->oracles.empty()) {
          throw Error(ErrorCode::InvalidSpec, "closed-form needs a case with a closed form");
        }
        const std::string name = g_oracle.empty() ? p.record->oracles.begin()->first : g_oracle;
        if (!p.record->oracles.count(name)) {
          throw Error(ErrorCode::InvalidSpec, "case has no closed form '" + name + "'");
        }
        est = closed_form_estimate(p.record->oracles.at(name), name);
      } else if (g_method == "functional-equation") {
        if (!p.record) throw Error(ErrorCode::InvalidSpec, "functional-equation needs --case");
        est = functional_equation_green(*p.record).estimate;
      } else {
        throw Error(ErrorCode::InvalidSpec, "unknown method '" + g_method + "'");
      }
      if (g_cest) {
        const std::vector<double> radii{10.0, 100.0, 1000.0};
        estimate_growth_constant(est, v, radii, 16, split_seed(g_seed, 11));
      }
      if (g_grid.empty()) g_grid = default_shell(v, 10.0, 64);
      const auto pts = grid_points(v, g_grid, split_seed(g_seed, 5));
      std::vector<double> vals;
      vals.reserve(pts.size());
      for (const auto& z : pts) vals.push_back(est(z));
      Json meta = metadata_json(est);
      meta["grid"] = g_grid;
      meta["seed"] = g_seed;
      emit(out_dir, "green.csv", grid_csv(pts, vals, "green"));
      emit(out_dir, "green_meta.json", meta.dump(2) + "\n");
      meta["seconds"] = seconds_since(t0);
      meta["artifacts"] = {(out_dir / "green.csv").string(),
                           (out_dir / "green_meta.json").string()};
      std::cout << meta.dump(2) << "\n";
      return 0;
    }

    if (*expo) {
      const Problem p = load(e_src, false);
      std::vector<MultiPoly> f;
      std::string map_name = "poly";
      VarietySpec domain = *p.variety;
      if (!e_poly.empty()) {
        f = parse_poly_list(e_poly, p.variety->names());
      } else if (p.record && !p.record->maps.empty()) {
        map_name = e_map.empty() ? p.record->maps.begin()->first : e_map;
        if (!p.record->maps.count(map_name)) {
          throw Error(ErrorCode::InvalidSpec, "case has no map '" + map_name + "'");
        }
        f = p.record->maps.at(map_name);
        domain = map_domain(*p.record, f);
      } else {
        f = identity_map(p.variety->ambient_dim());
        map_name = "identity";
      }
      Json result = {{"map", map_name}};
      Json comps = Json::array();
      for (const auto& q : f) comps.push_back(to_string(q, domain.names()));
      result["components"] = comps;
      if (p.record) result["case"] = p.record->name;
      if (e_exact) {
        const ExactExponents ex = exact_exponents_variety(f, domain);
        ExponentEstimate g;
        g.kind = ExponentKind::Growth;
        g.exact = ex.growth.has_value();
        g.exact_value = ex.growth;
        g.value = ex.growth ? to_double(*ex.growth) : -INFINITY;
        result["growth"] = to_json(g);
        if (ex.loja_available) {
          ExponentEstimate l;
          l.kind = ExponentKind::Lojasiewicz;
          l.exact = ex.loja.has_value();
          l.exact_value = ex.loja;
          l.value = ex.loja ? to_double(*ex.loja) : -INFINITY;
          result["loja"] = to_json(l);
        }
        result["exact"] = to_json(ex);
      } else {
        const Schedule sched = parse_schedule(e_schedule, e_per_radius, e_seed);
        std::set<std::string> kinds;
        std::stringstream ss(e_kinds);
        for (std::string k; std::getline(ss, k, ',');) kinds.insert(k);
        for (const auto& k : kinds) {
          if (k == "growth") {
            result["growth"] = to_json(growth_exponent(f, domain, sched));
          } else if (k == "loja") {
            result["loja"] = to_json(lojasiewicz_exponent(f, domain, sched));
          } else if (k == "order") {
            result["order"] = to_json(order_of_map(f, domain, sched));
          } else if (k == "properness") {
            result["properness"] = to_json(properness_check(f, domain, sched));
          } else if (k == "cone") {
            result["cone"] = to_json(cone_common_direction_check(f, domain, sched));
          } else if (k == "equality") {
            result["equality"] = to_json(equality_mode(f, domain, sched));
          } else {
            throw Error(ErrorCode::InvalidSpec, "unknown exponent kind '" + k + "'");
          }
        }
        result["schedule"] = {
            {"radii", sched.radii}, {"per_radius", sched.per_radius}, {"seed", sched.seed}};
      }
      emit(out_dir, "exponents.json", result.dump(2) + "\n");
      result["seconds"] = seconds_since(t0);
      std::cout << result.dump(2) << "\n";
      return 0;
    }

    if (*verify) {
      if (!std::isnan(v_k)) v_opts.k = v_k;
      if (!std::isnan(v_l)) v_opts.l = v_l;
      const SandwichSetup s = sandwich_setup(find_case(v_case), v_opts);
      const TransformReport rep = verify_sandwich(s.f, s.source, s.target_compact, s.green_target,
                                                  s.green_preimage, s.k, s.l, s.testpoints);
      Json summary = to_json(rep);
      summary["case"] = v_case;
      summary["constants_from"] = s.constants_from;
      summary["target_method"] = green_method_name(s.green_target.method);
      summary["preimage_method"] = green_method_name(s.green_preimage.method);
      emit(out_dir, "verify.csv", to_csv(rep));
      emit(out_dir, "verify.json", summary.dump(2) + "\n");
      summary["seconds"] = seconds_since(t0);
      std::cout << summary.dump(2) << "\n";
      return rep.holds ? 0 : kExitFails;
    }

    if (*bw) {
      const Problem p = load(b_src, true);
      const VarietySpec& v = *p.variety;
      const std::vector<MultiPoly> polys =
          b_poly == "random" ? random_poly(v.ambient_dim(), b_random_degree, b_seed)
                             : parse_poly_list(b_poly, v.names());
      if (polys.size() != 1) throw Error(ErrorCode::InvalidSpec, "bw takes one polynomial");
      const MultiPoly& poly = polys.front();

      double grade = 0.0;
      std::string grade_from;
      auto exact_grade = [&]() -> std::optional<double> {
        try {
          const auto ex = exact_exponents_variety({poly}, v);
          if (ex.growth) return to_double(*ex.growth);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::Unsupported) throw;
        }
        return std::nullopt;
      };
      if (b_grade.empty() || b_grade == "exact") {
        if (auto g = exact_grade()) {
          grade = *g;
          grade_from = "exact";
        } else if (b_grade == "exact") {
          throw Error(ErrorCode::Unsupported, "no exact grade for this variety");
        }
      }
      if (grade_from.empty() && (b_grade.empty() || b_grade == "estimate")) {
        grade = growth_exponent({poly}, v, Schedule::standard()).value;
        grade_from = "estimate";
      }
      if (grade_from.empty()) {
        try {
          std::size_t used = 0;
          grade = std::stod(b_grade, &used);
          if (used != b_grade.size()) throw std::invalid_argument(b_grade);
        } catch (const std::logic_error&) {
          throw Error(ErrorCode::Parse, "grade must be exact, estimate or a number");
        }
        grade_from = "given";
      }

      const SampleDesign design = sample_compact(v, *p.compact, b_design, b_seed);
      Evaluator greenf;
      std::string green_from;
      if (p.record && !p.record->oracles.empty()) {
        // A case may list the closed form it states next to the one its
        // charts give; the latter is preferred when both exist.
        std::string name = b_green;
        if (name.empty()) {
          name = p.record->oracles.count("interval_green_x") ? "interval_green_x"
                                                             : p.record->oracles.begin()->first;
        }
        if (!p.record->oracles.count(name)) {
          throw Error(ErrorCode::InvalidSpec, "case has no closed form '" + name + "'");
        }
        greenf = p.record->oracles.at(name);
        green_from = "closed-form:" + name;
      } else {
        const GreenEstimate est = christoffel_estimate(design, b_degree);
        greenf = est.evaluator;
        green_from = "christoffel";
      }
      if (b_grid.empty()) b_grid = default_shell(v, 50.0, 200);
      const auto pts = grid_points(v, b_grid, split_seed(b_seed, 5));
      const BwReport rep =
          bernstein_walsh_check(poly, grade, design, greenf, pts,
                                std::isnan(b_tau) ? std::nullopt : std::optional<double>(b_tau));
      Json cert = to_json(rep);
      cert["polynomial"] = to_string(poly, v.names());
      cert["grade_from"] = grade_from;
      cert["green_from"] = green_from;
      cert["seed"] = b_seed;
      emit(out_dir, "bw.csv", to_csv(rep));
      emit(out_dir, "bw.json", cert.dump(2) + "\n");
      cert["seconds"] = seconds_since(t0);
      std::cout << cert.dump(2) << "\n";
      return rep.holds ? 0 : kExitFails;
    }

    if (*cases_list) {
      Json list = Json::array();
      for (const auto& c : registry()) {
        list.push_back({{"name", c.name}, {"summary", c.summary}, {"provenance", c.provenance}});
      }
      std::cout << list.dump(2) << "\n";
      return 0;
    }
    if (*cases_export) {
      std::cout << to_json(find_case(export_name)).dump(2) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    return report_error(std::string(error_code_name(e.code())), e.what(),
                        is_solver_error(e.code()) ? kExitSolver : kExitSpec);
  } catch (const std::exception& e) {
    return report_error("INTERNAL", e.what(), kExitSolver);
  }
  return 0;
}
