#include "plurigreen/cases.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>

#include "plurigreen/error.hpp"
#include "plurigreen/shell_search.hpp"

namespace plurigreen {

namespace {

using Names = std::vector<std::string>;

MultiPoly P(std::string_view text, const Names& names) { return parse_poly(text, names); }

std::vector<MultiPoly> PS(std::initializer_list<std::string_view> texts, const Names& names) {
  std::vector<MultiPoly> out;
  for (auto t : texts) out.push_back(P(t, names));
  return out;
}

CaseRecord record(std::string name, std::string summary, VarietySpec v) {
  return CaseRecord{std::move(name), std::move(summary), std::move(v), {}, {}, {}, {}, {}, {}, {}};
}

double log_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

Chart chart(int param_dim, std::vector<MultiPoly> components) {
  Chart c;
  c.param_dim = param_dim;
  c.components = std::move(components);
  c.domain = c.is_laurent() ? ParamDomain::Punctured : ParamDomain::Full;
  return c;
}

CaseRecord cusp() {
  const Names wz{"w", "z"};
  const Names xi{"xi"};
  auto v = VarietySpec::make(2, {P("w^3 - z^2", wz)}, {chart(1, PS({"xi^2", "xi^3"}, xi))},
                             std::nullopt, true, false, wz);
  CaseRecord c = record("cusp", "cusp w^3 = z^2 with E = {|w| <= 1, |z| <= 1}", std::move(v));
  c.related.emplace("xi", VarietySpec::affine_space(1, xi));
  c.maps["f"] = PS({"xi^2", "xi^3"}, xi);
  c.compacts["E"] = PolyhedronSet{{{P("w", wz), 1.0}, {P("z", wz), 1.0}}};
  c.oracles["green_E"] = [](const Point& z) { return log_plus(std::abs(z[1])); };
  c.oracles["green_E_from_w"] = [](const Point& z) { return 1.5 * log_plus(std::abs(z[0])); };
  c.exact["growth_f"] = Rational(3);
  c.exact["loja_f"] = Rational(3);
  c.default_compact = "E";
  c.provenance = "cusp example: V_E(w,z) = log+|z| = (3/2) log+|w|, f(xi) = (xi^2, xi^3)";
  return c;
}

CaseRecord cross() {
  const Names wz{"w", "z"};
  const Names t{"t"};
  auto v = VarietySpec::make(2, {P("w z", wz)},
                             {chart(1, PS({"t", "0"}, t)), chart(1, PS({"0", "t"}, t))},
                             std::nullopt, false, false, wz);
  CaseRecord c = record("cross", "cross {wz = 0}, f = p(w) + q(z) with p = q = t^2", std::move(v));
  c.related.emplace("target", VarietySpec::affine_space(1, {"u"}));
  c.maps["f"] = PS({"w^2 + z^2"}, wz);
  c.compacts["E"] = PolyhedronSet{{{P("w^2 + z^2", wz), 1.0}}};
  c.oracles["green_E"] = [](const Point& z) {
    return 0.5 * log_plus(std::abs(z[0] * z[0] + z[1] * z[1]));
  };
  c.exact["growth_f"] = Rational(2);
  c.exact["loja_f"] = Rational(2);
  c.default_compact = "E";
  c.provenance = "cross example: V_E(w,z) = (1/d) log+|p(w) + q(z)|, d = 2";
  return c;
}

CaseRecord sphere_polyhedron() {
  const Names xyz{"x", "y", "z"};
  const Names su{"s", "u"};
  // x + iy = u, x - iy = (1 - s^2)/u, z = s, and the mirror image with the
  // roles of x + iy and x - iy swapped. One chart alone reaches the parts
  // of E with small |x + iy| only through a thin parameter region, which
  // starves sample designs there.
  auto ch = chart(
      2,
      PS({"0.5 u + 0.5 u^-1 - 0.5 s^2 u^-1", "-0.5 I u + 0.5 I u^-1 - 0.5 I s^2 u^-1", "s"}, su));
  auto mirror = chart(
      2, PS({"0.5 u + 0.5 u^-1 - 0.5 s^2 u^-1", "0.5 I u - 0.5 I u^-1 + 0.5 I s^2 u^-1", "s"}, su));
  auto v = VarietySpec::make(3, {P("x^2 + y^2 + z^2 - 1", xyz)}, {ch, mirror}, std::nullopt, true,
                             true, xyz);
  CaseRecord c =
      record("sphere_polyhedron",
             "complex sphere x^2+y^2+z^2 = 1, E = {|x^2+y| <= 1, |y^2-x| <= 1}", std::move(v));
  c.related.emplace("target", VarietySpec::affine_space(2, {"u1", "u2"}));
  c.maps["f"] = PS({"x^2 + y", "y^2 - x"}, xyz);
  c.compacts["E"] = PolyhedronSet{{{P("x^2 + y", xyz), 1.0}, {P("y^2 - x", xyz), 1.0}}};
  c.oracles["green_E"] = [](const Point& z) {
    const Complex f1 = z[0] * z[0] + z[1];
    const Complex f2 = z[1] * z[1] - z[0];
    return 0.5 * std::max(log_plus(std::abs(f1)), log_plus(std::abs(f2)));
  };
  c.exact["deg_f"] = Rational(2);
  c.default_compact = "E";
  c.provenance =
      "sphere polyhedron example: V_E = (1/deg f) max(log+|f1|, log+|f2|) with top part "
      "(x^2, y^2) vanishing only at 0";
  return c;
}

CaseRecord viviani() {
  const Names xyz{"x", "y", "z"};
  const Names uvw{"u", "v", "w"};
  const Names t{"t"};
  // u on the unit circle traces the window: x = 1 + cos 2a, y = sin 2a, z = -2 sin a.
  auto ch = chart(1, PS({"1 + 0.5 t^2 + 0.5 t^-2", "-0.5 I t^2 + 0.5 I t^-2", "I t - I t^-1"}, t));
  auto v = VarietySpec::make(3, {P("x^2 + y^2 + z^2 - 4", xyz), P("x^2 + y^2 - 2 x", xyz)}, {ch},
                             std::nullopt, true, true, xyz);
  CaseRecord c =
      record("viviani", "Viviani curve, E = the real window with x in [0, 2]", std::move(v));
  auto b = VarietySpec::make(3, {P("u^2 + v + w - 4", uvw), P("u^2 + v - 2 u", uvw)},
                             {chart(1, PS({"t", "2 t - t^2", "4 - 2 t"}, t))}, std::nullopt, true,
                             true, uvw);
  c.related.emplace("B", std::move(b));
  c.related.emplace("t", VarietySpec::affine_space(1, t));
  c.maps["g"] = PS({"x", "y^2", "z^2"}, xyz);
  c.maps["f"] = PS({"t", "2 t - t^2", "4 - 2 t"}, t);
  c.compacts["E"] = ParamRegion{0, ParamAnnulus{1.0, 1.0}};
  PointSet k;
  for (int j = 0; j < 64; ++j) {
    const double x = 1.0 - std::cos(std::numbers::pi * j / 63.0);
    k.points.push_back({x, 2.0 * x - x * x, 4.0 - 2.0 * x});
  }
  c.compacts["K_on_B"] = std::move(k);
  // The stated closed form, and V_[0,2](x) which is what the chart degrees
  // give: f has degree 2, and the doubled form grows like 2 log|x| while
  // ||z|| ~ |x| on the curve, too fast for a Green function.
  c.oracles["green_E"] = [](const Point& z) { return 2.0 * interval_green_0_2(z[0]); };
  c.oracles["interval_green_x"] = [](const Point& z) { return interval_green_0_2(z[0]); };
  c.exact["rho_g"] = Rational(2);
  c.exact["loja_g"] = Rational(2);
  c.exact["rho_f"] = Rational(2);
  c.default_compact = "E";
  c.provenance =
      "Viviani window example: g(x,y,z) = (x, y^2, z^2), f(t) = (t, 2t - t^2, 4 - 2t), "
      "stated V_E = 2 log|x - 1 + sqrt(x^2 - 2x)|";
  return c;
}

CaseRecord parabola_exponent() {
  const Names wz{"w", "z"};
  const Names t{"t"};
  SadullaevSplit split;
  split.x_indices = {0};
  split.y_indices = {1};
  split.C = 1.0;
  split.c = 2.0;
  auto v = VarietySpec::make(2, {P("w - z^2", wz)}, {chart(1, PS({"t^2", "t"}, t))}, split, true,
                             true, wz);
  CaseRecord c = record("parabola_exponent", "parabola w = z^2 with f = (z^2, wz)", std::move(v));
  c.maps["f"] = PS({"z^2", "w z"}, wz);
  c.compacts["K"] = ParamRegion{0, ParamBall{{0.0}, 1.0}};
  c.exact["rho_f"] = Rational(3, 2);
  c.default_compact = "K";
  c.provenance = "parabola example: rho(f, A) = 3/2 for f = (z^2, wz) on w = z^2";
  return c;
}

CaseRecord negative_loja() {
  const Names wz{"w", "z"};
  CaseRecord c = record("negative_loja", "C^2 with f = (w, wz - 1), not proper",
                        VarietySpec::affine_space(2, wz));
  c.maps["f"] = PS({"w", "w z - 1"}, wz);
  c.compacts["K"] = BallSet{{0.0, 0.0}, 1.0};
  c.exact["loja_f"] = Rational(-1);
  c.exact["rho_f"] = Rational(2);
  c.default_compact = "K";
  c.provenance = "f = (w, wz - 1) on C^2: L_inf = -1 along w = 1/z";
  return c;
}

CaseRecord circle_bw() {
  const Names xy{"x", "y"};
  const Names t{"t"};
  auto v = VarietySpec::make(2, {P("x^2 + y^2 - 1", xy)},
                             {chart(1, PS({"0.5 t + 0.5 t^-1", "-0.5 I t + 0.5 I t^-1"}, t))},
                             std::nullopt, true, true, xy);
  CaseRecord c =
      record("circle_bw", "complex circle x^2 + y^2 = 1 with K the real unit circle", std::move(v));
  c.maps["p"] = PS({"x^3 + x^2 y + x y^2 + y^3"}, xy);
  c.compacts["K"] = ParamRegion{0, ParamAnnulus{1.0, 1.0}};
  c.oracles["green_K"] = [](const Point& z) {
    return std::abs(std::log(std::abs(z[0] + Complex(0.0, 1.0) * z[1])));
  };
  c.exact["rho_p"] = Rational(1);
  c.default_compact = "K";
  c.provenance = "circle example: rho(p, A) = 1 < deg p = 3 for p = x^3 + x^2y + xy^2 + y^3";
  return c;
}

struct GridSpec {
  std::string kind;
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
};

GridSpec parse_grid(std::string_view grid) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = grid.find(':', start);
    parts.push_back(grid.substr(start, colon == std::string_view::npos ? colon : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  auto bad = [&] { return Error(ErrorCode::Parse, "bad grid '" + std::string(grid) + "'"); };
  if (parts.size() != 4) throw bad();
  GridSpec g;
  g.kind = std::string(parts[0]);
  auto number = [&](std::string_view s) {
    try {
      std::size_t used = 0;
      const double x = std::stod(std::string(s), &used);
      if (used != s.size()) throw bad();
      return x;
    } catch (const std::logic_error&) {
      throw bad();
    }
  };
  g.lo = number(parts[1]);
  g.hi = number(parts[2]);
  const auto* end = parts[3].data() + parts[3].size();
  if (std::from_chars(parts[3].data(), end, g.count).ptr != end || g.count < 1) throw bad();
  if (g.kind != "shell" && g.kind != "box") throw bad();
  if (g.kind == "shell" && !(g.lo > 0.0 && g.hi >= g.lo)) throw bad();
  if (g.kind == "box" && !(g.hi >= g.lo)) throw bad();
  return g;
}

SandwichSetup assemble(std::vector<MultiPoly> f, VarietySpec source, CompactSetSpec target_compact,
                       GreenEstimate target, GreenEstimate pre, std::vector<Point> testpoints) {
  SandwichSetup s{std::move(f),
                  std::move(source),
                  std::move(target_compact),
                  std::move(target),
                  std::move(pre),
                  0.0,
                  0.0,
                  {},
                  std::move(testpoints)};
  return s;
}

}  // namespace

double interval_green_0_2(Complex x) {
  const Complex zeta = x - 1.0;
  const Complex s = std::sqrt(zeta * zeta - 1.0);
  // |zeta + s| |zeta - s| = 1, so the larger branch is |log| of either.
  return std::abs(std::log(std::abs(zeta + s)));
}

const std::vector<CaseRecord>& registry() {
  static const std::vector<CaseRecord> cases = [] {
    std::vector<CaseRecord> out;
    out.push_back(cusp());
    out.push_back(cross());
    out.push_back(sphere_polyhedron());
    out.push_back(viviani());
    out.push_back(parabola_exponent());
    out.push_back(negative_loja());
    out.push_back(circle_bw());
    return out;
  }();
  return cases;
}

const CaseRecord& find_case(std::string_view name) {
  for (const auto& c : registry()) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::InvalidSpec, "unknown case '" + std::string(name) + "'");
}

std::vector<Point> grid_points(const VarietySpec& v, std::string_view grid, std::uint64_t seed) {
  const GridSpec g = parse_grid(grid);
  if (v.charts().empty()) throw Error(ErrorCode::NoChart, "grids are laid out through charts");
  std::vector<Point> out;
  out.reserve(g.count);
  std::mt19937_64 rng(seed);

  if (g.kind == "box") {
    std::uniform_real_distribution<double> u(g.lo, g.hi);
    for (int i = 0; i < g.count; ++i) {
      const Chart& ch = v.charts()[i % v.charts().size()];
      Point t(ch.param_dim);
      bool zero = false;
      for (auto& c : t) {
        c = Complex(u(rng), u(rng));
        zero = zero || c == Complex(0.0);
      }
      if (zero && ch.domain == ParamDomain::Punctured) {
        --i;
        continue;
      }
      out.push_back(ch.eval(t));
    }
    return out;
  }

  struct End {
    const Chart* chart;
    bool at_infinity;
    int degree;
  };
  std::vector<End> ends;
  for (const auto& ch : v.charts()) {
    if (ch.positive_degree() > 0) ends.push_back({&ch, true, ch.positive_degree()});
    if (ch.pole_degree() > 0) ends.push_back({&ch, false, ch.pole_degree()});
  }
  if (ends.empty()) throw Error(ErrorCode::Unsupported, "charts are constant");
  for (int i = 0; i < g.count; ++i) {
    const double frac = g.count == 1 ? 0.0 : static_cast<double>(i) / (g.count - 1);
    const double r = g.lo * std::pow(g.hi / g.lo, frac);
    const End& end = ends[i % ends.size()];
    bool found = false;
    for (int attempt = 0; attempt < 50 && !found; ++attempt) {
      const Point u = random_unit_vector(end.chart->param_dim, rng);
      auto along = [&](double s) {
        Point t = u;
        for (auto& c : t) c *= s;
        return norm(end.chart->eval(t));
      };
      const double s0 = std::pow(r, (end.at_infinity ? 1.0 : -1.0) / end.degree);
      const auto s = find_scale_in_band(along, s0, r, 1.01 * r, end.at_infinity);
      if (!s) continue;
      Point t = u;
      for (auto& c : t) c *= *s;
      out.push_back(end.chart->eval(t));
      found = true;
    }
    if (!found) {
      throw Error(ErrorCode::BracketingFailed,
                  "no variety point with norm near " + std::to_string(r));
    }
  }
  return out;
}

PipelineGreen functional_equation_green(const CaseRecord& c) {
  PipelineGreen out;
  auto decide = [&](const std::string& map, const VarietySpec& domain) {
    EqualityMode m = equality_mode(c.maps.at(map), domain);
    if (!m.flag) {
      throw Error(ErrorCode::InvalidSpec,
                  "map '" + map + "' of case '" + c.name + "' is not in equality mode");
    }
    out.steps.emplace_back(map, m);
    return m.d;
  };
  auto disc = [](const Point& z) {
    double v = 0.0;
    for (const auto& c : z) v = std::max(v, log_plus(std::abs(c)));
    return v;
  };

  Evaluator green;
  if (c.name == "cusp") {
    const VarietySpec& line = c.related.at("xi");
    const double d = decide("f", line);
    green = green_on_image(c.maps.at("f"), d, disc, FiberSolver::chart_univariate(line));
  } else if (c.name == "cross" || c.name == "sphere_polyhedron") {
    const double d = decide("f", c.variety);
    green = green_from_functional_equation(c.maps.at("f"), d, disc);
  } else if (c.name == "viviani") {
    const VarietySpec& line = c.related.at("t");
    const double df = decide("f", line);
    const double dg = decide("g", c.variety);
    Evaluator on_b = green_on_image(
        c.maps.at("f"), df, [](const Point& t) { return interval_green_0_2(t[0]); },
        FiberSolver::chart_univariate(line));
    green = green_from_functional_equation(c.maps.at("g"), dg, std::move(on_b));
  } else {
    throw Error(ErrorCode::Unsupported, "no functional-equation pipeline for '" + c.name + "'");
  }
  out.estimate.method = GreenMethod::FunctionalEquation;
  out.estimate.degree = 1;
  out.estimate.slack = 0.0;
  out.estimate.evaluator = std::move(green);
  for (const auto& [name, m] : out.steps) out.estimate.metadata["d_" + name] = m.d;
  return out;
}

SandwichSetup sandwich_setup(const CaseRecord& c, const SandwichOptions& o) {
  const std::uint64_t seed_target = split_seed(o.seed, 1);
  const std::uint64_t seed_pre = split_seed(o.seed, 2);
  const std::uint64_t seed_test = split_seed(o.seed, 3);

  auto with_constants = [&](SandwichSetup s) {
    std::optional<double> k = o.k;
    std::optional<double> l = o.l;
    s.constants_from = "exact";
    if (!k || !l) {
      std::optional<ExactExponents> e;
      try {
        e = exact_exponents_variety(s.f, s.source);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::Unsupported) throw;
      }
      if (e && e->loja_available && e->growth && e->loja) {
        if (!l) l = to_double(*e->growth);
        if (!k) k = to_double(*e->loja);
      } else {
        s.constants_from = "estimated";
        if (!l) l = growth_exponent(s.f, s.source, Schedule::standard()).value;
        if (!k) k = lojasiewicz_exponent(s.f, s.source, Schedule::standard()).value;
      }
    }
    s.k = *k;
    s.l = *l;
    return s;
  };

  if (c.name == "cusp") {
    const VarietySpec& line = c.related.at("xi");
    const CompactSetSpec& e = c.compacts.at("E");
    GreenEstimate target =
        christoffel_estimate(sample_compact(c.variety, e, o.design_size, seed_target), o.degree);
    GreenEstimate pre =
        closed_form_estimate([](const Point& z) { return log_plus(std::abs(z[0])); }, "unit_disc");
    pre.design = std::make_shared<const SampleDesign>(
        sample_compact(line, BallSet{{0.0}, 1.0}, 256, seed_pre));
    return with_constants(
        assemble(c.maps.at("f"), line, e, std::move(target), std::move(pre),
                 grid_points(line, "shell:0.5:4:" + std::to_string(o.testpoints), seed_test)));
  }
  if (c.name == "cross") {
    const CompactSetSpec& e = c.compacts.at("E");
    GreenEstimate target =
        closed_form_estimate([](const Point& z) { return log_plus(std::abs(z[0])); }, "unit_disc");
    GreenEstimate pre =
        christoffel_estimate(sample_compact(c.variety, e, o.design_size, seed_pre), o.degree);
    return with_constants(
        assemble(c.maps.at("f"), c.variety, BallSet{{0.0}, 1.0}, std::move(target), std::move(pre),
                 grid_points(c.variety, "shell:0.5:8:" + std::to_string(o.testpoints), seed_test)));
  }
  if (c.name == "sphere_polyhedron") {
    const Names u{"u1", "u2"};
    const CompactSetSpec& e = c.compacts.at("E");
    GreenEstimate target = closed_form_estimate(
        [](const Point& z) { return std::max(log_plus(std::abs(z[0])), log_plus(std::abs(z[1]))); },
        "unit_bidisc");
    GreenEstimate pre =
        christoffel_estimate(sample_compact(c.variety, e, o.design_size, seed_pre), o.degree);
    return with_constants(assemble(
        c.maps.at("f"), c.variety, PolyhedronSet{{{P("u1", u), 1.0}, {P("u2", u), 1.0}}},
        std::move(target), std::move(pre),
        grid_points(c.variety, "shell:1.5:20:" + std::to_string(o.testpoints), seed_test)));
  }
  throw Error(ErrorCode::Unsupported, "no sandwich setup for case '" + c.name + "'");
}

}  // namespace plurigreen
