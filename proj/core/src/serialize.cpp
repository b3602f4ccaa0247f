#include "plurigreen/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "plurigreen/error.hpp"

namespace plurigreen {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidSpec, what); }

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    bad(std::string(what) + ": " + e.what());
  }
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing member '") + key + "'");
  return j.at(key);
}

Json points_json(const std::vector<Point>& pts) {
  Json a = Json::array();
  for (const auto& z : pts) a.push_back(to_json(z));
  return a;
}

std::vector<Point> points_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array of points");
  std::vector<Point> out;
  for (const auto& z : j) out.push_back(point_from_json(z));
  return out;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ',';
    const std::string& c = cells[i];
    if (c.find_first_of(",\"\n\r") == std::string::npos) {
      row += c;
    } else {
      row += '"';
      for (char ch : c) {
        if (ch == '"') row += '"';
        row += ch;
      }
      row += '"';
    }
  }
  return row + "\r\n";
}

void point_cells(const Point& z, std::vector<std::string>& cells) {
  for (const auto& c : z) {
    cells.push_back(format_real(c.real()));
    cells.push_back(format_real(c.imag()));
  }
}

void coord_headers(std::size_t n, std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < n; ++i) {
    cells.push_back("re" + std::to_string(i));
    cells.push_back("im" + std::to_string(i));
  }
}

}  // namespace

Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json to_json(const Point& z) {
  Json a = Json::array();
  for (const auto& c : z) a.push_back(to_json(c));
  return a;
}

Point point_from_json(const Json& j) {
  return guarded("point", [&] {
    if (!j.is_array()) bad("point must be an array of [re, im] pairs");
    Point z;
    for (const auto& c : j) {
      if (c.is_number()) {
        z.emplace_back(c.get<double>(), 0.0);
      } else {
        if (!c.is_array() || c.size() != 2) bad("complex entries are [re, im]");
        z.emplace_back(c[0].get<double>(), c[1].get<double>());
      }
    }
    return z;
  });
}

Json to_json(const MultiPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    terms.push_back({{"exp", e}, {"re", c.real()}, {"im", c.imag()}});
  }
  return {{"num_vars", p.num_vars()}, {"laurent", p.laurent()}, {"terms", terms}};
}

MultiPoly poly_from_json(const Json& j) {
  return guarded("polynomial", [&] {
    const int n = member(j, "num_vars").get<int>();
    const bool laurent = j.value("laurent", false);
    std::vector<std::pair<Exponent, Complex>> terms;
    for (const auto& t : member(j, "terms")) {
      auto e = member(t, "exp").get<Exponent>();
      if (static_cast<int>(e.size()) != n) bad("term exponent length differs from num_vars");
      terms.emplace_back(std::move(e), Complex(t.value("re", 0.0), t.value("im", 0.0)));
    }
    return MultiPoly::from_terms(n, laurent, terms);
  });
}

Json to_json(const VarietySpec& v) {
  Json implicit = Json::array();
  for (const auto& p : v.implicit()) implicit.push_back(to_json(p));
  Json charts = Json::array();
  for (const auto& ch : v.charts()) {
    Json comps = Json::array();
    for (const auto& p : ch.components) comps.push_back(to_json(p));
    charts.push_back({{"param_dim", ch.param_dim},
                      {"components", comps},
                      {"domain", ch.domain == ParamDomain::Punctured ? "punctured" : "full"}});
  }
  Json split = nullptr;
  if (const auto& s = v.sadullaev()) {
    Json u = nullptr;
    if (s->unitary.size() != 0) {
      u = Json::array();
      for (Eigen::Index r = 0; r < s->unitary.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < s->unitary.cols(); ++c)
          row.push_back(to_json(s->unitary(r, c)));
        u.push_back(row);
      }
    }
    split = {{"unitary", u},
             {"x_indices", s->x_indices},
             {"y_indices", s->y_indices},
             {"C", s->C},
             {"c", s->c}};
  }
  return {{"ambient_dim", v.ambient_dim()},
          {"implicit", implicit},
          {"charts", charts},
          {"sadullaev", split},
          {"irreducible", v.irreducible_asserted()},
          {"locally_irreducible", v.locally_irreducible_asserted()},
          {"names", v.names()}};
}

VarietySpec variety_from_json(const Json& doc) {
  const Json& j = doc.contains("variety") ? doc.at("variety") : doc;
  return guarded("variety", [&] {
    const int n = member(j, "ambient_dim").get<int>();
    std::vector<MultiPoly> implicit;
    if (j.contains("implicit")) {
      for (const auto& p : j.at("implicit")) implicit.push_back(poly_from_json(p));
    }
    std::vector<Chart> charts;
    if (j.contains("charts")) {
      for (const auto& c : j.at("charts")) {
        Chart ch;
        ch.param_dim = member(c, "param_dim").get<int>();
        for (const auto& p : member(c, "components")) ch.components.push_back(poly_from_json(p));
        const std::string dom = c.value("domain", "full");
        if (dom != "full" && dom != "punctured") bad("chart domain must be full or punctured");
        ch.domain = dom == "punctured" ? ParamDomain::Punctured : ParamDomain::Full;
        charts.push_back(std::move(ch));
      }
    }
    std::optional<SadullaevSplit> split;
    if (j.contains("sadullaev") && !j.at("sadullaev").is_null()) {
      const Json& s = j.at("sadullaev");
      SadullaevSplit sp;
      sp.x_indices = member(s, "x_indices").get<std::vector<int>>();
      sp.y_indices = member(s, "y_indices").get<std::vector<int>>();
      sp.C = member(s, "C").get<double>();
      sp.c = s.value("c", 1.0);
      if (s.contains("unitary") && !s.at("unitary").is_null()) {
        const Json& u = s.at("unitary");
        sp.unitary.resize(static_cast<Eigen::Index>(u.size()), static_cast<Eigen::Index>(u.size()));
        for (std::size_t r = 0; r < u.size(); ++r) {
          const Point row = point_from_json(u[r]);
          if (row.size() != u.size()) bad("Sadullaev unitary must be square");
          for (std::size_t c = 0; c < row.size(); ++c) {
            sp.unitary(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
          }
        }
      }
      split = std::move(sp);
    }
    std::vector<std::string> names;
    if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
    return VarietySpec::make(n, std::move(implicit), std::move(charts), std::move(split),
                             j.value("irreducible", false), j.value("locally_irreducible", false),
                             std::move(names));
  });
}

Json to_json(const CompactSetSpec& k) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BallSet>) {
          return {{"kind", "ball"}, {"center", to_json(s.center)}, {"radius", s.radius}};
        } else if constexpr (std::is_same_v<T, PolyhedronSet>) {
          Json cs = Json::array();
          for (const auto& [p, b] : s.constraints)
            cs.push_back({{"poly", to_json(p)}, {"bound", b}});
          return {{"kind", "polyhedron"}, {"constraints", cs}};
        } else if constexpr (std::is_same_v<T, ParamRegion>) {
          Json shape;
          if (const auto* b = std::get_if<ParamBall>(&s.shape)) {
            shape = {{"type", "ball"}, {"center", to_json(b->center)}, {"radius", b->radius}};
          } else {
            const auto& a = std::get<ParamAnnulus>(s.shape);
            shape = {{"type", "annulus"}, {"inner", a.inner}, {"outer", a.outer}};
          }
          return {{"kind", "param_region"}, {"chart", s.chart}, {"shape", shape}};
        } else {
          return {{"kind", "points"}, {"points", points_json(s.points)}};
        }
      },
      k);
}

CompactSetSpec compact_from_json(const Json& doc) {
  const Json& j = doc.contains("compact") ? doc.at("compact") : doc;
  return guarded("compact set", [&]() -> CompactSetSpec {
    const std::string kind = member(j, "kind").get<std::string>();
    if (kind == "ball") {
      return BallSet{point_from_json(member(j, "center")), member(j, "radius").get<double>()};
    }
    if (kind == "polyhedron") {
      PolyhedronSet s;
      for (const auto& c : member(j, "constraints")) {
        s.constraints.emplace_back(poly_from_json(member(c, "poly")),
                                   member(c, "bound").get<double>());
      }
      return s;
    }
    if (kind == "param_region") {
      ParamRegion r;
      r.chart = j.value("chart", 0);
      const Json& shape = member(j, "shape");
      const std::string type = member(shape, "type").get<std::string>();
      if (type == "ball") {
        r.shape = ParamBall{point_from_json(member(shape, "center")),
                            member(shape, "radius").get<double>()};
      } else if (type == "annulus") {
        r.shape = ParamAnnulus{member(shape, "inner").get<double>(),
                               member(shape, "outer").get<double>()};
      } else {
        bad("parameter region shape must be ball or annulus");
      }
      return r;
    }
    if (kind == "points") return PointSet{points_from_json(member(j, "points"))};
    bad("unknown compact kind '" + kind + "'");
  });
}

Json real_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double real_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  bad("expected a real number");
}

Json to_json(const ExactExponents& e) {
  return {{"growth", e.growth ? Json(to_string(*e.growth)) : Json("-inf")},
          {"loja", !e.loja_available ? Json(nullptr)
                   : e.loja          ? Json(to_string(*e.loja))
                                     : Json("-inf")},
          {"loja_available", e.loja_available},
          {"limit_exists", e.limit_exists}};
}

Json to_json(const ExponentEstimate& e) {
  Json per = Json::array();
  for (const auto& [r, s] : e.per_radius) {
    per.push_back({{"radius", r}, {"statistic", real_to_json(s)}});
  }
  Json out = {{"kind", exponent_kind_name(e.kind)},
              {"value", e.exact_value ? Json(to_string(*e.exact_value)) : real_to_json(e.value)},
              {"numeric_value", real_to_json(e.value)},
              {"exact", e.exact},
              {"per_radius", per},
              {"fit",
               {{"slope", real_to_json(e.fit.slope)},
                {"intercept", real_to_json(e.fit.intercept)},
                {"residual", real_to_json(e.fit.residual)}}}};
  return out;
}

Json to_json(const PropernessReport& r) {
  return {{"verdict", properness_name(r.verdict)}, {"loja", to_json(r.loja)}};
}

Json to_json(const ConeReport& r) {
  return {{"verdict", cone_verdict_name(r.verdict)},
          {"exact_mode", r.exact_mode},
          {"min_value", real_to_json(r.min_value)},
          {"far_zero_counts", r.far_zero_counts}};
}

Json metadata_json(const GreenEstimate& est) {
  Json meta = Json::object();
  for (const auto& [k, v] : est.metadata) meta[k] = real_to_json(v);
  return {{"method", green_method_name(est.method)},
          {"n", est.degree},
          {"rank", est.basis_rank},
          {"slack", real_to_json(est.slack)},
          {"C_est", est.growth_constant ? real_to_json(*est.growth_constant) : Json(nullptr)},
          {"design_size", est.design ? Json(est.design->points.size()) : Json(nullptr)},
          {"design_seed", est.design ? Json(est.design->seed) : Json(nullptr)},
          {"extra", meta}};
}

Json to_json(const TransformReport& r) {
  return {{"verdict", r.holds ? "HOLDS" : "FAILS"},
          {"worst_lower_margin", real_to_json(r.worst_lower_margin)},
          {"worst_upper_margin", real_to_json(r.worst_upper_margin)},
          {"k", r.k},
          {"l", r.l},
          {"tau", r.tau},
          {"rows", r.rows.size()},
          {"violations", r.violations}};
}

Json to_json(const BwReport& r) {
  return {{"verdict", r.holds ? "HOLDS" : "FAILS"},
          {"grade", r.grade},
          {"tau", r.tau},
          {"log_norm_K", real_to_json(r.log_norm_k)},
          {"worst_margin", real_to_json(r.worst_margin)},
          {"rows", r.rows.size()},
          {"flagged", r.flagged}};
}

Json to_json(const EqualityMode& m) {
  return {{"flag", m.flag},
          {"d", m.exact_d ? Json(to_string(*m.exact_d)) : real_to_json(m.d)},
          {"growth", real_to_json(m.growth)},
          {"loja", real_to_json(m.loja)},
          {"route", m.route}};
}

Json to_json(const CaseRecord& c) {
  Json related = Json::object();
  for (const auto& [name, v] : c.related) related[name] = to_json(v);
  Json maps = Json::object();
  for (const auto& [name, f] : c.maps) {
    Json comps = Json::array();
    for (const auto& p : f) comps.push_back(to_json(p));
    maps[name] = comps;
  }
  Json compacts = Json::object();
  for (const auto& [name, k] : c.compacts) compacts[name] = to_json(k);
  Json exact = Json::object();
  for (const auto& [name, q] : c.exact) exact[name] = to_string(q);
  Json oracles = Json::array();
  for (const auto& [name, f] : c.oracles) oracles.push_back(name);
  return {{"name", c.name},
          {"summary", c.summary},
          {"variety", to_json(c.variety)},
          {"compact", to_json(c.compacts.at(c.default_compact))},
          {"default_compact", c.default_compact},
          {"compacts", compacts},
          {"related", related},
          {"maps", maps},
          {"exact", exact},
          {"oracles", oracles},
          {"provenance", c.provenance}};
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string design_csv(const SampleDesign& design) {
  std::string out;
  std::vector<std::string> head;
  coord_headers(static_cast<std::size_t>(design.ambient_dim()), head);
  out += csv_row(head);
  for (const auto& z : design.points) {
    std::vector<std::string> cells;
    point_cells(z, cells);
    out += csv_row(cells);
  }
  return out;
}

std::string grid_csv(const std::vector<Point>& points, const std::vector<double>& values,
                     const std::string& value_name) {
  if (points.size() != values.size()) {
    throw Error(ErrorCode::DimensionMismatch, "grid points and values differ in count");
  }
  std::string out;
  std::vector<std::string> head;
  coord_headers(points.empty() ? 0 : points.front().size(), head);
  head.push_back(value_name);
  out += csv_row(head);
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<std::string> cells;
    point_cells(points[i], cells);
    cells.push_back(format_real(values[i]));
    out += csv_row(cells);
  }
  return out;
}

std::string to_csv(const TransformReport& r) {
  std::string out;
  std::vector<std::string> head;
  coord_headers(r.rows.empty() ? 0 : r.rows.front().z.size(), head);
  for (const char* h : {"lower", "mid", "upper", "lower_margin", "upper_margin", "violated"}) {
    head.push_back(h);
  }
  out += csv_row(head);
  for (const auto& row : r.rows) {
    std::vector<std::string> cells;
    point_cells(row.z, cells);
    for (double x : {row.lower, row.mid, row.upper, row.lower_margin, row.upper_margin}) {
      cells.push_back(format_real(x));
    }
    cells.push_back(row.violated ? "1" : "0");
    out += csv_row(cells);
  }
  return out;
}

std::string to_csv(const BwReport& r) {
  std::string out;
  std::vector<std::string> head;
  coord_headers(r.rows.empty() ? 0 : r.rows.front().z.size(), head);
  for (const char* h : {"log_abs_p", "green", "margin", "flagged"}) head.push_back(h);
  out += csv_row(head);
  for (const auto& row : r.rows) {
    std::vector<std::string> cells;
    point_cells(row.z, cells);
    for (double x : {row.log_abs_p, row.green, row.margin}) cells.push_back(format_real(x));
    cells.push_back(row.margin > r.tau ? "1" : "0");
    out += csv_row(cells);
  }
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SpecIO, "cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, "'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::SpecIO, "cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error(ErrorCode::SpecIO, "write to '" + path.string() + "' failed");
}

}  // namespace plurigreen
