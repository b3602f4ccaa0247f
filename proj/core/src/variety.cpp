#include "plurigreen/variety.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "plurigreen/error.hpp"
#include "plurigreen/shell_search.hpp"

namespace plurigreen {

namespace {

constexpr int kConsistencyDraws = 1000;

// Parameter t = rho * u with log rho uniform in [log lo, log hi].
template <class Rng>
Point log_radial_param(int k, double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> unif(std::log(lo), std::log(hi));
  Point u = random_unit_vector(k, rng);
  const double rho = std::exp(unif(rng));
  for (auto& c : u) c *= rho;
  return u;
}

bool param_allowed(const Chart& chart, std::span<const Complex> t) {
  if (chart.domain == ParamDomain::Full) return true;
  return std::none_of(t.begin(), t.end(), [](const Complex& c) { return c == Complex(0.0); });
}

void check_chart_consistency(int ambient_dim, const std::vector<MultiPoly>& implicit,
                             const Chart& chart, std::mt19937_64& rng) {
  for (int draw = 0; draw < kConsistencyDraws; ++draw) {
    const Point t = log_radial_param(chart.param_dim, 0.2, 5.0, rng);
    const Point z = chart.eval(t);
    const double nz = norm(z);
    for (const auto& p : implicit) {
      const double bound = 1e-8 * std::pow(1.0 + nz, p.total_degree().value_or(0));
      if (std::abs(p.eval(z)) > bound) {
        throw Error(ErrorCode::InvalidSpec, "chart image violates an implicit equation (residual " +
                                                std::to_string(std::abs(p.eval(z))) + ")");
      }
    }
    (void)ambient_dim;
  }
}

}  // namespace

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Point Chart::eval(std::span<const Complex> t) const {
  if (static_cast<int>(t.size()) != param_dim) {
    throw Error(ErrorCode::DimensionMismatch, "chart parameter has wrong dimension");
  }
  return eval_map(components, t);
}

int Chart::positive_degree() const {
  int d = 0;
  for (const auto& c : components) d = std::max(d, c.total_degree().value_or(0));
  return d;
}

int Chart::pole_degree() const {
  int d = 0;
  for (const auto& c : components) d = std::max(d, c.laurent_pole_degree());
  return d;
}

bool Chart::is_laurent() const {
  return std::any_of(components.begin(), components.end(),
                     [](const MultiPoly& p) { return p.laurent(); });
}

std::pair<double, double> SadullaevSplit::split_norms(std::span<const Complex> z) const {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(z.size()));
  for (std::size_t i = 0; i < z.size(); ++i) v(static_cast<Eigen::Index>(i)) = z[i];
  if (unitary.size() != 0) v = unitary * v;
  double nx = 0.0;
  double ny = 0.0;
  for (int i : x_indices) nx += std::norm(v(i));
  for (int i : y_indices) ny += std::norm(v(i));
  return {std::sqrt(nx), std::sqrt(ny)};
}

VarietySpec VarietySpec::make(int ambient_dim, std::vector<MultiPoly> implicit,
                              std::vector<Chart> charts, std::optional<SadullaevSplit> sadullaev,
                              bool irreducible, bool locally_irreducible,
                              std::vector<std::string> names) {
  if (ambient_dim < 1) throw Error(ErrorCode::InvalidSpec, "ambient_dim must be positive");
  if (implicit.empty() && charts.empty()) {
    throw Error(ErrorCode::InvalidSpec, "variety needs implicit equations or charts");
  }
  for (const auto& p : implicit) {
    if (p.num_vars() != ambient_dim) {
      throw Error(ErrorCode::InvalidSpec, "implicit equation has wrong number of variables");
    }
    if (p.laurent()) throw Error(ErrorCode::InvalidSpec, "implicit equations must be polynomials");
  }
  for (const auto& ch : charts) {
    if (static_cast<int>(ch.components.size()) != ambient_dim) {
      throw Error(ErrorCode::InvalidSpec, "chart component count differs from ambient_dim");
    }
    if (ch.param_dim < 1) throw Error(ErrorCode::InvalidSpec, "chart param_dim must be positive");
    for (const auto& c : ch.components) {
      if (c.num_vars() != ch.param_dim) {
        throw Error(ErrorCode::InvalidSpec, "chart component has wrong number of parameters");
      }
    }
    if (ch.is_laurent() && ch.domain != ParamDomain::Punctured) {
      throw Error(ErrorCode::InvalidSpec, "Laurent chart must use the punctured domain");
    }
  }

  std::mt19937_64 rng(0x5eed);
  for (const auto& ch : charts) check_chart_consistency(ambient_dim, implicit, ch, rng);

  if (sadullaev) {
    const auto& s = *sadullaev;
    if (!(s.C >= 0.0) || !(s.c > 0.0)) {
      throw Error(ErrorCode::InvalidSpec, "Sadullaev constants must satisfy C >= 0, c > 0");
    }
    if (s.unitary.size() != 0 &&
        (s.unitary.rows() != ambient_dim || s.unitary.cols() != ambient_dim)) {
      throw Error(ErrorCode::InvalidSpec, "Sadullaev unitary has wrong shape");
    }
    std::vector<int> all(s.x_indices);
    all.insert(all.end(), s.y_indices.begin(), s.y_indices.end());
    std::sort(all.begin(), all.end());
    for (int i = 0; i < ambient_dim; ++i) {
      if (static_cast<int>(all.size()) != ambient_dim || all[i] != i) {
        throw Error(ErrorCode::InvalidSpec, "Sadullaev index sets must partition the coordinates");
      }
    }
    if (!charts.empty()) {
      for (int draw = 0; draw < kConsistencyDraws; ++draw) {
        const Chart& ch = charts[draw % charts.size()];
        const Point t = log_radial_param(ch.param_dim, 0.1, 100.0, rng);
        const auto [nx, ny] = s.split_norms(ch.eval(t));
        if (nx > s.C * (1.0 + std::pow(ny, s.c)) + 1e-6) {
          throw Error(ErrorCode::InvalidSpec,
                      "Sadullaev bound ||x|| <= C(1+||y||^c) fails on a chart sample");
        }
      }
    }
  }

  VarietySpec v;
  v.ambient_dim_ = ambient_dim;
  v.implicit_ = std::move(implicit);
  v.charts_ = std::move(charts);
  v.sadullaev_ = std::move(sadullaev);
  v.irreducible_ = irreducible;
  v.locally_irreducible_ = locally_irreducible;
  if (names.empty()) {
    for (int i = 0; i < ambient_dim; ++i) names.push_back("x" + std::to_string(i));
  }
  if (static_cast<int>(names.size()) != ambient_dim) {
    throw Error(ErrorCode::InvalidSpec, "variable name count differs from ambient_dim");
  }
  v.names_ = std::move(names);
  return v;
}

VarietySpec VarietySpec::affine_space(int n, std::vector<std::string> names) {
  Chart id;
  id.param_dim = n;
  id.components = identity_map(n);
  SadullaevSplit split;
  for (int i = 0; i < n; ++i) split.y_indices.push_back(i);
  split.C = 0.0;
  split.c = 1.0;
  return make(n, {}, {id}, split, true, true, std::move(names));
}

bool VarietySpec::is_affine_space() const {
  if (!implicit_.empty() || charts_.empty()) return false;
  const auto id = identity_map(ambient_dim_);
  return std::any_of(charts_.begin(), charts_.end(), [&](const Chart& c) {
    return c.param_dim == ambient_dim_ && c.components == id;
  });
}

std::string compact_kind_name(const CompactSetSpec& k) {
  switch (k.index()) {
    case 0: return "ball";
    case 1: return "polyhedron";
    case 2: return "param_region";
    default: return "points";
  }
}

void validate_compact(const VarietySpec& v, const CompactSetSpec& k) {
  const int n = v.ambient_dim();
  if (const auto* b = std::get_if<BallSet>(&k)) {
    if (static_cast<int>(b->center.size()) != n) {
      throw Error(ErrorCode::InvalidSpec, "ball center has wrong dimension");
    }
    if (!(b->radius > 0.0)) throw Error(ErrorCode::InvalidSpec, "ball radius must be positive");
  } else if (const auto* p = std::get_if<PolyhedronSet>(&k)) {
    if (p->constraints.empty())
      throw Error(ErrorCode::InvalidSpec, "polyhedron has no constraints");
    for (const auto& [poly, bound] : p->constraints) {
      if (poly.num_vars() != n) {
        throw Error(ErrorCode::InvalidSpec, "polyhedron constraint has wrong number of variables");
      }
      if (!(bound > 0.0)) throw Error(ErrorCode::InvalidSpec, "polyhedron bound must be positive");
    }
  } else if (const auto* r = std::get_if<ParamRegion>(&k)) {
    if (r->chart < 0 || r->chart >= static_cast<int>(v.charts().size())) {
      throw Error(ErrorCode::InvalidSpec, "param region references a missing chart");
    }
    const Chart& ch = v.charts()[r->chart];
    if (const auto* pb = std::get_if<ParamBall>(&r->shape)) {
      if (static_cast<int>(pb->center.size()) != ch.param_dim) {
        throw Error(ErrorCode::InvalidSpec, "param ball center has wrong dimension");
      }
      if (!(pb->radius > 0.0))
        throw Error(ErrorCode::InvalidSpec, "param ball radius must be positive");
    } else {
      const auto& a = std::get<ParamAnnulus>(r->shape);
      if (!(a.inner > 0.0) || !(a.outer >= a.inner)) {
        throw Error(ErrorCode::InvalidSpec, "param annulus needs 0 < inner <= outer");
      }
    }
  } else {
    const auto& pts = std::get<PointSet>(k);
    if (pts.points.empty()) throw Error(ErrorCode::InvalidSpec, "point set is empty");
    for (const auto& p : pts.points) {
      if (static_cast<int>(p.size()) != n) {
        throw Error(ErrorCode::InvalidSpec, "point has wrong dimension");
      }
    }
  }
}

std::optional<bool> compact_contains(const CompactSetSpec& k, std::span<const Complex> z,
                                     double tol) {
  if (const auto* b = std::get_if<BallSet>(&k)) {
    Point d(z.begin(), z.end());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= b->center[i];
    return norm(d) <= b->radius * (1.0 + tol);
  }
  if (const auto* p = std::get_if<PolyhedronSet>(&k)) {
    for (const auto& [poly, bound] : p->constraints) {
      if (std::abs(poly.eval(z)) > bound + tol) return false;
    }
    return true;
  }
  if (const auto* pts = std::get_if<PointSet>(&k)) {
    for (const auto& q : pts->points) {
      Point d(z.begin(), z.end());
      for (std::size_t i = 0; i < d.size(); ++i) d[i] -= q[i];
      if (norm(d) <= tol * (1.0 + norm(q))) return true;
    }
    return false;
  }
  return std::nullopt;
}

bool membership(const VarietySpec& v, std::span<const Complex> z, double tol) {
  if (static_cast<int>(z.size()) != v.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "point dimension differs from ambient_dim");
  }
  if (v.implicit().empty()) {
    if (v.is_affine_space()) return true;
    throw Error(ErrorCode::Unsupported, "membership needs an implicit description");
  }
  const double nz = norm(z);
  for (const auto& p : v.implicit()) {
    const double bound = tol * std::pow(1.0 + nz, p.total_degree().value_or(0));
    if (std::abs(p.eval(z)) > bound) return false;
  }
  return true;
}

namespace {

constexpr long kMaxProposals = 1'000'000;
constexpr double kMinAcceptance = 1e-4;

struct ProposalRegion {
  int chart = 0;
  double inner = 0.0;  // norm bounds for t
  double outer = 1.0;
};

template <class Rng>
Point uniform_in_shell(int k, double inner, double outer, Rng& rng) {
  // Uniform volume measure on {inner <= ||t|| <= outer} in R^{2k}.
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double dim = 2.0 * k;
  const double a = std::pow(inner, dim);
  const double b = std::pow(outer, dim);
  const double rho = std::pow(a + (b - a) * unif(rng), 1.0 / dim);
  Point u = random_unit_vector(k, rng);
  for (auto& c : u) c *= rho;
  return u;
}

template <class Rng>
Point sample_param_region(const ParamRegion& r, int k, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (const auto* b = std::get_if<ParamBall>(&r.shape)) {
    Point t = uniform_in_shell(k, 0.0, b->radius, rng);
    for (int i = 0; i < k; ++i) t[i] += b->center[i];
    return t;
  }
  const auto& a = std::get<ParamAnnulus>(r.shape);
  Point t(k);
  for (int i = 0; i < k; ++i) {
    const double rho =
        std::sqrt(a.inner * a.inner + (a.outer * a.outer - a.inner * a.inner) * unif(rng));
    const double phi = 2.0 * std::numbers::pi * unif(rng);
    t[i] = std::polar(rho, phi);
  }
  return t;
}

bool in_compact(const CompactSetSpec& k, const Point& z) {
  return compact_contains(k, z, 1e-9).value_or(true);
}

}  // namespace

SampleDesign sample_compact(const VarietySpec& v, const CompactSetSpec& k, int count,
                            std::uint64_t seed) {
  validate_compact(v, k);
  if (count < 1) throw Error(ErrorCode::InvalidSpec, "sample count must be positive");
  SampleDesign design;
  design.origin = k;
  design.seed = seed;
  std::mt19937_64 rng(split_seed(seed, 0));

  if (const auto* pts = std::get_if<PointSet>(&k)) {
    design.points = pts->points;
    return design;
  }

  const bool check_variety = !v.implicit().empty();
  auto accept_point = [&](const Point& z) { return !check_variety || membership(v, z, 1e-6); };

  if (const auto* r = std::get_if<ParamRegion>(&k)) {
    const Chart& ch = v.charts()[r->chart];
    long proposals = 0;
    while (static_cast<int>(design.points.size()) < count) {
      if (++proposals > kMaxProposals) {
        throw Error(ErrorCode::RejectionStarved, "param region sampling starved");
      }
      const Point t = sample_param_region(*r, ch.param_dim, rng);
      if (!param_allowed(ch, t)) continue;
      Point z = ch.eval(t);
      if (accept_point(z)) design.points.push_back(std::move(z));
    }
    return design;
  }

  if (v.charts().empty()) {
    throw Error(ErrorCode::Unsupported, "ball/polyhedron sampling needs at least one chart");
  }

  // Pilot: log-radial proposals locate the parameter norms that land in K.
  std::vector<ProposalRegion> regions;
  for (int c = 0; c < static_cast<int>(v.charts().size()); ++c) {
    const Chart& ch = v.charts()[c];
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int i = 0; i < 20000; ++i) {
      const Point t = log_radial_param(ch.param_dim, 1e-3, 1e3, rng);
      if (!param_allowed(ch, t)) continue;
      const Point z = ch.eval(t);
      if (in_compact(k, z)) {
        const double nt = norm(t);
        lo = std::min(lo, nt);
        hi = std::max(hi, nt);
      }
    }
    if (hi > 0.0) {
      ProposalRegion reg;
      reg.chart = c;
      reg.outer = hi * 1.25;
      reg.inner = ch.domain == ParamDomain::Punctured ? lo / 1.25 : 0.0;
      regions.push_back(reg);
    }
  }
  if (regions.empty()) {
    throw Error(ErrorCode::RejectionStarved, "no chart proposal landed in the compact set");
  }

  long proposals = 0;
  long accepted = 0;
  std::size_t which = 0;
  while (static_cast<int>(design.points.size()) < count) {
    ++proposals;
    if (proposals >= 10000 && static_cast<double>(accepted) / proposals < kMinAcceptance) {
      throw Error(ErrorCode::RejectionStarved, "acceptance rate below 1e-4");
    }
    if (proposals > kMaxProposals * 10) {
      throw Error(ErrorCode::RejectionStarved, "proposal budget exhausted");
    }
    const ProposalRegion& reg = regions[which % regions.size()];
    const Chart& ch = v.charts()[reg.chart];
    const Point t = uniform_in_shell(ch.param_dim, reg.inner, reg.outer, rng);
    if (!param_allowed(ch, t)) continue;
    Point z = ch.eval(t);
    if (!in_compact(k, z) || !accept_point(z)) continue;
    ++accepted;
    ++which;
    design.points.push_back(std::move(z));
  }
  return design;
}

std::vector<EscapeShell> sample_escape(const VarietySpec& v, std::span<const double> radii,
                                       int per_radius, std::uint64_t seed) {
  if (v.charts().empty()) throw Error(ErrorCode::Unsupported, "escape sampling needs a chart");
  if (radii.empty()) throw Error(ErrorCode::InvalidSpec, "empty radius schedule");
  if (radii.front() < 1.0) throw Error(ErrorCode::InvalidSpec, "escape radii must be >= 1");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) {
      throw Error(ErrorCode::InvalidSpec, "escape radii must be strictly increasing");
    }
  }
  if (per_radius < 1) throw Error(ErrorCode::InvalidSpec, "per_radius must be positive");

  struct End {
    int chart;
    bool at_infinity;
    int degree;
  };
  std::vector<End> ends;
  for (int c = 0; c < static_cast<int>(v.charts().size()); ++c) {
    const Chart& ch = v.charts()[c];
    if (ch.positive_degree() > 0) ends.push_back({c, true, ch.positive_degree()});
    if (ch.pole_degree() > 0) ends.push_back({c, false, ch.pole_degree()});
  }
  if (ends.empty()) throw Error(ErrorCode::Unsupported, "charts are constant; nothing escapes");

  std::vector<EscapeShell> shells(radii.size());
  for (std::size_t ri = 0; ri < radii.size(); ++ri) {
    const double r = radii[ri];
    std::mt19937_64 rng(split_seed(seed, ri));
    EscapeShell& shell = shells[ri];
    shell.radius = r;
    for (int j = 0; j < per_radius; ++j) {
      const End& end = ends[j % ends.size()];
      const Chart& ch = v.charts()[end.chart];
      bool found = false;
      for (int attempt = 0; attempt < 50 && !found; ++attempt) {
        const Point u = random_unit_vector(ch.param_dim, rng);
        auto along = [&](double s) {
          Point t = u;
          for (auto& c : t) c *= s;
          return norm(ch.eval(t));
        };
        const double s0 =
            end.at_infinity ? std::pow(r, 1.0 / end.degree) : std::pow(r, -1.0 / end.degree);
        auto s = find_scale_in_band(along, s0, r, 1.05 * r, end.at_infinity);
        if (!s) continue;
        Point t = u;
        for (auto& c : t) c *= *s;
        shell.points.push_back(ch.eval(t));
        shell.params.push_back(std::move(t));
        shell.chart_index.push_back(end.chart);
        found = true;
      }
      if (!found) {
        throw Error(ErrorCode::BracketingFailed,
                    "no chart parameter reaches the norm band at radius " + std::to_string(r));
      }
    }
  }
  return shells;
}

}  // namespace plurigreen
