#include "plurigreen/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

#include "plurigreen/error.hpp"
#include "plurigreen/shell_search.hpp"

namespace plurigreen {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_map(const std::vector<MultiPoly>& f, int ambient_dim) {
  if (f.empty()) throw Error(ErrorCode::InvalidSpec, "map has no components");
  for (const auto& fj : f) {
    if (fj.num_vars() != ambient_dim) {
      throw Error(ErrorCode::DimensionMismatch, "map component has wrong number of variables");
    }
    if (fj.laurent()) throw Error(ErrorCode::InvalidSpec, "map components must be polynomials");
  }
}

bool all_zero(const std::vector<MultiPoly>& f) {
  return std::all_of(f.begin(), f.end(), [](const MultiPoly& p) { return p.is_zero(); });
}

double log_norm(const Point& v) {
  const double n = norm(v);
  return n > 0.0 ? std::log(n) : kNegInf;
}

// Largest and smallest exponent of a univariate (Laurent) polynomial.
std::pair<int, int> exponent_range(const MultiPoly& p) {
  int hi = std::numeric_limits<int>::min();
  int lo = std::numeric_limits<int>::max();
  for (const auto& [e, c] : p.terms()) {
    hi = std::max(hi, e[0]);
    lo = std::min(lo, e[0]);
  }
  return {hi, lo};
}

std::optional<Rational> max_opt(const std::optional<Rational>& a,
                                const std::optional<Rational>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::max(*a, *b);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n == 0) return std::numeric_limits<double>::quiet_NaN();
  if (n % 2 == 1) return v[n / 2];
  if (std::isinf(v[n / 2 - 1]) || std::isinf(v[n / 2])) return v[n / 2 - 1];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Plateau over the upper half of the radii, corrected by a fit of
// y(r) = s(r) log r ~ a log r + b + c r^-gamma over the same radii: along a
// chart end of degree D, log||f|| expands in powers of 1/t with |t| ~ r^(1/D),
// so gamma = 1/D. The tail term needs four radii and gamma > 0.
// The statistic s(r) - (b + c r^-gamma) / log r then estimates the slope a at
// every radius.
void summarize(ExponentEstimate& est, double gamma) {
  const std::size_t n = est.per_radius.size();
  if (n == 0) {
    est.value = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  const std::size_t first = n / 2;
  std::vector<double> stats;
  std::vector<std::size_t> finite;
  for (std::size_t i = first; i < n; ++i) {
    stats.push_back(est.per_radius[i].second);
    if (std::isfinite(est.per_radius[i].second)) finite.push_back(i);
  }
  const auto m = static_cast<Eigen::Index>(finite.size());
  if (m >= 2) {
    const Eigen::Index cols = m >= 4 && gamma > 0.0 ? 3 : 2;
    Eigen::MatrixXd X(m, cols);
    Eigen::VectorXd y(m);
    for (Eigen::Index k = 0; k < m; ++k) {
      const auto [r, s] = est.per_radius[finite[k]];
      X(k, 0) = std::log(r);
      X(k, 1) = 1.0;
      if (cols == 3) X(k, 2) = std::pow(r, -gamma);
      y(k) = s * std::log(r);
    }
    // Column scaling keeps the small tail column from being treated as noise.
    const Eigen::VectorXd scale = X.colwise().norm().transpose();
    const Eigen::VectorXd w =
        (X * scale.cwiseInverse().asDiagonal()).colPivHouseholderQr().solve(y);
    const Eigen::VectorXd coef = w.cwiseQuotient(scale);
    est.fit.slope = coef(0);
    est.fit.intercept = coef(1);
    const double c = cols == 3 ? coef(2) : 0.0;
    est.fit.residual = std::sqrt((X * coef - y).squaredNorm() / static_cast<double>(m));
    for (std::size_t i : finite) {
      const auto [r, s] = est.per_radius[i];
      stats[i - first] = s - (est.fit.intercept + c * std::pow(r, -gamma)) / std::log(r);
    }
  }
  est.value = median(std::move(stats));
}

// gamma for summarize(): 1 / (largest degree of a chart end), or 0 (no tail
// term) when a chart is Laurent in several parameters, where no single power
// of 1/t governs the far field.
double tail_exponent(const VarietySpec& v) {
  int d = 1;
  for (const auto& ch : v.charts()) {
    if (ch.param_dim > 1 && ch.is_laurent()) return 0.0;
    d = std::max(d, ch.positive_degree());
    if (ch.domain == ParamDomain::Punctured) d = std::max(d, ch.pole_degree());
  }
  return 1.0 / d;
}

struct ChartPullback {
  const Chart* chart = nullptr;
  HoloMap gamma;
  HoloMap h;  // f o gamma
};

std::vector<ChartPullback> pullbacks(const std::vector<MultiPoly>& f, const VarietySpec& v) {
  std::vector<ChartPullback> out;
  for (const auto& ch : v.charts()) {
    out.push_back({&ch, HoloMap(ch.components), HoloMap(compose_map(f, ch.components))});
  }
  return out;
}

double ratio(double num, double den) { return num == kNegInf ? kNegInf : num / den; }

}  // namespace

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

std::string exponent_kind_name(ExponentKind k) {
  switch (k) {
    case ExponentKind::Growth: return "growth";
    case ExponentKind::Lojasiewicz: return "lojasiewicz";
    default: return "order";
  }
}

std::string properness_name(Properness p) {
  switch (p) {
    case Properness::Proper: return "PROPER";
    case Properness::NotProper: return "NOT_PROPER";
    default: return "INCONCLUSIVE";
  }
}

std::string cone_verdict_name(ConeVerdict c) {
  switch (c) {
    case ConeVerdict::Separated: return "SEPARATED";
    case ConeVerdict::CommonDirection: return "COMMON_DIRECTION";
    default: return "INCONCLUSIVE";
  }
}

Schedule Schedule::geometric(double lo, double hi, int count, int per_radius, std::uint64_t seed) {
  if (!(lo >= 1.0) || !(hi > lo) || count < 2) {
    throw Error(ErrorCode::InvalidSpec, "schedule needs 1 <= lo < hi and at least 2 radii");
  }
  Schedule s;
  s.per_radius = per_radius;
  s.seed = seed;
  for (int i = 0; i < count; ++i) {
    s.radii.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (count - 1)));
  }
  return s;
}

Schedule Schedule::standard() { return geometric(1e2, 1e6, 8, 64, 7); }

ExactExponents exact_exponents_chart(const std::vector<MultiPoly>& f, const Chart& chart) {
  check_map(f, static_cast<int>(chart.components.size()));
  const std::vector<MultiPoly> h = compose_map(f, chart.components);
  ExactExponents out;

  if (chart.param_dim > 1) {
    if (chart.is_laurent() || chart.positive_degree() > 1) {
      throw Error(ErrorCode::Unsupported,
                  "exact exponents need a one-parameter chart or a linear chart");
    }
    Eigen::MatrixXcd L(static_cast<Eigen::Index>(chart.components.size()), chart.param_dim);
    for (std::size_t i = 0; i < chart.components.size(); ++i) {
      for (int j = 0; j < chart.param_dim; ++j) {
        Exponent e(chart.param_dim, 0);
        e[j] = 1;
        L(static_cast<Eigen::Index>(i), j) = chart.components[i].coefficient(e);
      }
    }
    if (Eigen::FullPivLU<Eigen::MatrixXcd>(L).rank() != chart.param_dim) {
      throw Error(ErrorCode::Unsupported, "linear chart is not injective");
    }
    for (const auto& hj : h) {
      if (auto d = hj.total_degree()) out.growth = max_opt(out.growth, Rational(*d));
    }
    out.loja_available = false;
    return out;
  }

  struct End {
    int degree;
    bool at_infinity;
  };
  std::vector<End> ends;
  if (chart.positive_degree() > 0) ends.push_back({chart.positive_degree(), true});
  if (chart.domain == ParamDomain::Punctured && chart.pole_degree() > 0) {
    ends.push_back({chart.pole_degree(), false});
  }
  if (ends.empty()) throw Error(ErrorCode::Unsupported, "chart has no end at infinity");
  if (all_zero(h)) {
    out.limit_exists = true;
    return out;
  }
  std::optional<Rational> lo;
  for (const End& end : ends) {
    std::optional<int> best;
    for (const auto& hj : h) {
      if (hj.is_zero()) continue;
      const auto [hi_exp, lo_exp] = exponent_range(hj);
      const int e = end.at_infinity ? hi_exp : -lo_exp;
      best = best ? std::max(*best, e) : e;
    }
    const Rational q(*best, end.degree);
    out.growth = max_opt(out.growth, q);
    lo = lo ? std::min(*lo, q) : q;
  }
  out.loja = lo;
  out.limit_exists = out.growth == out.loja;
  return out;
}

ExactExponents exact_exponents_variety(const std::vector<MultiPoly>& f, const VarietySpec& v) {
  if (v.charts().empty()) throw Error(ErrorCode::NoChart, "exact exponents need a chart");
  ExactExponents out;
  bool neg_inf = false;
  std::optional<Rational> lowest;
  for (const auto& ch : v.charts()) {
    const ExactExponents e = exact_exponents_chart(f, ch);
    out.growth = max_opt(out.growth, e.growth);
    if (!e.loja_available) {
      out.loja_available = false;
    } else if (!e.loja) {
      neg_inf = true;
    } else {
      lowest = lowest ? std::min(*lowest, *e.loja) : *e.loja;
    }
  }
  out.loja = neg_inf ? std::nullopt : lowest;
  if (!out.loja_available) out.loja.reset();
  out.limit_exists = out.loja_available && out.growth == out.loja;
  return out;
}

ExponentEstimate growth_exponent(const std::vector<MultiPoly>& f, const VarietySpec& v,
                                 const Schedule& schedule) {
  check_map(f, v.ambient_dim());
  ExponentEstimate est;
  est.kind = ExponentKind::Growth;
  if (all_zero(f)) {
    est.value = kNegInf;
    return est;
  }
  const auto pb = pullbacks(f, v);
  const auto shells = sample_escape(v, schedule.radii, schedule.per_radius, schedule.seed);
  for (const auto& shell : shells) {
    const double r = shell.radius;
    std::vector<std::pair<double, std::size_t>> ranked;
    for (std::size_t i = 0; i < shell.points.size(); ++i) {
      const auto& z = shell.points[i];
      ranked.emplace_back(ratio(log_norm(eval_map(f, z)), std::log(norm(z))), i);
    }
    std::sort(ranked.begin(), ranked.end(), std::greater<>());
    double best = ranked.empty() ? kNegInf : ranked.front().first;
    // Ascent of ||f o gamma|| inside the band from the best samples, the
    // mirror image of the descent used for the Lojasiewicz exponent.
    const std::size_t starts = std::min<std::size_t>(schedule.starts, ranked.size());
    for (std::size_t s = 0; s < starts && best != kNegInf; ++s) {
      const std::size_t i = ranked[s].second;
      const ChartPullback& c = pb[shell.chart_index[i]];
      const LogNormSquared fn(c.h.components());
      const LogNormSquared zn(c.gamma.components());
      SmoothFn objective = [&](const Point& t) {
        ValueGrad vg = fn.value_grad(t);
        vg.value = -vg.value;
        for (auto& g : vg.grad) g = -g;
        return vg;
      };
      ShellConstraint band;
      band.grad = [&](const Point& t) { return zn.norm2_grad(t); };
      band.project = [&](const Point& t) { return project_to_band(c.gamma, t, r, 1.05 * r); };
      const Point t = descend_on_shell(objective, band, shell.params[i], schedule.refine_steps);
      const Point z = c.gamma.eval(t);
      const double nz = norm(z);
      if (!(nz >= r * (1.0 - 1e-12) && nz <= 1.05 * r * (1.0 + 1e-12))) continue;
      best = std::max(best, ratio(log_norm(eval_map(f, z)), std::log(nz)));
    }
    est.per_radius.emplace_back(r, best);
  }
  summarize(est, tail_exponent(v));
  return est;
}

ExponentEstimate lojasiewicz_exponent(const std::vector<MultiPoly>& f, const VarietySpec& v,
                                      const Schedule& schedule) {
  check_map(f, v.ambient_dim());
  ExponentEstimate est;
  est.kind = ExponentKind::Lojasiewicz;
  if (all_zero(f)) {
    est.value = kNegInf;
    return est;
  }
  const auto pb = pullbacks(f, v);
  const auto shells = sample_escape(v, schedule.radii, schedule.per_radius, schedule.seed);
  for (const auto& shell : shells) {
    const double r = shell.radius;
    std::vector<std::pair<double, std::size_t>> ranked;
    for (std::size_t i = 0; i < shell.points.size(); ++i) {
      ranked.emplace_back(log_norm(eval_map(f, shell.points[i])), i);
    }
    std::sort(ranked.begin(), ranked.end());
    double best = kNegInf;
    if (!ranked.empty()) {
      const auto& z0 = shell.points[ranked.front().second];
      best = ratio(ranked.front().first, std::log(norm(z0)));
    }
    const std::size_t starts = std::min<std::size_t>(schedule.starts, ranked.size());
    for (std::size_t s = 0; s < starts && best != kNegInf; ++s) {
      const std::size_t i = ranked[s].second;
      const ChartPullback& c = pb[shell.chart_index[i]];
      auto t =
          minimize_norm_on_band(c.h, c.gamma, r, 1.05 * r, shell.params[i], schedule.refine_steps);
      if (!t) continue;
      const Point z = c.gamma.eval(*t);
      best = std::min(best, ratio(log_norm(eval_map(f, z)), std::log(norm(z))));
    }
    est.per_radius.emplace_back(r, best);
  }
  summarize(est, tail_exponent(v));
  return est;
}

ExponentEstimate order_of_map(const std::vector<MultiPoly>& f, const VarietySpec& v,
                              const Schedule& schedule) {
  check_map(f, v.ambient_dim());
  if (schedule.radii.empty() || schedule.radii.front() <= 1.0) {
    throw Error(ErrorCode::InvalidSpec, "order bands need radii > 1");
  }
  ExponentEstimate est;
  est.kind = ExponentKind::Order;

  // Unboundedness pre-check on ordinary escape samples.
  {
    const auto shells = sample_escape(v, schedule.radii, schedule.per_radius, schedule.seed);
    auto max_f = [&](const EscapeShell& s) {
      double m = 0.0;
      for (const auto& z : s.points) m = std::max(m, norm(eval_map(f, z)));
      return m;
    };
    const double first = max_f(shells.front());
    const double last = max_f(shells.back());
    if (!(last > 2.0 * first)) throw Error(ErrorCode::FBounded, "||f|| does not grow on V");
  }

  const auto pb = pullbacks(f, v);
  struct End {
    std::size_t chart;
    bool at_infinity;
    int degree;
  };
  std::vector<End> ends;
  for (std::size_t c = 0; c < pb.size(); ++c) {
    const Chart& ch = *pb[c].chart;
    if (ch.param_dim == 1) {
      int hi = std::numeric_limits<int>::min();
      int lo = std::numeric_limits<int>::max();
      for (const auto& hj : pb[c].h.components()) {
        if (hj.is_zero()) continue;
        const auto [a, b] = exponent_range(hj);
        hi = std::max(hi, a);
        lo = std::min(lo, b);
      }
      if (hi > 0) ends.push_back({c, true, hi});
      if (ch.domain == ParamDomain::Punctured && lo < 0) ends.push_back({c, false, -lo});
    } else {
      int d = 0;
      for (const auto& hj : pb[c].h.components()) d = std::max(d, hj.total_degree().value_or(0));
      if (d > 0) ends.push_back({c, true, d});
    }
  }
  if (ends.empty()) throw Error(ErrorCode::FBounded, "f o chart is bounded at every end");
  int top_end = 1;
  for (const End& e : ends) top_end = std::max(top_end, e.degree);

  for (std::size_t ri = 0; ri < schedule.radii.size(); ++ri) {
    const double R = schedule.radii[ri];
    std::mt19937_64 rng(split_seed(schedule.seed ^ 0x0bde5ULL, ri));
    std::vector<std::pair<double, Point>> found;  // (statistic, parameter)
    std::vector<std::size_t> found_chart;
    for (int j = 0; j < schedule.per_radius; ++j) {
      const End& end = ends[j % ends.size()];
      const ChartPullback& c = pb[end.chart];
      for (int attempt = 0; attempt < 20; ++attempt) {
        const Point u = random_unit_vector(c.chart->param_dim, rng);
        auto along = [&](double s) {
          Point t = u;
          for (auto& x : t) x *= s;
          return norm(c.h.eval(t));
        };
        const double s0 =
            end.at_infinity ? std::pow(R, 1.0 / end.degree) : std::pow(R, -1.0 / end.degree);
        auto s = find_scale_in_band(along, s0, R, 1.05 * R, end.at_infinity);
        if (!s) continue;
        Point t = u;
        for (auto& x : t) x *= *s;
        const Point z = c.gamma.eval(t);
        const double lf = log_norm(c.h.eval(t));
        found.emplace_back(std::log(norm(z)) / lf, std::move(t));
        found_chart.push_back(end.chart);
        break;
      }
    }
    if (found.empty()) throw Error(ErrorCode::FBounded, "no point reaches the ||f|| band");

    std::vector<std::size_t> order(found.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return found[a].first > found[b].first; });
    double best = found[order.front()].first;
    const std::size_t starts = std::min<std::size_t>(schedule.starts, order.size());
    for (std::size_t s = 0; s < starts; ++s) {
      const std::size_t i = order[s];
      const ChartPullback& c = pb[found_chart[i]];
      const LogNormSquared zn(c.gamma.components());
      const LogNormSquared fn(c.h.components());
      SmoothFn objective = [&](const Point& t) {
        ValueGrad vg = zn.value_grad(t);
        vg.value = -vg.value;
        for (auto& g : vg.grad) g = -g;
        return vg;
      };
      ShellConstraint band;
      band.grad = [&](const Point& t) { return fn.norm2_grad(t); };
      band.project = [&](const Point& t) { return project_to_band(c.h, t, R, 1.05 * R); };
      const Point t = descend_on_shell(objective, band, found[i].second, schedule.refine_steps);
      const double fnorm = norm(c.h.eval(t));
      if (!(fnorm >= R * (1.0 - 1e-12) && fnorm <= 1.05 * R * (1.0 + 1e-12))) continue;
      best = std::max(best, std::log(norm(c.gamma.eval(t))) / std::log(fnorm));
    }
    est.per_radius.emplace_back(R, best);
  }
  // Radii here are levels of ||f||, which along an end grows like |t|^degree.
  summarize(est, 1.0 / top_end);
  return est;
}

PropernessReport properness_check(const std::vector<MultiPoly>& f, const VarietySpec& v,
                                  const Schedule& schedule) {
  PropernessReport rep;
  rep.loja = lojasiewicz_exponent(f, v, schedule);
  const double L = rep.loja.value;
  if (L >= 0.1) {
    rep.verdict = Properness::Proper;
  } else if (L <= -0.1) {
    rep.verdict = Properness::NotProper;
  } else {
    // Minimum of ||f|| on the shells staying bounded also rules out properness.
    const auto& pr = rep.loja.per_radius;
    if (pr.size() >= 2) {
      const double first = pr.front().second * std::log(pr.front().first);
      const double last = pr.back().second * std::log(pr.back().first);
      if (last <= std::max(first, 0.0) + 0.5) rep.verdict = Properness::NotProper;
    }
  }
  return rep;
}

namespace {

double max_abs(const std::vector<MultiPoly>& f, const Point& z) {
  double m = 0.0;
  for (const auto& p : f) m = std::max(m, std::abs(p.eval(z)));
  return m;
}

ConeReport cone_exact(const std::vector<MultiPoly>& f, const Schedule& schedule) {
  ConeReport rep;
  rep.exact_mode = true;
  std::vector<MultiPoly> top;
  for (const auto& p : f) {
    top.push_back(p.is_zero() ? p : p.homogeneous_part(*p.total_degree()));
  }
  const int n = f.front().num_vars();
  std::mt19937_64 rng(split_seed(schedule.seed, 0xC0DE));
  std::vector<std::pair<double, Point>> samples;
  samples.reserve(100000);
  for (int i = 0; i < 100000; ++i) {
    Point u = random_unit_vector(n, rng);
    samples.emplace_back(max_abs(top, u), std::move(u));
  }
  std::partial_sort(samples.begin(), samples.begin() + 100, samples.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
  double best = samples.front().first;

  const LogNormSquared obj(top);
  ShellConstraint sphere;
  sphere.grad = [](const Point& t) {
    Point g = t;
    for (auto& c : g) c *= 2.0;
    return g;
  };
  sphere.project = [](const Point& t) -> std::optional<Point> {
    const double nt = norm(t);
    if (!(nt > 0.0)) return std::nullopt;
    Point p = t;
    for (auto& c : p) c /= nt;
    return p;
  };
  bool common = false;
  for (int i = 0; i < 100; ++i) {
    const Point u = descend_on_shell([&](const Point& t) { return obj.value_grad(t); }, sphere,
                                     samples[i].second, 200);
    const double val = max_abs(top, u);
    best = std::min(best, val);
    if (val < 1e-10) {
      common = true;
      break;
    }
  }
  rep.min_value = best;
  if (common) {
    rep.verdict = ConeVerdict::CommonDirection;
  } else if (best > 1e-4) {
    rep.verdict = ConeVerdict::Separated;
  }
  return rep;
}

Point projective_direction(const Point& z) {
  Point d = z;
  const double nz = norm(z);
  std::size_t big = 0;
  for (std::size_t i = 1; i < z.size(); ++i) {
    if (std::abs(z[i]) > std::abs(z[big])) big = i;
  }
  const Complex phase = std::abs(z[big]) > 0.0 ? std::conj(z[big]) / std::abs(z[big]) : 1.0;
  for (auto& c : d) c *= phase / nz;
  return d;
}

double projective_distance(const Point& a, const Point& b) {
  Complex ip(0.0);
  for (std::size_t i = 0; i < a.size(); ++i) ip += std::conj(a[i]) * b[i];
  return std::sqrt(std::max(0.0, 1.0 - std::norm(ip)));
}

ConeReport cone_numeric(const std::vector<MultiPoly>& f, const VarietySpec& v,
                        const Schedule& schedule) {
  ConeReport rep;
  const double R = schedule.radii.back();
  const auto shells =
      sample_escape(v, std::span<const double>(&schedule.radii.back(), 1),
                    std::max(schedule.starts, 2 * static_cast<int>(v.charts().size())),
                    schedule.seed ^ 0xC0DEULL);
  const EscapeShell& shell = shells.front();
  std::vector<std::vector<Point>> dirs(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const int deg = f[j].total_degree().value_or(0);
    for (std::size_t i = 0; i < shell.points.size(); ++i) {
      const Chart& ch = v.charts()[shell.chart_index[i]];
      const HoloMap gamma(ch.components);
      const HoloMap h(compose_map(std::vector<MultiPoly>{f[j]}, ch.components));
      auto t = minimize_norm_on_band(h, gamma, R, 1.05 * R, shell.params[i],
                                     std::max(schedule.refine_steps, 100));
      if (!t) continue;
      const Point z = gamma.eval(*t);
      if (std::abs(f[j].eval(z)) <= 1e-8 * std::pow(1.0 + norm(z), deg)) {
        dirs[j].push_back(projective_direction(z));
      }
    }
    rep.far_zero_counts.push_back(static_cast<int>(dirs[j].size()));
  }
  if (std::any_of(dirs.begin(), dirs.end(), [](const auto& d) { return d.empty(); })) {
    rep.verdict = ConeVerdict::Separated;
    return rep;
  }
  for (const Point& d0 : dirs.front()) {
    bool shared = true;
    for (std::size_t j = 1; j < dirs.size() && shared; ++j) {
      shared = std::any_of(dirs[j].begin(), dirs[j].end(),
                           [&](const Point& d) { return projective_distance(d0, d) <= 1e-3; });
    }
    if (shared) {
      rep.verdict = ConeVerdict::CommonDirection;
      return rep;
    }
  }
  const bool curves = std::all_of(v.charts().begin(), v.charts().end(),
                                  [](const Chart& c) { return c.param_dim == 1; });
  const bool well_sampled = std::all_of(
      dirs.begin(), dirs.end(), [&](const auto& d) { return d.size() * 2 >= shell.points.size(); });
  rep.verdict = curves && well_sampled ? ConeVerdict::Separated : ConeVerdict::Inconclusive;
  return rep;
}

}  // namespace

ConeReport cone_common_direction_check(const std::vector<MultiPoly>& f, const VarietySpec& v,
                                       const Schedule& schedule) {
  check_map(f, v.ambient_dim());
  if (v.is_affine_space()) return cone_exact(f, schedule);
  if (v.implicit().size() == 1) {
    // The cone at infinity of a hypersurface {h = 0} is {h^ = 0}, so a
    // common direction of the f^_j on V is a common zero of (f^, h^).
    std::vector<MultiPoly> with_h = f;
    with_h.push_back(v.implicit().front());
    return cone_exact(with_h, schedule);
  }
  if (v.charts().empty()) {
    ConeReport rep;
    return rep;
  }
  return cone_numeric(f, v, schedule);
}

}  // namespace plurigreen
