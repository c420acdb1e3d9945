#include "tauberlab/transform.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "tauberlab/error.hpp"
#include "tauberlab/logspace.hpp"

namespace tauberlab {
namespace {

constexpr std::string_view kModule = "transform";

// exp() overflows beyond this log-u.
constexpr double kMaxLogU = 709.0;
constexpr double kMinLogU = -745.0;
constexpr double kScanStep = 0.25;
constexpr std::size_t kMaxTrapezoidPoints = std::size_t{1} << 22;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

double finite_or_neg_inf(double v) { return std::isnan(v) ? kNegInf : v; }

void check_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::DomainError, kModule, std::string(name) + " must be positive and finite");
  }
}

struct Peak {
  double log_u;
  double value;
};

// Maximum over w = log u of value(w), where slope(u) carries the sign of
// d value / dw. A coarse scan picks the best grid point; the maximizer is
// then polished by bracketed root finding on the slope, or by Brent's
// minimizer when the slope does not change sign across the bracket (kinks).
// Returns nullopt when the best grid point sits on the scan boundary.
template <class Value, class Slope>
std::optional<Peak> find_interior_max(const Value& value, const Slope& slope) {
  for (double half_range : {64.0, kMaxLogU}) {
    const double lo = std::max(-half_range, kMinLogU + 1.0);
    const double hi = half_range;
    const auto n = static_cast<std::size_t>((hi - lo) / kScanStep);
    std::size_t best = 0;
    double best_value = kNegInf;
    for (std::size_t k = 0; k <= n; ++k) {
      const double v = finite_or_neg_inf(value(lo + kScanStep * static_cast<double>(k)));
      if (v > best_value) {
        best_value = v;
        best = k;
      }
    }
    if (best_value == kNegInf || best_value == std::numeric_limits<double>::infinity()) {
      return std::nullopt;
    }
    if (best == 0 || best == n) continue;

    const double w_lo = lo + kScanStep * static_cast<double>(best - 1);
    const double w_hi = lo + kScanStep * static_cast<double>(best + 1);
    const double u_lo = std::exp(w_lo);
    const double u_hi = std::exp(w_hi);
    const double s_lo = slope(u_lo);
    const double s_hi = slope(u_hi);
    if (s_lo > 0.0 && s_hi < 0.0) {
      std::uintmax_t max_iter = 200;
      boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits - 3);
      const auto [a, b] = boost::math::tools::toms748_solve(
          [&](double u) { return slope(u); }, u_lo, u_hi, s_lo, s_hi, tol, max_iter);
      const double u = 0.5 * (a + b);
      return Peak{std::log(u), value(std::log(u))};
    }
    std::uintmax_t max_iter = 200;
    const auto [w, neg] = boost::math::tools::brent_find_minima(
        [&](double w) { return -finite_or_neg_inf(value(w)); }, w_lo, w_hi,
        std::numeric_limits<double>::digits / 2, max_iter);
    if (-neg >= best_value) return Peak{w, -neg};
    return Peak{lo + kScanStep * static_cast<double>(best), best_value};
  }
  return std::nullopt;
}

// Smallest distance (in w) at which value drops by `drop` below `top`,
// searched in direction dir. Returns nullopt if no such point exists
// inside the representable log-u range.
template <class Value>
std::optional<double> drop_distance(const Value& value, double centre, double top, double drop,
                                    double dir) {
  double inside = 0.0;
  double outside = 1e-6 * std::max(1.0, std::fabs(centre));
  while (finite_or_neg_inf(value(centre + dir * outside)) > top - drop) {
    inside = outside;
    outside *= 2.0;
    const double w = centre + dir * outside;
    if (w > kMaxLogU || w < kMinLogU) return std::nullopt;
  }
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (inside + outside);
    if (finite_or_neg_inf(value(centre + dir * mid)) > top - drop) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return outside;
}

// Pushes a frontier outwards with doubling steps until value < top - cutoff.
template <class Value>
std::optional<double> frontier(const Value& value, double centre, double top, double cutoff,
                               double first_step, double dir) {
  double step = first_step;
  double w = centre + dir * step;
  while (finite_or_neg_inf(value(w)) >= top - cutoff) {
    step *= 2.0;
    w += dir * step;
    if (w > kMaxLogU || w < kMinLogU) return std::nullopt;
  }
  return w;
}

struct TrapezoidResult {
  double log_integral;
  double rel_error;
  bool tolerance_met;
  std::size_t evaluations;
  std::vector<double> level_errors;
};

// Nested trapezoid rule for int exp(value(w) - shift) dw on [lo, hi]; each
// level halves the panel width and reuses every earlier node.
template <class Value>
TrapezoidResult nested_trapezoid(const Value& value, double lo, double hi, double shift,
                                 std::size_t panels, const QuadratureOptions& options) {
  auto f = [&](double w) { return std::exp(finite_or_neg_inf(value(w)) - shift); };
  double h = (hi - lo) / static_cast<double>(panels);
  double sum = 0.5 * (f(lo) + f(hi));
  for (std::size_t i = 1; i < panels; ++i) sum += f(lo + h * static_cast<double>(i));
  std::size_t evaluations = panels + 1;
  double estimate = h * sum;
  double rel_error = std::numeric_limits<double>::infinity();
  std::vector<double> level_errors;

  for (int level = 1; level <= options.max_levels; ++level) {
    if (2 * panels > kMaxTrapezoidPoints) break;
    for (std::size_t i = 0; i < panels; ++i) sum += f(lo + h * (static_cast<double>(i) + 0.5));
    evaluations += panels;
    panels *= 2;
    h *= 0.5;
    const double refined = h * sum;
    rel_error = refined > 0.0 ? std::fabs(refined - estimate) / refined
                              : std::numeric_limits<double>::infinity();
    level_errors.push_back(rel_error);
    estimate = refined;
    if (level >= options.min_levels && rel_error <= options.tol) break;
  }
  if (!(estimate > 0.0) || !std::isfinite(estimate)) {
    throw Error(ErrorCode::NotIntegrable, kModule, "quadrature produced a non-positive integral");
  }
  return {shift + std::log(estimate), rel_error, rel_error <= options.tol, evaluations,
          std::move(level_errors)};
}

// log of int_alpha^beta e^{cu} du, beta may be +inf.
double log_exp_integral(double c, double alpha, double beta) {
  if (beta == std::numeric_limits<double>::infinity()) {
    return c * alpha - std::log(-c);
  }
  const double width = beta - alpha;
  if (c < 0.0) return c * alpha + std::log(-std::expm1(c * width)) - std::log(-c);
  if (c > 0.0) return c * beta + std::log(-std::expm1(-c * width)) - std::log(c);
  return std::log(width);
}

TransformResult tabulated_transform(const TabulatedTarget& t, double c, double offset, double s) {
  const TabulatedMeasure& m = *t.measure;
  const auto atoms = m.atoms();
  const std::size_t n = atoms.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  LogSumAccumulator acc;
  if (t.side == MeasureSide::Cumulative) {
    if (c >= 0.0) {
      throw Error(ErrorCode::NotIntegrable, kModule,
                  "cumulative step target needs c < 0 (c = " + fmt(c) + ")");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double alpha = atoms[i].location / s;
      const double beta = i + 1 < n ? atoms[i + 1].location / s : kInf;
      acc.add(std::log(m.cumulative(i)) + log_exp_integral(c, alpha, beta));
    }
  } else {
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double beta = atoms[i].location / s;
      if (beta > prev) acc.add(std::log(m.tail_from(i)) + log_exp_integral(c, prev, beta));
      prev = beta;
    }
  }
  const double log_integral = acc.value();
  const double log_f = offset > 0.0 ? log_add_exp(std::log(offset), log_integral) : log_integral;
  const double rel = std::numeric_limits<double>::epsilon() * static_cast<double>(n + 1);
  TransformResult r{log_f, rel, true, {}};
  r.diagnostics.evaluations = n;
  return r;
}

double tabulated_peak(const TabulatedTarget& t, double c, double s) {
  const TabulatedMeasure& m = *t.measure;
  const auto atoms = m.atoms();
  double best_u = 0.0;
  double best = kNegInf;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const double u = atoms[i].location / s;
    const double mass = t.side == MeasureSide::Cumulative ? m.cumulative(i) : m.tail_from(i);
    const double v = std::log(mass) + c * u;
    if (v > best) {
      best = v;
      best_u = u;
    }
  }
  const bool unbounded_right = t.side == MeasureSide::Cumulative && c >= 0.0;
  const bool sup_at_zero = t.side == MeasureSide::Tail && c <= 0.0;
  if (unbounded_right || sup_at_zero || best_u == 0.0) {
    throw Error(ErrorCode::NoInteriorPeak, kModule,
                "step target has no interior maximum for c = " + fmt(c));
  }
  return best_u;
}

}  // namespace

double log_integrand(const TargetFunction& t, double c, double s, double u) {
  check_positive(s, "s");
  check_positive(u, "u");
  return t.log_amplitude(u * s) + c * u;
}

double locate_peak(const TargetFunction& t, double c, double s) {
  check_positive(s, "s");
  if (const auto* tab = std::get_if<TabulatedTarget>(&t.kind())) return tabulated_peak(*tab, c, s);

  auto value = [&](double w) {
    const double u = std::exp(w);
    return t.log_amplitude(u * s) + c * u;
  };
  auto slope = [&](double u) { return s * t.log_amplitude_slope(u * s) + c; };
  const auto peak = find_interior_max(value, slope);
  if (!peak) {
    throw Error(ErrorCode::NoInteriorPeak, kModule,
                "log-integrand is monotone for c = " + fmt(c) + ", s = " + fmt(s));
  }
  return std::exp(peak->log_u);
}

double log_integral_near_zero(const TargetFunction& t, const QuadratureOptions& options) {
  if (!t.is_smooth()) {
    throw Error(ErrorCode::DomainError, kModule, "near-zero check applies to smooth targets");
  }
  auto value = [&](double w) { return t.log_amplitude(std::exp(w)) + w; };
  // Graded toward 0: uniform panels in w = log u on (-inf, 0].
  double top = kNegInf;
  double top_w = 0.0;
  for (double w = 0.0; w >= kMinLogU + 1.0; w -= kScanStep) {
    const double v = finite_or_neg_inf(value(w));
    if (v > top) {
      top = v;
      top_w = w;
    }
  }
  if (top == kNegInf) return kNegInf;
  if (!std::isfinite(top) || top_w <= kMinLogU + 2.0 ||
      finite_or_neg_inf(value(kMinLogU + 1.0)) >= top - options.cutoff_nats) {
    throw Error(ErrorCode::NotIntegrable, kModule, "int_0^1 P(u) du diverges");
  }
  const auto lo = frontier(value, top_w, top, options.cutoff_nats, kScanStep, -1.0);
  if (!lo) throw Error(ErrorCode::NotIntegrable, kModule, "int_0^1 P(u) du diverges");
  const auto panels = static_cast<std::size_t>(std::ceil(-*lo / 0.05)) + 16;
  QuadratureOptions near_zero = options;
  near_zero.tol = std::max(options.tol, 1e-8);
  return nested_trapezoid(value, *lo, 0.0, top, panels, near_zero).log_integral;
}

TransformResult log_transform(const TargetFunction& t, double c, double offset, double s,
                              const QuadratureOptions& options) {
  check_positive(s, "s");
  if (!std::isfinite(c)) throw Error(ErrorCode::DomainError, kModule, "rate c must be finite");
  if (!(offset >= 0.0) || !std::isfinite(offset)) {
    throw Error(ErrorCode::DomainError, kModule, "offset must be nonnegative");
  }
  if (const auto* tab = std::get_if<TabulatedTarget>(&t.kind())) {
    return tabulated_transform(*tab, c, offset, s);
  }
  if (const auto b = t.exponent(); b && *b < 0.0) log_integral_near_zero(t, options);

  // Integrand in w = log u: exp(q(s e^w) + c e^w + w).
  auto value = [&](double w) {
    const double u = std::exp(w);
    return t.log_amplitude(u * s) + c * u + w;
  };
  auto slope = [&](double u) { return u * (s * t.log_amplitude_slope(u * s) + c) + 1.0; };

  const auto peak = find_interior_max(value, slope);
  if (!peak || !std::isfinite(peak->value)) {
    throw Error(ErrorCode::NotIntegrable, kModule,
                "integrand does not decay at both ends (c = " + fmt(c) + ", s = " + fmt(s) + ")");
  }
  const double centre = peak->log_u;
  const double shift = peak->value;

  const auto left_hw = drop_distance(value, centre, shift, 0.5, -1.0);
  const auto right_hw = drop_distance(value, centre, shift, 0.5, +1.0);
  if (!left_hw || !right_hw) {
    throw Error(ErrorCode::NotIntegrable, kModule, "integrand does not decay around its peak");
  }
  const double half_width = std::min(*left_hw, *right_hw);
  const auto lo = frontier(value, centre, shift, options.cutoff_nats, *left_hw, -1.0);
  const auto hi = frontier(value, centre, shift, options.cutoff_nats, *right_hw, +1.0);
  if (!lo || !hi) {
    throw Error(ErrorCode::NotIntegrable, kModule,
                "integrand stays within " + fmt(options.cutoff_nats) +
                    " nats of its peak up to the end of the representable range");
  }

  const double width = half_width * options.initial_width_fraction;
  const auto panels = std::max<std::size_t>(
      16, static_cast<std::size_t>(std::ceil((*hi - *lo) / width)));
  TrapezoidResult quad = nested_trapezoid(value, *lo, *hi, shift, panels, options);

  double log_f = quad.log_integral;
  double weight = 1.0;
  if (offset > 0.0) {
    log_f = log_add_exp(std::log(offset), quad.log_integral);
    weight = std::exp(quad.log_integral - log_f);
  }
  TransformResult r{log_f, quad.rel_error * weight, quad.rel_error * weight <= options.tol, {}};
  r.diagnostics.peak_log_u = centre;
  r.diagnostics.shift = shift;
  r.diagnostics.half_width = half_width;
  r.diagnostics.lower = *lo;
  r.diagnostics.upper = *hi;
  r.diagnostics.evaluations = quad.evaluations;
  r.diagnostics.level_errors = std::move(quad.level_errors);
  return r;
}

double s_from_psi(double b, double psi) {
  check_positive(psi, "psi");
  return std::pow(psi, (1.0 - b) / b);
}

double psi_from_s(double b, double s) {
  check_positive(s, "s");
  return std::pow(s, b / (1.0 - b));
}

TransformSample sample_transform(const UnifiedParams& p, const TargetFunction& t, double psi,
                                 const QuadratureOptions& options) {
  const double s = s_from_psi(p.b(), psi);
  const TransformResult r = log_transform(t, p.c(), p.offset(), s, options);
  return TransformSample{psi, s, r.log_f, r.quad_error, r.tolerance_met};
}

std::vector<TransformSample> sample_transforms(const UnifiedParams& p, const TargetFunction& t,
                                               std::span<const double> psis,
                                               const QuadratureOptions& options) {
  std::vector<std::future<TransformSample>> pending;
  pending.reserve(psis.size());
  for (double psi : psis) {
    pending.push_back(std::async(std::launch::async, [&p, &t, psi, &options] {
      return sample_transform(p, t, psi, options);
    }));
  }
  std::vector<TransformSample> out;
  out.reserve(psis.size());
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

double predict_log_f(const UnifiedParams& p, double psi, PredictionOrder order) {
  check_positive(psi, "psi");
  const double leading = p.d() * psi;
  if (order == PredictionOrder::Leading) return leading;
  const double x_m = saddle_location(p.a(), p.b(), p.c());
  const double curvature = p.a() * p.b() * (p.b() - 1.0) * std::pow(x_m, p.b() - 2.0);
  return leading + 0.5 * std::log(psi) +
         0.5 * std::log(2.0 * std::numbers::pi / std::fabs(curvature));
}

}  // namespace tauberlab
