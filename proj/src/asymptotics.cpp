#include "tauberlab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "tauberlab/error.hpp"

namespace tauberlab {
namespace {

constexpr std::string_view kModule = "asymptotics";

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

double rel_gap(double estimate, double truth) {
  return std::fabs(estimate - truth) / std::fabs(truth);
}

std::size_t last_quarter_begin(std::size_t n) {
  const std::size_t len = std::max<std::size_t>(2, n / 4);
  return n > len ? n - len : 0;
}

}  // namespace

EvalGrid make_grid(double psi_min, double psi_max, std::size_t n) {
  if (n < 8) {
    throw Error(ErrorCode::BadRange, kModule, "grid needs at least 8 points (n = " + std::to_string(n) + ")");
  }
  if (!(psi_min >= 1.0) || !(psi_max > psi_min) || !std::isfinite(psi_max)) {
    throw Error(ErrorCode::BadRange, kModule,
                "grid needs 1 <= psi_min < psi_max (got " + fmt(psi_min) + ", " + fmt(psi_max) + ")");
  }
  const double log_ratio = std::log(psi_max / psi_min) / static_cast<double>(n - 1);
  std::vector<double> psi(n);
  for (std::size_t k = 0; k < n; ++k) psi[k] = psi_min * std::exp(log_ratio * static_cast<double>(k));
  psi.front() = psi_min;
  psi.back() = psi_max;
  return EvalGrid(std::move(psi), std::exp(log_ratio));
}

AsymptoticFit fit_exponent(std::span<const TransformSample> samples) {
  if (samples.size() < 8) {
    throw Error(ErrorCode::DegenerateWindow, kModule,
                "fit needs at least 8 samples (got " + std::to_string(samples.size()) + ")");
  }
  std::vector<TransformSample> sorted(samples.begin(), samples.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const TransformSample& l, const TransformSample& r) { return l.psi < r.psi; });

  const std::size_t n = sorted.size();
  const std::size_t begin = n / 2;
  const std::size_t m = n - begin;

  int sign = 0;
  for (std::size_t i = begin; i < n; ++i) {
    const double v = sorted[i].log_f;
    if (!std::isfinite(v) || v == 0.0 || !(sorted[i].s > 0.0)) {
      throw Error(ErrorCode::DegenerateWindow, kModule,
                  "log f must be finite and nonzero on the tail window");
    }
    const int si = v > 0.0 ? 1 : -1;
    if (sign != 0 && si != sign) {
      throw Error(ErrorCode::SignChange, kModule, "log f changes sign on the tail window");
    }
    sign = si;
  }

  std::vector<double> xs(m), ys(m);
  for (std::size_t i = 0; i < m; ++i) {
    xs[i] = std::log(sorted[begin + i].s);
    ys[i] = std::log(std::fabs(sorted[begin + i].log_f));
  }
  const double x_mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(m);
  const double y_mean = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - x_mean) * (xs[i] - x_mean);
    sxy += (xs[i] - x_mean) * (ys[i] - y_mean);
  }
  if (!(sxx > 0.0)) {
    throw Error(ErrorCode::DegenerateWindow, kModule, "transform arguments do not vary on the window");
  }
  const double slope = sxy / sxx;
  const double intercept = y_mean - slope * x_mean;

  double residual = 0.0;
  double coefficient = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    residual = std::max(residual, std::fabs(ys[i] - (intercept + slope * xs[i])));
    coefficient += sorted[begin + i].log_f / std::exp(slope * xs[i]);
  }
  coefficient /= static_cast<double>(m);
  return AsymptoticFit{slope, coefficient, residual, begin, n};
}

IndexSample IndexSample::from_value(double x, double u) {
  if (!(u > 0.0) || !std::isfinite(u)) {
    throw Error(ErrorCode::DomainError, kModule, "U(x) must be positive and finite");
  }
  return IndexSample{x, std::log(u)};
}

CkIndexResult ck_index(std::span<const IndexSample> samples) {
  if (samples.empty()) throw Error(ErrorCode::DomainError, kModule, "no samples");
  CkIndexResult r;
  r.points.reserve(samples.size());
  for (const IndexSample& s : samples) {
    if (!(s.x > 1.0) || !std::isfinite(s.x)) {
      throw Error(ErrorCode::DomainError, kModule, "log-index needs x > 1 (x = " + fmt(s.x) + ")");
    }
    if (!std::isfinite(s.log_u)) {
      throw Error(ErrorCode::DomainError, kModule, "U(x) must be positive and finite");
    }
    r.points.push_back({s.x, s.log_u / std::log(s.x)});
  }
  std::sort(r.points.begin(), r.points.end(),
            [](const IndexPoint& l, const IndexPoint& rr) { return l.x < rr.x; });
  r.tau_final = r.points.back().tau_hat;
  const auto first = r.points.begin() + static_cast<std::ptrdiff_t>(last_quarter_begin(r.points.size()));
  const auto [lo, hi] = std::minmax_element(
      first, r.points.end(),
      [](const IndexPoint& l, const IndexPoint& rr) { return l.tau_hat < rr.tau_hat; });
  r.spread_last_quarter = hi->tau_hat - lo->tau_hat;
  return r;
}

std::string_view to_string(LimitVerdict v) {
  switch (v) {
    case LimitVerdict::TendsToZero: return "tends-to-zero";
    case LimitVerdict::TendsToInfinity: return "tends-to-infinity";
    case LimitVerdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

LimitVerdict limit_verdict(std::span<const double> log_trajectory) {
  const std::size_t n = log_trajectory.size();
  if (n < 2) return LimitVerdict::Inconclusive;
  const double log_factor = std::log(100.0);
  const std::size_t begin = last_quarter_begin(n);
  bool decreasing = true, increasing = true;
  for (std::size_t i = begin + 1; i < n; ++i) {
    decreasing = decreasing && log_trajectory[i] < log_trajectory[i - 1];
    increasing = increasing && log_trajectory[i] > log_trajectory[i - 1];
  }
  const double change = log_trajectory.back() - log_trajectory.front();
  if (decreasing && change < -log_factor) return LimitVerdict::TendsToZero;
  if (increasing && change > log_factor) return LimitVerdict::TendsToInfinity;
  return LimitVerdict::Inconclusive;
}

ClassMDiagnostic class_m_check(std::span<const IndexSample> samples, double tau,
                               std::span<const double> epsilons) {
  if (samples.size() < 8) {
    throw Error(ErrorCode::InsufficientSpan, kModule, "class-M check needs at least 8 samples");
  }
  const CkIndexResult index = ck_index(samples);
  std::vector<IndexSample> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const IndexSample& l, const IndexSample& r) { return l.x < r.x; });
  if (std::log10(sorted.back().x / sorted.front().x) < 3.0) {
    throw Error(ErrorCode::InsufficientSpan, kModule, "samples must span at least 3 decades in x");
  }

  if (epsilons.empty()) throw Error(ErrorCode::DomainError, kModule, "no epsilons given");
  ClassMDiagnostic diag{tau, index.points, {}, true};
  for (double eps : epsilons) {
    if (!(eps > 0.0)) throw Error(ErrorCode::DomainError, kModule, "epsilon must be positive");
    EpsilonCheck check{eps, {}, {}, LimitVerdict::Inconclusive, LimitVerdict::Inconclusive, false};
    for (const IndexSample& s : sorted) {
      const double lx = std::log(s.x);
      check.log_upper.push_back(s.log_u - (tau + eps) * lx);
      check.log_lower.push_back(s.log_u - (tau - eps) * lx);
    }
    check.upper_verdict = limit_verdict(check.log_upper);
    check.lower_verdict = limit_verdict(check.log_lower);
    check.passed = check.upper_verdict == LimitVerdict::TendsToZero &&
                   check.lower_verdict == LimitVerdict::TendsToInfinity;
    diag.consistent = diag.consistent && check.passed;
    diag.epsilon_checks.push_back(std::move(check));
  }
  return diag;
}

EquivalenceRow make_row(const UnifiedParams& p, const TransformSample& s) {
  return EquivalenceRow{s, predict_log_f(p, s.psi, PredictionOrder::Leading),
                        predict_log_f(p, s.psi, PredictionOrder::Corrected),
                        s.log_f / (p.d() * s.psi)};
}

EquivalenceReport verify_equivalence(const UnifiedParams& p, const TargetFunction& t,
                                     const EvalGrid& grid, const ToleranceProfile& profile) {
  EquivalenceReport report{p, {}, {}, std::nullopt, std::nullopt, {}, {}, false};
  auto add = [&](std::string name, double value, double threshold) {
    report.checks.push_back({std::move(name), value, threshold, value <= threshold});
  };

  try {
    const auto samples = sample_transforms(p, t, grid.psi_values(), profile.quadrature);
    for (const TransformSample& s : samples) report.rows.push_back(make_row(p, s));
    for (const auto& [psi, tol] : profile.ratio_checkpoints) {
      report.checkpoints.push_back(make_row(p, sample_transform(p, t, psi, profile.quadrature)));
    }

    const auto misses = std::count_if(samples.begin(), samples.end(),
                                         [](const TransformSample& s) { return !s.tolerance_met; });
    add("quadrature_tolerance_misses", static_cast<double>(misses), 0.0);

    const EquivalenceRow& top = report.rows.back();
    add("ratio_error_at_top", std::fabs(top.ratio - 1.0), profile.ratio_tol_top);
    for (std::size_t i = 0; i < report.checkpoints.size(); ++i) {
      const EquivalenceRow& row = report.checkpoints[i];
      add("ratio_error_at_psi_" + fmt(row.sample.psi), std::fabs(row.ratio - 1.0),
          profile.ratio_checkpoints[i].second);
    }
    if (profile.require_monotone_ratio) {
      int violations = 0;
      for (std::size_t i = report.rows.size() / 2 + 1; i < report.rows.size(); ++i) {
        if (!(std::fabs(report.rows[i].ratio - 1.0) < std::fabs(report.rows[i - 1].ratio - 1.0))) {
          ++violations;
        }
      }
      add("ratio_monotone_violations", violations, 0.0);
    }
    add("corrected_gap_at_top", std::fabs(top.sample.log_f - top.prediction_corrected),
        profile.corrected_gap_nats);

    report.fit = fit_exponent(samples);
    add("exponent_rel_error", rel_gap(report.fit->exponent_hat, p.dual_exp()),
        profile.exponent_rel_tol);
    if (profile.coefficient_rel_tol) {
      add("coefficient_rel_error", rel_gap(report.fit->coefficient_hat, p.d()),
          *profile.coefficient_rel_tol);
    }

    report.recovered = recover_primal(report.fit->coefficient_hat, report.fit->exponent_hat, p.c());
    add("inverse_a_rel_error", rel_gap(report.recovered->a, p.a()), profile.inverse_rel_tol);
    add("inverse_b_rel_error", rel_gap(report.recovered->b, p.b()), profile.inverse_rel_tol);
  } catch (const Error& e) {
    report.failure = e.what();
  }

  report.passed = report.failure.empty() &&
                  std::all_of(report.checks.begin(), report.checks.end(),
                              [](const CheckOutcome& c) { return c.passed; });
  return report;
}

}  // namespace tauberlab
