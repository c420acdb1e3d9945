#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tauberlab/params.hpp"
#include "tauberlab/target.hpp"
#include "tauberlab/transform.hpp"

namespace tauberlab {

/// Geometric grid of regime-variable values, psi_min >= 1, at least 8 points.
class EvalGrid {
 public:
  std::span<const double> psi_values() const noexcept { return psi_; }
  std::size_t size() const noexcept { return psi_.size(); }
  double ratio() const noexcept { return ratio_; }

 private:
  friend EvalGrid make_grid(double psi_min, double psi_max, std::size_t n);
  EvalGrid(std::vector<double> psi, double ratio) : psi_(std::move(psi)), ratio_(ratio) {}

  std::vector<double> psi_;
  double ratio_;
};

EvalGrid make_grid(double psi_min, double psi_max, std::size_t n);

struct AsymptoticFit {
  double exponent_hat;
  double coefficient_hat;
  /// Max |log|log f| - fitted line| over the window.
  double residual;
  std::size_t window_begin;
  std::size_t window_end;  ///< one past the last sample used
};

/// Least-squares slope of log|log f| against log s over the last half of the
/// samples (ordered by psi). The coefficient is the window mean of
/// log f / s^exponent, so it carries the sign of log f.
AsymptoticFit fit_exponent(std::span<const TransformSample> samples);

// ---------------------------------------------------------------------------
// Log-index of functions in the class M.

/// One observation of U, kept as log U so huge or tiny values stay finite.
struct IndexSample {
  double x;
  double log_u;

  static IndexSample from_value(double x, double u);
};

struct IndexPoint {
  double x;
  double tau_hat;
};

struct CkIndexResult {
  std::vector<IndexPoint> points;
  double tau_final;            ///< tau_hat at the largest x
  double spread_last_quarter;  ///< max - min of tau_hat over the last quarter
};

/// tau_hat(x) = log U(x) / log x. Requires x > 1.
CkIndexResult ck_index(std::span<const IndexSample> samples);

enum class LimitVerdict { TendsToZero, TendsToInfinity, Inconclusive };

std::string_view to_string(LimitVerdict v);

struct EpsilonCheck {
  double epsilon;
  std::vector<double> log_upper;  ///< log(U / x^(tau + eps)) along the grid
  std::vector<double> log_lower;  ///< log(U / x^(tau - eps))
  LimitVerdict upper_verdict;
  LimitVerdict lower_verdict;
  bool passed;  ///< upper -> 0 and lower -> inf
};

struct ClassMDiagnostic {
  double tau;
  std::vector<IndexPoint> tau_sequence;
  std::vector<EpsilonCheck> epsilon_checks;
  bool consistent;  ///< every epsilon passed
};

/// Deterministic finite-grid verdict: over the last quarter the trajectory is
/// strictly monotone and its final value is beyond a factor 100 of the
/// trajectory's initial value.
LimitVerdict limit_verdict(std::span<const double> log_trajectory);

/// Checks U(x)/x^(tau+eps) -> 0 and U(x)/x^(tau-eps) -> inf for each eps.
/// Needs >= 8 samples spanning >= 3 decades.
ClassMDiagnostic class_m_check(std::span<const IndexSample> samples, double tau,
                               std::span<const double> epsilons);

// ---------------------------------------------------------------------------
// End-to-end check of the growth equivalence.

struct ToleranceProfile {
  /// |log f / (d psi) - 1| at the grid top.
  double ratio_tol_top = 0.015;
  /// Extra (psi, tolerance) checkpoints evaluated off-grid.
  std::vector<std::pair<double, double>> ratio_checkpoints = {{100.0, 0.07}};
  /// |ratio - 1| strictly decreasing over the last half of the grid.
  bool require_monotone_ratio = true;
  /// |log f - corrected prediction| at the grid top, in nats.
  double corrected_gap_nats = 0.2;
  /// Relative error of the fitted exponent against b/(1-b).
  double exponent_rel_tol = 0.03;
  /// Relative error of the fitted coefficient against d; reported only when unset.
  std::optional<double> coefficient_rel_tol;
  /// Relative error of (a, b) recovered from the fit.
  double inverse_rel_tol = 0.10;
  QuadratureOptions quadrature;
};

struct CheckOutcome {
  std::string name;
  double value;
  double threshold;
  bool passed;
};

struct EquivalenceRow {
  TransformSample sample;
  double prediction_leading;
  double prediction_corrected;
  double ratio;  ///< log f / (d psi)
};

struct EquivalenceReport {
  UnifiedParams params;
  std::vector<EquivalenceRow> rows;
  std::vector<EquivalenceRow> checkpoints;
  std::optional<AsymptoticFit> fit;
  std::optional<PrimalRecovery> recovered;
  std::vector<CheckOutcome> checks;
  std::string failure;  ///< engine error that cut the run short, if any
  bool passed = false;
};

EquivalenceRow make_row(const UnifiedParams& p, const TransformSample& s);

/// Sweeps the transform over the grid, fits the growth, inverts the fit and
/// scores everything against `profile`. Engine errors are caught and
/// reported; whatever was computed before the failure is kept.
EquivalenceReport verify_equivalence(const UnifiedParams& p, const TargetFunction& t,
                                     const EvalGrid& grid, const ToleranceProfile& profile = {});

}  // namespace tauberlab
