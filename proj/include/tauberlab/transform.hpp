#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tauberlab/params.hpp"
#include "tauberlab/target.hpp"

namespace tauberlab {

struct QuadratureOptions {
  /// Target absolute error on log f (relative error on f).
  double tol = 1e-10;
  /// Frontiers are pushed out until the shifted log-integrand is below -cutoff.
  double cutoff_nats = 40.0;
  /// Initial panel width as a fraction of the half-nat half width of the peak.
  double initial_width_fraction = 1.0;
  int min_levels = 1;
  int max_levels = 14;
};

struct QuadratureDiagnostics {
  double peak_log_u = 0.0;     ///< centre of the log-u panels
  double shift = 0.0;          ///< log-integrand value subtracted before exp()
  double half_width = 0.0;     ///< distance (log-u) for a 0.5 nat drop
  double lower = 0.0;          ///< log-u frontiers
  double upper = 0.0;
  std::size_t evaluations = 0;
  std::vector<double> level_errors;  ///< estimate after each halving
};

struct TransformResult {
  double log_f;
  double quad_error;  ///< absolute error estimate on log_f
  bool tolerance_met;
  QuadratureDiagnostics diagnostics;
};

/// One point of an asymptotic sweep: psi is the regime variable and
/// s = psi^((1-b)/b) the transform argument.
struct TransformSample {
  double psi;
  double s;
  double log_f;
  double quad_error;
  bool tolerance_met = true;
};

enum class PredictionOrder { Leading, Corrected };

/// q(us) + cu, the log of the transform integrand.
double log_integrand(const TargetFunction& t, double c, double s, double u);

/// Maximizer u* of the log-integrand. Throws NoInteriorPeak when the
/// integrand is monotone.
double locate_peak(const TargetFunction& t, double c, double s);

/// log f(s) with f(s) = offset + int_0^inf P(us) e^{cu} du.
///
/// Smooth targets are integrated by nested trapezoidal panels in w = log u,
/// centred on the maximum of the integrand in those coordinates and shifted
/// by its log value, so the result is finite whenever log f is. Tabulated
/// targets are step functions and are integrated exactly piece by piece.
/// A result that misses `tol` is returned with tolerance_met = false.
TransformResult log_transform(const TargetFunction& t, double c, double offset, double s,
                              const QuadratureOptions& options = {});

/// log of int_0^1 P(u) du; throws NotIntegrable when it diverges.
double log_integral_near_zero(const TargetFunction& t, const QuadratureOptions& options = {});

double s_from_psi(double b, double psi);
double psi_from_s(double b, double s);

TransformSample sample_transform(const UnifiedParams& p, const TargetFunction& t, double psi,
                                 const QuadratureOptions& options = {});

/// Evaluates a sweep concurrently; results are ordered as `psis`.
std::vector<TransformSample> sample_transforms(const UnifiedParams& p, const TargetFunction& t,
                                               std::span<const double> psis,
                                               const QuadratureOptions& options = {});

/// Laplace-method prediction of log f at regime variable psi:
/// leading d psi, corrected d psi + log(psi)/2 + log(2 pi / |h''(x_M)|)/2.
double predict_log_f(const UnifiedParams& p, double psi, PredictionOrder order);

}  // namespace tauberlab
