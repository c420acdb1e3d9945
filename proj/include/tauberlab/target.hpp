#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <variant>

#include "tauberlab/measure.hpp"

namespace tauberlab {

/// Slowly vanishing relative perturbations delta(x) of a pure power.
enum class Perturbation {
  InverseLog,  ///< k / (1 + |log x|)
  SineLog,     ///< k sin(log x) / (1 + |log x|)
};

std::string_view to_string(Perturbation p);
Perturbation perturbation_from_string(std::string_view name);

/// Which distribution function of a tabulated measure plays the role of P.
enum class MeasureSide {
  Cumulative,  ///< P(x) = mu[0, x]
  Tail,        ///< P(x) = mu(x, inf)
};

struct PurePower {
  double a;
  double b;
};

struct PerturbedPower {
  double a;
  double b;
  Perturbation family;
  double k;
};

struct TabulatedTarget {
  std::shared_ptr<const TabulatedMeasure> measure;
  MeasureSide side;
};

/// The function P fed into the transform, described through its
/// log-amplitude q(x) = log P(x), x > 0.
class TargetFunction {
 public:
  using Kind = std::variant<PurePower, PerturbedPower, TabulatedTarget>;

  static TargetFunction pure_power(double a, double b);
  /// |k| <= 0.5.
  static TargetFunction perturbed_power(double a, double b, Perturbation family, double k);
  static TargetFunction tabulated(TabulatedMeasure measure, MeasureSide side);

  const Kind& kind() const noexcept { return kind_; }

  /// q(x) = log P(x); -inf where P vanishes.
  double log_amplitude(double x) const;
  /// q'(x) for the smooth kinds. Throws DomainError for tabulated targets.
  double log_amplitude_slope(double x) const;

  bool is_smooth() const noexcept { return !std::holds_alternative<TabulatedTarget>(kind_); }
  /// Growth exponent b of the smooth kinds.
  std::optional<double> exponent() const noexcept;

 private:
  explicit TargetFunction(Kind kind) : kind_(std::move(kind)) {}

  Kind kind_;
};

}  // namespace tauberlab
