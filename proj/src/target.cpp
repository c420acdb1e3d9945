#include "tauberlab/target.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tauberlab/error.hpp"
#include "tauberlab/logspace.hpp"

namespace tauberlab {
namespace {

constexpr std::string_view kModule = "transform";

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

struct Delta {
  double value;
  double slope;
};

Delta perturbation(Perturbation family, double k, double x) {
  const double lx = std::log(x);
  const double denom = 1.0 + std::fabs(lx);
  const double sgn = lx > 0.0 ? 1.0 : (lx < 0.0 ? -1.0 : 0.0);
  switch (family) {
    case Perturbation::InverseLog:
      return {k / denom, -k * sgn / (x * denom * denom)};
    case Perturbation::SineLog:
      return {k * std::sin(lx) / denom,
              k * (std::cos(lx) * denom - std::sin(lx) * sgn) / (x * denom * denom)};
  }
  return {0.0, 0.0};
}

void check_power(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorCode::DomainError, kModule, "power target needs finite a and b");
  }
}

}  // namespace

std::string_view to_string(Perturbation p) {
  switch (p) {
    case Perturbation::InverseLog: return "inverse-log";
    case Perturbation::SineLog: return "sine-log";
  }
  return "unknown";
}

Perturbation perturbation_from_string(std::string_view name) {
  if (name == "inverse-log") return Perturbation::InverseLog;
  if (name == "sine-log") return Perturbation::SineLog;
  throw Error(ErrorCode::DomainError, kModule,
              "unknown perturbation family '" + std::string(name) + "'");
}

TargetFunction TargetFunction::pure_power(double a, double b) {
  check_power(a, b);
  return TargetFunction(PurePower{a, b});
}

TargetFunction TargetFunction::perturbed_power(double a, double b, Perturbation family, double k) {
  check_power(a, b);
  if (!(std::fabs(k) <= 0.5)) {
    throw Error(ErrorCode::DomainError, kModule, "perturbation magnitude must satisfy |k| <= 0.5");
  }
  return TargetFunction(PerturbedPower{a, b, family, k});
}

TargetFunction TargetFunction::tabulated(TabulatedMeasure measure, MeasureSide side) {
  if (measure.size() == 0) throw Error(ErrorCode::EmptyMeasure, kModule, "measure has no atoms");
  return TargetFunction(
      TabulatedTarget{std::make_shared<const TabulatedMeasure>(std::move(measure)), side});
}

double TargetFunction::log_amplitude(double x) const {
  if (!(x > 0.0)) {
    throw Error(ErrorCode::DomainError, kModule, "log-amplitude is defined for x > 0 only");
  }
  return std::visit(
      Overloaded{
          [x](const PurePower& p) { return p.a == 0.0 ? 0.0 : p.a * std::pow(x, p.b); },
          [x](const PerturbedPower& p) {
            if (p.a == 0.0) return 0.0;
            return p.a * std::pow(x, p.b) * (1.0 + perturbation(p.family, p.k, x).value);
          },
          [x](const TabulatedTarget& t) {
            const auto atoms = t.measure->atoms();
            // First atom strictly to the right of x.
            const auto it = std::upper_bound(
                atoms.begin(), atoms.end(), x,
                [](double v, const Atom& at) { return v < at.location; });
            const auto idx = static_cast<std::size_t>(it - atoms.begin());
            if (t.side == MeasureSide::Cumulative) {
              return idx == 0 ? kNegInf : std::log(t.measure->cumulative(idx - 1));
            }
            return idx == atoms.size() ? kNegInf : std::log(t.measure->tail_from(idx));
          }},
      kind_);
}

double TargetFunction::log_amplitude_slope(double x) const {
  if (!(x > 0.0)) {
    throw Error(ErrorCode::DomainError, kModule, "log-amplitude is defined for x > 0 only");
  }
  return std::visit(
      Overloaded{
          [x](const PurePower& p) {
            return p.a == 0.0 ? 0.0 : p.a * p.b * std::pow(x, p.b - 1.0);
          },
          [x](const PerturbedPower& p) {
            if (p.a == 0.0) return 0.0;
            const Delta dl = perturbation(p.family, p.k, x);
            return p.a * p.b * std::pow(x, p.b - 1.0) * (1.0 + dl.value) +
                   p.a * std::pow(x, p.b) * dl.slope;
          },
          [](const TabulatedTarget&) -> double {
            throw Error(ErrorCode::DomainError, kModule,
                        "tabulated targets are step functions without a slope");
          }},
      kind_);
}

std::optional<double> TargetFunction::exponent() const noexcept {
  if (const auto* p = std::get_if<PurePower>(&kind_)) return p->b;
  if (const auto* p = std::get_if<PerturbedPower>(&kind_)) return p->b;
  return std::nullopt;
}

}  // namespace tauberlab
