#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include "tauberlab/params.hpp"

namespace tauberlab {

/// log mu[0, x] ~ B x^(1/alpha), M(lambda) = int e^{-x/lambda} dmu(x).
struct Kohlbecker {
  double alpha;  ///< > 1
  double B;      ///< > 0
};

/// log P(1/x) ~ B x^(-beta), M(lambda) = lambda int P(x) e^{-lambda rate x} dx.
struct DeBruijn {
  double beta;  ///< < 0
  double B;     ///< < 0
  double rate;  ///< > 0
};

/// log mu(x, inf) ~ -B x^(1/alpha), M(lambda) = int e^{lambda x} dmu(x).
struct Kasahara {
  double alpha;  ///< in (0, 1)
  double B;      ///< > 0
  /// mu(0, inf) of an attached measure fixture; the transform offset.
  std::optional<double> total_mass;
};

using ClassicalSpec = std::variant<Kohlbecker, DeBruijn, Kasahara>;

std::string_view name_of(const ClassicalSpec& spec);

/// How the classical variable lambda relates to the transform argument s.
enum class LambdaMap {
  Identity,    ///< lambda = s
  Reciprocal,  ///< lambda = 1/s
};

double lambda_of_s(LambdaMap map, double s);

struct UnifiedReduction {
  UnifiedParams params;
  double classical_coefficient;
  double lambda_exponent;
  LambdaMap lambda_map;
};

/// Throws SpecOutOfRange when the classical parameters leave their ranges.
void check_spec(const ClassicalSpec& spec);

/// Change-of-variable reduction of a classical theorem to unified parameters.
UnifiedReduction to_unified(const ClassicalSpec& spec);

struct CoefficientIdentity {
  double unified_d;
  double classical_coefficient;
  double rel_gap;
};

CoefficientIdentity coefficient_identity_check(const ClassicalSpec& spec);

/// Regime-based inverse of to_unified. The kernel rate is normalised to
/// |c| = 1 for the Kohlbecker and Kasahara cases, which leaves (a, b) fixed.
ClassicalSpec classify(const UnifiedParams& p);

}  // namespace tauberlab
