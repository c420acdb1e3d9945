#include "tauberlab/classical.hpp"

#include <cmath>
#include <sstream>

#include "tauberlab/error.hpp"

namespace tauberlab {
namespace {

constexpr std::string_view kModule = "classical";

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

[[noreturn]] void out_of_range(const std::string& what) {
  throw Error(ErrorCode::SpecOutOfRange, kModule, what);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

std::string_view name_of(const ClassicalSpec& spec) {
  return std::visit(Overloaded{[](const Kohlbecker&) { return std::string_view("kohlbecker"); },
                               [](const DeBruijn&) { return std::string_view("debruijn"); },
                               [](const Kasahara&) { return std::string_view("kasahara"); }},
                    spec);
}

double lambda_of_s(LambdaMap map, double s) {
  return map == LambdaMap::Identity ? s : 1.0 / s;
}

void check_spec(const ClassicalSpec& spec) {
  std::visit(Overloaded{
                 [](const Kohlbecker& k) {
                   if (!finite(k.alpha) || !(k.alpha > 1.0)) out_of_range("Kohlbecker needs alpha > 1");
                   if (!finite(k.B) || !(k.B > 0.0)) out_of_range("Kohlbecker needs B > 0");
                 },
                 [](const DeBruijn& k) {
                   if (!finite(k.beta) || !(k.beta < 0.0)) out_of_range("de Bruijn needs beta < 0");
                   if (!finite(k.B) || !(k.B < 0.0)) out_of_range("de Bruijn needs B < 0");
                   if (!finite(k.rate) || !(k.rate > 0.0)) out_of_range("de Bruijn needs rate > 0");
                 },
                 [](const Kasahara& k) {
                   if (!finite(k.alpha) || !(k.alpha > 0.0 && k.alpha < 1.0)) {
                     out_of_range("Kasahara needs 0 < alpha < 1");
                   }
                   if (!finite(k.B) || !(k.B > 0.0)) out_of_range("Kasahara needs B > 0");
                   if (k.total_mass && !(*k.total_mass >= 0.0)) {
                     out_of_range("Kasahara total mass must be nonnegative");
                   }
                 }},
             spec);
}

UnifiedReduction to_unified(const ClassicalSpec& spec) {
  check_spec(spec);
  return std::visit(
      Overloaded{
          [](const Kohlbecker& k) {
            const double coef =
                (k.alpha - 1.0) * std::pow(k.B / k.alpha, k.alpha / (k.alpha - 1.0));
            return UnifiedReduction{validate(k.B, 1.0 / k.alpha, -1.0, 0.0), coef,
                                    1.0 / (k.alpha - 1.0), LambdaMap::Identity};
          },
          [](const DeBruijn& k) {
            // Coefficient in the form derived from the substitution, with the
            // rate inside the base.
            const double coef = k.B * (1.0 - k.beta) *
                                std::pow(k.rate / (k.B * k.beta), k.beta / (k.beta - 1.0));
            return UnifiedReduction{validate(k.B, k.beta, -k.rate, 0.0), coef,
                                    k.beta / (k.beta - 1.0), LambdaMap::Reciprocal};
          },
          [](const Kasahara& k) {
            const double coef =
                (1.0 - k.alpha) * std::pow(k.alpha / k.B, k.alpha / (1.0 - k.alpha));
            return UnifiedReduction{validate(-k.B, 1.0 / k.alpha, 1.0, k.total_mass.value_or(1.0)),
                                    coef, 1.0 / (1.0 - k.alpha), LambdaMap::Reciprocal};
          }},
      spec);
}

CoefficientIdentity coefficient_identity_check(const ClassicalSpec& spec) {
  const UnifiedReduction r = to_unified(spec);
  const double d = compute_d(r.params.a(), r.params.b(), r.params.c());
  return CoefficientIdentity{d, r.classical_coefficient,
                             std::fabs(d - r.classical_coefficient) / std::fabs(r.classical_coefficient)};
}

ClassicalSpec classify(const UnifiedParams& p) {
  switch (p.regime()) {
    case Regime::KohlbeckerType:
      return Kohlbecker{1.0 / p.b(), p.a()};
    case Regime::KasaharaType:
      return Kasahara{1.0 / p.b(), -p.a(), p.offset()};
    case Regime::DeBruijnType:
      return DeBruijn{p.b(), p.a(), -p.c()};
  }
  throw Error(ErrorCode::DomainError, kModule, "unknown regime");
}

}  // namespace tauberlab
