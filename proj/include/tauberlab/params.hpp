#pragma once

#include <string_view>

namespace tauberlab {

/// Which classical exponential Tauberian theorem a parameter vector reduces to.
/// Determined by the exponent b alone once the sign conditions hold.
enum class Regime {
  KohlbeckerType,  ///< 0 < b < 1, a > 0, c < 0, d > 0
  DeBruijnType,    ///< b < 0, a < 0, c < 0, d < 0
  KasaharaType,    ///< b > 1, a < 0, c > 0, d > 0
};

std::string_view to_string(Regime regime);

/// Validated parameter vector of the unified theorem.
///
/// a, b describe the primal growth log P(x) ~ a x^b; c is the exponential
/// rate of the transform kernel; offset is the additive constant of the
/// transform. d and dual_exp describe the transform-side growth
/// log f(lambda) ~ d lambda^dual_exp. Instances are only produced by
/// validate() and are immutable afterwards.
class UnifiedParams {
 public:
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }
  double offset() const noexcept { return offset_; }
  double d() const noexcept { return d_; }
  double dual_exp() const noexcept { return dual_exp_; }
  Regime regime() const noexcept { return regime_; }

  friend bool operator==(const UnifiedParams&, const UnifiedParams&) = default;

 private:
  friend UnifiedParams validate(double a, double b, double c, double offset);

  UnifiedParams(double a, double b, double c, double offset, double d,
                double dual_exp, Regime regime)
      : a_(a), b_(b), c_(c), offset_(offset), d_(d), dual_exp_(dual_exp),
        regime_(regime) {}

  double a_;
  double b_;
  double c_;
  double offset_;
  double d_;
  double dual_exp_;
  Regime regime_;
};

/// Maximizer of h(x) = a x^b + c x - d together with the value and
/// curvature there.
struct SaddlePoint {
  double x_max;
  double h_at_max;
  double curvature;
};

/// Both readings of the dual coefficient, kept side by side for auditing.
struct DVariants {
  double d_stated;      ///< a(1-b)(-ab/c)^(b/(b-1))
  double d_consistent;  ///< a(1-b)(-c/(ab))^(b/(b-1)) = a x_M^b + c x_M
};

struct PrimalRecovery {
  double a;
  double b;
  double v0;  ///< coincides with the saddle location x_M
};

// Guardrails keeping x_M and d representable in double precision.
inline constexpr double kMaxAbsExponent = 64.0;
inline constexpr double kMinMagnitude = 1e-8;
inline constexpr double kMaxMagnitude = 1e8;

/// Checks ab(b-1) < 0, abc < 0 and the guardrails, classifies the regime and
/// fills in d and the dual exponent. Throws tauberlab::Error.
UnifiedParams validate(double a, double b, double c, double offset = 0.0);

double compute_d(double a, double b, double c);
DVariants d_variants(double a, double b, double c);

/// x_M = (-c/(ab))^(1/(b-1)); pure closed form, no validation.
double saddle_location(double a, double b, double c);

/// Saddle of h, after checking h <= 0 on a log grid spanning four decades
/// around x_M. Throws NumericOverflow outside the guardrails.
SaddlePoint saddle_analysis(const UnifiedParams& p);

double dual_exponent(double b);
double primal_exponent(double e);

/// Inverse parameter map: from the transform-side growth (d, e) and the
/// kernel rate c back to (a, b).
PrimalRecovery recover_primal(double d, double e, double c);

double h_eval(const UnifiedParams& p, double x);

}  // namespace tauberlab
