#include "tauberlab/params.hpp"

#include <cmath>
#include <sstream>

#include "tauberlab/error.hpp"

namespace tauberlab {
namespace {

constexpr std::string_view kModule = "params";

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

bool in_magnitude_range(double v) {
  const double m = std::fabs(v);
  return m >= kMinMagnitude && m <= kMaxMagnitude;
}

// Admission checks shared by validate() and the raw closed forms.
void check_admissible(double a, double b, double c) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
    throw Error(ErrorCode::DomainError, kModule, "parameters must be finite");
  }
  if (b == 0.0 || b == 1.0) {
    throw Error(ErrorCode::DegenerateExponent, kModule,
                "exponent b must differ from 0 and 1 (b = " + fmt(b) + ")");
  }
  if (c == 0.0) {
    throw Error(ErrorCode::ZeroRate, kModule, "rate c must be nonzero");
  }
  const double abb1 = a * b * (b - 1.0);
  if (!(abb1 < 0.0)) {
    throw Error(ErrorCode::SignConditionViolated, kModule,
                "sign condition ab(b-1) < 0 violated: ab(b-1) = " + fmt(abb1));
  }
  const double abc = a * b * c;
  if (!(abc < 0.0)) {
    throw Error(ErrorCode::SignConditionViolated, kModule,
                "sign condition abc < 0 violated: abc = " + fmt(abc));
  }
}

void check_guardrails(double a, double b, double c) {
  if (std::fabs(b) > kMaxAbsExponent) {
    throw Error(ErrorCode::NumericOverflow, kModule,
                "|b| = " + fmt(std::fabs(b)) + " exceeds " + fmt(kMaxAbsExponent));
  }
  if (!in_magnitude_range(a)) {
    throw Error(ErrorCode::NumericOverflow, kModule,
                "|a| = " + fmt(std::fabs(a)) + " outside [1e-8, 1e8]");
  }
  if (!in_magnitude_range(c)) {
    throw Error(ErrorCode::NumericOverflow, kModule,
                "|c| = " + fmt(std::fabs(c)) + " outside [1e-8, 1e8]");
  }
}

Regime classify_regime(double b) {
  if (b < 0.0) return Regime::DeBruijnType;
  if (b < 1.0) return Regime::KohlbeckerType;
  return Regime::KasaharaType;
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::KohlbeckerType: return "KohlbeckerType";
    case Regime::DeBruijnType: return "DeBruijnType";
    case Regime::KasaharaType: return "KasaharaType";
  }
  return "Unknown";
}

double saddle_location(double a, double b, double c) {
  return std::pow(-c / (a * b), 1.0 / (b - 1.0));
}

double compute_d(double a, double b, double c) {
  check_admissible(a, b, c);
  const double x_m = saddle_location(a, b, c);
  return a * (1.0 - b) * std::pow(x_m, b);
}

DVariants d_variants(double a, double b, double c) {
  check_admissible(a, b, c);
  const double e = b / (b - 1.0);
  return DVariants{a * (1.0 - b) * std::pow(-a * b / c, e),
                   a * (1.0 - b) * std::pow(-c / (a * b), e)};
}

UnifiedParams validate(double a, double b, double c, double offset) {
  check_admissible(a, b, c);
  check_guardrails(a, b, c);
  if (!std::isfinite(offset)) {
    throw Error(ErrorCode::DomainError, kModule, "offset must be finite");
  }
  const double d = compute_d(a, b, c);
  if (!std::isfinite(d) || d == 0.0) {
    throw Error(ErrorCode::NumericOverflow, kModule,
                "dual coefficient d is not representable (d = " + fmt(d) + ")");
  }
  if (d < 0.0 && offset != 0.0) {
    throw Error(ErrorCode::OffsetNotAllowed, kModule,
                "offset must be 0 when d < 0 (offset = " + fmt(offset) +
                    ", d = " + fmt(d) + ")");
  }
  return UnifiedParams(a, b, c, offset, d, b / (1.0 - b), classify_regime(b));
}

SaddlePoint saddle_analysis(const UnifiedParams& p) {
  check_guardrails(p.a(), p.b(), p.c());
  const double a = p.a(), b = p.b(), c = p.c();
  const double x_m = saddle_location(a, b, c);
  if (!std::isfinite(x_m) || x_m <= 0.0) {
    throw Error(ErrorCode::NumericOverflow, kModule,
                "saddle location not representable (x_M = " + fmt(x_m) + ")");
  }
  SaddlePoint sp{x_m, h_eval(p, x_m), a * b * (b - 1.0) * std::pow(x_m, b - 2.0)};
  if (!std::isfinite(sp.curvature)) {
    throw Error(ErrorCode::NumericOverflow, kModule, "curvature at x_M overflows");
  }

  // h must be non-positive around its maximum.
  const double scale = std::fabs(p.d());
  constexpr int kSamples = 64;
  for (int i = 0; i < kSamples; ++i) {
    const double x = x_m * std::pow(10.0, -2.0 + 4.0 * i / (kSamples - 1));
    const double h = h_eval(p, x);
    if (h > 1e-12 * scale) {
      throw Error(ErrorCode::InconsistentInputs, kModule,
                  "h(" + fmt(x) + ") = " + fmt(h) + " > 0 near the saddle");
    }
  }
  return sp;
}

double dual_exponent(double b) {
  if (b == 0.0 || b == 1.0) {
    throw Error(ErrorCode::DegenerateExponent, kModule,
                "dual exponent undefined for b = " + fmt(b));
  }
  return b / (1.0 - b);
}

double primal_exponent(double e) {
  if (e == -1.0) {
    throw Error(ErrorCode::DegenerateExponent, kModule,
                "primal exponent undefined for e = -1");
  }
  return e / (1.0 + e);
}

PrimalRecovery recover_primal(double d, double e, double c) {
  const double b = primal_exponent(e);
  if (b == 0.0) {
    throw Error(ErrorCode::DegenerateExponent, kModule,
                "recovered exponent b = 0 (e = " + fmt(e) + ")");
  }
  if (c == 0.0) {
    throw Error(ErrorCode::ZeroRate, kModule, "rate c must be nonzero");
  }
  const double v0 = d * b / (c * (b - 1.0));
  if (!(v0 > 0.0) || !std::isfinite(v0)) {
    throw Error(ErrorCode::InconsistentInputs, kModule,
                "saddle location v0 = db/(c(b-1)) = " + fmt(v0) + " is not positive");
  }
  const double a = (d - c * v0) / std::pow(v0, b);
  try {
    validate(a, b, c, 0.0);
  } catch (const Error& err) {
    throw Error(ErrorCode::InconsistentInputs, kModule,
                std::string("recovered parameters are not admissible: ") + err.what());
  }
  return PrimalRecovery{a, b, v0};
}

double h_eval(const UnifiedParams& p, double x) {
  if (!(x > 0.0)) {
    throw Error(ErrorCode::DomainError, kModule, "h is defined for x > 0 only (x = " + fmt(x) + ")");
  }
  return p.a() * std::pow(x, p.b()) + p.c() * x - p.d();
}

}  // namespace tauberlab
