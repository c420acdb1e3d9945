#include <doctest.h>

#include <cmath>
#include <functional>

#include "random.hpp"
#include "tauberlab/asymptotics.hpp"
#include "tauberlab/error.hpp"

using namespace tauberlab;

namespace {

std::vector<TransformSample> synthetic(const std::function<double(double)>& log_f, double lo,
                                       double hi, int n) {
  std::vector<TransformSample> out;
  for (int k = 0; k < n; ++k) {
    const double lambda = lo * std::pow(hi / lo, static_cast<double>(k) / (n - 1));
    out.push_back({lambda, lambda, log_f(lambda), 0.0, true});
  }
  return out;
}

std::vector<IndexSample> fixture_samples(const std::function<double(double)>& log_u, double lo10,
                                         double hi10, int n) {
  std::vector<IndexSample> out;
  for (int k = 0; k < n; ++k) {
    const double e = lo10 + (hi10 - lo10) * k / (n - 1);
    const double x = std::pow(10.0, e);
    out.push_back({x, log_u(x)});
  }
  return out;
}

ErrorCode error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::DomainError;
}

}  // namespace

TEST_CASE("evaluation grid") {
  CHECK(error_of([] { make_grid(1, 100, 3); }) == ErrorCode::BadRange);
  CHECK(error_of([] { make_grid(1, 1, 8); }) == ErrorCode::BadRange);
  CHECK(error_of([] { make_grid(0.5, 10, 8); }) == ErrorCode::BadRange);

  const EvalGrid g = make_grid(10, 1000, 9);
  const double r = std::pow(100.0, 1.0 / 8.0);
  CHECK(g.ratio() == doctest::Approx(r).epsilon(1e-14));
  REQUIRE(g.size() == 9);
  CHECK(g.psi_values().front() == 10.0);
  CHECK(g.psi_values().back() == doctest::Approx(1000.0).epsilon(1e-14));
  for (std::size_t k = 1; k < g.size(); ++k) {
    CHECK(std::fabs(g.psi_values()[k] / g.psi_values()[k - 1] - r) <= 1e-12 * r);
    CHECK(g.psi_values()[k] == doctest::Approx(10.0 * std::pow(r, static_cast<double>(k))).epsilon(1e-14));
  }
}

TEST_CASE("exponent fits on exact models") {
  const AsymptoticFit lin = fit_exponent(synthetic([](double l) { return l; }, 10, 1000, 16));
  CHECK(std::fabs(lin.exponent_hat - 1.0) <= 1e-10);
  CHECK(lin.coefficient_hat == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(lin.residual <= 1e-12);
  CHECK(lin.window_begin == 8);
  CHECK(lin.window_end == 16);

  const AsymptoticFit corrected = fit_exponent(
      synthetic([](double l) { return 0.25 * l * l + 0.5 * std::log(l); }, 10, 1000, 16));
  CHECK(corrected.exponent_hat >= 1.97);
  CHECK(corrected.exponent_hat <= 2.0);

  const AsymptoticFit neg =
      fit_exponent(synthetic([](double l) { return -2.0 * std::sqrt(l); }, 10, 1000, 16));
  CHECK(std::fabs(neg.exponent_hat - 0.5) <= 1e-10);
  CHECK(neg.coefficient_hat == doctest::Approx(-2.0).epsilon(1e-10));

  CHECK(error_of([] { fit_exponent(synthetic([](double l) { return l; }, 10, 1000, 5)); }) ==
        ErrorCode::DegenerateWindow);
  CHECK(error_of([] {
          fit_exponent(synthetic([](double l) { return l < 300 ? -l : l; }, 10, 1000, 16));
        }) == ErrorCode::SignChange);
}

TEST_CASE("fit is scale equivariant and exact on pure powers") {
  auto g = fixture::rng(7);
  for (int i = 0; i < 200; ++i) {
    const double coef = fixture::uniform(g, -5.0, 5.0);
    const double e = fixture::uniform(g, -3.0, 3.0);
    if (std::fabs(coef) < 1e-3 || std::fabs(e) < 1e-2) continue;
    const auto samples = synthetic([&](double l) { return coef * std::pow(l, e); }, 0.1, 100, 16);
    const AsymptoticFit base = fit_exponent(samples);
    CHECK(std::fabs(base.exponent_hat - e) <= 1e-10 * std::max(1.0, std::fabs(e)));

    const double k = fixture::log_uniform(g, 0.01, 100.0);
    auto scaled = samples;
    for (auto& s : scaled) s.log_f *= k;
    const AsymptoticFit sc = fit_exponent(scaled);
    CHECK(std::fabs(sc.exponent_hat - base.exponent_hat) <= 1e-10);
    CHECK(sc.coefficient_hat == doctest::Approx(k * base.coefficient_hat).epsilon(1e-10));
  }
}

TEST_CASE("log-index on exact powers") {
  std::vector<IndexSample> cube;
  for (double l : {2.0, 4.0, 8.0}) cube.push_back({std::exp(l), 3.0 * l});
  for (const IndexPoint& p : ck_index(cube).points) CHECK(p.tau_hat == doctest::Approx(3.0).epsilon(1e-15));

  const std::vector<IndexSample> five{{std::exp(10.0), std::log(5.0) + 30.0}};
  CHECK(ck_index(five).tau_final == doctest::Approx(3.1609).epsilon(1e-4));
  CHECK(ck_index(five).tau_final == doctest::Approx(3.0 + std::log(5.0) / 10.0).epsilon(1e-15));

  const std::vector<IndexSample> with_log{{std::exp(100.0), 300.0 + std::log(100.0)}};
  CHECK(ck_index(with_log).tau_final == doctest::Approx(3.0461).epsilon(1e-4));

  CHECK(IndexSample::from_value(10.0, 100.0).log_u == doctest::Approx(std::log(100.0)));
  CHECK(error_of([] { IndexSample::from_value(10.0, 0.0); }) == ErrorCode::DomainError);
  CHECK(error_of([] { ck_index(std::vector<IndexSample>{{1.0, 0.0}}); }) == ErrorCode::DomainError);

  auto g = fixture::rng(8);
  for (int i = 0; i < 500; ++i) {
    const double tau = fixture::uniform(g, -5.0, 5.0);
    const double log_c = fixture::uniform(g, -10.0, 10.0);
    const double x = fixture::log_uniform(g, 1.5, 1e200);
    const std::vector<IndexSample> one{{x, log_c + tau * std::log(x)}};
    const double tau_hat = ck_index(one).tau_final;
    CHECK(std::fabs(std::fabs(tau_hat - tau) - std::fabs(log_c) / std::log(x)) <= 1e-12);
  }
}

TEST_CASE("limit verdicts") {
  const std::vector<double> down{0, -1, -2, -3, -4, -5, -6, -7};
  const std::vector<double> up{0, 1, 2, 3, 4, 5, 6, 7};
  const std::vector<double> flat{0, -1, -2, -3, -4, -5, -5, -5};
  const std::vector<double> shallow{0, -0.1, -0.2, -0.3, -0.4, -0.5, -0.6, -0.7};
  CHECK(limit_verdict(down) == LimitVerdict::TendsToZero);
  CHECK(limit_verdict(up) == LimitVerdict::TendsToInfinity);
  CHECK(limit_verdict(flat) == LimitVerdict::Inconclusive);
  CHECK(limit_verdict(shallow) == LimitVerdict::Inconclusive);
  CHECK(to_string(LimitVerdict::TendsToZero) == "tends-to-zero");
}

TEST_CASE("class-M checks on power fixtures") {
  const auto square = fixture_samples([](double x) { return 2.0 * std::log(x); }, 1, 6, 16);
  const std::vector<double> half{0.5};
  CHECK(class_m_check(square, 2.0, half).consistent);
  const ClassMDiagnostic off = class_m_check(square, 3.0, half);
  CHECK_FALSE(off.consistent);
  CHECK(off.epsilon_checks[0].upper_verdict == LimitVerdict::TendsToZero);
  CHECK(off.epsilon_checks[0].lower_verdict != LimitVerdict::TendsToInfinity);

  const auto stretched = fixture_samples([](double x) { return std::sqrt(x); }, 1, 6, 16);
  for (double tau : {0.0, 1.0, 3.0, 10.0, 100.0}) {
    CHECK_FALSE(class_m_check(stretched, tau, half).consistent);
  }

  const std::vector<double> none;
  CHECK(error_of([&] { class_m_check(square, 2.0, none); }) == ErrorCode::DomainError);
  const auto short_span = fixture_samples([](double x) { return std::log(x); }, 1, 3, 16);
  CHECK(error_of([&] { class_m_check(short_span, 1.0, half); }) == ErrorCode::InsufficientSpan);
}

TEST_CASE("slowly varying perturbations") {
  const double tau = 1.5;
  const std::vector<std::function<double(double)>> slow{
      [](double x) { return std::log(std::log(std::log(x))); },
      [](double x) { return std::log(2.0 + std::sin(std::log(std::log(x)))); },
      [](double x) { return 0.25 * std::log(std::log(x)); }};
  const std::vector<double> eps{0.1, 0.25};
  for (const auto& log_l : slow) {
    auto log_u = [&](double x) { return tau * std::log(x) + log_l(x); };
    const std::vector<IndexSample> at{{1e12, log_u(1e12)}};
    CHECK(std::fabs(ck_index(at).tau_final - tau) <= 0.05);

    const auto samples = fixture_samples(log_u, 1, 100, 64);
    CHECK(class_m_check(samples, tau, eps).consistent);
    CHECK_FALSE(class_m_check(samples, tau + 0.5, eps).consistent);
    CHECK_FALSE(class_m_check(samples, tau - 0.5, eps).consistent);
  }
}

TEST_CASE("stable log-index implies class-M consistency") {
  auto g = fixture::rng(9);
  int stable = 0;
  for (int i = 0; i < 200; ++i) {
    const double tau = fixture::uniform(g, -3.0, 3.0);
    const double log_c = fixture::uniform(g, -5.0, 5.0);
    const double k = fixture::uniform(g, 0.0, 2.0);
    // enough decades for a drift of 0.1 log x to clear a factor of 100
    const double hi = fixture::uniform(g, 80.0, 150.0);
    auto log_u = [&](double x) { return log_c + tau * std::log(x) + k * std::log(std::log(x)); };
    const auto samples = fixture_samples(log_u, 1, hi, 48);
    const CkIndexResult idx = ck_index(samples);
    if (idx.spread_last_quarter >= 0.05) continue;
    ++stable;
    const std::vector<double> eps{0.1, 0.25, 1.0};
    CHECK(class_m_check(samples, tau, eps).consistent);
  }
  CHECK(stable > 50);
}

TEST_CASE("equivalence reports on the canonical examples") {
  const EvalGrid grid = make_grid(10, 1000, 16);
  struct Case {
    double a, b, c, offset;
    double ratio_top, ratio_100, exponent_hat, coefficient_hat;
  };
  // Values from the closed-form transforms, computed separately.
  for (const Case& cs : {Case{2, 0.5, -1, 0, 1.004719, 1.035681, 0.988233, 1.086724},
                         Case{-1, 2, 1, 1, 1.016105, 1.114998, -1.926971, 0.324211},
                         Case{-1, -1, -1, 0, 0.997987, 0.985616, -0.502423, -1.932472}}) {
    const UnifiedParams p = validate(cs.a, cs.b, cs.c, cs.offset);
    const EquivalenceReport r = verify_equivalence(p, TargetFunction::pure_power(cs.a, cs.b), grid);
    CHECK(r.failure.empty());
    REQUIRE(r.rows.size() == 16);
    REQUIRE(r.checkpoints.size() == 1);
    CHECK(r.rows.back().ratio == doctest::Approx(cs.ratio_top).epsilon(2e-6));
    CHECK(r.checkpoints[0].ratio == doctest::Approx(cs.ratio_100).epsilon(2e-6));
    REQUIRE(r.fit);
    CHECK(r.fit->exponent_hat == doctest::Approx(cs.exponent_hat).epsilon(2e-6));
    CHECK(r.fit->coefficient_hat == doctest::Approx(cs.coefficient_hat).epsilon(2e-6));
    REQUIRE(r.recovered);
    for (const EquivalenceRow& row : r.rows) {
      CHECK(row.ratio == doctest::Approx(row.sample.log_f / (p.d() * row.sample.psi)));
    }
  }
}

TEST_CASE("engine failures are reported, not thrown") {
  // log f crosses zero inside the fit window
  const UnifiedParams p = validate(2, 0.5, -1);
  const TargetFunction steps =
      TargetFunction::tabulated(TabulatedMeasure({{0.0, 0.5}, {500.0, 10.0}}), MeasureSide::Cumulative);
  const EquivalenceReport r = verify_equivalence(p, steps, make_grid(10, 1000, 16));
  CHECK_FALSE(r.passed);
  CHECK(r.failure.find("changes sign") != std::string::npos);
  CHECK(r.rows.size() == 16);
  CHECK_FALSE(r.fit);
}
