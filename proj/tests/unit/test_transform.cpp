#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "random.hpp"
#include "tauberlab/error.hpp"
#include "tauberlab/transform.hpp"

using namespace tauberlab;

namespace {

const TargetFunction kKohl = TargetFunction::pure_power(2.0, 0.5);
const TargetFunction kKasa = TargetFunction::pure_power(-1.0, 2.0);
const TargetFunction kBruijn = TargetFunction::pure_power(-1.0, -1.0);

std::vector<double> grid16() {
  std::vector<double> out;
  for (int k = 0; k < 16; ++k) out.push_back(10.0 * std::pow(100.0, k / 15.0));
  return out;
}

}  // namespace

TEST_CASE("log integrand") {
  CHECK(log_integrand(kKohl, -1.0, 1.0, 1.0) == doctest::Approx(1.0));
  CHECK(log_integrand(kKohl, -1.0, 100.0, 100.0) == doctest::Approx(100.0));
  CHECK(log_integrand(kBruijn, -1.0, 1.0, 1e6) == doctest::Approx(-1e6).epsilon(1e-5));
  CHECK(log_integrand(kBruijn, -1.0, 1.0, 1e12) < log_integrand(kBruijn, -1.0, 1.0, 1e6));
}

TEST_CASE("peak location") {
  CHECK(locate_peak(kKohl, -1.0, 100.0) == doctest::Approx(100.0).epsilon(1e-10));
  CHECK(locate_peak(kKasa, 1.0, 0.1) == doctest::Approx(50.0).epsilon(1e-10));
  CHECK(locate_peak(kBruijn, -1.0, 0.01) == doctest::Approx(10.0).epsilon(1e-10));
  CHECK_THROWS_AS(locate_peak(TargetFunction::pure_power(0.0, 0.5), -1.0, 1.0), Error);

  auto g = fixture::rng(3);
  for (Regime r : {Regime::KohlbeckerType, Regime::KasaharaType, Regime::DeBruijnType}) {
    for (int i = 0; i < 200; ++i) {
      const auto t = fixture::random_triple(g, r);
      const UnifiedParams p = validate(t.a, t.b, t.c);
      const double psi = fixture::log_uniform(g, 1.0, 1e4);
      const double s = s_from_psi(t.b, psi);
      const double u = locate_peak(TargetFunction::pure_power(t.a, t.b), t.c, s);
      const double x_m = saddle_location(t.a, t.b, t.c);
      CHECK(std::fabs(u * std::pow(s, -t.b / (1.0 - t.b)) / x_m - 1.0) <= 1e-8);
      CHECK(std::fabs(psi_from_s(t.b, s) / psi - 1.0) <= 1e-12);
      (void)p;
    }
  }
}

TEST_CASE("canonical transform values") {
  const TransformResult k = log_transform(kKohl, -1.0, 0.0, 100.0);
  CHECK(std::fabs(k.log_f - 103.57) <= 0.2);
  CHECK(k.log_f == doctest::Approx(oracle::kohlbecker_half(2.0, -1.0, 100.0)).epsilon(1e-12));
  CHECK(k.tolerance_met);
  CHECK(k.quad_error <= 1e-10);

  // P = 1 gives int e^{-u} du = 1 for any s
  for (double s : {1e-3, 1.0, 1e3}) {
    const TransformResult one = log_transform(TargetFunction::pure_power(0.0, 0.5), -1.0, 0.0, s);
    CHECK(std::fabs(one.log_f) <= 1e-12);
  }

  // de Bruijn at psi = 10: 2 * 20 K_1(20) / 2
  const TransformResult db = log_transform(kBruijn, -1.0, 0.0, 0.01);
  CHECK(db.log_f == doctest::Approx(oracle::debruijn_minus_one(-1.0, -1.0, 0.01)).epsilon(1e-12));
  CHECK(db.log_f == doctest::Approx(-18.2581).epsilon(1e-5));

  const TransformResult ks = log_transform(kKasa, 1.0, 1.0, 0.1);
  CHECK(ks.log_f == doctest::Approx(oracle::kasahara_two(-1.0, 1.0, 1.0, 0.1)).epsilon(1e-12));
}

TEST_CASE("closed-form oracles across the sweep and random parameters") {
  for (double psi : grid16()) {
    CHECK(log_transform(kKohl, -1.0, 0.0, psi).log_f ==
          doctest::Approx(oracle::kohlbecker_half(2.0, -1.0, psi)).epsilon(1e-12));
    const double sk = 1.0 / std::sqrt(psi);
    CHECK(log_transform(kKasa, 1.0, 1.0, sk).log_f ==
          doctest::Approx(oracle::kasahara_two(-1.0, 1.0, 1.0, sk)).epsilon(1e-12));
    const double sb = 1.0 / (psi * psi);
    CHECK(log_transform(kBruijn, -1.0, 0.0, sb).log_f ==
          doctest::Approx(oracle::debruijn_minus_one(-1.0, -1.0, sb)).epsilon(1e-12));
  }

  auto g = fixture::rng(4);
  for (int i = 0; i < 100; ++i) {
    const double a = fixture::log_uniform(g, 0.1, 10.0);
    const double c = -fixture::log_uniform(g, 0.1, 10.0);
    const double s = fixture::log_uniform(g, 1e-3, 1e5);
    const TransformResult r = log_transform(TargetFunction::pure_power(a, 0.5), c, 0.0, s);
    const double ref = oracle::kohlbecker_half(a, c, s);
    CHECK(std::fabs(r.log_f - ref) <= 1e-9 * std::max(1.0, std::fabs(ref)));
  }
  for (int i = 0; i < 100; ++i) {
    const double a = -fixture::log_uniform(g, 0.1, 10.0);
    const double c = fixture::log_uniform(g, 0.1, 10.0);
    const double s = fixture::log_uniform(g, 1e-3, 10.0);
    const double offset = fixture::uniform(g, 0.0, 2.0);
    const TransformResult r = log_transform(TargetFunction::pure_power(a, 2.0), c, offset, s);
    const double ref = oracle::kasahara_two(a, c, offset, s);
    CHECK(std::fabs(r.log_f - ref) <= 1e-9 * std::max(1.0, std::fabs(ref)));
  }
  for (int i = 0; i < 100; ++i) {
    const double a = -fixture::log_uniform(g, 0.1, 10.0);
    const double c = -fixture::log_uniform(g, 0.1, 10.0);
    const double s = fixture::log_uniform(g, 1e-8, 1e2);
    const TransformResult r = log_transform(TargetFunction::pure_power(a, -1.0), c, 0.0, s);
    const double ref = oracle::debruijn_minus_one(a, c, s);
    CHECK(std::fabs(r.log_f - ref) <= 1e-9 * std::max(1.0, std::fabs(ref)));
  }
}

TEST_CASE("Bessel oracle branches agree") {
  for (double z : {50.0, 200.0, 400.0, 500.0}) {
    CHECK(oracle::log_bessel_k1_asymptotic(z) ==
          doctest::Approx(std::log(std::cyl_bessel_k(1.0, z))).epsilon(1e-14));
  }
}

TEST_CASE("general exponents against Gauss-Kronrod") {
  auto g = fixture::rng(5);
  for (Regime r : {Regime::KohlbeckerType, Regime::KasaharaType, Regime::DeBruijnType}) {
    for (int i = 0; i < 20; ++i) {
      const auto t = fixture::random_triple(g, r);
      const double psi = fixture::log_uniform(g, 1.0, 300.0);
      const double s = s_from_psi(t.b, psi);
      const double offset = r == Regime::KasaharaType ? 1.0 : 0.0;
      const TransformResult res =
          log_transform(TargetFunction::pure_power(t.a, t.b), t.c, offset, s);
      const double ref = oracle::log_transform_gk(
          [&](double x) { return t.a * std::pow(x, t.b); }, t.c, offset, s);
      CHECK(std::fabs(res.log_f - ref) <= 1e-9 * std::max(1.0, std::fabs(ref)));
    }
  }
}

TEST_CASE("perturbed targets against Gauss-Kronrod") {
  for (Perturbation fam : {Perturbation::InverseLog, Perturbation::SineLog}) {
    for (double k : {-0.5, 0.3, 0.5}) {
      struct Case {
        double a, b, c, offset;
      };
      for (const Case& cs : {Case{2, 0.5, -1, 0}, Case{-1, 2, 1, 1}, Case{-1, -1, -1, 0}}) {
        const TargetFunction t = TargetFunction::perturbed_power(cs.a, cs.b, fam, k);
        for (double psi : {10.0, 100.0, 1000.0}) {
          const double s = s_from_psi(cs.b, psi);
          const TransformResult res = log_transform(t, cs.c, cs.offset, s);
          const double ref = oracle::log_transform_gk(
              [&](double x) {
                const double lx = std::log(x);
                const double shape = fam == Perturbation::InverseLog ? 1.0 : std::sin(lx);
                return cs.a * std::pow(x, cs.b) * (1.0 + k * shape / (1.0 + std::fabs(lx)));
              },
              cs.c, cs.offset, s);
          CHECK(std::fabs(res.log_f - ref) <= 1e-9 * std::max(1.0, std::fabs(ref)));
        }
      }
    }
  }
  CHECK_THROWS_AS(TargetFunction::perturbed_power(2, 0.5, Perturbation::SineLog, 0.6), Error);
  CHECK(perturbation_from_string("sine-log") == Perturbation::SineLog);
  CHECK(to_string(Perturbation::InverseLog) == "inverse-log");
}

TEST_CASE("shift and scale identity") {
  auto g = fixture::rng(6);
  for (Regime r : {Regime::KohlbeckerType, Regime::KasaharaType, Regime::DeBruijnType}) {
    for (int i = 0; i < 50; ++i) {
      const auto t = fixture::random_triple(g, r);
      const TargetFunction target = TargetFunction::pure_power(t.a, t.b);
      const double s = s_from_psi(t.b, fixture::log_uniform(g, 1.0, 1e3));
      const double k = fixture::log_uniform(g, 1e-2, 1e2);
      const TransformResult base = log_transform(target, t.c, 0.0, s);
      const TransformResult scaled = log_transform(target, k * t.c, 0.0, k * s);
      const double err = base.quad_error + scaled.quad_error + 1e-13 * std::fabs(base.log_f);
      CHECK(std::fabs(base.log_f - (std::log(k) + scaled.log_f)) <= err + 1e-12);
    }
  }
}

TEST_CASE("refinement errors shrink") {
  QuadratureOptions opt;
  opt.tol = 1e-15;
  opt.min_levels = 6;
  for (const auto& [t, c, s] : {std::tuple{kKohl, -1.0, 100.0}, std::tuple{kKasa, 1.0, 0.1},
                                std::tuple{kBruijn, -1.0, 0.01}}) {
    const TransformResult r = log_transform(t, c, 0.0, s, opt);
    const auto& e = r.diagnostics.level_errors;
    REQUIRE(e.size() >= 3);
    // Errors fall until they reach the rounding floor of the panel sums.
    const double floor = 1e-12 + 1e-14 * std::fabs(r.log_f);
    for (std::size_t i = 1; i < e.size(); ++i) {
      if (e[i - 1] > floor) CHECK(e[i] < e[i - 1]);
    }
    CHECK(e.front() > e.back());
  }
}

TEST_CASE("integrability near zero") {
  // the pre-check integrates to 1e-8
  const double near_zero = log_integral_near_zero(kBruijn);
  CHECK(std::fabs(near_zero - std::log(std::exp(-1.0) + std::expint(-1.0))) <= 1e-8);
  CHECK_THROWS_AS(log_integral_near_zero(TargetFunction::pure_power(1.0, -1.0)), Error);
}

TEST_CASE("sweeps and predictions") {
  const UnifiedParams k = validate(2, 0.5, -1);
  CHECK(predict_log_f(k, 100.0, PredictionOrder::Leading) == doctest::Approx(100.0));
  CHECK(std::fabs(predict_log_f(k, 100.0, PredictionOrder::Corrected) - 103.569) <= 1e-3);
  CHECK(predict_log_f(validate(-1, -1, -1), 10.0, PredictionOrder::Leading) ==
        doctest::Approx(-20.0));

  const auto psis = grid16();
  const auto samples = sample_transforms(k, kKohl, psis);
  REQUIRE(samples.size() == psis.size());
  for (std::size_t i = 0; i < psis.size(); ++i) {
    CHECK(samples[i].psi == psis[i]);
    CHECK(samples[i].s == doctest::Approx(psis[i]));
    CHECK(std::isfinite(samples[i].quad_error));
    const TransformSample one = sample_transform(k, kKohl, psis[i]);
    CHECK(one.log_f == samples[i].log_f);
    // below psi = 100 the log psi correction exceeds 7%
    if (psis[i] >= 100.0) {
      CHECK(samples[i].log_f / psis[i] >= 0.99);
      CHECK(samples[i].log_f / psis[i] <= 1.07);
    }
  }
  CHECK(std::fabs(samples.back().log_f / psis.back() - 1.0) <= 0.01);
}

TEST_CASE("distance to the corrected prediction shrinks along the grid") {
  struct Case {
    double a, b, c, offset;
  };
  for (const Case& cs : {Case{2, 0.5, -1, 0}, Case{-1, 2, 1, 1}, Case{-1, -1, -1, 0}}) {
    const UnifiedParams p = validate(cs.a, cs.b, cs.c, cs.offset);
    const auto samples = sample_transforms(p, TargetFunction::pure_power(cs.a, cs.b), grid16());
    double prev = INFINITY;
    for (const TransformSample& s : samples) {
      const double gap = std::fabs(s.log_f - predict_log_f(p, s.psi, PredictionOrder::Corrected));
      const double floor = s.quad_error + 1e-13 * std::fabs(s.log_f);
      if (prev > floor) CHECK(gap <= prev + floor);
      prev = std::max(gap, floor);
    }
    CHECK(prev <= 0.2);
  }
}
