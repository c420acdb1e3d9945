#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "tauberlab/params.hpp"

namespace fixture {

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(0x7a0be2ull + salt); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline double log_uniform(std::mt19937_64& g, double lo, double hi) {
  return std::exp(uniform(g, std::log(lo), std::log(hi)));
}

struct Triple {
  double a, b, c;
};

// A valid (a, b, c) of the given regime with |a|, |c| in [0.1, 10].
inline Triple random_triple(std::mt19937_64& g, tauberlab::Regime r) {
  const double ma = log_uniform(g, 0.1, 10.0);
  const double mc = log_uniform(g, 0.1, 10.0);
  switch (r) {
    case tauberlab::Regime::KohlbeckerType:
      return {ma, uniform(g, 0.05, 0.95), -mc};
    case tauberlab::Regime::KasaharaType:
      return {-ma, uniform(g, 1.05, 4.0), mc};
    case tauberlab::Regime::DeBruijnType:
      return {-ma, -uniform(g, 0.1, 4.0), -mc};
  }
  return {};
}

}  // namespace fixture
