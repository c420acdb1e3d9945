#pragma once

#include <cmath>
#include <limits>

namespace tauberlab {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(exp(x) + exp(y)) without overflow.
inline double log_add_exp(double x, double y) {
  if (x == kNegInf) return y;
  if (y == kNegInf) return x;
  const double hi = x > y ? x : y;
  const double lo = x > y ? y : x;
  return hi + std::log1p(std::exp(lo - hi));
}

/// Streaming log-sum-exp. Rescales the running sum whenever a larger term
/// arrives, so any sequence of log-terms can be accumulated in one pass.
class LogSumAccumulator {
 public:
  void add(double log_term) {
    if (log_term == kNegInf || std::isnan(log_term)) return;
    if (log_term > max_) {
      sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    } else {
      sum_ += std::exp(log_term - max_);
    }
  }

  double value() const { return sum_ > 0.0 ? max_ + std::log(sum_) : kNegInf; }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

}  // namespace tauberlab
