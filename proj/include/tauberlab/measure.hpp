#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace tauberlab {

struct Atom {
  double location;
  double mass;
};

/// Finite discrete measure on [0, inf): strictly increasing nonnegative
/// locations, strictly positive masses.
class TabulatedMeasure {
 public:
  explicit TabulatedMeasure(std::vector<Atom> atoms);

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  double total_mass() const noexcept { return total_; }

  /// mu[0, location_i], i.e. the sum of masses up to and including atom i.
  double cumulative(std::size_t i) const { return cumulative_[i]; }
  /// Sum of masses from atom i onwards.
  double tail_from(std::size_t i) const { return tail_[i]; }

 private:
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;
  std::vector<double> tail_;
  double total_ = 0.0;
};

/// Two-column text format: one atom per line as "location<TAB>mass",
/// strictly increasing locations, '#' lines and blank lines ignored.
TabulatedMeasure read_measure(std::istream& in);
TabulatedMeasure read_measure_file(const std::filesystem::path& path);
void write_measure(std::ostream& out, const TabulatedMeasure& m);

/// log of sum_i mass_i exp(-x_i / lambda).
double measure_transform_kohlbecker(const TabulatedMeasure& m, double lambda);
/// log of sum_i mass_i exp(lambda x_i).
double measure_transform_kasahara(const TabulatedMeasure& m, double lambda);

/// A measure obtained by lumping the mass of each cell (left_i, x_i] into an
/// atom at the right end x_i. cell_left[i] records left_i.
struct QuantizedMeasure {
  TabulatedMeasure measure;
  std::vector<double> cell_left;
};

/// Geometric grid first, first*ratio, ... closed by `last`.
std::vector<double> geometric_grid(double first, double last, double ratio);

/// Quantizes the measure with distribution function F(x) = mu[0, x] on
/// [0, grid.back()]. A point mass F(0) is placed at 0 when positive.
QuantizedMeasure quantize_cumulative(const std::function<double(double)>& cdf,
                                     std::span<const double> grid);

/// Quantizes the measure on (0, inf) with tail function G(x) = mu(x, inf).
/// Mass beyond grid.back() is dropped.
QuantizedMeasure quantize_tail(const std::function<double(double)>& tail,
                               std::span<const double> grid);

/// log of sum_i mass_i |K(x_i) - K(left_i)| for the monotone kernels of the
/// two measure transforms: a rigorous bound on the quantization error.
double log_quantization_bound_kohlbecker(const QuantizedMeasure& q, double lambda);
double log_quantization_bound_kasahara(const QuantizedMeasure& q, double lambda);

}  // namespace tauberlab
