#include "tauberlab/measure.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "tauberlab/error.hpp"
#include "tauberlab/logspace.hpp"

namespace tauberlab {
namespace {

constexpr std::string_view kModule = "measure";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view text, double& out) {
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

void check_lambda(double lambda, bool allow_zero) {
  if (!std::isfinite(lambda) || lambda < 0.0 || (!allow_zero && lambda == 0.0)) {
    throw Error(ErrorCode::DomainError, kModule,
                "lambda must be " + std::string(allow_zero ? "nonnegative" : "positive"));
  }
}

void check_nonempty(const TabulatedMeasure& m) {
  if (m.size() == 0) throw Error(ErrorCode::EmptyMeasure, kModule, "measure has no atoms");
}

}  // namespace

TabulatedMeasure::TabulatedMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const Atom& at = atoms_[i];
    if (!std::isfinite(at.location) || at.location < 0.0) {
      throw Error(ErrorCode::InvalidMeasure, kModule,
                  "atom " + std::to_string(i) + ": location must be finite and >= 0");
    }
    if (!std::isfinite(at.mass) || !(at.mass > 0.0)) {
      throw Error(ErrorCode::InvalidMeasure, kModule,
                  "atom " + std::to_string(i) + ": mass must be finite and > 0");
    }
    if (i > 0 && !(at.location > atoms_[i - 1].location)) {
      throw Error(ErrorCode::InvalidMeasure, kModule,
                  "atom " + std::to_string(i) + ": locations must be strictly increasing");
    }
  }
  const std::size_t n = atoms_.size();
  cumulative_.resize(n);
  tail_.resize(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += atoms_[i].mass;
    cumulative_[i] = acc;
  }
  total_ = acc;
  // Summed from the small end so the tail keeps its relative accuracy.
  acc = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    acc += atoms_[i].mass;
    tail_[i] = acc;
  }
}

TabulatedMeasure read_measure(std::istream& in) {
  std::vector<Atom> atoms;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto sep = view.find_first_of(" \t");
    if (sep == std::string_view::npos) {
      throw Error(ErrorCode::ParseError, kModule,
                  "line " + std::to_string(line_no) + ": expected 'location<TAB>mass'");
    }
    Atom atom{};
    if (!parse_double(trim(view.substr(0, sep)), atom.location) ||
        !parse_double(trim(view.substr(sep + 1)), atom.mass)) {
      throw Error(ErrorCode::ParseError, kModule,
                  "line " + std::to_string(line_no) + ": malformed decimal value");
    }
    if (!atoms.empty() && !(atom.location > atoms.back().location)) {
      throw Error(ErrorCode::ParseError, kModule,
                  "line " + std::to_string(line_no) + ": locations must be strictly increasing");
    }
    atoms.push_back(atom);
  }
  try {
    return TabulatedMeasure(std::move(atoms));
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, kModule, e.what());
  }
}

TabulatedMeasure read_measure_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, kModule, "cannot open " + path.string());
  return read_measure(in);
}

void write_measure(std::ostream& out, const TabulatedMeasure& m) {
  char buf[64];
  for (const Atom& at : m.atoms()) {
    auto r = std::to_chars(buf, buf + sizeof buf, at.location);
    *r.ptr++ = '\t';
    r = std::to_chars(r.ptr, buf + sizeof buf, at.mass);
    out.write(buf, r.ptr - buf);
    out.put('\n');
  }
}

double measure_transform_kohlbecker(const TabulatedMeasure& m, double lambda) {
  check_nonempty(m);
  check_lambda(lambda, false);
  LogSumAccumulator acc;
  for (const Atom& at : m.atoms()) acc.add(std::log(at.mass) - at.location / lambda);
  return acc.value();
}

double measure_transform_kasahara(const TabulatedMeasure& m, double lambda) {
  check_nonempty(m);
  check_lambda(lambda, true);
  LogSumAccumulator acc;
  for (const Atom& at : m.atoms()) acc.add(std::log(at.mass) + lambda * at.location);
  return acc.value();
}

std::vector<double> geometric_grid(double first, double last, double ratio) {
  if (!(first > 0.0) || !(last > first) || !(ratio > 1.0)) {
    throw Error(ErrorCode::BadRange, kModule, "geometric grid needs 0 < first < last, ratio > 1");
  }
  std::vector<double> grid;
  const double log_ratio = std::log(ratio);
  const auto steps = static_cast<std::size_t>(std::ceil(std::log(last / first) / log_ratio));
  grid.reserve(steps + 1);
  for (std::size_t k = 0; k < steps; ++k) {
    const double x = first * std::exp(static_cast<double>(k) * log_ratio);
    if (x >= last) break;
    grid.push_back(x);
  }
  grid.push_back(last);
  return grid;
}

QuantizedMeasure quantize_cumulative(const std::function<double(double)>& cdf,
                                     std::span<const double> grid) {
  std::vector<Atom> atoms;
  std::vector<double> left;
  atoms.reserve(grid.size() + 1);
  left.reserve(grid.size() + 1);
  double prev_x = 0.0;
  double prev_f = cdf(0.0);
  if (prev_f > 0.0) {
    atoms.push_back({0.0, prev_f});
    left.push_back(0.0);
  }
  for (double x : grid) {
    if (!(x > prev_x)) {
      throw Error(ErrorCode::BadRange, kModule, "quantization grid must be positive and increasing");
    }
    const double f = cdf(x);
    const double mass = f - prev_f;
    if (mass > 0.0) {
      atoms.push_back({x, mass});
      left.push_back(prev_x);
    }
    prev_x = x;
    prev_f = f;
  }
  return {TabulatedMeasure(std::move(atoms)), std::move(left)};
}

QuantizedMeasure quantize_tail(const std::function<double(double)>& tail,
                               std::span<const double> grid) {
  std::vector<Atom> atoms;
  std::vector<double> left;
  atoms.reserve(grid.size());
  left.reserve(grid.size());
  double prev_x = 0.0;
  double prev_g = tail(0.0);
  for (double x : grid) {
    if (!(x > prev_x)) {
      throw Error(ErrorCode::BadRange, kModule, "quantization grid must be positive and increasing");
    }
    const double g = tail(x);
    const double mass = prev_g - g;
    if (mass > 0.0) {
      atoms.push_back({x, mass});
      left.push_back(prev_x);
    }
    prev_x = x;
    prev_g = g;
  }
  return {TabulatedMeasure(std::move(atoms)), std::move(left)};
}

double log_quantization_bound_kohlbecker(const QuantizedMeasure& q, double lambda) {
  check_lambda(lambda, false);
  LogSumAccumulator acc;
  const auto atoms = q.measure.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const double width = atoms[i].location - q.cell_left[i];
    if (width <= 0.0) continue;
    acc.add(std::log(atoms[i].mass) - q.cell_left[i] / lambda +
            std::log(-std::expm1(-width / lambda)));
  }
  return acc.value();
}

double log_quantization_bound_kasahara(const QuantizedMeasure& q, double lambda) {
  check_lambda(lambda, true);
  LogSumAccumulator acc;
  const auto atoms = q.measure.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const double width = atoms[i].location - q.cell_left[i];
    if (width <= 0.0 || lambda == 0.0) continue;
    acc.add(std::log(atoms[i].mass) + lambda * atoms[i].location +
            std::log(-std::expm1(-lambda * width)));
  }
  return acc.value();
}

}  // namespace tauberlab
