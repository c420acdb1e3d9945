#include "tauberlab/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "tauberlab/error.hpp"

namespace tauberlab::report {
namespace {

using Json = nlohmann::ordered_json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

Json spec_json(const ClassicalSpec& spec) {
  return std::visit(
      Overloaded{[](const Kohlbecker& k) {
                   return Json{{"theorem", "kohlbecker"}, {"alpha", round12(k.alpha)}, {"B", round12(k.B)}};
                 },
                 [](const DeBruijn& k) {
                   return Json{{"theorem", "debruijn"},
                               {"beta", round12(k.beta)},
                               {"B", round12(k.B)},
                               {"rate", round12(k.rate)}};
                 },
                 [](const Kasahara& k) {
                   Json j{{"theorem", "kasahara"}, {"alpha", round12(k.alpha)}, {"B", round12(k.B)}};
                   if (k.total_mass) j["total_mass"] = round12(*k.total_mass);
                   return j;
                 }},
      spec);
}

Json row_json(const EquivalenceRow& row) {
  return Json{{"psi", round12(row.sample.psi)},
              {"s", round12(row.sample.s)},
              {"log_f", round12(row.sample.log_f)},
              {"quad_error", round12(row.sample.quad_error)},
              {"tolerance_met", row.sample.tolerance_met},
              {"prediction_leading", round12(row.prediction_leading)},
              {"prediction_corrected", round12(row.prediction_corrected)},
              {"ratio", round12(row.ratio)}};
}

}  // namespace

double round12(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  double out = 0.0;
  std::from_chars(buf, buf + std::char_traits<char>::length(buf), out);
  return out;
}

std::string exact(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string render_equivalence(const EquivalenceReport& r, const std::optional<ClassicalSpec>& spec) {
  const UnifiedParams& p = r.params;
  Json doc;
  Json input{{"a", round12(p.a())}, {"b", round12(p.b())}, {"c", round12(p.c())},
             {"offset", round12(p.offset())}};
  if (spec) input["classical"] = spec_json(*spec);
  doc["input"] = std::move(input);
  doc["params"] = Json{{"d", round12(p.d())},
                       {"dual_exp", round12(p.dual_exp())},
                       {"regime", std::string(to_string(p.regime()))},
                       {"x_M", round12(saddle_location(p.a(), p.b(), p.c()))}};

  Json samples = Json::array();
  for (const EquivalenceRow& row : r.rows) samples.push_back(row_json(row));
  doc["samples"] = std::move(samples);
  Json checkpoints = Json::array();
  for (const EquivalenceRow& row : r.checkpoints) checkpoints.push_back(row_json(row));
  doc["checkpoints"] = std::move(checkpoints);

  if (r.fit) {
    doc["fit"] = Json{{"exponent_hat", round12(r.fit->exponent_hat)},
                      {"exponent_expected", round12(p.dual_exp())},
                      {"coefficient_hat", round12(r.fit->coefficient_hat)},
                      {"coefficient_expected", round12(p.d())},
                      {"coefficient_rel_gap",
                       round12(std::fabs(r.fit->coefficient_hat - p.d()) / std::fabs(p.d()))},
                      {"residual", round12(r.fit->residual)},
                      {"window", Json::array({r.fit->window_begin, r.fit->window_end})}};
  }
  if (r.recovered) {
    doc["inverse"] = Json{{"a_hat", round12(r.recovered->a)},
                          {"b_hat", round12(r.recovered->b)},
                          {"v0", round12(r.recovered->v0)},
                          {"a_rel_gap", round12(std::fabs(r.recovered->a - p.a()) / std::fabs(p.a()))},
                          {"b_rel_gap", round12(std::fabs(r.recovered->b - p.b()) / std::fabs(p.b()))}};
  }
  Json checks = Json::array();
  for (const CheckOutcome& c : r.checks) {
    checks.push_back(Json{{"name", c.name},
                          {"value", round12(c.value)},
                          {"threshold", round12(c.threshold)},
                          {"passed", c.passed}});
  }
  doc["checks"] = std::move(checks);
  if (!r.failure.empty()) doc["failure"] = r.failure;
  doc["verdict"] = r.passed ? "pass" : "fail";
  return doc.dump(2) + "\n";
}

void write_csv(std::ostream& out, std::span<const EquivalenceRow> rows) {
  out << "psi,s,log_f,prediction_leading,prediction_corrected,ratio\n";
  for (const EquivalenceRow& row : rows) {
    out << exact(row.sample.psi) << ',' << exact(row.sample.s) << ',' << exact(row.sample.log_f)
        << ',' << exact(row.prediction_leading) << ',' << exact(row.prediction_corrected) << ','
        << exact(row.ratio) << '\n';
  }
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "report", "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "report", "failed writing " + path.string());
}

}  // namespace tauberlab::report
