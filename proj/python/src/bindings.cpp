#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tauberlab/asymptotics.hpp"
#include "tauberlab/classical.hpp"
#include "tauberlab/error.hpp"
#include "tauberlab/params.hpp"
#include "tauberlab/report.hpp"
#include "tauberlab/transform.hpp"

namespace py = pybind11;
using namespace tauberlab;

namespace {

TargetFunction make_target(const UnifiedParams& p, const std::string& perturbation, double k) {
  if (perturbation.empty()) return TargetFunction::pure_power(p.a(), p.b());
  return TargetFunction::perturbed_power(p.a(), p.b(), perturbation_from_string(perturbation), k);
}

py::dict spec_dict(const ClassicalSpec& spec) {
  py::dict out;
  out["theorem"] = std::string(name_of(spec));
  if (const auto* k = std::get_if<Kohlbecker>(&spec)) {
    out["alpha"] = k->alpha;
    out["B"] = k->B;
  } else if (const auto* k = std::get_if<DeBruijn>(&spec)) {
    out["beta"] = k->beta;
    out["B"] = k->B;
    out["rate"] = k->rate;
  } else if (const auto* k = std::get_if<Kasahara>(&spec)) {
    out["alpha"] = k->alpha;
    out["B"] = k->B;
    out["total_mass"] = k->total_mass ? py::cast(*k->total_mass) : py::none();
  }
  return out;
}

ClassicalSpec spec_from(const std::string& theorem, double first, double B, std::optional<double> extra) {
  if (theorem == "kohlbecker") return Kohlbecker{first, B};
  if (theorem == "debruijn") return DeBruijn{first, B, extra.value_or(1.0)};
  if (theorem == "kasahara") return Kasahara{first, B, extra};
  throw Error(ErrorCode::SpecOutOfRange, "classical", "unknown theorem " + theorem);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exponential Tauberian laboratory";

  auto base = py::register_exception<Error>(m, "TauberError", PyExc_ValueError);
  (void)base;

  py::enum_<Regime>(m, "Regime")
      .value("KohlbeckerType", Regime::KohlbeckerType)
      .value("DeBruijnType", Regime::DeBruijnType)
      .value("KasaharaType", Regime::KasaharaType);

  py::class_<UnifiedParams>(m, "UnifiedParams")
      .def_property_readonly("a", &UnifiedParams::a)
      .def_property_readonly("b", &UnifiedParams::b)
      .def_property_readonly("c", &UnifiedParams::c)
      .def_property_readonly("offset", &UnifiedParams::offset)
      .def_property_readonly("d", &UnifiedParams::d)
      .def_property_readonly("dual_exp", &UnifiedParams::dual_exp)
      .def_property_readonly("regime", &UnifiedParams::regime)
      .def("__eq__", [](const UnifiedParams& x, const UnifiedParams& y) { return x == y; })
      .def("__repr__", [](const UnifiedParams& p) {
        return "UnifiedParams(a=" + report::exact(p.a()) + ", b=" + report::exact(p.b()) +
               ", c=" + report::exact(p.c()) + ", offset=" + report::exact(p.offset()) + ")";
      });

  m.def("validate", &validate, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("offset") = 0.0);
  m.def("saddle_location", &saddle_location, py::arg("a"), py::arg("b"), py::arg("c"));
  m.def("d_variants", [](double a, double b, double c) {
    const DVariants v = d_variants(a, b, c);
    return py::make_tuple(v.d_stated, v.d_consistent);
  });
  m.def("dual_exponent", &dual_exponent);
  m.def("primal_exponent", &primal_exponent);
  m.def("recover_primal", [](double d, double e, double c) {
    const PrimalRecovery r = recover_primal(d, e, c);
    return py::make_tuple(r.a, r.b, r.v0);
  }, py::arg("d"), py::arg("e"), py::arg("c"));

  m.def("predict_log_f", [](const UnifiedParams& p, double psi, bool corrected) {
    return predict_log_f(p, psi, corrected ? PredictionOrder::Corrected : PredictionOrder::Leading);
  }, py::arg("params"), py::arg("psi"), py::arg("corrected") = false);

  m.def("log_transform", [](const UnifiedParams& p, double s, const std::string& perturbation,
                            double k, double tol) {
    QuadratureOptions opt;
    opt.tol = tol;
    const TransformResult r = log_transform(make_target(p, perturbation, k), p.c(), p.offset(), s, opt);
    return py::make_tuple(r.log_f, r.quad_error);
  }, py::arg("params"), py::arg("s"), py::arg("perturbation") = "", py::arg("k") = 0.0,
     py::arg("tol") = 1e-10);

  m.def("make_grid", [](double lo, double hi, std::size_t n) {
    const EvalGrid g = make_grid(lo, hi, n);
    return std::vector<double>(g.psi_values().begin(), g.psi_values().end());
  }, py::arg("psi_min") = 10.0, py::arg("psi_max") = 1000.0, py::arg("n") = 16);

  m.def("sweep", [](const UnifiedParams& p, double lo, double hi, std::size_t n) {
    const EvalGrid g = make_grid(lo, hi, n);
    std::vector<py::tuple> out;
    for (const TransformSample& s : sample_transforms(p, TargetFunction::pure_power(p.a(), p.b()),
                                                      g.psi_values())) {
      out.push_back(py::make_tuple(s.psi, s.s, s.log_f));
    }
    return out;
  }, py::arg("params"), py::arg("psi_min") = 10.0, py::arg("psi_max") = 1000.0, py::arg("n") = 16);

  m.def("verify", [](const UnifiedParams& p, double lo, double hi, std::size_t n,
                     const std::string& perturbation, double k) {
    const EquivalenceReport r =
        verify_equivalence(p, make_target(p, perturbation, k), make_grid(lo, hi, n));
    return report::render_equivalence(r);
  }, py::arg("params"), py::arg("psi_min") = 10.0, py::arg("psi_max") = 1000.0, py::arg("n") = 16,
     py::arg("perturbation") = "", py::arg("k") = 0.0,
     "Runs the equivalence check and returns the JSON report text.");

  m.def("to_unified", [](const std::string& theorem, double first, double B, std::optional<double> extra) {
    const UnifiedReduction r = to_unified(spec_from(theorem, first, B, extra));
    return py::make_tuple(r.params, r.classical_coefficient);
  }, py::arg("theorem"), py::arg("first"), py::arg("B"), py::arg("extra") = py::none());

  m.def("classify", [](const UnifiedParams& p) { return spec_dict(classify(p)); });

  m.def("ck_index", [](const std::vector<double>& x, const std::vector<double>& log_u) {
    if (x.size() != log_u.size()) {
      throw Error(ErrorCode::InconsistentInputs, "asymptotics", "x and log_u differ in length");
    }
    std::vector<IndexSample> samples;
    for (std::size_t i = 0; i < x.size(); ++i) samples.push_back(IndexSample{x[i], log_u[i]});
    const CkIndexResult r = ck_index(samples);
    return py::make_tuple(r.tau_final, r.spread_last_quarter);
  }, py::arg("x"), py::arg("log_u"));

  m.def("class_m_consistent", [](const std::vector<double>& x, const std::vector<double>& log_u,
                                 double tau, std::vector<double> epsilons) {
    if (x.size() != log_u.size()) {
      throw Error(ErrorCode::InconsistentInputs, "asymptotics", "x and log_u differ in length");
    }
    std::vector<IndexSample> samples;
    for (std::size_t i = 0; i < x.size(); ++i) samples.push_back(IndexSample{x[i], log_u[i]});
    return class_m_check(samples, tau, epsilons).consistent;
  }, py::arg("x"), py::arg("log_u"), py::arg("tau"),
     py::arg("epsilons") = std::vector<double>{0.1, 0.25});
}
