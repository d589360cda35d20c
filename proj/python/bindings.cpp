#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "bohrlab/domains.hpp"
#include "bohrlab/families.hpp"
#include "bohrlab/functionals.hpp"
#include "bohrlab/harness.hpp"
#include "bohrlab/radius.hpp"
#include "bohrlab/series.hpp"

namespace py = pybind11;
using namespace bohrlab;

namespace {

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json py_to_json(const py::object& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

FunctionalParams make_params(const std::string& theorem, double gamma, std::optional<double> lambda, double beta,
                             int m, std::vector<double> c) {
  FunctionalParams p;
  p.id = parse_functional_id(theorem);
  p.gamma = gamma;
  p.lambda = lambda;
  p.beta = beta;
  p.m = c.empty() ? m : static_cast<int>(c.size());
  p.q_coeffs = std::move(c);
  p.validate();
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bohr-type inequalities on shifted disks";

  py::class_<Certified>(m, "Certified")
      .def_readonly("value", &Certified::value)
      .def_readonly("err", &Certified::err)
      .def("__repr__", [](const Certified& c) {
        return "Certified(value=" + std::to_string(c.value) + ", err=" + std::to_string(c.err) + ")";
      });

  py::class_<PowerSeries>(m, "PowerSeries")
      .def_static("polynomial", &PowerSeries::polynomial)
      .def_static("constant", &PowerSeries::constant)
      .def_property_readonly("order", &PowerSeries::order)
      .def_property_readonly("coeffs",
                             [](const PowerSeries& f) { return std::vector<Complex>(f.coeffs().begin(), f.coeffs().end()); })
      .def_property_readonly("coeff_cap", &PowerSeries::coeff_cap);

  m.def("majorant_sum", &majorant_sum, py::arg("f"), py::arg("r"));
  m.def("area_ratio", &area_ratio, py::arg("f"), py::arg("r"));
  m.def("extremal_fa", [](double a, double gamma, int order) { return extremal_fa({a, gamma}, order); },
        py::arg("a"), py::arg("gamma") = 0.0, py::arg("order") = 256);
  m.def("random_schur_pullback",
        [](std::uint64_t seed, int degree, double gamma, int order) {
          return random_blaschke(seed, degree).pull_back(OmegaGamma(gamma), order);
        },
        py::arg("seed"), py::arg("degree"), py::arg("gamma") = 0.0, py::arg("order") = 256);
  m.def("fournier_ruscheweyh_radius", &fournier_ruscheweyh_radius);

  py::class_<BohrReport>(m, "BohrReport")
      .def_readonly("value", &BohrReport::value)
      .def_readonly("err", &BohrReport::err)
      .def_readonly("r", &BohrReport::r)
      .def_readonly("in_hypothesis", &BohrReport::in_hypothesis)
      .def_property_readonly("functional_id", [](const BohrReport& b) { return std::string(to_string(b.id)); })
      .def_property_readonly("verdict", [](const BohrReport& b) { return std::string(to_string(b.verdict)); })
      .def("csv_row", &to_csv_row)
      .def("to_dict", [](const BohrReport& b) { return json_to_py(to_json(b)); });

  m.def("make_q", [](const std::vector<double>& prefix) { return make_q(prefix).coeffs; }, py::arg("prefix") = std::vector<double>{});
  m.def("make_p", [](double lambda, int deg) { return make_p(lambda, deg).coeffs; });

  m.def("evaluate",
        [](const std::string& theorem, const PowerSeries& f, double r, double gamma, std::optional<double> lambda,
           double beta, int deg, std::vector<double> c) {
          return evaluate(make_params(theorem, gamma, lambda, beta, deg, std::move(c)), f, r);
        },
        py::arg("theorem"), py::arg("f"), py::arg("r"), py::arg("gamma") = 0.0, py::arg("lambda_") = py::none(),
        py::arg("beta") = 0.0, py::arg("m") = 1, py::arg("c") = std::vector<double>{});

  m.def("family_radius",
        [](const std::string& theorem, double gamma, std::optional<double> lambda, double beta, int deg,
           std::vector<double> sweep, double tol) {
          const auto p = make_params(theorem, gamma, lambda, beta, deg, {});
          return family_radius(p, sweep.empty() ? kDefaultSweep : sweep, tol).r_star;
        },
        py::arg("theorem") = "fr", py::arg("gamma") = 0.0, py::arg("lambda_") = py::none(), py::arg("beta") = 0.0,
        py::arg("m") = 1, py::arg("a_sweep") = std::vector<double>{}, py::arg("tol") = 1e-6);

  m.def("sharpness_witness",
        [](const std::string& theorem, double r, double gamma, double beta, int deg) -> py::object {
          const auto w = sharpness_witness(make_params(theorem, gamma, std::nullopt, beta, deg, {}), r);
          if (!w) return py::none();
          return py::make_tuple(w->a, w->report.value);
        },
        py::arg("theorem"), py::arg("r"), py::arg("gamma") = 0.0, py::arg("beta") = 0.0, py::arg("m") = 1);

  m.def("gadget",
        [](const std::string& name, double x, int deg, double lambda, double beta, double gamma, double a,
           double x0, std::vector<double> c) {
          gadgets::Params p{deg, lambda, beta, gamma, a, x0, std::move(c)};
          return gadgets::evaluate(gadgets::parse_name(name), x, p);
        },
        py::arg("name"), py::arg("x"), py::arg("m") = 1, py::arg("lambda_") = 1.0, py::arg("beta") = 0.0,
        py::arg("gamma") = 0.0, py::arg("a") = 0.5, py::arg("x0") = 0.0, py::arg("c") = std::vector<double>{});

  m.def("run_campaign",
        [](const std::string& theorem, int samples, std::uint64_t seed, double gamma, std::optional<double> lambda,
           double beta, int deg, std::vector<double> r, int workers, bool extremal) {
          CampaignConfig cfg;
          cfg.functional = make_params(theorem, gamma, lambda, beta, deg, {});
          cfg.samples = samples;
          cfg.seed = seed;
          cfg.r_points = std::move(r);
          cfg.workers = workers;
          cfg.family = extremal ? SampleFamily::extremal : SampleFamily::random;
          std::vector<std::string> rows;
          CampaignSummary s;
          {
            py::gil_scoped_release release;
            s = run_campaign(cfg, [&](const SampleResult& res) {
              for (const auto& rep : res.reports) rows.push_back(to_csv_row(rep));
            });
          }
          py::dict d;
          d["holds"] = s.holds;
          d["violated"] = s.violated;
          d["inconclusive"] = s.inconclusive;
          d["violated_in_hypothesis"] = s.violated_in_hypothesis;
          d["min_slack"] = s.min_slack;
          d["exit_code"] = s.exit_code();
          d["worst"] = json_to_py(s.worst);
          d["rows"] = rows;
          return d;
        },
        py::arg("theorem"), py::arg("samples") = 100, py::arg("seed") = 0, py::arg("gamma") = 0.0,
        py::arg("lambda_") = py::none(), py::arg("beta") = 0.0, py::arg("m") = 1, py::arg("r") = std::vector<double>{},
        py::arg("workers") = 1, py::arg("extremal") = false);

  m.def("replay", [](const py::object& descriptor) { return replay(py_to_json(descriptor)); });

  m.attr("CSV_HEADER") = std::string(kReportCsvHeader);
}
