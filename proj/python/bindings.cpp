// Copyright 2026 The scenlib Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scenlib/analyze.hpp"
#include "scenlib/cleanse.hpp"
#include "scenlib/density.hpp"
#include "scenlib/enrich.hpp"
#include "scenlib/error.hpp"
#include "scenlib/generate.hpp"
#include "scenlib/ontology.hpp"
#include "scenlib/pipeline.hpp"
#include "scenlib/serialization.hpp"
#include "scenlib/simharness.hpp"
#include "scenlib/store.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
namespace sl = scenlib;
using sl::serialization::json;

namespace
{

sl::ontology::Scenario scenario_from_text(const std::string & text)
{
  return sl::serialization::scenario_from_json(json::parse(text));
}

std::string scenario_to_text(const sl::ontology::Scenario & s)
{
  return sl::serialization::scenario_to_json(s).dump();
}

sl::ontology::ParamValue to_param_value(const py::handle & value)
{
  if (py::isinstance<py::str>(value)) return value.cast<std::string>();
  return value.cast<double>();
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "scenlib native core";

  py::register_exception<sl::Error>(m, "ScenlibError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const json::exception & e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  // Scenarios (JSON text in and out).
  m.def(
    "validate_scenario",
    [](const std::string & text, std::optional<std::string> parent) {
      const auto s = scenario_from_text(text);
      std::vector<std::pair<std::string, std::string>> out;
      std::optional<sl::ontology::Scenario> p;
      if (parent) p = scenario_from_text(*parent);
      for (const auto & v : sl::ontology::validate_scenario(s, p ? &*p : nullptr)) {
        out.emplace_back(v.parameter, v.reason);
      }
      return out;
    },
    py::arg("scenario_json"), py::arg("parent_json") = py::none());
  m.def(
    "concretize",
    [](const std::string & logical, const py::dict & assignment, const std::string & id) {
      std::map<std::string, sl::ontology::ParamValue> values;
      for (const auto & [k, v] : assignment) values.emplace(k.cast<std::string>(), to_param_value(v));
      return scenario_to_text(sl::ontology::concretize(scenario_from_text(logical), values, id));
    },
    py::arg("logical_json"), py::arg("assignment"), py::arg("id") = "");
  m.def(
    "contains",
    [](const std::string & logical, const std::string & concrete) {
      return sl::ontology::contains(scenario_from_text(logical), scenario_from_text(concrete));
    },
    py::arg("logical_json"), py::arg("concrete_json"));

  // Cleaning metric.
  m.def(
    "dl_distance",
    [](const std::vector<int> & a, const std::vector<int> & b) { return sl::cleanse::dl_distance(a, b); },
    py::arg("a"), py::arg("b"));
  m.def(
    "dl_distance_str",
    [](const std::string & a, const std::string & b) { return sl::cleanse::dl_distance(a, b); }, py::arg("a"),
    py::arg("b"));

  // Surrogate safety metrics.
  m.def(
    "ttc", [](double gap, double ego, double lead) { return sl::enrich::ttc({gap, ego, lead}); }, py::arg("gap"),
    py::arg("ego_speed"), py::arg("lead_speed"));
  m.def(
    "thw", [](double gap, double ego, double lead) { return sl::enrich::thw({gap, ego, lead}); }, py::arg("gap"),
    py::arg("ego_speed"), py::arg("lead_speed"));
  m.def(
    "ttb", [](double gap, double ego, double lead, double a_max) { return sl::enrich::ttb({gap, ego, lead}, a_max); },
    py::arg("gap"), py::arg("ego_speed"), py::arg("lead_speed"), py::arg("a_max"));

  // Clustering.
  m.def(
    "kmeans",
    [](const std::vector<std::vector<double>> & rows, std::size_t k, std::uint64_t seed) {
      std::vector<std::string> cols(rows.empty() ? 0 : rows.front().size());
      for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = "c" + std::to_string(i);
      return sl::serialization::cluster_model_to_json(sl::analyze::kmeans({cols, rows}, k, seed)).dump();
    },
    py::arg("rows"), py::arg("k"), py::arg("seed") = 0);
  m.def(
    "gmm_fit",
    [](const std::vector<std::vector<double>> & rows, std::size_t k, std::uint64_t seed) {
      std::vector<std::string> cols(rows.empty() ? 0 : rows.front().size());
      for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = "c" + std::to_string(i);
      return sl::serialization::cluster_model_to_json(sl::analyze::gmm_fit({cols, rows}, k, seed)).dump();
    },
    py::arg("rows"), py::arg("k"), py::arg("seed") = 0);
  m.def(
    "adjusted_rand_index",
    [](const std::vector<std::size_t> & a, const std::vector<std::size_t> & b) {
      return sl::analyze::adjusted_rand_index(a, b);
    },
    py::arg("a"), py::arg("b"));

  // Densities.
  py::class_<sl::density::KdeModel>(m, "KdeModel")
    .def_readonly("samples", &sl::density::KdeModel::samples)
    .def_readonly("h", &sl::density::KdeModel::h)
    .def_property_readonly(
      "kernel", [](const sl::density::KdeModel & k) { return std::string(sl::density::to_string(k.kernel)); })
    .def("eval", &sl::density::kde_eval, py::arg("x"))
    .def("cdf", &sl::density::kde_cdf, py::arg("x"))
    .def("sample", &sl::density::kde_sample, py::arg("count"), py::arg("seed") = 0)
    .def("to_json", [](const sl::density::KdeModel & k) { return sl::serialization::kde_to_json(k).dump(); });
  m.def(
    "kde_fit",
    [](std::vector<double> samples, const std::string & kernel, std::optional<double> h) {
      const auto k = sl::density::kernel_from_string(kernel);
      if (!k) throw sl::Error(sl::ErrorCode::invalid_argument, "unknown kernel '" + kernel + "'");
      return h ? sl::density::kde_fit(std::move(samples), *k, *h) : sl::density::kde_fit(std::move(samples), *k);
    },
    py::arg("samples"), py::arg("kernel") = "gaussian", py::arg("h") = py::none());
  m.def(
    "ks_statistic",
    [](const std::vector<double> & a, const std::vector<double> & b) { return sl::density::ks_statistic(a, b); },
    py::arg("a"), py::arg("b"));

  // Test budgets.
  m.def("z_from_confidence", &sl::generate::z_from_confidence, py::arg("alpha") = 0.05, py::arg("beta") = 0.1);
  m.def(
    "min_tests_naive",
    [](double gamma, double z) { return sl::generate::min_tests_naive(sl::generate::TestBudget(z, gamma)); },
    py::arg("gamma"), py::arg("z"));
  m.def(
    "min_tests_is",
    [](double second_moment, double gamma, double z) {
      return sl::generate::min_tests_is(second_moment, sl::generate::TestBudget(z, gamma));
    },
    py::arg("second_moment"), py::arg("gamma"), py::arg("z"));

  // Simulation.
  m.def(
    "simulate",
    [](double ego_speed_0, double cutin_speed, double cutin_gap_0, double cutin_decel, double road_friction,
       double ttc_trigger, double max_decel, double actuation_delay, double dt, double horizon) {
      const sl::simharness::CutInScenario s{ego_speed_0, cutin_speed, cutin_gap_0, cutin_decel, road_friction};
      const sl::simharness::AebPolicy p{ttc_trigger, max_decel, actuation_delay};
      const auto trace = sl::simharness::simulate(s, p, dt, horizon);
      py::dict out;
      out["collision"] = trace.collision;
      out["min_gap"] = trace.min_gap;
      out["trigger_time"] = trace.trigger_time;
      out["steps"] = trace.steps.size();
      out["kpi"] = sl::serialization::kpi_to_json(sl::simharness::evaluate_kpis(trace)).dump();
      return out;
    },
    py::arg("ego_speed_0"), py::arg("cutin_speed"), py::arg("cutin_gap_0"), py::arg("cutin_decel") = 0.0,
    py::arg("road_friction") = 1.0, py::arg("ttc_trigger") = 1.5, py::arg("max_decel") = 8.0,
    py::arg("actuation_delay") = 0.2, py::arg("dt") = 0.01, py::arg("horizon") = 20.0);

  // Library.
  py::class_<sl::store::Library>(m, "Library")
    .def(py::init<std::filesystem::path>(), py::arg("root"))
    .def_static("open_default", &sl::store::Library::open_default)
    .def("put", [](sl::store::Library & lib, const std::string & text) { return lib.put(scenario_from_text(text)); })
    .def("get", [](const sl::store::Library & lib, const std::string & id) { return scenario_to_text(lib.get(id)); })
    .def(
      "search",
      [](const sl::store::Library & lib, const std::vector<std::string> & tags,
         const std::vector<std::tuple<std::string, double, double>> & ranges, std::optional<std::string> kind) {
        sl::store::Query q;
        for (const auto & t : tags) q.with_tag(t);
        for (const auto & [name, lo, hi] : ranges) q.with_range(name, lo, hi);
        if (kind) {
          const auto k = sl::ontology::kind_from_string(*kind);
          if (!k) throw sl::Error(sl::ErrorCode::invalid_argument, "unknown kind '" + *kind + "'");
          q.with_kind(*k);
        }
        return lib.search(q);
      },
      py::arg("tags") = std::vector<std::string>{},
      py::arg("ranges") = std::vector<std::tuple<std::string, double, double>>{}, py::arg("kind") = py::none())
    .def("ids", &sl::store::Library::ids)
    .def_property_readonly("version", &sl::store::Library::version);

  // Pipeline.
  m.def(
    "run_pipeline",
    [](const std::filesystem::path & config, std::uint64_t seed, const std::filesystem::path & out_dir) {
      return sl::pipeline::run_pipeline(sl::pipeline::load_pipeline_config(config), seed, out_dir).dump();
    },
    py::arg("config"), py::arg("seed"), py::arg("out_dir"));
}
