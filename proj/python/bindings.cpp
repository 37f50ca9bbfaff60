// Copyright 2026 The sketchadam Authors. All Rights Reserved.
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
// =============================================================================

#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "sketchadam/commands.hpp"
#include "sketchadam/compressors.hpp"
#include "sketchadam/config.hpp"
#include "sketchadam/errors.hpp"
#include "sketchadam/simulation.hpp"
#include "sketchadam/sketch.hpp"
#include "sketchadam/verify.hpp"

namespace py = pybind11;
using namespace sketchadam;

namespace {

using DenseIn = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::span<const double> as_span(const DenseIn& a) {
  if (a.ndim() != 1) throw ArgumentError("expected a one-dimensional array");
  return {a.data(), static_cast<std::size_t>(a.shape(0))};
}

template <typename T>
py::array_t<T> to_numpy(std::span<const T> v) {
  py::array_t<T> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

template <typename T>
py::array_t<T> to_numpy(const std::vector<T>& v) {
  return to_numpy(std::span<const T>(v));
}

std::vector<std::vector<double>> worker_matrix(const py::sequence& workers) {
  std::vector<std::vector<double>> out;
  out.reserve(py::len(workers));
  for (const auto& w : workers) {
    const DenseIn a = py::cast<DenseIn>(w);
    const auto s = as_span(a);
    out.emplace_back(s.begin(), s.end());
  }
  return out;
}

py::dict trace_columns(const std::vector<TraceRecord>& trace) {
  const std::size_t n = trace.size();
  py::array_t<std::int64_t> iter(n), up(n), down(n);
  py::array_t<double> loss(n), gn(n), rate(n), contraction(n), overlap(n), gap(n);
  for (std::size_t i = 0; i < n; ++i) {
    const TraceRecord& r = trace[i];
    iter.mutable_at(i) = r.iter;
    up.mutable_at(i) = r.upstream_scalars;
    down.mutable_at(i) = r.downstream_scalars;
    loss.mutable_at(i) = r.train_loss;
    gn.mutable_at(i) = r.grad_norm_sq;
    rate.mutable_at(i) = r.compression_rate;
    contraction.mutable_at(i) = r.contraction_ratio;
    overlap.mutable_at(i) = r.topk_overlap;
    gap.mutable_at(i) = r.shadow_gap;
  }
  py::dict d;
  d["iter"] = iter;
  d["train_loss"] = loss;
  d["grad_norm_sq"] = gn;
  d["upstream_scalars"] = up;
  d["downstream_scalars"] = down;
  d["compression_rate"] = rate;
  d["contraction_ratio"] = contraction;
  d["topk_overlap"] = overlap;
  d["shadow_gap"] = gap;
  return d;
}

}  // namespace

PYBIND11_MODULE(_sketchadam, m) {
  m.doc() = "Count Sketch compression and sketched AMSGrad simulation";

  static py::exception<ConfigError> config_error(m, "ConfigError", PyExc_ValueError);
  static py::exception<NumericError> numeric_error(m, "NumericError", PyExc_ArithmeticError);
  static py::exception<InvariantViolation> invariant_error(m, "InvariantViolation",
                                                           PyExc_AssertionError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      py::set_error(config_error, e.what());
    } catch (const NumericError& e) {
      py::set_error(numeric_error, e.what());
    } catch (const InvariantViolation& e) {
      py::set_error(invariant_error, e.what());
    } catch (const ArgumentError& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  // -- sketch ---------------------------------------------------------------
  py::class_<SketchConfig>(m, "SketchConfig")
      .def(py::init([](std::size_t rows, std::size_t cols, std::uint64_t seed, std::size_t dim) {
             SketchConfig c{rows, cols, seed, dim};
             c.validate();
             return c;
           }),
           py::arg("rows"), py::arg("cols"), py::arg("seed"), py::arg("dim"))
      .def_readonly("rows", &SketchConfig::rows)
      .def_readonly("cols", &SketchConfig::cols)
      .def_readonly("seed", &SketchConfig::seed)
      .def_readonly("dim", &SketchConfig::dim)
      .def(py::self == py::self)
      .def("__repr__", [](const SketchConfig& c) {
        return "SketchConfig(rows=" + std::to_string(c.rows) + ", cols=" + std::to_string(c.cols) +
               ", seed=" + std::to_string(c.seed) + ", dim=" + std::to_string(c.dim) + ")";
      });

  m.def("bucket_hash", &bucket_hash, py::arg("config"), py::arg("row"), py::arg("index"));
  m.def("sign_hash", &sign_hash, py::arg("config"), py::arg("row"), py::arg("index"));

  py::class_<CountSketch>(m, "CountSketch")
      .def(py::init<const SketchConfig&>(), py::arg("config"))
      .def_static(
          "from_vector",
          [](const SketchConfig& c, const DenseIn& x) { return sketch_vector(c, as_span(x)); },
          py::arg("config"), py::arg("vector"))
      .def_property_readonly("config", &CountSketch::config)
      .def_property_readonly("table",
                             [](const CountSketch& s) {
                               auto a = to_numpy(s.table());
                               a.resize({s.config().rows, s.config().cols});
                               return a;
                             })
      .def("accumulate", &CountSketch::accumulate, py::arg("index"), py::arg("value"))
      .def("merge", &CountSketch::merge, py::arg("other"), py::return_value_policy::reference)
      .def("scale", &CountSketch::scale, py::arg("factor"), py::return_value_policy::reference)
      .def("estimate", &CountSketch::estimate, py::arg("index"))
      .def("estimate_all", [](const CountSketch& s) { return to_numpy(s.estimate_all()); })
      .def("heavy_candidates", &CountSketch::heavy_candidates, py::arg("m"))
      .def("serialize",
           [](const CountSketch& s) {
             const auto b = s.serialize();
             return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
           })
      .def_static(
          "deserialize",
          [](const py::bytes& data) {
            const std::string s = data;
            return CountSketch::deserialize(
                {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()});
          },
          py::arg("data"))
      .def(py::self == py::self);

  m.def(
      "sketch_vector",
      [](const SketchConfig& c, const DenseIn& x) { return sketch_vector(c, as_span(x)); },
      py::arg("config"), py::arg("vector"));
  m.def("merge", py::overload_cast<const CountSketch&, const CountSketch&>(&merge), py::arg("a"),
        py::arg("b"));
  m.def("scale", py::overload_cast<const CountSketch&, double>(&scale), py::arg("sketch"),
        py::arg("factor"));

  // -- compressors ----------------------------------------------------------
  py::enum_<UnsketchMode>(m, "UnsketchMode")
      .value("ESTIMATE_THEN_SCALE", UnsketchMode::kEstimateThenScale)
      .value("BUCKET_RESCALE", UnsketchMode::kBucketRescale);

  py::class_<SparseUpdate>(m, "SparseUpdate")
      .def_readonly("dim", &SparseUpdate::dim)
      .def_readonly("indices", &SparseUpdate::indices)
      .def_readonly("values", &SparseUpdate::values)
      .def("densify", [](const SparseUpdate& u) { return to_numpy(u.densify()); });

  py::class_<ProtocolConfig>(m, "ProtocolConfig")
      .def(py::init([](std::size_t k, std::size_t p_factor, const SketchConfig& sketch,
                       UnsketchMode mode) {
             ProtocolConfig c;
             c.k = k;
             c.p_factor = p_factor;
             c.sketch = sketch;
             c.unsketch_mode = mode;
             c.validate();
             return c;
           }),
           py::arg("k"), py::arg("p_factor"), py::arg("sketch"),
           py::arg("unsketch_mode") = UnsketchMode::kEstimateThenScale)
      .def_readonly("k", &ProtocolConfig::k)
      .def_readonly("p_factor", &ProtocolConfig::p_factor)
      .def_readonly("sketch", &ProtocolConfig::sketch)
      .def_readonly("unsketch_mode", &ProtocolConfig::unsketch_mode);

  py::class_<AggregationResult>(m, "AggregationResult")
      .def_readonly("global_update", &AggregationResult::global_update)
      .def_readonly("per_worker_updates", &AggregationResult::per_worker_updates)
      .def_readonly("chosen_indices", &AggregationResult::chosen_indices)
      .def_readonly("candidate_indices", &AggregationResult::candidate_indices)
      .def_readonly("upstream_scalars", &AggregationResult::upstream_scalars)
      .def_readonly("downstream_scalars", &AggregationResult::downstream_scalars);

  m.def(
      "top_k", [](const DenseIn& x, std::size_t k) { return top_k(as_span(x), k); },
      py::arg("vector"), py::arg("k"));
  m.def(
      "sign_compress", [](const DenseIn& x) { return to_numpy(sign_compress(as_span(x))); },
      py::arg("vector"));
  m.def(
      "sketched_topk_aggregate",
      [](const py::sequence& workers, const ProtocolConfig& cfg) {
        return sketched_topk_aggregate(worker_matrix(workers), cfg);
      },
      py::arg("worker_vectors"), py::arg("config"));
  m.def(
      "sketched_topk_aggregate_scaled",
      [](const py::sequence& workers, const DenseIn& v_hat, const ProtocolConfig& cfg) {
        return sketched_topk_aggregate_scaled(worker_matrix(workers), as_span(v_hat), cfg);
      },
      py::arg("worker_vectors"), py::arg("v_hat"), py::arg("config"));
  m.def("compression_rate", &compression_rate, py::arg("dim"), py::arg("upstream"),
        py::arg("downstream"));

  // -- simulation and harness -----------------------------------------------
  m.def(
      "run_config",
      [](const std::string& config_json, std::optional<std::uint64_t> seed) {
        ExperimentConfig cfg = parse_config(config_json);
        if (cfg.sweep) throw ConfigError("run_config does not accept a sweep block", "sweep");
        if (seed) cfg.run.seed = *seed;
        RunResult r;
        {
          py::gil_scoped_release release;
          r = run(cfg.run);
        }
        py::dict out;
        out["x"] = to_numpy(r.x);
        out["trace"] = trace_columns(r.trace);
        out["summary"] = py::module_::import("json").attr("loads")(summary_json(cfg.run, r));
        return out;
      },
      py::arg("config_json"), py::arg("seed") = py::none(),
      "Run one experiment from a JSON config string.");
  m.def(
      "resolve_config",
      [](const std::string& config_json) { return serialize_config(parse_config(config_json)); },
      py::arg("config_json"), "Parse, validate and re-serialize a config with defaults filled in.");
  m.def(
      "verify",
      [](const std::string& suite, std::uint64_t seed) {
        std::vector<PropertyResult> results;
        {
          py::gil_scoped_release release;
          results = verify_suite(suite, seed);
        }
        py::list out;
        for (const auto& r : results) {
          py::dict d;
          d["suite"] = r.suite;
          d["name"] = r.name;
          d["passed"] = r.passed;
          d["informational"] = r.informational;
          d["measured"] = r.measured;
          d["bound"] = r.bound;
          d["detail"] = r.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("suite") = "all", py::arg("seed") = 0);
}
