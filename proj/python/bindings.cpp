// SPDX-License-Identifier: Apache-2.0
//
// iasim: closed-form interference alignment under distributed CSIT
// Copyright (C) 2026 The iasim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Python bindings for the iasim core.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "iasim/channel.hpp"
#include "iasim/errors.hpp"
#include "iasim/ia3.hpp"
#include "iasim/metrics.hpp"
#include "iasim/report.hpp"
#include "iasim/scenario.hpp"
#include "iasim/sweep.hpp"
#include "iasim/validate.hpp"

namespace py = pybind11;
using namespace iasim;

namespace {

using Grid = std::vector<std::vector<CMatrix>>;

Grid to_nested(const LinkGrid& g) {
    Grid out(static_cast<std::size_t>(g.users()));
    for (int i = 0; i < g.users(); ++i)
        for (int k = 0; k < g.users(); ++k)
            out[static_cast<std::size_t>(i)].push_back(g(i, k));
    return out;
}

LinkGrid from_nested(const Grid& nested) {
    const int K = static_cast<int>(nested.size());
    LinkGrid g(K);
    for (int i = 0; i < K; ++i) {
        require(nested[static_cast<std::size_t>(i)].size() == static_cast<std::size_t>(K), ErrorCode::DimensionMismatch,
                "links: expected a K x K nested list");
        for (int k = 0; k < K; ++k)
            g(i, k) = nested[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    }
    return g;
}

Scenario scenario_with(const std::string& text, std::optional<std::uint64_t> seed, std::optional<int> trials) {
    Scenario s = parse_scenario(text);
    if (seed)
        s.seed = *seed;
    if (trials)
        s.trials = *trials;
    return s;
}

py::dict solution_dict(const IaSolution& sol) {
    py::dict d;
    d["precoders"] = std::vector<CMatrix>(sol.precoders.begin(), sol.precoders.end());
    d["filters"] = std::vector<CMatrix>(sol.filters.begin(), sol.filters.end());
    d["cascade_eigs"] = sol.cascade_eigs;
    d["min_eig_gap"] = sol.min_eig_gap;
    d["degenerate"] = sol.degenerate;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Closed-form 3-user MIMO interference alignment with distributed CSIT";

    static py::exception<Error> iasim_error(m, "IasimError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = iasim_error;
            py::object value = exc(std::string(e.what()));
            value.attr("code") = std::string(error_code_name(e.code()));
            PyErr_SetObject(iasim_error.ptr(), value.ptr());
        }
    });

    py::class_<RatePoint>(m, "RatePoint")
        .def_readonly("snr_db", &RatePoint::snr_db)
        .def_readonly("per_user_rate", &RatePoint::per_user_rate)
        .def_readonly("per_user_stderr", &RatePoint::per_user_stderr);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("points", &SweepResult::points)
        .def_readonly("degenerate_fraction", &SweepResult::degenerate_fraction)
        .def_readonly("failed_fraction", &SweepResult::failed_fraction)
        .def_readonly("trials", &SweepResult::trials)
        .def_readonly("draws", &SweepResult::draws)
        .def_readonly("scenario_hash", &SweepResult::scenario_hash)
        .def_property_readonly("dof_slope", [](const SweepResult& r) { return r.dof.per_user_slope; })
        .def("digest", &SweepResult::digest)
        .def("to_csv", [](const SweepResult& r) { return format_csv(r); })
        .def("to_svg", [](const SweepResult& r, const std::string& title) { return render_svg(r, title); },
             py::arg("title") = "Average rate per user");

    m.def("golden_scenario_text", [] { return golden_scenario().to_text(); },
          "Canonical text of the built-in golden scenario.");
    m.def("canonical_scenario_text", [](const std::string& text) { return parse_scenario(text).to_text(); },
          py::arg("text"));

    m.def("run_sweep",
          [](const std::string& text, std::optional<std::uint64_t> seed, std::optional<int> trials) {
              const Scenario s = scenario_with(text, seed, trials);
              py::gil_scoped_release release;
              return run_sweep(s);
          },
          py::arg("scenario_text"), py::arg("seed") = py::none(), py::arg("trials") = py::none());

    m.def("prop2_experiment",
          [](const std::array<double, 3>& beta, const std::string& text, std::optional<std::uint64_t> seed,
             std::optional<int> trials) {
              Scenario s = scenario_with(text, seed, trials);
              s.csit.reset();
              py::gil_scoped_release release;
              return prop2_experiment(beta, s);
          },
          py::arg("beta"), py::arg("scenario_text"), py::arg("seed") = py::none(), py::arg("trials") = py::none());

    m.def("quantizer_study",
          [](int N, int M, const std::vector<int>& bits, int trials, std::uint64_t seed) {
              QuantizerStudy q;
              {
                  py::gil_scoped_release release;
                  q = quantizer_study(N, M, bits, trials, seed);
              }
              py::dict d;
              std::vector<double> mean, se;
              for (const auto& r : q.rows) {
                  mean.push_back(r.distortion_sq.mean);
                  se.push_back(r.distortion_sq.std_error);
              }
              d["bits"] = bits;
              d["mean_distortion_sq"] = mean;
              d["stderr"] = se;
              d["exponent"] = q.exponent;
              d["r2"] = q.r2;
              return d;
          },
          py::arg("N"), py::arg("M"), py::arg("bits"), py::arg("trials"), py::arg("seed") = 20130601);

    m.def("generate_channel",
          [](int users, int antennas, int streams, std::uint64_t seed, std::uint64_t trial) {
              return to_nested(channel::generate_channel(Dims::square(users, antennas, streams), seed, trial).links);
          },
          py::arg("users") = 3, py::arg("antennas") = 4, py::arg("streams") = 2, py::arg("seed") = 1,
          py::arg("trial") = 0, "Nested list links[i][k]: TX k -> RX i.");

    m.def("solve_links", [](const Grid& links, int d) { return solution_dict(ia3::solve_links(from_nested(links), d)); },
          py::arg("links"), py::arg("d"));

    m.def("leakage",
          [](const Grid& links, const std::vector<CMatrix>& precoders, const std::vector<CMatrix>& filters) {
              return metrics::leakage(from_nested(links), precoders, filters);
          },
          py::arg("links"), py::arg("precoders"), py::arg("filters"));

    m.def("chordal_distance", &numkit::chordal_distance, py::arg("a"), py::arg("b"));

    m.def("validate",
          [](std::uint64_t seed, int trials) {
              ValidationOptions opts{seed, trials};
              ValidationReport report;
              {
                  py::gil_scoped_release release;
                  report = run_validation(opts);
              }
              py::list out;
              for (const auto& c : report.checks) {
                  py::dict d;
                  d["module"] = c.module;
                  d["check"] = c.name;
                  d["passed"] = c.passed;
                  d["detail"] = c.detail;
                  d["seconds"] = c.seconds;
                  out.append(d);
              }
              return out;
          },
          py::arg("seed") = 20130601, py::arg("trials") = 0);
}
