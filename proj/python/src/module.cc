// Copyright 2026 The adtypes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "adtypes/analytic.h"
#include "adtypes/engine.h"
#include "adtypes/fixtures.h"
#include "adtypes/instance_io.h"
#include "adtypes/pricing.h"
#include "cli.h"
#include "json.hpp"

namespace py = pybind11;

namespace adtypes {
namespace {

AuctionInstance ParseInstance(const std::string& text) {
  return InstanceFromJson(nlohmann::json::parse(text));
}

std::string RunAuctionJson(const std::string& instance,
                           const std::vector<double>& bids,
                           const std::string& format) {
  const AuctionOutcome o =
      RunAuction(ParseInstance(instance), BidProfile(bids), ParseFormat(format));
  return OutcomeToJson(o).dump();
}

double OptimalWelfareJson(const std::string& instance) {
  return OptimalWelfare(ParseInstance(instance));
}

py::dict RevenueMc(double delta_a, double delta_b, const std::string& format,
                   std::int64_t samples, std::uint64_t seed) {
  const TwoByTwoSetting setting(delta_a, delta_b);
  const Format f = ParseFormat(format);
  const McEstimate mc = RevenueOracleMc(
      setting, f, EquilibriumStrategyFor(setting, f), samples, seed);
  py::dict d;
  d["mean"] = mc.mean;
  d["std_error"] = mc.std_error;
  d["samples"] = mc.samples;
  return d;
}

py::list PoaRows(double epsilon, double delta_a, int grid) {
  py::list rows;
  for (const PoaRow& r : PoaSuite(epsilon, delta_a, grid)) {
    py::dict d;
    d["format"] = r.format;
    d["fixture"] = r.fixture;
    d["ratio"] = r.ratio;
    d["claimed_ratio"] = r.claimed_ratio;
    d["lower_bound"] = r.lower_bound;
    d["upper_bound"] = r.upper_bound;
    d["max_gain"] = r.max_gain;
    d["ok"] = r.ok;
    rows.append(d);
  }
  return rows;
}

}  // namespace
}  // namespace adtypes

PYBIND11_MODULE(_core, m) {
  m.doc() = "Position auctions with ad types.";
  m.attr("FORMATS") = std::vector<std::string>{"GreedyGSP", "GreedyVCG",
                                               "OptGSP", "OptVCG"};
  m.def("run_auction_json", &adtypes::RunAuctionJson, py::arg("instance"),
        py::arg("bids"), py::arg("format"),
        "Runs one mechanism; instance and result are JSON text.");
  m.def("optimal_welfare_json", &adtypes::OptimalWelfareJson,
        py::arg("instance"));
  m.def(
      "equilibrium_revenue",
      [](double da, double db, const std::string& format) {
        return adtypes::EquilibriumRevenue(adtypes::TwoByTwoSetting(da, db),
                                           adtypes::ParseFormat(format));
      },
      py::arg("delta_a"), py::arg("delta_b"), py::arg("format"));
  m.def("revenue_mc", &adtypes::RevenueMc, py::arg("delta_a"),
        py::arg("delta_b"), py::arg("format"), py::arg("samples") = 100000,
        py::arg("seed") = 1);
  m.def("poa_suite", &adtypes::PoaRows,
        py::arg("epsilon") = adtypes::kReportEpsilon,
        py::arg("delta_a") = 0.001,
        py::arg("grid") = adtypes::kDefaultDeviationGrid);
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        py::gil_scoped_release release;
        return adtypes::cli::RunCli(args);
      },
      py::arg("args"), "Runs the command-line tool and returns its exit code.");
}
