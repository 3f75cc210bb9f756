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

#include "cli.h"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "adtypes/analytic.h"
#include "adtypes/datasets.h"
#include "adtypes/engine.h"
#include "adtypes/experiments.h"
#include "adtypes/fixtures.h"
#include "adtypes/instance_io.h"
#include "adtypes/model.h"
#include "adtypes/parallel.h"
#include "adtypes/pricing.h"
#include "json.hpp"

namespace adtypes::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Context {
  std::uint64_t seed = 0;
  bool seed_generated = false;
  fs::path out;
  std::string command;
  std::vector<std::string> outputs;
  json checks = json::object();
};

void WriteFile(Context& ctx, const std::string& name,
               const std::string& content) {
  std::ofstream f(ctx.out / name, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + (ctx.out / name).string());
  f << content;
  ctx.outputs.push_back(name);
}

std::string Csv(const std::function<void(std::ostream&)>& write) {
  std::ostringstream ss;
  write(ss);
  return ss.str();
}

void WriteSummary(const Context& ctx, bool ok, const std::string& error) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = ctx.command;
  doc["seed"] = ctx.seed;
  doc["seed_generated"] = ctx.seed_generated;
  doc["ok"] = ok;
  doc["outputs"] = ctx.outputs;
  doc["checks"] = ctx.checks;
  if (!error.empty()) doc["error"] = error;
  std::ofstream f(ctx.out / "summary.json", std::ios::binary);
  f << DumpJson(doc);
}

const char* Bool(bool b) { return b ? "1" : "0"; }

// auction run ---------------------------------------------------------------

struct AuctionOptions {
  std::string instance;
  std::vector<double> bids;
  std::vector<std::string> formats;
};

bool RunAuctionCommand(Context& ctx, const AuctionOptions& opt) {
  const json doc = LoadJsonFile(opt.instance);
  const AuctionInstance inst = InstanceFromJson(doc);
  std::vector<double> bids = opt.bids;
  if (bids.empty() && doc.contains("bids")) {
    bids = doc.at("bids").get<std::vector<double>>();
  }
  if (bids.empty()) bids = inst.values();
  const BidProfile profile(bids);
  CheckProfileFits(inst, profile);
  std::vector<Format> formats;
  if (opt.formats.empty()) {
    formats.assign(kAllFormats.begin(), kAllFormats.end());
  } else {
    for (const std::string& f : opt.formats) formats.push_back(ParseFormat(f));
  }
  json results = json::array();
  bool ok = true;
  std::ostringstream csv;
  csv << "format,revenue,true_welfare,apparent_welfare,no_overcharge\n";
  for (Format f : formats) {
    const AuctionOutcome o = RunAuction(inst, profile, f);
    ValidateAssignment(inst, o.assignment);
    const OverchargeCertificate cert = CertifyNoOvercharge(inst, profile, f);
    json r = OutcomeToJson(o);
    r["format"] = FormatName(f);
    r["no_overcharge"] = cert.ok;
    ok = ok && cert.ok;
    results.push_back(std::move(r));
    csv << FormatName(f) << ',' << FormatDouble(o.revenue) << ','
        << FormatDouble(o.true_welfare) << ','
        << FormatDouble(o.apparent_welfare) << ',' << Bool(cert.ok) << '\n';
  }
  json out;
  out["schema_version"] = kSchemaVersion;
  out["instance"] = InstanceToJson(inst);
  out["bids"] = bids;
  out["optimal_welfare"] = OptimalWelfare(inst);
  out["results"] = std::move(results);
  WriteFile(ctx, "auction.json", DumpJson(out));
  WriteFile(ctx, "auction.csv", csv.str());
  ctx.checks["no_overcharge"] = ok;
  return ok;
}

// equilibrium ---------------------------------------------------------------

struct EquilibriumOptions {
  std::optional<double> delta_a;
  std::optional<double> delta_b;
  bool sweep = false;
  std::int64_t samples = 200000;
  double z_limit = 4.0;
};

bool RunEquilibriumCommand(Context& ctx, const EquilibriumOptions& opt) {
  std::vector<std::pair<double, double>> pairs;
  if (opt.delta_a || opt.delta_b) {
    if (!opt.delta_a || !opt.delta_b) {
      throw std::invalid_argument("--delta-a and --delta-b go together");
    }
    pairs.emplace_back(*opt.delta_a, *opt.delta_b);
  }
  if (opt.sweep) {
    const auto grid = ReferenceDiscountGrid();
    pairs.insert(pairs.end(), grid.begin(), grid.end());
  }
  if (pairs.empty()) {
    throw std::invalid_argument("give --delta-a/--delta-b or --sweep");
  }
  if (opt.samples < 2) throw std::invalid_argument("--samples must be >= 2");
  std::ostringstream eq;
  eq << "delta_a,delta_b,format,slope_a,slope_b,revenue,mc_mean,"
        "mc_std_error,z,within\n";
  std::ostringstream hier;
  hier << "delta_a,delta_b,GreedyGSP,GreedyVCG,OptGSP,OptVCG,gap,"
          "equalities_hold,ok\n";
  bool mc_ok = true;
  bool hierarchy_ok = true;
  std::uint64_t stream = 0;
  for (const auto& [da, db] : pairs) {
    const TwoByTwoSetting setting(da, db);
    for (Format f : kAllFormats) {
      const EquilibriumStrategy s = EquilibriumStrategyFor(setting, f);
      const double closed = EquilibriumRevenue(setting, f);
      const McEstimate mc = RevenueOracleMc(setting, f, s, opt.samples,
                                            DeriveSeed(ctx.seed, stream++));
      const double z =
          mc.std_error > 0.0 ? (mc.mean - closed) / mc.std_error : 0.0;
      const bool within = std::abs(z) <= opt.z_limit ||
                          std::abs(mc.mean - closed) <= 1e-12;
      mc_ok = mc_ok && within;
      eq << FormatDouble(da) << ',' << FormatDouble(db) << ',' << FormatName(f)
         << ',' << FormatDouble(s.slope_a) << ',' << FormatDouble(s.slope_b)
         << ',' << FormatDouble(closed) << ',' << FormatDouble(mc.mean) << ','
         << FormatDouble(mc.std_error) << ',' << FormatDouble(z) << ','
         << Bool(within) << '\n';
    }
    const HierarchyReport h = RevenueHierarchy(setting);
    hierarchy_ok = hierarchy_ok && h.ok;
    hier << FormatDouble(da) << ',' << FormatDouble(db);
    for (double r : h.revenue) hier << ',' << FormatDouble(r);
    hier << ',' << FormatDouble(h.gap) << ',' << Bool(h.equalities_hold) << ','
         << Bool(h.ok) << '\n';
  }
  WriteFile(ctx, "equilibrium.csv", eq.str());
  WriteFile(ctx, "hierarchy.csv", hier.str());
  ctx.checks["monte_carlo_within_z_limit"] = mc_ok;
  ctx.checks["revenue_hierarchy"] = hierarchy_ok;
  return mc_ok && hierarchy_ok;
}

// poa -----------------------------------------------------------------------

struct PoaOptions {
  double epsilon = kReportEpsilon;
  double delta_a = 0.001;
  int grid = kDefaultDeviationGrid;
};

json FixtureJson(const NamedInstance& f) {
  json doc = InstanceToJson(f.instance);
  doc["bids"] = f.equilibrium.bids();
  doc["format"] = FormatName(f.format);
  doc["claimed_ratio"] = f.claimed_ratio;
  return doc;
}

bool RunPoaCommand(Context& ctx, const PoaOptions& opt) {
  const std::vector<PoaRow> rows = PoaSuite(opt.epsilon, opt.delta_a, opt.grid);
  std::ostringstream csv;
  csv << "format,fixture,parameter,ratio,claimed_ratio,lower_bound,"
         "upper_bound,max_gain,conservative,nash,within_upper_bound,ok\n";
  bool ok = true;
  for (const PoaRow& r : rows) {
    csv << r.format << ',' << r.fixture << ',' << FormatDouble(r.parameter)
        << ',' << FormatDouble(r.ratio) << ',' << FormatDouble(r.claimed_ratio)
        << ',' << FormatDouble(r.lower_bound) << ','
        << FormatDouble(r.upper_bound) << ',' << FormatDouble(r.max_gain)
        << ',' << Bool(r.conservative) << ',' << Bool(r.nash) << ','
        << Bool(r.within_upper_bound) << ',' << Bool(r.ok) << '\n';
    ok = ok && r.ok;
  }
  WriteFile(ctx, "poa.csv", csv.str());
  WriteFile(ctx, "zero_one.json", DumpJson(FixtureJson(ZeroOneFixture(opt.epsilon))));
  WriteFile(ctx, "three_types.json",
            DumpJson(FixtureJson(ThreeTypesFixture(opt.epsilon))));
  WriteFile(ctx, "opt_gsp_family.json",
            DumpJson(FixtureJson(OptGspFamily(opt.delta_a))));
  ctx.checks["fixtures"] = ok;
  return ok;
}

// learn ---------------------------------------------------------------------

struct LearnOptions {
  std::string experiment;
  std::string preset = "desk";
  std::string dataset;
  std::optional<std::string> mode;
  int threads = 0;
};

bool RunLearnCommand(Context& ctx, const LearnOptions& opt,
                     const std::optional<json>& config_doc) {
  int experiment = 0;
  if (opt.experiment == "exp1") experiment = 1;
  if (opt.experiment == "exp2") experiment = 2;
  if (opt.experiment == "exp3") experiment = 3;
  if (experiment == 0) {
    throw std::invalid_argument("unknown experiment: " + opt.experiment);
  }
  ExperimentConfig config = opt.preset == "full"
                                ? ExperimentConfig::FullScale(experiment)
                                : ExperimentConfig::DeskScale(experiment);
  if (opt.preset != "full" && opt.preset != "desk") {
    throw std::invalid_argument("unknown preset: " + opt.preset);
  }
  if (config_doc) config = ConfigFromJson(*config_doc, config);
  config.seed = ctx.seed;
  if (experiment > 1) {
    if (!config.dataset) config.dataset = DatasetSource{};
    if (!opt.dataset.empty()) config.dataset->path = opt.dataset;
    if (opt.mode) config.dataset->mode = ParseDatasetMode(*opt.mode);
  }
  config.Validate();
  SetParallelism(opt.threads);

  ExperimentReport report;
  if (experiment == 1) {
    report = RunExperiment1(config);
  } else {
    report = RunExperiment23(config, LoadExperimentDataset(config));
  }
  SetParallelism(0);
  WriteFile(ctx, "report.json", DumpJson(ReportToJson(report)));
  if (experiment == 1) {
    WriteFile(ctx, "bid_table.csv",
              Csv([&](std::ostream& o) { WriteBidTableCsv(o, report); }));
  } else {
    WriteFile(ctx, "draws.csv",
              Csv([&](std::ostream& o) { WriteDrawsCsv(o, report); }));
  }
  const std::vector<ExperimentReport> reports = {report};
  const Summary summary = Summarize(reports);
  WriteFile(ctx, "comparison.csv",
            Csv([&](std::ostream& o) { WriteSummaryCsv(o, summary); }));
  WriteFile(ctx, "comparison.json", DumpJson(SummaryToJson(summary)));
  for (const FormatSummary& s : report.formats) {
    ctx.checks[std::string(FormatName(s.format))] = s.ok;
  }
  return report.ok;
}

// dataset -------------------------------------------------------------------

struct DatasetOptions {
  std::string input;
  std::string mode = "independent";
  SynthParams synth;
};

bool RunNormalizeCommand(Context& ctx, const DatasetOptions& opt) {
  const std::vector<BidRecord> raw = ReadBidCsvFile(opt.input);
  const BidDataset ds = ParseDatasetMode(opt.mode) == DatasetMode::kIndependent
                            ? NormalizeAdvertisers(raw)
                            : NormalizeAuctions(raw);
  for (const std::string& w : ds.warnings()) {
    std::cerr << "adtypes: warning: " << w << '\n';
  }
  WriteFile(ctx, "normalized.csv",
            Csv([&](std::ostream& o) { WriteBidCsv(o, ds.records()); }));
  WriteFile(ctx, "normalized.json", DumpJson(ds.Sidecar()));
  bool in_range = true;
  for (const BidRecord& r : ds.records()) {
    in_range = in_range && r.bid >= 0.0 && r.bid <= 1.0;
  }
  ctx.checks["unit_interval"] = in_range;
  return in_range;
}

bool RunSynthCommand(Context& ctx, const DatasetOptions& opt,
                     const std::optional<json>& config_doc) {
  SynthParams p = opt.synth;
  if (config_doc) {
    json merged = SynthParamsToJson(p);
    merged.update(*config_doc);
    p = SynthParamsFromJson(merged);
  }
  const std::vector<BidRecord> raw = SynthGenerate(p, ctx.seed);
  WriteFile(ctx, "raw.csv",
            Csv([&](std::ostream& o) { WriteBidCsv(o, raw); }));
  json meta = {{"schema_version", kSchemaVersion},
               {"seed", ctx.seed},
               {"params", SynthParamsToJson(p)},
               {"records", raw.size()}};
  WriteFile(ctx, "synth.json", DumpJson(meta));
  return true;
}

std::uint64_t GeneratedSeed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace

int RunCli(int argc, const char* const* argv) {
  CLI::App app{"Ad types position auction simulator", "adtypes"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::uint64_t> seed;
  std::string out = "out";
  std::string config_path;
  app.add_option("--seed", seed, "Master seed for all randomness");
  app.add_option("--out", out, "Output directory")->capture_default_str();
  app.add_option("--config", config_path, "JSON config file");

  std::function<bool(Context&, const std::optional<json>&)> action;

  CLI::App* auction = app.add_subcommand("auction", "One-shot mechanism runs");
  auction->require_subcommand(1);
  AuctionOptions auction_opt;
  CLI::App* auction_run =
      auction->add_subcommand("run", "Run mechanisms on an instance file");
  auction_run->add_option("--instance", auction_opt.instance, "Instance JSON")
      ->required();
  auction_run->add_option("--bids", auction_opt.bids, "Comma-separated bids")
      ->delimiter(',');
  auction_run->add_option("--format", auction_opt.formats,
                          "Format name; repeat for several (default all)");
  auction_run->callback([&] {
    action = [&](Context& ctx, const std::optional<json>&) {
      return RunAuctionCommand(ctx, auction_opt);
    };
  });

  EquilibriumOptions eq_opt;
  CLI::App* eq = app.add_subcommand(
      "equilibrium", "Closed-form revenues, simulation check and hierarchy");
  eq->add_option("--delta-a", eq_opt.delta_a, "Second-slot discount of A");
  eq->add_option("--delta-b", eq_opt.delta_b, "Second-slot discount of B");
  eq->add_flag("--sweep", eq_opt.sweep, "Also run the reference grid");
  eq->add_option("--samples", eq_opt.samples, "Simulation samples per format")
      ->capture_default_str();
  eq->add_option("--z-limit", eq_opt.z_limit, "Allowed standard errors")
      ->capture_default_str();
  eq->callback([&] {
    action = [&](Context& ctx, const std::optional<json>&) {
      return RunEquilibriumCommand(ctx, eq_opt);
    };
  });

  PoaOptions poa_opt;
  CLI::App* poa = app.add_subcommand("poa", "Lower-bound fixture suite");
  poa->add_option("--epsilon", poa_opt.epsilon)->capture_default_str();
  poa->add_option("--delta-a", poa_opt.delta_a)->capture_default_str();
  poa->add_option("--grid", poa_opt.grid, "Deviation grid points")
      ->capture_default_str();
  poa->callback([&] {
    action = [&](Context& ctx, const std::optional<json>&) {
      return RunPoaCommand(ctx, poa_opt);
    };
  });

  LearnOptions learn_opt;
  CLI::App* learn = app.add_subcommand("learn", "Learning experiments");
  learn->add_option("experiment", learn_opt.experiment, "exp1, exp2 or exp3")
      ->required()
      ->check(CLI::IsMember({"exp1", "exp2", "exp3"}));
  learn->add_option("--preset", learn_opt.preset, "desk or full")
      ->capture_default_str()
      ->check(CLI::IsMember({"desk", "full"}));
  learn->add_option("--dataset", learn_opt.dataset, "Raw bid CSV");
  learn->add_option("--mode", learn_opt.mode, "independent or correlated");
  learn->add_option("--threads", learn_opt.threads, "Worker threads");
  learn->callback([&] {
    action = [&](Context& ctx, const std::optional<json>& doc) {
      return RunLearnCommand(ctx, learn_opt, doc);
    };
  });

  DatasetOptions ds_opt;
  CLI::App* dataset = app.add_subcommand("dataset", "Bid data tools");
  dataset->require_subcommand(1);
  CLI::App* normalize =
      dataset->add_subcommand("normalize", "Normalize a raw bid CSV");
  normalize->add_option("--input", ds_opt.input, "Raw bid CSV")->required();
  normalize->add_option("--mode", ds_opt.mode, "independent or correlated")
      ->capture_default_str();
  normalize->callback([&] {
    action = [&](Context& ctx, const std::optional<json>&) {
      return RunNormalizeCommand(ctx, ds_opt);
    };
  });
  CLI::App* synth = dataset->add_subcommand("synth", "Generate raw bids");
  synth->add_option("--advertisers", ds_opt.synth.advertisers)
      ->capture_default_str();
  synth->add_option("--auctions", ds_opt.synth.auctions)
      ->capture_default_str();
  synth->add_option("--correlation", ds_opt.synth.auction_correlation)
      ->capture_default_str();
  synth->callback([&] {
    action = [&](Context& ctx, const std::optional<json>& doc) {
      return RunSynthCommand(ctx, ds_opt, doc);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Context ctx;
  ctx.out = out;
  for (const CLI::App* sub = &app; !sub->get_subcommands().empty();) {
    sub = sub->get_subcommands().front();
    ctx.command += (ctx.command.empty() ? "" : " ") + sub->get_name();
  }
  if (learn->parsed()) ctx.command += " " + learn_opt.experiment;
  if (seed) {
    ctx.seed = *seed;
  } else {
    ctx.seed = GeneratedSeed();
    ctx.seed_generated = true;
    std::cerr << "adtypes: generated seed " << ctx.seed << '\n';
  }
  try {
    fs::create_directories(ctx.out);
  } catch (const std::exception& e) {
    std::cerr << "adtypes: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    std::optional<json> doc;
    if (!config_path.empty()) {
      doc = LoadJsonFile(config_path);
      if (!seed && doc->contains("seed")) {
        ctx.seed = doc->at("seed").get<std::uint64_t>();
        ctx.seed_generated = false;
      }
    }
    const bool ok = action(ctx, doc);
    WriteSummary(ctx, ok, "");
    return ok ? kExitOk : kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "adtypes: error: " << e.what() << '\n';
    WriteSummary(ctx, false, e.what());
    return kExitUsage;
  }
}

int RunCli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("adtypes");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return RunCli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace adtypes::cli
