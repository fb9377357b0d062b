// Copyright 2026 The vhvlab Authors
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

// vhvlab: command-line runner for the hidden-variable experiments.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vhv/harness.hpp"

namespace {

constexpr int kUsageError = 1;
constexpr int kCheckFailed = 2;

struct Common {
  std::uint64_t seed = 0;
  std::uint64_t n = 0;
  std::vector<double> angles;
  std::string out;
  std::string format = "json";
  bool check = false;
};

void add_common(CLI::App* sub, Common& c, bool sized) {
  sub->add_option("--seed", c.seed, "64-bit seed (required)")->required();
  if (sized) sub->add_option("--n", c.n, "sample size (0 = experiment default)");
  sub->add_option("--out", c.out, "output file (default stdout)");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--check", c.check, "exit with status 2 if an acceptance check fails");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vhvlab: Boolean and vector hidden-variable experiments"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI file; [section] per subcommand, flags override file values");

  vhv::RunSpec spec;
  std::map<std::string, Common> commons;
  std::string rule = "projection";
  std::string demo = "card";

  struct Entry {
    const char* name;
    const char* help;
    bool sized;
  };
  const std::vector<Entry> entries{
      {"bell-boolean", "Boolean HV model: CHSH and CH, analytic and Monte Carlo", true},
      {"bell-vector", "vector HV threshold model: CHSH and CH from a simulated run", true},
      {"sweep-fig3", "saw-tooth vs vector coincidence probability over delta", true},
      {"hom", "Hong-Ou-Mandel outcomes for the four vector-Bell kinds", true},
      {"swap", "entanglement swapping: post-selected 2-3 coincidences over alpha - beta", true},
      {"ks-square", "Pauli square: line products and commutation", false},
      {"ks-rotations", "90 degree rotation square: squared products and in-plane witness", false},
      {"ks-search", "exhaustive +-1 assignment search over the Pauli square", false},
      {"ghz-table", "GHZ triple-coincidence fractions (64 rows)", false},
      {"ghz-instructions", "GHZ eigenvalues and instruction-table search", false},
      {"ghz-pipeline", "GHZ generation by post-selected fourfold coincidences", true},
      {"demos", "small geometric demos: card, plane-rotation, filtering-order", false},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& e : entries) {
    auto* sub = app.add_subcommand(e.name, e.help);
    add_common(sub, commons[e.name], e.sized);
    subs[e.name] = sub;
  }
  for (const char* name : {"bell-boolean", "bell-vector"}) {
    subs[name]->add_option("--angles", commons[name].angles, "a,a',b,b' in radians")->delimiter(',')->expected(4);
  }
  subs["bell-vector"]->add_option("--rule", rule, "joint filter rule")->check(CLI::IsMember({"projection", "intersection"}));
  subs["hom"]->add_option("--kind", spec.bell_kind, "phi+, phi-, psi+, psi- or all");
  subs["swap"]->add_option("--alpha", spec.alpha, "analyzer angle on photon 2");
  subs["swap"]->add_option("--points", spec.points, "grid points over [0, pi/2]");
  subs["swap"]->add_option("--resolution", spec.resolution, "relative energy resolution of the BS detectors");
  subs["sweep-fig3"]->add_option("--step", spec.step, "delta grid step");
  subs["ghz-pipeline"]->add_option("--log", spec.log, "per-pulse event log (CSV)");
  subs["demos"]->add_option("demo", demo, "card | plane-rotation | filtering-order")
      ->check(CLI::IsMember({"card", "plane-rotation", "filtering-order"}));
  subs["demos"]->add_option("--theta", spec.theta, "filtering-order intermediate angle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  spec.experiment = app.get_subcommands().front()->get_name();
  const Common& common = commons.at(spec.experiment);
  spec.seed = common.seed;
  spec.n = common.n;
  spec.demo = demo;
  spec.rule = rule == "projection" ? vhv::FilterRule::projection : vhv::FilterRule::intersection;
  spec.format = common.format == "csv" ? vhv::OutputFormat::csv : vhv::OutputFormat::json;
  if (!common.angles.empty()) spec.angles = {common.angles[0], common.angles[1], common.angles[2], common.angles[3]};

  vhv::ResultRecord record;
  try {
    record = vhv::run(spec);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "vhvlab: %s\n", e.what());
    return kUsageError;
  }

  if (common.out.empty()) {
    vhv::write_record(std::cout, record, spec.format);
  } else {
    std::ofstream f(common.out);
    if (!f) {
      std::fprintf(stderr, "vhvlab: cannot write '%s'\n", common.out.c_str());
      return kUsageError;
    }
    vhv::write_record(f, record, spec.format);
  }
  std::fprintf(stderr, "runtime_s=%.3f\n", record.runtime_s);
  for (const auto& [name, ok] : record.checks.items()) {
    if (!ok.get<bool>()) std::fprintf(stderr, "check failed: %s\n", name.c_str());
  }
  return common.check && !record.all_checks_pass() ? kCheckFailed : 0;
}
