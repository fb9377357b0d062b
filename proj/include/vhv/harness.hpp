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

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "vhv/bell_states.hpp"
#include "vhv/boolean_model.hpp"
#include "vhv/ghz.hpp"
#include "vhv/nogo.hpp"
#include "vhv/optical_bench.hpp"
#include "vhv/vector_model.hpp"

namespace vhv {

enum class OutputFormat { csv, json };

struct RunSpec {
  std::string experiment;
  std::optional<std::uint64_t> seed;
  std::uint64_t n = 0;  // 0 selects the experiment's default size
  BellAngles angles{};
  FilterRule rule = FilterRule::projection;
  std::string bell_kind = "all";  // hom: one kind or all four
  double delta = 0.0;             // single-point experiments: alpha - beta
  double alpha = 0.0;             // swap: analyzer on photon 2
  double resolution = 0.02;       // swap: relative HOM resolution
  int points = 9;                 // swap: grid size over [0, pi/2]
  double step = std::numbers::pi / 32;  // sweep-fig3 grid step
  std::string demo = "card";      // card | plane-rotation | filtering-order
  double theta = std::numbers::pi / 4;
  std::string out;                // empty: stdout
  std::string log;                // ghz-pipeline event log path
  OutputFormat format = OutputFormat::json;
};

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // preformatted cells
};

struct ResultRecord {
  std::string experiment;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json metrics = nlohmann::json::object();
  nlohmann::json std_errors = nlohmann::json::object();
  nlohmann::json checks = nlohmann::json::object();
  std::optional<ResultTable> table;
  double runtime_s = 0.0;  // reported on stderr, never serialized

  bool all_checks_pass() const {
    for (const auto& [k, v] : checks.items()) {
      if (!v.get<bool>()) return false;
    }
    return true;
  }
};

inline std::string fmt15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

/// x rounded to 15 significant digits, so JSON dumps carry at most 15.
inline double r15(double x) { return std::isfinite(x) ? std::strtod(fmt15(x).c_str(), nullptr) : x; }

inline std::string fmt_int(std::uint64_t x) { return std::to_string(x); }

namespace detail {

inline void metric(ResultRecord& r, const std::string& name, double value) { r.metrics[name] = r15(value); }
inline void metric(ResultRecord& r, const std::string& name, double value, double se) {
  r.metrics[name] = r15(value);
  r.std_errors[name] = r15(se);
}

inline std::uint64_t size_or(const RunSpec& s, std::uint64_t fallback) { return s.n ? s.n : fallback; }

inline nlohmann::json angles_json(const BellAngles& g) {
  return {{"a", r15(g.a)}, {"a_prime", r15(g.a_prime)}, {"b", r15(g.b)}, {"b_prime", r15(g.b_prime)}};
}

inline bool within(double x, double target, double sigma, double k = 3.0) { return std::abs(x - target) <= k * sigma; }

inline ResultRecord run_bell_boolean(const RunSpec& s) {
  ResultRecord r;
  const std::uint64_t n = size_or(s, 1'000'000);
  r.parameters = {{"n", n}, {"angles", angles_json(s.angles)}};
  const double s_an = chsh_value(sawtooth_law(), s.angles);
  const double j_an = ch_value(sawtooth_law(), half_singles(), s.angles);
  const auto mc = mc_bell(n, s.angles, *s.seed);
  metric(r, "S_sawtooth", s_an);
  metric(r, "J_sawtooth", j_an);
  metric(r, "S_mc", mc.s, mc.s_std_error);
  metric(r, "J_mc", mc.j, mc.j_std_error);
  metric(r, "S_qm", chsh_value(qm_law(), s.angles));
  metric(r, "J_qm", ch_value(qm_law(), half_singles(), s.angles));
  r.checks["S_sawtooth_is_2"] = std::abs(s_an - 2.0) < 1e-12;
  r.checks["J_sawtooth_is_0"] = std::abs(j_an) < 1e-12;
  r.checks["S_mc_within_3sigma"] = within(mc.s, s_an, mc.s_std_error);
  r.checks["J_mc_within_3sigma"] = within(mc.j, j_an, mc.j_std_error);
  return r;
}

inline ResultRecord run_bell_vector(const RunSpec& s) {
  ResultRecord r;
  SourceConfig cfg;
  cfg.n_intervals = size_or(s, 1'000'000);
  cfg.rule = s.rule;
  r.parameters = {{"n_intervals", cfg.n_intervals},
                  {"rule", s.rule == FilterRule::projection ? "projection" : "intersection"},
                  {"angles", angles_json(s.angles)}};
  const auto v = chsh_experiment(cfg, s.angles, ThresholdDetector{}, *s.seed);
  metric(r, "S", v.s, v.s_std_error);
  metric(r, "J", v.j, v.j_std_error);
  metric(r, "N_total", v.n_total);
  metric(r, "singles_a_prime_fraction", v.n_a_prime / v.n_total);
  metric(r, "singles_b_fraction", v.n_b / v.n_total);
  r.checks["S_in_2.818_2.838"] = v.s >= 2.818 && v.s <= 2.838;
  r.checks["J_in_0.202_0.212"] = v.j >= 0.202 && v.j <= 0.212;
  return r;
}

/// One delta point of the saw-tooth vs vector comparison.
inline ResultRecord run_fig3_point(const RunSpec& s) {
  ResultRecord r;
  const std::uint64_t n = size_or(s, 100'000);
  r.parameters = {{"delta", r15(s.delta)}, {"n", n}};
  metric(r, "p_boolean", sawtooth_prob(s.delta));
  metric(r, "p_vector", qm_prob(s.delta));
  const auto b = mc_coincidence(n, 0.0, s.delta, *s.seed);
  metric(r, "p_boolean_mc", b.value, b.std_error);
  const HVStream a = gen_unpolarized(n, 1.0, *s.seed);
  const Vec2C first = partner_axis(BellKind::phi_plus, 0.0), second = e_linear(s.delta);
  double sum = 0, sq = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double e = coincidence_energy(a.vec(i), first, second, 1.0, 1.0);
    sum += e;
    sq += e * e;
  }
  const double mean = sum / static_cast<double>(n);
  metric(r, "p_vector_mc", mean, std::sqrt(std::max(0.0, sq / n - mean * mean) / n));
  return r;
}

inline ResultRecord run_swap_point(const RunSpec& s) {
  ResultRecord r;
  SwapConfig cfg;
  cfg.n_pairs = size_or(s, 1'000'000);
  cfg.alpha = s.alpha;
  cfg.beta = s.alpha + s.delta;
  cfg.det.resolution = s.resolution;
  r.parameters = {{"n_pairs", cfg.n_pairs}, {"alpha", r15(cfg.alpha)}, {"beta", r15(cfg.beta)},
                  {"resolution", r15(s.resolution)}};
  const auto kept = swap_run(cfg, *s.seed);
  cfg.post_select = false;
  const auto all = swap_run(cfg, *s.seed);
  metric(r, "rate", kept.rate, kept.rate_std_error);
  metric(r, "kept", static_cast<double>(kept.n_kept));
  metric(r, "rate_unconditioned", all.rate, all.rate_std_error);
  return r;
}

}  // namespace detail

inline ResultRecord run(const RunSpec& spec);

/// Sets one named numeric parameter of a RunSpec.
inline void set_param(RunSpec& s, const std::string& name, double value) {
  if (name == "delta") s.delta = value;
  else if (name == "alpha") s.alpha = value;
  else if (name == "resolution") s.resolution = value;
  else if (name == "theta") s.theta = value;
  else if (name == "n") s.n = static_cast<std::uint64_t>(value);
  else throw std::invalid_argument("unknown sweep parameter '" + name + "'");
}

/// Runs `experiment` at each grid value; row = parameter value followed by
/// every metric (and its standard error, if any) in name order.
inline ResultTable sweep(const std::string& experiment, const std::string& param, const std::vector<double>& grid,
                         const RunSpec& spec) {
  if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
  ResultTable t;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    RunSpec s = spec;
    s.experiment = experiment;
    set_param(s, param, grid[i]);
    const ResultRecord r = run(s);
    if (i == 0) {
      t.columns.push_back(param);
      for (const auto& [k, v] : r.metrics.items()) {
        t.columns.push_back(k);
        if (r.std_errors.contains(k)) t.columns.push_back(k + "_se");
      }
    }
    std::vector<std::string> row{fmt15(grid[i])};
    for (const auto& [k, v] : r.metrics.items()) {
      row.push_back(fmt15(v.get<double>()));
      if (r.std_errors.contains(k)) row.push_back(fmt15(r.std_errors[k].get<double>()));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline std::vector<double> fig3_grid(double step) {
  if (!(step > 0)) throw std::invalid_argument("fig3 grid step must be > 0");
  std::vector<double> g;
  const auto count = static_cast<int>(std::llround((std::numbers::pi / 2) / step));
  for (int i = 0; i <= count; ++i) g.push_back(std::min(i * step, std::numbers::pi / 2));
  return g;
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.
inline LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("linear_fit: need >= 2 matched points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LinearFit f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.slope * x[i] + f.intercept);
    ss_res += e * e;
    ss_tot += (y[i] - sy / n) * (y[i] - sy / n);
  }
  f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 0.0;
  return f;
}

namespace detail {

inline ResultRecord run_sweep_fig3(const RunSpec& s) {
  ResultRecord r;
  const auto grid = fig3_grid(s.step);
  r.parameters = {{"step", r15(s.step)}, {"points", grid.size()}, {"n", size_or(s, 100'000)}};
  r.table = sweep("fig3-point", "delta", grid, s);
  bool equal_at_anchors = true, gap = true;
  for (double d : {0.0, std::numbers::pi / 4, std::numbers::pi / 2}) {
    equal_at_anchors = equal_at_anchors && std::abs(sawtooth_prob(d) - qm_prob(d)) < 1e-12;
  }
  for (double d : grid) {
    if (d > 0 && d < std::numbers::pi / 4 - 1e-12) gap = gap && sawtooth_prob(d) < qm_prob(d);
  }
  r.checks["equal_at_0_pi4_pi2"] = equal_at_anchors;
  r.checks["boolean_below_vector_on_open_0_pi4"] = gap;
  return r;
}

inline ResultRecord run_hom(const RunSpec& s) {
  ResultRecord r;
  const std::uint64_t n = size_or(s, 10'000);
  r.parameters = {{"trials", n}, {"kind", s.bell_kind}};
  std::vector<BellKind> kinds;
  if (s.bell_kind == "all") kinds.assign(std::begin(kAllBellKinds), std::end(kAllBellKinds));
  else kinds.push_back(parse_bell_kind(s.bell_kind));
  ResultTable t{{"kind", "both_c", "both_d", "split", "discarded"}, {}};
  bool ok = true;
  for (BellKind k : kinds) {
    const auto h = hom_trials(k, n, *s.seed);
    t.rows.push_back({to_string(k), fmt_int(h.both_c), fmt_int(h.both_d), fmt_int(h.split), fmt_int(h.discarded)});
    ok = ok && (k == BellKind::psi_minus ? h.split == n : h.split == 0);
    if (k == BellKind::phi_plus) ok = ok && h.both_c == n;
  }
  r.table = t;
  r.checks["only_psi_minus_splits"] = ok;
  return r;
}

inline ResultRecord run_swap(const RunSpec& s) {
  ResultRecord r;
  if (s.points < 2) throw std::invalid_argument("swap: need at least 2 grid points");
  std::vector<double> grid;
  for (int i = 0; i < s.points; ++i) grid.push_back(i * (std::numbers::pi / 2) / (s.points - 1));
  r.parameters = {{"n_pairs", size_or(s, 1'000'000)}, {"alpha", r15(s.alpha)}, {"points", s.points},
                  {"resolution", r15(s.resolution)}};
  r.table = sweep("swap-point", "delta", grid, s);
  const auto& cols = r.table->columns;
  auto col = [&](const std::string& name) {
    const auto it = std::find(cols.begin(), cols.end(), name);
    std::vector<double> v;
    for (const auto& row : r.table->rows) v.push_back(std::stod(row[static_cast<std::size_t>(it - cols.begin())]));
    return v;
  };
  const auto rate = col("rate"), kept = col("kept"), flat = col("rate_unconditioned"),
             flat_se = col("rate_unconditioned_se");
  std::vector<double> s2;
  for (double d : grid) s2.push_back(std::sin(d) * std::sin(d));
  const auto fit = linear_fit(s2, rate);
  metric(r, "fit_slope", fit.slope);
  metric(r, "fit_intercept", fit.intercept);
  metric(r, "fit_r2", fit.r2);
  double kept_min = kept.front(), flat_mean = 0;
  for (double k : kept) kept_min = std::min(kept_min, k);
  for (double f : flat) flat_mean += f / static_cast<double>(flat.size());
  bool is_flat = true;
  for (std::size_t i = 0; i < flat.size(); ++i) is_flat = is_flat && within(flat[i], flat_mean, flat_se[i]);
  metric(r, "kept_min", kept_min);
  metric(r, "unconditioned_mean", flat_mean);
  r.checks["r2_above_0.99"] = fit.r2 > 0.99;
  r.checks["kept_at_least_1e4_per_point"] = kept_min >= 1e4;
  r.checks["unconditioned_flat_3sigma"] = is_flat;
  return r;
}

inline ResultRecord run_ks_square(const RunSpec&) {
  ResultRecord r;
  const auto sq = mermin_peres_square();
  const auto t = square_targets(sq);
  for (int k = 0; k < 6; ++k) r.metrics[std::string(line_name(k)) + "_product"] = t[k];
  const auto c = commutation_check(sq);
  r.metrics["commuting_pairs_checked"] = c.pairs_checked;
  r.checks["products_match"] = t == std::array<int, 6>{1, 1, 1, 1, 1, -1};
  r.checks["lines_commute"] = c.lines_commute;
  r.checks["off_grid_pair_anticommutes"] = !commutes(two_qubit(Pauli::Z, Pauli::I), two_qubit(Pauli::X, Pauli::I));
  return r;
}

inline nlohmann::json matrix_json(const CMat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(r15(m(i, j).real()));
    rows.push_back(row);
  }
  return rows;
}

inline ResultRecord run_ks_rotations(const RunSpec&) {
  ResultRecord r;
  const CMat x = rot3(Axis::x), y = rot3(Axis::y), z = rot3(Axis::z);
  const CMat zxy = z * x * y, xzy = x * z * y;
  const CMat expected{{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}};
  const auto w = inplane_witness(1.0, 0.0);
  const auto targets = rotation_targets();
  const auto search = ks_assignment_search(targets);
  r.metrics["xzy_squared"] = matrix_json(xzy * xzy);
  r.metrics["inplane_witness"] = r15(w.value);
  for (int k = 0; k < 6; ++k) r.metrics[std::string(line_name(k)) + "_target"] = targets[k];
  r.metrics["search_best"] = search.best_satisfied;
  r.metrics["search_satisfy_all"] = search.satisfy_all;
  r.checks["xzy_squared_exact"] = xzy * xzy == expected;
  r.checks["zxy_squared_identity"] = zxy * zxy == CMat::identity(3);
  r.checks["inplane_witness_minus_one"] = std::abs(w.value + 1.0) < 1e-12;
  r.checks["no_full_assignment"] = search.satisfy_all == 0;
  return r;
}

inline nlohmann::json table_json(const AssignmentTable& a) { return nlohmann::json(a); }

inline ResultRecord run_ks_search(const RunSpec&) {
  ResultRecord r;
  const auto targets = square_targets(mermin_peres_square());
  const auto s = ks_assignment_search(targets);
  r.metrics["tables"] = s.tables;
  r.metrics["best_satisfied"] = s.best_satisfied;
  r.metrics["satisfy_all"] = s.satisfy_all;
  r.metrics["maximizers"] = s.maximizers.size();
  r.metrics["histogram"] = s.histogram;
  r.metrics["target_parity"] = s.target_parity;
  r.metrics["classical_parity_always_plus"] = s.classical_parity_always_plus;
  r.metrics["first_witness"] = table_json(s.maximizers.front());
  r.checks["best_is_5"] = s.best_satisfied == 5;
  r.checks["zero_full_solutions"] = s.satisfy_all == 0;
  r.checks["histogram_total_512"] = s.tables == 512;
  return r;
}

inline ResultRecord run_ghz_table(const RunSpec&) {
  ResultRecord r;
  const auto t = full_table();
  ResultTable out{{"config", "i", "j", "k", "fraction"}, {}};
  bool sums = true;
  for (int c = 0; c < 8; ++c) {
    for (int o = 0; o < 8; ++o) {
      const auto sg = outcome_signs(o);
      out.rows.push_back({GhzConfig::from_index(c).str(), std::to_string(sg[0]), std::to_string(sg[1]),
                          std::to_string(sg[2]), fmt15(t.fraction[c][o])});
    }
    sums = sums && std::abs(t.config_sum(c) - 1.0) < 1e-12;
  }
  r.table = out;
  const double llr = t.at(GhzConfig::parse("llr"), {-1, -1, 1});
  const double rlr0 = t.at(GhzConfig::parse("rlr"), {-1, -1, 1});
  const double rlr4 = t.at(GhzConfig::parse("rlr"), {-1, 1, 1});
  metric(r, "llr_mmp", llr);
  metric(r, "rlr_mmp", rlr0);
  metric(r, "rlr_mpp", rlr4);
  r.checks["config_sums_one"] = sums;
  r.checks["anchors"] = std::abs(llr - 0.125) < 1e-12 && std::abs(rlr0) < 1e-12 && std::abs(rlr4 - 0.25) < 1e-12;
  return r;
}

inline ResultRecord run_ghz_instructions(const RunSpec&) {
  ResultRecord r;
  const auto targets = ghz_qm_targets();
  const auto s = ghz_instruction_search(3, targets);
  const auto s2 = ghz_instruction_search(2, {{"ll", 1}, {"rr", -1}});
  for (const auto& [cfg, t] : targets) r.metrics["eigenvalue_" + cfg] = t;
  r.metrics["best_satisfied"] = s.best_satisfied;
  r.metrics["satisfy_all"] = s.satisfy_all;
  r.metrics["tables"] = s.tables;
  r.metrics["maximizers"] = s.maximizers.size();
  r.metrics["discrepancy_probability"] = r15(s.discrepancy_probability);
  r.metrics["target_product"] = s.target_product;
  r.metrics["classical_product_always_plus"] = s.classical_product_always_plus;
  r.metrics["two_qubit_satisfy_all"] = s2.satisfy_all;
  r.checks["eigenvalues"] = targets.at("lll") == 1 && targets.at("rrl") == -1 && targets.at("rlr") == -1 &&
                            targets.at("lrr") == -1;
  r.checks["best_is_7"] = s.best_satisfied == 7 && s.satisfy_all == 0;
  r.checks["discrepancy_one_eighth"] = s.discrepancy_probability == 0.125;
  r.checks["two_qubit_satisfiable"] = s2.satisfy_all > 0;
  return r;
}

inline ResultRecord run_ghz_pipeline(const RunSpec& s) {
  ResultRecord r;
  const std::uint64_t n = size_or(s, 200'000);
  r.parameters = {{"n_pulses", n}};
  std::vector<PulseEvent> events;
  const auto res = ghz_pipeline_run(n, ThresholdDetector{}, *s.seed, s.log.empty() ? nullptr : &events);
  if (!s.log.empty()) {
    std::ofstream f(s.log);
    if (!f) throw std::runtime_error("cannot write event log '" + s.log + "'");
    write_pulse_log_csv(f, events);
  }
  const auto table = full_table();
  ResultTable t{{"config", "i", "j", "k", "count", "kept", "fraction", "expected", "sigma"}, {}};
  bool ok = true;
  for (int c = 0; c < 8; ++c) {
    const double kc = static_cast<double>(res.kept_per_config[c]);
    for (int o = 0; o < 8; ++o) {
      const auto sg = outcome_signs(o);
      const double p = table.fraction[c][o];
      const double obs = kc > 0 ? static_cast<double>(res.counts[c][o]) / kc : 0.0;
      const double sigma = kc > 0 ? std::sqrt(p * (1 - p) / kc) : 0.0;
      ok = ok && kc > 0 && std::abs(obs - p) <= 3 * sigma + 1e-15;
      t.rows.push_back({GhzConfig::from_index(c).str(), std::to_string(sg[0]), std::to_string(sg[1]),
                        std::to_string(sg[2]), fmt_int(res.counts[c][o]), fmt_int(res.kept_per_config[c]),
                        fmt15(obs), fmt15(p), fmt15(sigma)});
    }
  }
  r.table = t;
  metric(r, "kept", static_cast<double>(res.n_kept));
  metric(r, "fourfold_rate", res.fourfold_rate, res.fourfold_rate_std_error);
  metric(r, "no_trigger", static_cast<double>(res.n_no_trigger));
  metric(r, "tie", static_cast<double>(res.n_tie));
  metric(r, "not_fourfold", static_cast<double>(res.n_not_fourfold));
  metric(r, "case1", static_cast<double>(res.cases[0]));
  metric(r, "case2", static_cast<double>(res.cases[1]));
  r.checks["kept_at_least_1e4"] = res.n_kept >= 10'000;
  r.checks["cells_within_3sigma"] = ok;
  return r;
}

inline nlohmann::json vec3_json(const Vec3& v) { return {r15(v[0]), r15(v[1]), r15(v[2])}; }

inline ResultRecord run_demos(const RunSpec& s) {
  ResultRecord r;
  r.parameters = {{"demo", s.demo}};
  if (s.demo == "card") {
    const auto xz = card_demo({Axis::x, Axis::z}), zx = card_demo({Axis::z, Axis::x});
    const char* axes[] = {"x", "y", "z"};
    for (int k = 0; k < 3; ++k) {
      r.metrics["x_then_z"]["body"][axes[k]] = vec3_json(xz.body_images[k]);
      r.metrics["x_then_z"]["space"][axes[k]] = vec3_json(xz.space_images[k]);
      r.metrics["z_then_x"]["body"][axes[k]] = vec3_json(zx.body_images[k]);
      r.metrics["z_then_x"]["space"][axes[k]] = vec3_json(zx.space_images[k]);
    }
    r.checks["orders_differ"] = !(xz.body == zx.body);
  } else if (s.demo == "plane-rotation") {
    const auto p = plane_rotation_demo();
    metric(r, "three_pi", p.three_pi);
    metric(r, "mixed", p.mixed);
    metric(r, "one_pi", p.one_pi);
    r.checks["values"] = std::abs(p.three_pi + 1) < 1e-12 && std::abs(p.mixed) < 1e-12 && std::abs(p.one_pi - 1) < 1e-12;
  } else if (s.demo == "filtering-order") {
    r.parameters["theta"] = r15(s.theta);
    const auto f = filtering_order_demo(s.theta);
    metric(r, "sc_overlap", f.sc_overlap);
    metric(r, "sbc_overlap", f.sbc_overlap);
    r.checks["sbc_is_cos_sin"] = std::abs(f.sbc_overlap - std::cos(s.theta) * std::sin(s.theta)) < 1e-12;
  } else {
    throw std::invalid_argument("unknown demo '" + s.demo + "'");
  }
  return r;
}

}  // namespace detail

inline const std::map<std::string, std::function<ResultRecord(const RunSpec&)>>& experiments() {
  static const std::map<std::string, std::function<ResultRecord(const RunSpec&)>> table{
      {"bell-boolean", detail::run_bell_boolean},
      {"bell-vector", detail::run_bell_vector},
      {"fig3-point", detail::run_fig3_point},
      {"sweep-fig3", detail::run_sweep_fig3},
      {"hom", detail::run_hom},
      {"swap-point", detail::run_swap_point},
      {"swap", detail::run_swap},
      {"ks-square", detail::run_ks_square},
      {"ks-rotations", detail::run_ks_rotations},
      {"ks-search", detail::run_ks_search},
      {"ghz-table", detail::run_ghz_table},
      {"ghz-instructions", detail::run_ghz_instructions},
      {"ghz-pipeline", detail::run_ghz_pipeline},
      {"demos", detail::run_demos},
  };
  return table;
}

inline ResultRecord run(const RunSpec& spec) {
  const auto& table = experiments();
  const auto it = table.find(spec.experiment);
  if (it == table.end()) throw std::invalid_argument("unknown experiment '" + spec.experiment + "'");
  if (!spec.seed) throw std::invalid_argument("a seed is required");
  const auto t0 = std::chrono::steady_clock::now();
  ResultRecord r = it->second(spec);
  r.experiment = spec.experiment;
  r.parameters["seed"] = *spec.seed;
  r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline nlohmann::json to_json(const ResultRecord& r) {
  nlohmann::json j{{"experiment", r.experiment},
                   {"parameters", r.parameters},
                   {"metrics", r.metrics},
                   {"std_errors", r.std_errors},
                   {"checks", r.checks}};
  if (r.table) j["table"] = {{"columns", r.table->columns}, {"rows", r.table->rows}};
  return j;
}

inline void write_json(std::ostream& os, const ResultRecord& r) { os << to_json(r).dump(2) << '\n'; }

namespace detail {
inline void flatten(const nlohmann::json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_number_float()) {
    out.emplace_back(prefix, fmt15(j.get<double>()));
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}
}  // namespace detail

/// Table (or metric list) first, then "# key=value" metadata lines.
inline void write_csv(std::ostream& os, const ResultRecord& r) {
  auto join = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  std::vector<std::pair<std::string, std::string>> meta;
  if (r.table) {
    join(r.table->columns);
    for (const auto& row : r.table->rows) join(row);
    detail::flatten(r.metrics, "metric", meta);
    detail::flatten(r.std_errors, "std_error", meta);
  } else {
    os << "metric,value,std_error\n";
    std::vector<std::pair<std::string, std::string>> rows;
    detail::flatten(r.metrics, "", rows);
    for (const auto& [k, v] : rows) {
      std::string se;
      if (r.std_errors.contains(k)) se = fmt15(r.std_errors[k].get<double>());
      const bool quote = v.find(',') != std::string::npos;
      os << k << ',' << (quote ? "\"" : "") << v << (quote ? "\"" : "") << ',' << se << '\n';
    }
  }
  os << "# experiment=" << r.experiment << '\n';
  detail::flatten(r.parameters, "", meta);
  detail::flatten(r.checks, "check", meta);
  for (const auto& [k, v] : meta) os << "# " << k << '=' << v << '\n';
}

inline void write_record(std::ostream& os, const ResultRecord& r, OutputFormat f) {
  if (f == OutputFormat::csv) write_csv(os, r);
  else write_json(os, r);
}

}  // namespace vhv
