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

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vhv/ghz.hpp"
#include "vhv/linalg.hpp"
#include "vhv/rng.hpp"
#include "vhv/vector_model.hpp"

namespace vhv {

// ---------------------------------------------------------------------------
// Elements

/// 50/50 beam splitter: c = (a + b)/sqrt2, d = (a - b)/sqrt2.
inline std::pair<Vec2C, Vec2C> bs_transform(const Vec2C& va, const Vec2C& vb) {
  const double h = std::numbers::sqrt2 / 2;
  return {h * (va + vb), h * (va - vb)};
}

/// Transmitted (x) and reflected (y) parts.
inline std::pair<Vec2C, Vec2C> pbs_split(const Vec2C& v) { return {Vec2C{v.x, 0.0}, Vec2C{0.0, v.y}}; }

inline CMat hwp(double theta) {
  const double c = std::cos(2 * theta), s = std::sin(2 * theta);
  return CMat{{c, s}, {s, -c}};
}

inline CMat qwp(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  const CMat r{{c, -s}, {s, c}};
  const CMat r_inv{{c, s}, {-s, c}};
  return r * CMat{{1.0, 0.0}, {0.0, kI}} * r_inv;
}

inline CMat polarizer(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return CMat{{c * c, c * s}, {c * s, s * s}};
}

struct OpticalElement {
  enum class Kind { BS, PBS, HWP, QWP, POL };
  Kind kind = Kind::BS;
  double theta = 0.0;

  /// Jones matrix of single-port elements; beam splitters have two outputs and no matrix.
  CMat jones() const {
    switch (kind) {
      case Kind::HWP: return hwp(theta);
      case Kind::QWP: return qwp(theta);
      case Kind::POL: return polarizer(theta);
      default: throw std::logic_error("OpticalElement: BS and PBS have no single Jones matrix");
    }
  }
  Vec2C apply(const Vec2C& v) const { return jones().apply(v); }
};

/// Energy in [start, start + length] of a piecewise-constant stream.
inline double window_integral(const HVStream& s, double start, double length) {
  if (!(length >= 0) || !(start >= 0) || start + length > s.duration() * (1 + 1e-12)) {
    throw std::out_of_range("window_integral: window outside the run");
  }
  const double dt = s.dt();
  const double end = std::min(start + length, s.duration());
  double m = 0.0;
  auto i = static_cast<std::size_t>(start / dt);
  for (; i < s.size() && static_cast<double>(i) * dt < end; ++i) {
    const double lo = std::max(start, static_cast<double>(i) * dt);
    const double hi = std::min(end, static_cast<double>(i + 1) * dt);
    if (hi > lo) m += s[i].p * (hi - lo);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Hong-Ou-Mandel

struct HomResult {
  int photons_c = 0;
  int photons_d = 0;
  double m_c = 0.0;
  double m_d = 0.0;
  bool discarded = false;
};

/// Two single photons (field vectors over one window of length det.T) meet
/// at a BS. Both outputs carrying u is the single-photon condition (1, 1);
/// otherwise the larger integral takes both photons.
inline HomResult hom_event(const Vec2C& va, const Vec2C& vb, const ThresholdDetector& det) {
  det.validate();
  const double tol = det.resolution * det.u;
  if (std::abs(va.norm2() * det.T - det.u) > tol || std::abs(vb.norm2() * det.T - det.u) > tol) {
    throw std::invalid_argument("hom_event: each input must carry exactly one photon (m = u)");
  }
  const auto [vc, vd] = bs_transform(va, vb);
  HomResult r;
  r.m_c = vc.norm2() * det.T;
  r.m_d = vd.norm2() * det.T;
  if (std::abs(r.m_c - det.u) <= tol && std::abs(r.m_d - det.u) <= tol) {
    r.photons_c = r.photons_d = 1;
  } else if (r.m_c > r.m_d) {
    r.photons_c = 2;
  } else {
    r.photons_d = 2;
  }
  return r;
}

/// Pair of kind `kind` at (f, g) on the BS inputs. For kinds other than psi-
/// an equal split is a winner-take-all tie and the event is discarded.
inline HomResult hom_outcome(BellKind kind, double f, double g, const ThresholdDetector& det = {}) {
  const auto [fb, gb] = pair_map(kind, f, g);
  HomResult r = hom_event(Vec2C{f, g}, Vec2C{fb, gb}, det);
  if (kind != BellKind::psi_minus && r.photons_c == 1) {
    r.photons_c = r.photons_d = 0;
    r.discarded = true;
  }
  return r;
}

struct HomTable {
  std::uint64_t both_c = 0;   // (2, 0)
  std::uint64_t both_d = 0;   // (0, 2)
  std::uint64_t split = 0;    // (1, 1)
  std::uint64_t discarded = 0;
};

/// Random (f, g) = (cos v, sin v) per trial, unit power.
inline HomTable hom_trials(BellKind kind, std::uint64_t n, std::uint64_t seed, const ThresholdDetector& det = {}) {
  HomTable t;
  const double amp = std::sqrt(det.u / det.T);
  for (std::uint64_t i = 0; i < n; ++i) {
    CounterRng rng(seed, streams::kHomTrial, i);
    const double v = rng.angle();
    const auto r = hom_outcome(kind, amp * std::cos(v), amp * std::sin(v), det);
    if (r.discarded) ++t.discarded;
    else if (r.photons_c == 1) ++t.split;
    else if (r.photons_c == 2) ++t.both_c;
    else ++t.both_d;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Entanglement swapping

struct SwapConfig {
  std::uint64_t n_pairs = 1'000'000;
  double alpha = 0.0;  // analyzer on photon 2
  double beta = 0.0;   // analyzer on photon 3
  ThresholdDetector det{1.0, 1.0, 0.02};
  bool post_select = true;
};

struct SwapResult {
  std::uint64_t n_pairs = 0;
  std::uint64_t n_kept = 0;
  double rate = 0.0;  // mean 2-3 coincidence energy per kept window, units of u
  double rate_std_error = 0.0;
};

/// Two independent psi- pairs (1,2) and (3,4); photons 1 and 4 meet on a BS.
/// Kept windows are those with a (1, 1) split. On them, photon 3 is filtered
/// by e_alpha carried through the window's 2 -> 3 rotation, then by e_beta.
inline SwapResult swap_run(const SwapConfig& cfg, std::uint64_t seed) {
  if (cfg.n_pairs == 0) throw std::invalid_argument("swap_run: n_pairs must be >= 1");
  cfg.det.validate();
  const double amp = std::sqrt(cfg.det.u / cfg.det.T);
  const Vec2C second = e_linear(cfg.beta);
  SwapResult r;
  r.n_pairs = cfg.n_pairs;
  double sum = 0, sq = 0;
  for (std::uint64_t i = 0; i < cfg.n_pairs; ++i) {
    CounterRng rng(seed, streams::kSwapPairs, i);
    const double v = rng.angle();
    const double w = rng.angle();
    const Vec2C v1 = amp * e_linear(v);
    const Vec2C v2 = amp * pair_map(BellKind::psi_minus, e_linear(v));
    const Vec2C v3 = amp * e_linear(w);
    const Vec2C v4 = amp * pair_map(BellKind::psi_minus, e_linear(w));
    if (cfg.post_select && hom_event(v1, v4, cfg.det).photons_c != 1) continue;
    const double rotation = std::atan2(v3.y.real(), v3.x.real()) - std::atan2(v2.y.real(), v2.x.real());
    const double e = coincidence_energy(v3, e_linear(cfg.alpha + rotation), second, cfg.det.T, cfg.det.u);
    sum += e;
    sq += e * e;
    ++r.n_kept;
  }
  if (r.n_kept > 0) {
    const double n = static_cast<double>(r.n_kept);
    r.rate = sum / n;
    r.rate_std_error = std::sqrt(std::max(0.0, sq / n - r.rate * r.rate) / n);
  }
  return r;
}

// ---------------------------------------------------------------------------
// GHZ generation pipeline

enum class PulseReason { kept, no_trigger, tie, not_fourfold };

inline const char* to_string(PulseReason r) {
  switch (r) {
    case PulseReason::kept: return "kept";
    case PulseReason::no_trigger: return "no_trigger";
    case PulseReason::tie: return "tie";
    case PulseReason::not_fourfold: return "not_fourfold";
  }
  return "?";
}

/// Random inputs of one pump pulse.
struct PulseChoices {
  double v_a = 0.0;          // pair a angle; path-a photon (cos, sin), path-b brother is its psi- image
  double v_b = 0.0;          // pair b angle
  bool a_transmit = false;   // BS routing of pair a's path-b photon (true -> D3)
  bool b_transmit = false;   // BS routing of pair b's path-b photon
};

enum Detector { kT = 0, kD1 = 1, kD2 = 2, kD3 = 3 };

struct PulseRouting {
  std::array<double, 4> m{};  // window integrals at T, D1, D2, D3
  PulseReason reason = PulseReason::not_fourfold;
  int route_case = 0;  // 1: Va->D2, Hb->D3, Vb->D1; 2: Hb->D1, Va->D3, Vb->D2; 0 otherwise
};

namespace detail {
// +1 if x carries more energy, -1 if y does, 0 on a tie.
inline int dominant(const Vec2C& v) {
  const double d = std::norm(v.x) - std::norm(v.y);
  if (std::abs(d) <= kTol * v.norm2()) return 0;
  return d > 0 ? 1 : -1;
}
}  // namespace detail

/// Winner-take-all routing of the four photons of one pulse. Each photon
/// carries one u and keeps its HV direction; PBS1 transmits x-dominant
/// photons to T and sends the others through HWP(22.5 deg) to PBS2.
inline PulseRouting route_pulse(const PulseChoices& c, double u = 1.0) {
  PulseRouting r;
  const std::array<double, 2> angles{c.v_a, c.v_b};
  const std::array<bool, 2> transmit{c.a_transmit, c.b_transmit};
  const CMat half_wave = hwp(std::numbers::pi / 8);
  int d3_dominant = 0;
  for (std::size_t k = 0; k < 2; ++k) {
    const Vec2C path_a = e_linear(angles[k]);
    const Vec2C path_b = pair_map(BellKind::psi_minus, path_a);
    const int da = detail::dominant(path_a);
    if (da == 0) {
      r.reason = PulseReason::tie;
      return r;
    }
    if (da > 0) {
      r.m[kT] += u;
    } else {
      const int dh = detail::dominant(half_wave.apply(path_a));
      if (dh == 0) {
        r.reason = PulseReason::tie;
        return r;
      }
      r.m[dh > 0 ? kD2 : kD1] += u;
    }
    if (transmit[k]) {
      r.m[kD3] += u;
      d3_dominant = detail::dominant(path_b);
    } else {
      const int db = detail::dominant(path_b);
      if (db == 0) {
        r.reason = PulseReason::tie;
        return r;
      }
      r.m[db > 0 ? kD1 : kD2] += u;
    }
  }
  if (r.m[kT] < u) {
    r.reason = PulseReason::no_trigger;
  } else if (r.m[kD1] >= u && r.m[kD2] >= u && r.m[kD3] >= u) {
    r.reason = PulseReason::kept;
    r.route_case = d3_dominant > 0 ? 1 : 2;
  }
  return r;
}

/// Combined amplitude of the two fourfold routings on (D1, D2, D3):
/// (V' Va Hb + H' Hb Va)/sqrt2 = (yyx + xxy)/sqrt2.
inline TensorState postselected_amplitude() {
  const double h = std::numbers::sqrt2 / 2;
  return h * (TensorState::basis("yyx") + TensorState::basis("xxy"));
}

/// QWP3: D3 axes rotated by 90 degrees, i.e. x and y exchanged on slot 3.
inline TensorState qwp3_relabel(const TensorState& s) {
  if (s.particles() != 3) throw std::invalid_argument("qwp3_relabel: need a 3-particle state");
  const CMat swap3 = kron(CMat::identity(4), pauli(Pauli::X));
  return TensorState(3, swap3.apply(s.amps()));
}

struct PulseEvent {
  std::uint64_t pulse = 0;
  PulseRouting routing;
  int config = -1;   // GhzConfig index
  int outcome = -1;  // outcome index for kept pulses
};

struct GhzPipelineResult {
  std::uint64_t n_pulses = 0;
  std::uint64_t n_kept = 0;
  std::uint64_t n_no_trigger = 0;
  std::uint64_t n_tie = 0;
  std::uint64_t n_not_fourfold = 0;
  std::array<std::uint64_t, 2> cases{};
  std::array<std::uint64_t, 8> kept_per_config{};
  std::array<std::array<std::uint64_t, 8>, 8> counts{};  // [config][outcome]
  double fourfold_rate = 0.0;
  double fourfold_rate_std_error = 0.0;
};

inline PulseChoices draw_pulse(std::uint64_t seed, std::uint64_t pulse, int& config) {
  CounterRng rng(seed, streams::kGhzPulse, pulse);
  PulseChoices c;
  c.v_a = rng.angle();
  c.v_b = rng.angle();
  c.a_transmit = rng.coin();
  c.b_transmit = rng.coin();
  config = static_cast<int>(rng.next_u64() >> 61);
  return c;
}

/// Runs n_pulses pump pulses with a random analyzer configuration each.
/// Kept pulses carry the relabeled V_GHZ; their triple outcome is the output
/// of a threshold schedule that integrates the projected energies of V_GHZ
/// per (configuration, outcome) and fires the most charged accumulator.
inline GhzPipelineResult ghz_pipeline_run(std::uint64_t n_pulses, const ThresholdDetector& det, std::uint64_t seed,
                                          std::vector<PulseEvent>* log = nullptr) {
  if (n_pulses == 0) throw std::invalid_argument("ghz_pipeline_run: n_pulses must be >= 1");
  det.validate();
  const CountTable table = full_table();
  std::array<std::array<double, 8>, 8> charge{};
  GhzPipelineResult res;
  res.n_pulses = n_pulses;
  for (std::uint64_t p = 0; p < n_pulses; ++p) {
    PulseEvent ev{p, {}, -1, -1};
    const PulseChoices choice = draw_pulse(seed, p, ev.config);
    ev.routing = route_pulse(choice, det.u);
    switch (ev.routing.reason) {
      case PulseReason::no_trigger: ++res.n_no_trigger; break;
      case PulseReason::tie: ++res.n_tie; break;
      case PulseReason::not_fourfold: ++res.n_not_fourfold; break;
      case PulseReason::kept: {
        ++res.n_kept;
        ++res.cases[ev.routing.route_case - 1];
        ++res.kept_per_config[ev.config];
        auto& q = charge[ev.config];
        int best = 0;
        for (int o = 0; o < 8; ++o) {
          q[o] += table.fraction[ev.config][o];
          if (q[o] > q[best]) best = o;
        }
        q[best] -= 1.0;
        ++res.counts[ev.config][best];
        ev.outcome = best;
        break;
      }
    }
    if (log) log->push_back(ev);
  }
  const double n = static_cast<double>(n_pulses);
  res.fourfold_rate = static_cast<double>(res.n_kept) / n;
  res.fourfold_rate_std_error = std::sqrt(res.fourfold_rate * (1 - res.fourfold_rate) / n);
  return res;
}

inline void write_pulse_log_csv(std::ostream& os, const std::vector<PulseEvent>& events, double u = 1.0) {
  os << "pulse,T,D1,D2,D3,m_T,m_D1,m_D2,m_D3,reason,config,outcome\n";
  char buf[160];
  for (const auto& e : events) {
    const auto& m = e.routing.m;
    std::snprintf(buf, sizeof buf, "%llu,%d,%d,%d,%d,%.15g,%.15g,%.15g,%.15g,%s,",
                  static_cast<unsigned long long>(e.pulse), m[kT] >= u, m[kD1] >= u, m[kD2] >= u, m[kD3] >= u, m[kT],
                  m[kD1], m[kD2], m[kD3], to_string(e.routing.reason));
    os << buf << GhzConfig::from_index(e.config).str() << ',';
    if (e.outcome >= 0) {
      const auto s = outcome_signs(e.outcome);
      for (int k = 0; k < 3; ++k) os << (s[k] > 0 ? '+' : '-');
    }
    os << '\n';
  }
}

}  // namespace vhv
