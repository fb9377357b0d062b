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

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vhv/boolean_model.hpp"
#include "vhv/linalg.hpp"
#include "vhv/rng.hpp"

namespace vhv {

/// Relationship between the A and B vectors of a pair.
enum class BellKind { phi_plus, phi_minus, psi_plus, psi_minus };

inline constexpr BellKind kAllBellKinds[] = {BellKind::phi_plus, BellKind::phi_minus,
                                             BellKind::psi_plus, BellKind::psi_minus};

inline const char* to_string(BellKind k) {
  switch (k) {
    case BellKind::phi_plus: return "phi+";
    case BellKind::phi_minus: return "phi-";
    case BellKind::psi_plus: return "psi+";
    case BellKind::psi_minus: return "psi-";
  }
  return "?";
}

inline BellKind parse_bell_kind(const std::string& s) {
  for (BellKind k : kAllBellKinds) {
    if (s == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown Bell kind '" + s + "' (expected phi+, phi-, psi+, psi-)");
}

/// B-vector components for an A-vector (f, g):
///   phi+ -> (f, g), phi- -> (f, -g), psi+ -> (g, f), psi- -> (g, -f).
inline std::pair<double, double> pair_map(BellKind kind, double f, double g) {
  switch (kind) {
    case BellKind::phi_plus: return {f, g};
    case BellKind::phi_minus: return {f, -g};
    case BellKind::psi_plus: return {g, f};
    case BellKind::psi_minus: return {g, -f};
  }
  throw std::invalid_argument("pair_map: unknown kind");
}

inline Vec2C pair_map(BellKind kind, const Vec2C& v) {
  const CScalar& f = v.x;
  const CScalar& g = v.y;
  switch (kind) {
    case BellKind::phi_plus: return {f, g};
    case BellKind::phi_minus: return {f, -g};
    case BellKind::psi_plus: return {g, f};
    case BellKind::psi_minus: return {g, -f};
  }
  throw std::invalid_argument("pair_map: unknown kind");
}

/// Polarization angle of a real vector, folded into [0, pi).
inline double polarization_angle(double f, double g) {
  double v = std::atan2(g, f);
  if (v < 0) v += std::numbers::pi;
  if (v >= std::numbers::pi) v -= std::numbers::pi;
  return v;
}

struct HvInterval {
  double v = 0.0;  // polarization angle in [0, pi)
  double p = 1.0;  // power V^2 >= 0
};

/// Piecewise-constant hidden-variable process V(t) = f(t) e_x + g(t) e_y.
class HVStream {
 public:
  HVStream(double dt, std::vector<HvInterval> intervals) : dt_(dt), intervals_(std::move(intervals)) {
    if (!(dt > 0) || !std::isfinite(dt)) throw std::invalid_argument("HVStream: dt must be positive");
    for (const auto& iv : intervals_) {
      if (!(iv.p >= 0) || !std::isfinite(iv.p)) throw std::invalid_argument("HVStream: power must be >= 0");
      if (!(iv.v >= 0 && iv.v < std::numbers::pi)) throw std::invalid_argument("HVStream: angle outside [0, pi)");
    }
  }

  double dt() const { return dt_; }
  std::size_t size() const { return intervals_.size(); }
  double duration() const { return dt_ * static_cast<double>(intervals_.size()); }
  const HvInterval& operator[](std::size_t i) const { return intervals_[i]; }
  const std::vector<HvInterval>& intervals() const { return intervals_; }

  double f(std::size_t i) const { return std::sqrt(intervals_[i].p) * std::cos(intervals_[i].v); }
  double g(std::size_t i) const { return std::sqrt(intervals_[i].p) * std::sin(intervals_[i].v); }
  Vec2C vec(std::size_t i) const { return {f(i), g(i)}; }

  HVStream prefix(std::size_t count) const {
    if (count > size()) throw std::out_of_range("HVStream::prefix: count exceeds stream length");
    return HVStream(dt_, {intervals_.begin(), intervals_.begin() + static_cast<std::ptrdiff_t>(count)});
  }

 private:
  double dt_;
  std::vector<HvInterval> intervals_;
};

/// Threshold detector: one count per accumulated energy u.
struct ThresholdDetector {
  double u = 1.0;           // threshold, energy units
  double T = 1.0;           // single-photon time resolution
  double resolution = 1e-12;  // relative energy resolution for "equals u" decisions

  void validate() const {
    if (!(u > 0) || !(T > 0)) throw std::invalid_argument("ThresholdDetector: u and T must be positive");
    if (!(resolution >= 0)) throw std::invalid_argument("ThresholdDetector: resolution must be >= 0");
  }
};

/// Unpolarized source: i.i.d. uniform angles, unit power.
inline HVStream gen_unpolarized(std::size_t n_intervals, double dt, std::uint64_t seed) {
  if (n_intervals == 0) throw std::invalid_argument("gen_unpolarized: need at least one interval");
  std::vector<HvInterval> iv(n_intervals);
  for (std::size_t i = 0; i < n_intervals; ++i) {
    CounterRng rng(seed, streams::kHvAngle, i);
    iv[i] = {rng.angle(), 1.0};
  }
  return HVStream(dt, std::move(iv));
}

/// Partner stream related to `a` by `kind`. Overall sign is not representable
/// in (angle, power) form and is dropped; it never enters a squared count.
inline HVStream pair_stream(const HVStream& a, BellKind kind) {
  std::vector<HvInterval> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto [fb, gb] = pair_map(kind, a.f(i), a.g(i));
    out[i] = {polarization_angle(fb, gb), a[i].p};
  }
  return HVStream(a.dt(), std::move(out));
}

inline double count_total(const HVStream& s, const ThresholdDetector& det) {
  det.validate();
  double n = 0.0;
  for (const auto& iv : s.intervals()) n += iv.p * s.dt() / det.u;
  return n;
}

/// Energy (in units of u) an interval delivers behind an analyzer at alpha.
inline double analyzer_energy(const HvInterval& iv, double alpha, double dt, double u) {
  const double c = std::cos(iv.v - alpha);
  return iv.p * (c * c) * dt / u;
}

inline double count_after_analyzer(const HVStream& s, double alpha, const ThresholdDetector& det) {
  det.validate();
  double n = 0.0;
  for (const auto& iv : s.intervals()) n += analyzer_energy(iv, alpha, s.dt(), det.u);
  return n;
}

/// Axis in B-space that corresponds to the A analyzer at alpha.
inline Vec2C partner_axis(BellKind kind, double alpha) { return pair_map(kind, e_linear(alpha)); }

/// Energy (in units of u) of the doubly filtered component for one interval:
/// the B vector projected on the partner image of e_alpha, then on e_beta.
inline double coincidence_energy(const Vec2C& vb, const Vec2C& first_axis, const Vec2C& second_axis,
                                 double dt, double u) {
  return project(second_axis, project(first_axis, vb)).norm2() * dt / u;
}

/// N++ for a pair source with A stream `a` related to B by `kind`.
inline double coincidences(const HVStream& a, BellKind kind, double alpha, double beta,
                           const ThresholdDetector& det) {
  det.validate();
  const HVStream b = pair_stream(a, kind);
  const Vec2C first = partner_axis(kind, alpha);
  const Vec2C second = e_linear(beta);
  double n = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) n += coincidence_energy(b.vec(i), first, second, b.dt(), det.u);
  return n;
}

/// How two analyzers filter the shared hidden variable.
enum class FilterRule {
  projection,    // vector model: double projection
  intersection,  // Boolean model: set intersection on the interval angles
};

struct SourceConfig {
  std::size_t n_intervals = 1'000'000;
  double dt = 1.0;
  BellKind kind = BellKind::phi_plus;
  FilterRule rule = FilterRule::projection;
};

struct VectorBellResult {
  double s = 0.0;
  double s_std_error = 0.0;
  double j = 0.0;
  double j_std_error = 0.0;
  double n_total = 0.0;
  double n_a_prime = 0.0;  // singles at A, setting a'
  double n_b = 0.0;        // singles at B, setting b
  std::array<double, 4> n_pp{};  // (a,b), (a,b'), (a',b), (a',b')
};

/// CHSH and CH statistics from threshold counts on one generated stream.
///
/// Correlators are E = 4 N++/N - 1 with the (a, b') term subtracted. Standard
/// errors use the ratio estimator over independent intervals.
inline VectorBellResult chsh_experiment(const SourceConfig& cfg, const BellAngles& g,
                                        const ThresholdDetector& det, std::uint64_t seed) {
  det.validate();
  const HVStream a = gen_unpolarized(cfg.n_intervals, cfg.dt, seed);
  const HVStream b = pair_stream(a, cfg.kind);
  const std::array<std::pair<double, double>, 4> settings{
      {{g.a, g.b}, {g.a, g.b_prime}, {g.a_prime, g.b}, {g.a_prime, g.b_prime}}};
  constexpr std::array<double, 4> sign{+1, -1, +1, +1};

  std::array<Vec2C, 4> first{}, second{};
  for (std::size_t k = 0; k < 4; ++k) {
    first[k] = partner_axis(cfg.kind, settings[k].first);
    second[k] = e_linear(settings[k].second);
  }

  VectorBellResult r;
  std::vector<double> ys(a.size()), yj(a.size()), w(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double wi = a[i].p * a.dt() / det.u;
    std::array<double, 4> c{};
    double sa = 0, sb = 0;
    if (cfg.rule == FilterRule::projection) {
      const Vec2C vb = b.vec(i);
      for (std::size_t k = 0; k < 4; ++k) c[k] = coincidence_energy(vb, first[k], second[k], a.dt(), det.u);
      sa = analyzer_energy(a[i], g.a_prime, a.dt(), det.u);
      sb = analyzer_energy(b[i], g.b, b.dt(), det.u);
    } else {
      for (std::size_t k = 0; k < 4; ++k) {
        const bool pass = boolean_outcome({a[i].v}, settings[k].first) == 1 &&
                          boolean_outcome({b[i].v}, settings[k].second) == 1;
        c[k] = pass ? wi : 0.0;
      }
      sa = boolean_outcome({a[i].v}, g.a_prime) == 1 ? wi : 0.0;
      sb = boolean_outcome({b[i].v}, g.b) == 1 ? wi : 0.0;
    }
    double cs = 0, cj = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      cs += sign[k] * c[k];
      cj += sign[k] * c[k];
      r.n_pp[k] += c[k];
    }
    r.n_total += wi;
    r.n_a_prime += sa;
    r.n_b += sb;
    w[i] = wi;
    ys[i] = 4.0 * cs - 2.0 * wi;
    yj[i] = cj - sa - sb;
  }

  auto ratio = [&](const std::vector<double>& y, double& value, double& se) {
    double sy = 0;
    for (double v : y) sy += v;
    value = sy / r.n_total;
    double res = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double d = y[i] - value * w[i];
      res += d * d;
    }
    se = std::sqrt(res) / r.n_total;
  };
  ratio(ys, r.s, r.s_std_error);
  ratio(yj, r.j, r.j_std_error);
  return r;
}

/// Detection times at the two output gates of an analyzer at alpha.
struct DetectionSchedule {
  std::vector<double> plus;   // gate at alpha
  std::vector<double> minus;  // gate at alpha + pi/2
};

/// Integrate-and-fire: each gate accumulates its analyzer energy and emits a
/// detection whenever the accumulator reaches the next multiple of u. The
/// schedule at time t depends only on the stream up to t.
inline DetectionSchedule detection_schedule(const HVStream& s, double alpha, const ThresholdDetector& det) {
  det.validate();
  DetectionSchedule out;
  auto fire = [](double& acc, double add, double t0, double dt, std::vector<double>& times) {
    const double before = acc;
    acc += add;
    const double rate = add / dt;
    for (double k = std::floor(before) + 1; k <= acc; k += 1.0) times.push_back(t0 + (k - before) / rate);
  };
  double acc_plus = 0, acc_minus = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double t0 = s.dt() * static_cast<double>(i);
    fire(acc_plus, analyzer_energy(s[i], alpha, s.dt(), det.u), t0, s.dt(), out.plus);
    fire(acc_minus, analyzer_energy(s[i], alpha + std::numbers::pi / 2, s.dt(), det.u), t0, s.dt(), out.minus);
  }
  return out;
}

/// CSV with columns index,v,p; dt and any metadata follow as "# key=value" lines.
inline void write_stream_csv(std::ostream& os, const HVStream& s,
                             const std::map<std::string, std::string>& metadata = {}) {
  char buf[96];
  os << "index,v,p\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i, s[i].v, s[i].p);
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "# dt=%.17g\n", s.dt());
  os << buf;
  for (const auto& [k, v] : metadata) os << "# " << k << '=' << v << '\n';
}

inline HVStream read_stream_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "index,v,p") {
    throw std::runtime_error("read_stream_csv: missing 'index,v,p' header");
  }
  std::vector<HvInterval> iv;
  double dt = -1;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos && line.compare(0, eq, "# dt") == 0) dt = std::stod(line.substr(eq + 1));
      continue;
    }
    std::istringstream row(line);
    std::string idx, v, p;
    if (!std::getline(row, idx, ',') || !std::getline(row, v, ',') || !std::getline(row, p)) {
      throw std::runtime_error("read_stream_csv: malformed row '" + line + "'");
    }
    if (std::stoull(idx) != iv.size()) throw std::runtime_error("read_stream_csv: rows out of order");
    iv.push_back({std::stod(v), std::stod(p)});
  }
  if (dt < 0) throw std::runtime_error("read_stream_csv: missing '# dt=' line");
  return HVStream(dt, std::move(iv));
}

}  // namespace vhv
