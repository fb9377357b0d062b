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
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vhv/linalg.hpp"

namespace vhv {

/// (x x x + y y y)/sqrt2 scaled so that its squared norm equals power_scale.
struct GhzVector {
  TensorState amps;
  double power_scale = 1.0;
};

inline GhzVector make_vghz(double power_scale = 1.0) {
  if (!(power_scale > 0.0) || !std::isfinite(power_scale)) throw std::invalid_argument("make_vghz: power must be > 0");
  const double a = std::sqrt(power_scale / 2.0);
  std::vector<CScalar> amps(8);
  amps[0] = a;
  amps[7] = a;
  return {TensorState(3, std::move(amps)), power_scale};
}

/// Per-station analyzer choice: l (diagonal linear) or r (circular).
struct GhzConfig {
  std::array<char, 3> ops{'l', 'l', 'l'};

  static GhzConfig parse(const std::string& s) {
    if (s.size() != 3) throw std::invalid_argument("GhzConfig: expected three letters, got '" + s + "'");
    GhzConfig c;
    for (std::size_t i = 0; i < 3; ++i) {
      if (s[i] != 'l' && s[i] != 'r') throw std::invalid_argument("GhzConfig: letters must be l or r, got '" + s + "'");
      c.ops[i] = s[i];
    }
    return c;
  }

  /// lll = 0 ... rrr = 7, station 1 most significant, l before r.
  static GhzConfig from_index(int idx) {
    if (idx < 0 || idx > 7) throw std::out_of_range("GhzConfig: index must be in [0, 8)");
    GhzConfig c;
    for (int i = 0; i < 3; ++i) c.ops[i] = ((idx >> (2 - i)) & 1) ? 'r' : 'l';
    return c;
  }

  int index() const { return (ops[0] == 'r') * 4 + (ops[1] == 'r') * 2 + (ops[2] == 'r'); }
  std::string str() const { return std::string(ops.begin(), ops.end()); }
  friend bool operator==(const GhzConfig&, const GhzConfig&) = default;
};

inline std::array<GhzConfig, 8> all_ghz_configs() {
  std::array<GhzConfig, 8> out;
  for (int i = 0; i < 8; ++i) out[i] = GhzConfig::from_index(i);
  return out;
}

/// sigma_l swaps x and y; sigma_r sends x -> i y and y -> -i x.
inline CMat station_operator(char op) {
  if (op == 'l') return pauli(Pauli::X);
  if (op == 'r') return pauli(Pauli::Y);
  throw std::invalid_argument("station_operator: expected l or r");
}

struct ConfigAction {
  TensorState state;
  std::optional<CScalar> eigenvalue;  // empty when the result is not proportional to the input
};

inline ConfigAction apply_config(const GhzConfig& cfg, const TensorState& state) {
  if (state.particles() != 3) throw std::invalid_argument("apply_config: need a 3-particle state");
  const CMat op = kron(kron(station_operator(cfg.ops[0]), station_operator(cfg.ops[1])), station_operator(cfg.ops[2]));
  TensorState out(3, op.apply(state.amps()));
  const double n2 = state.norm2();
  if (n2 == 0.0) return {out, std::nullopt};
  const CScalar lambda = inner(state, out) / n2;
  if (max_abs_diff(out, lambda * state) > kTol * std::max(1.0, std::sqrt(n2))) return {out, std::nullopt};
  // Eigenvalues of products of Pauli operators are +-1 or +-i; snap roundoff.
  return {out, CScalar(std::round(lambda.real()), std::round(lambda.imag()))};
}

enum class GhzBasis { diagonal, circular };

struct BasisTerm {
  std::string labels;  // per station: '+'/'-' (diagonal) or 'R'/'L' (circular)
  CScalar coef;
};

inline Vec2C basis_axis(GhzBasis basis, bool second) {
  if (basis == GhzBasis::diagonal) return second ? e_minus() : e_plus();
  return second ? e_left() : e_right();
}

/// Coefficients of a 3-particle state on all 8 product vectors of the basis.
inline std::vector<BasisTerm> basis_expand(const TensorState& state, GhzBasis basis) {
  if (state.particles() != 3) throw std::invalid_argument("basis_expand: need a 3-particle state");
  const char first = basis == GhzBasis::diagonal ? '+' : 'R';
  const char second = basis == GhzBasis::diagonal ? '-' : 'L';
  std::vector<BasisTerm> out;
  for (int idx = 0; idx < 8; ++idx) {
    std::string labels;
    std::array<TensorState, 3> f{TensorState(), TensorState(), TensorState()};
    for (int i = 0; i < 3; ++i) {
      const bool s = (idx >> (2 - i)) & 1;
      labels += s ? second : first;
      f[i] = TensorState(basis_axis(basis, s));
    }
    out.push_back({labels, inner(tensor({f[0], f[1], f[2]}), state)});
  }
  return out;
}

inline TensorState reconstruct(const std::vector<BasisTerm>& terms, GhzBasis basis) {
  TensorState out = TensorState::zero(3);
  const char second = basis == GhzBasis::diagonal ? '-' : 'L';
  for (const auto& t : terms) {
    if (t.labels.size() != 3) throw std::invalid_argument("reconstruct: labels must have 3 characters");
    out = out + t.coef * tensor({TensorState(basis_axis(basis, t.labels[0] == second)),
                                 TensorState(basis_axis(basis, t.labels[1] == second)),
                                 TensorState(basis_axis(basis, t.labels[2] == second))});
  }
  return out;
}

struct ChainResult {
  TensorState state;
  std::vector<int> slots;  // original labels of the remaining particles, ascending
};

/// Sequential partial projections addressed by original slot labels.
inline ChainResult chain_project(const TensorState& state, const std::vector<std::pair<int, Vec2C>>& steps) {
  ChainResult r{state, {}};
  for (int s = 1; s <= state.particles(); ++s) r.slots.push_back(s);
  for (const auto& [slot, axis] : steps) {
    auto it = std::find(r.slots.begin(), r.slots.end(), slot);
    if (it == r.slots.end()) throw std::invalid_argument("chain_project: slot missing or projected twice");
    r.state = partial_project(r.state, static_cast<int>(it - r.slots.begin()) + 1, axis);
    r.slots.erase(it);
  }
  return r;
}

/// l/+1 -> e+, l/-1 -> e-, r/+1 -> e_R, r/-1 -> e_L.
inline Vec2C outcome_axis(char op, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("outcome_axis: sign must be +1 or -1");
  if (op == 'l') return sign > 0 ? e_plus() : e_minus();
  if (op == 'r') return sign > 0 ? e_right() : e_left();
  throw std::invalid_argument("outcome_axis: expected l or r");
}

/// Outcome triples indexed 0..7: +++ = 0, ++- = 1, ..., --- = 7.
inline std::array<int, 3> outcome_signs(int idx) {
  if (idx < 0 || idx > 7) throw std::out_of_range("outcome_signs: index must be in [0, 8)");
  return {(idx & 4) ? -1 : 1, (idx & 2) ? -1 : 1, (idx & 1) ? -1 : 1};
}

inline int outcome_index(const std::array<int, 3>& s) {
  for (int v : s) {
    if (v != 1 && v != -1) throw std::invalid_argument("outcome_index: signs must be +1 or -1");
  }
  return (s[0] < 0) * 4 + (s[1] < 0) * 2 + (s[2] < 0);
}

/// |<a1 a2 a3 | V_GHZ>|^2 as a fraction of N at unit power.
inline double triple_count_fraction(const GhzConfig& cfg, const std::array<int, 3>& outcome) {
  const auto r = chain_project(make_vghz().amps, {{1, outcome_axis(cfg.ops[0], outcome[0])},
                                                  {2, outcome_axis(cfg.ops[1], outcome[1])},
                                                  {3, outcome_axis(cfg.ops[2], outcome[2])}});
  return std::norm(r.state.scalar());
}

struct CountTable {
  std::array<std::array<double, 8>, 8> fraction{};  // [config index][outcome index]

  double at(const GhzConfig& cfg, const std::array<int, 3>& outcome) const {
    return fraction[cfg.index()][outcome_index(outcome)];
  }
  double config_sum(int cfg) const {
    double s = 0;
    for (double v : fraction.at(cfg)) s += v;
    return s;
  }
};

inline CountTable full_table() {
  CountTable t;
  for (int c = 0; c < 8; ++c) {
    for (int o = 0; o < 8; ++o) t.fraction[c][o] = triple_count_fraction(GhzConfig::from_index(c), outcome_signs(o));
  }
  return t;
}

/// CSV columns: config,i,j,k,fraction (64 rows, 15 significant digits).
inline void write_count_table_csv(std::ostream& os, const CountTable& t) {
  os << "config,i,j,k,fraction\n";
  char buf[64];
  for (int c = 0; c < 8; ++c) {
    for (int o = 0; o < 8; ++o) {
      const auto s = outcome_signs(o);
      std::snprintf(buf, sizeof buf, "%+d,%+d,%+d,%.15g", s[0], s[1], s[2], t.fraction[c][o]);
      os << GhzConfig::from_index(c).str() << ',' << buf << '\n';
    }
  }
}

}  // namespace vhv
