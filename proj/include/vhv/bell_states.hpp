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
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vhv/linalg.hpp"
#include "vhv/rng.hpp"
#include "vhv/vector_model.hpp"

namespace vhv {

/// Classical vector-Bell state: (f e_x + g e_y) tensored with the kind's partner vector.
struct VectorBellState {
  BellKind kind;
  double f;
  double g;
  TensorState amps;
};

inline VectorBellState make_bell(BellKind kind, double f, double g) {
  if (f == 0.0 && g == 0.0) throw std::invalid_argument("make_bell: (f, g) = (0, 0) has no polarization angle");
  const auto [fb, gb] = pair_map(kind, f, g);
  return {kind, f, g, tensor(Vec2C{f, g}, Vec2C{fb, gb})};
}

/// sqrt of the self inner product; equals f^2 + g^2 for every kind.
inline double bell_norm(const VectorBellState& s) { return std::sqrt(inner(s.amps, s.amps).real()); }

inline double bell_inner(const VectorBellState& a, const VectorBellState& b) {
  if (a.f != b.f || a.g != b.g) throw std::invalid_argument("bell_inner: states must share (f, g)");
  return inner(a.amps, b.amps).real();
}

struct Average {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

/// Run average of the inner product of two kinds over (f, g) = (cos v, sin v),
/// v uniform on [0, pi); unit power, so u/T = 1.
inline Average time_avg_inner(BellKind k1, BellKind k2, std::uint64_t n_samples, std::uint64_t seed) {
  if (n_samples == 0) throw std::invalid_argument("time_avg_inner: need at least one sample");
  double sum = 0, sq = 0;
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    CounterRng rng(seed, streams::kBellAverage, i);
    const double v = rng.angle();
    const double x = bell_inner(make_bell(k1, std::cos(v), std::sin(v)), make_bell(k2, std::cos(v), std::sin(v)));
    sum += x;
    sq += x * x;
  }
  const double n = static_cast<double>(n_samples);
  const double mean = sum / n;
  return {mean, std::sqrt(std::max(0.0, sq / n - mean * mean) / n), n_samples};
}

/// Four-particle product-space state over particles (1, 2, 3, 4).
struct FourPhotonState {
  TensorState amps;

  explicit FourPhotonState(TensorState s) : amps(std::move(s)) {
    if (amps.particles() != 4) throw std::invalid_argument("FourPhotonState: need exactly 4 particles");
  }
};

/// Places two-particle states p and q on the given slot pairs of a 4-particle state.
inline TensorState embed_pairs(const TensorState& p, std::array<int, 2> p_slots, const TensorState& q,
                               std::array<int, 2> q_slots) {
  if (p.particles() != 2 || q.particles() != 2) throw std::invalid_argument("embed_pairs: need two-particle states");
  const std::array<int, 4> labels{p_slots[0], p_slots[1], q_slots[0], q_slots[1]};
  std::array<int, 4> order{};
  std::array<bool, 5> seen{};
  for (int pos = 0; pos < 4; ++pos) {
    const int label = labels[pos];
    if (label < 1 || label > 4 || seen[label]) throw std::invalid_argument("embed_pairs: slots must cover 1..4");
    seen[label] = true;
    order[label - 1] = pos + 1;
  }
  return permute_particles(tensor(p, q), order);
}

/// Quantum Bell kets in the x/y basis, normalized.
inline TensorState qm_bell_ket(BellKind kind) {
  const double h = std::numbers::sqrt2 / 2;
  switch (kind) {
    case BellKind::phi_plus: return TensorState(2, {h, 0, 0, h});
    case BellKind::phi_minus: return TensorState(2, {h, 0, 0, -h});
    case BellKind::psi_plus: return TensorState(2, {0, h, h, 0});
    case BellKind::psi_minus: return TensorState(2, {0, h, -h, 0});
  }
  throw std::invalid_argument("qm_bell_ket: unknown kind");
}

/// Term order of the swap expansions: (psi+, psi-, phi+, phi-) on pairs (1,4)(2,3).
inline constexpr std::array<BellKind, 4> kSwapTerms{BellKind::psi_plus, BellKind::psi_minus, BellKind::phi_plus,
                                                    BellKind::phi_minus};
inline constexpr std::array<double, 4> kVectorSwapSigns{+1, -1, +1, +1};
inline constexpr std::array<double, 4> kKetSwapSigns{+1, -1, -1, +1};

/// psi-_12 (x) psi-_34 with both pairs built as vector-Bell states of the same (f, g).
inline TensorState swap_lhs_vector(double f, double g) {
  const auto pair = make_bell(BellKind::psi_minus, f, g).amps;
  return tensor(pair, pair);
}

/// psi-_12 (x) psi-_34 with the photon-4 factor written as -g e_x + f e_y.
/// Differs from swap_lhs_vector by a global sign.
inline TensorState swap_lhs_printed(double f, double g) {
  return tensor({Vec2C{f, g}, Vec2C{g, -f}, Vec2C{f, g}, Vec2C{-g, f}});
}

/// Per-particle factors V1..V4 of each vector swap term, in kSwapTerms order.
inline std::array<std::array<Vec2C, 4>, 4> swap_term_factors(double f, double g) {
  return {{
      {Vec2C{f, g}, Vec2C{g, -f}, Vec2C{-f, g}, Vec2C{g, f}},    // psi+_14 psi+_23
      {Vec2C{f, g}, Vec2C{g, -f}, Vec2C{-f, -g}, Vec2C{g, -f}},  // psi-_14 psi-_23
      {Vec2C{f, g}, Vec2C{g, -f}, Vec2C{g, -f}, Vec2C{f, g}},    // phi+_14 phi+_23
      {Vec2C{f, g}, Vec2C{g, -f}, Vec2C{g, f}, Vec2C{f, -g}},    // phi-_14 phi-_23
  }};
}

/// 1/2 sum_k sign_k term_k of the vector-state swap expansion.
inline TensorState swap_rhs_vector(double f, double g) {
  const auto factors = swap_term_factors(f, g);
  TensorState out = TensorState::zero(4);
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& v = factors[k];
    out = out + (0.5 * kVectorSwapSigns[k]) * tensor({v[0], v[1], v[2], v[3]});
  }
  return out;
}

inline TensorState swap_lhs_ket() {
  return tensor(qm_bell_ket(BellKind::psi_minus), qm_bell_ket(BellKind::psi_minus));
}

inline TensorState swap_rhs_ket() {
  TensorState out = TensorState::zero(4);
  for (std::size_t k = 0; k < 4; ++k) {
    const auto ket = qm_bell_ket(kSwapTerms[k]);
    out = out + (0.5 * kKetSwapSigns[k]) * embed_pairs(ket, {1, 4}, ket, {2, 3});
  }
  return out;
}

struct SwapResidual {
  double vector = 0.0;  // vector-Bell identity, signs (+, -, +, +)
  double ket = 0.0;     // quantum ket identity, signs (+, -, -, +)
};

inline SwapResidual swap_identity_residual(double f, double g) {
  if (f == 0.0 && g == 0.0) throw std::invalid_argument("swap_identity_residual: (f, g) = (0, 0)");
  return {max_abs_diff(swap_lhs_vector(f, g), swap_rhs_vector(f, g)), max_abs_diff(swap_lhs_ket(), swap_rhs_ket())};
}

/// Contracts slots (i, j) of a 4-particle state against a two-particle
/// projector (its first particle on slot i). Returns the remaining two slots
/// in ascending order.
inline TensorState project_bell_pair(const FourPhotonState& state, std::pair<int, int> pair,
                                     const TensorState& projector) {
  const auto [i, j] = pair;
  if (i == j || i < 1 || i > 4 || j < 1 || j > 4) throw std::invalid_argument("project_bell_pair: invalid slot pair");
  if (projector.particles() != 2) throw std::invalid_argument("project_bell_pair: projector must have 2 particles");
  std::array<int, 4> order{i, j, 0, 0};
  int pos = 2;
  for (int s = 1; s <= 4; ++s) {
    if (s != i && s != j) order[pos++] = s;
  }
  const TensorState moved = permute_particles(state.amps, order);
  std::vector<CScalar> out(4);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t ab = 0; ab < 4; ++ab) out[r] += std::conj(projector[ab]) * moved[(ab << 2) | r];
  }
  return TensorState(2, std::move(out));
}

/// Projection onto the normalized instantaneous vector-Bell state of `kind` at (f, g).
inline TensorState project_bell_pair(const FourPhotonState& state, std::pair<int, int> pair, BellKind kind,
                                     double f, double g) {
  const auto b = make_bell(kind, f, g);
  return project_bell_pair(state, pair, (1.0 / bell_norm(b)) * b.amps);
}

}  // namespace vhv
