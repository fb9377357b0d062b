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
#include <functional>
#include <numbers>
#include <stdexcept>

#include "vhv/rng.hpp"

namespace vhv {

/// Angular hidden variable carried by both photons of a pair, in [0, pi).
struct LambdaHV {
  double lambda = 0.0;
};

/// Four analyzer settings for a CH/CHSH test.
struct BellAngles {
  double a = 0.0;
  double a_prime = std::numbers::pi / 4;
  double b = std::numbers::pi / 8;
  double b_prime = 3 * std::numbers::pi / 8;
};

inline constexpr BellAngles kStandardBellAngles{};

/// Fold an angle difference into [0, pi/2] using period pi and reflection about pi/2.
inline double fold_angle(double delta) {
  double d = std::fmod(std::abs(delta), std::numbers::pi);
  if (d > std::numbers::pi / 2) d = std::numbers::pi - d;
  return d;
}

/// Quadrant analyzer: +1 (transmitted) iff lambda lies within pi/4 of alpha
/// modulo pi, boundary included.
inline int boolean_outcome(LambdaHV lv, double alpha) {
  constexpr double kBoundarySlack = 1e-12;
  return fold_angle(lv.lambda - alpha) <= std::numbers::pi / 4 + kBoundarySlack ? +1 : -1;
}

/// Saw-tooth coincidence law of the Boolean model: 1/2 - |delta|/pi after folding.
inline double sawtooth_prob(double delta) { return 0.5 - fold_angle(delta) / std::numbers::pi; }

/// Malus-type quantum law for phi+: 1/2 cos^2(delta).
inline double qm_prob(double delta) {
  const double c = std::cos(delta);
  return 0.5 * c * c;
}

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

/// Monte Carlo estimate of P++ for the Boolean model with lambda_A = lambda_B.
/// Sample i draws lambda from the counter RNG at (seed, i), so the estimate
/// does not depend on how the loop is partitioned.
inline McEstimate mc_coincidence(std::uint64_t n, double alpha, double beta, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("mc_coincidence: need at least one sample");
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    CounterRng rng(seed, streams::kBooleanLambda, i);
    const LambdaHV lv{rng.angle()};
    if (boolean_outcome(lv, alpha) == 1 && boolean_outcome(lv, beta) == 1) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {p, std::sqrt(p * (1 - p) / static_cast<double>(n)), n};
}

/// Monte Carlo estimate of the single-station transmission fraction P+(alpha).
inline McEstimate mc_singles(std::uint64_t n, double alpha, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("mc_singles: need at least one sample");
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    CounterRng rng(seed, streams::kBooleanLambda, i);
    if (boolean_outcome({rng.angle()}, alpha) == 1) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {p, std::sqrt(p * (1 - p) / static_cast<double>(n)), n};
}

/// Coincidence probability P++(alpha, beta).
using CoincidenceLaw = std::function<double(double alpha, double beta)>;
/// Single-station transmission probability P+(angle).
using SinglesLaw = std::function<double(double angle)>;

inline CoincidenceLaw sawtooth_law() {
  return [](double a, double b) { return sawtooth_prob(a - b); };
}
inline CoincidenceLaw qm_law() {
  return [](double a, double b) { return qm_prob(a - b); };
}
inline SinglesLaw half_singles() {
  return [](double) { return 0.5; };
}

/// Correlator from P++ alone: E = 4 P++ - 1. Valid when P++ = P-- and both
/// marginals are 1/2, which holds for both laws above.
inline double correlator(double p_pp) { return 4.0 * p_pp - 1.0; }

/// S = E(a,b) - E(a,b') + E(a',b) + E(a',b').
///
/// The (a, b') term is the subtracted one; with the standard angles this
/// maximizes |S| for the quantum law (2 sqrt 2).
inline double chsh_value(const CoincidenceLaw& p, const BellAngles& g) {
  return correlator(p(g.a, g.b)) - correlator(p(g.a, g.b_prime)) + correlator(p(g.a_prime, g.b)) +
         correlator(p(g.a_prime, g.b_prime));
}

/// J = P++(a,b) - P++(a,b') + P++(a',b) + P++(a',b') - P+_A(a') - P+_B(b).
inline double ch_value(const CoincidenceLaw& p, const SinglesLaw& singles, const BellAngles& g) {
  return p(g.a, g.b) - p(g.a, g.b_prime) + p(g.a_prime, g.b) + p(g.a_prime, g.b_prime) -
         singles(g.a_prime) - singles(g.b);
}

struct BooleanBellResult {
  double s = 0.0;
  double s_std_error = 0.0;
  double j = 0.0;
  double j_std_error = 0.0;
  std::uint64_t samples = 0;
};

/// CHSH and CH statistics of the Boolean model, estimated by Monte Carlo.
///
/// All four settings share the same lambda draws. Errors are per-sample
/// standard errors of the combined estimators, not of individual P++ terms.
inline BooleanBellResult mc_bell(std::uint64_t n, const BellAngles& g, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("mc_bell: need at least one sample");
  double s_sum = 0, s_sq = 0, j_sum = 0, j_sq = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    CounterRng rng(seed, streams::kBooleanLambda, i);
    const LambdaHV lv{rng.angle()};
    const int oa = boolean_outcome(lv, g.a), oap = boolean_outcome(lv, g.a_prime);
    const int ob = boolean_outcome(lv, g.b), obp = boolean_outcome(lv, g.b_prime);
    auto pp = [](int x, int y) { return (x == 1 && y == 1) ? 1.0 : 0.0; };
    const double s = correlator(pp(oa, ob)) - correlator(pp(oa, obp)) + correlator(pp(oap, ob)) +
                     correlator(pp(oap, obp));
    const double j = pp(oa, ob) - pp(oa, obp) + pp(oap, ob) + pp(oap, obp) - (oap == 1 ? 1.0 : 0.0) -
                     (ob == 1 ? 1.0 : 0.0);
    s_sum += s;
    s_sq += s * s;
    j_sum += j;
    j_sq += j * j;
  }
  const double nn = static_cast<double>(n);
  const double s_mean = s_sum / nn, j_mean = j_sum / nn;
  auto se = [nn](double sum_sq, double mean) {
    return std::sqrt(std::max(0.0, sum_sq / nn - mean * mean) / nn);
  };
  return {s_mean, se(s_sq, s_mean), j_mean, se(j_sq, j_mean), n};
}

}  // namespace vhv
