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
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vhv/ghz.hpp"
#include "vhv/linalg.hpp"

namespace vhv {

// ---------------------------------------------------------------------------
// Operator squares

/// 3x3 grid of two-particle operators. Each cell stores its factor on
/// particle 1 and on particle 2; the full operator is their Kronecker product.
struct OperatorSquare {
  enum class Form { pauli, rotation };
  Form form = Form::pauli;
  std::vector<std::pair<CMat, CMat>> cells;  // row-major, 9 entries
  std::vector<std::string> labels;

  const std::pair<CMat, CMat>& cell(int row, int col) const { return cells.at(static_cast<std::size_t>(row * 3 + col)); }
  CMat full(int row, int col) const { return kron(cell(row, col).first, cell(row, col).second); }
};

inline OperatorSquare mermin_peres_square() {
  using P = Pauli;
  const std::array<std::pair<P, P>, 9> grid{{
      {P::Z, P::I}, {P::I, P::Z}, {P::Z, P::Z},
      {P::I, P::X}, {P::X, P::I}, {P::X, P::X},
      {P::Z, P::X}, {P::X, P::Z}, {P::Y, P::Y},
  }};
  const char* names = "IXYZ";
  OperatorSquare sq;
  sq.form = OperatorSquare::Form::pauli;
  for (const auto& [a, b] : grid) {
    sq.cells.emplace_back(pauli(a), pauli(b));
    sq.labels.push_back(std::string(1, names[static_cast<int>(a)]) + names[static_cast<int>(b)]);
  }
  return sq;
}

inline OperatorSquare rotation_square() {
  const CMat i3 = CMat::identity(3);
  const CMat x = rot3(Axis::x), y = rot3(Axis::y), z = rot3(Axis::z);
  OperatorSquare sq;
  sq.form = OperatorSquare::Form::rotation;
  sq.cells = {{z, i3}, {i3, z}, {z, z}, {i3, x}, {x, i3}, {x, x}, {z, x}, {x, z}, {y, y}};
  sq.labels = {"Rz1", "Rz2", "Rz1.Rz2", "Rx2", "Rx1", "Rx1.Rx2", "Rz1.Rx2", "Rx1.Rz2", "Ry1.Ry2"};
  return sq;
}

/// Line index 0..5: rows 1-3, then columns 1-3.
inline std::array<std::array<int, 3>, 6> square_lines() {
  return {{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6}, {1, 4, 7}, {2, 5, 8}}};
}

inline const char* line_name(int line) {
  static const char* names[] = {"row1", "row2", "row3", "col1", "col2", "col3"};
  return names[line];
}

/// Ordered product of each line (left to right, top to bottom).
inline std::vector<CMat> row_col_products(const OperatorSquare& sq) {
  std::vector<CMat> out;
  for (const auto& line : square_lines()) {
    CMat p1 = sq.cells[line[0]].first, p2 = sq.cells[line[0]].second;
    for (int k = 1; k < 3; ++k) {
      p1 = p1 * sq.cells[line[k]].first;
      p2 = p2 * sq.cells[line[k]].second;
    }
    out.push_back(kron(p1, p2));
  }
  return out;
}

/// (line product)^2 for each line; the observable of the rotation form.
inline std::vector<CMat> squared_products(const OperatorSquare& sq) {
  auto out = row_col_products(sq);
  for (auto& m : out) m = m * m;
  return out;
}

/// +1 for exactly I, -1 for exactly -I; anything else throws.
inline int identity_sign(const CMat& m) {
  const CMat id = CMat::identity(m.dim());
  if (m == id) return 1;
  if (m == -1.0 * id) return -1;
  throw std::domain_error("identity_sign: matrix is not +-I");
}

struct CommutationReport {
  bool lines_commute = true;  // every pair inside every row and column
  int pairs_checked = 0;
};

inline CommutationReport commutation_check(const OperatorSquare& sq) {
  CommutationReport r;
  for (const auto& line : square_lines()) {
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        ++r.pairs_checked;
        const int i = line[a], j = line[b];
        r.lines_commute = r.lines_commute && commutes(sq.full(i / 3, i % 3), sq.full(j / 3, j % 3));
      }
    }
  }
  return r;
}

/// Sign of <w, M w> on w = v (x) v with v = (a, b, 0): the value the rotation
/// observable takes on an in-plane vector.
inline int inplane_sign(const CMat& m, double a = 1.0, double b = 0.0) {
  const std::vector<CScalar> v{a, b, 0.0};
  std::vector<CScalar> w;
  for (auto p : v) {
    for (auto q : v) w.push_back(p * q);
  }
  const auto mw = m.apply(w);
  CScalar s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) s += std::conj(w[i]) * mw[i];
  if (std::abs(s.real()) < kTol) throw std::domain_error("inplane_sign: observable vanishes on this vector");
  return s.real() > 0 ? 1 : -1;
}

/// Targets of the six lines: identity signs for the Pauli form, in-plane
/// signs of the squared products for the rotation form.
inline std::array<int, 6> square_targets(const OperatorSquare& sq) {
  std::array<int, 6> t{};
  if (sq.form == OperatorSquare::Form::pauli) {
    const auto p = row_col_products(sq);
    for (int k = 0; k < 6; ++k) t[k] = identity_sign(p[k]);
  } else {
    const auto p = squared_products(sq);
    for (int k = 0; k < 6; ++k) t[k] = inplane_sign(p[k]);
  }
  return t;
}

inline std::array<int, 6> rotation_targets() { return square_targets(rotation_square()); }

// ---------------------------------------------------------------------------
// Classical assignments

using AssignmentTable = std::array<int, 9>;

inline AssignmentTable assignment_from_bits(unsigned bits) {
  AssignmentTable t{};
  for (int i = 0; i < 9; ++i) t[i] = ((bits >> i) & 1u) ? -1 : 1;
  return t;
}

struct KsSearchResult {
  int best_satisfied = 0;
  std::vector<AssignmentTable> maximizers;
  int satisfy_all = 0;
  std::array<int, 7> histogram{};  // tables satisfying exactly k lines
  int target_parity = 1;           // product of the six targets
  bool classical_parity_always_plus = true;  // every table's six line values multiply to +1
  int tables = 0;
};

inline KsSearchResult ks_assignment_search(const std::array<int, 6>& targets) {
  KsSearchResult r;
  for (int t : targets) {
    if (t != 1 && t != -1) throw std::invalid_argument("ks_assignment_search: targets must be +-1");
    r.target_parity *= t;
  }
  const auto lines = square_lines();
  for (unsigned bits = 0; bits < 512; ++bits) {
    const auto a = assignment_from_bits(bits);
    int sat = 0, parity = 1;
    for (int k = 0; k < 6; ++k) {
      const int v = a[lines[k][0]] * a[lines[k][1]] * a[lines[k][2]];
      parity *= v;
      sat += v == targets[k];
    }
    ++r.tables;
    ++r.histogram[sat];
    r.classical_parity_always_plus = r.classical_parity_always_plus && parity == 1;
    if (sat > r.best_satisfied) {
      r.best_satisfied = sat;
      r.maximizers.clear();
    }
    if (sat == r.best_satisfied) r.maximizers.push_back(a);
  }
  r.satisfy_all = r.histogram[6];
  return r;
}

// ---------------------------------------------------------------------------
// Rotation-form outcomes

using Vec3 = std::array<double, 3>;

inline Vec3 apply3(const CMat& m, const Vec3& v) {
  if (m.dim() != 3) throw std::invalid_argument("apply3: need a 3x3 matrix");
  const auto r = m.apply(std::vector<CScalar>{v[0], v[1], v[2]});
  return {r[0].real(), r[1].real(), r[2].real()};
}

/// -1 when the final vector ends in z <= 0, +1 otherwise.
inline int rotation_outcome(const Vec3& v) {
  if (v[0] == 0.0 && v[1] == 0.0 && v[2] == 0.0) throw std::invalid_argument("rotation_outcome: zero vector");
  return v[2] <= 0.0 ? -1 : 1;
}

/// [Rx Rz Ry]^2.
inline CMat inverting_rotation() {
  const CMat m = rot3(Axis::x) * rot3(Axis::z) * rot3(Axis::y);
  return m * m;
}

struct InplaneWitness {
  Vec3 image;
  double value = 0.0;  // (M v) . v / |v|^2
};

inline InplaneWitness inplane_witness(double a, double b) {
  if (a == 0.0 && b == 0.0) throw std::invalid_argument("inplane_witness: (a, b) = (0, 0)");
  const Vec3 v{a, b, 0.0};
  InplaneWitness w;
  w.image = apply3(inverting_rotation(), v);
  w.value = (w.image[0] * a + w.image[1] * b) / (a * a + b * b);
  return w;
}

// ---------------------------------------------------------------------------
// Card demo

struct CardFrames {
  CMat body{3};   // R_first * R_second * ...
  CMat space{3};  // ... * R_second * R_first
  std::array<Vec3, 3> body_images{};   // images of x, y, z
  std::array<Vec3, 3> space_images{};
};

inline CardFrames card_demo(const std::vector<Axis>& order) {
  CardFrames f;
  f.body = CMat::identity(3);
  f.space = CMat::identity(3);
  for (Axis a : order) {
    f.body = f.body * rot3(a);
    f.space = rot3(a) * f.space;
  }
  const std::array<Vec3, 3> basis{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  for (int k = 0; k < 3; ++k) {
    f.body_images[k] = apply3(f.body, basis[k]);
    f.space_images[k] = apply3(f.space, basis[k]);
  }
  return f;
}

// ---------------------------------------------------------------------------
// GHZ instruction tables

/// Target per configuration string: +1, -1, or 0 for unconstrained.
using InstructionTargets = std::map<std::string, int>;

/// Eigenvalues of V_GHZ under each configuration; non-eigen configurations are unconstrained.
inline InstructionTargets ghz_qm_targets() {
  InstructionTargets t;
  const auto v = make_vghz().amps;
  for (const auto& c : all_ghz_configs()) {
    const auto a = apply_config(c, v);
    t[c.str()] = a.eigenvalue ? static_cast<int>(a.eigenvalue->real()) : 0;
  }
  return t;
}

struct InstructionSearchResult {
  int stations = 0;
  int tables = 0;
  int configs = 0;
  int best_satisfied = 0;
  int satisfy_all = 0;
  std::vector<int> histogram;              // tables satisfying exactly k configs
  std::vector<std::uint32_t> maximizers;   // bit 2i: l_{i+1} = -1, bit 2i+1: r_{i+1} = -1
  int target_product = 1;                  // product over constrained configs
  bool classical_product_always_plus = true;
  double discrepancy_probability = 0.0;    // best table, uniform configuration choice
};

/// Exhaustive search over all (l_i, r_i) = +-1 tables for n stations.
/// Unconstrained configurations count as satisfied.
inline InstructionSearchResult ghz_instruction_search(int stations, const InstructionTargets& targets) {
  if (stations < 1 || stations > 8) throw std::invalid_argument("ghz_instruction_search: stations must be in [1, 8]");
  InstructionSearchResult r;
  r.stations = stations;
  r.configs = 1 << stations;
  r.tables = 1 << (2 * stations);
  r.histogram.assign(static_cast<std::size_t>(r.configs) + 1, 0);
  for (const auto& [cfg, t] : targets) {
    if (static_cast<int>(cfg.size()) != stations) throw std::invalid_argument("ghz_instruction_search: bad config '" + cfg + "'");
    if (t != 0 && t != 1 && t != -1) throw std::invalid_argument("ghz_instruction_search: targets must be -1, 0, +1");
    r.target_product *= t == 0 ? 1 : t;
  }
  for (std::uint32_t bits = 0; bits < static_cast<std::uint32_t>(r.tables); ++bits) {
    auto value = [&](int station, char op) { return ((bits >> (2 * station + (op == 'r'))) & 1u) ? -1 : 1; };
    int sat = 0, constrained_product = 1;
    for (int c = 0; c < r.configs; ++c) {
      std::string cfg;
      int product = 1;
      for (int s = 0; s < stations; ++s) {
        const char op = ((c >> (stations - 1 - s)) & 1) ? 'r' : 'l';
        cfg += op;
        product *= value(s, op);
      }
      const auto it = targets.find(cfg);
      const int t = it == targets.end() ? 0 : it->second;
      if (t != 0) constrained_product *= product;
      sat += t == 0 || t == product;
    }
    r.classical_product_always_plus = r.classical_product_always_plus && constrained_product == 1;
    ++r.histogram[static_cast<std::size_t>(sat)];
    if (sat > r.best_satisfied) {
      r.best_satisfied = sat;
      r.maximizers.clear();
    }
    if (sat == r.best_satisfied) r.maximizers.push_back(bits);
  }
  r.satisfy_all = r.histogram.back();
  r.discrepancy_probability = static_cast<double>(r.configs - r.best_satisfied) / r.configs;
  return r;
}

// ---------------------------------------------------------------------------
// Small geometric demos

struct PlaneRotationDemo {
  double three_pi = 0.0;   // (Rpi Rpi Rpi v) . v
  double mixed = 0.0;      // (Rpi Rpi Rpi/2 v) . v
  double one_pi = 0.0;     // (Rpi Rpi/2 Rpi/2 v) . v
};

inline PlaneRotationDemo plane_rotation_demo(double v_angle = 0.3) {
  auto rot = [](double a) {
    const double c = std::cos(a), s = std::sin(a);
    return CMat{{c, -s}, {s, c}};
  };
  const CMat r_pi = rot(std::numbers::pi), r_half = rot(std::numbers::pi / 2);
  const Vec2C v = e_linear(v_angle);
  auto dot = [&](const CMat& m) { return inner(v, m.apply(v)).real(); };
  return {dot(r_pi * r_pi * r_pi), dot(r_pi * r_pi * r_half), dot(r_pi * r_half * r_half)};
}

struct FilteringOrderDemo {
  double sc_overlap = 0.0;   // S . C
  double sbc_overlap = 0.0;  // |S . (B . C)|
};

/// Colour axes {B, R} = {e_x, e_y}; shape axes {S, C} rotated by theta.
inline FilteringOrderDemo filtering_order_demo(double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi / 2)) {
    throw std::invalid_argument("filtering_order_demo: theta must lie in (0, pi/2)");
  }
  const Vec2C b = e_x();
  const Vec2C s = e_linear(theta);
  const Vec2C c = e_linear(theta + std::numbers::pi / 2);
  return {std::abs(inner(s, c)), project(s, project(b, c)).norm()};
}

}  // namespace vhv
