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

#include "vhv/linalg.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

using namespace vhv;

namespace {

Vec2C random_vec(std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  return {CScalar(d(rng), d(rng)), CScalar(d(rng), d(rng))};
}

double det3(const CMat& m) {
  auto e = [&](int r, int c) { return m(r, c).real(); };
  return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
         e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

}  // namespace

TEST(project, identity_case) { EXPECT_LT(max_abs_diff(project(e_x(), e_x()), e_x()), 1e-15); }

TEST(project, magnitude_is_cosine) {
  for (double a : {0.0, 0.3, 1.1, 2.9}) {
    for (double b : {0.0, 0.7, 1.9}) {
      EXPECT_NEAR(project(e_linear(b), e_linear(a)).norm(), std::abs(std::cos(a - b)), 1e-12);
    }
  }
}

TEST(project, circular_axes_are_orthogonal) {
  EXPECT_LT(project(e_left(), e_right()).norm(), 1e-15);
}

TEST(project, rejects_non_unit_axis) {
  EXPECT_THROW(project(Vec2C{1.0, 1.0}, e_x()), std::invalid_argument);
  EXPECT_NO_THROW(project(Vec2C{1.0 + 1e-10, 0.0}, e_x()));
}

TEST(project, idempotent) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    Vec2C a = random_vec(rng);
    a = a / a.norm();
    const Vec2C v = random_vec(rng);
    EXPECT_LT(max_abs_diff(project(a, project(a, v)), project(a, v)), 1e-12);
  }
}

TEST(project, result_parallel_to_axis) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 100; ++i) {
    Vec2C a = random_vec(rng);
    a = a / a.norm();
    const Vec2C p = project(a, random_vec(rng));
    const Vec2C perp{-std::conj(a.y), std::conj(a.x)};
    EXPECT_LT(std::abs(inner(perp, p)), 1e-12);
  }
}

TEST(project, not_commutative) {
  const Vec2C a = e_linear(0.2), b = e_linear(1.0), v = e_linear(2.3);
  EXPECT_GT(max_abs_diff(project(a, project(b, v)), project(b, project(a, v))), 1e-3);
}

TEST(tensor, sizes_add) {
  EXPECT_EQ(tensor(TensorState(e_x()), TensorState(e_y())).size(), 4u);
  EXPECT_EQ(tensor({TensorState(e_x()), TensorState(e_y()), TensorState(e_x())}).particles(), 3);
}

TEST(tensor, psi_minus_amplitudes) {
  const double f = 0.6, g = -1.3;
  const auto s = tensor(Vec2C{f, g}, Vec2C{g, -f});
  EXPECT_EQ(s[0], CScalar(f * g));
  EXPECT_EQ(s[1], CScalar(-f * f));
  EXPECT_EQ(s[2], CScalar(g * g));
  EXPECT_EQ(s[3], CScalar(-g * f));
}

TEST(tensor, associative) {
  std::mt19937_64 rng(7);
  const TensorState a(random_vec(rng)), b(random_vec(rng)), c(random_vec(rng));
  EXPECT_LT(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))), 1e-15);
}

TEST(tensor, basis_labels) {
  const auto s = TensorState::basis("xyx");
  EXPECT_EQ(s.at("xyx"), CScalar(1.0));
  EXPECT_EQ(s[2], CScalar(1.0));
  EXPECT_EQ(s.norm2(), 1.0);
}

TEST(inner, orthogonal_bell_kinds) {
  for (double f : {0.3, -1.2, 2.0}) {
    for (double g : {0.5, 0.0, -0.7}) {
      const auto psi = tensor(Vec2C{f, g}, Vec2C{g, -f});
      const auto phi = tensor(Vec2C{f, g}, Vec2C{f, g});
      EXPECT_NEAR(std::abs(inner(psi, phi)), 0.0, 1e-15);
      EXPECT_NEAR(std::sqrt(inner(psi, psi).real()), f * f + g * g, 1e-12);
    }
  }
}

TEST(inner, conjugates_first_argument) {
  const TensorState a(Vec2C{kI, 0.0}), b(Vec2C{1.0, 0.0});
  EXPECT_EQ(inner(a, b), CScalar(0.0, -1.0));
  EXPECT_EQ(inner(b, a), CScalar(0.0, 1.0));
}

TEST(inner, self_inner_zero_only_for_zero) {
  EXPECT_EQ(inner(TensorState::zero(2), TensorState::zero(2)), CScalar(0.0));
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    const TensorState v = tensor(random_vec(rng), random_vec(rng));
    const CScalar s = inner(v, v);
    EXPECT_GT(s.real(), 0.0);
    EXPECT_EQ(s.imag(), 0.0);
  }
}

TEST(inner, dimension_mismatch_throws) {
  EXPECT_THROW(inner(TensorState::zero(2), TensorState::zero(3)), std::invalid_argument);
}

TEST(tensor_state, rejects_bad_input) {
  EXPECT_THROW(TensorState(2, {1.0, 0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(TensorState(1, {std::nan(""), 0.0}), std::invalid_argument);
  EXPECT_THROW(TensorState::basis("xz"), std::invalid_argument);
}

TEST(partial_project, ghz_chain) {
  const double h = std::numbers::sqrt2 / 2;
  const TensorState v(3, {h, 0, 0, 0, 0, 0, 0, h});
  const auto r = partial_project(partial_project(v, 2, e_plus()), 2, e_plus());
  ASSERT_EQ(r.particles(), 1);
  EXPECT_LT(max_abs_diff(r.vec(), 0.5 * e_plus()), 1e-12);
}

TEST(partial_project, distinct_slots_commute) {
  const double h = std::numbers::sqrt2 / 2;
  const TensorState v(3, {h, 0, 0, 0, 0, 0, 0, h});
  for (const Vec2C& a : {e_plus(), e_minus(), e_right(), e_left()}) {
    for (const Vec2C& b : {e_plus(), e_minus(), e_right(), e_left()}) {
      const auto ab = partial_project(partial_project(v, 3, a), 1, b);
      const auto ba = partial_project(partial_project(v, 1, b), 2, a);
      EXPECT_LT(max_abs_diff(ab, ba), 1e-12);
    }
  }
}

TEST(partial_project, orthogonal_axes_on_same_slot_vanish) {
  std::mt19937_64 rng(9);
  const TensorState v = tensor({TensorState(random_vec(rng)), TensorState(random_vec(rng))});
  // Projection on e_+ leaves a 1-particle state; re-embedding it in slot 1 and
  // projecting on e_- must give zero.
  const Vec2C c = partial_project(v, 2, e_plus()).vec();
  const TensorState re = tensor(TensorState(project(e_plus(), c)), TensorState(e_x()));
  EXPECT_LT(partial_project(re, 1, e_minus()).norm2(), 1e-24);
}

TEST(partial_project, index_range) {
  const auto v = TensorState::basis("xy");
  EXPECT_THROW(partial_project(v, 0, e_x()), std::out_of_range);
  EXPECT_THROW(partial_project(v, 3, e_x()), std::out_of_range);
  EXPECT_EQ(partial_project(partial_project(v, 1, e_x()), 1, e_y()).scalar(), CScalar(1.0));
}

TEST(permute_particles, moves_slots) {
  const auto s = TensorState::basis("xxy");
  const int order[] = {3, 1, 2};
  EXPECT_EQ(permute_particles(s, order).at("yxx"), CScalar(1.0));
}

TEST(rot3, matrices) {
  EXPECT_EQ(rot3(Axis::x), (CMat{{1, 0, 0}, {0, 0, -1}, {0, 1, 0}}));
  EXPECT_EQ(rot3(Axis::y), (CMat{{0, 0, 1}, {0, 1, 0}, {-1, 0, 0}}));
  EXPECT_EQ(rot3(Axis::z), (CMat{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}));
}

TEST(rot3, orthogonal_fourth_power_identity) {
  for (Axis a : {Axis::x, Axis::y, Axis::z}) {
    const CMat r = rot3(a);
    CMat rt(3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) rt(i, j) = r(j, i);
    }
    EXPECT_EQ(r * rt, CMat::identity(3));
    EXPECT_EQ(det3(r), 1.0);
    EXPECT_EQ(r.pow(4), CMat::identity(3));
    EXPECT_NE(r.pow(2), CMat::identity(3));
  }
}

TEST(rot3, z_and_x_do_not_commute) {
  const CMat z = rot3(Axis::z), x = rot3(Axis::x);
  CMat zx(3), xz(3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        zx(i, j) += z(i, k) * x(k, j);
        xz(i, j) += x(i, k) * z(k, j);
      }
    }
  }
  EXPECT_EQ(z * x, zx);
  EXPECT_EQ(x * z, xz);
  EXPECT_NE(zx, xz);
}

TEST(pauli, products) {
  const CMat x = pauli(Pauli::X), y = pauli(Pauli::Y), z = pauli(Pauli::Z);
  EXPECT_EQ(z * x, kI * y);
  EXPECT_EQ(x * z, -kI * y);
  for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) EXPECT_EQ(pauli(p) * pauli(p), CMat::identity(2));
}

TEST(pauli, two_qubit_factors) {
  EXPECT_EQ(two_qubit(Pauli::Z, Pauli::I) * two_qubit(Pauli::I, Pauli::X), two_qubit(Pauli::Z, Pauli::X));
  EXPECT_EQ(two_qubit(Pauli::I, Pauli::I), CMat::identity(4));
}

TEST(basis_vec, circular_from_diagonal) {
  const CScalar p(1, 1), m(1, -1);
  EXPECT_LT(max_abs_diff(e_right(), 0.5 * (p * e_plus() + m * e_minus())), 1e-15);
  EXPECT_LT(max_abs_diff(e_left(), 0.5 * (m * e_plus() + p * e_minus())), 1e-15);
}

TEST(basis_vec, plus_on_circular) {
  EXPECT_LT(std::abs(inner(e_right(), e_plus()) - CScalar(0.5, -0.5)), 1e-15);
  EXPECT_LT(std::abs(inner(e_left(), e_plus()) - CScalar(0.5, 0.5)), 1e-15);
}

TEST(basis_vec, orthonormal_families) {
  const std::pair<Vec2C, Vec2C> fams[] = {{e_x(), e_y()},
                                          {e_plus(), e_minus()},
                                          {e_right(), e_left()},
                                          {e_linear(0.4), e_linear(0.4 + std::numbers::pi / 2)}};
  for (const auto& [a, b] : fams) {
    EXPECT_NEAR(a.norm2(), 1.0, 1e-12);
    EXPECT_NEAR(b.norm2(), 1.0, 1e-12);
    EXPECT_LT(std::abs(inner(a, b)), 1e-12);
  }
  EXPECT_LT(max_abs_diff(basis_vec(BasisKind::linear, 0.0), e_x()), 1e-15);
  EXPECT_LT(max_abs_diff(basis_vec(BasisKind::right), e_right()), 1e-15);
}
