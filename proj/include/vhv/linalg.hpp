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
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vhv {

using CScalar = std::complex<double>;

/// Absolute tolerance for floating comparisons of amplitudes and matrices.
inline constexpr double kTol = 1e-12;

inline constexpr CScalar kI{0.0, 1.0};

inline bool is_finite(CScalar c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

/// A polarization-plane vector: components along e_x and e_y.
struct Vec2C {
  CScalar x{};
  CScalar y{};

  double norm2() const { return std::norm(x) + std::norm(y); }
  double norm() const { return std::sqrt(norm2()); }

  friend Vec2C operator+(const Vec2C& a, const Vec2C& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2C operator-(const Vec2C& a, const Vec2C& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2C operator-(const Vec2C& a) { return {-a.x, -a.y}; }
  friend Vec2C operator*(CScalar s, const Vec2C& a) { return {s * a.x, s * a.y}; }
  friend Vec2C operator*(const Vec2C& a, CScalar s) { return s * a; }
  friend Vec2C operator/(const Vec2C& a, double s) { return {a.x / s, a.y / s}; }
};

/// <a, b>, conjugate-linear in a.
inline CScalar inner(const Vec2C& a, const Vec2C& b) {
  return std::conj(a.x) * b.x + std::conj(a.y) * b.y;
}

inline double max_abs_diff(const Vec2C& a, const Vec2C& b) {
  return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

/// Projection of v onto a unit axis: <axis, v> axis.
///
/// Signed on purpose: the sign of the component carries through chains of
/// projections (swap identities, GHZ chains), so no absolute value is taken.
inline Vec2C project(const Vec2C& axis, const Vec2C& v) {
  if (std::abs(axis.norm2() - 1.0) > 1e-9) {
    throw std::invalid_argument("project: axis must be a unit vector");
  }
  return inner(axis, v) * axis;
}

// Basis vectors.
inline Vec2C e_x() { return {1.0, 0.0}; }
inline Vec2C e_y() { return {0.0, 1.0}; }
inline Vec2C e_linear(double theta) { return {std::cos(theta), std::sin(theta)}; }
inline Vec2C e_plus() { return {std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2}; }
inline Vec2C e_minus() { return {std::numbers::sqrt2 / 2, -std::numbers::sqrt2 / 2}; }
// e_R = 1/2 {e+(1+i) + e-(1-i)},  e_L = 1/2 {e+(1-i) + e-(1+i)}
inline Vec2C e_right() {
  return 0.5 * (CScalar{1, 1} * e_plus() + CScalar{1, -1} * e_minus());
}
inline Vec2C e_left() {
  return 0.5 * (CScalar{1, -1} * e_plus() + CScalar{1, 1} * e_minus());
}

enum class BasisKind { plus, minus, right, left, linear };

inline Vec2C basis_vec(BasisKind kind, double theta = 0.0) {
  switch (kind) {
    case BasisKind::plus: return e_plus();
    case BasisKind::minus: return e_minus();
    case BasisKind::right: return e_right();
    case BasisKind::left: return e_left();
    case BasisKind::linear: return e_linear(theta);
  }
  throw std::invalid_argument("basis_vec: unknown kind");
}

/// Amplitudes over the 2^k product basis of k two-dimensional factors.
///
/// Basis order is lexicographic with particle 1 most significant and x before
/// y in every slot, so for k = 2 the order is (xx, xy, yx, yy). A state with
/// zero particles holds a single scalar; it only arises as the end of a
/// projection chain.
class TensorState {
 public:
  TensorState() : TensorState(CScalar{1.0}) {}

  explicit TensorState(CScalar scalar) : particles_(0), amps_{scalar} {}

  TensorState(const Vec2C& v) : particles_(1), amps_{v.x, v.y} { check(); }  // NOLINT

  TensorState(int particles, std::vector<CScalar> amps)
      : particles_(particles), amps_(std::move(amps)) {
    if (particles < 0 || particles > 24) {
      throw std::invalid_argument("TensorState: particle count out of range");
    }
    if (amps_.size() != (std::size_t{1} << particles)) {
      throw std::invalid_argument("TensorState: amplitude count must be 2^k");
    }
    check();
  }

  static TensorState zero(int particles) {
    return TensorState(particles, std::vector<CScalar>(std::size_t{1} << particles));
  }

  /// One-hot basis state; `bits` spells the slots as 'x'/'y' characters.
  static TensorState basis(const std::string& bits) {
    auto s = zero(static_cast<int>(bits.size()));
    std::size_t index = 0;
    for (char c : bits) {
      if (c != 'x' && c != 'y') throw std::invalid_argument("TensorState::basis: expected x/y");
      index = (index << 1) | (c == 'y' ? 1u : 0u);
    }
    s.amps_[index] = 1.0;
    return s;
  }

  int particles() const { return particles_; }
  std::size_t size() const { return amps_.size(); }
  std::span<const CScalar> amps() const { return amps_; }
  const CScalar& operator[](std::size_t i) const { return amps_[i]; }

  /// Amplitude at the basis element spelled by `bits` ("xyx", ...).
  CScalar at(const std::string& bits) const {
    if (static_cast<int>(bits.size()) != particles_) {
      throw std::invalid_argument("TensorState::at: wrong number of slots");
    }
    std::size_t index = 0;
    for (char c : bits) index = (index << 1) | (c == 'y' ? 1u : 0u);
    return amps_[index];
  }

  /// Bit position of the 1-based particle slot inside an amplitude index.
  int bit_of(int particle) const { return particles_ - particle; }

  double norm2() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  /// The single scalar of a zero-particle state.
  CScalar scalar() const {
    if (particles_ != 0) throw std::logic_error("TensorState::scalar: state has particles");
    return amps_[0];
  }

  /// The two components of a one-particle state.
  Vec2C vec() const {
    if (particles_ != 1) throw std::logic_error("TensorState::vec: not a one-particle state");
    return {amps_[0], amps_[1]};
  }

  friend TensorState operator+(const TensorState& a, const TensorState& b) {
    a.same_shape(b);
    auto out = a;
    for (std::size_t i = 0; i < out.amps_.size(); ++i) out.amps_[i] += b.amps_[i];
    return out;
  }
  friend TensorState operator-(const TensorState& a, const TensorState& b) {
    return a + (-1.0) * b;
  }
  friend TensorState operator*(CScalar s, const TensorState& a) {
    auto out = a;
    for (auto& x : out.amps_) x *= s;
    return out;
  }
  friend TensorState operator*(const TensorState& a, CScalar s) { return s * a; }

  void same_shape(const TensorState& other) const {
    if (other.particles_ != particles_) {
      throw std::invalid_argument("TensorState: particle count mismatch");
    }
  }

 private:
  void check() const {
    for (const auto& a : amps_) {
      if (!is_finite(a)) throw std::invalid_argument("TensorState: non-finite amplitude");
    }
  }

  int particles_;
  std::vector<CScalar> amps_;
};

/// a (x) b: particle counts add, amplitudes are pairwise products.
inline TensorState tensor(const TensorState& a, const TensorState& b) {
  std::vector<CScalar> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a.amps()) {
    for (const auto& y : b.amps()) out.push_back(x * y);
  }
  return TensorState(a.particles() + b.particles(), std::move(out));
}

inline TensorState tensor(std::initializer_list<TensorState> factors) {
  TensorState out;
  for (const auto& f : factors) out = tensor(out, f);
  return out;
}

inline CScalar inner(const TensorState& a, const TensorState& b) {
  if (a.particles() != b.particles()) {
    throw std::invalid_argument("inner: particle count mismatch");
  }
  CScalar s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double max_abs_diff(const TensorState& a, const TensorState& b) {
  a.same_shape(b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Coefficient state of `state` along `axis` in slot `particle` (1-based).
/// The slot is removed; the remaining slots keep their relative order.
inline TensorState partial_project(const TensorState& state, int particle, const Vec2C& axis) {
  const int k = state.particles();
  if (particle < 1 || particle > k) {
    throw std::out_of_range("partial_project: particle index out of range");
  }
  if (std::abs(axis.norm2() - 1.0) > 1e-9) {
    throw std::invalid_argument("partial_project: axis must be a unit vector");
  }
  const int bit = state.bit_of(particle);
  const std::size_t low_mask = (std::size_t{1} << bit) - 1;
  const CScalar cx = std::conj(axis.x);
  const CScalar cy = std::conj(axis.y);
  std::vector<CScalar> out(std::size_t{1} << (k - 1));
  for (std::size_t r = 0; r < out.size(); ++r) {
    const std::size_t hi = (r & ~low_mask) << 1;
    const std::size_t base = hi | (r & low_mask);
    out[r] = cx * state[base] + cy * state[base | (std::size_t{1} << bit)];
  }
  return TensorState(k - 1, std::move(out));
}

/// Reorders slots: new slot j (1-based) holds old particle order[j-1].
inline TensorState permute_particles(const TensorState& state, std::span<const int> order) {
  const int k = state.particles();
  if (static_cast<int>(order.size()) != k) {
    throw std::invalid_argument("permute_particles: order must name every slot");
  }
  std::vector<bool> seen(k + 1, false);
  for (int p : order) {
    if (p < 1 || p > k || seen[p]) throw std::invalid_argument("permute_particles: not a permutation");
    seen[p] = true;
  }
  std::vector<CScalar> out(state.size());
  for (std::size_t old_index = 0; old_index < state.size(); ++old_index) {
    std::size_t new_index = 0;
    for (int j = 1; j <= k; ++j) {
      const std::size_t b = (old_index >> state.bit_of(order[j - 1])) & 1u;
      new_index |= b << (k - j);
    }
    out[new_index] = state[old_index];
  }
  return TensorState(k, std::move(out));
}

/// Dense complex square matrix, row-major.
class CMat {
 public:
  CMat() = default;
  explicit CMat(std::size_t n) : n_(n), e_(n * n) {}
  CMat(std::size_t n, std::vector<CScalar> entries) : n_(n), e_(std::move(entries)) {
    if (e_.size() != n * n) throw std::invalid_argument("CMat: entry count must be n*n");
  }
  CMat(std::initializer_list<std::initializer_list<CScalar>> rows) : n_(rows.size()) {
    for (const auto& r : rows) {
      if (r.size() != n_) throw std::invalid_argument("CMat: matrix must be square");
      e_.insert(e_.end(), r.begin(), r.end());
    }
  }

  static CMat identity(std::size_t n) {
    CMat m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t dim() const { return n_; }
  CScalar& operator()(std::size_t r, std::size_t c) { return e_[r * n_ + c]; }
  const CScalar& operator()(std::size_t r, std::size_t c) const { return e_[r * n_ + c]; }

  friend CMat operator*(const CMat& a, const CMat& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("CMat: dimension mismatch");
    CMat out(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        const CScalar aik = a(i, k);
        if (aik == CScalar{}) continue;
        for (std::size_t j = 0; j < a.n_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }
  friend CMat operator*(CScalar s, const CMat& a) {
    CMat out = a;
    for (auto& x : out.e_) x *= s;
    return out;
  }
  friend CMat operator+(const CMat& a, const CMat& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("CMat: dimension mismatch");
    CMat out = a;
    for (std::size_t i = 0; i < out.e_.size(); ++i) out.e_[i] += b.e_[i];
    return out;
  }
  friend CMat operator-(const CMat& a, const CMat& b) { return a + CScalar{-1.0} * b; }

  /// Exact entrywise equality; meant for matrices with (Gaussian) integer entries.
  friend bool operator==(const CMat& a, const CMat& b) { return a.n_ == b.n_ && a.e_ == b.e_; }

  std::vector<CScalar> apply(std::span<const CScalar> v) const {
    if (v.size() != n_) throw std::invalid_argument("CMat::apply: dimension mismatch");
    std::vector<CScalar> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  Vec2C apply(const Vec2C& v) const {
    if (n_ != 2) throw std::invalid_argument("CMat::apply: not a 2x2 matrix");
    return {(*this)(0, 0) * v.x + (*this)(0, 1) * v.y, (*this)(1, 0) * v.x + (*this)(1, 1) * v.y};
  }

  CMat pow(unsigned k) const {
    CMat out = identity(n_);
    for (unsigned i = 0; i < k; ++i) out = out * *this;
    return out;
  }

  double max_abs_diff(const CMat& other) const {
    if (other.n_ != n_) throw std::invalid_argument("CMat: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < e_.size(); ++i) m = std::max(m, std::abs(e_[i] - other.e_[i]));
    return m;
  }

 private:
  std::size_t n_ = 0;
  std::vector<CScalar> e_;
};

inline CMat kron(const CMat& a, const CMat& b) {
  const std::size_t n = a.dim() * b.dim();
  CMat out(n);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < b.dim(); ++k)
        for (std::size_t l = 0; l < b.dim(); ++l)
          out(i * b.dim() + k, j * b.dim() + l) = a(i, j) * b(k, l);
  return out;
}

inline bool commutes(const CMat& a, const CMat& b) { return a * b == b * a; }

enum class Axis { x, y, z };

/// Exact +90 degree rotation about a coordinate axis, (x, y, z) ordering.
inline CMat rot3(Axis axis) {
  switch (axis) {
    case Axis::x: return {{1, 0, 0}, {0, 0, -1}, {0, 1, 0}};
    case Axis::y: return {{0, 0, 1}, {0, 1, 0}, {-1, 0, 0}};
    case Axis::z: return {{0, -1, 0}, {1, 0, 0}, {0, 0, 1}};
  }
  throw std::invalid_argument("rot3: unknown axis");
}

enum class Pauli { I, X, Y, Z };

inline CMat pauli(Pauli j) {
  switch (j) {
    case Pauli::I: return CMat::identity(2);
    case Pauli::X: return {{0, 1}, {1, 0}};
    case Pauli::Y: return {{0, -kI}, {kI, 0}};
    case Pauli::Z: return {{1, 0}, {0, -1}};
  }
  throw std::invalid_argument("pauli: unknown operator");
}

/// pauli(j1) acting on qubit 1 times pauli(j2) on qubit 2, as a 4x4 matrix.
inline CMat two_qubit(Pauli j1, Pauli j2) { return kron(pauli(j1), pauli(j2)); }

}  // namespace vhv
