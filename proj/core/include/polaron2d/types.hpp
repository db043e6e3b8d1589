// Copyright 2026 The polaron2d Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>

namespace polaron2d {

/// Physical inputs of the two-dimensional impurity problem.
///
/// `mass_ratio` is the impurity mass in units of the fermion mass and
/// `binding_energy` the (negative) two-body ground-state energy.
struct ModelParams {
  double mass_ratio = 2.0;
  double binding_energy = -1.0;

  /// Throws DomainError unless mass_ratio > 0 and binding_energy < 0.
  void validate() const;
};

/// Tolerances for every adaptive one-dimensional quadrature in the library.
struct QuadratureSpec {
  double rel_tol = 1e-12;
  double abs_tol = 1e-15;
  int max_subdivisions = 4000;

  void validate() const;
};

/// Scalar stand-ins at which the interaction kernels are evaluated.
///
/// `tau` replaces the spectral value of the free kinetic energy, `psq` is a
/// squared momentum, `mu` the trial energy and `lambda` the infrared cutoff.
struct KernelPoint {
  double u = 0.0;
  double tau = 0.0;
  double psq = 0.0;
  double mu = -1.0;
  double lambda = 1.0;

  void validate() const;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

inline Vec2 rotate(Vec2 a, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}

}  // namespace polaron2d
