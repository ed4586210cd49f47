#pragma once

// shared helpers for the unit and acceptance suites

#include <array>
#include <cmath>
#include <random>

#include "chmorley/fields.hpp"
#include "chmorley/morley.hpp"

namespace chmorley::testing {

// quadratic c0 + c1 x + c2 y + c3 x^2 + c4 xy + c5 y^2 with exact derivatives
inline ScalarField quadratic_field(const std::array<double, 6>& c) {
  ScalarField f;
  f.value = [c](const Vec2& p) {
    return c[0] + c[1] * p.x() + c[2] * p.y() + c[3] * p.x() * p.x() +
           c[4] * p.x() * p.y() + c[5] * p.y() * p.y();
  };
  f.gradient = [c](const Vec2& p) {
    return Vec2(c[1] + 2.0 * c[3] * p.x() + c[4] * p.y(),
                c[2] + c[4] * p.x() + 2.0 * c[5] * p.y());
  };
  f.hessian = [c](const Vec2&) {
    Eigen::Matrix2d h;
    h << 2.0 * c[3], c[4], c[4], 2.0 * c[5];
    return h;
  };
  f.laplacian = [c](const Vec2&) { return 2.0 * c[3] + 2.0 * c[5]; };
  f.bilaplacian = [](const Vec2&) { return 0.0; };
  return f;
}

inline ScalarField sin_cos_field() {
  const double pi = M_PI;
  ScalarField f;
  f.value = [pi](const Vec2& p) { return std::sin(pi * p.x()) * std::cos(pi * p.y()); };
  f.gradient = [pi](const Vec2& p) {
    return Vec2(pi * std::cos(pi * p.x()) * std::cos(pi * p.y()),
                -pi * std::sin(pi * p.x()) * std::sin(pi * p.y()));
  };
  f.hessian = [pi](const Vec2& p) {
    const double s = std::sin(pi * p.x()), c = std::cos(pi * p.x());
    const double sy = std::sin(pi * p.y()), cy = std::cos(pi * p.y());
    Eigen::Matrix2d h;
    h << -pi * pi * s * cy, -pi * pi * c * sy, -pi * pi * c * sy, -pi * pi * s * cy;
    return h;
  };
  return f;
}

inline std::array<double, 6> random_quadratic(std::mt19937& rng) {
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::array<double, 6> c;
  for (double& v : c) v = coef(rng);
  return c;
}

// ccw triangle with vertices in [-1,1]^2 and a reasonable aspect ratio
inline std::array<Vec2, 3> random_triangle(std::mt19937& rng) {
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  for (;;) {
    std::array<Vec2, 3> tri = {Vec2(coord(rng), coord(rng)), Vec2(coord(rng), coord(rng)),
                               Vec2(coord(rng), coord(rng))};
    double area = 0.5 * ((tri[1] - tri[0]).x() * (tri[2] - tri[0]).y() -
                         (tri[1] - tri[0]).y() * (tri[2] - tri[0]).x());
    if (area < 0.0) {
      std::swap(tri[1], tri[2]);
      area = -area;
    }
    const double diam = std::max({(tri[1] - tri[0]).norm(), (tri[2] - tri[1]).norm(),
                                  (tri[0] - tri[2]).norm()});
    if (area > 0.05 * diam * diam) return tri;
  }
}

inline Vec2 random_point_in_triangle(const std::array<Vec2, 3>& tri, std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double a = unit(rng), b = unit(rng);
  if (a + b > 1.0) {
    a = 1.0 - a;
    b = 1.0 - b;
  }
  return tri[0] + a * (tri[1] - tri[0]) + b * (tri[2] - tri[0]);
}

}  // namespace chmorley::testing
