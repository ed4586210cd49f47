#pragma once

#include <functional>
#include <string>

#include <Eigen/Core>

#include "chmorley/mesh.hpp"

namespace chmorley {

/// Callable bundle for a scalar field on the domain. value and gradient are
/// required by the Morley interpolant; hessian by H2-norm error evaluation;
/// laplacian and bilaplacian only by the elliptic-projection initializer.
struct ScalarField {
  std::function<double(const Vec2&)> value;
  std::function<Vec2(const Vec2&)> gradient;
  std::function<Eigen::Matrix2d(const Vec2&)> hessian;
  std::function<double(const Vec2&)> laplacian;
  std::function<double(const Vec2&)> bilaplacian;

  bool has_projection_data() const {
    return static_cast<bool>(laplacian) && static_cast<bool>(bilaplacian);
  }
};

/// u = c everywhere.
ScalarField constant_field(double c);

/// Signed distance to the ellipse x^2/a^2 + y^2/b^2 = 1, negative inside.
/// The nearest-point problem is solved per evaluation (bisection plus Newton
/// polish, |residual| <= 1e-12).
double ellipse_signed_distance(double a, double b, const Vec2& p);

/// tanh(d0 / sqrt(2 eps)) with d0 the signed distance to the ellipse
/// x^2/0.36 + y^2/0.04 = 1.
ScalarField ellipse_initial_condition(double eps);

/// tanh(((x-0.3)^2 + y^2 - 0.25^2)/eps) * tanh(((x+0.3)^2 + y^2 - 0.3^2)/eps).
ScalarField two_circle_initial_condition(double eps);

/// Parses an initial-condition spec: "constant:<c>", "ellipse", "twocircle",
/// or "expr:<expression in x, y>". eps feeds the built-in profiles.
ScalarField make_initial_condition(const std::string& spec, double eps);

// double-well potential and derivatives: F(u) = (u^2-1)^2 / 4
inline double double_well(double u) {
  const double s = u * u - 1.0;
  return 0.25 * s * s;
}
inline double double_well_d1(double u) { return u * u * u - u; }   // f
inline double double_well_d2(double u) { return 3.0 * u * u - 1.0; }  // f'
inline double double_well_d3(double u) { return 6.0 * u; }         // f''

}  // namespace chmorley
