#pragma once

#include <array>
#include <vector>

#include "chmorley/mesh.hpp"

namespace chmorley {

/// Symmetric quadrature rule on the reference triangle, stored in barycentric
/// coordinates with weights normalized to sum to one. An integral over a
/// physical triangle K is |K| * sum_q w_q f(p_q).
struct TriQuadrature {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
  int exactness = 0;

  /// Smallest stored rule integrating all polynomials of total degree
  /// <= degree exactly (available exactness: 1, 2, 4, 6, 10).
  static const TriQuadrature& for_degree(int degree);

  std::size_t size() const { return points.size(); }
};

/// Gauss-Legendre rule on [0,1], exact to degree 2m-1.
struct SegmentQuadrature {
  std::vector<double> points;
  std::vector<double> weights;  // sum to one

  static const SegmentQuadrature& three_point();
};

}  // namespace chmorley
