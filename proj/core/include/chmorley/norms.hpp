#pragma once

#include <vector>

#include "chmorley/fields.hpp"
#include "chmorley/morley.hpp"

namespace chmorley {

/// Broken Sobolev seminorm |u|_{j,2,h}: the elementwise L2 norm of the j-th
/// derivative, j in {0, 1, 2} (j = 0 is the L2 norm).
double broken_norm(const MorleyFunction& u, int order);

/// Phase-field energy: integral of (eps/2)|grad u|^2 + F(u)/eps with the
/// double well F; degree-10 rule (F(u_h) has degree 8).
double energy(const MorleyFunction& u, double eps);

/// Broken seminorm of u - v for a smooth field v (degree-10 rule). v must
/// provide gradient for order >= 1 and hessian for order 2.
double error_vs_function(const MorleyFunction& u, const ScalarField& v, int order);

/// Broken seminorm of the difference between fields on nested meshes,
/// integrated exactly over the elements of the finer (reference) mesh.
/// Throws std::invalid_argument when the meshes are not nested.
double error_vs_reference(const MorleyFunction& u, const MorleyFunction& reference, int order);

/// Max |u - v| over a deterministic sample set: all vertices, edge midpoints,
/// centroids, and a 4x4 interior barycentric lattice per element.
double linf_error_vs_function(const MorleyFunction& u, const ScalarField& v);

/// Same sample set taken on the reference mesh.
double linf_error_vs_reference(const MorleyFunction& u, const MorleyFunction& reference);

/// One convergence-table row.
struct ErrorRow {
  double h = 0.0;
  double l2 = 0.0;
  double h1 = 0.0;
  double h2 = 0.0;
  double linf = 0.0;
};

/// Rows per mesh level plus observed orders between consecutive levels,
/// computed as log(e_i / e_{i+1}) / log(h_i / h_{i+1}).
struct ErrorReport {
  std::vector<ErrorRow> rows;
  std::vector<ErrorRow> orders;  // orders[i] relates rows[i] and rows[i+1]; h unused

  void compute_orders();
};

}  // namespace chmorley
