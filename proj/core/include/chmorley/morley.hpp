#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "chmorley/fields.hpp"
#include "chmorley/mesh.hpp"

namespace chmorley {

/// The six Morley shape functions of one triangle, stored as quadratic
/// polynomials in a translated/scaled local frame X = (x - center) / scale.
/// DOF order: vertex values 0..2, then edge-midpoint normal derivatives 3..5
/// (local edge k opposite vertex k, derivative along the supplied normal).
struct ElementBasis {
  std::array<Vec2, 3> vertices;
  std::array<Vec2, 3> edge_normals;       // unit, one per local edge
  Eigen::Matrix<double, 6, 6> coeff;      // column j: monomial coefficients of shape j
  Vec2 center = Vec2::Zero();
  double scale = 1.0;
  double area = 0.0;

  double shape_value(int j, const Vec2& p) const;
  Vec2 shape_gradient(int j, const Vec2& p) const;
  Eigen::Matrix2d shape_hessian(int j) const;  // constant on the element

  /// Local polynomial of a DOF vector: monomial coefficients in the local frame.
  Eigen::Matrix<double, 6, 1> polynomial(const Eigen::Matrix<double, 6, 1>& dofs) const {
    return coeff * dofs;
  }
  static double poly_value(const Eigen::Matrix<double, 6, 1>& q, const Vec2& X);
};

/// Shape functions dual to the Morley DOF functionals of one triangle.
/// Throws std::invalid_argument for a degenerate triangle.
ElementBasis build_element_basis(const std::array<Vec2, 3>& vertices,
                                 const std::array<Vec2, 3>& edge_normals);

/// Outward unit normals of a ccw triangle (edge k opposite vertex k).
std::array<Vec2, 3> outward_normals(const std::array<Vec2, 3>& vertices);

/// Morley space on a mesh: V vertex-value DOFs followed by E edge-normal
/// DOFs, each edge DOF taken along the global edge normal. Immutable after
/// construction.
class MorleySpace {
 public:
  explicit MorleySpace(const Mesh& mesh);

  const Mesh& mesh() const { return *mesh_; }
  int dof_count() const { return mesh_->vertex_count() + mesh_->edge_count(); }
  int vertex_dof_count() const { return mesh_->vertex_count(); }
  int edge_dof_offset() const { return mesh_->vertex_count(); }

  /// Global DOF indices of element e: three vertex DOFs, three edge DOFs.
  std::array<int, 6> element_dofs(int e) const;
  const ElementBasis& basis(int e) const { return bases_[e]; }

  struct Eval {
    double value = 0.0;
    Vec2 gradient = Vec2::Zero();
    Eigen::Matrix2d hessian = Eigen::Matrix2d::Zero();
  };
  /// Exact evaluation of the local quadratic of element e at p.
  Eval evaluate(const Eigen::VectorXd& coeffs, int element, const Vec2& p) const;
  double value(const Eigen::VectorXd& coeffs, int element, const Vec2& p) const;

  /// Local DOF vector of element e gathered from global coefficients.
  Eigen::Matrix<double, 6, 1> gather(const Eigen::VectorXd& coeffs, int e) const;

 private:
  const Mesh* mesh_;
  std::vector<ElementBasis> bases_;
};

/// Coefficient vector over a Morley space. Value type; the space must
/// outlive it.
struct MorleyFunction {
  const MorleySpace* space = nullptr;
  Eigen::VectorXd coeffs;

  MorleyFunction() = default;
  MorleyFunction(const MorleySpace& s, Eigen::VectorXd c) : space(&s), coeffs(std::move(c)) {}

  MorleySpace::Eval evaluate(int element, const Vec2& p) const {
    return space->evaluate(coeffs, element, p);
  }
  /// Evaluate at an arbitrary domain point (locates the element first).
  MorleySpace::Eval evaluate(const Vec2& p) const {
    return space->evaluate(coeffs, space->mesh().locate(p).element, p);
  }
};

/// Morley interpolant: vertex DOFs from point values, edge DOFs from the
/// edge average of the normal derivative (three-point Gauss per edge).
/// Exact for quadratics.
MorleyFunction interpolate(const MorleySpace& space, const ScalarField& v);

/// Zeroes the boundary-edge normal DOFs (restriction to the constrained
/// subspace); other DOFs unchanged. Idempotent.
MorleyFunction project_boundary(MorleyFunction u);

/// Domain mean (1/|Omega|) integral of u, exact for quadratics.
double mean_value(const MorleyFunction& u);

}  // namespace chmorley
