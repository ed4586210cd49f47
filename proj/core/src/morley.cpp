#include "chmorley/morley.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "chmorley/quadrature.hpp"

namespace chmorley {

namespace {

// monomials {1, X, Y, X^2, XY, Y^2} at a frame-local point
Eigen::Matrix<double, 6, 1> monomials(const Vec2& X) {
  Eigen::Matrix<double, 6, 1> m;
  m << 1.0, X.x(), X.y(), X.x() * X.x(), X.x() * X.y(), X.y() * X.y();
  return m;
}

Eigen::Matrix<double, 6, 2> monomial_gradients(const Vec2& X) {
  Eigen::Matrix<double, 6, 2> g;
  g << 0.0, 0.0,
       1.0, 0.0,
       0.0, 1.0,
       2.0 * X.x(), 0.0,
       X.y(), X.x(),
       0.0, 2.0 * X.y();
  return g;
}

}  // namespace

double ElementBasis::poly_value(const Eigen::Matrix<double, 6, 1>& q, const Vec2& X) {
  return q.dot(monomials(X));
}

double ElementBasis::shape_value(int j, const Vec2& p) const {
  const Vec2 X = (p - center) / scale;
  return coeff.col(j).dot(monomials(X));
}

Vec2 ElementBasis::shape_gradient(int j, const Vec2& p) const {
  const Vec2 X = (p - center) / scale;
  const Eigen::Matrix<double, 6, 2> g = monomial_gradients(X);
  return Vec2(g.transpose() * coeff.col(j)) / scale;
}

Eigen::Matrix2d ElementBasis::shape_hessian(int j) const {
  Eigen::Matrix2d h;
  const double s2 = scale * scale;
  h << 2.0 * coeff(3, j) / s2, coeff(4, j) / s2,
       coeff(4, j) / s2, 2.0 * coeff(5, j) / s2;
  return h;
}

std::array<Vec2, 3> outward_normals(const std::array<Vec2, 3>& v) {
  std::array<Vec2, 3> n;
  for (int k = 0; k < 3; ++k) {
    const Vec2 t = (v[(k + 2) % 3] - v[(k + 1) % 3]).normalized();
    n[k] = Vec2(t.y(), -t.x());  // rotate ccw tangent by -90: outward
  }
  return n;
}

ElementBasis build_element_basis(const std::array<Vec2, 3>& vertices,
                                 const std::array<Vec2, 3>& edge_normals) {
  ElementBasis basis;
  basis.vertices = vertices;
  basis.edge_normals = edge_normals;
  basis.center = (vertices[0] + vertices[1] + vertices[2]) / 3.0;
  basis.area = 0.5 * ((vertices[1] - vertices[0]).x() * (vertices[2] - vertices[0]).y() -
                      (vertices[1] - vertices[0]).y() * (vertices[2] - vertices[0]).x());
  const double diam = std::max({(vertices[1] - vertices[0]).norm(),
                                (vertices[2] - vertices[1]).norm(),
                                (vertices[0] - vertices[2]).norm()});
  if (!(std::fabs(basis.area) > 1e-14 * diam * diam) || !(diam > 0.0))
    throw std::invalid_argument("build_element_basis: degenerate triangle");
  basis.scale = diam;

  // DOF functionals applied to the local monomials
  Eigen::Matrix<double, 6, 6> dof;
  for (int i = 0; i < 3; ++i)
    dof.row(i) = monomials((vertices[i] - basis.center) / basis.scale).transpose();
  for (int k = 0; k < 3; ++k) {
    const Vec2 mid = 0.5 * (vertices[(k + 1) % 3] + vertices[(k + 2) % 3]);
    const Eigen::Matrix<double, 6, 2> g = monomial_gradients((mid - basis.center) / basis.scale);
    dof.row(3 + k) = (g * Eigen::Vector2d(edge_normals[k])).transpose() / basis.scale;
  }

  Eigen::FullPivLU<Eigen::Matrix<double, 6, 6>> lu(dof);
  if (!lu.isInvertible())
    throw std::invalid_argument("build_element_basis: singular DOF matrix");
  basis.coeff = lu.solve(Eigen::Matrix<double, 6, 6>::Identity());
  return basis;
}

MorleySpace::MorleySpace(const Mesh& mesh) : mesh_(&mesh) {
  bases_.reserve(mesh.element_count());
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto verts = mesh.element_vertices(e);
    std::array<Vec2, 3> normals;
    for (int k = 0; k < 3; ++k) normals[k] = mesh.edge_normal(mesh.element_edges(e)[k]);
    bases_.push_back(build_element_basis(verts, normals));
  }
}

std::array<int, 6> MorleySpace::element_dofs(int e) const {
  const auto& el = mesh_->elements()[e];
  const auto& ee = mesh_->element_edges(e);
  const int off = edge_dof_offset();
  return {el[0], el[1], el[2], off + ee[0], off + ee[1], off + ee[2]};
}

Eigen::Matrix<double, 6, 1> MorleySpace::gather(const Eigen::VectorXd& coeffs, int e) const {
  const auto dofs = element_dofs(e);
  Eigen::Matrix<double, 6, 1> local;
  for (int i = 0; i < 6; ++i) local[i] = coeffs[dofs[i]];
  return local;
}

MorleySpace::Eval MorleySpace::evaluate(const Eigen::VectorXd& coeffs, int element,
                                        const Vec2& p) const {
  if (element < 0 || element >= mesh_->element_count())
    throw std::out_of_range("MorleySpace::evaluate: element index out of range");
  const ElementBasis& b = bases_[element];
  const Eigen::Matrix<double, 6, 1> q = b.polynomial(gather(coeffs, element));
  const Vec2 X = (p - b.center) / b.scale;

  Eval out;
  out.value = ElementBasis::poly_value(q, X);
  out.gradient =
      Vec2(q[1] + 2.0 * q[3] * X.x() + q[4] * X.y(), q[2] + q[4] * X.x() + 2.0 * q[5] * X.y()) /
      b.scale;
  const double s2 = b.scale * b.scale;
  out.hessian << 2.0 * q[3] / s2, q[4] / s2, q[4] / s2, 2.0 * q[5] / s2;
  return out;
}

double MorleySpace::value(const Eigen::VectorXd& coeffs, int element, const Vec2& p) const {
  const ElementBasis& b = bases_[element];
  const Eigen::Matrix<double, 6, 1> q = b.polynomial(gather(coeffs, element));
  return ElementBasis::poly_value(q, (p - b.center) / b.scale);
}

MorleyFunction interpolate(const MorleySpace& space, const ScalarField& v) {
  if (!v.value || !v.gradient)
    throw std::invalid_argument("interpolate: field must provide value and gradient");
  const Mesh& mesh = space.mesh();
  Eigen::VectorXd c(space.dof_count());
  for (int i = 0; i < mesh.vertex_count(); ++i) c[i] = v.value(mesh.vertices()[i]);

  const SegmentQuadrature& gauss = SegmentQuadrature::three_point();
  const int off = space.edge_dof_offset();
  for (int e = 0; e < mesh.edge_count(); ++e) {
    const Vec2 a = mesh.vertices()[mesh.edges()[e].a];
    const Vec2 b = mesh.vertices()[mesh.edges()[e].b];
    const Vec2 n = mesh.edge_normal(e);
    double avg = 0.0;
    for (std::size_t q = 0; q < gauss.points.size(); ++q) {
      const Vec2 p = a + gauss.points[q] * (b - a);
      avg += gauss.weights[q] * n.dot(v.gradient(p));
    }
    c[off + e] = avg;
  }
  return MorleyFunction(space, std::move(c));
}

MorleyFunction project_boundary(MorleyFunction u) {
  const Mesh& mesh = u.space->mesh();
  const int off = u.space->edge_dof_offset();
  for (int e = 0; e < mesh.edge_count(); ++e)
    if (mesh.edges()[e].boundary) u.coeffs[off + e] = 0.0;
  return u;
}

double mean_value(const MorleyFunction& u) {
  const MorleySpace& space = *u.space;
  const Mesh& mesh = space.mesh();
  const TriQuadrature& rule = TriQuadrature::for_degree(2);
  double total = 0.0;
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto tri = mesh.element_vertices(e);
    const double area = mesh.element_area(e);
    double local = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q)
      local += rule.weights[q] * space.value(u.coeffs, e, barycentric_point(tri, rule.points[q]));
    total += area * local;
  }
  return total / mesh.domain().area();
}

}  // namespace chmorley
