#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

namespace chmorley {

using Vec2 = Eigen::Vector2d;

/// Axis-aligned rectangle [xmin,xmax] x [ymin,ymax].
struct Rect {
  double xmin = -1.0;
  double ymin = -1.0;
  double xmax = 1.0;
  double ymax = 1.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
  bool contains(const Vec2& p, double tol = 0.0) const {
    return p.x() >= xmin - tol && p.x() <= xmax + tol && p.y() >= ymin - tol &&
           p.y() <= ymax + tol;
  }
};

/// Directed mesh edge a -> b. The direction fixes the global edge normal
/// (the tangent rotated by +90 degrees); construction always directs edges
/// from the lower to the higher vertex index.
struct Edge {
  int a = -1;
  int b = -1;
  std::array<int, 2> elem = {-1, -1};  // adjacent elements; elem[1] < 0 on the boundary
  bool boundary = false;
};

struct PointLocation {
  int element = -1;
  std::array<double, 3> barycentric = {0.0, 0.0, 0.0};
};

/// Triangulation of an axis-aligned rectangle with full vertex/edge/element
/// incidence. Immutable after construction; concurrent reads are safe.
class Mesh {
 public:
  /// Uniform criss-cross triangulation: n x n squares, each split along the
  /// same up-right diagonal so that meshes for n and 2n are nested.
  static Mesh uniform(int n, const Rect& domain = Rect{});

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int element_count() const { return static_cast<int>(elements_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& elements() const { return elements_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Edge indices of element e; local edge k is opposite local vertex k.
  const std::array<int, 3>& element_edges(int e) const { return element_edges_[e]; }
  /// +1 where the global edge normal points out of element e, -1 otherwise.
  const std::array<int, 3>& element_edge_signs(int e) const { return edge_signs_[e]; }

  std::array<Vec2, 3> element_vertices(int e) const;
  Vec2 element_centroid(int e) const;
  double element_area(int e) const;      // signed; positive for the stored ccw order
  double element_diameter(int e) const;  // longest edge
  double element_incircle_diameter(int e) const;

  Vec2 edge_midpoint(int e) const;
  double edge_length(int e) const;
  /// Unit normal of the directed edge (tangent rotated by +90 degrees).
  Vec2 edge_normal(int e) const;

  /// Mesh size h: the largest element diameter.
  double h() const { return h_; }
  int subdivisions() const { return n_; }
  const Rect& domain() const { return domain_; }

  /// Element containing p with its barycentric coordinates. Points on shared
  /// edges or vertices resolve to the lowest containing element index.
  /// Throws std::out_of_range for points outside the closed domain.
  PointLocation locate(const Vec2& p) const;

  /// Plain-text dump: vertex, element and edge sections.
  void dump(std::ostream& os) const;

 private:
  Mesh() = default;
  void build_edges();

  std::vector<Vec2> vertices_;
  std::vector<std::array<int, 3>> elements_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> element_edges_;
  std::vector<std::array<int, 3>> edge_signs_;
  double h_ = 0.0;
  int n_ = 0;
  Rect domain_;
};

/// Barycentric coordinates of p with respect to a triangle.
std::array<double, 3> barycentric_coordinates(const std::array<Vec2, 3>& tri, const Vec2& p);

/// Physical point of barycentric coordinates in a triangle.
Vec2 barycentric_point(const std::array<Vec2, 3>& tri, const std::array<double, 3>& lambda);

}  // namespace chmorley
