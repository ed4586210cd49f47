#include "chmorley/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

namespace chmorley {

namespace {

double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x()));
}

// Barycentric tolerance for containment tests; shared with the brute-force
// oracle so both resolve edge points identically.
constexpr double kBaryTol = 1e-12;

}  // namespace

std::array<double, 3> barycentric_coordinates(const std::array<Vec2, 3>& tri, const Vec2& p) {
  const double area = signed_area(tri[0], tri[1], tri[2]);
  return {signed_area(p, tri[1], tri[2]) / area, signed_area(tri[0], p, tri[2]) / area,
          signed_area(tri[0], tri[1], p) / area};
}

Vec2 barycentric_point(const std::array<Vec2, 3>& tri, const std::array<double, 3>& lambda) {
  return lambda[0] * tri[0] + lambda[1] * tri[1] + lambda[2] * tri[2];
}

Mesh Mesh::uniform(int n, const Rect& domain) {
  if (n < 1) throw std::invalid_argument("Mesh::uniform: subdivisions must be >= 1");
  if (!(domain.width() > 0.0) || !(domain.height() > 0.0))
    throw std::invalid_argument("Mesh::uniform: degenerate rectangle");

  Mesh mesh;
  mesh.n_ = n;
  mesh.domain_ = domain;

  const double dx = domain.width() / n;
  const double dy = domain.height() / n;

  mesh.vertices_.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
  for (int iy = 0; iy <= n; ++iy)
    for (int ix = 0; ix <= n; ++ix)
      mesh.vertices_.emplace_back(domain.xmin + ix * dx, domain.ymin + iy * dy);

  auto vid = [n](int ix, int iy) { return iy * (n + 1) + ix; };

  mesh.elements_.reserve(static_cast<std::size_t>(2) * n * n);
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const int v00 = vid(ix, iy);
      const int v10 = vid(ix + 1, iy);
      const int v01 = vid(ix, iy + 1);
      const int v11 = vid(ix + 1, iy + 1);
      // split along the v00 -> v11 diagonal, both triangles ccw
      mesh.elements_.push_back({v00, v10, v11});
      mesh.elements_.push_back({v00, v11, v01});
    }
  }

  mesh.build_edges();
  mesh.h_ = std::hypot(dx, dy);
  return mesh;
}

void Mesh::build_edges() {
  element_edges_.assign(elements_.size(), {-1, -1, -1});
  edge_signs_.assign(elements_.size(), {0, 0, 0});

  std::map<std::pair<int, int>, int> index;
  for (int e = 0; e < element_count(); ++e) {
    const auto& el = elements_[e];
    if (signed_area(vertices_[el[0]], vertices_[el[1]], vertices_[el[2]]) <= 0.0)
      throw std::invalid_argument("Mesh: element with non-positive area");
    for (int k = 0; k < 3; ++k) {
      // local edge k is opposite local vertex k
      const int p = el[(k + 1) % 3];
      const int q = el[(k + 2) % 3];
      const auto key = std::minmax(p, q);
      auto it = index.find(key);
      if (it == index.end()) {
        Edge edge;
        edge.a = key.first;
        edge.b = key.second;
        edge.elem[0] = e;
        it = index.emplace(key, static_cast<int>(edges_.size())).first;
        edges_.push_back(edge);
      } else {
        Edge& edge = edges_[it->second];
        if (edge.elem[1] >= 0) throw std::invalid_argument("Mesh: edge with >2 elements");
        edge.elem[1] = e;
      }
      element_edges_[e][k] = it->second;
    }
  }
  for (Edge& edge : edges_) edge.boundary = (edge.elem[1] < 0);

  // sign: does the global normal point out of the element?
  for (int e = 0; e < element_count(); ++e) {
    const auto& el = elements_[e];
    for (int k = 0; k < 3; ++k) {
      const Vec2 p = vertices_[el[(k + 1) % 3]];
      const Vec2 q = vertices_[el[(k + 2) % 3]];
      const Vec2 t = q - p;                     // ccw traversal direction
      const Vec2 outward(t.y(), -t.x());        // rotate by -90 degrees
      const Vec2 global = edge_normal(element_edges_[e][k]);
      edge_signs_[e][k] = (outward.dot(global) > 0.0) ? 1 : -1;
    }
  }

  const int euler = vertex_count() - edge_count() + element_count();
  if (euler != 1) throw std::logic_error("Mesh: Euler relation V - E + T = 1 violated");
}

std::array<Vec2, 3> Mesh::element_vertices(int e) const {
  const auto& el = elements_[e];
  return {vertices_[el[0]], vertices_[el[1]], vertices_[el[2]]};
}

Vec2 Mesh::element_centroid(int e) const {
  const auto tri = element_vertices(e);
  return (tri[0] + tri[1] + tri[2]) / 3.0;
}

double Mesh::element_area(int e) const {
  const auto tri = element_vertices(e);
  return signed_area(tri[0], tri[1], tri[2]);
}

double Mesh::element_diameter(int e) const {
  const auto tri = element_vertices(e);
  return std::max({(tri[1] - tri[0]).norm(), (tri[2] - tri[1]).norm(), (tri[0] - tri[2]).norm()});
}

double Mesh::element_incircle_diameter(int e) const {
  const auto tri = element_vertices(e);
  const double per =
      (tri[1] - tri[0]).norm() + (tri[2] - tri[1]).norm() + (tri[0] - tri[2]).norm();
  return 4.0 * element_area(e) / per;
}

Vec2 Mesh::edge_midpoint(int e) const {
  return 0.5 * (vertices_[edges_[e].a] + vertices_[edges_[e].b]);
}

double Mesh::edge_length(int e) const {
  return (vertices_[edges_[e].b] - vertices_[edges_[e].a]).norm();
}

Vec2 Mesh::edge_normal(int e) const {
  const Vec2 t = (vertices_[edges_[e].b] - vertices_[edges_[e].a]).normalized();
  return Vec2(-t.y(), t.x());
}

PointLocation Mesh::locate(const Vec2& p) const {
  const double tol = 1e-10 * std::max(domain_.width(), domain_.height());
  if (!domain_.contains(p, tol))
    throw std::out_of_range("Mesh::locate: point outside the domain");

  const double dx = domain_.width() / n_;
  const double dy = domain_.height() / n_;
  auto cell_range = [&](double coord, double origin, double step) {
    int lo = static_cast<int>(std::floor((coord - tol - origin) / step));
    int hi = static_cast<int>(std::floor((coord + tol - origin) / step));
    lo = std::clamp(lo, 0, n_ - 1);
    hi = std::clamp(hi, 0, n_ - 1);
    return std::pair{lo, hi};
  };
  const auto [ix0, ix1] = cell_range(p.x(), domain_.xmin, dx);
  const auto [iy0, iy1] = cell_range(p.y(), domain_.ymin, dy);

  std::vector<int> candidates;
  for (int iy = iy0; iy <= iy1; ++iy)
    for (int ix = ix0; ix <= ix1; ++ix) {
      const int cell = iy * n_ + ix;
      candidates.push_back(2 * cell);
      candidates.push_back(2 * cell + 1);
    }
  std::sort(candidates.begin(), candidates.end());

  for (int e : candidates) {
    auto lambda = barycentric_coordinates(element_vertices(e), p);
    if (lambda[0] >= -kBaryTol && lambda[1] >= -kBaryTol && lambda[2] >= -kBaryTol) {
      double sum = 0.0;
      for (double& l : lambda) {
        l = std::clamp(l, 0.0, 1.0);
        sum += l;
      }
      for (double& l : lambda) l /= sum;
      return {e, lambda};
    }
  }
  throw std::out_of_range("Mesh::locate: no containing element found");
}

void Mesh::dump(std::ostream& os) const {
  os << "vertices " << vertex_count() << "\n";
  os.precision(17);
  for (const Vec2& v : vertices_) os << v.x() << " " << v.y() << "\n";
  os << "elements " << element_count() << "\n";
  for (const auto& el : elements_) os << el[0] << " " << el[1] << " " << el[2] << "\n";
  os << "edges " << edge_count() << "\n";
  for (const Edge& e : edges_) os << e.a << " " << e.b << " " << (e.boundary ? 1 : 0) << "\n";
}

}  // namespace chmorley
