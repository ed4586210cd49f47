#include "chmorley/interface.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "chmorley/fields.hpp"

namespace chmorley {

std::size_t InterfaceCurve::point_count() const {
  std::size_t n = 0;
  for (const auto& line : polylines) n += line.size();
  return n;
}

namespace {

constexpr double kCrossingTol = 1e-10;
constexpr double kChainTol = 1e-9;

// root of the restriction of the local quadratic to [a, b]; the endpoints
// carry opposite classes (pos_a for a, its negation for b)
Vec2 refine_crossing(const MorleySpace& space, const Eigen::VectorXd& coeffs, int element,
                     Vec2 a, double ua, bool pos_a, Vec2 b, double ub) {
  if (std::fabs(ua) <= kCrossingTol) return a;
  if (std::fabs(ub) <= kCrossingTol) return b;
  for (int i = 0; i < 80; ++i) {
    const Vec2 mid = 0.5 * (a + b);
    const double um = space.value(coeffs, element, mid);
    if (std::fabs(um) <= kCrossingTol) return mid;
    if ((um >= 0.0) == pos_a) {
      a = mid;
      ua = um;
    } else {
      b = mid;
      ub = um;
    }
  }
  return std::fabs(ua) < std::fabs(ub) ? a : b;
}

struct SegmentSoup {
  std::vector<std::pair<Vec2, Vec2>> segments;
};

void contour_subtriangle(const MorleySpace& space, const Eigen::VectorXd& coeffs, int element,
                         const std::array<Vec2, 3>& tri, const std::array<double, 3>& vals,
                         double snap, SegmentSoup& soup) {
  // classify with zero counted as positive; values within the evaluation
  // roundoff band snap to the positive class so that lattice points lying
  // exactly on the zero set classify deterministically
  std::array<bool, 3> pos;
  for (int i = 0; i < 3; ++i) pos[i] = vals[i] >= -snap;
  if (pos[0] == pos[1] && pos[1] == pos[2]) return;

  std::vector<Vec2> crossings;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    if (pos[i] != pos[j])
      crossings.push_back(refine_crossing(space, coeffs, element, tri[i], vals[i], pos[i],
                                          tri[j], vals[j]));
  }
  // a zero set passing exactly through a sub-vertex yields a point contact;
  // it carries no curve length and would only fragment the chaining
  if (crossings.size() == 2 && (crossings[0] - crossings[1]).norm() > 1e-11)
    soup.segments.emplace_back(crossings[0], crossings[1]);
}

std::vector<std::vector<Vec2>> chain_segments(SegmentSoup& soup) {
  std::vector<std::vector<Vec2>> polylines;
  std::vector<bool> used(soup.segments.size(), false);

  auto close_to = [](const Vec2& a, const Vec2& b) { return (a - b).norm() <= kChainTol; };

  for (std::size_t s = 0; s < soup.segments.size(); ++s) {
    if (used[s]) continue;
    used[s] = true;
    std::vector<Vec2> line = {soup.segments[s].first, soup.segments[s].second};
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t t = 0; t < soup.segments.size(); ++t) {
        if (used[t]) continue;
        const Vec2& a = soup.segments[t].first;
        const Vec2& b = soup.segments[t].second;
        if (close_to(line.back(), a)) {
          line.push_back(b);
        } else if (close_to(line.back(), b)) {
          line.push_back(a);
        } else if (close_to(line.front(), a)) {
          line.insert(line.begin(), b);
        } else if (close_to(line.front(), b)) {
          line.insert(line.begin(), a);
        } else {
          continue;
        }
        used[t] = true;
        grew = true;
      }
    }
    polylines.push_back(std::move(line));
  }
  return polylines;
}

}  // namespace

InterfaceCurve extract_zero_set(const MorleyFunction& u, int subdivision) {
  if (subdivision < 1) throw std::invalid_argument("extract_zero_set: subdivision must be >= 1");
  const MorleySpace& space = *u.space;
  const Mesh& mesh = space.mesh();
  const int r = subdivision;

  SegmentSoup soup;
  std::vector<std::vector<double>> vals(r + 1);
  std::vector<std::vector<Vec2>> pts(r + 1);
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto tri = mesh.element_vertices(e);
    const double snap = 1e-13 * (1.0 + space.gather(u.coeffs, e).lpNorm<Eigen::Infinity>());
    // barycentric lattice row i (from vertex 0), column j
    for (int i = 0; i <= r; ++i) {
      vals[i].assign(r - i + 1, 0.0);
      pts[i].assign(r - i + 1, Vec2::Zero());
      for (int j = 0; j <= r - i; ++j) {
        const double l1 = static_cast<double>(i) / r;
        const double l2 = static_cast<double>(j) / r;
        const Vec2 p = barycentric_point(tri, {1.0 - l1 - l2, l1, l2});
        pts[i][j] = p;
        vals[i][j] = space.value(u.coeffs, e, p);
      }
    }
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r - i; ++j) {
        contour_subtriangle(space, u.coeffs, e,
                            {pts[i][j], pts[i + 1][j], pts[i][j + 1]},
                            {vals[i][j], vals[i + 1][j], vals[i][j + 1]}, snap, soup);
        if (j + 1 <= r - i - 1)
          contour_subtriangle(space, u.coeffs, e,
                              {pts[i + 1][j], pts[i + 1][j + 1], pts[i][j + 1]},
                              {vals[i + 1][j], vals[i + 1][j + 1], vals[i][j + 1]}, snap, soup);
      }
    }
  }

  InterfaceCurve curve;
  curve.polylines = chain_segments(soup);
  return curve;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

namespace {

std::vector<Vec2> sample_points(const InterfaceCurve& c) {
  std::vector<Vec2> out;
  for (const auto& line : c.polylines) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      out.push_back(line[i]);
      if (i + 1 < line.size()) out.push_back(0.5 * (line[i] + line[i + 1]));
    }
  }
  return out;
}

}  // namespace

double hausdorff_one_sided(const InterfaceCurve& a, const InterfaceCurve& b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("hausdorff_one_sided: empty interface curve");
  double worst = 0.0;
  for (const Vec2& p : sample_points(a)) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& line : b.polylines) {
      if (line.size() == 1) best = std::min(best, (p - line[0]).norm());
      for (std::size_t i = 0; i + 1 < line.size(); ++i)
        best = std::min(best, point_segment_distance(p, line[i], line[i + 1]));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

double hausdorff_symmetric(const InterfaceCurve& a, const InterfaceCurve& b) {
  return std::max(hausdorff_one_sided(a, b), hausdorff_one_sided(b, a));
}

InterfaceStudyResult interface_study(const InterfaceStudyConfig& config) {
  if (config.runs.empty()) throw std::invalid_argument("interface_study: no runs");
  for (std::size_t i = 0; i + 1 < config.runs.size(); ++i)
    if (!(config.runs[i].eps > config.runs[i + 1].eps))
      throw std::invalid_argument("interface_study: eps values must be strictly decreasing");
  if (config.snapshot_times.empty())
    throw std::invalid_argument("interface_study: no snapshot times");

  const double t_max = *std::max_element(config.snapshot_times.begin(),
                                         config.snapshot_times.end());

  InterfaceStudyResult result;
  for (const InterfaceRunSpec& spec : config.runs) {
    SchemeParams params = config.scheme;
    params.eps = spec.eps;
    params.dt = spec.dt;
    params.t_end = std::max(t_max, spec.dt);

    const Mesh mesh = Mesh::uniform(spec.subdivisions, Rect{});
    const MorleySpace space(mesh);
    CahnHilliardStepper stepper(space, params);
    const ScalarField ic = make_initial_condition(config.ic, spec.eps);

    std::vector<InterfaceCurve> at_times;
    try {
      const Trajectory traj = stepper.run(ic, config.snapshot_times);
      for (double t : config.snapshot_times)
        at_times.push_back(extract_zero_set(traj.at(t), config.contour_subdivision));
      const double mass0 = traj.diagnostics.front().mass;
      for (const StepDiagnostics& d : traj.diagnostics)
        result.max_mass_drift = std::max(result.max_mass_drift, std::fabs(d.mass - mass0));
    } catch (const NewtonError& err) {
      throw std::runtime_error("interface_study: eps=" + std::to_string(spec.eps) + ": " +
                               err.what());
    }
    result.curves.push_back(std::move(at_times));
  }

  for (std::size_t i = 0; i + 1 < config.runs.size(); ++i) {
    for (std::size_t j = 0; j < config.snapshot_times.size(); ++j) {
      InterfaceDistanceRow row;
      row.time = config.snapshot_times[j];
      row.eps_coarse = config.runs[i].eps;
      row.eps_fine = config.runs[i + 1].eps;
      row.one_sided = hausdorff_one_sided(result.curves[i][j], result.curves[i + 1][j]);
      row.symmetric = hausdorff_symmetric(result.curves[i][j], result.curves[i + 1][j]);
      result.distances.push_back(row);
    }
  }
  return result;
}

}  // namespace chmorley
