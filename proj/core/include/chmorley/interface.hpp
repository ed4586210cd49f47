#pragma once

#include <string>
#include <vector>

#include "chmorley/morley.hpp"
#include "chmorley/stepper.hpp"

namespace chmorley {

/// Zero level set of a Morley field as a set of polylines.
struct InterfaceCurve {
  std::vector<std::vector<Vec2>> polylines;

  bool empty() const { return polylines.empty(); }
  std::size_t point_count() const;
};

/// Marching-triangles contouring of the zero level set. Each element is split
/// into subdivision^2 congruent sub-triangles, the quadratic is evaluated
/// exactly at sub-vertices, and each crossing is polished by bisection along
/// the sub-edge to |u| <= 1e-10. Segments are chained into polylines by
/// endpoint matching (tolerance 1e-9). Empty result when u has one sign.
InterfaceCurve extract_zero_set(const MorleyFunction& u, int subdivision = 4);

/// max over sample points of a (polyline vertices and segment midpoints) of
/// the distance to the nearest segment of b. Throws on empty input.
double hausdorff_one_sided(const InterfaceCurve& a, const InterfaceCurve& b);
double hausdorff_symmetric(const InterfaceCurve& a, const InterfaceCurve& b);

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

/// One solver run of an interface study.
struct InterfaceRunSpec {
  double eps = 0.08;
  int subdivisions = 100;  // mesh n
  double dt = 1e-4;
};

struct InterfaceStudyConfig {
  std::vector<InterfaceRunSpec> runs;   // strictly decreasing eps
  std::vector<double> snapshot_times;
  std::string ic = "ellipse";
  int contour_subdivision = 4;
  SchemeParams scheme;  // eps/dt/t_end overridden per run
};

struct InterfaceDistanceRow {
  double time = 0.0;
  double eps_coarse = 0.0;  // larger eps of the pair
  double eps_fine = 0.0;
  double one_sided = 0.0;   // sup over the coarse curve of dist to the fine curve
  double symmetric = 0.0;
};

struct InterfaceStudyResult {
  // curves[i][j]: run i, snapshot time j
  std::vector<std::vector<InterfaceCurve>> curves;
  std::vector<InterfaceDistanceRow> distances;  // empty for a single-run study
  double max_mass_drift = 0.0;  // max |mean(u^n) - mean(u^0)| over all runs
};

/// Runs the solver once per eps, extracts curves at the snapshot times (time
/// interpolation for off-grid times), and measures one-sided Hausdorff
/// distances between consecutive-eps curves at each time. Solver failures
/// propagate tagged with the failing eps.
InterfaceStudyResult interface_study(const InterfaceStudyConfig& config);

}  // namespace chmorley
