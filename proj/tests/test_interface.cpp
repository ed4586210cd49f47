#include <doctest.h>

#include <cmath>
#include <random>

#include "chmorley/interface.hpp"
#include "support.hpp"

using namespace chmorley;
using namespace chmorley::testing;

namespace {

// min |u| over every element containing the point: curve points on shared
// sub-edges are two-valued across the nonconforming element boundary
double max_abs_value_on_curve(const MorleyFunction& u, const InterfaceCurve& curve) {
  const Mesh& mesh = u.space->mesh();
  double worst = 0.0;
  for (const auto& line : curve.polylines) {
    for (const Vec2& p : line) {
      double best = 1e300;
      for (int e = 0; e < mesh.element_count(); ++e) {
        const auto l = barycentric_coordinates(mesh.element_vertices(e), p);
        if (l[0] >= -1e-9 && l[1] >= -1e-9 && l[2] >= -1e-9)
          best = std::min(best, std::fabs(u.space->value(u.coeffs, e, p)));
      }
      worst = std::max(worst, best);
    }
  }
  return worst;
}

double max_radius_deviation(const InterfaceCurve& curve, double radius) {
  double worst = 0.0;
  for (const auto& line : curve.polylines)
    for (const Vec2& p : line) worst = std::max(worst, std::fabs(p.norm() - radius));
  return worst;
}

InterfaceCurve circle_curve(double radius, int n, int r) {
  const Mesh mesh = Mesh::uniform(n);
  const MorleySpace space(mesh);
  const MorleyFunction u =
      interpolate(space, quadratic_field({-radius * radius, 0, 0, 1.0, 0, 1.0}));
  return extract_zero_set(u, r);
}

}  // namespace

TEST_CASE("zero set of the x field is the segment x = 0") {
  const Mesh mesh = Mesh::uniform(8);
  const MorleySpace space(mesh);
  const MorleyFunction u = interpolate(space, quadratic_field({0, 1, 0, 0, 0, 0}));
  const InterfaceCurve curve = extract_zero_set(u, 2);
  REQUIRE(!curve.empty());
  CHECK(curve.polylines.size() == 1);
  double worst = 0.0;
  for (const auto& line : curve.polylines)
    for (const Vec2& p : line) worst = std::max(worst, std::fabs(p.x()));
  CHECK(worst <= 1e-9);
}

TEST_CASE("zero set of a circle field is a closed curve on the circle") {
  const Mesh mesh = Mesh::uniform(64);
  const MorleySpace space(mesh);
  const MorleyFunction u = interpolate(space, quadratic_field({-0.25, 0, 0, 1.0, 0, 1.0}));
  const InterfaceCurve curve = extract_zero_set(u, 4);
  REQUIRE(curve.polylines.size() == 1);
  const auto& line = curve.polylines.front();
  CHECK((line.front() - line.back()).norm() <= 1e-8);  // closed
  CHECK(max_radius_deviation(curve, 0.5) <= 1e-3);
  CHECK(max_abs_value_on_curve(u, curve) <= 1e-9);
}

TEST_CASE("one-signed fields give an empty curve") {
  const Mesh mesh = Mesh::uniform(4);
  const MorleySpace space(mesh);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(space.dof_count());
  c.head(mesh.vertex_count()).setConstant(1.0);
  CHECK(extract_zero_set(MorleyFunction(space, c), 2).empty());
}

TEST_CASE("one-sided Hausdorff distance of a curve to itself is zero") {
  const InterfaceCurve curve = circle_curve(0.5, 16, 3);
  CHECK(hausdorff_one_sided(curve, curve) <= 1e-14);
}

TEST_CASE("concentric circles are 0.1 apart") {
  const InterfaceCurve inner = circle_curve(0.4, 64, 4);
  const InterfaceCurve outer = circle_curve(0.5, 64, 4);
  CHECK(hausdorff_one_sided(inner, outer) == doctest::Approx(0.1).epsilon(0.02));
  CHECK(std::fabs(hausdorff_one_sided(inner, outer) - 0.1) <= 2e-3);
  CHECK(std::fabs(hausdorff_symmetric(inner, outer) - 0.1) <= 2e-3);
}

TEST_CASE("hausdorff distance matches a dense sampling oracle on random polylines") {
  std::mt19937 rng(79);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  auto random_curve = [&](int npts) {
    InterfaceCurve c;
    std::vector<Vec2> line;
    for (int i = 0; i < npts; ++i) line.emplace_back(coord(rng), coord(rng));
    c.polylines.push_back(line);
    return c;
  };
  for (int trial = 0; trial < 5; ++trial) {
    const InterfaceCurve a = random_curve(17);
    const InterfaceCurve b = random_curve(23);
    // oracle: dense parameter sampling of every segment of b
    double worst = 0.0;
    for (const auto& line : a.polylines) {
      std::vector<Vec2> samples;
      for (std::size_t i = 0; i < line.size(); ++i) {
        samples.push_back(line[i]);
        if (i + 1 < line.size()) samples.push_back(0.5 * (line[i] + line[i + 1]));
      }
      for (const Vec2& p : samples) {
        double best = 1e300;
        for (const auto& bl : b.polylines)
          for (std::size_t i = 0; i + 1 < bl.size(); ++i)
            for (int s = 0; s <= 2000; ++s) {
              const Vec2 q = bl[i] + (s / 2000.0) * (bl[i + 1] - bl[i]);
              best = std::min(best, (p - q).norm());
            }
        worst = std::max(worst, best);
      }
    }
    CHECK(hausdorff_one_sided(a, b) == doctest::Approx(worst).epsilon(1e-5));
  }
  CHECK_THROWS_AS(hausdorff_one_sided(InterfaceCurve{}, random_curve(5)),
                  std::invalid_argument);
}

TEST_CASE("point-segment distance against direct minimization") {
  std::mt19937 rng(83);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec2 p(coord(rng), coord(rng)), a(coord(rng), coord(rng)), b(coord(rng), coord(rng));
    double best = 1e300;
    for (int s = 0; s <= 5000; ++s)
      best = std::min(best, (p - (a + (s / 5000.0) * (b - a))).norm());
    CHECK(point_segment_distance(p, a, b) <= best + 1e-12);
    CHECK(point_segment_distance(p, a, b) >= best - 1e-6);
  }
}

TEST_CASE("doubling the subdivision does not worsen extraction accuracy") {
  const double r4 = max_radius_deviation(circle_curve(0.5, 32, 4), 0.5);
  const double r8 = max_radius_deviation(circle_curve(0.5, 32, 8), 0.5);
  CHECK(r8 <= r4 + 1e-9);
}

TEST_CASE("extracted points sit on the zero set and signs flip across it") {
  const Mesh mesh = Mesh::uniform(16);
  const MorleySpace space(mesh);
  const MorleyFunction u = interpolate(space, two_circle_initial_condition(0.15));
  const InterfaceCurve curve = extract_zero_set(u, 4);
  REQUIRE(!curve.empty());
  CHECK(max_abs_value_on_curve(u, curve) <= 1e-9);

  // walking a short distance to both sides of a segment changes the sign
  int flips = 0, tested = 0;
  for (const auto& line : curve.polylines) {
    for (std::size_t i = 0; i + 1 < line.size() && tested < 50; ++i) {
      const Vec2 mid = 0.5 * (line[i] + line[i + 1]);
      const Vec2 t = (line[i + 1] - line[i]).normalized();
      const Vec2 n(-t.y(), t.x());
      const double step = 0.3 * mesh.h();
      const Vec2 left = mid + step * n, right = mid - step * n;
      if (!mesh.domain().contains(left) || !mesh.domain().contains(right)) continue;
      ++tested;
      if (u.evaluate(left).value * u.evaluate(right).value < 0.0) ++flips;
    }
  }
  REQUIRE(tested >= 30);
  CHECK(flips == tested);
}

TEST_CASE("even-in-y data yields mirror-symmetric curves") {
  // the criss-cross mesh is not mirror symmetric, so the deviation is pure
  // discretization error; it must be small and shrink under refinement
  auto mirror_deviation = [](int n) {
    const Mesh mesh = Mesh::uniform(n);
    const MorleySpace space(mesh);
    const MorleyFunction u = interpolate(space, two_circle_initial_condition(0.1));
    const InterfaceCurve curve = extract_zero_set(u, 4);
    REQUIRE(!curve.empty());
    InterfaceCurve mirrored;
    for (const auto& line : curve.polylines) {
      std::vector<Vec2> m;
      for (const Vec2& p : line) m.emplace_back(p.x(), -p.y());
      mirrored.polylines.push_back(std::move(m));
    }
    return hausdorff_symmetric(curve, mirrored);
  };
  const double coarse = mirror_deviation(32);
  const double fine = mirror_deviation(64);
  CHECK(fine < coarse);
  CHECK(fine <= 1e-3);
}

TEST_CASE("interface study: single run gives curves but no distances") {
  InterfaceStudyConfig config;
  config.runs = {{0.1, 8, 1e-5}};
  config.snapshot_times = {2e-5};
  config.ic = "twocircle";
  config.contour_subdivision = 2;
  const InterfaceStudyResult result = interface_study(config);
  CHECK(result.curves.size() == 1);
  CHECK(result.curves[0].size() == 1);
  CHECK(result.distances.empty());
  CHECK(result.max_mass_drift <= 1e-10);
}

TEST_CASE("interface study validates its configuration") {
  InterfaceStudyConfig config;
  config.runs = {{0.05, 8, 1e-5}, {0.1, 8, 1e-5}};  // not decreasing
  config.snapshot_times = {1e-5};
  CHECK_THROWS_AS(interface_study(config), std::invalid_argument);
  config.runs = {{0.1, 8, 1e-5}};
  config.snapshot_times = {};
  CHECK_THROWS_AS(interface_study(config), std::invalid_argument);
}
