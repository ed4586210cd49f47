#include <doctest.h>

#include <cmath>

#include "chmorley/quadrature.hpp"

using namespace chmorley;

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// integral of x^i y^j over the reference triangle {x,y >= 0, x+y <= 1}
double exact_monomial(int i, int j) {
  return factorial(i) * factorial(j) / factorial(i + j + 2);
}

double rule_monomial(const TriQuadrature& rule, int i, int j) {
  // barycentric (l0, l1, l2) maps to (x, y) = (l1, l2); reference area 1/2
  double s = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q)
    s += rule.weights[q] * std::pow(rule.points[q][1], i) * std::pow(rule.points[q][2], j);
  return 0.5 * s;
}

}  // namespace

TEST_CASE("triangle rules integrate all monomials up to their exactness") {
  for (int degree : {1, 2, 4, 6, 10}) {
    const TriQuadrature& rule = TriQuadrature::for_degree(degree);
    CHECK(rule.exactness == degree);

    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(std::fabs(wsum - 1.0) < 1e-14);

    for (int i = 0; i <= degree; ++i) {
      for (int j = 0; j + i <= degree; ++j) {
        const double exact = exact_monomial(i, j);
        const double approx = rule_monomial(rule, i, j);
        CHECK_MESSAGE(std::fabs(approx - exact) <= 1e-14 * std::fabs(exact),
                      "degree ", degree, " monomial x^", i, " y^", j);
      }
    }
  }
}

TEST_CASE("for_degree returns the smallest adequate rule") {
  CHECK(TriQuadrature::for_degree(0).size() == 1);
  CHECK(TriQuadrature::for_degree(3).exactness == 4);
  CHECK(TriQuadrature::for_degree(5).exactness == 6);
  CHECK(TriQuadrature::for_degree(7).exactness == 10);
  CHECK(TriQuadrature::for_degree(8).size() == 25);
  CHECK(TriQuadrature::for_degree(10).size() == 25);
  CHECK_THROWS(TriQuadrature::for_degree(11));
}

TEST_CASE("rule points lie inside the reference triangle") {
  for (int degree : {1, 2, 4, 6, 10}) {
    const TriQuadrature& rule = TriQuadrature::for_degree(degree);
    for (const auto& p : rule.points) {
      CHECK(std::fabs(p[0] + p[1] + p[2] - 1.0) < 1e-15);
      for (double l : p) {
        CHECK(l > 0.0);
        CHECK(l < 1.0);
      }
    }
  }
}

TEST_CASE("segment rule integrates quintics on [0,1]") {
  const SegmentQuadrature& rule = SegmentQuadrature::three_point();
  for (int d = 0; d <= 5; ++d) {
    double s = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q)
      s += rule.weights[q] * std::pow(rule.points[q], d);
    CHECK(std::fabs(s - 1.0 / (d + 1)) < 1e-15);
  }
}
