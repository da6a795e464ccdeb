#include "doctest.h"

#include <cmath>
#include <numbers>

#include "cz/chart.hpp"
#include "cz/fixtures.hpp"

using namespace cz;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Symbolic reference for X = (cos u cos v, cos u sin v, 2 sin u) at (0.3, 0.7).
const Eigen::Vector3d kX(0.73068164993551240, 0.61544466355827350, 0.59104041332267915);
const Eigen::Vector3d kXu(-0.22602632124962301, -0.19037934406737268, 1.9106729782512120);
const Eigen::Vector3d kXv(-0.61544466355827350, 0.73068164993551240, 0.0);
const Eigen::Vector3d kXuu(-0.73068164993551240, -0.61544466355827350, -0.59104041332267915);
const Eigen::Vector3d kXuv(0.19037934406737268, -0.22602632124962301, 0.0);
const Eigen::Vector3d kXvv(-0.73068164993551240, -0.61544466355827350, 0.0);
const Eigen::Vector3d kN(-0.75585475427875020, -0.63664767684676737, -0.15285066568328782);

Chart without_jets(Chart chart) {
  chart.analytic_jets.reset();
  return chart;
}

}  // namespace

TEST_CASE("unit sphere jet on the equator") {
  const Chart sphere = fixture("sphere");
  const Jet2 jet = sample_jet(sphere, kPi / 2.0, 0.0);
  CHECK((jet.X - Eigen::Vector3d(1, 0, 0)).norm() < 1e-14);
  CHECK(jet.N.norm() == Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(std::abs(jet.N.x()) - 1.0) < 1e-14);
}

TEST_CASE("ellipsoid jets match the symbolic reference") {
  const Chart ellipsoid = fixture("ellipsoid_rev");
  for (const Jet2& jet : {sample_jet(ellipsoid, 0.3, 0.7), finite_difference_jet(ellipsoid, 0.3, 0.7, 1e-3)}) {
    CHECK((jet.X - kX).norm() < 1e-8);
    CHECK((jet.Xu - kXu).norm() < 1e-8);
    CHECK((jet.Xv - kXv).norm() < 1e-8);
    CHECK((jet.Xuu - kXuu).norm() < 1e-8);
    CHECK((jet.Xuv - kXuv).norm() < 1e-8);
    CHECK((jet.Xvv - kXvv).norm() < 1e-8);
    CHECK((jet.N - kN).norm() < 1e-8);
  }
}

TEST_CASE("fundamental forms of the ellipsoid") {
  const Chart ellipsoid = fixture("ellipsoid_rev");
  auto [I, II] = fundamental_forms(sample_jet(ellipsoid, 0.3, 0.7));
  CHECK(I.a11 == Approx(3.7380034223645174).epsilon(1e-12));
  CHECK(std::abs(I.a12) < 1e-14);
  CHECK(I.a22 == Approx(0.91266780745483915).epsilon(1e-12));
  CHECK(II.a11 == Approx(1.0344515348722108).epsilon(1e-12));
  CHECK(std::abs(II.a12) < 1e-14);
  CHECK(II.a22 == Approx(0.94411061425011367).epsilon(1e-12));

  auto [I0, II0] = fundamental_forms(sample_jet(ellipsoid, 0.0, 0.0));
  CHECK(I0.a11 == Approx(4.0));
  CHECK(I0.a22 == Approx(1.0));
  CHECK(II0.a11 == Approx(1.0));
  CHECK(II0.a22 == Approx(1.0));
}

TEST_CASE("finite-difference jets converge at fourth order") {
  const Chart chart = without_jets(fixture("torus_rev"));
  const Jet2 exact = sample_jet(fixture("torus_rev"), 0.4, 1.1);
  const double e1 = (finite_difference_jet(chart, 0.4, 1.1, 4e-2).Xuu - exact.Xuu).norm();
  const double e2 = (finite_difference_jet(chart, 0.4, 1.1, 2e-2).Xuu - exact.Xuu).norm();
  CHECK(e1 / e2 > 12.0);
}

TEST_CASE("degenerate immersion is rejected") {
  Chart chart;
  chart.name = "line";
  chart.domain = Domain2D{0, 1, 0, 1, false, false, 8, 8};
  chart.immersion = [](double u, double) { return Eigen::Vector3d(u, 0, 0); };
  CHECK_THROWS_AS(sample_jet(chart, 0.5, 0.5, 1e-3), Error);
  try {
    sample_jet(chart, 0.5, 0.5, 1e-3);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::degenerate_immersion);
  }
}

TEST_CASE("fixture catalogue") {
  SUBCASE("sphere of radius 2") {
    const FundamentalPair pair = sample_pair(fixture("sphere", {2.0}, ChartVariant::standard, 16, 16));
    const CurvatureData c = curvatures(pair);
    for (std::size_t k = 0; k < c.H.size(); ++k) {
      CHECK(c.H[k] == Approx(0.5).epsilon(1e-13));
      CHECK(c.K[k] == Approx(0.25).epsilon(1e-13));
    }
  }
  SUBCASE("cylinder is flat") {
    const CurvatureData c = curvatures(sample_pair(fixture("cylinder", {1.0}, ChartVariant::standard, 16, 16)));
    CHECK(max_abs(c.K) < 1e-15);
  }
  SUBCASE("torus curvature changes sign") {
    const Chart torus = fixture("torus_rev", {3.0, 1.0}, ChartVariant::standard, 32, 8);
    const CurvatureData c = curvatures(sample_pair(torus));
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < 32; ++i) {
      const double u = torus.domain.u(i);
      CHECK(c.K(i, 0) == Approx(std::cos(u) / (3.0 + std::cos(u))).epsilon(1e-12));
      lo = std::min(lo, c.K(i, 0));
      hi = std::max(hi, c.K(i, 0));
    }
    CHECK(lo < 0.0);
    CHECK(hi > 0.0);
  }
  SUBCASE("unknown names and bad parameters") {
    CHECK_THROWS_AS(fixture("klein_bottle"), Error);
    CHECK_THROWS_AS(fixture("sphere", {-1.0}), Error);
    CHECK_THROWS_AS(fixture("torus_rev", {1.0, 2.0}), Error);
    CHECK_THROWS_AS(fixture("cylinder", {}, ChartVariant::ii_isothermal), Error);
  }
}

TEST_CASE("isothermal variants are conformal") {
  for (const char* name : {"sphere", "cylinder", "plane", "catenoid", "ellipsoid_rev", "torus_rev"}) {
    CAPTURE(name);
    const Chart chart = fixture(name, {}, ChartVariant::isothermal, 32, 32);
    CHECK(chart.isothermal);
    CHECK(isothermal_defect(sample_pair(chart)) < 1e-8);
  }
}

TEST_CASE("gauss map metric of the unit sphere is the first form") {
  const Chart sphere = fixture("sphere", {}, ChartVariant::standard, 12, 12);
  const FundamentalPair pair = sample_pair(sphere);
  CHECK(max_abs_difference(gauss_map_metric(sphere, 1e-3), pair.I) < 1e-10);
}
