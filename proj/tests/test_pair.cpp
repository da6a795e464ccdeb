#include "doctest.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "cz/chart.hpp"
#include "cz/fixtures.hpp"
#include "cz/pair.hpp"

using namespace cz;
using doctest::Approx;

namespace {

FundamentalPair constant_pair(SymmetricForm I, SymmetricForm II, int n = 4) {
  const Domain2D dom{0, 1, 0, 1, false, false, n, n};
  FundamentalPair pair{SymmetricFormField(dom), SymmetricFormField(dom)};
  for (std::size_t k = 0; k < dom.size(); ++k) {
    pair.I.set(k, I);
    pair.II.set(k, II);
  }
  return pair;
}

FundamentalPair fixture_pair(const char* name, std::vector<double> params = {}, int n = 24) {
  return sample_pair(fixture(name, params, ChartVariant::standard, n, n));
}

}  // namespace

TEST_CASE("shape operator") {
  SUBCASE("orthonormal basis") {
    const Eigen::Matrix2d S = shape_operator(SymmetricForm{1, 0, 1}, SymmetricForm{2, 0, 3});
    CHECK((S - Eigen::Vector2d(2, 3).asDiagonal().toDenseMatrix()).norm() < 1e-15);
  }
  SUBCASE("unit sphere") {
    const FundamentalPair pair = fixture_pair("sphere");
    for (int j = 0; j < 24; j += 5)
      for (int i = 0; i < 24; i += 5) CHECK((shape_operator(pair, i, j) - Eigen::Matrix2d::Identity()).norm() < 1e-13);
  }
  SUBCASE("cylinder") {
    const FundamentalPair pair = fixture_pair("cylinder");
    Eigen::Vector2d ev = shape_operator(pair, 3, 7).eigenvalues().real();
    std::sort(ev.data(), ev.data() + 2);
    CHECK(std::abs(ev[0]) < 1e-15);
    CHECK(ev[1] == Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("singular metric") {
    CHECK_THROWS_AS(shape_operator(SymmetricForm{1, 1, 1}, SymmetricForm{1, 0, 1}), Error);
  }
}

TEST_CASE("curvatures") {
  SUBCASE("sphere of radius 2") {
    const CurvatureData c = curvatures(fixture_pair("sphere", {2.0}));
    for (std::size_t k = 0; k < c.H.size(); ++k) {
      CHECK(c.H[k] == Approx(0.5).epsilon(1e-13));
      CHECK(c.K[k] == Approx(0.25).epsilon(1e-13));
      CHECK(c.t[k] < 1e-7);
    }
  }
  SUBCASE("cylinder") {
    const CurvatureData c = curvatures(fixture_pair("cylinder"));
    for (std::size_t k = 0; k < c.H.size(); ++k) {
      CHECK(c.H[k] == Approx(0.5).epsilon(1e-14));
      CHECK(std::abs(c.K[k]) < 1e-15);
      CHECK(c.t[k] == Approx(0.5).epsilon(1e-14));
      CHECK(c.k1[k] == Approx(1.0).epsilon(1e-14));
    }
  }
  SUBCASE("ellipsoid against the symbolic reference") {
    const Chart chart = fixture("ellipsoid_rev");
    auto [I, II] = fundamental_forms(sample_jet(chart, 0.0, 0.0));
    CHECK(mean_curvature(I, II) == Approx(0.625).epsilon(1e-12));
    CHECK(extrinsic_curvature(I, II) == Approx(0.25).epsilon(1e-12));
    auto [I1, II1] = fundamental_forms(sample_jet(chart, 0.3, 0.7));
    CHECK(mean_curvature(I1, II1) == Approx(0.65559529496022097).epsilon(1e-10));
    CHECK(extrinsic_curvature(I1, II1) == Approx(0.28627314025372797).epsilon(1e-10));
  }
  SUBCASE("clamp policy") {
    const CurvatureData c = curvatures(constant_pair({1, 0, 1}, {1, 1e-7, 1}));
    CHECK(c.t[0] == Approx(1e-7));
    CHECK(curvatures(constant_pair({1, 0, 1}, {1, 0, 1})).t[0] == 0.0);
    // Indefinite metric: S = [[0, 1], [-1, 0]] has H^2 - K = -1.
    try {
      curvatures(constant_pair({1, 0, -1}, {0, 1, 0}));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK((e.code() == Errc::clamp_violation || e.code() == Errc::non_riemannian));
    }
  }
}

TEST_CASE("umbilic mask") {
  SUBCASE("sphere all true, cylinder all false") {
    const Mask sphere = umbilic_mask(fixture_pair("sphere"));
    const Mask cylinder = umbilic_mask(fixture_pair("cylinder"));
    for (std::uint8_t m : sphere.values()) CHECK(m == 1);
    for (std::uint8_t m : cylinder.values()) CHECK(m == 0);
  }
  SUBCASE("ellipsoid umbilics sit near the poles and shrink with the tolerance") {
    const Chart chart = fixture("ellipsoid_rev", {}, ChartVariant::standard, 64, 8);
    const FundamentalPair pair = sample_pair(chart);
    std::size_t previous = pair.domain().size() + 1;
    for (double tol : {1e-2, 1e-4, 1e-6}) {
      const Mask m = umbilic_mask(pair, tol);
      std::size_t count = 0;
      for (int j = 0; j < 8; ++j)
        for (int i = 0; i < 64; ++i) {
          if (!m(i, j)) continue;
          ++count;
          CHECK(std::abs(chart.domain.u(i)) > 1.0);
        }
      CHECK(count <= previous);
      previous = count;
    }
  }
}

TEST_CASE("traceless part") {
  SUBCASE("sphere") { CHECK(max_abs(traceless_part(fixture_pair("sphere")).a11) < 1e-14); }
  SUBCASE("cylinder eigenvalues") {
    const FundamentalPair pair = fixture_pair("cylinder");
    const SymmetricFormField tr = traceless_part(pair);
    Eigen::Vector2d ev = shape_operator(pair.I.at(5), tr.at(5)).eigenvalues().real();
    std::sort(ev.data(), ev.data() + 2);
    CHECK(ev[0] == Approx(-0.5).epsilon(1e-14));
    CHECK(ev[1] == Approx(0.5).epsilon(1e-14));
  }
  SUBCASE("catenoid is minimal") {
    const FundamentalPair pair = fixture_pair("catenoid");
    CHECK(max_abs_difference(traceless_part(pair), pair.II) < 1e-13);
  }
}

TEST_CASE("third fundamental form") {
  SUBCASE("unit sphere") {
    const FundamentalPair pair = fixture_pair("sphere");
    CHECK(max_abs_difference(third_form(pair), pair.I) < 1e-13);
  }
  SUBCASE("plane") {
    const SymmetricFormField iii = third_form(fixture_pair("plane"));
    CHECK(max_abs(iii.a11) + max_abs(iii.a12) + max_abs(iii.a22) == 0.0);
  }
  SUBCASE("ellipsoid against the Gauss map") {
    const Chart chart = fixture("ellipsoid_rev", {}, ChartVariant::standard, 32, 32);
    CHECK(max_abs_difference(third_form(sample_pair(chart)), gauss_map_metric(chart, 2e-3)) < 1e-6);
    auto [I, II] = fundamental_forms(sample_jet(chart, 0.3, 0.7));
    const double H = mean_curvature(I, II), K = extrinsic_curvature(I, II);
    CHECK(-K * I.a11 + 2 * H * II.a11 == Approx(0.28627314025372797).epsilon(1e-10));
    CHECK(-K * I.a22 + 2 * H * II.a22 == Approx(0.97663667400017578).epsilon(1e-10));
  }
}

TEST_CASE("form field algebra") {
  const FundamentalPair pair = fixture_pair("torus_rev", {}, 8);
  CHECK(max_abs_difference(scaled(2.0, pair.I), combine(ScalarField(pair.domain(), 1.0), pair.I,
                                                         ScalarField(pair.domain(), 1.0), pair.I)) == 0.0);
  CHECK_NOTHROW(pair.validate());
  FundamentalPair broken = pair;
  broken.I.a11[3] = -1.0;
  CHECK_THROWS_AS(broken.validate(), Error);
}
