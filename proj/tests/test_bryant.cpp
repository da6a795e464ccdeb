#include "doctest.h"

#include <cmath>
#include <numbers>

#include "cz/bryant.hpp"
#include "cz/codazzi.hpp"
#include "cz/fixtures.hpp"
#include "cz/hopf.hpp"
#include "cz/rotgen.hpp"

using namespace cz;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

std::shared_ptr<const WeingartenProfile> linear_profile() {
  return std::make_shared<const WeingartenProfile>(WeingartenProfile::linear(1.0, 0.25));
}

// Rotational special Weingarten surface for f(x) = 1 + x/4 away from umbilics.
RotationalSurface linear_surface() {
  IntegrationOptions options;
  options.s_max = 1.0;
  options.close_at_axis = false;
  return integrate_profile(linear_profile(), ProfileState{0.0, 0.5, 0.0, kPi / 2.0}, options);
}

SymmetricFormField flat(const Domain2D& d) { return {ScalarField(d, 1.0), ScalarField(d, 0.0), ScalarField(d, 1.0)}; }

double max_coefficient_diff(const SymmetricFormField& a, const SymmetricFormField& b) { return max_abs_difference(a, b); }

}  // namespace

TEST_CASE("transform of a generated special Weingarten surface") {
  const auto profile = linear_profile();
  const FundamentalPair pair = sample_pair(as_chart(linear_surface(), ChartMode::arc_length, 0.0, 1.0, 64, 64));
  const CurvatureData curv = curvatures(pair);
  CHECK(max_abs(weingarten_residual(pair, *profile)) < 1e-8);

  const PhiField phi = profile_phi_field(pair, profile);
  const BryantPair ab = bryant_transform(pair, phi);
  const CurvatureData cab = curvatures(FundamentalPair{ab.A, ab.B});
  CHECK(max_abs(cab.H) < 1e-8);
  CHECK(max_abs(zip(cab.K, curv.t, [](double k, double t) { return k + t * t; })) < 1e-6);

  const OneFormField closure = closure_residual(pair, phi);
  CHECK(max_abs(closure.du) < 1e-5);
  CHECK(max_abs(closure.dv) < 1e-5);
  CHECK(max_abs(codazzi_residual(FundamentalPair{ab.A, ab.B})) < 1e-5);

  SUBCASE("doubled phi is detected") {
    const PhiField bad = phi.scaled(2.0);
    const OneFormField c2 = closure_residual(pair, bad);
    const BryantPair ab2 = bryant_transform(pair, bad);
    CHECK(std::max(max_abs(c2.du), max_abs(c2.dv)) > 1e-3);
    CHECK(max_abs(codazzi_residual(FundamentalPair{ab2.A, ab2.B})) > 1e-3);
  }
  SUBCASE("inverse") {
    const FundamentalPair back = recover_from_forms(ab.A, ab.B, phi, *profile);
    CHECK(max_coefficient_diff(back.I, pair.I) < 1e-10);
    CHECK(max_coefficient_diff(back.II, pair.II) < 1e-10);
  }
  SUBCASE("flat metric and completeness") {
    const SymmetricFormField g0 = flat_metric(pair, ab.A);
    CHECK(max_abs(gauss_curvature(g0)) < 1e-3);
    const CompletenessReport comp = completeness_bound_check(pair, ab.A, phi, 0.09);
    CHECK(comp.all_semidefinite);
    CHECK(comp.min_eigenvalue >= -1e-10);
    CHECK(comp.c2 > 0.0);
  }
}

TEST_CASE("constant mean curvature reduces to the traceless form") {
  const auto profile = std::make_shared<const WeingartenProfile>(WeingartenProfile::constant(0.5));
  const FundamentalPair pair = sample_pair(fixture("cylinder", {1.0}, ChartVariant::standard, 32, 32));
  const PhiField phi = profile_phi_field(pair, profile);
  CHECK(max_abs(phi.phi) == 0.0);
  const BryantPair ab = bryant_transform(pair, phi);
  CHECK(max_abs_difference(ab.A, pair.I) == 0.0);
  CHECK(max_abs_difference(ab.B, traceless_part(pair)) == 0.0);
  const OneFormField c = closure_residual(pair, phi);
  CHECK(max_abs(c.du) + max_abs(c.dv) < 1e-13);
}

TEST_CASE("Weingarten residual") {
  const FundamentalPair sphere = sample_pair(fixture("sphere", {2.0}, ChartVariant::standard, 16, 16));
  CHECK(max_abs(weingarten_residual(sphere, WeingartenProfile::constant(0.5))) < 1e-13);
  CHECK(max_abs(weingarten_residual(sphere, WeingartenProfile::constant(0.7))) == Approx(0.2));
}

TEST_CASE("recovery from A and Q") {
  const Domain2D d{-1, 1, -1, 1, false, false, 64, 64};
  const auto profile = linear_profile();
  SUBCASE("Q = 0 gives the totally umbilical pair") {
    const FundamentalPair pair = recover_pair(flat(d), ComplexField(d), profile);
    CHECK(max_abs_difference(pair.I, flat(d)) == 0.0);
    CHECK(max_abs_difference(pair.II, flat(d)) == 0.0);
  }
  SUBCASE("flat A with constant Q") {
    const FundamentalPair pair = recover_pair(flat(d), ComplexField(d, Complex(0.3, 0.1)), profile);
    CHECK(max_abs(codazzi_residual(pair)) < 1e-5);
    CHECK(max_abs(weingarten_residual(pair, *profile)) < 1e-8);
    // t = |Q| / lambda_A with lambda_A = 1/2.
    CHECK(max_abs(map(curvatures(pair).t, [](double t) { return t - 2.0 * std::abs(Complex(0.3, 0.1)); })) < 1e-12);
  }
  SUBCASE("roundtrip through an A-isothermal chart") {
    const Chart chart = as_chart(linear_surface(), ChartMode::bryant_isothermal, 0.0, 1.0, 64, 64);
    const FundamentalPair pair = sample_pair(chart);
    const BryantPair ab = bryant_transform(pair, profile_phi_field(pair, profile));
    const HopfField h = hopf_coefficient(FundamentalPair{ab.A, ab.B});
    CHECK(max_abs(h.H) < 1e-8);
    CHECK(max_abs(d_dzbar(h.Q)) < 1e-5);
    const FundamentalPair back = recover_pair(ab.A, h.Q, profile);
    CHECK(max_abs_difference(back.I, pair.I) < 1e-6);
    CHECK(max_abs_difference(back.II, pair.II) < 1e-6);
  }
  SUBCASE("profile extent") {
    const auto table = std::make_shared<const WeingartenProfile>(
        WeingartenProfile::tabulated({0.0, 0.01}, {1.0, 1.0025}, {0.25, 0.25}));
    CHECK_THROWS_AS(recover_pair(flat(d), ComplexField(d, Complex(1.0, 0.0)), table), Error);
  }
}

TEST_CASE("flat metric needs umbilic-free input") {
  const FundamentalPair sphere = sample_pair(fixture("sphere", {}, ChartVariant::standard, 16, 16));
  try {
    flat_metric(sphere, sphere.I);
    FAIL("expected umbilic_region");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::umbilic_region);
  }
}

TEST_CASE("Weingarten condition") {
  const WeingartenFunction cmc{[](double, double) { return 1.0; }, [](double, double) { return 0.0; }};
  const WeingartenFunction constant_k{[](double, double) { return 0.0; }, [](double, double) { return 1.0; }};
  for (double t : {0.0, 0.4, 3.0}) {
    CHECK(weingarten_condition(cmc, t) == 1.0);
    CHECK(weingarten_condition(constant_k, t) == Approx(2.0 * t));
  }
}
