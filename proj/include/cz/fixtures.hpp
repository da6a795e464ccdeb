#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cz/chart.hpp"

namespace cz {

enum class ChartVariant {
  standard,       ///< the fixture's natural parametrization
  isothermal,     ///< conformal for I
  ii_isothermal,  ///< conformal for II (K > 0 fixtures only)
  pole,           ///< conformal chart centred on an umbilic pole
};

std::string_view to_string(ChartVariant variant);

/// Names accepted by fixture().
const std::vector<std::string>& fixture_names();

/// Charts for the built-in test surfaces, all with analytic jets.
///
///   sphere        [R=1]             polar chart u in (0, pi) from the south pole
///   cylinder      [r=1]             (r cos u, r sin u, -v)
///   plane         []                (u, v, 0)
///   catenoid      [c=1]             (c cosh u cos v, c cosh u sin v, c u)
///   ellipsoid_rev [axial=2, equatorial=1]   latitude chart
///   torus_rev     [R=3, r=1]        tube angle u, both directions periodic
///
/// Orientation puts the unit normal on the concave side, so a sphere of
/// radius R has H = +1/R. Throws Errc::unknown_fixture for unknown names,
/// Errc::invalid_argument for bad parameters or a missing pole chart and
/// Errc::ii_not_definite when II is not definite on the surface.
Chart fixture(std::string_view name, const std::vector<double>& params = {},
              ChartVariant variant = ChartVariant::standard, int nu = 64, int nv = 64);

bool fixture_has_variant(std::string_view name, ChartVariant variant);

}  // namespace cz
