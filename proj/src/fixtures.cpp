#include "cz/fixtures.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include "cz/revolution.hpp"

namespace cz {

namespace {

constexpr double kPi = std::numbers::pi;

double param(const std::vector<double>& p, std::size_t k, double fallback) { return k < p.size() ? p[k] : fallback; }

void require(bool ok, std::string_view fixture_name, const char* what) {
  if (!ok) throw Error(Errc::invalid_argument, std::string(fixture_name) + ": " + what);
}

Domain2D periodic_v(double u_min, double u_max, int nu, int nv) {
  return Domain2D{u_min, u_max, 0.0, 2.0 * kPi, false, true, nu, nv};
}

Chart reparametrized(std::string name, Meridian meridian, std::function<double(double)> speed, double u_lo,
                     double u_hi, double u_ref, bool u_periodic, int nu, int nv, bool isothermal) {
  auto rep = std::make_shared<MeridianReparametrization>(std::move(meridian), std::move(speed), u_lo, u_hi, u_ref);
  Domain2D dom{rep->sigma_lo(), rep->sigma_hi(), 0.0, 2.0 * kPi, u_periodic, true, nu, nv};
  return revolution_chart(std::move(name), [rep](double s) { return rep->at_sigma(s); }, dom, isothermal);
}

Chart pole_chart(std::string name, Meridian meridian, double u_pole, double direction, double cap, int n) {
  const double u_lo = direction > 0 ? u_pole + 1e-5 : u_pole - cap * 2.0;
  const double u_hi = direction > 0 ? u_pole + cap * 2.0 : u_pole - 1e-5;
  auto speed = [meridian](double u) { return first_form_speed(meridian(u)); };
  auto rep =
      std::make_shared<MeridianReparametrization>(meridian, speed, u_lo, u_hi, u_pole + direction * cap, 1e-6);
  // |zeta| = 1 corresponds to the meridian parameter u_pole + direction * cap.
  const double shift = 0.0;
  const int even_n = n % 2 == 0 ? n : n + 1;
  return revolution_pole_chart(std::move(name), rep, shift, 0.5, even_n);
}

Chart make_sphere(const std::vector<double>& p, ChartVariant variant, int nu, int nv) {
  const double R = param(p, 0, 1.0);
  require(R > 0.0, "sphere", "radius must be positive");
  auto polar = [R](double u) {
    const double s = std::sin(u), c = std::cos(u);
    return MeridianPoint{R * s, -R * c, R * c, R * s, -R * s, R * c};
  };
  switch (variant) {
    case ChartVariant::standard:
      return revolution_chart("sphere", polar, periodic_v(0.35, kPi - 0.35, nu, nv), false);
    case ChartVariant::isothermal:
    case ChartVariant::ii_isothermal: {
      // Mercator-type coordinate: sin u = sech sigma.
      auto mercator = [R](double s) {
        const double sech = 1.0 / std::cosh(s), th = std::tanh(s);
        return MeridianPoint{R * sech, R * th, -R * sech * th, R * sech * sech, R * sech * (th * th - sech * sech),
                             -2.0 * R * sech * sech * th};
      };
      return revolution_chart("sphere", mercator, periodic_v(-1.2, 1.2, nu, nv), true);
    }
    case ChartVariant::pole:
      return pole_chart("sphere", polar, 0.0, 1.0, 0.6, nu);
  }
  throw Error(Errc::invalid_argument, "sphere: unsupported chart variant");
}

Chart make_cylinder(const std::vector<double>& p, ChartVariant variant, int nu, int nv) {
  const double r = param(p, 0, 1.0);
  require(r > 0.0, "cylinder", "radius must be positive");
  if (variant == ChartVariant::ii_isothermal) throw Error(Errc::ii_not_definite, "cylinder has K = 0");
  if (variant == ChartVariant::pole) throw Error(Errc::invalid_argument, "cylinder has no umbilic pole");
  // The isothermal variant scales the axial coordinate by r.
  const double sv = variant == ChartVariant::isothermal ? r : 1.0;
  Chart chart;
  chart.name = "cylinder";
  chart.domain = Domain2D{0.0, 2.0 * kPi, -1.0, 1.0, true, false, nu, nv};
  chart.isothermal = std::abs(sv - r) <= 1e-15 * r;
  chart.immersion = [r, sv](double u, double v) { return Eigen::Vector3d(r * std::cos(u), r * std::sin(u), -sv * v); };
  chart.analytic_jets = [r, sv](double u, double v) {
    const double c = std::cos(u), s = std::sin(u);
    Jet2 jet;
    jet.X = {r * c, r * s, -sv * v};
    jet.Xu = {-r * s, r * c, 0.0};
    jet.Xv = {0.0, 0.0, -sv};
    jet.Xuu = {-r * c, -r * s, 0.0};
    return jet;
  };
  return chart;
}

Chart make_plane(ChartVariant variant, int nu, int nv) {
  if (variant == ChartVariant::ii_isothermal) throw Error(Errc::ii_not_definite, "plane has II = 0");
  if (variant == ChartVariant::pole) throw Error(Errc::invalid_argument, "plane has no pole chart");
  Chart chart;
  chart.name = "plane";
  chart.domain = Domain2D{-1.0, 1.0, -1.0, 1.0, false, false, nu, nv};
  chart.isothermal = true;
  chart.immersion = [](double u, double v) { return Eigen::Vector3d(u, v, 0.0); };
  chart.analytic_jets = [](double u, double v) {
    Jet2 jet;
    jet.X = {u, v, 0.0};
    jet.Xu = {1.0, 0.0, 0.0};
    jet.Xv = {0.0, 1.0, 0.0};
    return jet;
  };
  return chart;
}

Chart make_catenoid(const std::vector<double>& p, ChartVariant variant, int nu, int nv) {
  const double c = param(p, 0, 1.0);
  require(c > 0.0, "catenoid", "neck radius must be positive");
  if (variant == ChartVariant::ii_isothermal) throw Error(Errc::ii_not_definite, "catenoid has K < 0");
  if (variant == ChartVariant::pole) throw Error(Errc::invalid_argument, "catenoid has no pole");
  auto meridian = [c](double u) {
    const double ch = std::cosh(u), sh = std::sinh(u);
    return MeridianPoint{c * ch, c * u, c * sh, c, c * ch, 0.0};
  };
  return revolution_chart("catenoid", meridian, periodic_v(-1.0, 1.0, nu, nv), true);
}

Chart make_ellipsoid(const std::vector<double>& p, ChartVariant variant, int nu, int nv) {
  const double axial = param(p, 0, 2.0);
  const double equatorial = param(p, 1, 1.0);
  require(axial > 0.0 && equatorial > 0.0, "ellipsoid_rev", "semi-axes must be positive");
  auto meridian = [axial, equatorial](double u) {
    const double s = std::sin(u), c = std::cos(u);
    return MeridianPoint{equatorial * c, axial * s, -equatorial * s, axial * c, -equatorial * c, -axial * s};
  };
  constexpr double kLat = 1.3;
  switch (variant) {
    case ChartVariant::standard:
      return revolution_chart("ellipsoid_rev", meridian, periodic_v(-kLat, kLat, nu, nv), false);
    case ChartVariant::isothermal:
      return reparametrized(
          "ellipsoid_rev", meridian, [meridian](double u) { return first_form_speed(meridian(u)); }, -kLat, kLat, 0.0,
          false, nu, nv, true);
    case ChartVariant::ii_isothermal:
      return reparametrized(
          "ellipsoid_rev", meridian, [meridian](double u) { return second_form_speed(meridian(u)); }, -kLat, kLat,
          0.0, false, nu, nv, false);
    case ChartVariant::pole:
      return pole_chart("ellipsoid_rev", meridian, -kPi / 2.0, 1.0, 0.6, nu);
  }
  throw Error(Errc::invalid_argument, "ellipsoid_rev: unsupported chart variant");
}

Chart make_torus(const std::vector<double>& p, ChartVariant variant, int nu, int nv) {
  const double R = param(p, 0, 3.0);
  const double r = param(p, 1, 1.0);
  require(r > 0.0 && R > r, "torus_rev", "radii must satisfy R > r > 0");
  if (variant == ChartVariant::ii_isothermal) throw Error(Errc::ii_not_definite, "torus K changes sign");
  if (variant == ChartVariant::pole) throw Error(Errc::invalid_argument, "torus has no pole");
  auto meridian = [R, r](double u) {
    const double s = std::sin(u), c = std::cos(u);
    return MeridianPoint{R + r * c, r * s, -r * s, r * c, -r * c, -r * s};
  };
  if (variant == ChartVariant::standard) {
    return revolution_chart("torus_rev", meridian, Domain2D{0.0, 2.0 * kPi, 0.0, 2.0 * kPi, true, true, nu, nv},
                            false);
  }
  return reparametrized(
      "torus_rev", meridian, [meridian](double u) { return first_form_speed(meridian(u)); }, 0.0, 2.0 * kPi, 0.0,
      true, nu, nv, true);
}

}  // namespace

std::string_view to_string(ChartVariant variant) {
  switch (variant) {
    case ChartVariant::standard: return "standard";
    case ChartVariant::isothermal: return "isothermal";
    case ChartVariant::ii_isothermal: return "ii_isothermal";
    case ChartVariant::pole: return "pole";
  }
  return "unknown";
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {"sphere", "cylinder", "plane", "catenoid", "ellipsoid_rev",
                                                 "torus_rev"};
  return names;
}

Chart fixture(std::string_view name, const std::vector<double>& params, ChartVariant variant, int nu, int nv) {
  if (name == "sphere") return make_sphere(params, variant, nu, nv);
  if (name == "cylinder") return make_cylinder(params, variant, nu, nv);
  if (name == "plane") return make_plane(variant, nu, nv);
  if (name == "catenoid") return make_catenoid(params, variant, nu, nv);
  if (name == "ellipsoid_rev") return make_ellipsoid(params, variant, nu, nv);
  if (name == "torus_rev") return make_torus(params, variant, nu, nv);
  throw Error(Errc::unknown_fixture, "no fixture named '" + std::string(name) + "'");
}

bool fixture_has_variant(std::string_view name, ChartVariant variant) {
  switch (variant) {
    case ChartVariant::standard:
    case ChartVariant::isothermal:
      return name == "sphere" || name == "cylinder" || name == "plane" || name == "catenoid" ||
             name == "ellipsoid_rev" || name == "torus_rev";
    case ChartVariant::ii_isothermal:
    case ChartVariant::pole:
      return name == "sphere" || name == "ellipsoid_rev";
  }
  return false;
}

}  // namespace cz
