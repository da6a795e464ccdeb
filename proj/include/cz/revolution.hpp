#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cz/chart.hpp"

namespace cz {

/// Meridian (rho(u), h(u)) of a surface of revolution about the z-axis with
/// first and second derivatives in the meridian parameter.
struct MeridianPoint {
  double rho = 0.0;
  double h = 0.0;
  double drho = 0.0;
  double dh = 0.0;
  double d2rho = 0.0;
  double d2h = 0.0;
};

using Meridian = std::function<MeridianPoint(double)>;

/// X(u, v) = (rho cos v, rho sin v, h). The unit normal points toward the
/// axis wherever h increases along the meridian.
Chart revolution_chart(std::string name, Meridian meridian, Domain2D domain, bool isothermal);

/// Meridian speed making I conformal: |c'(u)| / rho.
double first_form_speed(const MeridianPoint& m);
/// Meridian speed making II conformal: sqrt(e / g). Throws Errc::ii_not_definite unless e/g > 0.
double second_form_speed(const MeridianPoint& m);

/// Reparametrization u -> sigma of a meridian with d sigma / du = speed(u).
///
/// sigma(u) is tabulated on nodes refined until a 20-point Gauss rule agrees
/// with itself on the halved interval, and inverted by
/// safeguarded Newton iteration. The speed derivative needed by the chain
/// rule is a fourth-order central difference with step `dspeed_step`.
class MeridianReparametrization {
 public:
  MeridianReparametrization(Meridian meridian, std::function<double(double)> speed, double u_lo, double u_hi,
                            double u_ref, double dspeed_step = 1e-4);

  double sigma_of_u(double u) const;
  double u_of_sigma(double sigma) const;
  double sigma_lo() const { return sigma_lo_; }
  double sigma_hi() const { return sigma_hi_; }

  /// Meridian point and derivatives with respect to sigma.
  MeridianPoint at_sigma(double sigma) const;
  Meridian as_meridian() const;

 private:
  double integrate(double a, double b) const;

  Meridian meridian_;
  std::function<double(double)> speed_;
  double u_lo_, u_hi_, u_ref_, dspeed_step_;
  double sigma_lo_ = 0.0, sigma_hi_ = 0.0;
  std::vector<double> table_u_, table_sigma_;
};

/// Conformal chart in a complex coordinate zeta = x + i y centred on the pole
/// of a surface of revolution, built from an I-isothermal meridian
/// reparametrization with sigma -> -infinity at the pole:
/// log zeta = (sigma - sigma_shift) + i v.
/// The domain is the square |x|, |y| <= half_width with an even node count
/// so no node sits on the pole.
Chart revolution_pole_chart(std::string name, std::shared_ptr<const MeridianReparametrization> reparam,
                            double sigma_shift, double half_width, int n);

}  // namespace cz
