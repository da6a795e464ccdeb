#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cz/grid.hpp"

namespace cz {

/// The function f in H = f(H^2 - K), defined on [0, extent).
class WeingartenProfile {
 public:
  using Fn = std::function<double(double)>;

  WeingartenProfile(std::string description, Fn f, Fn fprime,
                    double extent = std::numeric_limits<double>::infinity());

  static WeingartenProfile constant(double h0);
  /// f(x) = c + eps x.
  static WeingartenProfile linear(double c, double eps);
  /// f(x) = c + sqrt(x); the boundary case of ellipticity.
  static WeingartenProfile square_root(double c);
  /// Cubic Hermite interpolation of (x, f, f') rows, x strictly increasing from 0.
  static WeingartenProfile tabulated(std::vector<double> x, std::vector<double> f, std::vector<double> fprime);

  double f(double x) const { return f_(x); }
  double fprime(double x) const { return fprime_(x); }
  double extent() const { return extent_; }
  const std::string& description() const { return description_; }

 private:
  std::string description_;
  Fn f_;
  Fn fprime_;
  double extent_;
};

/// Parses `const:<H0>`, `linear:<c>,<eps>`, `sqrt:<c>` or `table:<path>`
/// (CSV with header t,f,fprime). Throws Errc::parse_error or Errc::io_error.
WeingartenProfile parse_profile(std::string_view spec);

struct EllipticityReport {
  bool elliptic = false;
  double margin = 0.0;   ///< min over samples of 1 - 4 x f'(x)^2
  double worst_x = 0.0;
};

/// Samples x uniformly on [0, x_max] (n >= 100 points, x_max within the extent).
EllipticityReport ellipticity_check(const WeingartenProfile& profile, double x_max, int n = 1000);

/// phi(t) = int_0^t 2 f'(s^2) ds by adaptive Gauss-Kronrod quadrature.
/// Throws Errc::domain_exceeded when t^2 leaves the profile's extent.
double phi(const WeingartenProfile& profile, double t);

/// phi(t) / t, with the limit 2 f'(0) at t = 0.
double phi_over_t(const WeingartenProfile& profile, double t);

/// phi and sinh(phi) / t tabulated on a uniform t-grid with cubic Hermite
/// interpolation (phi' = 2 f'(t^2) is exact). Below t = 1e-4 the quotients
/// use Simpson's rule for phi / t and a two-term series for sinh.
class PhiTable {
 public:
  static constexpr double kSeriesCutoff = 1e-4;

  PhiTable(std::shared_ptr<const WeingartenProfile> profile, double t_max, int nodes = 2048);

  double phi(double t) const;
  double phi_over_t(double t) const;
  double sinhc(double t) const;
  double t_max() const { return t_max_; }
  const WeingartenProfile& profile() const { return *profile_; }

 private:
  std::shared_ptr<const WeingartenProfile> profile_;
  double t_max_;
  double h_;
  std::vector<double> phi_;
  std::vector<double> dphi_;
};

/// phi(t) sampled on a grid, with the pieces the transform needs.
struct PhiField {
  ScalarField t;
  ScalarField phi;
  ScalarField phi_over_t;

  /// sinh(phi) / t, continuous across t = 0.
  ScalarField sinhc() const;
  /// The same t with phi multiplied by k (used for negative controls).
  PhiField scaled(double k) const;
};

PhiField phi_field(const PhiTable& table, const ScalarField& t);

}  // namespace cz
