#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "cz/chart.hpp"
#include "cz/profile.hpp"

namespace cz {

/// R = 1 / |f(0)|. Throws Errc::minimal_type when f(0) = 0.
double umbilic_sphere_radius(const WeingartenProfile& profile);

struct Kappa1Solution {
  double kappa1 = 0.0;
  int iterations = 0;
  double contraction = 0.0;  ///< |g'(kappa1)| = |2 t f'(t^2)| at the root
};

/// Solves kappa1 = 2 f(((kappa1 - kappa2) / 2)^2) - kappa2 by damped
/// fixed-point iteration started from `guess`. The damping 1 / (1 - g')
/// makes each step a Newton step. Throws Errc::no_convergence after 200
/// iterations or when the root has |g'| >= 1 (outside the elliptic range).
Kappa1Solution solve_kappa1_detailed(const WeingartenProfile& profile, double kappa2, double guess);
double solve_kappa1(const WeingartenProfile& profile, double kappa2, double guess);

/// Point of the generating curve; r' = cos(theta), z' = sin(theta).
struct ProfileState {
  double s = 0.0;
  double r = 0.0;
  double z = 0.0;
  double theta = 0.0;
};

struct ProfileSample {
  double s = 0.0, r = 0.0, z = 0.0, theta = 0.0;
  double kappa1 = 0.0;  ///< meridian curvature theta'
  double kappa2 = 0.0;  ///< sin(theta) / r

  double H() const { return 0.5 * (kappa1 + kappa2); }
  double K() const { return kappa1 * kappa2; }
};

enum class ProfileEnd : std::uint8_t { arc_length, axis_closure, plane_return, theta_reached };

struct IntegrationOptions {
  double ds = 0.0;      ///< 0 selects 1e-3 R (or 1e-3 for minimal type)
  double s_max = 0.0;   ///< 0 selects 4 pi R
  bool close_at_axis = true;
  std::optional<double> stop_at_plane;  ///< stop on return to z = value while cos(theta) < 0
  std::optional<double> stop_at_theta;  ///< stop when theta crosses the value
  bool richardson = false;              ///< rerun at ds / 2 and record the difference
};

struct RotationalSurface {
  std::vector<ProfileSample> samples;  ///< uniform arc-length spacing ds
  ProfileSample end;                   ///< terminal point (closure, crossing or last sample)
  ProfileEnd end_kind = ProfileEnd::arc_length;
  double ds = 0.0;
  double error_estimate = 0.0;         ///< max position difference against ds / 2 when requested
  std::shared_ptr<const WeingartenProfile> profile;

  /// max |H - f(H^2 - K)| over samples and the end point.
  double max_weingarten_residual() const;
};

/// Classical RK4 on (r, z, theta) with theta' = kappa1(kappa2), kappa2 = sin(theta) / r.
/// A start with r = 0 is a pole: the first evaluation uses kappa2 = kappa1 = f(0).
/// Near the axis with cos(theta) < 0 the curve is closed by the osculating
/// circle; Errc::axis_collision is raised if it does not meet the axis
/// orthogonally or if r becomes negative.
RotationalSurface integrate_profile(std::shared_ptr<const WeingartenProfile> profile, const ProfileState& init,
                                    const IntegrationOptions& options = {});

enum class ChartMode : std::uint8_t { arc_length, isothermal, ii_isothermal, bryant_isothermal };

/// Surface of revolution chart over the samples with s in [s_lo, s_hi]
/// (defaults: whole sample range), using quintic Hermite interpolation of
/// r and z. Conformal modes reparametrize the meridian so that I, II or the
/// transformed metric A is isothermal. Throws Errc::axis_proximity for
/// conformal modes when r gets close to 0 on the range.
Chart as_chart(const RotationalSurface& surface, ChartMode mode = ChartMode::arc_length,
               std::optional<double> s_lo = std::nullopt, std::optional<double> s_hi = std::nullopt, int nu = 64,
               int nv = 64);

struct CapReport {
  double height = 0.0;
  double R_A = 0.0;
  bool bound_4R = false;
  bool bound_8R = false;
};

/// Height of the profile over z = plane_z. Every endpoint off the axis must
/// lie on the plane, otherwise Errc::boundary_not_planar.
CapReport cap_height_check(const RotationalSurface& surface, double plane_z);

struct HeightBatchReport {
  struct Cap {
    double c = 0.0;
    double eps = 0.0;
    double r0 = 0.0;
    double theta0 = 0.0;
    CapReport report;
  };
  std::vector<Cap> caps;
  int attempts = 0;
  bool all_within_4R = true;
  double max_height_ratio = 0.0;  ///< max height / R_A
};

/// Generates closed annular caps over z = 0 for random elliptic linear
/// profiles f(x) = c + eps x with c in [0.3, 2] and ellipticity margin
/// above 0.1 on the reached range.
HeightBatchReport height_batch(int count, std::uint32_t seed);

}  // namespace cz
