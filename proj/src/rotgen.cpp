#include "cz/rotgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "cz/revolution.hpp"

namespace cz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxIterations = 200;

struct Derivative {
  double dr, dz, dtheta;
};

// Cubic Hermite value on [0, h] at offset x.
double hermite3(double y0, double y1, double d0, double d1, double h, double x) {
  const double s = x / h;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * h * d1;
}

// Quintic Hermite interpolant on one interval, in powers of the local offset.
struct Quintic {
  std::array<double, 6> c{};
  double h = 1.0;

  Quintic(double p0, double p1, double d0, double d1, double a0, double a1, double step) : h(step) {
    const double dp = p1 - p0, hd0 = h * d0, hd1 = h * d1, ha0 = h * h * a0, ha1 = h * h * a1;
    c = {p0,
         hd0,
         0.5 * ha0,
         10 * dp - 6 * hd0 - 4 * hd1 - 1.5 * ha0 + 0.5 * ha1,
         -15 * dp + 8 * hd0 + 7 * hd1 + 1.5 * ha0 - ha1,
         6 * dp - 3 * hd0 - 3 * hd1 - 0.5 * ha0 + 0.5 * ha1};
  }

  // Value, first and second derivative with respect to the global parameter.
  std::array<double, 3> eval(double x) const {
    const double s = x / h;
    double v = c[5], d = 5 * c[5], a = 20 * c[5];
    for (int k = 4; k >= 0; --k) v = v * s + c[k];
    for (int k = 4; k >= 1; --k) d = d * s + k * c[k];
    for (int k = 4; k >= 2; --k) a = a * s + k * (k - 1) * c[k];
    return {v, d / h, a / (h * h)};
  }
};

// dkappa1/ds along the profile, from differentiating the Weingarten relation:
// kappa1' (1 - g') = -kappa2' (1 + g') with g' = 2 t f'(t^2), t = (kappa1 - kappa2) / 2.
double kappa1_slope(const WeingartenProfile& profile, const ProfileSample& p) {
  if (p.r <= 0.0) return 0.0;
  const double ts = 0.5 * (p.kappa1 - p.kappa2);
  const double g = 2.0 * ts * profile.fprime(ts * ts);
  const double dkappa2 = std::cos(p.theta) * (p.kappa1 - p.kappa2) / p.r;
  return -dkappa2 * (1.0 + g) / (1.0 - g);
}

// Interpolates r, z and theta with quintic Hermite pieces. Tangent and
// curvature come from theta and the Weingarten relation instead of from
// derivatives of the position interpolant, whose higher derivatives amplify
// round-off in the samples.
class ProfileInterpolant {
 public:
  explicit ProfileInterpolant(const RotationalSurface& surface)
      : samples_(surface.samples), profile_(surface.profile), ds_(surface.ds) {
    if (samples_.size() < 2) throw Error(Errc::invalid_argument, "profile needs at least two samples");
    slopes_.reserve(samples_.size());
    for (const ProfileSample& p : samples_) slopes_.push_back(kappa1_slope(*profile_, p));
  }

  MeridianPoint operator()(double s) const {
    const double x = (s - samples_.front().s) / ds_;
    const std::size_t k =
        static_cast<std::size_t>(std::clamp(std::floor(x), 0.0, static_cast<double>(samples_.size() - 2)));
    const ProfileSample& a = samples_[k];
    const ProfileSample& b = samples_[k + 1];
    const double ca = std::cos(a.theta), sa = std::sin(a.theta);
    const double cb = std::cos(b.theta), sb = std::sin(b.theta);
    const double off = s - a.s;
    const double r = Quintic(a.r, b.r, ca, cb, -sa * a.kappa1, -sb * b.kappa1, ds_).eval(off)[0];
    const double z = Quintic(a.z, b.z, sa, sb, ca * a.kappa1, cb * b.kappa1, ds_).eval(off)[0];
    const auto th = Quintic(a.theta, b.theta, a.kappa1, b.kappa1, slopes_[k], slopes_[k + 1], ds_).eval(off);
    const double c = std::cos(th[0]), sn = std::sin(th[0]);
    const double kappa1 = r > 0.0 ? solve_kappa1(*profile_, sn / r, th[1]) : profile_->f(0.0);
    return {r, z, c, sn, -sn * kappa1, c * kappa1};
  }

 private:
  std::vector<ProfileSample> samples_;
  std::vector<double> slopes_;
  std::shared_ptr<const WeingartenProfile> profile_;
  double ds_;
};

// Principal curvatures of the interpolated meridian (meridian, parallel).
std::pair<double, double> meridian_curvatures(const MeridianPoint& m) {
  const double speed = std::hypot(m.drho, m.dh);
  const double k1 = (m.drho * m.d2h - m.dh * m.d2rho) / (speed * speed * speed);
  const double k2 = m.dh / (m.rho * speed);
  return {k1, k2};
}

class Integrator {
 public:
  Integrator(const WeingartenProfile& profile, double ds) : profile_(profile), ds_(ds) {}

  double kappa1_at(double r, double theta, double& guess) const {
    if (r <= 0.0) {
      guess = profile_.f(0.0);
      return guess;
    }
    guess = solve_kappa1(profile_, std::sin(theta) / r, guess);
    return guess;
  }

  Derivative rhs(double r, double theta, double& guess) const {
    if (r < 0.0) throw Error(Errc::axis_collision, "profile crossed the axis");
    return {std::cos(theta), std::sin(theta), kappa1_at(r, theta, guess)};
  }

  ProfileState step(const ProfileState& y, double& guess) const {
    const double h = ds_;
    const Derivative k1 = rhs(y.r, y.theta, guess);
    const Derivative k2 = rhs(y.r + 0.5 * h * k1.dr, y.theta + 0.5 * h * k1.dtheta, guess);
    const Derivative k3 = rhs(y.r + 0.5 * h * k2.dr, y.theta + 0.5 * h * k2.dtheta, guess);
    const Derivative k4 = rhs(y.r + h * k3.dr, y.theta + h * k3.dtheta, guess);
    ProfileState out;
    out.s = y.s + h;
    out.r = y.r + h / 6.0 * (k1.dr + 2 * k2.dr + 2 * k3.dr + k4.dr);
    out.z = y.z + h / 6.0 * (k1.dz + 2 * k2.dz + 2 * k3.dz + k4.dz);
    out.theta = y.theta + h / 6.0 * (k1.dtheta + 2 * k2.dtheta + 2 * k3.dtheta + k4.dtheta);
    return out;
  }

  ProfileSample sample(const ProfileState& y, double& guess) const {
    ProfileSample p{y.s, y.r, y.z, y.theta, 0.0, 0.0};
    p.kappa1 = kappa1_at(y.r, y.theta, guess);
    p.kappa2 = y.r > 0.0 ? std::sin(y.theta) / y.r : p.kappa1;
    return p;
  }

  // Point at which a Hermite-interpolated component crosses `target` on [a, b].
  ProfileSample crossing(const ProfileSample& a, const ProfileSample& b, int component, double target,
                         double& guess) const {
    auto value = [&](double x, int which) {
      switch (which) {
        case 0: return hermite3(a.r, b.r, std::cos(a.theta), std::cos(b.theta), ds_, x);
        case 1: return hermite3(a.z, b.z, std::sin(a.theta), std::sin(b.theta), ds_, x);
        default: return hermite3(a.theta, b.theta, a.kappa1, b.kappa1, ds_, x);
      }
    };
    double lo = 0.0, hi = ds_;
    const double f_lo = value(lo, component) - target;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * ds_; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = value(mid, component) - target;
      if ((fm < 0.0) == (f_lo < 0.0))
        lo = mid;
      else
        hi = mid;
    }
    const double x = 0.5 * (lo + hi);
    ProfileState y{a.s + x, value(x, 0), value(x, 1), value(x, 2)};
    if (component == 1) y.z = target;
    if (component == 2) y.theta = target;
    return sample(y, guess);
  }

 private:
  const WeingartenProfile& profile_;
  double ds_;
};

bool crosses(double a, double b, double target) { return a != target && (a - target) * (b - target) <= 0.0; }

RotationalSurface integrate_once(std::shared_ptr<const WeingartenProfile> profile, const ProfileState& init,
                                 const IntegrationOptions& options, double ds, double s_max) {
  if (!(init.r >= 0.0)) throw Error(Errc::invalid_argument, "initial radius must be non-negative");
  if (init.r == 0.0 && std::abs(std::sin(init.theta)) > 1e-12)
    throw Error(Errc::invalid_argument, "a pole start needs a horizontal tangent");
  RotationalSurface out;
  out.ds = ds;
  out.profile = profile;
  const Integrator integrator(*profile, ds);
  double guess = init.r > 0.0 ? 2.0 * profile->f(0.0) - std::sin(init.theta) / init.r : profile->f(0.0);
  ProfileState y = init;
  out.samples.push_back(integrator.sample(y, guess));
  const auto n_steps = static_cast<long>(std::floor(s_max / ds + 1e-9));
  for (long n = 0; n < n_steps; ++n) {
    const ProfileSample prev = out.samples.back();
    y = integrator.step(y, guess);
    if (y.r < 0.0) throw Error(Errc::axis_collision, "profile crossed the axis");
    const ProfileSample cur = integrator.sample(y, guess);
    if (options.stop_at_theta && crosses(prev.theta, cur.theta, *options.stop_at_theta)) {
      out.samples.push_back(cur);
      out.end = integrator.crossing(prev, cur, 2, *options.stop_at_theta, guess);
      out.end_kind = ProfileEnd::theta_reached;
      return out;
    }
    if (options.stop_at_plane && n > 0 && std::cos(cur.theta) < 0.0 && crosses(prev.z, cur.z, *options.stop_at_plane)) {
      out.samples.push_back(cur);
      out.end = integrator.crossing(prev, cur, 1, *options.stop_at_plane, guess);
      out.end_kind = ProfileEnd::plane_return;
      return out;
    }
    out.samples.push_back(cur);
    if (options.close_at_axis && cur.r < 3.0 * ds && std::cos(cur.theta) < 0.0) {
      const double kappa = cur.kappa1;
      if (!(kappa > 0.0) || std::abs(std::sin(cur.theta) - kappa * cur.r) > 1e-6)
        throw Error(Errc::axis_collision, "profile reaches the axis without closing smoothly");
      ProfileSample end{};
      end.s = cur.s + (kPi - cur.theta) / kappa;
      end.r = 0.0;
      end.z = cur.z + (1.0 + std::cos(cur.theta)) / kappa;
      end.theta = kPi;
      end.kappa1 = end.kappa2 = kappa;
      out.end = end;
      out.end_kind = ProfileEnd::axis_closure;
      return out;
    }
  }
  out.end = out.samples.back();
  out.end_kind = ProfileEnd::arc_length;
  return out;
}

}  // namespace

double umbilic_sphere_radius(const WeingartenProfile& profile) {
  const double f0 = profile.f(0.0);
  if (f0 == 0.0) throw Error(Errc::minimal_type, "f(0) = 0: no umbilical sphere");
  return 1.0 / std::abs(f0);
}

Kappa1Solution solve_kappa1_detailed(const WeingartenProfile& profile, double kappa2, double guess) {
  Kappa1Solution sol;
  double k = guess;
  for (int it = 1; it <= kMaxIterations; ++it) {
    const double ts = 0.5 * (k - kappa2);
    const double x = ts * ts;
    if (x > profile.extent()) throw Error(Errc::no_convergence, "iterate left the profile domain");
    const double g = 2.0 * profile.f(x) - kappa2;
    const double dg = 2.0 * ts * profile.fprime(x);
    const double residual = g - k;
    sol.iterations = it;
    if (std::abs(residual) <= 1e-13 * std::max(1.0, std::abs(k))) {
      if (!(std::abs(dg) < 1.0))
        throw Error(Errc::no_convergence, "root lies outside the elliptic range (|2 t f'(t^2)| >= 1)");
      sol.kappa1 = k;
      sol.contraction = std::abs(dg);
      return sol;
    }
    const double omega = 1.0 / (1.0 - std::clamp(dg, -0.99, 0.99));
    k += omega * residual;
    if (!std::isfinite(k)) break;
  }
  throw Error(Errc::no_convergence, "kappa1 iteration did not converge in 200 steps");
}

double solve_kappa1(const WeingartenProfile& profile, double kappa2, double guess) {
  return solve_kappa1_detailed(profile, kappa2, guess).kappa1;
}

double RotationalSurface::max_weingarten_residual() const {
  double m = 0.0;
  auto check = [&](const ProfileSample& p) {
    const double t = 0.5 * (p.kappa1 - p.kappa2);
    m = std::max(m, std::abs(p.H() - profile->f(t * t)));
  };
  for (const ProfileSample& p : samples) check(p);
  check(end);
  return m;
}

RotationalSurface integrate_profile(std::shared_ptr<const WeingartenProfile> profile, const ProfileState& init,
                                    const IntegrationOptions& options) {
  if (!profile) throw Error(Errc::invalid_argument, "integration needs a profile");
  double scale = 1.0;
  try {
    scale = umbilic_sphere_radius(*profile);
  } catch (const Error&) {
    scale = 1.0;
  }
  const double ds = options.ds > 0.0 ? options.ds : 1e-3 * scale;
  const double s_max = options.s_max > 0.0 ? options.s_max : 4.0 * kPi * scale;
  RotationalSurface out = integrate_once(profile, init, options, ds, s_max);
  if (options.richardson) {
    const RotationalSurface fine = integrate_once(profile, init, options, 0.5 * ds, s_max);
    const std::size_t n = std::min(out.samples.size(), (fine.samples.size() + 1) / 2);
    for (std::size_t k = 0; k < n; ++k) {
      const ProfileSample& a = out.samples[k];
      const ProfileSample& b = fine.samples[2 * k];
      out.error_estimate = std::max({out.error_estimate, std::abs(a.r - b.r), std::abs(a.z - b.z)});
    }
  }
  return out;
}

Chart as_chart(const RotationalSurface& surface, ChartMode mode, std::optional<double> s_lo,
               std::optional<double> s_hi, int nu, int nv) {
  const double lo = s_lo.value_or(surface.samples.front().s);
  const double hi = s_hi.value_or(surface.samples.back().s);
  if (!(lo < hi) || lo < surface.samples.front().s - 1e-12 || hi > surface.samples.back().s + 1e-12)
    throw Error(Errc::invalid_argument, "chart range outside the generated profile");
  auto interp = std::make_shared<ProfileInterpolant>(surface);
  Meridian meridian = [interp](double s) { return (*interp)(s); };
  const Domain2D arc_domain{lo, hi, 0.0, 2.0 * kPi, false, true, nu, nv};
  if (mode == ChartMode::arc_length) return revolution_chart("rotational", meridian, arc_domain, false);

  double r_min = std::numeric_limits<double>::infinity(), r_max = 0.0;
  for (const ProfileSample& p : surface.samples) {
    if (p.s < lo - surface.ds || p.s > hi + surface.ds) continue;
    r_min = std::min(r_min, p.r);
    r_max = std::max(r_max, p.r);
  }
  if (!(r_min > 1e-6 * std::max(1.0, r_max)))
    throw Error(Errc::axis_proximity, "conformal chart requested too close to the axis");

  std::function<double(double)> speed;
  switch (mode) {
    case ChartMode::isothermal:
      speed = [meridian](double s) { return first_form_speed(meridian(s)); };
      break;
    case ChartMode::ii_isothermal:
      speed = [meridian](double s) { return second_form_speed(meridian(s)); };
      break;
    case ChartMode::bryant_isothermal: {
      double t_max = 0.0;
      for (const ProfileSample& p : surface.samples) t_max = std::max(t_max, 0.5 * std::abs(p.kappa1 - p.kappa2));
      const double t_cap = std::sqrt(surface.profile->extent());
      auto table = std::make_shared<PhiTable>(surface.profile, std::min(1.05 * t_max + 1e-6, t_cap));
      speed = [meridian, table](double s) {
        const MeridianPoint m = meridian(s);
        const auto [k1, k2] = meridian_curvatures(m);
        const double d = 0.5 * (k1 - k2);
        const double t = std::min(std::abs(d), table->t_max());
        const double c = std::cosh(table->phi(t));
        const double sc = table->sinhc(t);
        const double speed2 = m.drho * m.drho + m.dh * m.dh;
        return std::sqrt(speed2 * (c + sc * d) / (m.rho * m.rho * (c - sc * d)));
      };
      break;
    }
    case ChartMode::arc_length:
      break;
  }
  auto rep = std::make_shared<MeridianReparametrization>(meridian, speed, lo, hi, lo);
  const Domain2D dom{rep->sigma_lo(), rep->sigma_hi(), 0.0, 2.0 * kPi, false, true, nu, nv};
  return revolution_chart("rotational", [rep](double sigma) { return rep->at_sigma(sigma); }, dom,
                          mode == ChartMode::isothermal);
}

CapReport cap_height_check(const RotationalSurface& surface, double plane_z) {
  const ProfileSample& first = surface.samples.front();
  const ProfileSample& last = surface.end;
  double height = 0.0;
  for (const ProfileSample& p : surface.samples) height = std::max(height, std::abs(p.z - plane_z));
  height = std::max(height, std::abs(last.z - plane_z));
  // Refine extrema that fall between samples.
  for (std::size_t k = 0; k + 1 < surface.samples.size(); ++k) {
    const ProfileSample& a = surface.samples[k];
    const ProfileSample& b = surface.samples[k + 1];
    if (std::sin(a.theta) * std::sin(b.theta) > 0.0) continue;
    for (int j = 1; j < 32; ++j) {
      const double x = surface.ds * j / 32.0;
      const double z = hermite3(a.z, b.z, std::sin(a.theta), std::sin(b.theta), surface.ds, x);
      height = std::max(height, std::abs(z - plane_z));
    }
  }
  const double tol = 1e-8 * std::max(1.0, height);
  int boundary_points = 0;
  for (const ProfileSample* p : {&first, &last}) {
    if (p->r <= 1e-12) continue;
    ++boundary_points;
    if (std::abs(p->z - plane_z) > tol) throw Error(Errc::boundary_not_planar, "profile boundary is off the plane");
  }
  if (boundary_points == 0) throw Error(Errc::boundary_not_planar, "profile has no boundary on the plane");
  CapReport report;
  report.height = height;
  report.R_A = umbilic_sphere_radius(*surface.profile);
  report.bound_4R = height <= 4.0 * report.R_A + 1e-9;
  report.bound_8R = height <= 8.0 * report.R_A + 1e-9;
  return report;
}

HeightBatchReport height_batch(int count, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> c_dist(0.3, 2.0);
  std::uniform_real_distribution<double> eps_dist(-0.6, 0.6);
  std::uniform_real_distribution<double> theta_dist(0.5 * kPi + 0.1, kPi - 0.1);
  std::uniform_real_distribution<double> r_dist(0.5, 2.5);
  HeightBatchReport report;
  const int max_attempts = 50 * std::max(count, 1);
  while (static_cast<int>(report.caps.size()) < count && report.attempts < max_attempts) {
    ++report.attempts;
    HeightBatchReport::Cap cap;
    cap.c = c_dist(rng);
    cap.eps = eps_dist(rng);
    cap.theta0 = theta_dist(rng);
    const double R = 1.0 / cap.c;
    cap.r0 = R * (2.0 * std::sin(cap.theta0) + r_dist(rng));
    auto profile = std::make_shared<const WeingartenProfile>(WeingartenProfile::linear(cap.c, cap.eps));
    IntegrationOptions options;
    options.stop_at_plane = 0.0;
    options.s_max = 6.0 * kPi * R;
    RotationalSurface surface;
    try {
      surface = integrate_profile(profile, ProfileState{0.0, cap.r0, 0.0, cap.theta0}, options);
    } catch (const Error&) {
      continue;
    }
    if (surface.end_kind != ProfileEnd::plane_return) continue;
    double x_max = 0.0;
    for (const ProfileSample& p : surface.samples) x_max = std::max(x_max, 0.25 * std::pow(p.kappa1 - p.kappa2, 2));
    if (!(ellipticity_check(*profile, x_max, 200).margin > 0.1)) continue;
    cap.report = cap_height_check(surface, 0.0);
    report.all_within_4R = report.all_within_4R && cap.report.bound_4R;
    report.max_height_ratio = std::max(report.max_height_ratio, cap.report.height / cap.report.R_A);
    report.caps.push_back(cap);
  }
  return report;
}

}  // namespace cz
