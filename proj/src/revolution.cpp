#include "cz/revolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>

namespace cz {

namespace {

Jet2 revolution_jet(const MeridianPoint& m, double v) {
  const double c = std::cos(v);
  const double s = std::sin(v);
  Jet2 jet;
  jet.X = {m.rho * c, m.rho * s, m.h};
  jet.Xu = {m.drho * c, m.drho * s, m.dh};
  jet.Xv = {-m.rho * s, m.rho * c, 0.0};
  jet.Xuu = {m.d2rho * c, m.d2rho * s, m.d2h};
  jet.Xuv = {-m.drho * s, m.drho * c, 0.0};
  jet.Xvv = {-m.rho * c, -m.rho * s, 0.0};
  return jet;
}

}  // namespace

Chart revolution_chart(std::string name, Meridian meridian, Domain2D domain, bool isothermal) {
  Chart chart;
  chart.name = std::move(name);
  chart.domain = domain;
  chart.isothermal = isothermal;
  chart.immersion = [meridian](double u, double v) {
    const MeridianPoint m = meridian(u);
    return Eigen::Vector3d(m.rho * std::cos(v), m.rho * std::sin(v), m.h);
  };
  chart.analytic_jets = [meridian](double u, double v) { return revolution_jet(meridian(u), v); };
  return chart;
}

double first_form_speed(const MeridianPoint& m) { return std::hypot(m.drho, m.dh) / m.rho; }

double second_form_speed(const MeridianPoint& m) {
  // e = (rho' h'' - h' rho'') / |c'|, g = rho h' / |c'|
  const double ratio = (m.drho * m.d2h - m.dh * m.d2rho) / (m.rho * m.dh);
  if (!(ratio > 0.0)) throw Error(Errc::ii_not_definite, "second fundamental form is not definite on the meridian");
  return std::sqrt(ratio);
}

MeridianReparametrization::MeridianReparametrization(Meridian meridian, std::function<double(double)> speed,
                                                     double u_lo, double u_hi, double u_ref, double dspeed_step)
    : meridian_(std::move(meridian)),
      speed_(std::move(speed)),
      u_lo_(u_lo),
      u_hi_(u_hi),
      u_ref_(u_ref),
      dspeed_step_(dspeed_step) {
  if (!(u_lo < u_hi) || u_ref < u_lo || u_ref > u_hi)
    throw Error(Errc::invalid_argument, "reparametrization interval must satisfy u_lo <= u_ref <= u_hi");
  // Table nodes are refined until a 20-point Gauss rule on each interval
  // agrees with the same rule on its two halves; lookups then only need
  // that rule on sub-intervals of one table interval.
  std::vector<double> nodes_below, nodes_above;
  std::vector<double> steps_below, steps_above;
  auto refine = [&](auto&& self, double a, double b, int depth, std::vector<double>& ends,
                    std::vector<double>& steps) -> void {
    const double mid = 0.5 * (a + b);
    const double whole = integrate(a, b);
    const double halves = integrate(a, mid) + integrate(mid, b);
    if (depth >= 30 || std::abs(whole - halves) <= 2e-14 * std::abs(halves)) {
      ends.push_back(b);
      steps.push_back(halves);
      return;
    }
    self(self, a, mid, depth + 1, ends, steps);
    self(self, mid, b, depth + 1, ends, steps);
  };
  constexpr int kInitial = 64;
  const int n_below = std::max(1, static_cast<int>(std::ceil(kInitial * (u_ref - u_lo) / (u_hi - u_lo))));
  const int n_above = std::max(1, static_cast<int>(std::ceil(kInitial * (u_hi - u_ref) / (u_hi - u_lo))));
  // Below u_ref the intervals are generated from u_ref downwards.
  if (u_ref > u_lo) {
    for (int k = 0; k < n_below; ++k) {
      const double a = u_ref - (u_ref - u_lo) * k / n_below;
      const double b = u_ref - (u_ref - u_lo) * (k + 1) / n_below;
      std::vector<double> ends, steps;
      refine(refine, b, a, 0, ends, steps);
      // ends run upwards from b; walk them downwards from a.
      for (std::size_t j = ends.size(); j-- > 0;) {
        nodes_below.push_back(j == 0 ? b : ends[j - 1]);
        steps_below.push_back(steps[j]);
      }
    }
  }
  if (u_hi > u_ref) {
    for (int k = 0; k < n_above; ++k) {
      const double a = u_ref + (u_hi - u_ref) * k / n_above;
      const double b = u_ref + (u_hi - u_ref) * (k + 1) / n_above;
      refine(refine, a, b, 0, nodes_above, steps_above);
    }
  }
  table_u_.clear();
  table_sigma_.clear();
  double sigma = 0.0;
  std::vector<double> sig_below;
  for (double step : steps_below) sig_below.push_back(sigma -= step);
  for (std::size_t j = nodes_below.size(); j-- > 0;) {
    table_u_.push_back(nodes_below[j]);
    table_sigma_.push_back(sig_below[j]);
  }
  table_u_.push_back(u_ref);
  table_sigma_.push_back(0.0);
  sigma = 0.0;
  for (std::size_t j = 0; j < nodes_above.size(); ++j) {
    table_u_.push_back(nodes_above[j]);
    table_sigma_.push_back(sigma += steps_above[j]);
  }
  table_u_.front() = u_lo;
  table_u_.back() = u_hi;
  sigma_lo_ = table_sigma_.front();
  sigma_hi_ = table_sigma_.back();
}

double MeridianReparametrization::integrate(double a, double b) const {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss<double, 20>::integrate(speed_, a, b);
}

double MeridianReparametrization::sigma_of_u(double u) const {
  if (u < u_lo_ || u > u_hi_) throw Error(Errc::domain_exceeded, "meridian parameter outside reparametrized range");
  auto it = std::upper_bound(table_u_.begin(), table_u_.end(), u);
  const std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - table_u_.begin() - 1, 0));
  return table_sigma_[k] + integrate(table_u_[k], u);
}

double MeridianReparametrization::u_of_sigma(double sigma) const {
  if (sigma < sigma_lo_ - 1e-12 || sigma > sigma_hi_ + 1e-12)
    throw Error(Errc::domain_exceeded, "sigma outside reparametrized range");
  auto it = std::upper_bound(table_sigma_.begin(), table_sigma_.end(), sigma);
  std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - table_sigma_.begin() - 1, 0));
  k = std::min(k, table_u_.size() - 2);
  double lo = table_u_[k];
  double hi = table_u_[k + 1];
  const double s_lo = table_sigma_[k];
  const double s_hi = table_sigma_[k + 1];
  double u = lo + (hi - lo) * std::clamp((sigma - s_lo) / (s_hi - s_lo), 0.0, 1.0);
  for (int iter = 0; iter < 60; ++iter) {
    const double r = table_sigma_[k] + integrate(table_u_[k], u) - sigma;
    if (std::abs(r) < 1e-15 * std::max(1.0, std::abs(sigma))) return u;
    if (r > 0.0)
      hi = std::min(hi, u);
    else
      lo = std::max(lo, u);
    double next = u - r / speed_(u);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) < 1e-16 * std::max(1.0, std::abs(u))) return next;
    u = next;
  }
  return u;
}

MeridianPoint MeridianReparametrization::at_sigma(double sigma) const {
  const double u = u_of_sigma(sigma);
  const MeridianPoint m = meridian_(u);
  const double g = speed_(u);
  const double h = dspeed_step_;
  const double dg = (speed_(u - 2 * h) - 8 * speed_(u - h) + 8 * speed_(u + h) - speed_(u + 2 * h)) / (12 * h);
  const double du = 1.0 / g;
  const double d2u = -dg / (g * g * g);
  MeridianPoint out;
  out.rho = m.rho;
  out.h = m.h;
  out.drho = m.drho * du;
  out.dh = m.dh * du;
  out.d2rho = m.d2rho * du * du + m.drho * d2u;
  out.d2h = m.d2h * du * du + m.dh * d2u;
  return out;
}

Meridian MeridianReparametrization::as_meridian() const {
  return [self = *this](double sigma) { return self.at_sigma(sigma); };
}

Chart revolution_pole_chart(std::string name, std::shared_ptr<const MeridianReparametrization> reparam,
                            double sigma_shift, double half_width, int n) {
  if (n % 2 != 0) throw Error(Errc::invalid_argument, "pole chart needs an even node count");
  Chart chart;
  chart.name = std::move(name);
  chart.isothermal = true;
  chart.domain = Domain2D{-half_width, half_width, -half_width, half_width, false, false, n, n};

  auto jets = [reparam, sigma_shift](double x, double y) {
    const double r2 = x * x + y * y;
    if (!(r2 > 0.0)) throw Error(Errc::degenerate_immersion, "pole chart evaluated on the pole");
    const double sigma = 0.5 * std::log(r2) + sigma_shift;
    const double v = std::atan2(y, x);
    const MeridianPoint m = reparam->at_sigma(sigma);
    const Jet2 p = revolution_jet(m, v);  // derivatives in (sigma, v)
    const double r4 = r2 * r2;
    const double sx = x / r2, sy = y / r2;
    const double vx = -y / r2, vy = x / r2;
    const double sxx = (y * y - x * x) / r4, syy = -sxx, sxy = -2.0 * x * y / r4;
    const double vxx = 2.0 * x * y / r4, vyy = -vxx, vxy = (y * y - x * x) / r4;
    Jet2 jet;
    jet.X = p.X;
    jet.Xu = p.Xu * sx + p.Xv * vx;
    jet.Xv = p.Xu * sy + p.Xv * vy;
    jet.Xuu = p.Xuu * sx * sx + 2.0 * p.Xuv * sx * vx + p.Xvv * vx * vx + p.Xu * sxx + p.Xv * vxx;
    jet.Xvv = p.Xuu * sy * sy + 2.0 * p.Xuv * sy * vy + p.Xvv * vy * vy + p.Xu * syy + p.Xv * vyy;
    jet.Xuv = p.Xuu * sx * sy + p.Xuv * (sx * vy + sy * vx) + p.Xvv * vx * vy + p.Xu * sxy + p.Xv * vxy;
    return jet;
  };
  chart.analytic_jets = jets;
  chart.immersion = [jets](double x, double y) { return jets(x, y).X; };
  return chart;
}

}  // namespace cz
