#include "cz/chart.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Geometry>

namespace cz {

namespace {

struct Stencil {
  std::vector<double> offsets;  // in units of h
  std::vector<double> weights;  // already divided by h^order
};

// Fourth-order stencil for the given derivative order at coordinate x.
// Falls back to one-sided stencils when x +- 2h would leave a non-periodic interval.
Stencil make_stencil(int order, double x, double lo, double hi, bool periodic, double h) {
  const bool room_below = periodic || x - 2.0 * h >= lo - 1e-15;
  const bool room_above = periodic || x + 2.0 * h <= hi + 1e-15;
  Stencil s;
  if (room_below && room_above) {
    s.offsets = {-2, -1, 0, 1, 2};
    if (order == 1)
      s.weights = {1, -8, 0, 8, -1};
    else
      s.weights = {-1, 16, -30, 16, -1};
  } else {
    const double dir = room_above ? 1.0 : -1.0;
    if (order == 1) {
      s.weights = {-25, 48, -36, 16, -3};
      for (double& w : s.weights) w *= dir;
    } else {
      s.weights = {45, -154, 214, -156, 61, -10};
    }
    for (std::size_t k = 0; k < s.weights.size(); ++k) s.offsets.push_back(dir * static_cast<double>(k));
  }
  const double scale = order == 1 ? 12.0 * h : 12.0 * h * h;
  for (double& w : s.weights) w /= scale;
  return s;
}

double default_step(const Domain2D& d) {
  return 1e-3 * std::min(d.u_max - d.u_min, d.v_max - d.v_min);
}

void attach_normal(Jet2& jet) {
  const Eigen::Vector3d n = jet.Xu.cross(jet.Xv);
  const double len = n.norm();
  if (!(len >= 1e-12)) throw Error(Errc::degenerate_immersion, "|Xu x Xv| < 1e-12");
  jet.N = n / len;
}

}  // namespace

Jet2 finite_difference_jet(const Chart& chart, double u, double v, double h) {
  const Domain2D& d = chart.domain;
  if (!(h > 0.0)) throw Error(Errc::invalid_argument, "finite-difference step must be positive");
  const Stencil su1 = make_stencil(1, u, d.u_min, d.u_max, d.u_periodic, h);
  const Stencil sv1 = make_stencil(1, v, d.v_min, d.v_max, d.v_periodic, h);
  const Stencil su2 = make_stencil(2, u, d.u_min, d.u_max, d.u_periodic, h);
  const Stencil sv2 = make_stencil(2, v, d.v_min, d.v_max, d.v_periodic, h);
  const Immersion& X = chart.immersion;

  Jet2 jet;
  jet.X = X(u, v);
  for (std::size_t k = 0; k < su1.weights.size(); ++k) jet.Xu += su1.weights[k] * X(u + su1.offsets[k] * h, v);
  for (std::size_t k = 0; k < sv1.weights.size(); ++k) jet.Xv += sv1.weights[k] * X(u, v + sv1.offsets[k] * h);
  for (std::size_t k = 0; k < su2.weights.size(); ++k) jet.Xuu += su2.weights[k] * X(u + su2.offsets[k] * h, v);
  for (std::size_t k = 0; k < sv2.weights.size(); ++k) jet.Xvv += sv2.weights[k] * X(u, v + sv2.offsets[k] * h);
  for (std::size_t a = 0; a < su1.weights.size(); ++a)
    for (std::size_t b = 0; b < sv1.weights.size(); ++b)
      jet.Xuv += su1.weights[a] * sv1.weights[b] * X(u + su1.offsets[a] * h, v + sv1.offsets[b] * h);
  attach_normal(jet);
  return jet;
}

Jet2 sample_jet(const Chart& chart, double u, double v, double h) {
  if (chart.analytic_jets) {
    Jet2 jet = (*chart.analytic_jets)(u, v);
    attach_normal(jet);
    return jet;
  }
  if (!chart.immersion) throw Error(Errc::invalid_argument, "chart has neither an immersion nor analytic jets");
  return finite_difference_jet(chart, u, v, h > 0.0 ? h : default_step(chart.domain));
}

std::pair<SymmetricForm, SymmetricForm> fundamental_forms(const Jet2& jet) {
  SymmetricForm I{jet.Xu.dot(jet.Xu), jet.Xu.dot(jet.Xv), jet.Xv.dot(jet.Xv)};
  SymmetricForm II{jet.Xuu.dot(jet.N), jet.Xuv.dot(jet.N), jet.Xvv.dot(jet.N)};
  if (!(I.det() > 0.0)) throw Error(Errc::non_riemannian, "EG - F^2 <= 0");
  return {I, II};
}

FundamentalPair sample_pair(const Chart& chart, double h) {
  const Domain2D& d = chart.domain;
  d.validate();
  FundamentalPair pair{SymmetricFormField(d), SymmetricFormField(d)};
  for (int j = 0; j < d.nv; ++j) {
    for (int i = 0; i < d.nu; ++i) {
      const auto [I, II] = fundamental_forms(sample_jet(chart, d.u(i), d.v(j), h));
      const std::size_t k = static_cast<std::size_t>(j) * d.nu + i;
      pair.I.set(k, I);
      pair.II.set(k, II);
    }
  }
  return pair;
}

SymmetricFormField gauss_map_metric(const Chart& chart, double h) {
  const Domain2D& d = chart.domain;
  SymmetricFormField out(d);
  auto normal = [&](double u, double v) { return sample_jet(chart, u, v, h).N; };
  for (int j = 0; j < d.nv; ++j) {
    for (int i = 0; i < d.nu; ++i) {
      const double u = d.u(i);
      const double v = d.v(j);
      const Stencil su = make_stencil(1, u, d.u_min, d.u_max, d.u_periodic, h);
      const Stencil sv = make_stencil(1, v, d.v_min, d.v_max, d.v_periodic, h);
      Eigen::Vector3d Nu = Eigen::Vector3d::Zero();
      Eigen::Vector3d Nv = Eigen::Vector3d::Zero();
      for (std::size_t k = 0; k < su.weights.size(); ++k) Nu += su.weights[k] * normal(u + su.offsets[k] * h, v);
      for (std::size_t k = 0; k < sv.weights.size(); ++k) Nv += sv.weights[k] * normal(u, v + sv.offsets[k] * h);
      const std::size_t k = static_cast<std::size_t>(j) * d.nu + i;
      out.set(k, {Nu.dot(Nu), Nu.dot(Nv), Nv.dot(Nv)});
    }
  }
  return out;
}

double isothermal_defect(const FundamentalPair& pair) {
  double m = 0.0;
  for (std::size_t k = 0; k < pair.I.a11.size(); ++k) {
    const SymmetricForm I = pair.I.at(k);
    m = std::max(m, std::max(std::abs(I.a11 - I.a22), std::abs(I.a12)) / I.a11);
  }
  return m;
}

}  // namespace cz
