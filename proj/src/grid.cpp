#include "cz/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace cz {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::degenerate_immersion: return "degenerate-immersion";
    case Errc::non_riemannian: return "non-riemannian";
    case Errc::singular_metric: return "singular-metric";
    case Errc::unknown_fixture: return "unknown-fixture";
    case Errc::clamp_violation: return "clamp-violation";
    case Errc::not_isothermal: return "not-isothermal";
    case Errc::not_ii_isothermal: return "not-ii-isothermal";
    case Errc::ii_not_definite: return "ii-not-definite";
    case Errc::zero_on_loop: return "zero-on-loop";
    case Errc::domain_exceeded: return "domain-exceeded";
    case Errc::umbilic_region: return "umbilic-region";
    case Errc::minimal_type: return "minimal-type";
    case Errc::no_convergence: return "no-convergence";
    case Errc::axis_collision: return "axis-collision";
    case Errc::axis_proximity: return "axis-proximity";
    case Errc::boundary_not_planar: return "boundary-not-planar";
    case Errc::ellipticity_failure: return "ellipticity-failure";
    case Errc::parse_error: return "parse-error";
    case Errc::io_error: return "io-error";
  }
  return "unknown";
}

void Domain2D::validate() const {
  std::ostringstream msg;
  if (!(u_min < u_max)) msg << "u_min < u_max required; ";
  if (!(v_min < v_max)) msg << "v_min < v_max required; ";
  if (nu < 8) msg << "nu >= 8 required; ";
  if (nv < 8) msg << "nv >= 8 required; ";
  if (!msg.str().empty()) throw Error(Errc::invalid_argument, "Domain2D: " + msg.str());
}

namespace {

// Sixth-order stencils scaled by 60 h (first derivative) and 180 h^2
// (second derivative). Rows k = 0, 1, 2 of the one-sided tables serve the
// node k places from the lower end; the upper end mirrors them, with a sign
// flip for the first derivative.
constexpr std::array<double, 7> kD1Central = {-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0};
constexpr std::array<double, 7> kD2Central = {2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0};
constexpr std::array<std::array<double, 7>, 3> kD1Edge = {{
    {-147.0, 360.0, -450.0, 400.0, -225.0, 72.0, -10.0},
    {-10.0, -77.0, 150.0, -100.0, 50.0, -15.0, 2.0},
    {2.0, -24.0, -35.0, 80.0, -30.0, 8.0, -1.0},
}};
constexpr std::array<std::array<double, 8>, 3> kD2Edge = {{
    {938.0, -4014.0, 7911.0, -9490.0, 7380.0, -3618.0, 1019.0, -126.0},
    {126.0, -70.0, -486.0, 855.0, -670.0, 324.0, -90.0, 11.0},
    {-11.0, 214.0, -378.0, 130.0, 85.0, -54.0, 16.0, -2.0},
}};

// Differentiates one line of n samples with stride `stride` starting at `in`.
template <class T>
void diff_line(const T* in, T* out, int n, std::size_t stride, double h, bool periodic, int order) {
  auto at = [&](int k) -> const T& { return in[static_cast<std::size_t>(k) * stride]; };
  auto wrap = [&](int k) { return ((k % n) + n) % n; };
  const double s1 = 1.0 / (60.0 * h);
  const double s2 = 1.0 / (180.0 * h * h);

  for (int i = 0; i < n; ++i) {
    T value{};
    const bool central = periodic || (i >= 3 && i <= n - 4);
    if (central) {
      const auto& c = order == 1 ? kD1Central : kD2Central;
      for (int k = 0; k < 7; ++k) value += c[k] * at(wrap(i + k - 3));
      value *= order == 1 ? s1 : s2;
    } else {
      const bool lower = i < 3;
      const int offset = lower ? i : n - 1 - i;
      const int dir = lower ? 1 : -1;
      const int base = lower ? 0 : n - 1;
      if (order == 1) {
        const auto& c = kD1Edge[offset];
        for (int k = 0; k < 7; ++k) value += c[k] * at(base + dir * k);
        value *= dir * s1;
      } else {
        const auto& c = kD2Edge[offset];
        for (int k = 0; k < 8; ++k) value += c[k] * at(base + dir * k);
        value *= s2;
      }
    }
    out[static_cast<std::size_t>(i) * stride] = value;
  }
}

template <class T>
Field<T> diff(const Field<T>& f, bool along_u, int order) {
  const Domain2D& d = f.domain();
  Field<T> out(d);
  const T* in = f.values().data();
  T* res = out.values().data();
  const std::size_t nu = static_cast<std::size_t>(d.nu);
  if (along_u) {
    if (!d.u_periodic && d.nu < 8) throw Error(Errc::invalid_argument, "grid too small for stencil");
    for (int j = 0; j < d.nv; ++j)
      diff_line(in + j * nu, res + j * nu, d.nu, 1, d.du(), d.u_periodic, order);
  } else {
    if (!d.v_periodic && d.nv < 8) throw Error(Errc::invalid_argument, "grid too small for stencil");
    for (int i = 0; i < d.nu; ++i)
      diff_line(in + i, res + i, d.nv, nu, d.dv(), d.v_periodic, order);
  }
  return out;
}

}  // namespace

ScalarField d_du(const ScalarField& f) { return diff(f, true, 1); }
ScalarField d_dv(const ScalarField& f) { return diff(f, false, 1); }
ScalarField d_uu(const ScalarField& f) { return diff(f, true, 2); }
ScalarField d_vv(const ScalarField& f) { return diff(f, false, 2); }
ComplexField d_du(const ComplexField& f) { return diff(f, true, 1); }
ComplexField d_dv(const ComplexField& f) { return diff(f, false, 1); }

ComplexField d_dz(const ComplexField& f) {
  const Complex i(0.0, 1.0);
  return zip(d_du(f), d_dv(f), [&](Complex a, Complex b) { return 0.5 * (a - i * b); });
}

ComplexField d_dzbar(const ComplexField& f) {
  const Complex i(0.0, 1.0);
  return zip(d_du(f), d_dv(f), [&](Complex a, Complex b) { return 0.5 * (a + i * b); });
}

ComplexField d_dz(const ScalarField& f) {
  return zip(d_du(f), d_dv(f), [](double a, double b) { return Complex(0.5 * a, -0.5 * b); });
}

ComplexField d_dzbar(const ScalarField& f) {
  return zip(d_du(f), d_dv(f), [](double a, double b) { return Complex(0.5 * a, 0.5 * b); });
}

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double x : f.values()) m = std::max(m, std::abs(x));
  return m;
}

double max_abs(const ComplexField& f) {
  double m = 0.0;
  for (const Complex& x : f.values()) m = std::max(m, std::abs(x));
  return m;
}

double max_abs(const ScalarField& f, const Mask& mask) {
  double m = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k)
    if (mask[k]) m = std::max(m, std::abs(f[k]));
  return m;
}

double max_abs(const ComplexField& f, const Mask& mask) {
  double m = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k)
    if (mask[k]) m = std::max(m, std::abs(f[k]));
  return m;
}

Mask interior_mask(const Domain2D& dom, int margin) {
  Mask mask(dom, 1);
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      const bool u_edge = !dom.u_periodic && (i < margin || i >= dom.nu - margin);
      const bool v_edge = !dom.v_periodic && (j < margin || j >= dom.nv - margin);
      mask(i, j) = (u_edge || v_edge) ? 0 : 1;
    }
  return mask;
}

}  // namespace cz
