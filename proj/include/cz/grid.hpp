#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <type_traits>
#include <vector>

#include "cz/errors.hpp"

namespace cz {

using Complex = std::complex<double>;

/// Rectangular parameter domain sampled on a uniform node-centered grid.
///
/// Periodic directions place `n` nodes on the half-open interval
/// [min, max); non-periodic directions place `n` nodes on [min, max]
/// including both end points.
struct Domain2D {
  double u_min = 0.0;
  double u_max = 1.0;
  double v_min = 0.0;
  double v_max = 1.0;
  bool u_periodic = false;
  bool v_periodic = false;
  int nu = 32;
  int nv = 32;

  /// Throws Errc::invalid_argument when an invariant is violated.
  void validate() const;

  double du() const { return (u_max - u_min) / (u_periodic ? nu : nu - 1); }
  double dv() const { return (v_max - v_min) / (v_periodic ? nv : nv - 1); }
  double u(int i) const { return u_min + i * du(); }
  double v(int j) const { return v_min + j * dv(); }
  std::size_t size() const { return static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv); }

  Domain2D with_resolution(int nu_new, int nv_new) const {
    Domain2D d = *this;
    d.nu = nu_new;
    d.nv = nv_new;
    return d;
  }

  bool operator==(const Domain2D&) const = default;
};

template <class T>
class Field {
 public:
  Field() = default;
  explicit Field(const Domain2D& dom, T init = T{}) : dom_(dom), data_(dom.size(), init) {}

  template <class Fn>
  static Field sample(const Domain2D& dom, Fn&& fn) {
    Field out(dom);
    for (int j = 0; j < dom.nv; ++j)
      for (int i = 0; i < dom.nu; ++i) out(i, j) = fn(dom.u(i), dom.v(j));
    return out;
  }

  const Domain2D& domain() const { return dom_; }
  std::size_t size() const { return data_.size(); }

  T& operator()(int i, int j) { return data_[index(i, j)]; }
  const T& operator()(int i, int j) const { return data_[index(i, j)]; }
  T& operator[](std::size_t k) { return data_[k]; }
  const T& operator[](std::size_t k) const { return data_[k]; }

  std::vector<T>& values() { return data_; }
  const std::vector<T>& values() const { return data_; }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(dom_.nu) + static_cast<std::size_t>(i);
  }

  Domain2D dom_;
  std::vector<T> data_;
};

using ScalarField = Field<double>;
using ComplexField = Field<Complex>;
/// Boolean field; stored as bytes so elements are addressable.
using Mask = Field<std::uint8_t>;

/// Applies `fn` to every value; the result type follows `fn`.
template <class T, class Fn>
auto map(const Field<T>& a, Fn&& fn) {
  using R = std::invoke_result_t<Fn, T>;
  Field<R> out(a.domain());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = fn(a[k]);
  return out;
}

template <class T, class U, class Fn>
auto zip(const Field<T>& a, const Field<U>& b, Fn&& fn) {
  using R = std::invoke_result_t<Fn, T, U>;
  Field<R> out(a.domain());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = fn(a[k], b[k]);
  return out;
}

// Sixth-order finite differences along one grid direction. Periodic
// directions wrap; otherwise the three nodes nearest each end use one-sided
// stencils of the same order.
ScalarField d_du(const ScalarField& f);
ScalarField d_dv(const ScalarField& f);
ScalarField d_uu(const ScalarField& f);
ScalarField d_vv(const ScalarField& f);
ComplexField d_du(const ComplexField& f);
ComplexField d_dv(const ComplexField& f);

/// Wirtinger derivatives with z = u + i v.
ComplexField d_dz(const ComplexField& f);
ComplexField d_dzbar(const ComplexField& f);
ComplexField d_dz(const ScalarField& f);
ComplexField d_dzbar(const ScalarField& f);

double max_abs(const ScalarField& f);
double max_abs(const ComplexField& f);

/// Maximum of |f| restricted to nodes where mask is true; 0 for an empty mask.
double max_abs(const ScalarField& f, const Mask& mask);
double max_abs(const ComplexField& f, const Mask& mask);

/// Mask of nodes at least `margin` nodes away from every non-periodic edge.
Mask interior_mask(const Domain2D& dom, int margin);

}  // namespace cz
