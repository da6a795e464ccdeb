#pragma once

#include <Eigen/Core>

#include "cz/grid.hpp"

namespace cz {

/// Coefficients of a11 du^2 + 2 a12 du dv + a22 dv^2 at one point.
struct SymmetricForm {
  double a11 = 0.0;
  double a12 = 0.0;
  double a22 = 0.0;

  double det() const { return a11 * a22 - a12 * a12; }
  Eigen::Matrix2d matrix() const {
    Eigen::Matrix2d m;
    m << a11, a12, a12, a22;
    return m;
  }
  static SymmetricForm from_matrix(const Eigen::Matrix2d& m) { return {m(0, 0), 0.5 * (m(0, 1) + m(1, 0)), m(1, 1)}; }
};

/// Quadratic-form field over a sampled chart domain.
struct SymmetricFormField {
  ScalarField a11, a12, a22;

  SymmetricFormField() = default;
  explicit SymmetricFormField(const Domain2D& dom) : a11(dom), a12(dom), a22(dom) {}
  SymmetricFormField(ScalarField c11, ScalarField c12, ScalarField c22)
      : a11(std::move(c11)), a12(std::move(c12)), a22(std::move(c22)) {}

  const Domain2D& domain() const { return a11.domain(); }
  SymmetricForm at(int i, int j) const { return {a11(i, j), a12(i, j), a22(i, j)}; }
  SymmetricForm at(std::size_t k) const { return {a11[k], a12[k], a22[k]}; }
  void set(std::size_t k, const SymmetricForm& f) {
    a11[k] = f.a11;
    a12[k] = f.a12;
    a22[k] = f.a22;
  }

  /// Throws Errc::invalid_argument if any coefficient is not finite.
  void validate_finite() const;
};

/// Pointwise alpha * P + beta * R with scalar-field weights.
SymmetricFormField combine(const ScalarField& alpha, const SymmetricFormField& p, const ScalarField& beta,
                           const SymmetricFormField& r);
SymmetricFormField scaled(const ScalarField& alpha, const SymmetricFormField& p);
SymmetricFormField scaled(double alpha, const SymmetricFormField& p);
double max_abs_difference(const SymmetricFormField& p, const SymmetricFormField& r);

/// A Riemannian metric I with an arbitrary quadratic form II on one chart.
struct FundamentalPair {
  SymmetricFormField I;
  SymmetricFormField II;

  const Domain2D& domain() const { return I.domain(); }
  /// Throws Errc::non_riemannian where det(I) <= 0 or I is not positive.
  void validate() const;
};

struct CurvatureData {
  ScalarField H;
  ScalarField K;
  ScalarField k1;  ///< k1 >= k2
  ScalarField k2;
  ScalarField t;   ///< sqrt(H^2 - K)
};

inline constexpr double kDefaultTolUmb = 1e-10;

/// S = I^{-1} II at a point. Throws Errc::singular_metric if det(I) <= 0.
Eigen::Matrix2d shape_operator(const SymmetricForm& I, const SymmetricForm& II);
Eigen::Matrix2d shape_operator(const FundamentalPair& pair, int i, int j);

double mean_curvature(const SymmetricForm& I, const SymmetricForm& II);
double extrinsic_curvature(const SymmetricForm& I, const SymmetricForm& II);

/// Mean, extrinsic and principal curvatures of the pair.
///
/// Round-off can push H^2 - K slightly below zero; values above
/// -tol_umb * max(1, H^2) are clamped to zero, anything lower raises
/// Errc::clamp_violation since it signals inconsistent input fields.
CurvatureData curvatures(const FundamentalPair& pair, double tol_umb = kDefaultTolUmb);

/// True where t^2 < tol_umb * max(1, H^2).
Mask umbilic_mask(const CurvatureData& curv, double tol_umb = kDefaultTolUmb);
Mask umbilic_mask(const FundamentalPair& pair, double tol_umb = kDefaultTolUmb);

/// II' = II - H I.
SymmetricFormField traceless_part(const FundamentalPair& pair);
SymmetricFormField traceless_part(const FundamentalPair& pair, const CurvatureData& curv);

/// III = -K I + 2H II.
SymmetricFormField third_form(const FundamentalPair& pair);
SymmetricFormField third_form(const FundamentalPair& pair, const CurvatureData& curv);

}  // namespace cz
