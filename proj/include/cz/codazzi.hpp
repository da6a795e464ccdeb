#pragma once

#include <Eigen/Core>

#include "cz/hopf.hpp"
#include "cz/pair.hpp"

namespace cz {

/// Levi-Civita coefficients gamma[k][i][j] = Gamma^k_{ij}, index 0 = u, 1 = v.
struct ChristoffelField {
  ScalarField gamma[2][2][2];

  const Domain2D& domain() const { return gamma[0][0][0].domain(); }
};

/// Tangent vector field X = u d/du + v d/dv in chart components.
struct VectorField {
  ScalarField u, v;

  static VectorField constant(const Domain2D& dom, double cu, double cv) {
    return {ScalarField(dom, cu), ScalarField(dom, cv)};
  }
};

/// T_S(d/du, d/dv) at one grid point, in chart components.
struct CodazziSample {
  Eigen::Vector2d T = Eigen::Vector2d::Zero();
};

/// Throws Errc::singular_metric where det I <= 0.
ChristoffelField christoffel(const SymmetricFormField& I);

/// S = I^{-1} II as four component fields s[k][i] = S^k_i.
struct ShapeOperatorField {
  ScalarField s[2][2];
};
ShapeOperatorField shape_operator_field(const FundamentalPair& pair);

/// T_S(X, Y) = nabla_X (SY) - nabla_Y (SX) - S[X, Y] for arbitrary vector fields.
VectorField codazzi_tensor(const FundamentalPair& pair, const VectorField& X, const VectorField& Y);
/// Coordinate evaluation T_S(d/du, d/dv), where the bracket vanishes.
VectorField codazzi_tensor(const FundamentalPair& pair);
CodazziSample codazzi_tensor(const FundamentalPair& pair, int i, int j);

/// I(T, T) / (I(X,X) I(Y,Y) - I(X,Y)^2) with T = T_S(X, Y).
ScalarField codazzi_function(const FundamentalPair& pair, const VectorField& X, const VectorField& Y);
/// Coordinate-basis Codazzi function.
ScalarField codazzi_function(const FundamentalPair& pair);
/// sqrt of the Codazzi function; zero exactly on Codazzi pairs.
ScalarField codazzi_residual(const FundamentalPair& pair);

/// Codazzi function of the traceless operator S - H Id.
ScalarField traceless_codazzi_function(const FundamentalPair& pair);

/// |grad f|^2 with respect to the metric I.
ScalarField gradient_norm_sq(const SymmetricFormField& I, const ScalarField& f);

/// Traceless Codazzi function divided by H^2 - K on non-umbilic points, 0 on umbilics.
ScalarField umbilic_quotient(const FundamentalPair& pair, double tol_umb = kDefaultTolUmb);

/// |Q_zbar|^2 - lambda T~ |Q|^2 / (2 (H^2 - K)) on an isothermal chart,
/// set to 0 where t^2 <= tol_umb * max(1, H^2).
ScalarField lemma_anterior_residual(const FundamentalPair& pair, const HopfField& hopf,
                                    double tol_umb = kDefaultTolUmb);

/// Intrinsic curvature of a metric by the Brioschi formula. Throws Errc::singular_metric.
ScalarField gauss_curvature(const SymmetricFormField& metric);

}  // namespace cz
