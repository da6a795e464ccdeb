#pragma once

#include <utility>
#include <vector>

#include "cz/pair.hpp"

namespace cz {

inline constexpr double kDefaultTolIsothermal = 1e-8;

/// Data of a pair on an I-isothermal chart: I = 2 lambda |dz|^2 and
/// II = Q dz^2 + 2 lambda H |dz|^2 + conj(Q) dzbar^2 with z = u + i v.
struct HopfField {
  ScalarField lambda;
  ScalarField H;
  ComplexField Q;

  const Domain2D& domain() const { return lambda.domain(); }
};

/// lambda = (E + G) / 4. Throws Errc::not_isothermal unless
/// max(|E - G|, 2|F|) / (E + G) < tol at every node.
ScalarField conformal_factor(const SymmetricFormField& I, double tol = kDefaultTolIsothermal);

/// Q = (e - g)/4 - i f/2 and H = (e + g) / (4 lambda). Throws Errc::not_isothermal.
HopfField hopf_coefficient(const FundamentalPair& pair, double tol = kDefaultTolIsothermal);

/// Q_zbar - lambda H_z.
ComplexField cr_residual(const HopfField& field);

/// K - (H^2 - |Q|^2 / lambda^2).
ScalarField modulus_identity_residual(const HopfField& field, const ScalarField& K);

/// Closed loop through grid nodes; the last node connects back to the first.
struct GridLoop {
  std::vector<std::pair<int, int>> nodes;
};

/// Counter-clockwise boundary of the node rectangle [i0, i1] x [j0, j1].
GridLoop rectangular_loop(const Domain2D& dom, int i0, int j0, int i1, int j1);

/// Counter-clockwise square loop around the domain centre; `ring` = 0 is the
/// innermost square of nodes (requires even node counts).
GridLoop centered_loop(const Domain2D& dom, int ring);

struct WindingReport {
  int winding = 0;              ///< turns of Q / |Q| around the loop
  double foliation_index = 0.0; ///< -winding / 2
};

/// Sums principal argument increments of Q along the loop. Throws
/// Errc::zero_on_loop if |Q| vanishes (relative 1e-12) at a loop node.
WindingReport winding_index(const ComplexField& Q, const GridLoop& loop);
WindingReport winding_index(const HopfField& field, const GridLoop& loop);

/// Pair on an II-isothermal chart: II = 2 rho |dz|^2 and
/// I = P dz^2 + 2 lambda |dz|^2 + conj(P) dzbar^2.
struct GroveDecomposition {
  ScalarField rho;
  ScalarField lambda;
  ComplexField P;
  bool flipped = false;  ///< II was replaced by -II to make it positive

  const Domain2D& domain() const { return rho.domain(); }
};

/// Throws Errc::ii_not_definite when det II <= 0 somewhere or the sign of e
/// changes, Errc::not_ii_isothermal when II is not conformal to du^2 + dv^2.
GroveDecomposition grove_decompose(const FundamentalPair& pair, double tol = kDefaultTolIsothermal);

/// Inverse of grove_decompose, including the orientation flip.
FundamentalPair grove_reassemble(const GroveDecomposition& dec);

struct GroveCurvatureResidual {
  ScalarField H;  ///< H - lambda rho / (lambda^2 - |P|^2), H of the oriented pair
  ScalarField K;  ///< K - rho^2 / (lambda^2 - |P|^2)
};
GroveCurvatureResidual grove_hk_residual(const GroveDecomposition& dec, const FundamentalPair& pair);

/// P_zbar + (lambda K_z + P K_zbar) / (2K).
ComplexField grove_f1_residual(const GroveDecomposition& dec, const ScalarField& K);

}  // namespace cz
