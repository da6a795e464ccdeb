#pragma once

#include <functional>

#include "cz/pair.hpp"
#include "cz/profile.hpp"

namespace cz {

/// The transformed pair; H(A, B) = 0 and K(A, B) = -(H^2 - K) for any phi.
struct BryantPair {
  SymmetricFormField A;
  SymmetricFormField B;
};

/// A = cosh(phi) I + sinhc II', B = t sinh(phi) I + cosh(phi) II'.
/// Throws Errc::non_riemannian if A is not positive definite.
BryantPair bryant_transform(const FundamentalPair& pair, const PhiField& phi);

/// phi field for a pair and profile: phi(t) with t = sqrt(H^2 - K).
PhiField profile_phi_field(const FundamentalPair& pair, std::shared_ptr<const WeingartenProfile> profile);

struct OneFormField {
  ScalarField du;
  ScalarField dv;
};

/// dH - t dphi.
OneFormField closure_residual(const FundamentalPair& pair, const PhiField& phi);

/// |H - f(H^2 - K)| at every node.
ScalarField weingarten_residual(const FundamentalPair& pair, const WeingartenProfile& profile);

/// Inverts the transform given t and phi(t):
/// I = cosh(phi) A - sinhc B, II = f(t^2) I + cosh(phi) B - t sinh(phi) A.
FundamentalPair recover_from_forms(const SymmetricFormField& A, const SymmetricFormField& B, const PhiField& phi,
                                   const WeingartenProfile& profile);

/// Builds (I, II) from an A-isothermal chart and the Hopf coefficient Q of
/// B = Q dz^2 + conj(Q) dzbar^2, with t = |Q| / lambda_A. Throws
/// Errc::domain_exceeded if t^2 leaves the profile extent and
/// Errc::non_riemannian if the recovered I is degenerate.
FundamentalPair recover_pair(const SymmetricFormField& A, const ComplexField& Q,
                             std::shared_ptr<const WeingartenProfile> profile);

/// g0 = t A. Throws Errc::umbilic_region if any node is umbilic.
SymmetricFormField flat_metric(const FundamentalPair& pair, const SymmetricFormField& A,
                               double tol_umb = kDefaultTolUmb);

struct CompletenessReport {
  Mask semidefinite;                ///< 2 cosh(phi) A - I >= 0 (eigenvalue >= -1e-10)
  bool all_semidefinite = true;
  double min_eigenvalue = 0.0;      ///< smallest eigenvalue of I^{-1}(2 cosh(phi) A - I)
  double c2 = 0.0;                  ///< max cosh(phi) / t over t >= sqrt(c0); 0 if no node qualifies
};

CompletenessReport completeness_bound_check(const FundamentalPair& pair, const SymmetricFormField& A,
                                            const PhiField& phi, double c0);

/// W(x, y) with its partial derivatives.
struct WeingartenFunction {
  std::function<double(double, double)> Wx;
  std::function<double(double, double)> Wy;
};

/// W_x(t, t^2) + 2 t W_y(t, t^2).
double weingarten_condition(const WeingartenFunction& W, double t);

}  // namespace cz
