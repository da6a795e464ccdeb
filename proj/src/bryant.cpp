#include "cz/bryant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "cz/hopf.hpp"

namespace cz {

BryantPair bryant_transform(const FundamentalPair& pair, const PhiField& phi) {
  const Domain2D& dom = pair.domain();
  const CurvatureData curv = curvatures(pair);
  const SymmetricFormField traceless = traceless_part(pair, curv);
  const ScalarField sinhc = phi.sinhc();
  BryantPair out{SymmetricFormField(dom), SymmetricFormField(dom)};
  for (std::size_t k = 0; k < dom.size(); ++k) {
    const double c = std::cosh(phi.phi[k]);
    const double s = sinhc[k];
    // t sinh(phi) written as t^2 sinhc keeps umbilics exactly at zero.
    const double ts = phi.t[k] * phi.t[k] * s;
    const SymmetricForm g = pair.I.at(k);
    const SymmetricForm b = traceless.at(k);
    const SymmetricForm A{c * g.a11 + s * b.a11, c * g.a12 + s * b.a12, c * g.a22 + s * b.a22};
    if (!(A.det() > 0.0 && A.a11 > 0.0)) throw Error(Errc::non_riemannian, "transformed metric A is not positive");
    out.A.set(k, A);
    out.B.set(k, {ts * g.a11 + c * b.a11, ts * g.a12 + c * b.a12, ts * g.a22 + c * b.a22});
  }
  return out;
}

PhiField profile_phi_field(const FundamentalPair& pair, std::shared_ptr<const WeingartenProfile> profile) {
  const CurvatureData curv = curvatures(pair);
  double t_max = 0.0;
  for (double t : curv.t.values()) t_max = std::max(t_max, t);
  const double extent_t = std::sqrt(profile->extent());
  const PhiTable table(profile, std::min(t_max * (1.0 + 1e-9), extent_t));
  return phi_field(table, curv.t);
}

OneFormField closure_residual(const FundamentalPair& pair, const PhiField& phi) {
  const CurvatureData curv = curvatures(pair);
  const ScalarField Hu = d_du(curv.H), Hv = d_dv(curv.H);
  const ScalarField pu = d_du(phi.phi), pv = d_dv(phi.phi);
  OneFormField out{ScalarField(pair.domain()), ScalarField(pair.domain())};
  for (std::size_t k = 0; k < out.du.size(); ++k) {
    out.du[k] = Hu[k] - phi.t[k] * pu[k];
    out.dv[k] = Hv[k] - phi.t[k] * pv[k];
  }
  return out;
}

ScalarField weingarten_residual(const FundamentalPair& pair, const WeingartenProfile& profile) {
  const CurvatureData curv = curvatures(pair);
  ScalarField out(pair.domain());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::abs(curv.H[k] - profile.f(curv.t[k] * curv.t[k]));
  return out;
}

FundamentalPair recover_from_forms(const SymmetricFormField& A, const SymmetricFormField& B, const PhiField& phi,
                                   const WeingartenProfile& profile) {
  const Domain2D& dom = A.domain();
  const ScalarField sinhc = phi.sinhc();
  FundamentalPair out{SymmetricFormField(dom), SymmetricFormField(dom)};
  for (std::size_t k = 0; k < dom.size(); ++k) {
    const double t = phi.t[k];
    if (t * t > profile.extent()) throw Error(Errc::domain_exceeded, "t^2 beyond the profile extent");
    const double c = std::cosh(phi.phi[k]);
    const double s = sinhc[k];
    const double ts = t * t * s;
    const double h = profile.f(t * t);
    const SymmetricForm a = A.at(k);
    const SymmetricForm b = B.at(k);
    const SymmetricForm I{c * a.a11 - s * b.a11, c * a.a12 - s * b.a12, c * a.a22 - s * b.a22};
    if (!(I.det() > 0.0 && I.a11 > 0.0)) throw Error(Errc::non_riemannian, "recovered metric I is not positive");
    out.I.set(k, I);
    out.II.set(k, {h * I.a11 + c * b.a11 - ts * a.a11, h * I.a12 + c * b.a12 - ts * a.a12,
                   h * I.a22 + c * b.a22 - ts * a.a22});
  }
  return out;
}

FundamentalPair recover_pair(const SymmetricFormField& A, const ComplexField& Q,
                             std::shared_ptr<const WeingartenProfile> profile) {
  const Domain2D& dom = A.domain();
  const ScalarField lambda = conformal_factor(A);
  SymmetricFormField B(dom);
  ScalarField t(dom);
  double t_max = 0.0;
  for (std::size_t k = 0; k < dom.size(); ++k) {
    const Complex q = Q[k];
    B.set(k, {2.0 * q.real(), -2.0 * q.imag(), -2.0 * q.real()});
    t[k] = std::abs(q) / lambda[k];
    if (t[k] * t[k] >= profile->extent()) throw Error(Errc::domain_exceeded, "t^2 beyond the profile extent");
    t_max = std::max(t_max, t[k]);
  }
  const PhiTable table(profile, std::min(t_max * (1.0 + 1e-9), std::sqrt(profile->extent())));
  return recover_from_forms(A, B, phi_field(table, t), *profile);
}

SymmetricFormField flat_metric(const FundamentalPair& pair, const SymmetricFormField& A, double tol_umb) {
  const CurvatureData curv = curvatures(pair, tol_umb);
  const Mask umb = umbilic_mask(curv, tol_umb);
  for (std::uint8_t m : umb.values())
    if (m) throw Error(Errc::umbilic_region, "flat metric requested on a region containing umbilics");
  return scaled(curv.t, A);
}

CompletenessReport completeness_bound_check(const FundamentalPair& pair, const SymmetricFormField& A,
                                            const PhiField& phi, double c0) {
  const Domain2D& dom = pair.domain();
  CompletenessReport report;
  report.semidefinite = Mask(dom);
  report.min_eigenvalue = std::numeric_limits<double>::infinity();
  const double t_floor = std::sqrt(std::max(c0, 0.0));
  for (std::size_t k = 0; k < dom.size(); ++k) {
    const double c = std::cosh(phi.phi[k]);
    const Eigen::Matrix2d g = pair.I.at(k).matrix();
    const Eigen::Matrix2d m = 2.0 * c * A.at(k).matrix() - g;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix2d> solver(m, g, Eigen::EigenvaluesOnly);
    const double ev = solver.eigenvalues().minCoeff();
    report.min_eigenvalue = std::min(report.min_eigenvalue, ev);
    report.semidefinite[k] = ev >= -1e-10;
    report.all_semidefinite = report.all_semidefinite && report.semidefinite[k];
    if (phi.t[k] >= t_floor && phi.t[k] > 0.0) report.c2 = std::max(report.c2, c / phi.t[k]);
  }
  return report;
}

double weingarten_condition(const WeingartenFunction& W, double t) {
  return W.Wx(t, t * t) + 2.0 * t * W.Wy(t, t * t);
}

}  // namespace cz
