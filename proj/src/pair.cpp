#include "cz/pair.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cz {

void SymmetricFormField::validate_finite() const {
  for (std::size_t k = 0; k < a11.size(); ++k) {
    if (!std::isfinite(a11[k]) || !std::isfinite(a12[k]) || !std::isfinite(a22[k]))
      throw Error(Errc::invalid_argument, "quadratic form field has a non-finite coefficient");
  }
}

SymmetricFormField combine(const ScalarField& alpha, const SymmetricFormField& p, const ScalarField& beta,
                           const SymmetricFormField& r) {
  SymmetricFormField out(p.domain());
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    out.a11[k] = alpha[k] * p.a11[k] + beta[k] * r.a11[k];
    out.a12[k] = alpha[k] * p.a12[k] + beta[k] * r.a12[k];
    out.a22[k] = alpha[k] * p.a22[k] + beta[k] * r.a22[k];
  }
  return out;
}

SymmetricFormField scaled(const ScalarField& alpha, const SymmetricFormField& p) {
  SymmetricFormField out(p.domain());
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    out.a11[k] = alpha[k] * p.a11[k];
    out.a12[k] = alpha[k] * p.a12[k];
    out.a22[k] = alpha[k] * p.a22[k];
  }
  return out;
}

SymmetricFormField scaled(double alpha, const SymmetricFormField& p) {
  return scaled(ScalarField(p.domain(), alpha), p);
}

double max_abs_difference(const SymmetricFormField& p, const SymmetricFormField& r) {
  double m = 0.0;
  for (std::size_t k = 0; k < p.a11.size(); ++k) {
    m = std::max({m, std::abs(p.a11[k] - r.a11[k]), std::abs(p.a12[k] - r.a12[k]), std::abs(p.a22[k] - r.a22[k])});
  }
  return m;
}

void FundamentalPair::validate() const {
  I.validate_finite();
  II.validate_finite();
  if (!(I.domain() == II.domain())) throw Error(Errc::invalid_argument, "I and II live on different grids");
  for (std::size_t k = 0; k < I.a11.size(); ++k) {
    const SymmetricForm f = I.at(k);
    if (!(f.det() > 0.0) || !(f.a11 > 0.0)) {
      std::ostringstream msg;
      msg << "metric is not positive definite at node " << k << " (det = " << f.det() << ")";
      throw Error(Errc::non_riemannian, msg.str());
    }
  }
}

Eigen::Matrix2d shape_operator(const SymmetricForm& I, const SymmetricForm& II) {
  const double det = I.det();
  if (!(det > 0.0)) throw Error(Errc::singular_metric, "shape operator needs det(I) > 0");
  Eigen::Matrix2d inv;
  inv << I.a22, -I.a12, -I.a12, I.a11;
  inv /= det;
  return inv * II.matrix();
}

Eigen::Matrix2d shape_operator(const FundamentalPair& pair, int i, int j) {
  return shape_operator(pair.I.at(i, j), pair.II.at(i, j));
}

double mean_curvature(const SymmetricForm& I, const SymmetricForm& II) {
  return (I.a11 * II.a22 + I.a22 * II.a11 - 2.0 * I.a12 * II.a12) / (2.0 * I.det());
}

double extrinsic_curvature(const SymmetricForm& I, const SymmetricForm& II) { return II.det() / I.det(); }

CurvatureData curvatures(const FundamentalPair& pair, double tol_umb) {
  const Domain2D& dom = pair.domain();
  CurvatureData c{ScalarField(dom), ScalarField(dom), ScalarField(dom), ScalarField(dom), ScalarField(dom)};
  for (std::size_t k = 0; k < dom.size(); ++k) {
    const SymmetricForm I = pair.I.at(k);
    const SymmetricForm II = pair.II.at(k);
    if (!(I.det() > 0.0)) throw Error(Errc::non_riemannian, "curvatures need a Riemannian I");
    const double H = mean_curvature(I, II);
    const double K = extrinsic_curvature(I, II);
    double disc = H * H - K;
    if (disc < 0.0) {
      if (disc < -tol_umb * std::max(1.0, H * H)) {
        std::ostringstream msg;
        msg << "H^2 - K = " << disc << " at node " << k;
        throw Error(Errc::clamp_violation, msg.str());
      }
      disc = 0.0;
    }
    const double t = std::sqrt(disc);
    c.H[k] = H;
    c.K[k] = K;
    c.t[k] = t;
    c.k1[k] = H + t;
    c.k2[k] = H - t;
  }
  return c;
}

Mask umbilic_mask(const CurvatureData& curv, double tol_umb) {
  Mask mask(curv.H.domain(), 0);
  for (std::size_t k = 0; k < mask.size(); ++k) {
    const double H = curv.H[k];
    mask[k] = curv.t[k] * curv.t[k] < tol_umb * std::max(1.0, H * H) ? 1 : 0;
  }
  return mask;
}

Mask umbilic_mask(const FundamentalPair& pair, double tol_umb) {
  // Clamping must not reject points the mask is meant to flag.
  return umbilic_mask(curvatures(pair, std::max(tol_umb, kDefaultTolUmb)), tol_umb);
}

SymmetricFormField traceless_part(const FundamentalPair& pair, const CurvatureData& curv) {
  return combine(ScalarField(pair.domain(), 1.0), pair.II, map(curv.H, [](double h) { return -h; }), pair.I);
}

SymmetricFormField traceless_part(const FundamentalPair& pair) { return traceless_part(pair, curvatures(pair)); }

SymmetricFormField third_form(const FundamentalPair& pair, const CurvatureData& curv) {
  return combine(map(curv.K, [](double k) { return -k; }), pair.I, map(curv.H, [](double h) { return 2.0 * h; }),
                 pair.II);
}

SymmetricFormField third_form(const FundamentalPair& pair) { return third_form(pair, curvatures(pair)); }

}  // namespace cz
