#include "cz/codazzi.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace cz {

namespace {

struct MetricInverse {
  ScalarField g11, g12, g22;  // inverse metric coefficients
};

MetricInverse inverse_metric(const SymmetricFormField& I) {
  MetricInverse inv{ScalarField(I.domain()), ScalarField(I.domain()), ScalarField(I.domain())};
  for (std::size_t k = 0; k < inv.g11.size(); ++k) {
    const SymmetricForm g = I.at(k);
    const double det = g.det();
    if (!(det > 0.0)) throw Error(Errc::singular_metric, "det I <= 0");
    inv.g11[k] = g.a22 / det;
    inv.g12[k] = -g.a12 / det;
    inv.g22[k] = g.a11 / det;
  }
  return inv;
}

// Covariant derivative (nabla_X W)^k = X(W^k) + Gamma^k_ij X^i W^j.
VectorField covariant_derivative(const ChristoffelField& gamma, const VectorField& X, const VectorField& W) {
  const ScalarField* w[2] = {&W.u, &W.v};
  const ScalarField* x[2] = {&X.u, &X.v};
  VectorField out{ScalarField(X.u.domain()), ScalarField(X.u.domain())};
  ScalarField* o[2] = {&out.u, &out.v};
  for (int k = 0; k < 2; ++k) {
    const ScalarField du = d_du(*w[k]);
    const ScalarField dv = d_dv(*w[k]);
    for (std::size_t p = 0; p < out.u.size(); ++p) {
      double acc = (*x[0])[p] * du[p] + (*x[1])[p] * dv[p];
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) acc += gamma.gamma[k][i][j][p] * (*x[i])[p] * (*w[j])[p];
      (*o[k])[p] = acc;
    }
  }
  return out;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  const ScalarField Xu_u = d_du(X.u), Xu_v = d_dv(X.u), Xv_u = d_du(X.v), Xv_v = d_dv(X.v);
  const ScalarField Yu_u = d_du(Y.u), Yu_v = d_dv(Y.u), Yv_u = d_du(Y.v), Yv_v = d_dv(Y.v);
  VectorField out{ScalarField(X.u.domain()), ScalarField(X.u.domain())};
  for (std::size_t p = 0; p < out.u.size(); ++p) {
    out.u[p] = X.u[p] * Yu_u[p] + X.v[p] * Yu_v[p] - Y.u[p] * Xu_u[p] - Y.v[p] * Xu_v[p];
    out.v[p] = X.u[p] * Yv_u[p] + X.v[p] * Yv_v[p] - Y.u[p] * Xv_u[p] - Y.v[p] * Xv_v[p];
  }
  return out;
}

VectorField apply(const ShapeOperatorField& S, const VectorField& X) {
  VectorField out{ScalarField(X.u.domain()), ScalarField(X.u.domain())};
  for (std::size_t p = 0; p < out.u.size(); ++p) {
    out.u[p] = S.s[0][0][p] * X.u[p] + S.s[0][1][p] * X.v[p];
    out.v[p] = S.s[1][0][p] * X.u[p] + S.s[1][1][p] * X.v[p];
  }
  return out;
}

double form_value(const SymmetricForm& g, double au, double av, double bu, double bv) {
  return g.a11 * au * bu + g.a12 * (au * bv + av * bu) + g.a22 * av * bv;
}

}  // namespace

ChristoffelField christoffel(const SymmetricFormField& I) {
  const MetricInverse inv = inverse_metric(I);
  const ScalarField Eu = d_du(I.a11), Ev = d_dv(I.a11);
  const ScalarField Fu = d_du(I.a12), Fv = d_dv(I.a12);
  const ScalarField Gu = d_du(I.a22), Gv = d_dv(I.a22);
  ChristoffelField out;
  for (auto& a : out.gamma)
    for (auto& b : a)
      for (auto& c : b) c = ScalarField(I.domain());
  for (std::size_t p = 0; p < Eu.size(); ++p) {
    // Lowered symbols Gamma_{l,ij} = (d_i g_jl + d_j g_il - d_l g_ij) / 2.
    double low[2][2][2];
    low[0][0][0] = 0.5 * Eu[p];
    low[1][0][0] = Fu[p] - 0.5 * Ev[p];
    low[0][0][1] = low[0][1][0] = 0.5 * Ev[p];
    low[1][0][1] = low[1][1][0] = 0.5 * Gu[p];
    low[0][1][1] = Fv[p] - 0.5 * Gu[p];
    low[1][1][1] = 0.5 * Gv[p];
    const double ginv[2][2] = {{inv.g11[p], inv.g12[p]}, {inv.g12[p], inv.g22[p]}};
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.gamma[k][i][j][p] = ginv[k][0] * low[0][i][j] + ginv[k][1] * low[1][i][j];
  }
  return out;
}

ShapeOperatorField shape_operator_field(const FundamentalPair& pair) {
  const Domain2D& dom = pair.domain();
  ShapeOperatorField S;
  for (auto& row : S.s)
    for (auto& c : row) c = ScalarField(dom);
  for (std::size_t p = 0; p < dom.size(); ++p) {
    const Eigen::Matrix2d m = shape_operator(pair.I.at(p), pair.II.at(p));
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i) S.s[k][i][p] = m(k, i);
  }
  return S;
}

VectorField codazzi_tensor(const FundamentalPair& pair, const VectorField& X, const VectorField& Y) {
  const ChristoffelField gamma = christoffel(pair.I);
  const ShapeOperatorField S = shape_operator_field(pair);
  const VectorField a = covariant_derivative(gamma, X, apply(S, Y));
  const VectorField b = covariant_derivative(gamma, Y, apply(S, X));
  const VectorField c = apply(S, lie_bracket(X, Y));
  VectorField out{ScalarField(pair.domain()), ScalarField(pair.domain())};
  for (std::size_t p = 0; p < out.u.size(); ++p) {
    out.u[p] = a.u[p] - b.u[p] - c.u[p];
    out.v[p] = a.v[p] - b.v[p] - c.v[p];
  }
  return out;
}

VectorField codazzi_tensor(const FundamentalPair& pair) {
  const Domain2D& dom = pair.domain();
  return codazzi_tensor(pair, VectorField::constant(dom, 1.0, 0.0), VectorField::constant(dom, 0.0, 1.0));
}

CodazziSample codazzi_tensor(const FundamentalPair& pair, int i, int j) {
  const VectorField T = codazzi_tensor(pair);
  CodazziSample s;
  s.T = {T.u(i, j), T.v(i, j)};
  return s;
}

ScalarField codazzi_function(const FundamentalPair& pair, const VectorField& X, const VectorField& Y) {
  const VectorField T = codazzi_tensor(pair, X, Y);
  ScalarField out(pair.domain());
  for (std::size_t p = 0; p < out.size(); ++p) {
    const SymmetricForm g = pair.I.at(p);
    const double gram = form_value(g, X.u[p], X.v[p], X.u[p], X.v[p]) * form_value(g, Y.u[p], Y.v[p], Y.u[p], Y.v[p]) -
                        std::pow(form_value(g, X.u[p], X.v[p], Y.u[p], Y.v[p]), 2);
    if (!(gram > 0.0)) throw Error(Errc::invalid_argument, "X and Y are not linearly independent");
    out[p] = form_value(g, T.u[p], T.v[p], T.u[p], T.v[p]) / gram;
  }
  return out;
}

ScalarField codazzi_function(const FundamentalPair& pair) {
  const Domain2D& dom = pair.domain();
  return codazzi_function(pair, VectorField::constant(dom, 1.0, 0.0), VectorField::constant(dom, 0.0, 1.0));
}

ScalarField codazzi_residual(const FundamentalPair& pair) {
  return map(codazzi_function(pair), [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

ScalarField traceless_codazzi_function(const FundamentalPair& pair) {
  return codazzi_function(FundamentalPair{pair.I, traceless_part(pair)});
}

ScalarField gradient_norm_sq(const SymmetricFormField& I, const ScalarField& f) {
  const MetricInverse inv = inverse_metric(I);
  const ScalarField fu = d_du(f);
  const ScalarField fv = d_dv(f);
  ScalarField out(f.domain());
  for (std::size_t p = 0; p < out.size(); ++p)
    out[p] = inv.g11[p] * fu[p] * fu[p] + 2.0 * inv.g12[p] * fu[p] * fv[p] + inv.g22[p] * fv[p] * fv[p];
  return out;
}

ScalarField umbilic_quotient(const FundamentalPair& pair, double tol_umb) {
  const CurvatureData curv = curvatures(pair, tol_umb);
  const Mask umb = umbilic_mask(curv, tol_umb);
  const ScalarField tt = traceless_codazzi_function(pair);
  ScalarField out(pair.domain());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = umb[p] ? 0.0 : tt[p] / (curv.t[p] * curv.t[p]);
  return out;
}

ScalarField lemma_anterior_residual(const FundamentalPair& pair, const HopfField& hopf, double tol_umb) {
  const CurvatureData curv = curvatures(pair, tol_umb);
  const Mask umb = umbilic_mask(curv, tol_umb);
  const ScalarField tt = traceless_codazzi_function(pair);
  const ComplexField q_zbar = d_dzbar(hopf.Q);
  ScalarField out(pair.domain());
  for (std::size_t p = 0; p < out.size(); ++p) {
    if (umb[p]) continue;
    const double t2 = curv.t[p] * curv.t[p];
    out[p] = std::norm(q_zbar[p]) - hopf.lambda[p] * tt[p] * std::norm(hopf.Q[p]) / (2.0 * t2);
  }
  return out;
}

ScalarField gauss_curvature(const SymmetricFormField& metric) {
  const ScalarField& E = metric.a11;
  const ScalarField& F = metric.a12;
  const ScalarField& G = metric.a22;
  const ScalarField Eu = d_du(E), Ev = d_dv(E), Evv = d_vv(E);
  const ScalarField Fu = d_du(F), Fv = d_dv(F), Fuv = d_du(d_dv(F));
  const ScalarField Gu = d_du(G), Gv = d_dv(G), Guu = d_uu(G);
  ScalarField out(metric.domain());
  for (std::size_t p = 0; p < out.size(); ++p) {
    const double det = E[p] * G[p] - F[p] * F[p];
    if (!(det > 0.0)) throw Error(Errc::singular_metric, "det g <= 0");
    Eigen::Matrix3d m1, m2;
    m1 << -0.5 * Evv[p] + Fuv[p] - 0.5 * Guu[p], 0.5 * Eu[p], Fu[p] - 0.5 * Ev[p],  //
        Fv[p] - 0.5 * Gu[p], E[p], F[p],                                             //
        0.5 * Gv[p], F[p], G[p];
    m2 << 0.0, 0.5 * Ev[p], 0.5 * Gu[p],  //
        0.5 * Ev[p], E[p], F[p],          //
        0.5 * Gu[p], F[p], G[p];
    out[p] = (m1.determinant() - m2.determinant()) / (det * det);
  }
  return out;
}

}  // namespace cz
