#include "cz/hopf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cz {

ScalarField conformal_factor(const SymmetricFormField& I, double tol) {
  ScalarField lambda(I.domain());
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    const SymmetricForm g = I.at(k);
    const double trace = g.a11 + g.a22;
    if (!(trace > 0.0)) throw Error(Errc::not_isothermal, "E + G <= 0");
    const double defect = std::max(std::abs(g.a11 - g.a22), 2.0 * std::abs(g.a12)) / trace;
    if (!(defect < tol)) throw Error(Errc::not_isothermal, "chart is not conformal for I (defect " + std::to_string(defect) + ")");
    lambda[k] = 0.25 * trace;
  }
  return lambda;
}

HopfField hopf_coefficient(const FundamentalPair& pair, double tol) {
  HopfField out;
  out.lambda = conformal_factor(pair.I, tol);
  out.H = ScalarField(pair.domain());
  out.Q = ComplexField(pair.domain());
  for (std::size_t k = 0; k < out.lambda.size(); ++k) {
    const SymmetricForm b = pair.II.at(k);
    out.Q[k] = Complex(0.25 * (b.a11 - b.a22), -0.5 * b.a12);
    out.H[k] = (b.a11 + b.a22) / (4.0 * out.lambda[k]);
  }
  return out;
}

ComplexField cr_residual(const HopfField& field) {
  const ComplexField q_zbar = d_dzbar(field.Q);
  const ComplexField h_z = d_dz(field.H);
  ComplexField out(field.domain());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = q_zbar[k] - field.lambda[k] * h_z[k];
  return out;
}

ScalarField modulus_identity_residual(const HopfField& field, const ScalarField& K) {
  ScalarField out(field.domain());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double l = field.lambda[k];
    out[k] = K[k] - (field.H[k] * field.H[k] - std::norm(field.Q[k]) / (l * l));
  }
  return out;
}

GridLoop rectangular_loop(const Domain2D& dom, int i0, int j0, int i1, int j1) {
  if (!(0 <= i0 && i0 < i1 && i1 < dom.nu && 0 <= j0 && j0 < j1 && j1 < dom.nv))
    throw Error(Errc::invalid_argument, "loop rectangle must lie inside the grid with positive extent");
  GridLoop loop;
  for (int i = i0; i < i1; ++i) loop.nodes.emplace_back(i, j0);
  for (int j = j0; j < j1; ++j) loop.nodes.emplace_back(i1, j);
  for (int i = i1; i > i0; --i) loop.nodes.emplace_back(i, j1);
  for (int j = j1; j > j0; --j) loop.nodes.emplace_back(i0, j);
  return loop;
}

GridLoop centered_loop(const Domain2D& dom, int ring) {
  if (dom.nu % 2 != 0 || dom.nv % 2 != 0) throw Error(Errc::invalid_argument, "centred loops need even node counts");
  const int ci = dom.nu / 2;
  const int cj = dom.nv / 2;
  return rectangular_loop(dom, ci - 1 - ring, cj - 1 - ring, ci + ring, cj + ring);
}

WindingReport winding_index(const ComplexField& Q, const GridLoop& loop) {
  if (loop.nodes.size() < 3) throw Error(Errc::invalid_argument, "loop needs at least three nodes");
  double scale = 0.0;
  for (const auto& [i, j] : loop.nodes) scale = std::max(scale, std::abs(Q(i, j)));
  for (const auto& [i, j] : loop.nodes)
    if (!(std::abs(Q(i, j)) > 1e-12 * scale)) throw Error(Errc::zero_on_loop, "Q vanishes on the loop");
  double total = 0.0;
  const std::size_t n = loop.nodes.size();
  for (std::size_t k = 0; k < n; ++k) {
    const auto [i0, j0] = loop.nodes[k];
    const auto [i1, j1] = loop.nodes[(k + 1) % n];
    total += std::arg(Q(i1, j1) / Q(i0, j0));
  }
  WindingReport report;
  report.winding = static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
  report.foliation_index = -0.5 * report.winding;
  return report;
}

WindingReport winding_index(const HopfField& field, const GridLoop& loop) { return winding_index(field.Q, loop); }

GroveDecomposition grove_decompose(const FundamentalPair& pair, double tol) {
  const Domain2D& dom = pair.domain();
  GroveDecomposition dec;
  dec.rho = ScalarField(dom);
  dec.lambda = ScalarField(dom);
  dec.P = ComplexField(dom);
  dec.flipped = pair.II.a11[0] < 0.0;
  const double sign = dec.flipped ? -1.0 : 1.0;
  for (std::size_t k = 0; k < dom.size(); ++k) {
    const SymmetricForm b = pair.II.at(k);
    if (!(b.det() > 0.0) || !(sign * b.a11 > 0.0)) throw Error(Errc::ii_not_definite, "II is not definite on the chart");
  }
  for (std::size_t k = 0; k < dom.size(); ++k) {
    const SymmetricForm b = pair.II.at(k);
    const double trace = sign * (b.a11 + b.a22);
    const double defect = std::max(std::abs(b.a11 - b.a22), 2.0 * std::abs(b.a12)) / trace;
    if (!(defect < tol)) throw Error(Errc::not_ii_isothermal, "chart is not conformal for II");
    const SymmetricForm g = pair.I.at(k);
    dec.rho[k] = 0.25 * trace;
    dec.lambda[k] = 0.25 * (g.a11 + g.a22);
    dec.P[k] = Complex(0.25 * (g.a11 - g.a22), -0.5 * g.a12);
  }
  return dec;
}

FundamentalPair grove_reassemble(const GroveDecomposition& dec) {
  const Domain2D& dom = dec.domain();
  FundamentalPair pair{SymmetricFormField(dom), SymmetricFormField(dom)};
  const double sign = dec.flipped ? -1.0 : 1.0;
  for (std::size_t k = 0; k < dom.size(); ++k) {
    const double l = dec.lambda[k];
    const Complex p = dec.P[k];
    pair.I.set(k, {2.0 * l + 2.0 * p.real(), -2.0 * p.imag(), 2.0 * l - 2.0 * p.real()});
    pair.II.set(k, {sign * 2.0 * dec.rho[k], 0.0, sign * 2.0 * dec.rho[k]});
  }
  return pair;
}

GroveCurvatureResidual grove_hk_residual(const GroveDecomposition& dec, const FundamentalPair& pair) {
  const CurvatureData curv = curvatures(pair);
  const double sign = dec.flipped ? -1.0 : 1.0;
  GroveCurvatureResidual out{ScalarField(dec.domain()), ScalarField(dec.domain())};
  for (std::size_t k = 0; k < out.H.size(); ++k) {
    const double l = dec.lambda[k];
    const double r = dec.rho[k];
    const double denom = l * l - std::norm(dec.P[k]);
    out.H[k] = sign * curv.H[k] - l * r / denom;
    out.K[k] = curv.K[k] - r * r / denom;
  }
  return out;
}

ComplexField grove_f1_residual(const GroveDecomposition& dec, const ScalarField& K) {
  const ComplexField p_zbar = d_dzbar(dec.P);
  const ComplexField k_z = d_dz(K);
  const ComplexField k_zbar = d_dzbar(K);
  ComplexField out(dec.domain());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = p_zbar[k] + (dec.lambda[k] * k_z[k] + dec.P[k] * k_zbar[k]) / (2.0 * K[k]);
  return out;
}

}  // namespace cz
