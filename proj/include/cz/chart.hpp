#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "cz/grid.hpp"
#include "cz/pair.hpp"

namespace cz {

/// Position, first and second partials and unit normal at one chart point.
struct Jet2 {
  Eigen::Vector3d X = Eigen::Vector3d::Zero();
  Eigen::Vector3d Xu = Eigen::Vector3d::Zero();
  Eigen::Vector3d Xv = Eigen::Vector3d::Zero();
  Eigen::Vector3d Xuu = Eigen::Vector3d::Zero();
  Eigen::Vector3d Xuv = Eigen::Vector3d::Zero();
  Eigen::Vector3d Xvv = Eigen::Vector3d::Zero();
  Eigen::Vector3d N = Eigen::Vector3d::Zero();
};

using Immersion = std::function<Eigen::Vector3d(double, double)>;
/// Exact jets; implementations may leave N unset, sample_jet fills it.
using JetFunction = std::function<Jet2(double, double)>;

/// Single-chart parametrized surface in Euclidean 3-space.
struct Chart {
  std::string name;
  Immersion immersion;
  std::optional<JetFunction> analytic_jets;
  Domain2D domain;
  bool isothermal = false;  ///< declared; verified by consumers that rely on it
};

/// Jets at (u, v). Analytic jets are used when present, otherwise
/// fourth-order differences with step h (h <= 0 selects extent * 1e-3).
/// N = (Xu x Xv) / |Xu x Xv|; throws Errc::degenerate_immersion when the
/// cross product is below 1e-12.
Jet2 sample_jet(const Chart& chart, double u, double v, double h = 0.0);

/// Same as sample_jet but always differentiates the immersion numerically.
Jet2 finite_difference_jet(const Chart& chart, double u, double v, double h);

/// (E, F, G) and (e, f, g) at one jet. Throws Errc::non_riemannian if EG - F^2 <= 0.
std::pair<SymmetricForm, SymmetricForm> fundamental_forms(const Jet2& jet);

/// Samples I and II over the chart's grid.
FundamentalPair sample_pair(const Chart& chart, double h = 0.0);

/// Gauss-map metric <dN, dN> sampled on the grid by differencing N over
/// neighbouring parameter values with step h (independent of II).
SymmetricFormField gauss_map_metric(const Chart& chart, double h);

/// max(|E - G|, |F|) / E over the grid.
double isothermal_defect(const FundamentalPair& pair);

}  // namespace cz
