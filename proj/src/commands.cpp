#include "cz/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

#include <Eigen/Dense>

#include "cz/bryant.hpp"
#include "cz/codazzi.hpp"
#include "cz/fixtures.hpp"
#include "cz/hopf.hpp"
#include "cz/profile.hpp"
#include "cz/rotgen.hpp"

#ifndef CZ_VERSION_STRING
#define CZ_VERSION_STRING "unknown"
#endif

namespace cz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
// Strict inequality 4 x f'(x)^2 < 1 expressed as residual <= tolerance.
constexpr double kEllipticityTol = 1.0 - 1e-12;
constexpr std::uint32_t kFieldSeed = 20240607u;

double parse_double(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
    throw Error(Errc::parse_error, "not a number: '" + std::string(text) + "'");
  return value;
}

int parse_int(std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error(Errc::parse_error, "not an integer: '" + std::string(text) + "'");
  return value;
}

class Suite {
 public:
  explicit Suite(const RunConfig& config) : config_(config) {}

  void check(const std::string& name, double residual, double default_tol,
             std::optional<std::string> error = std::nullopt) {
    out.report.add(name, residual, default_tol, config_.tolerances, std::move(error));
  }

  // Runs `fn`; a library error becomes a failed check named `step`.
  template <class Fn>
  bool guarded(const std::string& step, double default_tol, Fn&& fn) {
    try {
      fn();
      return true;
    } catch (const Error& e) {
      out.report.add_error(step, default_tol, config_.tolerances, e.what());
      return false;
    }
  }

  nlohmann::ordered_json& results() { return out.report.results(); }

  RunOutput out;

 private:
  const RunConfig& config_;
};

void write_meta(Report& report, const RunConfig& config, const Domain2D* dom) {
  auto& meta = report.meta();
  meta["tool"] = "czkit";
  meta["version"] = CZ_VERSION_STRING;
  meta["command"] = std::string(to_string(config.command));
  meta["surface"] = config.surface;
  meta["params"] = config.params;
  if (config.profile)
    meta["profile"] = *config.profile;
  else
    meta["profile"] = nullptr;
  meta["grid"] = {{"nu", config.nu}, {"nv", config.nv}};
  if (dom)
    meta["steps"] = {{"du", dom->du()}, {"dv", dom->dv()}};
  else
    meta["steps"] = nullptr;
  nlohmann::ordered_json tol = nlohmann::ordered_json::object();
  for (const auto& [name, value] : config.tolerances) tol[name] = value;
  meta["tolerance_overrides"] = tol;
  meta["results"] = nlohmann::ordered_json::object();
}

void require_surface(const RunConfig& config) {
  if (config.surface.empty()) throw Error(Errc::invalid_argument, "--surface is required");
}

std::shared_ptr<const WeingartenProfile> require_profile(const RunConfig& config) {
  if (!config.profile) throw Error(Errc::invalid_argument, "--profile is required");
  return std::make_shared<const WeingartenProfile>(parse_profile(*config.profile));
}

double max_of(const ScalarField& f) {
  double m = -kInf;
  for (double x : f.values()) m = std::max(m, x);
  return m;
}

double min_of(const ScalarField& f) {
  double m = kInf;
  for (double x : f.values()) m = std::min(m, x);
  return m;
}

double max_coefficient(const SymmetricFormField& f) {
  return std::max({max_abs(f.a11), max_abs(f.a12), max_abs(f.a22)});
}

double relative_difference(const SymmetricFormField& a, const SymmetricFormField& b) {
  return max_abs_difference(a, b) / std::max(1.0, max_coefficient(b));
}

// Smooth pseudo-random field built from unit-frequency modes, so periodic
// directions stay periodic.
ScalarField smooth_field(const Domain2D& dom, std::mt19937& rng, double base, double amplitude) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double a = unit(rng), b = unit(rng), c = unit(rng);
  const double pa = kPi * unit(rng), pb = kPi * unit(rng), pc = kPi * unit(rng);
  const double ku = 2.0 * kPi / (dom.u_max - dom.u_min), kv = 2.0 * kPi / (dom.v_max - dom.v_min);
  return ScalarField::sample(dom, [&](double u, double v) {
    const double x = ku * (u - dom.u_min), y = kv * (v - dom.v_min);
    return base + amplitude * (a * std::sin(x + pa) + b * std::sin(y + pb) + c * std::sin(x + y + pc)) / 3.0;
  });
}

VectorField smooth_vector_field(const Domain2D& dom, std::mt19937& rng, double bu, double bv) {
  return {smooth_field(dom, rng, bu, 0.5), smooth_field(dom, rng, bv, 0.5)};
}

VectorField combine(const ScalarField& f1, const VectorField& X1, const ScalarField& f2, const VectorField& X2) {
  VectorField out{ScalarField(f1.domain()), ScalarField(f1.domain())};
  for (std::size_t k = 0; k < f1.size(); ++k) {
    out.u[k] = f1[k] * X1.u[k] + f2[k] * X2.u[k];
    out.v[k] = f1[k] * X1.v[k] + f2[k] * X2.v[k];
  }
  return out;
}

// max over nodes of |a - b| measured with the metric I.
double max_metric_difference(const SymmetricFormField& I, const VectorField& a, const VectorField& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.u.size(); ++k) {
    const double du = a.u[k] - b.u[k], dv = a.v[k] - b.v[k];
    const SymmetricForm g = I.at(k);
    m = std::max(m, std::sqrt(std::max(0.0, g.a11 * du * du + 2.0 * g.a12 * du * dv + g.a22 * dv * dv)));
  }
  return m;
}

VectorField apply_shape(const ShapeOperatorField& S, const VectorField& X) {
  VectorField out{ScalarField(X.u.domain()), ScalarField(X.u.domain())};
  for (std::size_t k = 0; k < X.u.size(); ++k) {
    out.u[k] = S.s[0][0][k] * X.u[k] + S.s[0][1][k] * X.v[k];
    out.v[k] = S.s[1][0][k] * X.u[k] + S.s[1][1][k] * X.v[k];
  }
  return out;
}

ScalarField directional_derivative(const VectorField& X, const ScalarField& f) {
  const ScalarField fu = d_du(f), fv = d_dv(f);
  ScalarField out(f.domain());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = X.u[k] * fu[k] + X.v[k] * fv[k];
  return out;
}

// Masks may disagree at a node only if the other mask holds at a neighbour.
double mask_mismatch(const Mask& a, const Mask& b) {
  const Domain2D& dom = a.domain();
  auto near = [&](const Mask& m, int i, int j) {
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        int ii = i + di, jj = j + dj;
        if (dom.u_periodic) ii = (ii + dom.nu) % dom.nu;
        if (dom.v_periodic) jj = (jj + dom.nv) % dom.nv;
        if (ii < 0 || jj < 0 || ii >= dom.nu || jj >= dom.nv) continue;
        if (m(ii, jj)) return true;
      }
    return false;
  };
  double count = 0.0;
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      if (a(i, j) == b(i, j)) continue;
      if (a(i, j) ? !near(b, i, j) : !near(a, i, j)) count += 1.0;
    }
  return count;
}

void add_uv(std::vector<double>& row, const Domain2D& dom, int i, int j) {
  row.push_back(dom.u(i));
  row.push_back(dom.v(j));
}

CsvTable hopf_table(const HopfField& hopf, const ScalarField& K, const ComplexField& cr) {
  CsvTable table({"u", "v", "re_q", "im_q", "lambda", "h", "k", "cr_res_re", "cr_res_im"});
  const Domain2D& dom = hopf.domain();
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      table.add_row({dom.u(i), dom.v(j), hopf.Q(i, j).real(), hopf.Q(i, j).imag(), hopf.lambda(i, j), hopf.H(i, j),
                     K(i, j), cr(i, j).real(), cr(i, j).imag()});
    }
  return table;
}

CsvTable profile_table(const RotationalSurface& surface) {
  CsvTable table({"s", "r", "z", "theta", "kappa1", "kappa2", "H", "K"});
  auto add = [&](const ProfileSample& p) { table.add_row({p.s, p.r, p.z, p.theta, p.kappa1, p.kappa2, p.H(), p.K()}); };
  for (const ProfileSample& p : surface.samples) add(p);
  if (surface.end_kind != ProfileEnd::arc_length) add(surface.end);
  return table;
}

std::string_view to_string(ProfileEnd end) {
  switch (end) {
    case ProfileEnd::arc_length: return "arc_length";
    case ProfileEnd::axis_closure: return "axis_closure";
    case ProfileEnd::plane_return: return "plane_return";
    case ProfileEnd::theta_reached: return "theta_reached";
  }
  return "unknown";
}

// Arc-length range of samples at least 5% of the maximal radius away from the axis.
std::pair<double, double> off_axis_range(const RotationalSurface& surface) {
  double r_max = 0.0;
  for (const ProfileSample& p : surface.samples) r_max = std::max(r_max, p.r);
  double lo = kInf, hi = -kInf;
  for (const ProfileSample& p : surface.samples)
    if (p.r >= 0.05 * r_max) {
      lo = std::min(lo, p.s);
      hi = std::max(hi, p.s);
    }
  if (!(lo < hi)) throw Error(Errc::axis_proximity, "profile stays next to the axis");
  return {lo, hi};
}

void hopf_checks(Suite& suite, const RunConfig& config, const Chart& chart) {
  FundamentalPair pair;
  CurvatureData curv;
  if (!suite.guarded("hopf_chart", 0.0, [&] {
        pair = sample_pair(chart);
        curv = curvatures(pair);
      }))
    return;
  suite.check("isothermal_defect", isothermal_defect(pair), kDefaultTolIsothermal);
  HopfField hopf;
  if (!suite.guarded("hopf_coefficient", 0.0, [&] { hopf = hopf_coefficient(pair); })) return;
  const ComplexField cr = cr_residual(hopf);
  if (max_abs(hopf.Q) < 1e-12)
    suite.results()["trivially_zero"] = {"hopf_cr_residual", "hopf_modulus_identity", "hopf_q_zero_set",
                                         "hopf_holomorphic"};
  suite.check("hopf_cr_residual", max_abs(cr), 1e-5);
  suite.check("hopf_modulus_identity", max_abs(modulus_identity_residual(hopf, curv.K)), 1e-8);

  Mask q_zero(pair.domain());
  for (std::size_t k = 0; k < q_zero.size(); ++k) {
    const double q2 = std::norm(hopf.Q[k]) / (hopf.lambda[k] * hopf.lambda[k]);
    q_zero[k] = q2 < kDefaultTolUmb * std::max(1.0, curv.H[k] * curv.H[k]);
  }
  suite.check("hopf_q_zero_set", mask_mismatch(q_zero, umbilic_mask(curv)), 0.0);
  suite.guarded("traceless_hopf_identity", 1e-5,
                [&] { suite.check("traceless_hopf_identity", max_abs(lemma_anterior_residual(pair, hopf)), 1e-5); });

  const double h0 = curv.H[0];
  const double spread = max_of(curv.H) - min_of(curv.H);
  if (spread <= 1e-9 * std::max(1.0, std::abs(h0))) {
    suite.check("hopf_holomorphic", max_abs(d_dzbar(hopf.Q)), 1e-6);
    suite.results()["constant_mean_curvature"] = h0;
  }
  if (chart.name == "catenoid") {
    const double c = config.params.empty() ? 1.0 : config.params[0];
    double dev = 0.0;
    for (const Complex& q : hopf.Q.values()) dev = std::max(dev, std::abs(q - Complex(-0.5 * c, 0.0)));
    suite.check("hopf_catenoid_q", dev, 1e-8);
  }
  suite.out.tables.emplace("hopf.csv", hopf_table(hopf, curv.K, cr));
}

void grove_checks(Suite& suite, const Chart& chart, bool with_table) {
  FundamentalPair pair;
  CurvatureData curv;
  GroveDecomposition dec;
  if (!suite.guarded("grove_decompose", 0.0, [&] {
        pair = sample_pair(chart);
        curv = curvatures(pair);
        dec = grove_decompose(pair);
      }))
    return;
  const GroveCurvatureResidual hk = grove_hk_residual(dec, pair);
  const ComplexField f1 = grove_f1_residual(dec, curv.K);
  suite.check("grove_hk_h", max_abs(hk.H), 1e-6);
  suite.check("grove_hk_k", max_abs(hk.K), 1e-6);
  suite.check("grove_f1", max_abs(f1), 1e-4);
  const FundamentalPair back = grove_reassemble(dec);
  suite.check("grove_reassembly", std::max(max_abs_difference(back.I, pair.I), max_abs_difference(back.II, pair.II)),
              1e-13);
  suite.guarded("grove_flip", 0.0, [&] {
    const FundamentalPair negated{pair.I, scaled(-1.0, pair.II)};
    const GroveDecomposition flipped = grove_decompose(negated);
    double dev = flipped.flipped == dec.flipped ? kInf : 0.0;
    for (std::size_t k = 0; k < dec.P.size(); ++k)
      dev = std::max({dev, std::abs(flipped.P[k] - dec.P[k]), std::abs(flipped.rho[k] - dec.rho[k])});
    suite.check("grove_flip", dev, 0.0);
  });
  suite.results()["grove_flipped"] = dec.flipped;
  if (!with_table) return;
  CsvTable table({"u", "v", "rho", "lambda", "re_p", "im_p", "hk_res_h", "hk_res_k", "f1_res_re", "f1_res_im"});
  const Domain2D& dom = pair.domain();
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i)
      table.add_row({dom.u(i), dom.v(j), dec.rho(i, j), dec.lambda(i, j), dec.P(i, j).real(), dec.P(i, j).imag(),
                     hk.H(i, j), hk.K(i, j), f1(i, j).real(), f1(i, j).imag()});
  suite.out.tables.emplace("grove.csv", std::move(table));
}

void tensor_property_checks(Suite& suite, const FundamentalPair& pair) {
  const Domain2D& dom = pair.domain();
  std::mt19937 rng(kFieldSeed);
  // A non-Codazzi pair, so that T does not vanish.
  const ScalarField w = smooth_field(dom, rng, 0.0, 0.3);
  const FundamentalPair perturbed{pair.I, combine(ScalarField(dom, 1.0), pair.II, w, pair.I)};
  const VectorField X1 = smooth_vector_field(dom, rng, 1.0, 0.0);
  const VectorField X2 = smooth_vector_field(dom, rng, 0.0, 1.0);
  const VectorField Y = smooth_vector_field(dom, rng, 0.5, 1.0);
  const ScalarField f1 = smooth_field(dom, rng, 1.0, 0.4);
  const ScalarField f2 = smooth_field(dom, rng, -0.5, 0.4);

  const VectorField t_xy = codazzi_tensor(perturbed, X1, Y);
  const VectorField t_yx = codazzi_tensor(perturbed, Y, X1);
  VectorField neg{map(t_yx.u, [](double x) { return -x; }), map(t_yx.v, [](double x) { return -x; })};
  suite.check("codazzi_skew", max_metric_difference(pair.I, t_xy, neg), 1e-12);

  const VectorField lhs = codazzi_tensor(perturbed, combine(f1, X1, f2, X2), Y);
  const VectorField rhs = combine(f1, t_xy, f2, codazzi_tensor(perturbed, X2, Y));
  suite.check("codazzi_bilinear", max_metric_difference(pair.I, lhs, rhs), 1e-6);

  const FundamentalPair scaled_pair{pair.I, scaled(f1, perturbed.II)};
  const VectorField t_scaled = codazzi_tensor(scaled_pair, X1, Y);
  const ShapeOperatorField S = shape_operator_field(perturbed);
  const VectorField SX = apply_shape(S, X1), SY = apply_shape(S, Y);
  const ScalarField xf = directional_derivative(X1, f1), yf = directional_derivative(Y, f1);
  VectorField expected{ScalarField(dom), ScalarField(dom)};
  for (std::size_t k = 0; k < dom.size(); ++k) {
    expected.u[k] = f1[k] * t_xy.u[k] + xf[k] * SY.u[k] - yf[k] * SX.u[k];
    expected.v[k] = f1[k] * t_xy.v[k] + xf[k] * SY.v[k] - yf[k] * SX.v[k];
  }
  suite.check("codazzi_function_scaling", max_metric_difference(pair.I, t_scaled, expected), 1e-6);

  const ScalarField coordinate = codazzi_function(perturbed);
  const ScalarField changed =
      codazzi_function(perturbed, VectorField::constant(dom, 1.0, 1.0), VectorField::constant(dom, 0.0, 1.0));
  double dev = 0.0;
  for (std::size_t k = 0; k < dom.size(); ++k) dev = std::max(dev, std::abs(coordinate[k] - changed[k]));
  suite.check("codazzi_basis_invariance", dev, 1e-10);
  suite.results()["perturbed_codazzi_function_max"] = max_abs(coordinate);
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::verify: return "verify";
    case Command::transform: return "transform";
    case Command::generate: return "generate";
    case Command::grove: return "grove";
    case Command::index: return "index";
  }
  return "unknown";
}

Command parse_command(std::string_view name) {
  for (Command c : {Command::verify, Command::transform, Command::generate, Command::grove, Command::index})
    if (to_string(c) == name) return c;
  throw Error(Errc::parse_error, "unknown command '" + std::string(name) + "'");
}

std::pair<int, int> parse_grid(std::string_view text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string_view::npos) throw Error(Errc::parse_error, "grid must look like NUxNV");
  const int nu = parse_int(text.substr(0, x));
  const int nv = parse_int(text.substr(x + 1));
  if (nu < 8 || nv < 8) throw Error(Errc::parse_error, "grid sizes must be at least 8");
  return {nu, nv};
}

std::vector<double> parse_params(std::string_view text) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_double(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::pair<std::string, double> parse_tolerance(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) throw Error(Errc::parse_error, "tolerance must look like name=value");
  const double value = parse_double(text.substr(eq + 1));
  if (!(value > 0.0)) throw Error(Errc::parse_error, "tolerances must be positive");
  return {std::string(text.substr(0, eq)), value};
}

RunOutput cmd_verify(const RunConfig& config) {
  require_surface(config);
  const Chart chart = fixture(config.surface, config.params, ChartVariant::standard, config.nu, config.nv);
  Suite suite(config);
  write_meta(suite.out.report, config, &chart.domain);

  FundamentalPair pair;
  CurvatureData curv;
  if (!suite.guarded("fundamental_forms", 0.0, [&] {
        pair = sample_pair(chart);
        curv = curvatures(pair);
      }))
    return std::move(suite.out);
  const Domain2D& dom = pair.domain();

  double consistency = 0.0, shape = 0.0, trace = 0.0;
  const SymmetricFormField traceless = traceless_part(pair, curv);
  for (std::size_t k = 0; k < dom.size(); ++k) {
    consistency = std::max({consistency, std::abs(curv.k1[k] * curv.k2[k] - curv.K[k]),
                            std::abs(0.5 * (curv.k1[k] + curv.k2[k]) - curv.H[k])});
    const Eigen::Matrix2d I = pair.I.at(k).matrix(), II = pair.II.at(k).matrix();
    const Eigen::Matrix2d S = shape_operator(pair.I.at(k), pair.II.at(k));
    shape = std::max(shape, (I * S - II).cwiseAbs().maxCoeff() / std::max(1.0, II.cwiseAbs().maxCoeff()));
    trace = std::max(trace, std::abs((I.inverse() * traceless.at(k).matrix()).trace()));
  }
  suite.check("curvature_consistency", consistency, 1e-10);
  suite.check("shape_operator", shape, 1e-12);
  suite.check("traceless_trace", trace, 1e-12);

  const ScalarField residual = codazzi_residual(pair);
  suite.check("codazzi_residual", max_abs(residual), 1e-6);
  suite.check("codazzi_nonnegative", std::max(0.0, -min_of(codazzi_function(pair))), 0.0);

  const double extent = std::min(dom.u_max - dom.u_min, dom.v_max - dom.v_min);
  const SymmetricFormField iii = third_form(pair, curv);
  suite.guarded("third_form_gauss_map", 1e-6, [&] {
    suite.check("third_form_gauss_map", max_abs_difference(iii, gauss_map_metric(chart, 1e-3 * extent)), 1e-6);
  });
  double k_min = kInf;
  for (double k : curv.K.values()) k_min = std::min(k_min, std::abs(k));
  if (k_min > 1e-8) {
    const FundamentalPair third{iii, pair.II};
    suite.guarded("third_form_codazzi", 1e-5, [&] {
      suite.check("third_form_codazzi", max_abs(codazzi_residual(third)), 1e-5);
      const CurvatureData c3 = curvatures(third);
      double dev = 0.0;
      for (std::size_t k = 0; k < dom.size(); ++k) dev = std::max(dev, std::abs(c3.H[k] - curv.H[k] / curv.K[k]));
      suite.check("third_form_mean_curvature", dev, 1e-6);
    });
  }

  const ScalarField tt = traceless_codazzi_function(pair);
  const ScalarField grad = gradient_norm_sq(pair.I, curv.H);
  double tg = 0.0;
  for (std::size_t k = 0; k < dom.size(); ++k) tg = std::max(tg, std::abs(tt[k] - grad[k]));
  suite.check("traceless_gradient", tg, 1e-5);

  const Mask m4 = umbilic_mask(curv, 1e-4), m6 = umbilic_mask(curv, 1e-6), m8 = umbilic_mask(curv, 1e-8);
  double violations = 0.0;
  const Mask umbilic = umbilic_mask(curv);
  std::size_t umbilics = 0;
  for (std::size_t k = 0; k < dom.size(); ++k) {
    if ((m8[k] && !m6[k]) || (m6[k] && !m4[k])) violations += 1.0;
    umbilics += umbilic[k];
  }
  suite.check("umbilic_mask_monotone", violations, 0.0);
  suite.results()["umbilic_nodes"] = umbilics;

  tensor_property_checks(suite, pair);

  if (chart.isothermal)
    hopf_checks(suite, config, chart);
  else if (fixture_has_variant(config.surface, ChartVariant::isothermal))
    hopf_checks(suite, config, fixture(config.surface, config.params, ChartVariant::isothermal, config.nu, config.nv));
  if (fixture_has_variant(config.surface, ChartVariant::ii_isothermal))
    grove_checks(suite, fixture(config.surface, config.params, ChartVariant::ii_isothermal, config.nu, config.nv),
                 false);

  CsvTable table({"u", "v", "E", "F", "G", "e", "f", "g", "H", "K", "k1", "k2", "codazzi_residual"});
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i)
      table.add_row({dom.u(i), dom.v(j), pair.I.a11(i, j), pair.I.a12(i, j), pair.I.a22(i, j), pair.II.a11(i, j),
                     pair.II.a12(i, j), pair.II.a22(i, j), curv.H(i, j), curv.K(i, j), curv.k1(i, j), curv.k2(i, j),
                     residual(i, j)});
  suite.out.tables.emplace("curvature.csv", std::move(table));
  return std::move(suite.out);
}

RunOutput cmd_transform(const RunConfig& config) {
  require_surface(config);
  const auto profile = require_profile(config);
  Suite suite(config);

  std::optional<RotationalSurface> surface;
  std::optional<Chart> chart;
  std::pair<double, double> range;
  if (config.surface == "rotational") {
    const auto& p = config.params;
    const double r0 = p.size() > 0 ? p[0] : 0.5;
    const double theta0 = p.size() > 1 ? p[1] : 0.5 * kPi;
    IntegrationOptions options;
    options.s_max = p.size() > 2 ? p[2] : 1.0;
    options.close_at_axis = false;
    write_meta(suite.out.report, config, nullptr);
    if (!suite.guarded("generate_surface", 0.0, [&] {
          surface = integrate_profile(profile, ProfileState{0.0, r0, 0.0, theta0}, options);
          range = off_axis_range(*surface);
          chart = as_chart(*surface, ChartMode::arc_length, range.first, range.second, config.nu, config.nv);
        }))
      return std::move(suite.out);
    suite.out.report.meta()["steps"] = {{"du", chart->domain.du()}, {"dv", chart->domain.dv()}};
    suite.results()["arc_length_range"] = {range.first, range.second};
  } else {
    chart = fixture(config.surface, config.params, ChartVariant::standard, config.nu, config.nv);
    write_meta(suite.out.report, config, &chart->domain);
  }

  FundamentalPair pair;
  CurvatureData curv;
  if (!suite.guarded("fundamental_forms", 0.0, [&] {
        pair = sample_pair(*chart);
        curv = curvatures(pair);
      }))
    return std::move(suite.out);
  const Domain2D& dom = pair.domain();
  const double t_max = max_of(curv.t);
  suite.results()["t_max"] = t_max;

  const double x_max = std::min(std::max(t_max * t_max, 1e-12), profile->extent());
  const EllipticityReport ell = ellipticity_check(*profile, x_max, 1000);
  suite.results()["ellipticity_margin"] = std::isfinite(ell.margin) ? nlohmann::ordered_json(ell.margin) : nullptr;
  if (!ell.elliptic) {
    suite.check("ellipticity", std::isfinite(ell.margin) ? 1.0 - ell.margin : kInf, kEllipticityTol,
                "ellipticity-failure: 4 x f'(x)^2 < 1 fails at x = " + std::to_string(ell.worst_x));
    return std::move(suite.out);
  }
  suite.check("ellipticity", 1.0 - ell.margin, kEllipticityTol);
  suite.check("weingarten_relation", max_abs(weingarten_residual(pair, *profile)), 1e-8);

  PhiField phi;
  BryantPair ab;
  if (!suite.guarded("bryant_transform", 0.0, [&] {
        phi = profile_phi_field(pair, profile);
        ab = bryant_transform(pair, phi);
      }))
    return std::move(suite.out);
  const FundamentalPair transformed{ab.A, ab.B};
  const CurvatureData cab = curvatures(transformed);
  double k_dev = 0.0;
  for (std::size_t k = 0; k < dom.size(); ++k) k_dev = std::max(k_dev, std::abs(cab.K[k] + curv.t[k] * curv.t[k]));
  suite.check("bryant_mean_curvature", max_abs(cab.H), 1e-8);
  suite.check("bryant_extrinsic_curvature", k_dev, 1e-6);

  const OneFormField closure = closure_residual(pair, phi);
  suite.check("closure", std::max(max_abs(closure.du), max_abs(closure.dv)), 1e-5);
  suite.check("bryant_codazzi", max_abs(codazzi_residual(transformed)), 1e-5);

  double phi_max = 0.0;
  for (double x : phi.phi.values()) phi_max = std::max(phi_max, std::abs(x));
  if (phi_max > 1e-6) {
    const PhiField doubled = phi.scaled(2.0);
    suite.guarded("negative_control", 1.0, [&] {
      const OneFormField bad = closure_residual(pair, doubled);
      const BryantPair bad_ab = bryant_transform(pair, doubled);
      const double bad_closure = std::max(max_abs(bad.du), max_abs(bad.dv));
      const double bad_codazzi = max_abs(codazzi_residual(FundamentalPair{bad_ab.A, bad_ab.B}));
      suite.results()["negative_control"] = {{"closure", bad_closure}, {"bryant_codazzi", bad_codazzi}};
      // Passes when both defects exceed 1e-3.
      suite.check("negative_control", 1e-3 / std::min(bad_closure, bad_codazzi), 1.0);
    });
  }

  bool cmc = true;
  for (int k = 0; k <= 100 && cmc; ++k) cmc = profile->fprime(x_max * k / 100.0) == 0.0;
  if (cmc) {
    const SymmetricFormField traceless = traceless_part(pair, curv);
    suite.check("cmc_reduction", std::max(max_abs_difference(ab.A, pair.I), max_abs_difference(ab.B, traceless)),
                1e-14);
  }

  const Mask umbilic = umbilic_mask(curv);
  std::size_t umbilics = 0;
  for (std::uint8_t m : umbilic.values()) umbilics += m;
  if (umbilics == 0) {
    suite.guarded("flat_metric", 1e-3,
                  [&] { suite.check("flat_metric", max_abs(gauss_curvature(flat_metric(pair, ab.A))), 1e-3); });
  } else {
    suite.results()["flat_metric"] = "not evaluated: umbilic nodes on the grid";
  }

  const CompletenessReport comp = completeness_bound_check(pair, ab.A, phi, 0.09);
  suite.check("completeness", std::max(0.0, -comp.min_eigenvalue), 1e-10);
  suite.results()["completeness_c2"] = comp.c2;
  suite.results()["completeness_c0"] = 0.09;

  suite.guarded("recovery_roundtrip", 1e-6, [&] {
    const FundamentalPair back = recover_from_forms(ab.A, ab.B, phi, *profile);
    suite.check("recovery_roundtrip", std::max(relative_difference(back.I, pair.I), relative_difference(back.II, pair.II)),
                1e-6);
  });

  if (surface) {
    suite.guarded("recovery_hopf_roundtrip", 1e-6, [&] {
      const Chart conformal =
          as_chart(*surface, ChartMode::bryant_isothermal, range.first, range.second, config.nu, config.nv);
      const FundamentalPair cp = sample_pair(conformal);
      const BryantPair cab2 = bryant_transform(cp, profile_phi_field(cp, profile));
      const HopfField hopf = hopf_coefficient(FundamentalPair{cab2.A, cab2.B});
      suite.check("bryant_hopf_holomorphic", max_abs(d_dzbar(hopf.Q)), 1e-5);
      const FundamentalPair back = recover_pair(cab2.A, hopf.Q, profile);
      suite.check("recovery_hopf_roundtrip",
                  std::max(relative_difference(back.I, cp.I), relative_difference(back.II, cp.II)), 1e-6);
    });
  }

  CsvTable table({"u", "v", "t", "phi", "a11", "a12", "a22", "b11", "b12", "b22", "closure_du", "closure_dv"});
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      std::vector<double> row;
      add_uv(row, dom, i, j);
      row.insert(row.end(), {phi.t(i, j), phi.phi(i, j), ab.A.a11(i, j), ab.A.a12(i, j), ab.A.a22(i, j),
                             ab.B.a11(i, j), ab.B.a12(i, j), ab.B.a22(i, j), closure.du(i, j), closure.dv(i, j)});
      table.add_row(row);
    }
  suite.out.tables.emplace("transform.csv", std::move(table));
  return std::move(suite.out);
}

RunOutput cmd_generate(const RunConfig& config) {
  const auto profile = require_profile(config);
  Suite suite(config);
  write_meta(suite.out.report, config, nullptr);
  const auto& p = config.params;
  const ProfileState init{0.0, p.size() > 0 ? p[0] : 0.0, 0.0, p.size() > 1 ? p[1] : 0.0};
  IntegrationOptions options;
  options.s_max = p.size() > 2 ? p[2] : 0.0;
  options.richardson = true;
  RotationalSurface surface;
  if (!suite.guarded("integrate_profile", 0.0, [&] { surface = integrate_profile(profile, init, options); }))
    return std::move(suite.out);

  suite.check("weingarten_profile", surface.max_weingarten_residual(), 1e-8);
  suite.check("richardson_error", surface.error_estimate, 1e-6);

  double z_min = surface.end.z, z_max = surface.end.z;
  for (const ProfileSample& s : surface.samples) {
    z_min = std::min(z_min, s.z);
    z_max = std::max(z_max, s.z);
  }
  auto& res = suite.results();
  res["end"] = std::string(to_string(surface.end_kind));
  res["samples"] = surface.samples.size();
  res["ds"] = surface.ds;
  res["end_arc_length"] = surface.end.s;
  res["height"] = z_max - z_min;
  try {
    const double R = umbilic_sphere_radius(*profile);
    res["R_A"] = R;
    res["height_over_R_A"] = (z_max - z_min) / R;
    bool cmc = true;
    for (int k = 0; k <= 100 && cmc; ++k) cmc = profile->fprime(k / 100.0) == 0.0;
    if (cmc && init.r == 0.0 && surface.end_kind == ProfileEnd::axis_closure)
      suite.check("cmc_sphere_height", std::abs((z_max - z_min) - 2.0 * R), 1e-6);
  } catch (const Error&) {
    res["R_A"] = nullptr;
  }

  suite.guarded("chart_weingarten", 1e-8, [&] {
    const auto [lo, hi] = off_axis_range(surface);
    const Chart chart = as_chart(surface, ChartMode::arc_length, lo, hi, config.nu, config.nv);
    const FundamentalPair pair = sample_pair(chart);
    suite.check("chart_weingarten", max_abs(weingarten_residual(pair, *profile)), 1e-8);
  });
  suite.out.tables.emplace("profile.csv", profile_table(surface));
  return std::move(suite.out);
}

RunOutput cmd_grove(const RunConfig& config) {
  require_surface(config);
  const Chart chart = fixture(config.surface, config.params, ChartVariant::ii_isothermal, config.nu, config.nv);
  Suite suite(config);
  write_meta(suite.out.report, config, &chart.domain);
  grove_checks(suite, chart, true);
  return std::move(suite.out);
}

RunOutput cmd_index(const RunConfig& config) {
  require_surface(config);
  const Chart chart = fixture(config.surface, config.params, ChartVariant::pole, config.nu, config.nv);
  Suite suite(config);
  write_meta(suite.out.report, config, &chart.domain);
  FundamentalPair pair;
  HopfField hopf;
  if (!suite.guarded("hopf_coefficient", 0.0, [&] {
        pair = sample_pair(chart);
        hopf = hopf_coefficient(pair);
      }))
    return std::move(suite.out);
  const Domain2D& dom = pair.domain();
  const int outer = std::max(2, std::min(dom.nu, dom.nv) / 4);
  CsvTable table({"ring", "loop_nodes", "winding", "foliation_index"});
  std::vector<WindingReport> reports;
  for (int ring : {1, outer}) {
    const GridLoop loop = centered_loop(dom, ring);
    if (!suite.guarded("winding_ring_" + std::to_string(ring), 0.0, [&] {
          const WindingReport w = winding_index(hopf, loop);
          reports.push_back(w);
          table.add_row({static_cast<double>(ring), static_cast<double>(loop.nodes.size()),
                         static_cast<double>(w.winding), w.foliation_index});
        }))
      return std::move(suite.out);
  }
  suite.check("winding_deformation_invariance", std::abs(reports[0].winding - reports[1].winding), 0.0);
  suite.results()["winding"] = reports[0].winding;
  suite.results()["foliation_index"] = reports[0].foliation_index;
  if (config.expect_index)
    suite.check("foliation_index", std::abs(reports[0].foliation_index - *config.expect_index), 0.0);
  suite.out.tables.emplace("index.csv", std::move(table));
  const CurvatureData curv = curvatures(pair);
  suite.out.tables.emplace("hopf.csv", hopf_table(hopf, curv.K, cr_residual(hopf)));
  return std::move(suite.out);
}

RunOutput run_command(const RunConfig& config) {
  switch (config.command) {
    case Command::verify: return cmd_verify(config);
    case Command::transform: return cmd_transform(config);
    case Command::generate: return cmd_generate(config);
    case Command::grove: return cmd_grove(config);
    case Command::index: return cmd_index(config);
  }
  throw Error(Errc::invalid_argument, "unknown command");
}

int run(const RunConfig& config, std::ostream& log) {
  RunOutput out;
  try {
    out = run_command(config);
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return 1;
  }
  for (const CheckRecord& c : out.report.checks()) {
    char line[256];
    std::snprintf(line, sizeof line, "%-4s %-32s %12.4e <= %.1e", c.pass ? "ok" : "FAIL", c.name.c_str(),
                  c.max_residual, c.tolerance);
    log << line;
    if (c.error) log << "  (" << *c.error << ')';
    log << '\n';
  }
  if (!config.out_dir.empty()) {
    try {
      std::error_code ec;
      std::filesystem::create_directories(config.out_dir, ec);
      if (ec) throw Error(Errc::io_error, "cannot create '" + config.out_dir + "': " + ec.message());
      const std::filesystem::path dir(config.out_dir);
      write_text((dir / "report.json").string(), out.report.dump());
      for (const auto& [name, table] : out.tables) table.write((dir / name).string());
    } catch (const Error& e) {
      log << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return out.report.all_pass() ? 0 : 2;
}

}  // namespace cz
