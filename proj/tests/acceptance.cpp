#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "cz/bryant.hpp"
#include "cz/codazzi.hpp"
#include "cz/errors.hpp"
#include "cz/fixtures.hpp"
#include "cz/hopf.hpp"
#include "cz/rotgen.hpp"

using namespace cz;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what, double value) {
    pass = pass && ok;
    detail << (ok ? "" : "!") << what << "=" << value << " ";
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

FundamentalPair pair_of(const char* name, ChartVariant variant, int n, std::vector<double> params = {}) {
  return sample_pair(fixture(name, params, variant, n, n));
}

std::shared_ptr<const WeingartenProfile> shared(WeingartenProfile p) {
  return std::make_shared<const WeingartenProfile>(std::move(p));
}

std::shared_ptr<const WeingartenProfile> linear_profile() { return shared(WeingartenProfile::linear(1.0, 0.25)); }

RotationalSurface linear_surface() {
  IntegrationOptions o;
  o.s_max = 1.0;
  o.close_at_axis = false;
  return integrate_profile(linear_profile(), ProfileState{0.0, 0.5, 0.0, kPi / 2.0}, o);
}

FundamentalPair linear_pair(ChartMode mode, int n) { return sample_pair(as_chart(linear_surface(), mode, 0.0, 1.0, n, n)); }

double relative_difference(const SymmetricFormField& a, const SymmetricFormField& b) {
  const double scale = std::max({max_abs(b.a11), max_abs(b.a12), max_abs(b.a22)});
  return max_abs_difference(a, b) / scale;
}

SymmetricFormField flat(const Domain2D& d) { return {ScalarField(d, 1.0), ScalarField(d, 0.0), ScalarField(d, 1.0)}; }

// Special Weingarten pair built from a flat A and a holomorphic Q.
FundamentalPair forward_pair(int n) {
  const Domain2D d{-1, 1, -1, 1, false, false, n, n};
  const ComplexField Q = ComplexField::sample(d, [](double u, double v) { return 0.9 / (Complex(u, v) + 2.5); });
  return recover_pair(flat(d), Q, linear_profile());
}

void codazzi_residuals(Outcome& o) {
  for (const char* name : {"sphere", "cylinder", "catenoid", "ellipsoid_rev", "torus_rev"}) {
    const auto t0 = std::chrono::steady_clock::now();
    const double r = max_abs(codazzi_residual(pair_of(name, ChartVariant::standard, 128)));
    const double dt = seconds_since(t0);
    o.require(r < 1e-6, name, r);
    o.require(dt < 10.0, std::string(name) + "_s", dt);
  }
}

void hopf_identities(Outcome& o) {
  for (const std::string& name : fixture_names()) {
    if (!fixture_has_variant(name, ChartVariant::isothermal)) continue;
    const FundamentalPair pair = pair_of(name.c_str(), ChartVariant::isothermal, 128);
    const HopfField h = hopf_coefficient(pair);
    o.require(max_abs(cr_residual(h)) < 1e-5, name + "_cr", max_abs(cr_residual(h)));
    const double m = max_abs(modulus_identity_residual(h, curvatures(pair).K));
    o.require(m < 1e-8, name + "_modulus", m);
  }
  const HopfField cat = hopf_coefficient(pair_of("catenoid", ChartVariant::isothermal, 128));
  const double q = max_abs(map(cat.Q, [](Complex z) { return z + 0.5; }));
  o.require(q < 1e-8, "catenoid_q", q);
}

void holomorphic_cmc(Outcome& o) {
  for (const char* name : {"sphere", "cylinder", "catenoid", "plane"}) {
    const double r = max_abs(d_dzbar(hopf_coefficient(pair_of(name, ChartVariant::isothermal, 128)).Q));
    o.require(r < 1e-6, name, r);
  }
}

void bryant_pair(Outcome& o) {
  const FundamentalPair pair = linear_pair(ChartMode::arc_length, 128);
  const CurvatureData curv = curvatures(pair);
  const BryantPair ab = bryant_transform(pair, profile_phi_field(pair, linear_profile()));
  const CurvatureData cab = curvatures(FundamentalPair{ab.A, ab.B});
  o.require(max_abs(cab.H) < 1e-8, "H_AB", max_abs(cab.H));
  const double k = max_abs(zip(cab.K, curv.t, [](double x, double t) { return x + t * t; }));
  o.require(k < 1e-6, "K_AB", k);
  for (auto [name, h0] : {std::pair{"cylinder", 0.5}, std::pair{"sphere", 1.0}}) {
    const FundamentalPair cmc = pair_of(name, ChartVariant::standard, 64);
    const BryantPair c = bryant_transform(cmc, profile_phi_field(cmc, shared(WeingartenProfile::constant(h0))));
    const double e = std::max(max_abs_difference(c.A, cmc.I), max_abs_difference(c.B, traceless_part(cmc)));
    o.require(e == 0.0, std::string(name) + "_reduction", e);
  }
}

void closure_equivalence(Outcome& o) {
  const FundamentalPair pair = linear_pair(ChartMode::arc_length, 128);
  const PhiField phi = profile_phi_field(pair, linear_profile());
  for (double scale : {1.0, 2.0}) {
    const PhiField p = phi.scaled(scale);
    const OneFormField c = closure_residual(pair, p);
    const BryantPair ab = bryant_transform(pair, p);
    const double closure = std::max(max_abs(c.du), max_abs(c.dv));
    const double codazzi = max_abs(codazzi_residual(FundamentalPair{ab.A, ab.B}));
    if (scale == 1.0) {
      o.require(closure < 1e-5, "closure", closure);
      o.require(codazzi < 1e-5, "codazzi", codazzi);
    } else {
      o.require(closure > 1e-3, "doubled_closure", closure);
      o.require(codazzi > 1e-3, "doubled_codazzi", codazzi);
    }
  }
}

void recovery(Outcome& o) {
  const auto profile = linear_profile();
  const FundamentalPair pair = linear_pair(ChartMode::bryant_isothermal, 128);
  const BryantPair ab = bryant_transform(pair, profile_phi_field(pair, profile));
  const FundamentalPair back = recover_pair(ab.A, hopf_coefficient(FundamentalPair{ab.A, ab.B}).Q, profile);
  const double e = std::max(relative_difference(back.I, pair.I), relative_difference(back.II, pair.II));
  o.require(e < 1e-6, "roundtrip", e);

  const Domain2D d{-1, 1, -1, 1, false, false, 128, 128};
  const FundamentalPair fwd = recover_pair(flat(d), ComplexField(d, Complex(0.3, 0.1)), profile);
  o.require(max_abs(codazzi_residual(fwd)) < 1e-5, "forward_codazzi", max_abs(codazzi_residual(fwd)));
  o.require(max_abs(weingarten_residual(fwd, *profile)) < 1e-8, "forward_weingarten",
            max_abs(weingarten_residual(fwd, *profile)));
}

void flat_metric_refinement(Outcome& o) {
  const auto profile = linear_profile();
  double previous = 0.0;
  for (int n : {32, 64}) {
    const FundamentalPair pair = forward_pair(n);
    const PhiField phi = profile_phi_field(pair, profile);
    const BryantPair ab = bryant_transform(pair, phi);
    const double k = max_abs(gauss_curvature(flat_metric(pair, ab.A)));
    o.require(k < 1e-3, "K_g0_" + std::to_string(n), k);
    if (previous > 0.0) o.require(previous / k >= 4.0, "ratio", previous / k);
    previous = k;
    const CompletenessReport c = completeness_bound_check(pair, ab.A, phi, 0.09);
    o.require(c.min_eigenvalue >= -1e-10, "min_eig_" + std::to_string(n), c.min_eigenvalue);
  }
  const FundamentalPair rot = linear_pair(ChartMode::arc_length, 128);
  const PhiField phi = profile_phi_field(rot, profile);
  const BryantPair ab = bryant_transform(rot, phi);
  const double k = max_abs(gauss_curvature(flat_metric(rot, ab.A)));
  o.require(k < 1e-3, "K_g0_rotational", k);
  const CompletenessReport c = completeness_bound_check(rot, ab.A, phi, 0.09);
  o.require(c.min_eigenvalue >= -1e-10, "min_eig_rotational", c.min_eigenvalue);
}

void grove(Outcome& o) {
  const FundamentalPair pair = pair_of("ellipsoid_rev", ChartVariant::ii_isothermal, 128);
  const GroveDecomposition dec = grove_decompose(pair);
  const GroveCurvatureResidual hk = grove_hk_residual(dec, pair);
  o.require(max_abs(hk.H) < 1e-6, "hk_H", max_abs(hk.H));
  o.require(max_abs(hk.K) < 1e-6, "hk_K", max_abs(hk.K));
  const double f1 = max_abs(grove_f1_residual(dec, curvatures(pair).K));
  o.require(f1 < 1e-4, "f1", f1);
}

void rotational_generator(Outcome& o) {
  const RotationalSurface sphere = integrate_profile(shared(WeingartenProfile::constant(0.5)), ProfileState{});
  double lo = sphere.end.z, hi = sphere.end.z;
  for (const ProfileSample& p : sphere.samples) {
    lo = std::min(lo, p.z);
    hi = std::max(hi, p.z);
  }
  o.require(std::abs(hi - lo - 4.0) < 1e-6, "height_error", std::abs(hi - lo - 4.0));
  double worst = sphere.max_weingarten_residual();
  for (auto [c, eps] : {std::pair{0.5, 0.25}, std::pair{1.0, 0.1}, std::pair{0.8, -0.2}})
    worst = std::max(worst, integrate_profile(shared(WeingartenProfile::linear(c, eps)), ProfileState{})
                                .max_weingarten_residual());
  worst = std::max(worst, linear_surface().max_weingarten_residual());
  o.require(worst < 1e-8, "weingarten", worst);
  const double target = 4.0 - 2.0 * std::sqrt(2.0);
  try {
    const double k1 = solve_kappa1(WeingartenProfile::linear(1.0, 0.25), 0.0, 0.0);
    o.require(std::abs(k1 - target) < 1e-10, "kappa1_error", std::abs(k1 - target));
  } catch (const Error& e) {
    o.require(false, "kappa1_solved", 0.0);
    o.detail << "(" << e.what() << ") ";
  }
}

void height_bound(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const HeightBatchReport batch = height_batch(20, 7);
  const double dt = seconds_since(t0);
  o.require(batch.caps.size() >= 20, "caps", static_cast<double>(batch.caps.size()));
  o.require(batch.all_within_4R, "max_height_over_R", batch.max_height_ratio);
  o.require(dt < 60.0, "seconds", dt);
}

void winding(Outcome& o) {
  const FundamentalPair pair = pair_of("ellipsoid_rev", ChartVariant::pole, 128);
  const HopfField h = hopf_coefficient(pair);
  for (int ring : {1, 32}) {
    const WindingReport r = winding_index(h, centered_loop(pair.domain(), ring));
    o.require(r.foliation_index == 1.0, "index_ring" + std::to_string(ring), r.foliation_index);
  }
}

int czkit(const std::string& args) {
  const int status = std::system((std::string(CZKIT_PATH) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void determinism(Outcome& o) {
  const std::vector<std::string> runs = {
      "verify --surface ellipsoid_rev",
      "transform --surface rotational --profile linear:1,0.25 --grid 64x64",
      "generate --profile linear:0.5,0.25",
      "grove --surface ellipsoid_rev",
      "index --surface ellipsoid_rev --expect-index 1",
  };
  const fs::path root = fs::temp_directory_path() / "cz_acceptance_determinism";
  int k = 0;
  for (const std::string& args : runs) {
    const fs::path a = root / (std::to_string(k) + "a"), b = root / (std::to_string(k) + "b");
    ++k;
    fs::remove_all(a);
    fs::remove_all(b);
    const int ca = czkit(args + " --out " + a.string());
    const int cb = czkit(args + " --out " + b.string());
    const std::string label = args.substr(0, args.find(' '));
    o.require(ca == 0 && cb == 0, label + "_exit", ca * 10 + cb);
    int files = 0, mismatches = 0;
    if (fs::exists(a))
      for (const auto& entry : fs::directory_iterator(a)) {
        ++files;
        if (slurp(entry.path()) != slurp(b / entry.path().filename())) ++mismatches;
      }
    o.require(files >= 2 && mismatches == 0, label + "_mismatched_files", mismatches);
  }
  fs::remove_all(root);
}

const std::vector<std::pair<std::string, std::function<void(Outcome&)>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> list = {
      {"Codazzi residual on analytic fixtures", codazzi_residuals},
      {"Hopf identities on isothermal fixtures", hopf_identities},
      {"holomorphic Hopf coefficient for constant H", holomorphic_cmc},
      {"transformed pair is H = 0 with K = -t^2", bryant_pair},
      {"closure and Codazzi residuals agree", closure_equivalence},
      {"recovery from A and Q", recovery},
      {"flat metric and completeness inequality", flat_metric_refinement},
      {"Grove identities on the spheroid", grove},
      {"rotational generator", rotational_generator},
      {"cap height bound", height_bound},
      {"umbilic index of the spheroid pole", winding},
      {"deterministic CLI output", determinism},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
  if (only < 0 || only > static_cast<int>(criteria().size())) {
    std::cerr << "no criterion " << only << "\n";
    return 1;
  }
  bool all = true;
  for (std::size_t n = 1; n <= criteria().size(); ++n) {
    if (only != 0 && static_cast<int>(n) != only) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria()[n - 1].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria()[n - 1].first
              << "  [" << o.detail.str() << "] " << seconds_since(t0) << " s" << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
