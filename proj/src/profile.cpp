#include "cz/profile.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace cz {

namespace {

double parse_real(std::string_view text, std::string_view context) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
    throw Error(Errc::parse_error, std::string(context) + ": expected a real number, got '" + std::string(text) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string format_real(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// max_depth = 0 gives a single 61-point Kronrod rule, enough on one table interval.
double integrate_dphi(const WeingartenProfile& p, double a, double b, unsigned max_depth = 15) {
  if (a == b) return 0.0;
  auto integrand = [&p](double s) { return 2.0 * p.fprime(s * s); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, a, b, max_depth, 1e-12);
}

// Hermite cubic on the unit interval: value and derivative (w.r.t. s).
struct HermiteValue {
  double value;
  double slope;
};

HermiteValue hermite(double y0, double y1, double d0, double d1, double h, double s) {
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s, h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  const double value = h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
  const double dh00 = 6 * s2 - 6 * s, dh10 = 3 * s2 - 4 * s + 1, dh01 = -6 * s2 + 6 * s, dh11 = 3 * s2 - 2 * s;
  const double slope = (dh00 * y0 + dh01 * y1) / h + dh10 * d0 + dh11 * d1;
  return {value, slope};
}

}  // namespace

WeingartenProfile::WeingartenProfile(std::string description, Fn f, Fn fprime, double extent)
    : description_(std::move(description)), f_(std::move(f)), fprime_(std::move(fprime)), extent_(extent) {
  if (!f_ || !fprime_) throw Error(Errc::invalid_argument, "profile needs f and f'");
  if (!(extent_ > 0.0)) throw Error(Errc::invalid_argument, "profile extent must be positive");
}

WeingartenProfile WeingartenProfile::constant(double h0) {
  return {"const:" + format_real(h0), [h0](double) { return h0; }, [](double) { return 0.0; }};
}

WeingartenProfile WeingartenProfile::linear(double c, double eps) {
  return {"linear:" + format_real(c) + "," + format_real(eps), [c, eps](double x) { return c + eps * x; },
          [eps](double) { return eps; }};
}

WeingartenProfile WeingartenProfile::square_root(double c) {
  return {"sqrt:" + format_real(c), [c](double x) { return c + std::sqrt(x); },
          [](double x) { return 0.5 / std::sqrt(x); }};
}

WeingartenProfile WeingartenProfile::tabulated(std::vector<double> x, std::vector<double> f,
                                               std::vector<double> fprime) {
  if (x.size() < 2 || f.size() != x.size() || fprime.size() != x.size())
    throw Error(Errc::invalid_argument, "profile table needs at least two rows of (t, f, fprime)");
  if (x.front() != 0.0) throw Error(Errc::invalid_argument, "profile table must start at t = 0");
  for (std::size_t k = 1; k < x.size(); ++k)
    if (!(x[k] > x[k - 1])) throw Error(Errc::invalid_argument, "profile table t values must increase");
  struct Table {
    std::vector<double> x, f, d;
    HermiteValue eval(double t) const {
      if (!(t >= 0.0 && t <= x.back())) throw Error(Errc::domain_exceeded, "argument outside the profile table");
      auto it = std::upper_bound(x.begin(), x.end(), t);
      std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - x.begin() - 1, 0));
      k = std::min(k, x.size() - 2);
      const double h = x[k + 1] - x[k];
      return hermite(f[k], f[k + 1], d[k], d[k + 1], h, (t - x[k]) / h);
    }
  };
  auto table = std::make_shared<Table>(Table{std::move(x), std::move(f), std::move(fprime)});
  const double extent = table->x.back();
  return {"table", [table](double t) { return table->eval(t).value; },
          [table](double t) { return table->eval(t).slope; }, extent};
}

WeingartenProfile parse_profile(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) throw Error(Errc::parse_error, "profile spec must look like kind:args");
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view args = spec.substr(colon + 1);
  if (kind == "const") return WeingartenProfile::constant(parse_real(args, "const profile"));
  if (kind == "sqrt") return WeingartenProfile::square_root(parse_real(args, "sqrt profile"));
  if (kind == "linear") {
    const auto parts = split(args, ',');
    if (parts.size() != 2) throw Error(Errc::parse_error, "linear profile needs c,eps");
    return WeingartenProfile::linear(parse_real(parts[0], "linear profile"), parse_real(parts[1], "linear profile"));
  }
  if (kind == "table") {
    const std::string path(args);
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open profile table '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw Error(Errc::parse_error, "profile table is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,f,fprime") throw Error(Errc::parse_error, "profile table header must be t,f,fprime");
    std::vector<double> x, f, d;
    while (std::getline(in, line)) {
      if (line.empty() || line == "\r") continue;
      const auto cells = split(line, ',');
      if (cells.size() != 3) throw Error(Errc::parse_error, "profile table rows need three columns");
      x.push_back(parse_real(cells[0], "profile table"));
      f.push_back(parse_real(cells[1], "profile table"));
      d.push_back(parse_real(cells[2], "profile table"));
    }
    return WeingartenProfile::tabulated(std::move(x), std::move(f), std::move(d));
  }
  throw Error(Errc::parse_error, "unknown profile kind '" + std::string(kind) + "'");
}

EllipticityReport ellipticity_check(const WeingartenProfile& profile, double x_max, int n) {
  if (n < 100) throw Error(Errc::invalid_argument, "ellipticity check needs at least 100 samples");
  if (!(x_max >= 0.0)) throw Error(Errc::invalid_argument, "x_max must be non-negative");
  if (x_max > profile.extent()) throw Error(Errc::domain_exceeded, "x_max beyond the profile extent");
  EllipticityReport report;
  report.margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    const double x = x_max * k / (n - 1);
    const double d = profile.fprime(x);
    double m = 1.0 - 4.0 * x * d * d;
    if (!std::isfinite(m)) m = -std::numeric_limits<double>::infinity();
    if (m < report.margin) {
      report.margin = m;
      report.worst_x = x;
    }
  }
  report.elliptic = report.margin > 0.0;
  return report;
}

double phi(const WeingartenProfile& profile, double t) {
  if (!(t >= 0.0)) throw Error(Errc::invalid_argument, "phi needs t >= 0");
  if (t * t > profile.extent()) throw Error(Errc::domain_exceeded, "t^2 beyond the profile extent");
  return integrate_dphi(profile, 0.0, t);
}

double phi_over_t(const WeingartenProfile& profile, double t) {
  if (t < PhiTable::kSeriesCutoff) {
    if (!(t >= 0.0)) throw Error(Errc::invalid_argument, "phi needs t >= 0");
    return (profile.fprime(0.0) + 4.0 * profile.fprime(0.25 * t * t) + profile.fprime(t * t)) / 3.0;
  }
  return phi(profile, t) / t;
}

PhiTable::PhiTable(std::shared_ptr<const WeingartenProfile> profile, double t_max, int nodes)
    : profile_(std::move(profile)), t_max_(t_max) {
  if (!profile_) throw Error(Errc::invalid_argument, "phi table needs a profile");
  if (nodes < 2) throw Error(Errc::invalid_argument, "phi table needs at least two nodes");
  if (!(t_max_ > 0.0)) t_max_ = 1e-3;
  if (t_max_ * t_max_ > profile_->extent()) throw Error(Errc::domain_exceeded, "t_max^2 beyond the profile extent");
  h_ = t_max_ / (nodes - 1);
  phi_.resize(nodes);
  dphi_.resize(nodes);
  phi_[0] = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double t = k * h_;
    dphi_[k] = 2.0 * profile_->fprime(t * t);
    if (k > 0) phi_[k] = phi_[k - 1] + integrate_dphi(*profile_, (k - 1) * h_, t, 0);
  }
}

double PhiTable::phi(double t) const {
  if (!(t >= 0.0) || t > t_max_ * (1.0 + 1e-12)) throw Error(Errc::domain_exceeded, "t outside the phi table");
  const std::size_t n = phi_.size();
  const std::size_t k = std::min(static_cast<std::size_t>(t / h_), n - 2);
  return hermite(phi_[k], phi_[k + 1], dphi_[k], dphi_[k + 1], h_, (t - k * h_) / h_).value;
}

double PhiTable::phi_over_t(double t) const {
  if (t < kSeriesCutoff) return cz::phi_over_t(*profile_, t);
  return phi(t) / t;
}

double PhiTable::sinhc(double t) const {
  if (t < kSeriesCutoff) {
    const double q = phi_over_t(t);
    const double p = q * t;
    return q * (1.0 + p * p / 6.0);
  }
  return std::sinh(phi(t)) / t;
}

ScalarField PhiField::sinhc() const {
  ScalarField out(t.domain());
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (t[k] < PhiTable::kSeriesCutoff)
      out[k] = phi_over_t[k] * (1.0 + phi[k] * phi[k] / 6.0);
    else
      out[k] = std::sinh(phi[k]) / t[k];
  }
  return out;
}

PhiField PhiField::scaled(double k) const {
  PhiField out = *this;
  for (double& x : out.phi.values()) x *= k;
  for (double& x : out.phi_over_t.values()) x *= k;
  return out;
}

PhiField phi_field(const PhiTable& table, const ScalarField& t) {
  PhiField out{t, ScalarField(t.domain()), ScalarField(t.domain())};
  for (std::size_t k = 0; k < t.size(); ++k) {
    out.phi[k] = table.phi(t[k]);
    out.phi_over_t[k] = table.phi_over_t(t[k]);
  }
  return out;
}

}  // namespace cz
