#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cz {

enum class Errc {
  invalid_argument,
  degenerate_immersion,
  non_riemannian,
  singular_metric,
  unknown_fixture,
  clamp_violation,
  not_isothermal,
  not_ii_isothermal,
  ii_not_definite,
  zero_on_loop,
  domain_exceeded,
  umbilic_region,
  minimal_type,
  no_convergence,
  axis_collision,
  axis_proximity,
  boundary_not_planar,
  ellipticity_failure,
  parse_error,
  io_error,
};

std::string_view to_string(Errc code);

/// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace cz
