#include "dce/units.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dce/error.hpp"

namespace dce {
namespace {

// value_natural = value_SI * (c/hbar)^mass * c^time ; lengths unchanged.
double natural_factor(Dimension d) {
  return std::pow(si::c / si::hbar, d.mass) * std::pow(si::c, d.time);
}

struct UnitDef {
  std::string_view name;
  Dimension dim;
  double to_si;  // multiply by this to get SI (angular for frequencies)
};

constexpr double two_pi = 2.0 * std::numbers::pi;

constexpr UnitDef kUnits[] = {
    {"m", dim::length, 1.0},
    {"cm", dim::length, 1e-2},
    {"mm", dim::length, 1e-3},
    {"um", dim::length, 1e-6},
    {"nm", dim::length, 1e-9},
    {"s", dim::time, 1.0},
    {"ms", dim::time, 1e-3},
    {"us", dim::time, 1e-6},
    {"ns", dim::time, 1e-9},
    {"ps", dim::time, 1e-12},
    {"fs", dim::time, 1e-15},
    {"Hz", dim::frequency, two_pi},
    {"kHz", dim::frequency, two_pi * 1e3},
    {"MHz", dim::frequency, two_pi * 1e6},
    {"GHz", dim::frequency, two_pi * 1e9},
    {"THz", dim::frequency, two_pi * 1e12},
    {"rad/s", dim::frequency, 1.0},
    {"1/s", dim::frequency, 1.0},
    {"m/s", dim::velocity, 1.0},
    {"m^2", dim::area, 1.0},
    {"cm^2", dim::area, 1e-4},
    {"kg", dim::mass, 1.0},
    {"J", dim::energy, 1.0},
    {"W", dim::power, 1.0},
    {"N", dim::force, 1.0},
    {"1/m", dim::inverse_length, 1.0},
    {"kg*m/s", dim::momentum, 1.0},
};

}  // namespace

double si_to_natural(double value, Dimension d) { return value * natural_factor(d); }

double natural_to_si(double value, Dimension d) { return value / natural_factor(d); }

double to_natural(double value, std::string_view unit, Dimension expected) {
  if (unit.empty() || unit == "natural") return value;
  // eV is accepted for anything with energy or angular-frequency dimension.
  if (unit == "eV" || unit == "meV") {
    const double joule = value * si::e * (unit == "meV" ? 1e-3 : 1.0);
    if (expected == dim::energy) return si_to_natural(joule, dim::energy);
    if (expected == dim::frequency)
      return si_to_natural(joule / si::hbar, dim::frequency);
    throw ValidationError("unit '" + std::string(unit) +
                          "' is not valid for this quantity");
  }
  for (const auto& u : kUnits) {
    if (u.name != unit) continue;
    if (!(u.dim == expected)) {
      throw ValidationError("unit '" + std::string(unit) +
                            "' has the wrong dimension for this quantity");
    }
    return si_to_natural(value * u.to_si, expected);
  }
  throw ValidationError("unknown unit '" + std::string(unit) + "'");
}

}  // namespace dce
