#pragma once

#include <string_view>

namespace dce {

/// Exact SI values of the constants used across the library.
namespace si {
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double c = 299792458.0;             // m / s
inline constexpr double epsilon0 = 8.8541878128e-12; // F / m
inline constexpr double e = 1.602176634e-19;         // C
}  // namespace si

/// SI dimension of a quantity as exponents of (mass, length, time).
struct Dimension {
  int mass = 0;
  int length = 0;
  int time = 0;

  friend constexpr bool operator==(const Dimension&, const Dimension&) = default;
};

namespace dim {
inline constexpr Dimension none{0, 0, 0};
inline constexpr Dimension length{0, 1, 0};
inline constexpr Dimension time{0, 0, 1};
inline constexpr Dimension mass{1, 0, 0};
inline constexpr Dimension frequency{0, 0, -1};  // angular frequency or rate
inline constexpr Dimension velocity{0, 1, -1};
inline constexpr Dimension area{0, 2, 0};
inline constexpr Dimension energy{1, 2, -2};
inline constexpr Dimension momentum{1, 1, -1};
inline constexpr Dimension force{1, 1, -2};
inline constexpr Dimension pressure{1, -1, -2};
inline constexpr Dimension power{1, 2, -3};
inline constexpr Dimension inverse_length{0, -1, 0};
}  // namespace dim

/// Natural units set hbar = c = 1 and keep the metre as the base length, so
/// times are measured in metres and frequencies/energies in inverse metres.
/// Everything inside the numerical cores runs in whatever system the caller
/// hands in; conversions happen at the CLI boundary.
class UnitSystem {
 public:
  enum class Mode { Natural, SI };

  constexpr UnitSystem() = default;
  constexpr explicit UnitSystem(Mode m) : mode_(m) {}

  static constexpr UnitSystem natural() { return UnitSystem(Mode::Natural); }
  static constexpr UnitSystem SI() { return UnitSystem(Mode::SI); }

  constexpr Mode mode() const { return mode_; }
  constexpr double hbar() const { return mode_ == Mode::SI ? si::hbar : 1.0; }
  constexpr double c() const { return mode_ == Mode::SI ? si::c : 1.0; }

 private:
  Mode mode_ = Mode::Natural;
};

double si_to_natural(double value, Dimension d);
double natural_to_si(double value, Dimension d);

/// Converts `value` given in `unit` to natural units. Supported units include
/// "natural", SI base units and common prefixed forms (GHz, cm, nm, eV, ...).
/// Hz-type units are cyclic and are converted to angular frequency.
/// Throws ValidationError for unknown units or a dimension mismatch.
double to_natural(double value, std::string_view unit, Dimension expected);

}  // namespace dce
