#pragma once

#include <compare>
#include <string>
#include <variant>
#include <vector>

#include "dce/error.hpp"

namespace dce {

enum class Polarization { Scalar, TE, TM };

const char* to_string(Polarization p) noexcept;
Polarization parse_polarization(const std::string& s);

/// Cavity eigenmode label. For rectangular cavities (nx, ny, nz) are the
/// usual Cartesian indices. For circular cylinders nx carries the azimuthal
/// order n >= 0 and ny the radial root index m >= 1. Ordering is
/// lexicographic in (pol, nx, ny, nz).
struct ModeIndex {
  Polarization pol = Polarization::Scalar;
  int nx = 1;
  int ny = 1;
  int nz = 1;

  auto operator<=>(const ModeIndex&) const = default;
  bool same_transverse(const ModeIndex& o) const {
    return pol == o.pol && nx == o.nx && ny == o.ny;
  }
};

std::string to_string(const ModeIndex& m);

struct RectCavity {
  double Lx = 1.0;
  double Ly = 1.0;
  double Lz = 1.0;
};

struct CircCavity {
  double R = 1.0;
  double Lz = 1.0;
};

/// The moving wall is always the z = Lz cap.
using CavityGeometry = std::variant<RectCavity, CircCavity>;

double cavity_length_z(const CavityGeometry& g);

/// Throws DomainError if any length is not strictly positive.
void validate(const CavityGeometry& g);

/// Throws DomainError naming the violated index constraint.
void validate(const ModeIndex& m, const CavityGeometry& g);

/// Wavenumber content of a mode: omega^2 = k_perp2 + kz^2.
struct ModeSpectrum {
  double k_perp2 = 0.0;
  double kz = 0.0;
  double omega = 0.0;
};

ModeSpectrum mode_spectrum(const CavityGeometry& g, const ModeIndex& m);

/// omega = sqrt((nx pi/Lx)^2 + (ny pi/Ly)^2 + (nz pi/Lz)^2).
double spectrum_rect(const RectCavity& g, const ModeIndex& m);

/// TE uses the m-th root of J'_n, TM (and Dirichlet scalar) the m-th root of
/// J_n: omega = sqrt((root/R)^2 + (nz pi/Lz)^2).
double spectrum_circ(const CircCavity& g, const ModeIndex& m);

/// All valid modes of polarization `pol` with every index <= bound (radial
/// index for circular cavities runs 1..bound), sorted.
std::vector<ModeIndex> enumerate_modes(const CavityGeometry& g,
                                       Polarization pol, int bound);

/// Prescribed wall motion, expressed as the relative length L(t)/L0.
class MotionProfile {
 public:
  enum class Form { HarmonicLength, HarmonicParameter, Tabulated };

  /// L(t) = L0 [1 + eps sin(Omega (t - t_start))] on [t_start, t_end] and L0
  /// outside. HarmonicParameter uses the same waveform for a generic
  /// modulated parameter.
  static MotionProfile harmonic(double eps, double Omega, double t_start,
                                double t_end,
                                Form form = Form::HarmonicLength);

  /// Samples of L(t)/L0 at t_start + i*dt. Needs at least 11 samples.
  static MotionProfile tabulated(std::vector<double> samples, double dt,
                                 double t_start = 0.0);

  Form form() const { return form_; }
  double eps() const { return eps_; }
  double Omega() const { return Omega_; }
  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }

  /// d^order/dt^order of L(t)/L0, order 0..3. One-sided at the switch-on and
  /// switch-off instants (the right-hand limit is returned).
  double relative_length(double t, int order = 0) const;

  /// Advisories for perturbative solvers: eps above 0.01 warns; eps above 0.1
  /// is rejected with PreconditionError.
  Warnings check_perturbative() const;

 private:
  Form form_ = Form::HarmonicLength;
  double eps_ = 0.0;
  double Omega_ = 0.0;
  double t_start_ = 0.0;
  double t_end_ = 0.0;
  double dt_ = 0.0;
  std::vector<double> samples_;
};

}  // namespace dce
