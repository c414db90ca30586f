#pragma once

#include <complex>
#include <limits>
#include <vector>

#include "dce/error.hpp"
#include "dce/units.hpp"

namespace dce::mirror {

/// Prescribed mirror position q(t).
class MirrorTrajectory {
 public:
  /// q(t) = q0 Im exp[(i Omega - 1/T) t]; T = +inf gives q0 sin(Omega t).
  static MirrorTrajectory harmonic(
      double q0, double Omega,
      double damping_time = std::numeric_limits<double>::infinity());

  /// Uniform samples q(t0 + i dt). Derivatives use an 11-point centred
  /// finite-difference stencil, so at least 11 samples are required.
  static MirrorTrajectory tabulated(std::vector<double> q, double t0, double dt);

  /// d^n q / dt^n at t, n = 0..5.
  double derivative(double t, int n) const;

  bool is_harmonic() const { return samples_.empty(); }
  double amplitude() const { return q0_; }
  double frequency() const { return Omega_; }
  double max_speed() const;

 private:
  double q0_ = 0.0;
  double Omega_ = 0.0;
  double damping_time_ = std::numeric_limits<double>::infinity();
  double t0_ = 0.0;
  double dt_ = 0.0;
  std::vector<double> samples_;
};

enum class Field { Scalar, EM };

/// chi(Omega) = i hbar Omega^3 / (6 pi c^2), the 1D force response F = chi Q.
std::complex<double> susceptibility_1d(double Omega, UnitSystem u = {});

/// Same quantity from direct quadrature over the sideband-mixing window:
/// 2 i (hbar/c^2) (1/2pi) * integral over [-Omega, 0] (or [0, -Omega] when
/// Omega < 0) of (Omega + w)|w| dw.
std::complex<double> susceptibility_1d_quadrature(double Omega, UnitSystem u = {});

/// f(t) = hbar q'''(t) / (6 pi c^2). Throws PreconditionError when the
/// harmonic trajectory is relativistic (v_max/c >= 0.1).
double force_1d(const MirrorTrajectory& q, double t, UnitSystem u = {});

/// f(t) = -hbar A q^(5)(t) / (K pi^2 c^4), K = 360 (scalar) or 30 (EM).
double force_3d(const MirrorTrajectory& q, double area, Field field, double t,
                UnitSystem u = {});

struct RadiationEstimate {
  double energy = 0.0;       // total radiated energy E
  double photon_rate = 0.0;  // N / T
};

/// Oscillation amplitude q0 at Omega, exponentially damped over T, plate area
/// A: E = hbar T A q0^2 Omega^6 / (120 pi^2 c^4) and
/// N/T = (1/15)(A/lambda0^2)(v_max/c)^2 Omega, lambda0 = 2 pi c / Omega.
/// Requires Omega T > 10.
RadiationEstimate radiated_energy_and_rate(double q0, double Omega,
                                           double damping_time, double area,
                                           UnitSystem u = {});

struct MirrorOscillatorParams {
  double M = 1.0;       // mass
  double Omega = 1.0;   // trap frequency
  double P0 = 0.0;      // momentum separation scale of the cat state
};

struct Rate {
  double value = 0.0;
  Warnings warnings;
};

/// Gamma = (1/12pi)(hbar Omega / M c^2) Omega. Warns when hbar Omega / M c^2
/// is not small (> 1e-3).
Rate damping_rate(const MirrorOscillatorParams& p, UnitSystem u = {});

struct Decoherence {
  double gamma = 0.0;               // damping rate
  double diffusion = 0.0;           // D1 = hbar Gamma / (M Omega)
  double time = 0.0;                // hbar^2 / (2 P0^2 D1)
  double time_from_uncertainty = 0.0;  // 4 (dp / 2 P0)^2 / Gamma
  Warnings warnings;
};

/// Throws DomainError for P0 = 0 (no superposition: infinite time).
/// Warns when Omega t_d < 10.
Decoherence decoherence_time(const MirrorOscillatorParams& p, UnitSystem u = {});

}  // namespace dce::mirror
