#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "dce/error.hpp"

namespace dce::friction {

/// Complex permittivity eps(w), w in rad/s (any consistent unit works as
/// long as all frequencies share it).
class DielectricModel {
 public:
  enum class Kind { Drude, Lorentz, Tabulated, Constant };

  /// eps = 1 - wp^2 / (w (w + i gamma)).
  static DielectricModel drude(double wp, double gamma);
  /// eps = 1 + wp^2 / (w0^2 - w^2 - i gamma w).
  static DielectricModel lorentz(double w0, double wp, double gamma);
  /// Linear interpolation of Re and Im on a strictly increasing grid.
  static DielectricModel tabulated(std::vector<double> omega,
                                   std::vector<std::complex<double>> eps);
  /// Frequency-independent permittivity (lossless when real).
  static DielectricModel constant(std::complex<double> eps);

  Kind kind() const { return kind_; }
  std::complex<double> operator()(double omega) const;

  /// Throws DomainError if Im eps < 0 anywhere it can be checked (model
  /// parameters, or every tabulated sample).
  void check_passive() const;

  /// Surface-plasmon frequency wp/sqrt(2) for Drude, sqrt(w0^2 + wp^2/2) for
  /// Lorentz; 0 otherwise.
  double surface_resonance() const;
  double width() const { return gamma_; }
  double plasma_frequency() const { return wp_; }

 private:
  Kind kind_ = Kind::Constant;
  double wp_ = 0.0, w0_ = 0.0, gamma_ = 0.0;
  std::complex<double> eps_const_{1.0, 0.0};
  std::vector<double> grid_;
  std::vector<std::complex<double>> values_;
};

/// Im[(eps - 1) / (eps + 1)]. Throws NumericError when eps sits on the
/// eps = -1 pole.
double surface_response(const DielectricModel& m, double omega);

/// Identical plates at gap d (m) sliding at speed v (m/s).
struct FrictionScenario {
  DielectricModel model;
  double d = 1e-8;
  double v = 1.0;
};

/// beta^2_kj for a surface oscillator of frequency w with mode density
/// dN/dw, SI units.
double beta_squared(const DielectricModel& m, double k, double omega,
                    double mode_density);

/// First-order probability of exciting one oscillator in each plate:
/// (b_u b_l / 4 k^2 eps0^2) e^{-2dk} / (4 w_u w_l)
///   * 4 sin^2[(w_u + w_l - kx v) t/2] / (w_u + w_l - kx v)^2.
double transition_probability(double k, double kx, double d, double v,
                              double beta2_u, double omega_u, double beta2_l,
                              double omega_l, double t);

/// Large-t limit: dP/dt = rate * delta(w_u + w_l - kx v); returns `rate`.
double transition_rate_coefficient(double k, double d, double beta2_u,
                                   double omega_u, double beta2_l,
                                   double omega_l);

struct FrictionResult {
  double force = 0.0;           // N/m^2 along the sliding direction
  double error_estimate = 0.0;
  double k_cut = 0.0;           // 1/m
  bool non_retarded_ok = true;  // v / d << surface resonance
  Warnings warnings;
};

/// F_x = (hbar/pi) int d^2k/(2pi)^2 kx e^{-2kd} int_0^{kx v} S(w) S(kx v - w) dw
/// in polar k-coordinates with kx > 0; Gauss-Legendre in the angle, adaptive
/// in k and w to `rel_tol`.
FrictionResult friction_force(const FrictionScenario& s, double rel_tol = 1e-6);

/// Inner integral int_0^u S(w) S(u - w) dw.
double spectral_overlap(const DielectricModel& m, double u, double rel_tol = 1e-8);

struct MonteCarloResult {
  double force = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

/// Importance-sampled estimate of the same integral: k ~ Gamma(3, 1/2d),
/// angle and w uniform. Samples are drawn in fixed blocks of 2^16, each from
/// its own stream seeded by (seed, block), so the result does not depend on
/// how blocks are scheduled.
MonteCarloResult friction_force_monte_carlo(const FrictionScenario& s,
                                            std::uint64_t samples,
                                            std::uint64_t seed = 20240601);

}  // namespace dce::friction
