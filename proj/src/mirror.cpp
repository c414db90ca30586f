#include "dce/mirror.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dce/numerics.hpp"

namespace dce::mirror {

using std::numbers::pi;

MirrorTrajectory MirrorTrajectory::harmonic(double q0, double Omega,
                                            double damping_time) {
  if (!(damping_time > 0)) throw DomainError("damping time must be > 0");
  MirrorTrajectory t;
  t.q0_ = q0;
  t.Omega_ = Omega;
  t.damping_time_ = damping_time;
  return t;
}

MirrorTrajectory MirrorTrajectory::tabulated(std::vector<double> q, double t0,
                                             double dt) {
  if (q.size() < 11)
    throw NumericError("tabulated trajectory needs at least 11 points for 5th derivatives");
  if (!(dt > 0)) throw DomainError("tabulated trajectory needs dt > 0");
  MirrorTrajectory t;
  t.t0_ = t0;
  t.dt_ = dt;
  t.samples_ = std::move(q);
  return t;
}

double MirrorTrajectory::derivative(double t, int n) const {
  if (n < 0 || n > 5) throw DomainError("trajectory derivative order must be 0..5");
  if (!samples_.empty()) {
    const double t_last = t0_ + dt_ * double(samples_.size() - 1);
    if (t < t0_ || t > t_last)
      throw RangeError("time outside the tabulated trajectory");
    return num::uniform_derivative(samples_, t0_, dt_, t, n);
  }
  const std::complex<double> s(-1.0 / damping_time_, Omega_);
  return q0_ * (std::pow(s, n) * std::exp(s * t)).imag();
}

double MirrorTrajectory::max_speed() const {
  if (!samples_.empty()) {
    double v = 0.0;
    for (std::size_t i = 0; i < samples_.size(); ++i)
      v = std::max(v, std::abs(derivative(t0_ + dt_ * double(i), 1)));
    return v;
  }
  return std::abs(q0_ * Omega_);
}

namespace {
void require_nonrelativistic(const MirrorTrajectory& q, UnitSystem u) {
  const double beta = q.max_speed() / u.c();
  if (!(beta < 0.1)) {
    throw PreconditionError("mirror motion is relativistic: v_max/c = " +
                            std::to_string(beta) + " (must be < 0.1)");
  }
}
}  // namespace

std::complex<double> susceptibility_1d(double Omega, UnitSystem u) {
  const double c = u.c();
  return {0.0, u.hbar() * Omega * Omega * Omega / (6.0 * pi * c * c)};
}

std::complex<double> susceptibility_1d_quadrature(double Omega, UnitSystem u) {
  if (Omega == 0.0) return {0.0, 0.0};
  const double lo = Omega > 0 ? -Omega : 0.0;
  const double hi = Omega > 0 ? 0.0 : -Omega;
  const auto integrand = [Omega](double w) { return (Omega + w) * std::abs(w); };
  const double I = num::integrate(integrand, lo, hi, 1e-13).value;
  const double c = u.c();
  return {0.0, 2.0 * u.hbar() / (c * c) * I / (2.0 * pi)};
}

double force_1d(const MirrorTrajectory& q, double t, UnitSystem u) {
  require_nonrelativistic(q, u);
  const double c = u.c();
  return u.hbar() * q.derivative(t, 3) / (6.0 * pi * c * c);
}

double force_3d(const MirrorTrajectory& q, double area, Field field, double t,
                UnitSystem u) {
  require_nonrelativistic(q, u);
  const double K = field == Field::Scalar ? 360.0 : 30.0;
  const double c2 = u.c() * u.c();
  return -u.hbar() * area * q.derivative(t, 5) / (K * pi * pi * c2 * c2);
}

RadiationEstimate radiated_energy_and_rate(double q0, double Omega,
                                           double damping_time, double area,
                                           UnitSystem u) {
  if (!(Omega * damping_time > 10.0)) {
    throw PreconditionError("radiated energy estimate needs Omega*T > 10, got " +
                            std::to_string(Omega * damping_time));
  }
  const double c = u.c();
  const double c4 = c * c * c * c;
  RadiationEstimate r;
  r.energy = u.hbar() * damping_time * area * q0 * q0 * std::pow(Omega, 6) /
             (120.0 * pi * pi * c4);
  const double lambda0 = 2.0 * pi * c / Omega;
  const double beta = Omega * q0 / c;
  r.photon_rate = area / (lambda0 * lambda0) * beta * beta * Omega / 15.0;
  return r;
}

Rate damping_rate(const MirrorOscillatorParams& p, UnitSystem u) {
  if (!(p.M > 0)) throw DomainError("mirror mass must be > 0");
  const double c = u.c();
  const double ratio = u.hbar() * p.Omega / (p.M * c * c);
  Rate r;
  r.value = ratio * p.Omega / (12.0 * pi);
  if (ratio > 1e-3) {
    r.warnings.push_back("hbar*Omega/(M c^2) = " + std::to_string(ratio) +
                         " is not small compared to 1");
  }
  return r;
}

Decoherence decoherence_time(const MirrorOscillatorParams& p, UnitSystem u) {
  if (p.P0 == 0.0) {
    throw DomainError("decoherence time is infinite for P0 = 0 (no superposition)");
  }
  auto g = damping_rate(p, u);
  Decoherence d;
  d.gamma = g.value;
  d.warnings = std::move(g.warnings);
  const double hbar = u.hbar();
  d.diffusion = hbar * d.gamma / (p.M * p.Omega);
  d.time = hbar * hbar / (2.0 * p.P0 * p.P0 * d.diffusion);
  const double dp = std::sqrt(p.M * hbar * p.Omega / 2.0);
  const double r = dp / (2.0 * p.P0);
  d.time_from_uncertainty = 4.0 * r * r / d.gamma;
  if (p.Omega * d.time < 10.0) {
    d.warnings.push_back("Omega*t_d = " + std::to_string(p.Omega * d.time) +
                         " is not >> 1; the coarse-grained estimate is unreliable");
  }
  return d;
}

}  // namespace dce::mirror
