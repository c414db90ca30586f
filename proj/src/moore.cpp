#include "dce/moore.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "dce/numerics.hpp"

namespace dce::moore {

using std::numbers::pi;
using cplx = std::complex<double>;

MooreSolution MooreSolution::rg(int q, double eps, double L0) {
  if (q < 1) throw DomainError("moore_rg: q must be a positive integer");
  if (!(L0 > 0)) throw DomainError("moore_rg: L0 must be > 0");
  if (eps < 0) throw DomainError("moore_rg: eps must be >= 0");
  if (eps > 0.1) throw PreconditionError("moore_rg: eps must be <= 0.1");
  MooreSolution s;
  s.prov_ = Provenance::RG;
  s.q_ = q;
  s.eps_ = eps;
  s.L0_ = L0;
  s.Omega_ = q * pi / L0;
  s.t_max_ = std::numeric_limits<double>::infinity();
  s.profile_ = MotionProfile::harmonic(eps, s.Omega_, 0.0,
                                       std::numeric_limits<double>::infinity());
  return s;
}

MooreSolution MooreSolution::numeric(const MotionProfile& profile, double L0,
                                     double t_max) {
  if (!(L0 > 0)) throw DomainError("moore_numeric: L0 must be > 0");
  if (!(t_max > 0)) throw DomainError("moore_numeric: t_max must be > 0");
  MooreSolution s;
  s.prov_ = Provenance::Numeric;
  s.eps_ = profile.eps();
  s.L0_ = L0;
  s.Omega_ = profile.Omega();
  s.q_ = std::max(1, int(std::lround(s.Omega_ * L0 / pi)));
  s.t_max_ = t_max;
  s.profile_ = profile;

  // Characteristics cross once the wall reaches the speed of light.
  double vmax = 0.0;
  if (profile.form() == MotionProfile::Form::Tabulated) {
    const std::size_t n = 4000;
    for (std::size_t i = 0; i <= n; ++i) {
      const double t = t_max * double(i) / double(n);
      vmax = std::max(vmax, std::abs(s.length(t, 1)));
    }
  } else if (profile.t_end() > profile.t_start()) {
    vmax = profile.eps() * std::abs(profile.Omega()) * L0;
  }
  if (!(vmax < 1.0)) {
    throw PreconditionError("moore_numeric: wall speed |L'| = " +
                            std::to_string(vmax) + " reaches c");
  }
  return s;
}

double MooreSolution::length(double t, int order) const {
  return L0_ * profile_.relative_length(t, order);
}

RValue MooreSolution::evaluate(double t) const {
  if (t > t_max_) {
    throw RangeError("Moore function requested at t = " + std::to_string(t) +
                     " beyond the solved domain t_max = " + std::to_string(t_max_));
  }
  return prov_ == Provenance::RG ? eval_rg(t) : eval_numeric(t);
}

RValue MooreSolution::eval_rg(double t) const {
  if (t <= 0.0) return {t / L0_, 1.0 / L0_, 0.0, 0.0};
  const double a = q_ * pi / L0_;
  const double sign = (q_ % 2 == 1) ? 1.0 : -1.0;
  const double b = sign * pi * q_ * eps_ / L0_;
  const double xi = std::exp(b * t);
  const cplx E = std::exp(cplx(0.0, a * t));
  const cplx ia(0.0, a);

  // z = 1 + xi + (1 - xi) E and its t-derivatives.
  const double xi1 = b * xi, xi2 = b * xi1, xi3 = b * xi2;
  const cplx z = 1.0 + xi + (1.0 - xi) * E;
  const cplx z1 = xi1 + (-xi1 + (1.0 - xi) * ia) * E;
  const cplx z2 = xi2 + (-xi2 - 2.0 * xi1 * ia + (1.0 - xi) * ia * ia) * E;
  const cplx z3 = xi3 + (-xi3 - 3.0 * xi2 * ia - 3.0 * xi1 * ia * ia +
                         (1.0 - xi) * ia * ia * ia) * E;
  const cplx u1 = z1 / z, u2 = z2 / z, u3 = z3 / z;
  const double k = 2.0 / (pi * q_);
  RValue r;
  r.R = t / L0_ - k * std::arg(z);
  r.R1 = 1.0 / L0_ - k * u1.imag();
  r.R2 = -k * (u2 - u1 * u1).imag();
  r.R3 = -k * (u3 - 3.0 * u2 * u1 + 2.0 * u1 * u1 * u1).imag();
  return r;
}

RValue MooreSolution::eval_numeric(double tau) const {
  // Walk back along characteristics: tau = t + L(t), R(tau) = R(t - L(t)) + 2.
  // The derivatives are carried through each level by the chain rule, so the
  // chain is recorded and then unwound from the seed.
  struct Level {
    double g1, g2, g3;  // derivatives of t + L(t)
    double h1, h2, h3;  // derivatives of t - L(t)
  };
  std::vector<Level> chain;
  double x = tau;
  int shift = 0;
  while (x > L0_) {
    const auto g = [&](double t) { return t + length(t) - x; };
    const auto dg = [&](double t) { return 1.0 + length(t, 1); };
    double lo = x - L0_;
    while (g(lo) > 0.0) lo -= L0_;
    const double t = num::newton_bracketed(g, dg, lo, x, 1e-13 * std::max(1.0, std::abs(x)));
    const double L1 = length(t, 1), L2 = length(t, 2), L3 = length(t, 3);
    if (!(1.0 + L1 > 0.0 && 1.0 - L1 > 0.0)) {
      throw PreconditionError("moore_numeric: wall speed reaches c at t = " +
                              std::to_string(t));
    }
    chain.push_back({1.0 + L1, L2, L3, 1.0 - L1, -L2, -L3});
    x = t - length(t);
    ++shift;
  }
  RValue r{x / L0_ + 2.0 * shift, 1.0 / L0_, 0.0, 0.0};
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const Level& c = *it;
    // F(t) = R(h(t)).
    const double F1 = r.R1 * c.h1;
    const double F2 = r.R2 * c.h1 * c.h1 + r.R1 * c.h2;
    const double F3 = r.R3 * c.h1 * c.h1 * c.h1 + 3.0 * r.R2 * c.h1 * c.h2 +
                      r.R1 * c.h3;
    // t(tau) = g^{-1}(tau).
    const double t1 = 1.0 / c.g1;
    const double t2 = -c.g2 * t1 * t1 * t1;
    const double t3 = (3.0 * c.g2 * c.g2 - c.g1 * c.g3) * std::pow(t1, 5);
    r.R1 = F1 * t1;
    r.R2 = F2 * t1 * t1 + F1 * t2;
    r.R3 = F3 * t1 * t1 * t1 + 3.0 * F2 * t1 * t2 + F1 * t3;
  }
  return r;
}

double MooreSolution::residual(double t) const {
  const double L = length(t);
  return std::abs(R(t + L) - R(t - L) - 2.0);
}

double f_of(const RValue& r) {
  const double a = r.R2 / r.R1;
  return (r.R3 / r.R1 - 1.5 * a * a + 0.5 * pi * pi * r.R1 * r.R1) / (24.0 * pi);
}

double energy_density(const MooreSolution& sol, double x, double t) {
  const double L = sol.length(t);
  if (x < 0.0 || x > L * (1.0 + 1e-12)) {
    throw RangeError("energy_density: x outside [0, L(t)]");
  }
  return -f_of(sol.evaluate(t + x)) - f_of(sol.evaluate(t - x));
}

EnergyDensityProfile energy_density_profile(const MooreSolution& sol, double t,
                                            std::size_t points) {
  if (points < 2) throw DomainError("energy density profile needs >= 2 points");
  EnergyDensityProfile p;
  p.t = t;
  p.x = num::linspace(0.0, sol.length(t), points);
  p.T00.reserve(points);
  for (double x : p.x) p.T00.push_back(energy_density(sol, x, t));
  return p;
}

std::size_t count_peaks(const EnergyDensityProfile& p, double rel_prominence) {
  double m = 0.0;
  for (double v : p.T00) m = std::max(m, std::abs(v));
  return num::find_peaks(p.T00, rel_prominence * m).size();
}

std::vector<double> predicted_jumps(int q, double L0, double t0, double t1) {
  // even q: q t / L0 odd; odd q: q t / L0 even.
  std::vector<double> out;
  const double step = L0 / q;
  const int parity = (q % 2 == 0) ? 1 : 0;
  long k = static_cast<long>(std::floor(t0 / step)) - 1;
  for (;; ++k) {
    if (((k % 2) + 2) % 2 != parity) continue;
    const double t = k * step;
    if (t > t1) break;
    if (t >= t0) out.push_back(t);
  }
  return out;
}

double intracavity_energy(const MooreSolution& sol, double t, double rel_tol) {
  const double L = sol.length(t);
  std::vector<double> breaks;
  for (double tj : predicted_jumps(sol.q(), sol.L0(), t - L, t + L)) {
    const double a = tj - t, b = t - tj;
    if (a > 0 && a < L) breaks.push_back(a);
    if (b > 0 && b < L) breaks.push_back(b);
  }
  std::sort(breaks.begin(), breaks.end());
  // Integrate the excess over the static Casimir density to avoid cancellation.
  const double casimir = -pi / (24.0 * L * L);
  const auto f = [&](double x) { return energy_density(sol, x, t) - casimir; };
  return num::integrate(f, 0.0, L, rel_tol, breaks, 16).value;
}

double mirror_force(const MooreSolution& sol, double t) {
  if (t < 0.0) return -pi / (24.0 * sol.L0() * sol.L0());
  return energy_density(sol, sol.length(t), t);
}

std::vector<double> detect_jumps(const MooreSolution& sol, double t0, double t1,
                                 double tol) {
  const double L0 = sol.L0();
  const double h = std::min(tol, L0 * 1e-3);
  const std::size_t n = static_cast<std::size_t>(std::ceil((t1 - t0) / h)) + 1;
  std::vector<double> slope(n);
  for (std::size_t i = 0; i < n; ++i) slope[i] = sol.evaluate(t0 + h * double(i)).R1;
  std::vector<double> out;
  for (std::size_t i : num::find_peaks(slope, 1.0 / L0)) {
    // Parabolic refinement through the three samples around the maximum.
    const double ym = slope[i - 1], y0 = slope[i], yp = slope[i + 1];
    const double den = ym - 2.0 * y0 + yp;
    const double off = den != 0.0 ? 0.5 * (ym - yp) / den : 0.0;
    out.push_back(t0 + h * (double(i) + off));
  }
  return out;
}

}  // namespace dce::moore
