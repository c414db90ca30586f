#pragma once

#include <vector>

#include "dce/error.hpp"
#include "dce/modes.hpp"

namespace dce::moore {

enum class Provenance { RG, Numeric };

/// R and its first three derivatives at one time.
struct RValue {
  double R = 0.0;
  double R1 = 0.0;
  double R2 = 0.0;
  double R3 = 0.0;
};

/// Moore's function R(t) for a 1D Dirichlet cavity whose right mirror moves
/// as L(t), natural units. Immutable once built; safe to share across
/// threads.
class MooreSolution {
 public:
  /// RG-improved closed form for L(t) = L0 (1 + eps sin(q pi t / L0)), t >= 0.
  static MooreSolution rg(int q, double eps, double L0);

  /// Exact solution for an arbitrary wall motion L(t) = L0 * profile(t) by
  /// backward propagation along characteristics. Throws PreconditionError
  /// when |L'| >= 1 somewhere on [0, t_max].
  static MooreSolution numeric(const MotionProfile& profile, double L0,
                               double t_max);

  Provenance provenance() const { return prov_; }
  int q() const { return q_; }
  double eps() const { return eps_; }
  double L0() const { return L0_; }
  double Omega() const { return Omega_; }
  /// Largest argument at which R may be evaluated.
  double t_max() const { return t_max_; }
  const Warnings& warnings() const { return warnings_; }

  /// Mirror position L(t).
  double length(double t, int order = 0) const;

  /// Throws RangeError beyond t_max.
  RValue evaluate(double t) const;
  double R(double t) const { return evaluate(t).R; }

  /// |R(t + L(t)) - R(t - L(t)) - 2|.
  double residual(double t) const;

 private:
  RValue eval_rg(double t) const;
  RValue eval_numeric(double t) const;

  Provenance prov_ = Provenance::RG;
  int q_ = 1;
  double eps_ = 0.0;
  double L0_ = 1.0;
  double Omega_ = 0.0;
  double t_max_ = 0.0;
  MotionProfile profile_;
  Warnings warnings_;
};

/// f = (1/24pi) [R'''/R' - 3/2 (R''/R')^2 + pi^2/2 R'^2].
double f_of(const RValue& r);

/// <T00(x, t)> = -f(t + x) - f(t - x), x in [0, L(t)].
double energy_density(const MooreSolution& sol, double x, double t);

struct EnergyDensityProfile {
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> T00;
};

EnergyDensityProfile energy_density_profile(const MooreSolution& sol, double t,
                                            std::size_t points);

/// Maxima of the profile with prominence at least `rel_prominence` times the
/// largest absolute profile value.
std::size_t count_peaks(const EnergyDensityProfile& p,
                        double rel_prominence = 0.1);

/// Integral of <T00> over [0, L(t)] minus the static Casimir energy
/// -pi/(24 L(t)). Relative tolerance 1e-6, panels split at the staircase
/// jump images.
double intracavity_energy(const MooreSolution& sol, double t,
                          double rel_tol = 1e-6);

/// <T00(L(t), t)>; the static value -pi/(24 L0^2) for t < 0.
double mirror_force(const MooreSolution& sol, double t);

/// Times in [t0, t1] where cos(q pi t / L0) = -1 (even q) or +1 (odd q).
std::vector<double> predicted_jumps(int q, double L0, double t0, double t1);

/// Local maxima of R'(t) on [t0, t1] that rise above twice the mean slope,
/// located to within `tol`.
std::vector<double> detect_jumps(const MooreSolution& sol, double t0, double t1,
                                 double tol = 1e-4);

}  // namespace dce::moore
