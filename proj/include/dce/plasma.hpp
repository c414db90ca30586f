#pragma once

#include <vector>

#include "dce/error.hpp"
#include "dce/modes.hpp"

namespace dce::plasma {

/// Periodic excitation f(t) of the sheet: raised-cosine rise over tau_e,
/// exponential relaxation with time constant tau_r, shifted so that
/// f(0) = f(T) = 0 and f(tau_e) = 1.
struct PulseTrain {
  double period = 1.0;
  double tau_e = 0.05;
  double tau_r = 0.1;

  double operator()(double t) const;
  /// Amplitude of the component at Omega_j = 2 pi j / T.
  double harmonic_amplitude(int j) const;
  double harmonic_frequency(int j) const;
};

struct SheetModel {
  double V0 = 1.0;
  double Vmax = 2.0;
  PulseTrain pulse;
};

/// Roots of 2 k cot(k Lx / 2) = -V, the m-th in ((2m-1) pi/Lx, 2m pi/Lx].
std::vector<double> sheet_wavenumbers(double V, double Lx, int count);

/// |2 k cos(k Lx/2) + V sin(k Lx/2)| / (2k + V), the defining equation
/// cleared of the cotangent pole.
double sheet_residual(double k, double V, double Lx);

struct Modulation {
  double eps = 0.0;
  double k0 = 0.0;
  Warnings warnings;
};

/// eps_n = (Vmax - V0) / (Lx k0^2 + V0 (1 + V0 Lx / 4)), k0 the n-th root at
/// V0. Warns unless V0 Lx >> Vmax/V0 > 1 (taken as a factor 10).
Modulation modulation_depth(const SheetModel& m, double Lx, int n);

/// k_n(t) = k0 (1 + eps_n f(t)).
double modulated_wavenumber(const SheetModel& m, double Lx, int n, double t);

/// Sheet-mode frequency: w^2 = k0_{nx}^2 + (pi ny/Ly)^2 + (pi nz/Lz)^2.
/// Mode labels use nx for the sheet root index.
double sheet_frequency(const SheetModel& m, const RectCavity& g,
                       const ModeIndex& n);

enum class SheetResonance { Uncoupled, CoupledSet, OffResonance };
const char* to_string(SheetResonance r) noexcept;

struct SheetResonanceReport {
  SheetResonance cls = SheetResonance::OffResonance;
  double Omega = 0.0;
  std::vector<ModeIndex> resonant;
  std::vector<std::pair<ModeIndex, ModeIndex>> pairs;
  Warnings warnings;
};

/// Checks 2 w_n = Omega_j and |w_n +- w_m| = Omega_j (same ny, nz) for all
/// sheet modes with indices <= bound.
SheetResonanceReport resonance_check_sheet(const SheetModel& m,
                                           const RectCavity& g, int j,
                                           int bound, double tol = 1e-9);

/// sinh^2[(k0_n)^2 f_j eps_n t / Omega_j] for an uncoupled resonant mode.
/// Off resonance or coupling -> DomainError.
double sheet_photon_number(const SheetModel& m, const RectCavity& g,
                           const ModeIndex& n, int j, double t, int bound = 6,
                           double tol = 1e-9);

}  // namespace dce::plasma
