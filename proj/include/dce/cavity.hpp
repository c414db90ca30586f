#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "dce/error.hpp"
#include "dce/modes.hpp"
#include "dce/numerics.hpp"

namespace dce::cavity {

using cplx = std::complex<double>;

/// g_mj for the Dirichlet z-basis sqrt(2/Lz) sin(m pi z / Lz):
/// (-1)^(m+j) 2 m j / (j^2 - m^2), zero on the diagonal.
double coupling_g(int mz, int jz);

/// First-order drive for L = L0 (1 + eps sin(Omega t)):
///   Q''_m + w_m^2 Q_m = eps sum_j [a_mj sin(Omega t) Q_j + b_mj cos(Omega t) Q'_j].
/// Scalar and TE (sine z-basis): a = 2 kz_m^2 delta_mj - Omega^2 g_mj,
/// b = 2 Omega g_mj. TM (cosine z-basis with the boundary term of the moving
/// cap): a = 2 (-1)^(m+j) (kz_m^2 - Omega^2), b = 2 Omega (-1)^(m+j).
/// Entries vanish across different transverse channels.
struct DriveMatrices {
  Eigen::MatrixXd a_sin;
  Eigen::MatrixXd b_cos;
};

DriveMatrices drive_matrices(const CavityGeometry& g,
                             const std::vector<ModeIndex>& modes, double Omega);

enum class ResonanceClass { Uncoupled, CoupledSet, OffResonance };
const char* to_string(ResonanceClass c) noexcept;

struct CoupledPair {
  ModeIndex m;
  ModeIndex j;
  bool sum = false;  // true: w_m + w_j = Omega, false: |w_m - w_j| = Omega
};

struct ResonanceReport {
  ResonanceClass cls = ResonanceClass::OffResonance;
  std::vector<ModeIndex> resonant;   // 2 w_m = Omega
  std::vector<CoupledPair> pairs;    // same transverse channel
  Warnings warnings;                 // near misses within 10 tol
};

/// Relative tolerance used for every frequency-matching test.
inline constexpr double kResonanceTol = 1e-9;

/// Scans modes of polarization `pol` with indices <= bound.
ResonanceReport find_resonances(const CavityGeometry& g, double Omega,
                                Polarization pol, int bound,
                                double tol = kResonanceTol);

/// Modes reachable from `seed` through the coupled pairs (seed included).
std::vector<ModeIndex> resonance_closure(const ResonanceReport& r,
                                         const ModeIndex& seed);

/// `core` plus `extra` additional z-harmonics above the largest and below the
/// smallest nz in each transverse channel of `core`, sorted.
std::vector<ModeIndex> truncation_set(const CavityGeometry& g,
                                      const std::vector<ModeIndex>& core,
                                      int extra = 2);

/// Q_m^(n) and dQ_m^(n)/dt for each seed n (row) and mode m (column).
struct ModeAmplitudeState {
  double t = 0.0;
  bool moving = false;  // wall still in motion at t
  std::vector<ModeIndex> modes;
  std::vector<double> omega;
  std::vector<std::size_t> seeds;  // indices into modes
  std::vector<std::vector<cplx>> Q;
  std::vector<std::vector<cplx>> Qdot;
};

/// Integrates the first-order driven system over the motion window of
/// `profile` (harmonic only). If t_final is past the end of the motion, the
/// derivative jump of the instantaneous basis at the stop is applied and the
/// free evolution continues analytically. Seeds must belong to `modes`.
ModeAmplitudeState integrate_modes(const CavityGeometry& g,
                                   const MotionProfile& profile,
                                   const std::vector<ModeIndex>& seeds,
                                   const std::vector<ModeIndex>& modes,
                                   double t_final,
                                   const num::OdeOptions& opts = {1e-12, 1e-10, 1e-3, 0.0, num::OdeMethod::Fehlberg78});

/// Bogoliubov coefficients alpha_nm = sqrt(2 w_m) B_m^(n),
/// beta_nm = sqrt(2 w_m) A_m^(n), rows = seeds.
struct Bogoliubov {
  std::vector<ModeIndex> modes;
  std::vector<std::size_t> seeds;
  std::vector<std::vector<cplx>> alpha;
  std::vector<std::vector<cplx>> beta;

  /// <N_m> = sum_n |beta_nm|^2.
  std::vector<double> photon_numbers() const;
  /// max over seeds of |sum_m (|alpha_nm|^2 - |beta_nm|^2) - 1|.
  double unitarity_defect() const;
};

/// Throws PreconditionError if the wall is still moving.
Bogoliubov extract_bogoliubov(const ModeAmplitudeState& s);

/// Slow amplitudes A_m^(n), B_m^(n) (rows = seeds).
struct SlowAmplitudeState {
  double t = 0.0;
  std::vector<ModeIndex> modes;
  std::vector<double> omega;
  std::vector<std::size_t> seeds;
  std::vector<std::vector<double>> A;
  std::vector<std::vector<double>> B;
  Warnings warnings;

  std::vector<double> photon_numbers() const;
};

/// d/dt (A, B) = eps M (A, B); M keeps only the drive terms whose
/// frequency-matching condition holds to `tol`.
Eigen::MatrixXd msa_matrix(const CavityGeometry& g,
                           const std::vector<ModeIndex>& modes, double Omega,
                           double tol = kResonanceTol, Warnings* warnings = nullptr);

enum class MsaMethod { MatrixExponential, Ode };

/// Slow evolution over the elapsed drive time min(t, t_end) - t_start. Every
/// mode of `modes` is used as a seed.
SlowAmplitudeState msa_evolve(const CavityGeometry& g,
                              const MotionProfile& profile,
                              const std::vector<ModeIndex>& modes, double t,
                              MsaMethod method = MsaMethod::MatrixExponential,
                              double tol = kResonanceTol);

/// Uncoupled growth rate lambda in N = sinh^2(lambda eps t):
/// Scalar and TE kz^2 / (2 w), TM (2 w^2 - kz^2) / (2 w).
double growth_rate(const CavityGeometry& g, const ModeIndex& m);

/// sinh^2(lambda eps t) for a mode driven at Omega = 2 w_m. Throws
/// DomainError when Omega is off resonance or the mode is coupled within
/// `bound` (use msa_evolve).
double photon_number_closed_form(const CavityGeometry& g, const ModeIndex& m,
                                 double eps, double t, double Omega,
                                 int bound = 12);

/// Direct integration of Q'' + [w^2 - 2 eps kz^2 sin(Omega t)] Q = 0 with
/// vacuum initial data, returning 2 w |A|^2 at t_final.
double mathieu_reference(double omega, double kz, double eps, double Omega,
                         double t_final);

/// Slope of log(N) against t over the samples with t >= t_from.
double fit_growth_exponent(const std::vector<double>& t,
                           const std::vector<double>& N, double t_from);

}  // namespace dce::cavity
