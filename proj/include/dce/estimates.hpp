#pragma once

#include "dce/units.hpp"

namespace dce::estimates {

struct EstimateInput {
  double Q = 1.0;
  double eps = 0.0;
  double omega = 1.0;  // resonant angular frequency of the cavity mode
  double eta = 1.0;
};

struct EstimateResult {
  double N_max = 0.0;
  double t_max = 0.0;
  double P_max = 0.0;
  bool feasible = false;
};

/// Photon number after the ring-down time Q/omega with sinh^2(eta omega eps t)
/// growth. Feasibility is the necessary condition 2 Q eps > 1.
/// Units follow `u` (SI: omega in rad/s, t_max in s, P_max in W).
EstimateResult estimate_max_photons(const EstimateInput& in,
                                    UnitSystem u = UnitSystem::SI());

/// Relative permittivity modulation of a pumped chi2 crystal:
/// (chi2 E_pump / 2) / (1 + chi1).
double opo_modulation_depth(double chi1, double chi2, double E_pump);

}  // namespace dce::estimates
