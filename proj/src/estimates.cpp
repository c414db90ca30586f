#include "dce/estimates.hpp"

#include <cmath>

#include "dce/error.hpp"

namespace dce::estimates {

EstimateResult estimate_max_photons(const EstimateInput& in, UnitSystem u) {
  if (!(in.Q > 0)) throw DomainError("Q must be > 0");
  if (!(in.eps >= 0)) throw DomainError("eps must be >= 0");
  if (!(in.omega > 0)) throw DomainError("omega must be > 0");
  EstimateResult r;
  r.t_max = in.Q / in.omega;
  const double s = std::sinh(in.eta * in.Q * in.eps);
  r.N_max = s * s;
  r.P_max = r.N_max * u.hbar() * in.omega / r.t_max;
  r.feasible = 2.0 * in.Q * in.eps > 1.0;
  return r;
}

double opo_modulation_depth(double chi1, double chi2, double E_pump) {
  if (!(1.0 + chi1 > 0)) throw DomainError("1 + chi1 must be > 0");
  return 0.5 * chi2 * E_pump / (1.0 + chi1);
}

}  // namespace dce::estimates
