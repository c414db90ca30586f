#include "dce/plasma.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "dce/numerics.hpp"

namespace dce::plasma {

using std::numbers::pi;

namespace {
void validate_pulse(const PulseTrain& p) {
  if (!(p.period > 0) || !(p.tau_e > 0) || !(p.tau_r > 0) || !(p.tau_e < p.period))
    throw DomainError("pulse train needs 0 < tau_e < T and tau_r > 0");
}
}  // namespace

double PulseTrain::operator()(double t) const {
  validate_pulse(*this);
  double s = std::fmod(t, period);
  if (s < 0) s += period;
  if (s <= tau_e) return 0.5 * (1.0 - std::cos(pi * s / tau_e));
  const double tail = std::exp(-(period - tau_e) / tau_r);
  return (std::exp(-(s - tau_e) / tau_r) - tail) / (1.0 - tail);
}

double PulseTrain::harmonic_frequency(int j) const { return 2.0 * pi * j / period; }

double PulseTrain::harmonic_amplitude(int j) const {
  validate_pulse(*this);
  if (j < 1) throw DomainError("harmonic index must be >= 1");
  const double w = harmonic_frequency(j);
  const double brk[] = {tau_e};
  const auto c = num::integrate([&](double t) { return (*this)(t) * std::cos(w * t); },
                                0.0, period, 1e-12, brk, 16);
  const auto s = num::integrate([&](double t) { return (*this)(t) * std::sin(w * t); },
                                0.0, period, 1e-12, brk, 16);
  return 2.0 / period * std::hypot(c.value, s.value);
}

double sheet_residual(double k, double V, double Lx) {
  const double x = 0.5 * k * Lx;
  return std::abs(2.0 * k * std::cos(x) + V * std::sin(x)) / (2.0 * k + V);
}

std::vector<double> sheet_wavenumbers(double V, double Lx, int count) {
  if (V < 0) throw DomainError("sheet potential V must be >= 0");
  if (!(Lx > 0)) throw DomainError("Lx must be > 0");
  std::vector<double> k;
  for (int m = 1; m <= count; ++m) {
    const double lo = (2 * m - 1) * pi / Lx, hi = 2 * m * pi / Lx;
    if (V == 0.0) {
      k.push_back(lo);
      continue;
    }
    const auto g = [&](double q) {
      const double x = 0.5 * q * Lx;
      return 2.0 * q * std::cos(x) + V * std::sin(x);
    };
    const auto dg = [&](double q) {
      const double x = 0.5 * q * Lx;
      return 2.0 * std::cos(x) - q * Lx * std::sin(x) + 0.5 * V * Lx * std::cos(x);
    };
    k.push_back(num::newton_bracketed(g, dg, lo, hi, 1e-15 * hi));
  }
  return k;
}

Modulation modulation_depth(const SheetModel& m, double Lx, int n) {
  if (n < 1) throw DomainError("sheet mode index must be >= 1");
  if (!(m.V0 > 0)) throw DomainError("V0 must be > 0");
  if (m.Vmax < m.V0) throw DomainError("Vmax must be >= V0");
  Modulation r;
  r.k0 = sheet_wavenumbers(m.V0, Lx, n).back();
  r.eps = (m.Vmax - m.V0) / (Lx * r.k0 * r.k0 + m.V0 * (1.0 + m.V0 * Lx / 4.0));
  const double ratio = m.Vmax / m.V0;
  if (!(ratio > 1.0) || !(m.V0 * Lx > 10.0 * ratio)) {
    r.warnings.push_back("perturbative regime V0*Lx >> Vmax/V0 > 1 not satisfied (V0*Lx = " +
                         std::to_string(m.V0 * Lx) + ", Vmax/V0 = " + std::to_string(ratio) + ")");
  }
  return r;
}

double modulated_wavenumber(const SheetModel& m, double Lx, int n, double t) {
  const auto mod = modulation_depth(m, Lx, n);
  return mod.k0 * (1.0 + mod.eps * m.pulse(t));
}

double sheet_frequency(const SheetModel& m, const RectCavity& g, const ModeIndex& n) {
  if (n.nx < 1 || n.ny < 1 || n.nz < 1) throw DomainError("sheet modes need nx, ny, nz >= 1");
  const double k0 = sheet_wavenumbers(m.V0, g.Lx, n.nx).back();
  const double ky = pi * n.ny / g.Ly, kz = pi * n.nz / g.Lz;
  return std::sqrt(k0 * k0 + ky * ky + kz * kz);
}

const char* to_string(SheetResonance r) noexcept {
  switch (r) {
    case SheetResonance::Uncoupled: return "Uncoupled";
    case SheetResonance::CoupledSet: return "CoupledSet";
    case SheetResonance::OffResonance: return "OffResonance";
  }
  return "?";
}

SheetResonanceReport resonance_check_sheet(const SheetModel& m, const RectCavity& g,
                                           int j, int bound, double tol) {
  if (bound < 1) throw DomainError("search bound must be >= 1");
  SheetResonanceReport r;
  r.Omega = m.pulse.harmonic_frequency(j);
  const auto k0 = sheet_wavenumbers(m.V0, g.Lx, bound);
  const double scale = tol * r.Omega;
  const auto check = [&](double mismatch, const std::string& what) {
    const double d = std::abs(mismatch);
    if (d <= scale) return true;
    if (d <= 10.0 * scale) r.warnings.push_back("near miss: " + what);
    return false;
  };
  std::map<std::pair<int, int>, std::vector<std::pair<ModeIndex, double>>> groups;
  for (int ny = 1; ny <= bound; ++ny)
    for (int nz = 1; nz <= bound; ++nz)
      for (int nx = 1; nx <= bound; ++nx) {
        const double ky = pi * ny / g.Ly, kz = pi * nz / g.Lz;
        const double w = std::sqrt(k0[nx - 1] * k0[nx - 1] + ky * ky + kz * kz);
        const ModeIndex mi{Polarization::TE, nx, ny, nz};
        if (check(2.0 * w - r.Omega, "2 w" + to_string(mi) + " = Omega_j"))
          r.resonant.push_back(mi);
        groups[{ny, nz}].push_back({mi, w});
      }
  for (const auto& [key, modes] : groups)
    for (std::size_t a = 0; a < modes.size(); ++a)
      for (std::size_t b = a + 1; b < modes.size(); ++b) {
        const double wa = modes[a].second, wb = modes[b].second;
        const std::string label = to_string(modes[a].first) + ", " + to_string(modes[b].first);
        if (check(wa + wb - r.Omega, "sum condition " + label) ||
            check(std::abs(wa - wb) - r.Omega, "difference condition " + label))
          r.pairs.push_back({modes[a].first, modes[b].first});
      }
  std::sort(r.resonant.begin(), r.resonant.end());
  if (!r.pairs.empty())
    r.cls = SheetResonance::CoupledSet;
  else if (!r.resonant.empty())
    r.cls = SheetResonance::Uncoupled;
  return r;
}

double sheet_photon_number(const SheetModel& m, const RectCavity& g,
                           const ModeIndex& n, int j, double t, int bound,
                           double tol) {
  const double w = sheet_frequency(m, g, n);
  const double Omega = m.pulse.harmonic_frequency(j);
  if (std::abs(2.0 * w - Omega) > tol * Omega) {
    throw DomainError("sheet mode " + to_string(n) + " is off resonance with harmonic " +
                      std::to_string(j));
  }
  const auto rep = resonance_check_sheet(m, g, j, std::max({bound, n.nx, n.ny, n.nz}), tol);
  for (const auto& [a, b] : rep.pairs) {
    const auto same = [&](const ModeIndex& x) { return x.nx == n.nx && x.ny == n.ny && x.nz == n.nz; };
    if (same(a) || same(b)) {
      throw DomainError("sheet mode " + to_string(n) + " is coupled to " +
                        to_string(same(a) ? b : a));
    }
  }
  const auto mod = modulation_depth(m, g.Lx, n.nx);
  const double fj = m.pulse.harmonic_amplitude(j);
  const double x = std::sinh(mod.k0 * mod.k0 * fj * mod.eps * t / Omega);
  return x * x;
}

}  // namespace dce::plasma
