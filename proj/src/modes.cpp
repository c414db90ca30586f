#include "dce/modes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dce/bessel.hpp"
#include "dce/numerics.hpp"

namespace dce {

using std::numbers::pi;

const char* to_string(Polarization p) noexcept {
  switch (p) {
    case Polarization::Scalar: return "scalar";
    case Polarization::TE: return "TE";
    case Polarization::TM: return "TM";
  }
  return "?";
}

Polarization parse_polarization(const std::string& s) {
  if (s == "scalar" || s == "Scalar") return Polarization::Scalar;
  if (s == "TE" || s == "te") return Polarization::TE;
  if (s == "TM" || s == "tm") return Polarization::TM;
  throw ValidationError("unknown polarization '" + s + "'");
}

std::string to_string(const ModeIndex& m) {
  return std::string(to_string(m.pol)) + "(" + std::to_string(m.nx) + "," +
         std::to_string(m.ny) + "," + std::to_string(m.nz) + ")";
}

double cavity_length_z(const CavityGeometry& g) {
  return std::visit([](const auto& c) { return c.Lz; }, g);
}

void validate(const CavityGeometry& g) {
  if (const auto* r = std::get_if<RectCavity>(&g)) {
    if (!(r->Lx > 0 && r->Ly > 0 && r->Lz > 0))
      throw DomainError("rectangular cavity lengths must be > 0");
  } else {
    const auto& c = std::get<CircCavity>(g);
    if (!(c.R > 0 && c.Lz > 0))
      throw DomainError("circular cavity radius and length must be > 0");
  }
}

void validate(const ModeIndex& m, const CavityGeometry& g) {
  auto fail = [&](const char* rule) {
    throw DomainError("invalid mode " + to_string(m) + ": " + rule);
  };
  if (m.nx < 0 || m.ny < 0 || m.nz < 0) fail("indices must be non-negative");
  if (std::holds_alternative<RectCavity>(g)) {
    switch (m.pol) {
      case Polarization::Scalar:
        if (m.nx < 1 || m.ny < 1 || m.nz < 1) fail("scalar modes need nx, ny, nz >= 1");
        break;
      case Polarization::TE:
        if (m.nx == 0 && m.ny == 0) fail("TE modes need nx, ny not both zero");
        if (m.nz < 1) fail("TE modes need nz >= 1");
        break;
      case Polarization::TM:
        if (m.nx < 1 || m.ny < 1) fail("TM modes need nx, ny >= 1");
        break;
    }
  } else {
    if (m.ny < 1) fail("circular modes need radial index m >= 1");
    if (m.pol != Polarization::TM && m.nz < 1) fail("TE and scalar circular modes need nz >= 1");
  }
}

double spectrum_rect(const RectCavity& g, const ModeIndex& m) {
  validate(CavityGeometry{g});
  validate(m, g);
  const double a = m.nx * pi / g.Lx;
  const double b = m.ny * pi / g.Ly;
  const double c = m.nz * pi / g.Lz;
  return std::sqrt(a * a + b * b + c * c);
}

double spectrum_circ(const CircCavity& g, const ModeIndex& m) {
  return mode_spectrum(g, m).omega;
}

ModeSpectrum mode_spectrum(const CavityGeometry& g, const ModeIndex& m) {
  validate(g);
  validate(m, g);
  ModeSpectrum s;
  if (const auto* r = std::get_if<RectCavity>(&g)) {
    const double a = m.nx * pi / r->Lx;
    const double b = m.ny * pi / r->Ly;
    s.k_perp2 = a * a + b * b;
    s.kz = m.nz * pi / r->Lz;
  } else {
    const auto& c = std::get<CircCavity>(g);
    const auto kind = m.pol == Polarization::TE ? BesselKind::JPrime : BesselKind::J;
    const double root = bessel_root(kind, m.nx, m.ny);
    s.k_perp2 = (root / c.R) * (root / c.R);
    s.kz = m.nz * pi / c.Lz;
  }
  s.omega = std::sqrt(s.k_perp2 + s.kz * s.kz);
  return s;
}

std::vector<ModeIndex> enumerate_modes(const CavityGeometry& g,
                                       Polarization pol, int bound) {
  std::vector<ModeIndex> out;
  const bool circ = std::holds_alternative<CircCavity>(g);
  for (int a = 0; a <= bound; ++a)
    for (int b = circ ? 1 : 0; b <= bound; ++b)
      for (int z = 0; z <= bound; ++z) {
        ModeIndex m{pol, a, b, z};
        try {
          validate(m, g);
        } catch (const DomainError&) {
          continue;
        }
        out.push_back(m);
      }
  std::sort(out.begin(), out.end());
  return out;
}

MotionProfile MotionProfile::harmonic(double eps, double Omega, double t_start,
                                      double t_end, Form form) {
  if (eps < 0) throw DomainError("motion amplitude eps must be >= 0");
  if (t_end < t_start) throw DomainError("motion must end after it starts");
  MotionProfile p;
  p.form_ = form;
  p.eps_ = eps;
  p.Omega_ = Omega;
  p.t_start_ = t_start;
  p.t_end_ = t_end;
  return p;
}

MotionProfile MotionProfile::tabulated(std::vector<double> samples, double dt,
                                       double t_start) {
  if (samples.size() < 11)
    throw NumericError("tabulated motion needs at least 11 samples");
  if (!(dt > 0)) throw DomainError("tabulated motion needs dt > 0");
  MotionProfile p;
  p.form_ = Form::Tabulated;
  p.t_start_ = t_start;
  p.t_end_ = t_start + dt * double(samples.size() - 1);
  p.dt_ = dt;
  double dev = 0.0;
  for (double v : samples) dev = std::max(dev, std::abs(v - 1.0));
  p.eps_ = dev;
  p.samples_ = std::move(samples);
  return p;
}

double MotionProfile::relative_length(double t, int order) const {
  if (order < 0 || order > 3) throw DomainError("relative_length: order must be 0..3");
  if (t < t_start_ || t > t_end_) return order == 0 ? 1.0 : 0.0;
  if (form_ == Form::Tabulated) {
    return num::uniform_derivative(samples_, t_start_, dt_, t, order);
  }
  const double ph = Omega_ * (t - t_start_);
  switch (order) {
    case 0: return 1.0 + eps_ * std::sin(ph);
    case 1: return eps_ * Omega_ * std::cos(ph);
    case 2: return -eps_ * Omega_ * Omega_ * std::sin(ph);
    default: return -eps_ * Omega_ * Omega_ * Omega_ * std::cos(ph);
  }
}

Warnings MotionProfile::check_perturbative() const {
  Warnings w;
  if (eps_ > 0.1) {
    throw PreconditionError("perturbative solvers need eps <= 0.1, got " +
                            std::to_string(eps_));
  }
  if (eps_ > 0.01) {
    w.push_back("eps = " + std::to_string(eps_) +
                " exceeds 0.01; first-order results lose accuracy");
  }
  return w;
}

}  // namespace dce
