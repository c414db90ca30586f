#include <cmath>
#include <numbers>

#include "doctest.h"
#include "dce/error.hpp"
#include "dce/plasma.hpp"
#include "oracles.hpp"

using namespace dce;
using namespace dce::plasma;
using std::numbers::pi;

namespace {

SheetModel model(double V0, double Vmax, double T) {
  SheetModel m;
  m.V0 = V0;
  m.Vmax = Vmax;
  m.pulse = {T, 0.05 * T, 0.1 * T};
  return m;
}

// Drive period that puts 2 w_n exactly on the first harmonic.
double tuned_period(const SheetModel& m, const RectCavity& g, const ModeIndex& n) {
  return 2 * pi / (2 * sheet_frequency(m, g, n));
}

}  // namespace

TEST_CASE("sheet wavenumbers against a cotangent bisection oracle") {
  const double Lx = 1.3;
  for (double V : {0.5, 3.0, 40.0}) {
    const auto k = sheet_wavenumbers(V, Lx, 4);
    for (int m = 1; m <= 4; ++m) {
      const double lo = (2 * m - 1) * pi / Lx + 1e-12, hi = 2 * m * pi / Lx - 1e-12;
      const double ref = oracle::bisect(
          [&](double q) { return 2 * q * std::cos(0.5 * q * Lx) / std::sin(0.5 * q * Lx) + V; }, lo, hi);
      CHECK(k[m - 1] == doctest::Approx(ref).epsilon(1e-12));
      CHECK(sheet_residual(k[m - 1], V, Lx) <= 1e-12);
    }
  }
}

TEST_CASE("sheet wavenumber limits") {
  const double Lx = 2.0;
  const auto k0 = sheet_wavenumbers(0.0, Lx, 3);
  const auto kinf = sheet_wavenumbers(1e14, Lx, 3);
  for (int m = 1; m <= 3; ++m) {
    CHECK(std::abs(k0[m - 1] - (2 * m - 1) * pi / Lx) <= 1e-10);
    CHECK(std::abs(kinf[m - 1] - 2 * m * pi / Lx) <= 1e-10);
  }
  CHECK(sheet_wavenumbers(5.0, Lx, 1)[0] > sheet_wavenumbers(1.0, Lx, 1)[0]);
  CHECK_THROWS_AS(sheet_wavenumbers(-1.0, Lx, 1), DomainError);
}

TEST_CASE("pulse train shape and harmonics") {
  const PulseTrain p{1.0, 0.1, 0.2};
  CHECK(p(0.0) == 0.0);
  CHECK(p(0.1) == doctest::Approx(1.0));
  CHECK(p(0.05) == doctest::Approx(0.5));
  CHECK(std::abs(p(1.0 - 1e-12)) < 1e-9);
  CHECK(p(2.37) == doctest::Approx(p(0.37)));
  for (int j : {1, 2, 5}) {
    const double w = 2 * pi * j;
    const double c = oracle::simpson([&](double t) { return p(t) * std::cos(w * t); }, 0.0, 1.0, 20000);
    const double s = oracle::simpson([&](double t) { return p(t) * std::sin(w * t); }, 0.0, 1.0, 20000);
    CHECK(p.harmonic_amplitude(j) == doctest::Approx(2 * std::hypot(c, s)).epsilon(1e-7));
  }
  CHECK(p.harmonic_frequency(3) == doctest::Approx(6 * pi));
  CHECK_THROWS_AS((PulseTrain{1.0, 1.5, 0.1}(0.2)), DomainError);
}

TEST_CASE("modulation depth") {
  const double Lx = 1.0;
  const auto m = model(100.0, 150.0, 1.0);
  const auto r = modulation_depth(m, Lx, 1);
  const double k0 = sheet_wavenumbers(100.0, Lx, 1)[0];
  CHECK(r.k0 == k0);
  CHECK(r.eps == doctest::Approx(50.0 / (Lx * k0 * k0 + 100.0 * (1 + 100.0 * Lx / 4))));
  CHECK(r.warnings.empty());
  CHECK_FALSE(modulation_depth(model(1.0, 30.0, 1.0), Lx, 1).warnings.empty());
  CHECK_THROWS_AS(modulation_depth(model(2.0, 1.0, 1.0), Lx, 1), DomainError);
  CHECK(modulated_wavenumber(m, Lx, 1, 0.05) == doctest::Approx(k0 * (1 + r.eps * m.pulse(0.05))));
}

TEST_CASE("resonance and photon number") {
  const RectCavity g{1.0, 0.7, 0.45};
  const ModeIndex n{Polarization::TE, 1, 1, 1};
  auto m = model(100.0, 150.0, 1.0);
  const double w = sheet_frequency(m, g, n);
  const double k0 = sheet_wavenumbers(100.0, 1.0, 1)[0];
  CHECK(w == doctest::Approx(std::sqrt(k0 * k0 + std::pow(pi / 0.7, 2) + std::pow(pi / 0.45, 2))));
  m.pulse = {tuned_period(m, g, n), 0.002, 0.004};
  const auto rep = resonance_check_sheet(m, g, 1, 5);
  CHECK(rep.cls == SheetResonance::Uncoupled);
  REQUIRE(rep.resonant.size() == 1);
  const double t = 500.0;
  const auto mod = modulation_depth(m, 1.0, 1);
  const double Om = m.pulse.harmonic_frequency(1);
  const double x = k0 * k0 * m.pulse.harmonic_amplitude(1) * mod.eps * t / Om;
  CHECK(sheet_photon_number(m, g, n, 1, t) == doctest::Approx(std::sinh(x) * std::sinh(x)));

  auto off = m;
  off.pulse.period *= 1.01;
  CHECK(resonance_check_sheet(off, g, 1, 5).cls == SheetResonance::OffResonance);
  CHECK_THROWS_AS(sheet_photon_number(off, g, n, 1, t), DomainError);

  auto flat = m;
  flat.Vmax = flat.V0;
  CHECK(sheet_photon_number(flat, g, n, 1, t) == 0.0);
}

TEST_CASE("sum resonance between sheet modes is reported as coupled") {
  const RectCavity g{1.0, 0.7, 0.45};
  auto m = model(100.0, 150.0, 1.0);
  const double w1 = sheet_frequency(m, g, {Polarization::TE, 1, 1, 1});
  const double w2 = sheet_frequency(m, g, {Polarization::TE, 2, 1, 1});
  m.pulse = {2 * pi / (w1 + w2), 0.002, 0.004};
  const auto rep = resonance_check_sheet(m, g, 1, 4);
  CHECK(rep.cls == SheetResonance::CoupledSet);
  CHECK_FALSE(rep.pairs.empty());
}

TEST_CASE("rescaling invariance of the photon number") {
  const RectCavity g{1.0, 0.7, 0.45};
  const ModeIndex n{Polarization::TE, 1, 1, 1};
  auto m = model(100.0, 150.0, 1.0);
  m.pulse = {tuned_period(m, g, n), 0.002, 0.004};
  const double N1 = sheet_photon_number(m, g, n, 1, 300.0);
  const double s = 2.0;
  auto ms = m;
  ms.V0 /= s;
  ms.Vmax /= s;
  ms.pulse = {m.pulse.period * s, m.pulse.tau_e * s, m.pulse.tau_r * s};
  const RectCavity gs{g.Lx * s, g.Ly * s, g.Lz * s};
  const double N2 = sheet_photon_number(ms, gs, n, 1, 300.0 * s);
  CHECK(N1 > 0);
  CHECK(std::abs(N2 - N1) <= 1e-10 * N1);
}
