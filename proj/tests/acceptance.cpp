// Prints one PASS/FAIL line per acceptance criterion; exits non-zero if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "CLI11.hpp"

#include "dce/cavity.hpp"
#include "dce/error.hpp"
#include "dce/estimates.hpp"
#include "dce/friction.hpp"
#include "dce/mirror.hpp"
#include "dce/modes.hpp"
#include "dce/moore.hpp"
#include "dce/numerics.hpp"
#include "dce/plasma.hpp"
#include "dce/scenario.hpp"

using namespace dce;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::set<int> g_failed;

void criterion(int id, const char* title, double time_limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit > 0 && secs > time_limit) {
    o.pass = false;
    o.detail += fmt("; runtime %.2f s exceeds %.0f s", secs, time_limit);
  }
  if (!o.pass) g_failed.insert(id);
  std::printf("%s %2d  %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

moore::MooreSolution numeric_moore(int q, double eps, double t_max) {
  return moore::MooreSolution::numeric(MotionProfile::harmonic(eps, q * pi, 0.0, t_max + 5), 1.0, t_max);
}

double max_excess(const moore::MooreSolution& s, double t) {
  const auto p = moore::energy_density_profile(s, t, 2001);
  double m = 0;
  for (double v : p.T00) m = std::max(m, std::abs(v + pi / 24));
  return m;
}

// Log-fit of the MSA photon number of `mode` over eps*t in (0, span], from span/4.
double msa_exponent(const CavityGeometry& g, const ModeIndex& mode, double eps, double span,
                    std::vector<ModeIndex>* closure_out = nullptr) {
  const double Omega = 2 * mode_spectrum(g, mode).omega;
  const auto rep = cavity::find_resonances(g, Omega, mode.pol, 12);
  const auto set = cavity::resonance_closure(rep, mode);
  if (closure_out) *closure_out = set;
  const std::size_t self = std::find(set.begin(), set.end(), mode) - set.begin();
  std::vector<double> ts, Ns;
  for (int i = 1; i <= 80; ++i) {
    const double t = span / eps * i / 80;
    const auto s = cavity::msa_evolve(g, MotionProfile::harmonic(eps, Omega, 0, t), set, t);
    ts.push_back(t);
    Ns.push_back(s.photon_numbers()[self]);
  }
  return cavity::fit_growth_exponent(ts, Ns, 0.25 * span / eps) / eps;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> expected;
  app.add_option("--expect-fail", expected, "criteria known to fail; exit 0 iff exactly these fail")
      ->check(CLI::Range(1, 14));
  CLI11_PARSE(app, argc, argv);

  criterion(1, "susceptibility quadrature vs closed form", 1.0, [] {
    double worst = 0;
    for (double Om : num::logspace(-3, 3, 20))
      worst = std::max(worst, rel(mirror::susceptibility_1d_quadrature(Om).imag(),
                                  mirror::susceptibility_1d(Om).imag()));
    return Outcome{worst <= 1e-9, fmt("max rel err %.2e over 20 frequencies (tol 1e-9)", worst)};
  });

  criterion(2, "Moore RG vs numeric consistency", 10.0, [] {
    Outcome o;
    for (auto [q, eps] : {std::pair{2, 0.005}, std::pair{4, 0.01}}) {
      const auto rg = moore::MooreSolution::rg(q, eps, 1.0);
      const auto nu = numeric_moore(q, eps, 27.0);
      // ratio = |R_RG - R_Num| / (10 eps^2 Omega t 2/(pi q)). The closed form drops a bounded
      // O(eps) oscillation, so the bound (linear in t) only covers it after a few round trips.
      double res = 0, ratio = 0, dmax = 0, t_worst = 0, t_last_over = 0;
      for (int i = 1; i <= 2500; ++i) {
        const double t = 0.01 * i;
        res = std::max(res, nu.residual(t));
        const double bound = 10 * eps * eps * (q * pi) * t * 2 / (pi * q);
        const double d = std::abs(rg.R(t) - nu.R(t));
        dmax = std::max(dmax, d);
        if (d / bound > ratio) ratio = d / bound, t_worst = t;
        if (d > bound) t_last_over = t;
      }
      o.pass = o.pass && res <= 1e-10 && ratio <= 1;
      o.detail += fmt("%sq=%d: residual %.1e, max |dR| %.2e = %.2f eps, |dR|/bound max %.3g at t=%.2f L0, "
                      "bound holds for t > %.2f L0",
                      o.detail.empty() ? "" : "; ", q, res, dmax, dmax / eps, ratio, t_worst, t_last_over);
    }
    return o;
  });

  criterion(3, "staircase jumps q=4 eps=0.01", 0, [] {
    const auto s = moore::MooreSolution::rg(4, 0.01, 1.0);
    Outcome o;
    double worst = 0;
    for (double w0 : {18.0, 20.0, 22.0}) {
      const auto found = moore::detect_jumps(s, w0, w0 + 2);
      const auto expect = moore::predicted_jumps(4, 1.0, w0, w0 + 2);
      if (found.size() != 4 || expect.size() != 4) {
        o.pass = false;
        o.detail += fmt("[%g,%g]: %zu jumps; ", w0, w0 + 2, found.size());
        continue;
      }
      for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(found[i] - expect[i]));
    }
    o.pass = o.pass && worst <= 1e-3;
    o.detail += fmt("4 jumps per 2L0 in windows from t=18 to 24, max offset from cos(4 pi t)=-1 is %.1e L0", worst);
    return o;
  });

  criterion(4, "energy-density peaks", 0, [] {
    const auto rg = moore::MooreSolution::rg(4, 0.01, 1.0);
    const auto nu = numeric_moore(4, 0.01, 22.0);
    const auto p_rg = moore::count_peaks(moore::energy_density_profile(rg, 20.4, 2001));
    const auto p_nu = moore::count_peaks(moore::energy_density_profile(nu, 20.4, 2001));
    // q=1: peak heights sampled at equal drive phase; exponential growth would
    // keep the successive ratios constant.
    const auto q1 = numeric_moore(1, 0.01, 32.0);
    std::vector<double> h;
    for (double t = 10; t <= 30; t += 2) h.push_back(max_excess(q1, t));
    bool decelerating = true;
    for (std::size_t i = 2; i < h.size(); ++i)
      decelerating = decelerating && h[i] / h[i - 1] < h[i - 1] / h[i - 2];
    const double loglog = std::log(h.back() / h.front()) / std::log(3.0);
    return Outcome{p_rg == 4 && p_nu == 4 && decelerating,
                   fmt("q=4 t=20.4: %zu peaks (RG), %zu (numeric); q=1 peak growth ratios %s, "
                       "power-law index %.2f over t=10..30",
                       p_rg, p_nu, decelerating ? "decreasing" : "NOT decreasing", loglog)};
  });

  criterion(5, "static limits", 0, [] {
    const auto rg = moore::MooreSolution::rg(4, 0.01, 1.3);
    const auto nu = moore::MooreSolution::numeric(MotionProfile::harmonic(0.01, 1.0, 0, 10), 1.3, 5);
    const double fstat = -pi / (24 * 1.3 * 1.3);
    bool ok = moore::mirror_force(rg, -0.2) == fstat && moore::mirror_force(nu, -2.0) == fstat;
    std::vector<double> zeros;
    const RectCavity box{1, 1.3, 0.7};
    const ModeIndex m{Polarization::Scalar, 1, 1, 1};
    const double w = mode_spectrum(box, m).omega;
    const auto still = MotionProfile::harmonic(0.0, 2 * w, 0, 50);
    zeros.push_back(cavity::photon_number_closed_form(box, m, 0.0, 50, 2 * w));
    zeros.push_back(cavity::msa_evolve(box, still, {m}, 50).photon_numbers()[0]);
    for (double n : cavity::extract_bogoliubov(
                        cavity::integrate_modes(box, still, {m}, cavity::truncation_set(box, {m}), 50))
                        .photon_numbers())
      zeros.push_back(n);
    plasma::SheetModel sm{50.0, 50.0, {1.0, 0.05, 0.1}};
    const RectCavity sg{1.0, 0.7, 0.45};
    const ModeIndex sn{Polarization::TE, 1, 1, 1};
    sm.pulse.period = pi / plasma::sheet_frequency(sm, sg, sn);
    zeros.push_back(plasma::sheet_photon_number(sm, sg, sn, 1, 100.0));
    zeros.push_back(estimates::estimate_max_photons({1e6, 0.0, 1e9, 1.0}).N_max);
    zeros.push_back(mirror::radiated_energy_and_rate(0.0, 1.0, 100.0, 1.0).photon_rate);
    zeros.push_back(moore::intracavity_energy(moore::MooreSolution::rg(2, 0.0, 1.0), 7.3));
    double worst = 0;
    for (double z : zeros) worst = std::max(worst, std::abs(z));
    ok = ok && worst == 0.0;
    return Outcome{ok, fmt("force(t<0) = -pi/(24 L0^2) exactly for both solvers; largest eps=0 photon number or "
                           "energy across modules %.1e",
                           worst)};
  });

  criterion(6, "full mode integration vs closed form (uncoupled scalar)", 30.0, [] {
    const RectCavity box{1, 1.3, 0.7};
    const ModeIndex m{Polarization::Scalar, 1, 1, 1};
    const auto s = mode_spectrum(box, m);
    const double eps = 1e-3, Omega = 2 * s.omega;
    const auto rep = cavity::find_resonances(box, Omega, Polarization::Scalar, 12);
    if (rep.cls != cavity::ResonanceClass::Uncoupled) return Outcome{false, "mode is not uncoupled"};
    const auto modes = cavity::truncation_set(box, {m}, 2);
    const std::size_t self = std::find(modes.begin(), modes.end(), m) - modes.begin();
    double worst = 0;
    for (double ewt : {0.1, 0.25, 0.5}) {
      const double t = ewt / (eps * s.omega);
      const auto st = cavity::integrate_modes(box, MotionProfile::harmonic(eps, Omega, 0, t), {m}, modes, t);
      const double N = cavity::extract_bogoliubov(st).photon_numbers()[self];
      const double closed = std::pow(std::sinh(s.kz * s.kz / Omega * eps * t), 2);
      worst = std::max(worst, rel(N, closed));
    }
    return Outcome{worst <= 0.05, fmt("eps=1e-3, eps*w*t in {0.1,0.25,0.5}, %zu modes: max rel deviation %.2f%% (tol 5%%)",
                                      modes.size(), 100 * worst)};
  });

  criterion(7, "cubic scalar coupled growth exponent", 0, [] {
    std::vector<ModeIndex> set;
    const double lam = msa_exponent(RectCavity{1, 1, 1}, {Polarization::Scalar, 1, 1, 1}, 1e-3, 40, &set);
    const bool partner = set.size() == 2 && set[1] == ModeIndex{Polarization::Scalar, 1, 1, 5};
    return Outcome{partner && rel(lam, 0.9) <= 0.1,
                   fmt("coupled set of %zu modes (partner (1,1,5)%s), fitted exponent %.4f eps/L (target 0.9 +- 10%%)",
                       set.size(), partner ? "" : " MISSING", lam)};
  });

  criterion(8, "cubic electromagnetic cavity", 0, [] {
    const RectCavity cube{1, 1, 1};
    const ModeIndex tm110{Polarization::TM, 1, 1, 0}, tm114{Polarization::TM, 1, 1, 4};
    const double w110 = mode_spectrum(cube, tm110).omega, w114 = mode_spectrum(cube, tm114).omega;
    std::vector<ModeIndex> set;
    const double lam_tm = msa_exponent(cube, tm110, 1e-3, 80, &set);
    const bool coupled = rel(w114, 3 * w110) <= 1e-9 &&
                         std::find(set.begin(), set.end(), tm114) != set.end();
    const double lam_te = msa_exponent(cube, {Polarization::TE, 1, 0, 1}, 1e-3, 20);
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> idx(1, 8);
    int ordered = 0;
    for (int i = 0; i < 50; ++i) {
      const int a = idx(rng), b = idx(rng), c = idx(rng);
      ordered += cavity::growth_rate(cube, {Polarization::TM, a, b, c}) >
                 cavity::growth_rate(cube, {Polarization::TE, a, b, c});
    }
    const double te_target = pi / std::sqrt(2.0);
    return Outcome{coupled && rel(lam_tm, 4.4) <= 0.1 && rel(lam_te, te_target) <= 0.1 && ordered == 50,
                   fmt("TM(1,1,0)-(1,1,4) coupling %s; TM exponent %.3f (target 4.4); TE(1,0,1) exponent %.4f "
                       "(target %.4f); lambda_TM > lambda_TE for %d/50 random modes",
                       coupled ? "detected" : "MISSING", lam_tm, lam_te, te_target, ordered)};
  });

  criterion(9, "cylindrical cavity", 0, [] {
    double w111 = 0, w010 = 0;
    for (double Lz : {0.8, 1.0, 2.0, 3.0}) {
      const CircCavity c{1.0, Lz};
      w111 = std::max(w111, rel(spectrum_circ(c, {Polarization::TE, 1, 1, 1}),
                                1.841 * std::sqrt(1 + 2.912 / (Lz * Lz))));
      w010 = std::max(w010, rel(spectrum_circ(c, {Polarization::TM, 0, 1, 0}), 2.405));
    }
    const CircCavity unit{1, 1};
    const ModeIndex tm010{Polarization::TM, 0, 1, 0};
    std::vector<ModeIndex> set;
    const double lam = msa_exponent(unit, tm010, 1e-3, 20, &set);
    const auto gap = [](double Lz) {
      const CircCavity c{1.0, Lz};
      return spectrum_circ(c, {Polarization::TE, 1, 1, 1}) - spectrum_circ(c, {Polarization::TM, 0, 1, 0});
    };
    const double cross = num::bisect(gap, 1.0, 4.0, 1e-12);
    const bool ok = w111 <= 1e-3 && w010 <= 1e-3 && set.size() == 1 && rel(lam, 4.81) <= 0.1 &&
                    rel(cross, 2.03) <= 0.01;
    return Outcome{ok, fmt("TE111 formula rel err %.1e, TM010 %.1e; TM010 %s, exponent %.3f eps/R (target 4.81); "
                           "TE111 becomes fundamental above Lz = %.4f R (target 2.03)",
                           w111, w010, set.size() == 1 ? "uncoupled" : "coupled", lam, cross)};
  });

  criterion(10, "Bogoliubov unitarity vs truncation", 0, [] {
    const RectCavity cube{1, 1, 1};
    const ModeIndex m{Polarization::Scalar, 1, 1, 1};
    const double Omega = 2 * mode_spectrum(cube, m).omega, eps = 1e-3, t = 0.5 / (eps * Omega);
    const std::vector<ModeIndex> core{m, {Polarization::Scalar, 1, 1, 5}};
    const auto motion = MotionProfile::harmonic(eps, Omega, 0, t);
    std::vector<double> defect, N;
    std::vector<std::size_t> sizes;
    for (int extra : {0, 1, 2, 3}) {
      const auto modes = cavity::truncation_set(cube, core, extra);
      const auto b = cavity::extract_bogoliubov(cavity::integrate_modes(cube, motion, {m}, modes, t));
      sizes.push_back(modes.size());
      defect.push_back(b.unitarity_defect());
      N.push_back(b.photon_numbers()[std::find(modes.begin(), modes.end(), m) - modes.begin()]);
    }
    // Integrator noise (~1e-8) sets the floor below which ordering is not meaningful.
    const double floor = 1e-6;
    bool monotone = true;
    for (std::size_t i = 1; i < defect.size(); ++i) monotone = monotone && defect[i] <= defect[i - 1] + floor;
    const bool converged = rel(N[3], N[2]) <= 1e-3;
    std::string list;
    for (std::size_t i = 0; i < defect.size(); ++i) list += fmt("%s%zu:%.1e", i ? " " : "", sizes[i], defect[i]);
    return Outcome{defect.back() <= 1e-3 && monotone && converged,
                   fmt("defect by truncation size {%s}; non-increasing within %.0e; N converged to %.2e",
                       list.c_str(), floor, rel(N[3], N[2]))};
  });

  criterion(11, "quantum friction", 60.0, [] {
    const double ev = si::e / si::hbar;
    const auto drude = friction::DielectricModel::drude(9 * ev, 0.03 * ev);
    const bool lossless =
        friction::friction_force({friction::DielectricModel::constant(2.25), 1e-8, 10.0}).force == 0.0;
    double prev = INFINITY;
    bool positive = true, decreasing = true;
    for (double d : {5e-9, 1e-8, 2e-8, 4e-8, 8e-8}) {
      const double f = friction::friction_force({drude, d, 1.0}).force;
      positive = positive && f >= 0;
      decreasing = decreasing && f < prev;
      prev = f;
    }
    std::vector<double> fv;
    for (double v : {1.0, 1e-1, 1e-2, 1e-3}) fv.push_back(friction::friction_force({drude, 1e-8, v}).force);
    const bool vanishing = fv[3] < fv[2] && fv[2] < fv[1] && fv[1] < fv[0] && fv[3] < 1e-8 * fv[0];
    const friction::FrictionScenario bench{drude, 1e-8, 1.0};
    const double q = friction::friction_force(bench).force;
    const auto mc = friction::friction_force_monte_carlo(bench, 1u << 20);
    const double agree = rel(mc.force, q);
    return Outcome{lossless && positive && decreasing && vanishing && agree <= 0.01,
                   fmt("lossless F=0 %s; F>=0 %s; decreasing in d %s; F(v=1e-3)/F(v=1) = %.2e; benchmark "
                       "%.4e N/m^2, Monte Carlo %.4e (%.2f%%)",
                       lossless ? "yes" : "NO", positive ? "yes" : "NO", decreasing ? "yes" : "NO",
                       fv[3] / fv[0], q, mc.force, 100 * agree)};
  });

  criterion(12, "plasma sheet", 0, [] {
    double res = 0, lim0 = 0, liminf = 0;
    for (double Lx : {0.5, 1.0, 3.0}) {
      for (double V : {0.1, 1.0, 10.0, 1e3}) {
        const auto k = plasma::sheet_wavenumbers(V, Lx, 6);
        for (double x : k) res = std::max(res, plasma::sheet_residual(x, V, Lx));
      }
      const auto k0 = plasma::sheet_wavenumbers(0.0, Lx, 6);
      const auto ki = plasma::sheet_wavenumbers(1e15, Lx, 6);
      for (int m = 1; m <= 6; ++m) {
        lim0 = std::max(lim0, std::abs(k0[m - 1] - (2 * m - 1) * pi / Lx));
        liminf = std::max(liminf, std::abs(ki[m - 1] - 2 * m * pi / Lx));
      }
    }
    const RectCavity g{1.0, 0.7, 0.45};
    const ModeIndex n{Polarization::TE, 1, 1, 1};
    plasma::SheetModel m{100.0, 150.0, {1.0, 0.002, 0.004}};
    m.pulse.period = pi / plasma::sheet_frequency(m, g, n);
    const double N1 = plasma::sheet_photon_number(m, g, n, 1, 300.0);
    plasma::SheetModel ms{50.0, 75.0, {2 * m.pulse.period, 0.004, 0.008}};
    const double N2 = plasma::sheet_photon_number(ms, RectCavity{2.0, 1.4, 0.9}, n, 1, 600.0);
    const double inv = rel(N2, N1);
    return Outcome{res <= 1e-12 && lim0 <= 1e-10 && liminf <= 1e-10 && inv <= 1e-10,
                   fmt("max residual %.1e; |k - (2m-1)pi/Lx| at V=0 %.1e; |k - 2m pi/Lx| at V=1e15 %.1e; "
                       "rescaling s=2 changes N by %.1e",
                       res, lim0, liminf, inv)};
  });

  criterion(13, "experimental estimates", 0, [] {
    const auto r = scenario::run_scenario(scenario::load_preset("fbar"));
    const double P = r.points.at(0).record.at("P_max_W").get<double>();
    const bool fbar = P >= 1e-22 / 3 && P <= 3e-22;
    const double w = 1e9;
    const bool below = !estimates::estimate_max_photons({0.49e8, 1e-8, w, 1}).feasible;
    const bool above = estimates::estimate_max_photons({0.51e8, 1e-8, w, 1}).feasible;
    const auto m = scenario::run_scenario(scenario::load_preset("mirror"));
    const double rate = m.points.at(0).record.at("photon_rate_per_s").get<double>();
    const bool mirror = rate > 1e-5 && rate < 1e-4 && rel(rate, 4e-5) <= 0.1;
    return Outcome{fbar && below && above && mirror,
                   fmt("FBAR P_max %.3e W (within x3 of 1e-22: %s); 2Q eps = 0.98 infeasible %s, 1.02 feasible %s; "
                       "single-mirror N/T %.3e /s",
                       P, fbar ? "yes" : "NO", below ? "yes" : "NO", above ? "yes" : "NO", rate)};
  });

  criterion(14, "determinism of presets", 0, [] {
    Outcome o;
    int n = 0;
    for (const auto& name : scenario::preset_names()) {
      const auto s = scenario::load_preset(name);
      const auto a = scenario::run_scenario(s, 1), b = scenario::run_scenario(s, 4);
      const bool same = scenario::report_json(a) == scenario::report_json(b) &&
                        scenario::report_csv(a) == scenario::report_csv(b);
      if (!same) {
        o.pass = false;
        o.detail += name + " differs; ";
      }
      ++n;
    }
    o.pass = o.pass && n >= 5;
    o.detail += fmt("%d presets, serial and 4-thread runs byte-identical", n);
    return o;
  });

  const std::set<int> expect(expected.begin(), expected.end());
  std::printf("%zu of 14 criteria failed\n", g_failed.size());
  for (int id : expect)
    if (!g_failed.count(id)) std::printf("criterion %d was expected to fail but passed\n", id);
  return g_failed == expect ? 0 : 1;
}
