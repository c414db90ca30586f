#include "verbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "dce/cavity.hpp"
#include "dce/error.hpp"
#include "dce/estimates.hpp"
#include "dce/friction.hpp"
#include "dce/mirror.hpp"
#include "dce/modes.hpp"
#include "dce/moore.hpp"
#include "dce/plasma.hpp"

namespace dce::scenario::detail {

using std::numbers::pi;

Params::Params(const json& j, std::string path) : j_(j), path_(std::move(path)) {
  if (!j_.is_object()) throw ValidationError(path_ + ": expected an object");
}

std::string Params::field(const std::string& key) const {
  return path_.empty() ? key : path_ + "." + key;
}

bool Params::has(const std::string& key) const { return j_.contains(key); }

const json& Params::at(const std::string& key) {
  if (!j_.contains(key)) throw ValidationError(field(key) + ": missing required parameter");
  used_.insert(key);
  return j_.at(key);
}

double Params::quantity(const std::string& key, Dimension d) {
  const json& v = at(key);
  if (v.is_number()) {
    if (d == dim::none) return v.get<double>();
    throw ValidationError(field(key) + ": dimensional quantity needs {\"value\", \"unit\"}");
  }
  if (!v.is_object() || !v.contains("value") || !v.at("value").is_number())
    throw ValidationError(field(key) + ": expected {\"value\": number, \"unit\": string}");
  for (const auto& [k, _] : v.items())
    if (k != "value" && k != "unit")
      throw ValidationError(field(key) + "." + k + ": unknown field");
  std::string unit = "natural";
  if (v.contains("unit")) {
    if (!v.at("unit").is_string()) throw ValidationError(field(key) + ".unit: expected a string");
    unit = v.at("unit").get<std::string>();
  } else if (d != dim::none) {
    throw ValidationError(field(key) + ".unit: missing (use \"natural\" for natural units)");
  }
  const double x = v.at("value").get<double>();
  if (!std::isfinite(x)) throw ValidationError(field(key) + ".value: not finite");
  try {
    return to_natural(x, unit, d);
  } catch (const ValidationError& e) {
    throw ValidationError(field(key) + ".unit: " + e.what());
  }
}

double Params::quantity_or(const std::string& key, Dimension d, double fallback) {
  return has(key) ? quantity(key, d) : fallback;
}

double Params::quantity_si(const std::string& key, Dimension d) {
  return natural_to_si(quantity(key, d), d);
}

double Params::number(const std::string& key) {
  const json& v = at(key);
  if (!v.is_number()) throw ValidationError(field(key) + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ValidationError(field(key) + ": not finite");
  return x;
}

double Params::number_or(const std::string& key, double fallback) {
  return has(key) ? number(key) : fallback;
}

int Params::integer(const std::string& key) {
  const json& v = at(key);
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (x == std::round(x) && std::abs(x) < 1e9) return static_cast<int>(x);
  }
  throw ValidationError(field(key) + ": expected an integer");
}

int Params::integer_or(const std::string& key, int fallback) {
  return has(key) ? integer(key) : fallback;
}

bool Params::boolean_or(const std::string& key, bool fallback) {
  if (!has(key)) return fallback;
  const json& v = at(key);
  if (!v.is_boolean()) throw ValidationError(field(key) + ": expected true or false");
  return v.get<bool>();
}

std::string Params::choice(const std::string& key, const std::vector<std::string>& allowed,
                           const std::string& fallback) {
  if (!has(key)) return fallback;
  const json& v = at(key);
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (std::find(allowed.begin(), allowed.end(), s) != allowed.end()) return s;
  }
  std::string list;
  for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
  throw ValidationError(field(key) + ": expected one of " + list);
}

std::vector<int> Params::int_array(const std::string& key, std::size_t size) {
  const json& v = at(key);
  if (!v.is_array() || v.size() != size)
    throw ValidationError(field(key) + ": expected an array of " + std::to_string(size) + " integers");
  std::vector<int> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) throw ValidationError(field(key) + ": expected integers");
    out.push_back(e.get<int>());
  }
  return out;
}

Params Params::object(const std::string& key) { return Params(at(key), field(key)); }

void Params::finish() const {
  for (const auto& [k, _] : j_.items())
    if (!used_.count(k)) throw ValidationError(field(k) + ": unknown parameter");
}

namespace {


void add_warnings(PointResult& out, const Warnings& w) {
  out.warnings.insert(out.warnings.end(), w.begin(), w.end());
}


// ---- estimate ----

Job decode_estimate(Params& p) {
  estimates::EstimateInput in;
  in.Q = p.number("Q");
  in.eps = p.number("eps");
  in.eta = p.number_or("eta", 1.0);
  if (p.has("omega") == p.has("drive"))
    throw ValidationError(p.field("omega") + ": give exactly one of omega (mode) or drive (= 2 omega)");
  in.omega = p.has("omega") ? p.quantity_si("omega", dim::frequency)
                            : 0.5 * p.quantity_si("drive", dim::frequency);
  p.finish();
  return [in](PointResult& out) {
    const auto r = estimates::estimate_max_photons(in, UnitSystem::SI());
    out.record["omega_rad_per_s"] = in.omega;
    out.record["two_Q_eps"] = 2.0 * in.Q * in.eps;
    out.record["t_max_s"] = r.t_max;
    out.record["N_max"] = r.N_max;
    out.record["P_max_W"] = r.P_max;
    out.record["feasible"] = r.feasible;
  };
}

// ---- mirror ----

Job decode_mirror(Params& p) {
  const double Omega = p.quantity_si("Omega", dim::frequency);
  double q0;
  if (p.has("q0") == p.has("beta"))
    throw ValidationError(p.field("q0") + ": give exactly one of q0 or beta (= q0 Omega / c)");
  if (p.has("q0")) {
    q0 = p.quantity_si("q0", dim::length);
  } else {
    q0 = p.number("beta") * si::c / Omega;
  }
  double A;
  if (p.has("A") == p.has("A_over_lambda0_sq"))
    throw ValidationError(p.field("A") + ": give exactly one of A or A_over_lambda0_sq");
  const double lambda0 = 2.0 * pi * si::c / Omega;
  A = p.has("A") ? p.quantity_si("A", dim::area)
                 : p.number("A_over_lambda0_sq") * lambda0 * lambda0;
  const double T = p.quantity_si("T", dim::time);
  const bool with_mass = p.has("M");
  const double M = with_mass ? p.quantity_si("M", dim::mass) : 0.0;
  p.finish();
  return [=](PointResult& out) {
    const auto u = UnitSystem::SI();
    const auto r = mirror::radiated_energy_and_rate(q0, Omega, T, A, u);
    out.record["beta"] = q0 * Omega / si::c;
    out.record["lambda0_m"] = lambda0;
    out.record["area_m2"] = A;
    out.record["susceptibility_im"] = mirror::susceptibility_1d(Omega, u).imag();
    out.record["energy_J"] = r.energy;
    out.record["photon_rate_per_s"] = r.photon_rate;
    out.record["photons_in_T"] = r.photon_rate * T;
    if (with_mass) {
      const auto rate = mirror::damping_rate({M, Omega, 0.0}, u);
      out.record["damping_rate_per_s"] = rate.value;
      add_warnings(out, rate.warnings);
    }
  };
}

// ---- moore ----

Job decode_moore(Params& p) {
  const int q = p.integer("q");
  const double eps = p.number("eps");
  const double L0 = p.quantity_or("L0", dim::length, 1.0);
  const bool numeric = p.choice("solver", {"rg", "numeric"}, "rg") == "numeric";
  const double t0 = p.quantity_or("t_start", dim::time, 0.0);
  const double t1 = p.quantity("t_end", dim::time);
  const int samples = p.integer_or("samples", 2001);
  const bool profile = p.has("profile_time");
  const double tp = profile ? p.quantity("profile_time", dim::time) : 0.0;
  const int profile_points = p.integer_or("profile_points", 2001);
  p.finish();
  if (samples < 2) throw ValidationError(p.field("samples") + ": need at least 2");
  if (!(t1 > t0)) throw ValidationError(p.field("t_end") + ": must exceed t_start");
  return [=](PointResult& out) {
    if (q < 1) throw DomainError("q must be >= 1");
    const double Omega = q * pi / L0;
    const double horizon = std::max(t1, tp) + 2.0 * L0 * (1.0 + eps);
    const auto sol = numeric ? moore::MooreSolution::numeric(
                                   MotionProfile::harmonic(eps, Omega, 0.0, horizon + L0), L0, horizon)
                             : moore::MooreSolution::rg(q, eps, L0);
    add_warnings(out, sol.warnings());
    out.table.columns = {"t_over_L0", "R", "L0_dR_dt", "L_over_L0"};
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double t = t0 + (t1 - t0) * i / (samples - 1);
      const auto r = sol.evaluate(t);
      out.table.rows.push_back({t / L0, r.R, L0 * r.R1, sol.length(t) / L0});
      if (t >= 0) worst = std::max(worst, sol.residual(t));
    }
    out.record["Omega"] = Omega;
    out.record["residual_max"] = worst;
    const double w0 = std::max(0.0, t1 - 2.0 * L0);
    const auto found = moore::detect_jumps(sol, w0, t1);
    const auto expect = moore::predicted_jumps(q, L0, w0, t1);
    out.record["jump_window_start"] = w0;
    out.record["jumps_detected"] = found.size();
    out.record["jumps_predicted"] = expect.size();
    if (found.size() == expect.size() && !found.empty()) {
      double off = 0.0;
      for (std::size_t i = 0; i < found.size(); ++i) off = std::max(off, std::abs(found[i] - expect[i]));
      out.record["jump_offset_max"] = off / L0;
    }
    out.record["energy_at_t_end"] = moore::intracavity_energy(sol, t1);
    out.record["mirror_force_at_t_end"] = moore::mirror_force(sol, t1);
    if (profile) {
      const auto prof = moore::energy_density_profile(sol, tp, profile_points);
      out.record["profile_time"] = tp;
      out.record["profile_peaks"] = moore::count_peaks(prof);
    }
  };
}

// ---- cavity ----

CavityGeometry decode_geometry(Params g) {
  const auto type = g.choice("type", {"rect", "cyl"}, "rect");
  CavityGeometry out;
  if (type == "rect") {
    out = RectCavity{g.quantity("Lx", dim::length), g.quantity("Ly", dim::length),
                     g.quantity("Lz", dim::length)};
  } else {
    out = CircCavity{g.quantity("R", dim::length), g.quantity("Lz", dim::length)};
  }
  g.finish();
  return out;
}

ModeIndex decode_mode(Params m) {
  ModeIndex out;
  const auto pol = m.choice("pol", {"scalar", "TE", "TM"}, "scalar");
  out.pol = pol == "TE" ? Polarization::TE : pol == "TM" ? Polarization::TM : Polarization::Scalar;
  const auto n = m.int_array("n", 3);
  out.nx = n[0];
  out.ny = n[1];
  out.nz = n[2];
  m.finish();
  return out;
}

json mode_list(const std::vector<ModeIndex>& modes) {
  json a = json::array();
  for (const auto& m : modes) a.push_back(to_string(m));
  return a;
}

Job decode_cavity(Params& p) {
  const auto g = decode_geometry(p.object("geometry"));
  const auto mode = decode_mode(p.object("mode"));
  const double eps = p.number("eps");
  const bool drive_given = p.has("Omega");
  const double Omega_in = drive_given ? p.quantity("Omega", dim::frequency) : 0.0;
  const double t = p.quantity("t", dim::time);
  const auto method = p.choice("method", {"msa", "ode", "closed_form"}, "msa");
  const int bound = p.integer_or("bound", 8);
  const int extra = p.integer_or("extra", 2);
  const int fit_samples = p.integer_or("fit_samples", 0);
  p.finish();
  return [=](PointResult& out) {
    validate(g);
    validate(mode, g);
    const auto spec = mode_spectrum(g, mode);
    const double Omega = drive_given ? Omega_in : 2.0 * spec.omega;
    const auto rep = cavity::find_resonances(g, Omega, mode.pol, std::max({bound, mode.nx, mode.ny, mode.nz}));
    add_warnings(out, rep.warnings);
    const bool resonant = std::find(rep.resonant.begin(), rep.resonant.end(), mode) != rep.resonant.end();
    const auto closure = cavity::resonance_closure(rep, mode);
    out.record["mode"] = to_string(mode);
    out.record["omega"] = spec.omega;
    out.record["Omega"] = Omega;
    out.record["classification"] = cavity::to_string(rep.cls);
    out.record["mode_resonant"] = resonant;
    out.record["mode_coupled"] = closure.size() > 1;
    out.record["coupled_set"] = mode_list(closure);
    if (resonant && closure.size() == 1) out.record["growth_rate"] = cavity::growth_rate(g, mode);

    const auto motion = MotionProfile::harmonic(eps, Omega, 0.0, t);
    add_warnings(out, motion.check_perturbative());
    const std::size_t self =
        std::find(closure.begin(), closure.end(), mode) - closure.begin();
    const auto M = cavity::msa_matrix(g, closure, Omega);
    double mu = 0.0;
    if (M.size() > 0) {
      const Eigen::EigenSolver<Eigen::MatrixXd> es(M);
      mu = es.eigenvalues().real().maxCoeff();
    }
    out.record["msa_exponent_per_eps"] = 2.0 * mu;

    double N = 0.0;
    if (method == "closed_form") {
      N = cavity::photon_number_closed_form(g, mode, eps, t, Omega, bound);
    } else if (method == "msa") {
      const auto s = cavity::msa_evolve(g, motion, closure, t);
      add_warnings(out, s.warnings);
      N = s.photon_numbers()[self];
    } else {
      const auto modes = cavity::truncation_set(g, closure, extra);
      const auto st = cavity::integrate_modes(g, motion, {mode}, modes, t);
      const auto b = cavity::extract_bogoliubov(st);
      const auto Ns = b.photon_numbers();
      N = Ns[std::find(modes.begin(), modes.end(), mode) - modes.begin()];
      out.record["truncation_size"] = modes.size();
      out.record["unitarity_defect"] = b.unitarity_defect();
    }
    out.record["photon_number"] = N;

    if (fit_samples > 1) {
      out.table.columns = {"t", "eps_t", "N"};
      std::vector<double> ts, Ns;
      for (int i = 1; i <= fit_samples; ++i) {
        const double ti = t * i / fit_samples;
        const auto s = cavity::msa_evolve(g, motion, closure, ti);
        ts.push_back(ti);
        Ns.push_back(s.photon_numbers()[self]);
        out.table.rows.push_back({ti, eps * ti, Ns.back()});
      }
      if (eps > 0)
        out.record["fitted_exponent_per_eps"] = cavity::fit_growth_exponent(ts, Ns, 0.25 * t) / eps;
    }
  };
}

// ---- friction ----

friction::DielectricModel decode_model(Params m) {
  const auto type = m.choice("type", {"drude", "lorentz", "constant"}, "drude");
  friction::DielectricModel out = friction::DielectricModel::constant(1.0);
  if (type == "drude") {
    out = friction::DielectricModel::drude(m.quantity_si("wp", dim::frequency),
                                           m.quantity_si("gamma", dim::frequency));
  } else if (type == "lorentz") {
    const double w0 = m.quantity_si("w0", dim::frequency);
    const double wp = m.quantity_si("wp", dim::frequency);
    out = friction::DielectricModel::lorentz(w0, wp, m.quantity_si("gamma", dim::frequency));
  } else {
    out = friction::DielectricModel::constant({m.number("re"), m.number_or("im", 0.0)});
  }
  m.finish();
  return out;
}

Job decode_friction(Params& p) {
  friction::FrictionScenario s{decode_model(p.object("model")), 0.0, 0.0};
  s.d = p.quantity_si("d", dim::length);
  s.v = p.quantity_si("v", dim::velocity);
  const double rel_tol = p.number_or("rel_tol", 1e-6);
  const int mc = p.integer_or("mc_samples", 0);
  p.finish();
  return [=](PointResult& out) {
    s.model.check_passive();
    const auto r = friction::friction_force(s, rel_tol);
    add_warnings(out, r.warnings);
    out.record["force_N_per_m2"] = r.force;
    out.record["error_estimate"] = r.error_estimate;
    out.record["k_cut_per_m"] = r.k_cut;
    out.record["non_retarded_ok"] = r.non_retarded_ok;
    if (mc > 0) {
      const auto m = friction::friction_force_monte_carlo(s, static_cast<std::size_t>(mc));
      out.record["mc_force_N_per_m2"] = m.force;
      out.record["mc_std_error"] = m.std_error;
    }
  };
}

// ---- plasma ----

Job decode_plasma(Params& p) {
  plasma::SheetModel m;
  m.V0 = p.quantity("V0", dim::inverse_length);
  m.Vmax = p.quantity("Vmax", dim::inverse_length);
  const RectCavity g{p.quantity("Lx", dim::length), p.quantity("Ly", dim::length),
                     p.quantity("Lz", dim::length)};
  const auto n = p.int_array("mode", 3);
  const ModeIndex mode{Polarization::TE, n[0], n[1], n[2]};
  const int j = p.integer_or("harmonic", 1);
  Params pulse = p.object("pulse");
  const bool tune = pulse.boolean_or("tune", false);
  const int given = int(pulse.has("period")) + int(pulse.has("drive")) + int(tune);
  if (given != 1)
    throw ValidationError(pulse.field("period") + ": give exactly one of period, drive or tune");
  double period = 0.0;
  if (pulse.has("period")) period = pulse.quantity("period", dim::time);
  if (pulse.has("drive")) period = 2.0 * pi / pulse.quantity("drive", dim::frequency);
  m.pulse.tau_e = pulse.quantity("tau_e", dim::time);
  m.pulse.tau_r = pulse.quantity("tau_r", dim::time);
  pulse.finish();
  if (p.has("t") == p.has("Q")) throw ValidationError(p.field("t") + ": give exactly one of t or Q");
  const bool by_Q = p.has("Q");
  const double t_in = by_Q ? p.number("Q") : p.quantity("t", dim::time);
  const int bound = p.integer_or("bound", 6);
  p.finish();
  return [=](PointResult& out) mutable {
    const double w = plasma::sheet_frequency(m, g, mode);
    m.pulse.period = tune ? 2.0 * pi * j / (2.0 * w) : period;
    const double Omega = m.pulse.harmonic_frequency(j);
    const double t = by_Q ? t_in / w : t_in;
    const auto mod = plasma::modulation_depth(m, g.Lx, mode.nx);
    add_warnings(out, mod.warnings);
    const auto rep = plasma::resonance_check_sheet(m, g, j, std::max({bound, n[0], n[1], n[2]}));
    add_warnings(out, rep.warnings);
    const double to_hz = si::c / (2.0 * pi);
    out.record["k0_per_m"] = mod.k0;
    out.record["eps_n"] = mod.eps;
    out.record["mode_frequency_Hz"] = w * to_hz;
    out.record["drive_frequency_Hz"] = Omega * to_hz;
    out.record["f_j"] = m.pulse.harmonic_amplitude(j);
    out.record["classification"] = plasma::to_string(rep.cls);
    out.record["t_s"] = t / si::c;
    try {
      out.record["photon_number"] = plasma::sheet_photon_number(m, g, mode, j, t, bound);
    } catch (const DomainError& e) {
      out.record["photon_number"] = nullptr;
      out.warnings.push_back(e.what());
    }
  };
}

}  // namespace

Job decode_job(Verb verb, const json& params) {
  Params p(params, "params");
  switch (verb) {
    case Verb::Estimate: return decode_estimate(p);
    case Verb::Mirror: return decode_mirror(p);
    case Verb::Moore: return decode_moore(p);
    case Verb::Cavity: return decode_cavity(p);
    case Verb::Friction: return decode_friction(p);
    case Verb::Plasma: return decode_plasma(p);
  }
  throw ValidationError("unknown verb");
}

}  // namespace dce::scenario::detail
