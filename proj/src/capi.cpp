#include "dce/dce.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <numbers>
#include <string>

#include "dce/cavity.hpp"
#include "dce/error.hpp"
#include "dce/estimates.hpp"
#include "dce/friction.hpp"
#include "dce/mirror.hpp"
#include "dce/modes.hpp"
#include "dce/moore.hpp"
#include "dce/plasma.hpp"
#include "dce/scenario.hpp"
#include "dce/units.hpp"

struct dce_moore {
  dce::moore::MooreSolution sol;
};

struct dce_scenario {
  dce::scenario::Scenario s;
};

struct dce_report {
  dce::scenario::Report r;
  std::string json;
  std::string csv;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_scratch;

struct NullArgument : std::exception {
  const char* what() const noexcept override { return "null handle or output pointer"; }
};

template <class... P>
void require(P*... p) {
  if (((p == nullptr) || ...)) throw NullArgument{};
}

dce_status map_kind(dce::ErrorKind k) {
  switch (k) {
    case dce::ErrorKind::Domain: return DCE_ERR_DOMAIN;
    case dce::ErrorKind::Precondition: return DCE_ERR_PRECONDITION;
    case dce::ErrorKind::Numeric: return DCE_ERR_NUMERIC;
    case dce::ErrorKind::Range: return DCE_ERR_RANGE;
    case dce::ErrorKind::Validation: return DCE_ERR_VALIDATION;
  }
  return DCE_ERR_INTERNAL;
}

template <class F>
dce_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return DCE_OK;
  } catch (const dce::Error& e) {
    g_last_error = e.what();
    return map_kind(e.kind());
  } catch (const NullArgument& e) {
    g_last_error = e.what();
    return DCE_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DCE_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return DCE_ERR_INTERNAL;
  }
}

dce::UnitSystem units_of(int u) {
  if (u == DCE_UNITS_SI) return dce::UnitSystem::SI();
  if (u == DCE_UNITS_NATURAL) return dce::UnitSystem::natural();
  throw dce::ValidationError("unknown unit system selector");
}

dce::Dimension dimension_of(const char* name) {
  static const struct {
    const char* name;
    dce::Dimension d;
  } table[] = {{"none", dce::dim::none},         {"length", dce::dim::length},
               {"time", dce::dim::time},         {"frequency", dce::dim::frequency},
               {"velocity", dce::dim::velocity}, {"area", dce::dim::area},
               {"mass", dce::dim::mass},         {"energy", dce::dim::energy},
               {"inverse_length", dce::dim::inverse_length}};
  for (const auto& e : table)
    if (std::strcmp(e.name, name) == 0) return e.d;
  throw dce::ValidationError(std::string("unknown dimension '") + name + "'");
}

dce::CavityGeometry geometry_of(const dce_geometry* g) {
  if (g->kind == DCE_GEOM_RECT) return dce::RectCavity{g->a, g->b, g->c};
  if (g->kind == DCE_GEOM_CYL) return dce::CircCavity{g->a, g->b};
  throw dce::ValidationError("unknown geometry kind");
}

dce::ModeIndex mode_of(dce_mode m) {
  dce::ModeIndex out;
  switch (m.pol) {
    case DCE_POL_SCALAR: out.pol = dce::Polarization::Scalar; break;
    case DCE_POL_TE: out.pol = dce::Polarization::TE; break;
    case DCE_POL_TM: out.pol = dce::Polarization::TM; break;
    default: throw dce::ValidationError("unknown polarization");
  }
  out.nx = m.nx;
  out.ny = m.ny;
  out.nz = m.nz;
  return out;
}

}  // namespace

extern "C" {

const char* dce_last_error(void) { return g_last_error.c_str(); }

const char* dce_status_string(dce_status s) {
  switch (s) {
    case DCE_OK: return "ok";
    case DCE_ERR_DOMAIN: return "domain error";
    case DCE_ERR_PRECONDITION: return "precondition violated";
    case DCE_ERR_NUMERIC: return "numerical failure";
    case DCE_ERR_RANGE: return "out of range";
    case DCE_ERR_VALIDATION: return "validation error";
    case DCE_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DCE_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* dce_version(void) { return dce::scenario::git_describe(); }

dce_status dce_to_natural(double value, const char* unit, const char* dimension, double* out) {
  return guard([&] {
    require(unit, dimension, out);
    *out = dce::to_natural(value, unit, dimension_of(dimension));
  });
}

dce_status dce_susceptibility_1d(double Omega, int units, double* im_out) {
  return guard([&] {
    require(im_out);
    *im_out = dce::mirror::susceptibility_1d(Omega, units_of(units)).imag();
  });
}

dce_status dce_susceptibility_1d_quadrature(double Omega, int units, double* im_out) {
  return guard([&] {
    require(im_out);
    *im_out = dce::mirror::susceptibility_1d_quadrature(Omega, units_of(units)).imag();
  });
}

dce_status dce_radiated_energy_and_rate(double q0, double Omega, double damping_time,
                                        double area, int units, double* energy,
                                        double* photon_rate) {
  return guard([&] {
    require(energy, photon_rate);
    const auto r = dce::mirror::radiated_energy_and_rate(q0, Omega, damping_time, area,
                                                         units_of(units));
    *energy = r.energy;
    *photon_rate = r.photon_rate;
  });
}

dce_status dce_moore_rg(int q, double eps, double L0, dce_moore** out) {
  return guard([&] {
    require(out);
    *out = nullptr;
    *out = new dce_moore{dce::moore::MooreSolution::rg(q, eps, L0)};
  });
}

dce_status dce_moore_numeric(int q, double eps, double L0, double t_max, dce_moore** out) {
  return guard([&] {
    require(out);
    *out = nullptr;
    if (q < 1) throw dce::DomainError("q must be >= 1");
    const auto profile = dce::MotionProfile::harmonic(eps, q * std::numbers::pi / L0, 0.0,
                                                      t_max + 4.0 * L0);
    *out = new dce_moore{dce::moore::MooreSolution::numeric(profile, L0, t_max)};
  });
}

void dce_moore_free(dce_moore* h) { delete h; }

dce_status dce_moore_eval(const dce_moore* h, double t, double* R, double* dR) {
  return guard([&] {
    require(h, R);
    const auto v = h->sol.evaluate(t);
    *R = v.R;
    if (dR) *dR = v.R1;
  });
}

dce_status dce_moore_residual(const dce_moore* h, double t, double* out) {
  return guard([&] {
    require(h, out);
    *out = h->sol.residual(t);
  });
}

dce_status dce_moore_energy_density(const dce_moore* h, double x, double t, double* out) {
  return guard([&] {
    require(h, out);
    *out = dce::moore::energy_density(h->sol, x, t);
  });
}

dce_status dce_moore_mirror_force(const dce_moore* h, double t, double* out) {
  return guard([&] {
    require(h, out);
    *out = dce::moore::mirror_force(h->sol, t);
  });
}

dce_status dce_mode_frequency(const dce_geometry* g, dce_mode m, double* omega) {
  return guard([&] {
    require(g, omega);
    const auto geo = geometry_of(g);
    dce::validate(geo);
    *omega = dce::mode_spectrum(geo, mode_of(m)).omega;
  });
}

dce_status dce_growth_rate(const dce_geometry* g, dce_mode m, double* rate) {
  return guard([&] {
    require(g, rate);
    *rate = dce::cavity::growth_rate(geometry_of(g), mode_of(m));
  });
}

dce_status dce_cavity_photon_number(const dce_geometry* g, dce_mode m, double eps, double Omega,
                                    double t, int method, double* N) {
  return guard([&] {
    require(g, N);
    const auto geo = geometry_of(g);
    const auto mode = mode_of(m);
    dce::validate(geo);
    dce::validate(mode, geo);
    if (method == DCE_METHOD_CLOSED_FORM) {
      *N = dce::cavity::photon_number_closed_form(geo, mode, eps, t, Omega);
      return;
    }
    const int bound = std::max({12, mode.nx, mode.ny, mode.nz});
    const auto rep = dce::cavity::find_resonances(geo, Omega, mode.pol, bound);
    const auto set = dce::cavity::resonance_closure(rep, mode);
    const auto motion = dce::MotionProfile::harmonic(eps, Omega, 0.0, t);
    if (method == DCE_METHOD_MSA) {
      const auto s = dce::cavity::msa_evolve(geo, motion, set, t);
      *N = s.photon_numbers()[std::find(set.begin(), set.end(), mode) - set.begin()];
    } else if (method == DCE_METHOD_ODE) {
      const auto modes = dce::cavity::truncation_set(geo, set);
      const auto b = dce::cavity::extract_bogoliubov(
          dce::cavity::integrate_modes(geo, motion, {mode}, modes, t));
      *N = b.photon_numbers()[std::find(modes.begin(), modes.end(), mode) - modes.begin()];
    } else {
      throw dce::ValidationError("unknown cavity method");
    }
  });
}

dce_status dce_friction_drude(double wp, double gamma, double d, double v, double rel_tol,
                              double* force, double* error_estimate) {
  return guard([&] {
    require(force);
    const dce::friction::FrictionScenario s{dce::friction::DielectricModel::drude(wp, gamma), d, v};
    const auto r = dce::friction::friction_force(s, rel_tol);
    *force = r.force;
    if (error_estimate) *error_estimate = r.error_estimate;
  });
}

dce_status dce_sheet_wavenumbers(double V, double Lx, int count, double* out) {
  return guard([&] {
    require(out);
    const auto k = dce::plasma::sheet_wavenumbers(V, Lx, count);
    std::copy(k.begin(), k.end(), out);
  });
}

dce_status dce_estimate_max_photons(double Q, double eps, double omega, double eta,
                                    dce_estimate* out) {
  return guard([&] {
    require(out);
    const auto r = dce::estimates::estimate_max_photons({Q, eps, omega, eta});
    *out = {r.N_max, r.t_max, r.P_max, r.feasible ? 1 : 0};
  });
}

dce_status dce_opo_modulation_depth(double chi1, double chi2, double E_pump, double* out) {
  return guard([&] {
    require(out);
    *out = dce::estimates::opo_modulation_depth(chi1, chi2, E_pump);
  });
}

dce_status dce_scenario_load(const char* path, dce_scenario** out) {
  return guard([&] {
    require(path, out);
    *out = nullptr;
    *out = new dce_scenario{dce::scenario::load_scenario(path)};
  });
}

dce_status dce_scenario_parse(const char* text, dce_scenario** out) {
  return guard([&] {
    require(text, out);
    *out = nullptr;
    *out = new dce_scenario{dce::scenario::parse_scenario(text)};
  });
}

dce_status dce_scenario_preset(const char* name, dce_scenario** out) {
  return guard([&] {
    require(name, out);
    *out = nullptr;
    *out = new dce_scenario{dce::scenario::load_preset(name)};
  });
}

const char* dce_preset_names(void) {
  g_scratch.clear();
  for (const auto& n : dce::scenario::preset_names()) g_scratch += n + "\n";
  return g_scratch.c_str();
}

const char* dce_scenario_verb(const dce_scenario* s) {
  return s ? dce::scenario::to_string(s->s.verb) : "";
}

size_t dce_scenario_points(const dce_scenario* s) {
  return s ? dce::scenario::point_count(s->s) : 0;
}

void dce_scenario_free(dce_scenario* s) { delete s; }

dce_status dce_scenario_run(const dce_scenario* s, int jobs, dce_report** out) {
  return guard([&] {
    require(s, out);
    *out = nullptr;
    auto rep = std::make_unique<dce_report>();
    rep->r = dce::scenario::run_scenario(s->s, jobs);
    rep->json = dce::scenario::report_json(rep->r);
    rep->csv = dce::scenario::report_csv(rep->r);
    *out = rep.release();
  });
}

size_t dce_report_points(const dce_report* r) { return r ? r->r.points.size() : 0; }
size_t dce_report_failed(const dce_report* r) { return r ? r->r.failed() : 0; }
const char* dce_report_json(const dce_report* r) { return r ? r->json.c_str() : ""; }
const char* dce_report_csv(const dce_report* r) { return r ? r->csv.c_str() : ""; }

dce_status dce_report_write(const dce_report* r, const char* dir) {
  return guard([&] {
    require(r, dir);
    dce::scenario::write_report(r->r, dir);
  });
}

void dce_report_free(dce_report* r) { delete r; }

}  // extern "C"
