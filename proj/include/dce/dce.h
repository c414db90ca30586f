#ifndef DCE_DCE_H
#define DCE_DCE_H

#include <stddef.h>

#if defined(DCE_BUILDING_LIBRARY)
#define DCE_API __attribute__((visibility("default")))
#else
#define DCE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dce_status {
  DCE_OK = 0,
  DCE_ERR_DOMAIN = 1,
  DCE_ERR_PRECONDITION = 2,
  DCE_ERR_NUMERIC = 3,
  DCE_ERR_RANGE = 4,
  DCE_ERR_VALIDATION = 5,
  DCE_ERR_INVALID_ARGUMENT = 6, /* null handle or output pointer */
  DCE_ERR_INTERNAL = 7
} dce_status;

/* Message of the last failing call on this thread ("" after success). */
DCE_API const char* dce_last_error(void);
DCE_API const char* dce_status_string(dce_status s);
DCE_API const char* dce_version(void);

/* Unit system selector: natural (hbar = c = 1, metre base) or SI. */
enum { DCE_UNITS_NATURAL = 0, DCE_UNITS_SI = 1 };

/* dimension: "length", "time", "frequency", "velocity", "area", "mass",
   "energy", "inverse_length" or "none". */
DCE_API dce_status dce_to_natural(double value, const char* unit, const char* dimension,
                                  double* out);

/* ---- mirror ---- */
DCE_API dce_status dce_susceptibility_1d(double Omega, int units, double* im_out);
DCE_API dce_status dce_susceptibility_1d_quadrature(double Omega, int units, double* im_out);
DCE_API dce_status dce_radiated_energy_and_rate(double q0, double Omega, double damping_time,
                                                double area, int units, double* energy,
                                                double* photon_rate);

/* ---- 1D cavity (Moore's function) ---- */
typedef struct dce_moore dce_moore;

/* L(t) = L0 (1 + eps sin(q pi t / L0)). */
DCE_API dce_status dce_moore_rg(int q, double eps, double L0, dce_moore** out);
DCE_API dce_status dce_moore_numeric(int q, double eps, double L0, double t_max, dce_moore** out);
DCE_API void dce_moore_free(dce_moore* h);
DCE_API dce_status dce_moore_eval(const dce_moore* h, double t, double* R, double* dR);
DCE_API dce_status dce_moore_residual(const dce_moore* h, double t, double* out);
DCE_API dce_status dce_moore_energy_density(const dce_moore* h, double x, double t, double* out);
DCE_API dce_status dce_moore_mirror_force(const dce_moore* h, double t, double* out);

/* ---- 3D cavities ---- */
enum { DCE_POL_SCALAR = 0, DCE_POL_TE = 1, DCE_POL_TM = 2 };
enum { DCE_GEOM_RECT = 0, DCE_GEOM_CYL = 1 };
enum { DCE_METHOD_CLOSED_FORM = 0, DCE_METHOD_MSA = 1, DCE_METHOD_ODE = 2 };

typedef struct dce_mode {
  int pol;
  int nx, ny, nz; /* cylinder: (m, n, p) */
} dce_mode;

typedef struct dce_geometry {
  int kind;
  double a, b, c; /* rect: Lx, Ly, Lz; cyl: R, Lz (c unused) */
} dce_geometry;

DCE_API dce_status dce_mode_frequency(const dce_geometry* g, dce_mode m, double* omega);
DCE_API dce_status dce_growth_rate(const dce_geometry* g, dce_mode m, double* rate);
/* Photon number in mode m after time t of driving at Omega (natural units). */
DCE_API dce_status dce_cavity_photon_number(const dce_geometry* g, dce_mode m, double eps,
                                            double Omega, double t, int method, double* N);

/* ---- quantum friction (SI) ---- */
DCE_API dce_status dce_friction_drude(double wp, double gamma, double d, double v, double rel_tol,
                                      double* force, double* error_estimate);

/* ---- plasma sheet ---- */
DCE_API dce_status dce_sheet_wavenumbers(double V, double Lx, int count, double* out);

/* ---- estimates (SI) ---- */
typedef struct dce_estimate {
  double N_max;
  double t_max;
  double P_max;
  int feasible;
} dce_estimate;

DCE_API dce_status dce_estimate_max_photons(double Q, double eps, double omega, double eta,
                                            dce_estimate* out);
DCE_API dce_status dce_opo_modulation_depth(double chi1, double chi2, double E_pump,
                                            double* out);

/* ---- scenarios ---- */
typedef struct dce_scenario dce_scenario;
typedef struct dce_report dce_report;

DCE_API dce_status dce_scenario_load(const char* path, dce_scenario** out);
DCE_API dce_status dce_scenario_parse(const char* text, dce_scenario** out);
DCE_API dce_status dce_scenario_preset(const char* name, dce_scenario** out);
/* Newline-separated preset names; valid until the next call on this thread. */
DCE_API const char* dce_preset_names(void);
DCE_API const char* dce_scenario_verb(const dce_scenario* s);
DCE_API size_t dce_scenario_points(const dce_scenario* s);
DCE_API void dce_scenario_free(dce_scenario* s);

DCE_API dce_status dce_scenario_run(const dce_scenario* s, int jobs, dce_report** out);
DCE_API size_t dce_report_points(const dce_report* r);
DCE_API size_t dce_report_failed(const dce_report* r);
/* Serialized outputs, owned by the report. */
DCE_API const char* dce_report_json(const dce_report* r);
DCE_API const char* dce_report_csv(const dce_report* r);
/* Writes <name>.json / <name>.csv into dir atomically. */
DCE_API dce_status dce_report_write(const dce_report* r, const char* dir);
DCE_API void dce_report_free(dce_report* r);

#ifdef __cplusplus
}
#endif

#endif
