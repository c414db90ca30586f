// Exercises the shared library through its C header only.
#include <cmath>
#include <cstring>
#include <string>
#include <thread>

#include "doctest.h"
#include "dce/dce.h"

TEST_CASE("status strings and error reporting") {
  CHECK(std::string(dce_status_string(DCE_OK)) == "ok");
  double out = 0;
  CHECK(dce_to_natural(1.0, "cm", "length", &out) == DCE_OK);
  CHECK(out == doctest::Approx(0.01));
  CHECK(std::string(dce_last_error()).empty());
  CHECK(dce_to_natural(1.0, "parsec", "length", &out) == DCE_ERR_VALIDATION);
  CHECK(std::strlen(dce_last_error()) > 0);
  CHECK(dce_to_natural(1.0, "cm", "length", nullptr) == DCE_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(dce_version()) > 0);
}

TEST_CASE("errors are per thread") {
  double out = 0;
  CHECK(dce_opo_modulation_depth(-2.0, 1.0, 1.0, &out) == DCE_ERR_DOMAIN);
  std::string other;
  std::thread([&] { other = dce_last_error(); }).join();
  CHECK(other.empty());
  CHECK(std::strlen(dce_last_error()) > 0);
}

TEST_CASE("mirror functions") {
  double a = 0, b = 0;
  REQUIRE(dce_susceptibility_1d(3.0, DCE_UNITS_NATURAL, &a) == DCE_OK);
  REQUIRE(dce_susceptibility_1d_quadrature(3.0, DCE_UNITS_NATURAL, &b) == DCE_OK);
  CHECK(a == doctest::Approx(27.0 / (6 * M_PI)));
  CHECK(b == doctest::Approx(a).epsilon(1e-9));
  double E = 0, rate = 0;
  CHECK(dce_radiated_energy_and_rate(1e-3, 1.0, 1.0, 1.0, DCE_UNITS_NATURAL, &E, &rate) ==
        DCE_ERR_PRECONDITION);
  CHECK(dce_susceptibility_1d(1.0, 7, &a) == DCE_ERR_VALIDATION);
}

TEST_CASE("Moore handles") {
  dce_moore* rg = nullptr;
  REQUIRE(dce_moore_rg(4, 0.01, 1.0, &rg) == DCE_OK);
  double R = 0, dR = 0, f = 0;
  CHECK(dce_moore_eval(rg, 5.0, &R, &dR) == DCE_OK);
  CHECK(dR > 0);
  CHECK(dce_moore_mirror_force(rg, -1.0, &f) == DCE_OK);
  CHECK(f == -M_PI / 24);
  CHECK(dce_moore_energy_density(rg, 3.0, 5.0, &f) == DCE_ERR_RANGE);
  dce_moore_free(rg);

  dce_moore* nu = nullptr;
  REQUIRE(dce_moore_numeric(2, 0.005, 1.0, 10.0, &nu) == DCE_OK);
  double res = 1;
  CHECK(dce_moore_residual(nu, 5.0, &res) == DCE_OK);
  CHECK(res < 1e-10);
  CHECK(dce_moore_eval(nu, 20.0, &R, nullptr) == DCE_ERR_RANGE);
  dce_moore_free(nu);

  CHECK(dce_moore_rg(2, 0.5, 1.0, &rg) == DCE_ERR_PRECONDITION);
  CHECK(rg == nullptr);
  CHECK(dce_moore_eval(nullptr, 1.0, &R, &dR) == DCE_ERR_INVALID_ARGUMENT);
}

TEST_CASE("cavity functions") {
  const dce_geometry cube{DCE_GEOM_RECT, 1, 1, 1};
  const dce_geometry box{DCE_GEOM_RECT, 1, 1.3, 0.7};
  const dce_mode s111{DCE_POL_SCALAR, 1, 1, 1};
  double w = 0, N = 0, N2 = 0;
  REQUIRE(dce_mode_frequency(&cube, s111, &w) == DCE_OK);
  CHECK(w == doctest::Approx(M_PI * std::sqrt(3.0)));
  CHECK(dce_cavity_photon_number(&cube, s111, 1e-3, 2 * w, 100.0, DCE_METHOD_CLOSED_FORM, &N) == DCE_ERR_DOMAIN);
  CHECK(dce_cavity_photon_number(&cube, s111, 1e-3, 2 * w, 100.0, DCE_METHOD_MSA, &N) == DCE_OK);
  CHECK(N > 0);
  REQUIRE(dce_mode_frequency(&box, s111, &w) == DCE_OK);
  CHECK(dce_cavity_photon_number(&box, s111, 1e-3, 2 * w, 100.0, DCE_METHOD_CLOSED_FORM, &N) == DCE_OK);
  CHECK(dce_cavity_photon_number(&box, s111, 1e-3, 2 * w, 100.0, DCE_METHOD_ODE, &N2) == DCE_OK);
  CHECK(N2 == doctest::Approx(N).epsilon(0.05));
  const dce_geometry cyl{DCE_GEOM_CYL, 1, 1, 0};
  double rate = 0;
  CHECK(dce_growth_rate(&cyl, dce_mode{DCE_POL_TM, 0, 1, 0}, &rate) == DCE_OK);
  CHECK(2 * rate == doctest::Approx(4.81).epsilon(1e-3));
  CHECK(dce_mode_frequency(&cube, dce_mode{9, 1, 1, 1}, &w) == DCE_ERR_VALIDATION);
}

TEST_CASE("friction, plasma and estimates") {
  const double ev = 1.602176634e-19 / 1.054571817e-34;
  double F = 0, err = 0;
  REQUIRE(dce_friction_drude(9 * ev, 0.03 * ev, 1e-8, 1.0, 1e-6, &F, &err) == DCE_OK);
  CHECK(F == doctest::Approx(7.4415e-26).epsilon(1e-4));
  CHECK(dce_friction_drude(9 * ev, 0.03 * ev, -1.0, 1.0, 1e-6, &F, &err) == DCE_ERR_DOMAIN);

  double k[3];
  REQUIRE(dce_sheet_wavenumbers(0.0, 1.0, 3, k) == DCE_OK);
  CHECK(k[2] == doctest::Approx(5 * M_PI));

  dce_estimate e{};
  REQUIRE(dce_estimate_max_photons(1e8, 1e-8, 2 * M_PI * 1.5e9, 1.0, &e) == DCE_OK);
  CHECK(e.feasible == 1);
  CHECK(e.P_max > 3e-23);
  double d = 0;
  CHECK(dce_opo_modulation_depth(1.25, 4.5e-3, 1.0, &d) == DCE_OK);
  CHECK(d == doctest::Approx(1e-3));
}

TEST_CASE("scenario handles") {
  CHECK(std::string(dce_preset_names()).find("fbar\n") != std::string::npos);
  dce_scenario* s = nullptr;
  REQUIRE(dce_scenario_preset("fbar", &s) == DCE_OK);
  CHECK(std::string(dce_scenario_verb(s)) == "estimate");
  CHECK(dce_scenario_points(s) == 1);
  dce_report* r = nullptr;
  REQUIRE(dce_scenario_run(s, 2, &r) == DCE_OK);
  CHECK(dce_report_points(r) == 1);
  CHECK(dce_report_failed(r) == 0);
  const std::string json = dce_report_json(r);
  CHECK(json.find("\"P_max_W\"") != std::string::npos);
  CHECK(json.find("\"git_describe\"") != std::string::npos);
  CHECK(std::string(dce_report_csv(r)).rfind("point,status", 0) == 0);
  dce_report_free(r);
  dce_scenario_free(s);

  CHECK(dce_scenario_parse("{\"verb\": \"estimate\", \"params\": {}}", &s) == DCE_ERR_VALIDATION);
  CHECK(s == nullptr);
  CHECK(dce_scenario_preset("missing", &s) == DCE_ERR_VALIDATION);
  CHECK(dce_scenario_load("/nonexistent/file.json", &s) == DCE_ERR_VALIDATION);
}
