// Command-line front end. Talks to the library only through the C API.
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "dce/dce.h"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitAllFailed = 3;

int fail(dce_status s) {
  std::fprintf(stderr, "dce: %s: %s\n", dce_status_string(s), dce_last_error());
  return s == DCE_ERR_VALIDATION || s == DCE_ERR_INVALID_ARGUMENT ? kExitValidation : 1;
}

struct RunOptions {
  std::string scenario;
  std::string preset;
  std::string out = ".";
  int jobs = 1;
};

int run(const std::string& verb, const RunOptions& o) {
  dce_scenario* s = nullptr;
  const dce_status st = o.preset.empty() ? dce_scenario_load(o.scenario.c_str(), &s)
                                         : dce_scenario_preset(o.preset.c_str(), &s);
  if (st != DCE_OK) return fail(st);
  if (verb != dce_scenario_verb(s)) {
    std::fprintf(stderr, "dce: validation error: scenario verb is '%s', not '%s'\n",
                 dce_scenario_verb(s), verb.c_str());
    dce_scenario_free(s);
    return kExitValidation;
  }
  dce_report* r = nullptr;
  dce_status rs = dce_scenario_run(s, o.jobs, &r);
  dce_scenario_free(s);
  if (rs != DCE_OK) return fail(rs);
  rs = dce_report_write(r, o.out.c_str());
  if (rs != DCE_OK) {
    dce_report_free(r);
    return fail(rs);
  }
  const size_t n = dce_report_points(r), bad = dce_report_failed(r);
  std::printf("%zu point(s), %zu failed, output in %s\n", n, bad, o.out.c_str());
  dce_report_free(r);
  return n > 0 && bad == n ? kExitAllFailed : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dce-lab: dynamical Casimir effect and quantum friction calculations"};
  app.require_subcommand(1);
  RunOptions opts;
  std::string chosen;
  for (const char* verb : {"mirror", "moore", "cavity", "friction", "plasma", "estimate"}) {
    auto* sub = app.add_subcommand(verb, std::string("run a '") + verb + "' scenario");
    auto* file = sub->add_option("--scenario", opts.scenario, "scenario file (JSON)")
                     ->check(CLI::ExistingFile);
    auto* preset = sub->add_option("--preset", opts.preset, "shipped preset name");
    file->excludes(preset);
    sub->add_option("--out", opts.out, "output directory")->capture_default_str();
    sub->add_option("--jobs", opts.jobs, "parallel sweep workers")
        ->check(CLI::Range(1, 1024))
        ->capture_default_str();
    sub->callback([&chosen, verb] { chosen = verb; });
  }
  auto* list = app.add_subcommand("presets", "list shipped presets");
  list->callback([&chosen] { chosen = "presets"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }
  if (chosen == "presets") {
    std::fputs(dce_preset_names(), stdout);
    return 0;
  }
  if (opts.scenario.empty() && opts.preset.empty()) {
    std::fprintf(stderr, "dce: validation error: give --scenario FILE or --preset NAME\n");
    return kExitValidation;
  }
  return run(chosen, opts);
}
