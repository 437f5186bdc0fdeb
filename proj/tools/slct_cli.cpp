// Command-line front end; talks to the toolkit through the C interface only.

#include "slct/slct.h"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

namespace {

int g_log_level = 1;  // 0 error, 1 warn, 2 info, 3 debug

void init_log_level() {
  const char* env = std::getenv("SLCT_LOG");
  if (env == nullptr) return;
  const std::string v(env);
  if (v == "error") g_log_level = 0;
  else if (v == "warn") g_log_level = 1;
  else if (v == "info") g_log_level = 2;
  else if (v == "debug") g_log_level = 3;
}

void log_info(const std::string& msg) {
  if (g_log_level >= 2) std::cerr << "slct: " << msg << "\n";
}

[[noreturn]] void die(const std::string& context) {
  std::cerr << "slct: " << context << ": " << slct_last_error() << "\n";
  std::exit(1);
}

struct AnalysisHandle {
  slct_analysis* ptr = nullptr;
  ~AnalysisHandle() { slct_analysis_free(ptr); }
};

void open_analysis(const std::string& config, const std::string& preset, const std::string& mode,
                   AnalysisHandle& handle) {
  const char* mode_arg = mode.empty() ? nullptr : mode.c_str();
  if (!preset.empty()) {
    log_info("analyzing preset " + preset);
    if (slct_analyze_preset(preset.c_str(), mode_arg, &handle.ptr) != SLCT_OK)
      die("analyze " + preset);
  } else if (!config.empty()) {
    log_info("analyzing config " + config);
    if (slct_analyze_file(config.c_str(), mode_arg, &handle.ptr) != SLCT_OK)
      die("analyze " + config);
  } else {
    std::cerr << "slct: give either --preset or --config\n";
    std::exit(1);
  }
}

std::string report_destination(const AnalysisHandle& handle, const std::string& out_dir,
                               const std::string& fallback_stem) {
  char* configured = nullptr;
  if (slct_analysis_report_path(handle.ptr, &configured) != SLCT_OK) die("report path");
  std::string path(configured);
  slct_string_free(configured);
  if (path.empty()) path = fallback_stem + ".report.txt";
  if (!out_dir.empty() && std::filesystem::path(path).is_relative())
    path = (std::filesystem::path(out_dir) / path).string();
  return path;
}

}  // namespace

int main(int argc, char** argv) {
  init_log_level();

  CLI::App app{"Minimal-orbit analysis of planar N-body potentials"};
  app.require_subcommand(1);

  std::string config, preset, mode, out_dir = ".";
  int j0 = 0;
  CLI::Option* out_opt = nullptr;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config, "config file path");
    cmd->add_option("--preset", preset, "built-in preset name");
    cmd->add_option("--mode", mode, "spectral mode: ambient | com")
        ->check(CLI::IsMember({"ambient", "com", "com_reduced"}));
    out_opt = cmd->add_option("--out", out_dir, "output directory");
  };

  auto* analyze = app.add_subcommand("analyze", "run the analysis pipeline, write the report");
  add_common(analyze);

  auto* orbits = app.add_subcommand("orbits", "continue a periodic-orbit family, export CSVs");
  add_common(orbits);
  orbits->add_option("--j0", j0, "admissible frequency index (1-based)")->required();

  std::string subset;
  auto* validate = app.add_subcommand("validate", "check the built-in cases, print pass/fail");
  validate->add_option("--only", subset, "comma-separated row names to run");

  std::string expression;
  auto* euler = app.add_subcommand("euler", "evaluate a ring expression, e.g. 'S[0;(2,1),(1,3)]'");
  euler->add_option("expression", expression, "expression over I, X(m), S[...]")->required();

  CLI11_PARSE(app, argc, argv);

  if (analyze->parsed() || orbits->parsed()) {
    AnalysisHandle handle;
    open_analysis(config, preset, mode, handle);

    if (orbits->parsed()) {
      // --out wins; otherwise defer to the config's trajectory directory
      const char* traj_dir = out_opt->count() > 0 ? out_dir.c_str() : nullptr;
      char* summary = nullptr;
      if (slct_family_run(handle.ptr, j0, traj_dir, &summary) != SLCT_OK)
        die("family j0=" + std::to_string(j0));
      std::cout << summary;
      slct_string_free(summary);
      log_info(std::string("trajectories written to ") + (traj_dir ? traj_dir : "(config)"));
    }

    if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
    const std::string stem = !preset.empty()
                                 ? preset
                                 : std::filesystem::path(config).stem().string();
    const std::string report_path = report_destination(handle, out_dir, stem);
    if (slct_analysis_write_report(handle.ptr, report_path.c_str()) != SLCT_OK)
      die("write report");
    std::cout << "report written to " << report_path << "\n";

    int code = 0;
    if (slct_analysis_exit_code(handle.ptr, &code) != SLCT_OK) die("exit code");
    if (code != 0) std::cerr << "slct: a hypothesis failed; see the report\n";
    return code;
  }

  if (validate->parsed()) {
    char* table = nullptr;
    int all_pass = 0;
    if (slct_validate(subset.empty() ? nullptr : subset.c_str(), &table, &all_pass) != SLCT_OK)
      die("validate");
    std::cout << table;
    slct_string_free(table);
    return all_pass ? 0 : 1;
  }

  if (euler->parsed()) {
    char* text = nullptr;
    if (slct_euler_eval(expression.c_str(), &text) != SLCT_OK) die("euler");
    std::cout << text << "\n";
    slct_string_free(text);
    return 0;
  }

  return 1;
}
