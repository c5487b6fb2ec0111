// sos-scout: certify a cohomology class as a global-section direction and
// build the section leaf, from a single JSON run description.
//
//   sos-scout run configs/solid_torus_meridian.json --out results --format json
//
// Exit codes: 0 certified and verified, 1 error, 2 refuted, 3 inconclusive.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sos/runner/config.hpp"
#include "sos/runner/pipeline.hpp"
#include "sos/runner/report.hpp"

namespace {

int run_command(const std::string& config_path, const std::string& out_dir,
                const std::string& format_name, const sos::runner::ConfigOverrides& ov,
                const std::string& lp_path) {
  using namespace sos::runner;
  const ReportFormat format = parse_format(format_name);
  if (format == ReportFormat::csv_bundle && out_dir.empty())
    throw sos::ConfigError("--format csv-bundle needs --out <dir>");

  const RunConfig cfg = load_config(config_path, ov);

  if (!lp_path.empty()) {
    const auto parent = std::filesystem::path(lp_path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream lp_out(lp_path, std::ios::binary);
    if (!lp_out) throw std::runtime_error("cannot write " + lp_path);
    lp_out << lp_export_text(cfg);
  }

  const RunReport rep = run_scenario(cfg);

  if (out_dir.empty()) {
    std::cout << (format == ReportFormat::json ? report_json(rep) : report_text(rep));
  } else {
    const auto files = emit_report(rep, out_dir, format);
    std::cout << rep.verdict_line << "\n";
    for (const auto& f : files) std::cout << "wrote " << f << "\n";
  }
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"surface-of-section scout: LP-certified global sections for 3D flows"};
  app.require_subcommand(1);
  app.footer("Environment: SOS_SCOUT_THREADS caps worker parallelism (1 disables it).");

  std::string config_path, out_dir, format_name = "text", lp_path;
  std::uint64_t seed = 0;
  int grid_n = 0;

  auto* run = app.add_subcommand("run", "execute one scenario config");
  run->add_option("config", config_path, "JSON run description")->required();
  run->add_option("--out", out_dir, "directory for report files");
  run->add_option("--format", format_name, "text | json | csv-bundle")
      ->default_str("text");
  auto* seed_opt = run->add_option("--seed", seed, "override numerics.seed");
  auto* grid_opt = run->add_option("--grid", grid_n, "override numerics.grid_n");
  run->add_option("--lp-export", lp_path, "write the assembled LP in CPLEX text form");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  sos::runner::ConfigOverrides ov;
  if (*seed_opt) ov.seed = seed;
  if (*grid_opt) ov.grid_n = grid_n;

  try {
    return run_command(config_path, out_dir, format_name, ov, lp_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
