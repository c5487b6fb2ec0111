#pragma once

#include <string>

#include "sos/measures/condition.hpp"
#include "sos/runner/config.hpp"
#include "sos/section/annulus.hpp"
#include "sos/section/leaf_checks.hpp"
#include "sos/section/marching.hpp"

namespace sos::runner {

struct RunReport {
  RunConfig config;

  bool condition_applicable = false;  // false for the geodesic annulus run
  measures::ConditionReport condition;

  bool section_ran = false;
  double leaf_level = 0.0;
  section::SectionLeaf leaf;
  section::SectionVerdict section;

  bool annulus_ran = false;
  section::AnnulusStats annulus;

  int exit_code = 1;
  std::string verdict_line;

  double condition_ms = 0.0;
  double section_ms = 0.0;
  double total_ms = 0.0;
};

// Executes the pipeline for one config: link orbits -> rotation numbers ->
// LP certification -> leaf extraction -> leaf verification; the geodesic
// scenario runs the Birkhoff annulus checks instead.  Deterministic given
// (config, seed).  Exit codes: 0 certified and verified, 2 refuted,
// 3 inconclusive; errors surface as exceptions and the CLI maps them to 1.
RunReport run_scenario(const RunConfig& cfg);

// The assembled positivity LP in CPLEX text form, for cross-checking with
// external solvers.  Throws ConfigError for the geodesic scenario, which
// poses no LP.
std::string lp_export_text(const RunConfig& cfg);

}  // namespace sos::runner
