#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sos/cohomology/dual_class.hpp"
#include "sos/common/types.hpp"
#include "sos/geometry/scenario.hpp"

namespace sos::runner {

enum class ScenarioKind { t3_linear, solid_torus, solid_torus_linear, hopf_s3, geodesic_s2 };
enum class ClassKind { interior, tube, fibration, annulus };

const char* to_string(ScenarioKind k);
const char* to_string(ClassKind k);

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::t3_linear;
  Vec3 omega = Vec3::Zero();          // t3_linear
  std::vector<double> f_coeffs;       // solid_torus
  Mat2 a2 = Mat2::Zero();             // solid_torus_linear
  Cplx kappa = 0.0;                   // solid_torus_linear
  double period = kTwoPi;             // both solid torus kinds
  double rho_max = 0.7;               // hopf_s3
};

struct ClassConfig {
  ClassKind kind = ClassKind::interior;
  Vec3 pairings = Vec3::Zero();  // interior: pairings with the coordinate loops
  int eps = 1;                   // tube / fibration meridian sign
};

struct NumericsConfig {
  int grid_n = 8;                    // cells along angular axes of the LP grid
  int grid_r = 6;                    // radial cells of the LP grid
  double delta_slack = 1e-8;         // invariance slack of the LP
  std::uint64_t seed = 20260816;     // one generator seeds all sampling
  int return_samples = 1000;
  int annulus_samples = 10000;
  long rotation_horizon = 4096;      // dyadic horizon multiple for rotation numbers
  double return_tol = 1e-9;          // ODE tolerance for return-time sampling
  int leaf_grid[3] = {-1, -1, -1};   // projection lattice cells; -1 = chart default
};

// Command line knobs applied to the document before it is canonicalized, so
// the recorded provenance always describes the run that actually happened.
struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> grid_n;
};

// A validated run description.  `canonical` is the effective document
// serialized once; reports embed it verbatim and `hash` (FNV-1a 64 of the
// canonical bytes) identifies it.
struct RunConfig {
  int version = 1;
  std::string name;
  ScenarioConfig scenario;
  ClassConfig cls;
  NumericsConfig numerics;
  std::string canonical;
  std::string hash;

  std::unique_ptr<geometry::Scenario> make_scenario() const;
  cohomology::DualClass make_class() const;  // throws ConfigError for annulus runs
};

// Parses and validates a config document.  Violations throw ConfigError
// naming the source, the line (for syntax errors) or the field path (for
// schema errors), and what was expected.
RunConfig parse_config(const std::string& json_text, const std::string& source = "config",
                       const ConfigOverrides& ov = {});
RunConfig load_config(const std::string& path, const ConfigOverrides& ov = {});

}  // namespace sos::runner
