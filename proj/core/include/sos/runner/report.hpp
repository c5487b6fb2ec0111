#pragma once

#include <string>
#include <vector>

#include "sos/runner/pipeline.hpp"

namespace sos::runner {

enum class ReportFormat { text, json, csv_bundle };

// "text" | "json" | "csv-bundle"; anything else throws ConfigError.
ReportFormat parse_format(const std::string& name);

// Single document with top-level keys {config, orbits, condition_iii,
// certificate, section, timing}, in that order.  Runs with identical
// (config, seed) produce byte-identical output except under "timing".
std::string report_json(const RunReport& r);

// Terminal report; the verdict line comes first.
std::string report_text(const RunReport& r);

// CSV views of the evidence: sampled boundary fields, rotation-number
// windows, and a histogram of return times.
std::string csv_b_grid(const RunReport& r);
std::string csv_rotation_windows(const RunReport& r);
std::string csv_return_times(const RunReport& r);

// Writes the chosen format under out_dir (created if missing): report.txt,
// report.json, or the three CSV files; machine formats also get the leaf
// mesh as leaf.obj when a leaf was built.  Returns the paths written.
// Throws std::runtime_error on unwritable paths.
std::vector<std::string> emit_report(const RunReport& r, const std::string& out_dir,
                                     ReportFormat format);

}  // namespace sos::runner
