#include "sos/runner/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace sos::runner {

namespace {

using json = nlohmann::ordered_json;

const char* verdict_name(measures::Certificate::Verdict v) {
  switch (v) {
    case measures::Certificate::Verdict::certified: return "certified";
    case measures::Certificate::Verdict::refuted: return "refuted";
    case measures::Certificate::Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

json orbit_rows(const RunReport& r) {
  json rows = json::array();
  if (!r.condition_applicable) return rows;
  for (const auto& cc : r.condition.components) {
    json row;
    row["component"] = cc.component;
    row["period"] = cc.period;
    row["class"] = cc.orbit_class;
    row["multipliers"] = {{cc.multipliers[0].real(), cc.multipliers[0].imag()},
                          {cc.multipliers[1].real(), cc.multipliers[1].imag()}};
    row["rho_theta"] = cc.rho_theta;
    row["rho_theta_error"] = cc.rho_theta_error;
    row["rho_y"] = cc.rho_y;
    row["positive"] = cc.positive;
    row["generic_obstruction"] = cc.generic_obstruction;
    rows.push_back(std::move(row));
  }
  return rows;
}

json return_stats_json(const section::ReturnStats& st) {
  json j;
  j["samples"] = st.samples;
  j["misses"] = st.misses;
  j["tau_min"] = st.tau_min;
  j["tau_mean"] = st.tau_mean;
  j["tau_max"] = st.tau_max;
  j["tau_forward_max"] = st.tau_forward_max;
  j["tau_back_max"] = st.tau_back_max;
  return j;
}

json section_json(const RunReport& r) {
  json s;
  if (r.annulus_ran) {
    s["kind"] = "annulus";
    json a;
    a["samples"] = r.annulus.samples;
    a["misses"] = r.annulus.misses;
    a["tau_min"] = r.annulus.tau_min;
    a["tau_mean"] = r.annulus.tau_mean;
    a["tau_max"] = r.annulus.tau_max;
    a["min_margin"] = r.annulus.min_margin;
    s["stats"] = std::move(a);
    s["pass"] = r.exit_code == 0;
    return s;
  }
  if (!r.section_ran) {
    s["kind"] = "none";
    return s;
  }
  s["kind"] = "leaf";
  s["level"] = r.leaf_level;
  json mesh;
  mesh["vertices"] = r.leaf.vertices.size();
  mesh["faces"] = r.leaf.faces.size();
  mesh["components"] = r.leaf.components;
  mesh["euler"] = r.leaf.euler;
  mesh["genus"] = r.leaf.genus;
  mesh["boundary_count"] = r.leaf.n_boundary;
  json circles = json::array();
  for (const auto& b : r.leaf.boundary)
    circles.push_back({{"n1", b.n1}, {"n2", b.n2}, {"on_link", b.on_link}});
  for (const auto& b : r.leaf.wall)
    circles.push_back({{"n1", b.n1}, {"n2", b.n2}, {"on_link", b.on_link}});
  mesh["circles"] = std::move(circles);
  s["leaf"] = std::move(mesh);

  json tv;
  tv["min_margin"] = r.section.transversality.min_margin;
  tv["faces"] = r.section.transversality.faces;
  tv["below_floor"] = r.section.transversality.below;
  tv["pass"] = r.section.transversality.pass;
  s["transversality"] = std::move(tv);

  json degrees = json::array();
  for (const auto& row : r.section.degrees)
    degrees.push_back({{"loop", row.label},
                       {"degree", row.degree},
                       {"pairing", row.pairing},
                       {"match", row.match}});
  s["degrees"] = std::move(degrees);
  s["winding_ok"] = r.section.winding_ok;
  s["degree_ok"] = r.section.degree_ok;
  s["surjective"] = r.section.surjective;
  s["returns"] = return_stats_json(r.section.returns);
  s["pass"] = r.section.pass;
  s["notes"] = r.section.notes;
  return s;
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void histogram_csv(std::string& out, const std::vector<double>& taus) {
  if (taus.empty()) return;
  const auto [lo_it, hi_it] = std::minmax_element(taus.begin(), taus.end());
  const double lo = *lo_it, hi = *hi_it;
  const int bins = hi > lo ? 64 : 1;
  const double width = hi > lo ? (hi - lo) / bins : 1.0;
  std::vector<long> count(bins, 0);
  for (double t : taus) {
    int b = static_cast<int>((t - lo) / width);
    if (b >= bins) b = bins - 1;
    ++count[b];
  }
  for (int b = 0; b < bins; ++b) {
    out += g17(lo + b * width);
    out += ',';
    out += g17(lo + (b + 1) * width);
    out += ',';
    out += std::to_string(count[b]);
    out += '\n';
  }
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("report: cannot write " + p.string());
  out << content;
  if (!out) throw std::runtime_error("report: write failed for " + p.string());
}

}  // namespace

ReportFormat parse_format(const std::string& name) {
  if (name == "text") return ReportFormat::text;
  if (name == "json") return ReportFormat::json;
  if (name == "csv-bundle") return ReportFormat::csv_bundle;
  throw ConfigError("unknown report format '" + name + "' (text | json | csv-bundle)");
}

std::string report_json(const RunReport& r) {
  json doc;

  json cfg;
  cfg["document"] = json::parse(r.config.canonical);
  cfg["hash"] = r.config.hash;
  cfg["seed"] = r.config.numerics.seed;
  doc["config"] = std::move(cfg);

  doc["orbits"] = orbit_rows(r);

  json cond;
  cond["applicable"] = r.condition_applicable;
  if (r.condition_applicable) {
    cond["rotation_holds"] = r.condition.rotation_holds;
    cond["cone_holds"] = r.condition.cone_holds;
    cond["holds"] = r.condition.holds;
  }
  cond["exit_code"] = r.exit_code;
  cond["verdict"] = r.verdict_line;
  doc["condition_iii"] = std::move(cond);

  json cert;
  cert["applicable"] = r.condition_applicable;
  if (r.condition_applicable) {
    const auto& c = r.condition.certificate;
    cert["verdict"] = verdict_name(c.verdict);
    cert["eps_star"] = c.eps_star;
    cert["lp_objective"] = c.lp_objective;
    cert["dual_margin"] = c.dual_margin;
    cert["duality_gap"] = c.duality_gap;
    cert["disc_err"] = c.disc_err;
    cert["refined_min"] = c.refined_min;
    cert["delta_inv"] = c.delta_inv;
    cert["pairing_value"] = c.pairing_value;
    cert["potential_coeffs"] = c.potential_coeffs;
    cert["notes"] = c.notes;
  }
  doc["certificate"] = std::move(cert);

  doc["section"] = section_json(r);

  json timing;
  timing["condition_ms"] = r.condition_ms;
  timing["section_ms"] = r.section_ms;
  timing["total_ms"] = r.total_ms;
  doc["timing"] = std::move(timing);

  return doc.dump(2) + "\n";
}

std::string report_text(const RunReport& r) {
  std::string out = r.verdict_line + "\n";
  char buf[256];
  std::snprintf(buf, sizeof(buf), "run: %s  (hash %s, seed %llu)\n", r.config.name.c_str(),
                r.config.hash.c_str(),
                static_cast<unsigned long long>(r.config.numerics.seed));
  out += buf;

  if (r.condition_applicable) {
    if (!r.condition.components.empty()) {
      out += "link components:\n";
      for (const auto& cc : r.condition.components) {
        std::snprintf(buf, sizeof(buf),
                      "  [%d] period=%.9g  class=%s  ρ_θ=%.9g ± %.2g  ρ^y=%.9g  %s%s\n",
                      cc.component, cc.period, cc.orbit_class.c_str(), cc.rho_theta,
                      cc.rho_theta_error, cc.rho_y,
                      cc.positive ? "positive" : "not positive",
                      cc.generic_obstruction ? " (generic obstruction)" : "");
        out += buf;
      }
    }
    std::snprintf(buf, sizeof(buf), "condition (iii): rotation %s, cone %s -> %s\n",
                  r.condition.rotation_holds ? "holds" : "fails",
                  r.condition.cone_holds ? "holds" : "fails",
                  r.condition.holds ? "holds" : "fails");
    out += buf;
    const auto& c = r.condition.certificate;
    std::snprintf(buf, sizeof(buf),
                  "certificate: %s  ε*=%.9g  margin=%.6g  gap=%.2g  disc=%.2g  "
                  "refined=%.6g  δ_inv=%.2g  pairing=%.9g\n",
                  verdict_name(c.verdict), c.eps_star, c.dual_margin, c.duality_gap,
                  c.disc_err, c.refined_min, c.delta_inv, c.pairing_value);
    out += buf;
  }

  if (r.annulus_ran) {
    std::snprintf(buf, sizeof(buf),
                  "annulus: %d samples, %d misses, τ in [%.9g, %.9g], mean %.9g, "
                  "margin %.6g\n",
                  r.annulus.samples, r.annulus.misses, r.annulus.tau_min, r.annulus.tau_max,
                  r.annulus.tau_mean, r.annulus.min_margin);
    out += buf;
  }

  if (r.section_ran) {
    std::snprintf(buf, sizeof(buf),
                  "leaf: level=%.9g  %d component(s), euler=%d, genus=%d, %d boundary "
                  "circle(s), %zu vertices, %zu faces\n",
                  r.leaf_level, r.leaf.components, r.leaf.euler, r.leaf.genus,
                  r.leaf.n_boundary, r.leaf.vertices.size(), r.leaf.faces.size());
    out += buf;
    for (const auto& b : r.leaf.boundary) {
      std::snprintf(buf, sizeof(buf), "  boundary circle on link torus: winding (%d, %d)\n",
                    b.n1, b.n2);
      out += buf;
    }
    for (const auto& b : r.leaf.wall) {
      std::snprintf(buf, sizeof(buf), "  boundary circle on chart wall: winding (%d, %d)\n",
                    b.n1, b.n2);
      out += buf;
    }
    const auto& tv = r.section.transversality;
    std::snprintf(buf, sizeof(buf),
                  "transversality: min margin %.6g over %d faces (%d below floor): %s\n",
                  tv.min_margin, tv.faces, tv.below, tv.pass ? "pass" : "FAIL");
    out += buf;
    out += "degrees:";
    for (const auto& row : r.section.degrees) {
      std::snprintf(buf, sizeof(buf), "  %s %d (pairing %.9g)%s", row.label.c_str(),
                    row.degree, row.pairing, row.match ? "" : " MISMATCH");
      out += buf;
    }
    std::snprintf(buf, sizeof(buf), "  surjective: %s\n",
                  r.section.surjective ? "yes" : "NO");
    out += buf;
    const auto& st = r.section.returns;
    std::snprintf(buf, sizeof(buf),
                  "returns: %d samples, %d misses, τ in [%.9g, %.9g], mean %.9g\n",
                  st.samples, st.misses, st.tau_min, st.tau_max, st.tau_mean);
    out += buf;
    for (const auto& note : r.section.notes) out += "  note: " + note + "\n";
  }

  std::snprintf(buf, sizeof(buf), "timing: condition %.0f ms, section %.0f ms, total %.0f ms\n",
                r.condition_ms, r.section_ms, r.total_ms);
  out += buf;
  return out;
}

std::string csv_b_grid(const RunReport& r) {
  std::string out = "component,t,theta,b\n";
  if (!r.condition_applicable) return out;
  for (const auto& cc : r.condition.components) {
    const auto& g = cc.field.grid();
    out.reserve(out.size() + static_cast<std::size_t>(g.nx()) * g.ny() * 48);
    for (int i = 0; i < g.nx(); ++i) {
      for (int j = 0; j < g.ny(); ++j) {
        out += std::to_string(cc.component);
        out += ',';
        out += g17(g.node_x(i));
        out += ',';
        out += g17(g.node_y(j));
        out += ',';
        out += g17(g.at(i, j));
        out += '\n';
      }
    }
  }
  return out;
}

std::string csv_rotation_windows(const RunReport& r) {
  std::string out = "component,seed,horizon_mult,estimate\n";
  if (!r.condition_applicable) return out;
  for (const auto& cc : r.condition.components) {
    for (const auto& w : cc.rotation.windows) {
      out += std::to_string(cc.component);
      out += ',';
      out += std::to_string(w.seed);
      out += ',';
      out += std::to_string(w.mult);
      out += ',';
      out += g17(w.value);
      out += '\n';
    }
  }
  return out;
}

std::string csv_return_times(const RunReport& r) {
  std::string out = "tau_lo,tau_hi,count\n";
  if (r.annulus_ran)
    histogram_csv(out, r.annulus.taus);
  else if (r.section_ran)
    histogram_csv(out, r.section.returns.taus);
  return out;
}

std::vector<std::string> emit_report(const RunReport& r, const std::string& out_dir,
                                     ReportFormat format) {
  namespace fs = std::filesystem;
  const fs::path dir(out_dir.empty() ? "." : out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("report: cannot create directory " + dir.string());

  std::vector<std::string> written;
  const auto emit = [&](const char* name, const std::string& content) {
    const fs::path p = dir / name;
    write_file(p, content);
    written.push_back(p.string());
  };

  switch (format) {
    case ReportFormat::text:
      emit("report.txt", report_text(r));
      break;
    case ReportFormat::json:
      emit("report.json", report_json(r));
      break;
    case ReportFormat::csv_bundle:
      emit("b_grid.csv", csv_b_grid(r));
      emit("rotation_windows.csv", csv_rotation_windows(r));
      emit("return_times.csv", csv_return_times(r));
      break;
  }
  if (r.section_ran && format != ReportFormat::text)
    emit("leaf.obj", section::to_obj(r.leaf));
  return written;
}

}  // namespace sos::runner
