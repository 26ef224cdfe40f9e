#ifndef FREEFRONT_IO_HPP
#define FREEFRONT_IO_HPP

#include "freefront/error.hpp"
#include "freefront/oracle.hpp"
#include "freefront/stepper.hpp"

#include <json.hpp>

#include <string>

namespace freefront {

using json = nlohmann::json;

json to_json(const AprioriBounds& b);
json to_json(const MonitorReport& m);
json to_json(const GammaReport& g);
json to_json(const ConvergenceReport& c);
json to_json(const ComparisonReport& c);

/// fronts.csv: one row per accepted step (t, g, h, gdot, hdot,
/// picard_iters, residual), 17 significant digits.
std::string csv_fronts(const Trajectory& traj);

/// fields.csv: long format (t, y, x, w, z), one row per snapshot node.
std::string csv_fields(const Trajectory& traj);

/// header.json contents: version, canonical config echo, a-priori bounds.
json run_header(const ConfigMap& echo, const AprioriBounds& b);

/// Recovers the config map from a header produced by run_header.
ConfigMap config_from_header(const json& header);

/// Writes header.json, fronts.csv, fields.csv and report.json under `dir`
/// (created if missing). Returns false when the monitor reports a breach.
bool write_run_output(const std::string& dir, const ConfigMap& echo,
                      const Trajectory& traj);

/// Failure-path report.json naming the breached invariant.
void write_error_report(const std::string& dir, const Error& err);

std::string slurp_file(const std::string& path);
void spit_file(const std::string& path, const std::string& content);

extern const char* kVersion;

} // namespace freefront

#endif
