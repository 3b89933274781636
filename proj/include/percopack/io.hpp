#pragma once

#include "percopack/estimators.hpp"
#include "percopack/pointproc.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace percopack {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form.
std::string format_double(double v);

// Point sets as CSV (`x,y,multiplicity`, header required) or JSON
// ({radius, time_label, points: [[x, y, multiplicity], ...]}).
void write_pointset_csv(std::ostream& os, const PointSet& points);
PointSet read_pointset_csv(std::istream& is, double radius = 0.5);
Json pointset_to_json(const PointSet& points);
PointSet pointset_from_json(const Json& j);
/// Picks the format from the extension (.json, otherwise CSV).
PointSet load_pointset(const std::string& path);

/// Probe sweep rows, columns `param,trials,successes,phat,lo,hi`.
void write_probe_csv(std::ostream& os, const std::vector<ProbeRow>& rows);

Json ci_to_json(const BinomialCI& ci);

struct Report {
  std::string operation;
  Json config = Json::object();
  Json params = Json::object();
  Json counts = Json::object();
  std::optional<BinomialCI> ci;
  std::string verdict;
  std::uint64_t seed = 0;
  std::optional<double> wall_time;
  Json extra = Json::object();  // operation-specific results
};

/// {operation, version, config, params, counts, ci, verdict, seed, results[, wall_time]}
Json report_to_json(const Report& r);

/// Writes text to path, or to stdout when path is empty or "-". Throws
/// std::runtime_error when the file cannot be written.
void write_text(const std::string& path, const std::string& text);

}  // namespace percopack
