#include "percopack/io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace percopack {

std::string format_double(double v)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

void write_pointset_csv(std::ostream& os, const PointSet& points)
{
  points.validate();
  os << "x,y,multiplicity\n";
  for (std::size_t k = 0; k < points.size(); ++k)
    os << format_double(points.points[k].x()) << ',' << format_double(points.points[k].y()) << ','
       << points.multiplicity[k] << '\n';
}

PointSet read_pointset_csv(std::istream& is, double radius)
{
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("point CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,y,multiplicity" && line != "x,y")
    throw std::runtime_error("point CSV: expected header 'x,y,multiplicity'");
  PointSet out;
  out.radius = radius;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::istringstream row(line);
    std::string fx, fy, fm;
    std::getline(row, fx, ',');
    std::getline(row, fy, ',');
    std::getline(row, fm, ',');
    try {
      const int mult = fm.empty() ? 1 : std::stoi(fm);
      out.push_back({std::stod(fx), std::stod(fy)}, mult);
    } catch (const std::logic_error&) {
      throw std::runtime_error("point CSV: malformed row " + std::to_string(lineno));
    }
  }
  out.validate();
  return out;
}

Json pointset_to_json(const PointSet& points)
{
  points.validate();
  Json pts = Json::array();
  for (std::size_t k = 0; k < points.size(); ++k)
    pts.push_back(Json::array({points.points[k].x(), points.points[k].y(), points.multiplicity[k]}));
  return Json{{"radius", points.radius}, {"time_label", points.time_label}, {"points", std::move(pts)}};
}

PointSet pointset_from_json(const Json& j)
{
  PointSet out;
  out.radius = j.value("radius", 0.5);
  out.time_label = j.value("time_label", 0.0);
  for (const auto& p : j.at("points")) {
    if (!p.is_array() || p.size() < 2) throw std::runtime_error("point JSON: each point needs [x, y(, multiplicity)]");
    out.push_back({p[0].get<double>(), p[1].get<double>()}, p.size() > 2 ? p[2].get<int>() : 1);
  }
  out.validate();
  return out;
}

PointSet load_pointset(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) return pointset_from_json(Json::parse(in));
  return read_pointset_csv(in);
}

void write_probe_csv(std::ostream& os, const std::vector<ProbeRow>& rows)
{
  os << "param,trials,successes,phat,lo,hi\n";
  for (const auto& r : rows)
    os << format_double(r.param) << ',' << r.trials << ',' << r.successes << ',' << format_double(r.phat) << ','
       << format_double(r.lo) << ',' << format_double(r.hi) << '\n';
}

Json ci_to_json(const BinomialCI& ci)
{
  const char* sided = ci.sided == Sided::lower ? "lower" : ci.sided == Sided::upper ? "upper" : "two-sided";
  return Json{{"lower", ci.lower},
              {"upper", ci.upper},
              {"confidence", ci.confidence},
              {"sided", sided},
              {"method", std::string(BinomialCI::method)}};
}

Json report_to_json(const Report& r)
{
  Json j;
  j["operation"] = r.operation;
  j["version"] = PERCOPACK_VERSION;
  j["config"] = r.config;
  j["params"] = r.params;
  j["counts"] = r.counts;
  j["ci"] = r.ci ? ci_to_json(*r.ci) : Json(nullptr);
  j["verdict"] = r.verdict;
  j["seed"] = r.seed;
  j["results"] = r.extra;
  if (r.wall_time) j["wall_time"] = *r.wall_time;
  return j;
}

void write_text(const std::string& path, const std::string& text)
{
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace percopack
