#include <doctest.h>

#include "percopack/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace percopack;

TEST_CASE("shortest round-trip formatting")
{
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5e-300) == "-2.5e-300");
  RngStream rng(1, 0);
  for (int k = 0; k < 1000; ++k) {
    const double v = rng.normal() * std::pow(10.0, rng.uniform(-20, 20));
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("point set CSV round trip is exact")
{
  RngStream rng(2, 0);
  PointSet s;
  for (int k = 0; k < 200; ++k) s.push_back({rng.normal(), rng.uniform(-1e6, 1e6)}, 1 + k % 4);
  std::stringstream buf;
  write_pointset_csv(buf, s);
  CHECK(buf.str().rfind("x,y,multiplicity\n", 0) == 0);
  const PointSet back = read_pointset_csv(buf, s.radius);
  CHECK(back.points == s.points);
  CHECK(back.multiplicity == s.multiplicity);
}

TEST_CASE("malformed CSV is rejected")
{
  std::istringstream no_header("1,2,1\n");
  CHECK_THROWS(read_pointset_csv(no_header));
  std::istringstream bad_mult("x,y,multiplicity\n1,2,0\n");
  CHECK_THROWS(read_pointset_csv(bad_mult));
  std::istringstream junk("x,y,multiplicity\n1,abc,1\n");
  CHECK_THROWS(read_pointset_csv(junk));
}

TEST_CASE("point set JSON round trip")
{
  PointSet s({{0.25, -1.0}, {3.0, 4.0}}, 0.7, 2.0);
  s.multiplicity[1] = 14;
  const Json j = pointset_to_json(s);
  CHECK(j["radius"] == 0.7);
  const PointSet back = pointset_from_json(Json::parse(j.dump()));
  CHECK(back.points == s.points);
  CHECK(back.multiplicity == s.multiplicity);
  CHECK(back.radius == 0.7);
  CHECK(back.time_label == 2.0);
}

TEST_CASE("load by extension")
{
  PointSet s({{1.5, 2.5}}, 0.5);
  const std::string json_path = "io_test_points.json";
  const std::string csv_path = "io_test_points.csv";
  write_text(json_path, pointset_to_json(s).dump());
  std::ostringstream csv;
  write_pointset_csv(csv, s);
  write_text(csv_path, csv.str());
  CHECK(load_pointset(json_path).points == s.points);
  CHECK(load_pointset(csv_path).points == s.points);
  std::remove(json_path.c_str());
  std::remove(csv_path.c_str());
  CHECK_THROWS(load_pointset("does/not/exist.csv"));
}

TEST_CASE("probe CSV and report layout")
{
  std::ostringstream os;
  write_probe_csv(os, {ProbeRow{1.5, 10, 7, 0.7, 0.3, 0.9}});
  CHECK(os.str() == "param,trials,successes,phat,lo,hi\n1.5,10,7,0.7,0.3,0.9\n");

  Report r;
  r.operation = "crossing";
  r.ci = clopper_pearson(63, 63, 0.9999, Sided::lower);
  r.verdict = "certified";
  r.seed = 5;
  const Json j = report_to_json(r);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"operation", "version", "config", "params", "counts", "ci", "verdict", "seed",
                                         "results"});
  CHECK(j["ci"]["method"] == "clopper-pearson");
  CHECK(j["ci"]["sided"] == "lower");
  r.wall_time = 1.25;
  CHECK(report_to_json(r).contains("wall_time"));
}
