#pragma once

#include "percopack/geometry.hpp"
#include "percopack/pointproc.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace percopack {

// Static picture of a ball configuration: balls, optional highlight mask,
// polygon outlines (hexagons) and emphasised segments.
struct RenderScene {
  std::string title;
  AABB view;
  PointSet balls;
  std::vector<std::uint8_t> highlight;  // empty, or one flag per ball
  std::vector<std::vector<Point>> polygons;
  std::vector<Segment> marked;
};

/// SVG text. Coordinates are printed with two decimals, so equal scenes give
/// equal bytes.
std::string render_svg(const RenderScene& scene, double pixels_per_unit = 10.0);

/// Flags the balls of the largest connected component of the scene.
void highlight_largest_component(RenderScene& scene);

RenderScene lattice_scene(const AABB& window, double t, std::uint64_t seed);
RenderScene poisson_scene(const AABB& window, double lambda, double radius, std::uint64_t seed);
/// Hexagon pair with one sampled trial; balls on a cluster joining e3 to e3'
/// are highlighted and both terminal edges marked.
RenderScene fixture_scene(double side, double t, std::uint64_t seed);
/// Periodic superposed configuration; labels carry multiplicities at t = 0.
RenderScene figure2_scene(const AABB& window, double t, std::uint64_t seed);

}  // namespace percopack
