#include "percopack/render.hpp"

#include "percopack/cluster.hpp"
#include "percopack/crossing.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace percopack {

namespace {

std::string fixed2(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  return s == "-0.00" ? "0.00" : s;
}

std::string escape(const std::string& s)
{
  std::string out;
  for (char c : s) {
    if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else if (c == '&')
      out += "&amp;";
    else
      out += c;
  }
  return out;
}

}  // namespace

std::string render_svg(const RenderScene& scene, double ppu)
{
  if (!(ppu > 0.0)) throw std::invalid_argument("render_svg: scale must be positive");
  if (!(scene.view.width() > 0.0 && scene.view.height() > 0.0))
    throw std::invalid_argument("render_svg: empty view");
  if (!scene.highlight.empty() && scene.highlight.size() != scene.balls.size())
    throw std::invalid_argument("render_svg: highlight mask size mismatch");
  const AABB& v = scene.view;
  const auto X = [&](double x) { return fixed2((x - v.xmin) * ppu); };
  const auto Y = [&](double y) { return fixed2((v.ymax - y) * ppu); };
  const std::string r = fixed2(scene.balls.radius * ppu);

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed2(v.width() * ppu) << "\" height=\""
     << fixed2(v.height() * ppu) << "\" viewBox=\"0 0 " << fixed2(v.width() * ppu) << ' '
     << fixed2(v.height() * ppu) << "\">\n";
  os << "<title>" << escape(scene.title) << "</title>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  os << "<g fill=\"none\" stroke=\"#7f8c8d\" stroke-width=\"1\">\n";
  for (const auto& poly : scene.polygons) {
    os << "<polygon points=\"";
    for (std::size_t k = 0; k < poly.size(); ++k) os << (k ? " " : "") << X(poly[k].x()) << ',' << Y(poly[k].y());
    os << "\"/>\n";
  }
  os << "</g>\n";

  for (int pass = 0; pass < 2; ++pass) {
    os << (pass == 0 ? "<g fill=\"#cfd8e3\" fill-opacity=\"0.7\" stroke=\"#4a6a8a\" stroke-width=\"0.5\">\n"
                     : "<g fill=\"#f4a259\" fill-opacity=\"0.85\" stroke=\"#b5651d\" stroke-width=\"0.5\">\n");
    for (std::size_t k = 0; k < scene.balls.size(); ++k) {
      const bool lit = !scene.highlight.empty() && scene.highlight[k];
      if (lit != (pass == 1)) continue;
      os << "<circle cx=\"" << X(scene.balls.points[k].x()) << "\" cy=\"" << Y(scene.balls.points[k].y())
         << "\" r=\"" << r << "\"/>\n";
    }
    os << "</g>\n";
  }

  os << "<g stroke=\"#c0392b\" stroke-width=\"3\">\n";
  for (const auto& s : scene.marked)
    os << "<line x1=\"" << X(s.a.x()) << "\" y1=\"" << Y(s.a.y()) << "\" x2=\"" << X(s.b.x()) << "\" y2=\""
       << Y(s.b.y()) << "\"/>\n";
  os << "</g>\n";

  os << "<g font-family=\"sans-serif\" font-size=\"" << fixed2(0.5 * ppu)
     << "\" text-anchor=\"middle\" dominant-baseline=\"central\">\n";
  for (std::size_t k = 0; k < scene.balls.size(); ++k)
    if (scene.balls.multiplicity[k] > 1)
      os << "<text x=\"" << X(scene.balls.points[k].x()) << "\" y=\"" << Y(scene.balls.points[k].y()) << "\">"
         << scene.balls.multiplicity[k] << "</text>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

void highlight_largest_component(RenderScene& scene)
{
  scene.highlight.assign(scene.balls.size(), 0);
  if (scene.balls.empty()) return;
  IntersectionGraph g(scene.balls.points, scene.balls.radius);
  const auto labels = g.component_labels();
  std::vector<std::size_t> count(g.component_count(), 0);
  for (auto l : labels) ++count[l];
  std::size_t best = 0;
  for (std::size_t c = 1; c < count.size(); ++c)
    if (count[c] > count[best]) best = c;
  for (std::size_t k = 0; k < labels.size(); ++k) scene.highlight[k] = labels[k] == best;
}

RenderScene lattice_scene(const AABB& window, double t, std::uint64_t seed)
{
  RenderScene scene;
  scene.title = "triangular lattice, t = " + fixed2(t);
  scene.view = window.padded(1.0);
  scene.balls = perturbed_tri_lattice(window, t, RngStream(seed, 0));
  highlight_largest_component(scene);
  return scene;
}

RenderScene poisson_scene(const AABB& window, double lambda, double radius, std::uint64_t seed)
{
  RenderScene scene;
  scene.title = "Poisson process, intensity " + fixed2(lambda);
  scene.view = window.padded(radius);
  RngStream rng(seed, 0);
  scene.balls = sample_poisson_pp(Region{window}, lambda, rng, radius);
  highlight_largest_component(scene);
  return scene;
}

RenderScene fixture_scene(double side, double t, std::uint64_t seed)
{
  const PairFixture f = build_fixture(side);
  RenderScene scene;
  scene.title = "hexagon pair, side " + fixed2(side) + ", t = " + fixed2(t);
  scene.view = f.region.bounding_box().padded(1.0);
  for (const auto& h : {f.pair.h1, f.pair.h2}) {
    const auto vs = h.vertices();
    scene.polygons.emplace_back(vs.begin(), vs.end());
  }
  const Segment from = f.pair.edge(PairEdge::e3);
  const Segment to = f.pair.edge(PairEdge::e3p);
  scene.marked = {from, to};
  scene.balls = PointSet(fixture_positions(f, t, RngStream(seed, 0)));
  IntersectionGraph g(scene.balls.points, scene.balls.radius);
  std::vector<std::uint8_t> touch(g.size(), 0);
  for (std::uint32_t k = 0; k < g.size(); ++k) {
    const auto root = g.find(k);
    if (ball_intersects_segment(scene.balls.points[k], scene.balls.radius, from)) touch[root] |= 1;
    if (ball_intersects_segment(scene.balls.points[k], scene.balls.radius, to)) touch[root] |= 2;
  }
  scene.highlight.assign(g.size(), 0);
  for (std::uint32_t k = 0; k < g.size(); ++k) scene.highlight[k] = touch[g.find(k)] == 3;
  return scene;
}

RenderScene figure2_scene(const AABB& window, double t, std::uint64_t seed)
{
  RenderScene scene;
  scene.title = "superposed tile configuration, t = " + fixed2(t);
  scene.view = window;
  const PointSet start = figure2_configuration(window);
  RngStream rng(seed, 0);
  scene.balls = brownian_displace(start, t, rng);
  for (double x = window.xmin; x <= window.xmax; x += kFigure2Period)
    scene.polygons.push_back({{x, window.ymin}, {x, window.ymax}});
  for (double y = window.ymin; y <= window.ymax; y += kFigure2Period)
    scene.polygons.push_back({{window.xmin, y}, {window.xmax, y}});
  highlight_largest_component(scene);
  return scene;
}

}  // namespace percopack
