#ifndef DCSHAPE_SVG_HPP
#define DCSHAPE_SVG_HPP

#include <Eigen/Dense>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>

#include "dcshape/complex.hpp"
#include "dcshape/geometry.hpp"

namespace dcshape {

/** Layer selection for render_svg. Pointers may be null to omit a layer. */
struct SvgLayers {
  bool disks = true;                        // union of radius-q/2 disks
  const std::set<Edge>* graph_edges = nullptr;    // faint context edges
  const std::set<Edge>* dc_edges = nullptr;       // Delaunay–Čech boundary overlay
  const std::set<Tri>* dc_triangles = nullptr;    // filled Delaunay–Čech triangles
  const std::set<Edge>* alpha_edges = nullptr;    // alpha-shape boundary overlay
  const std::set<int>* marked_vertices = nullptr; // boundary vertices drawn larger
};

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace detail

/** Deterministic standalone SVG of an instance: disk-union shading at radius
 *  q/2 underneath, then context edges, Delaunay–Čech overlay, alpha-shape
 *  boundary, and vertices. World y points up (coordinates are flipped into
 *  SVG's y-down frame). Groups carry stable ids so output is checkable. */
inline std::string render_svg(const PointSet& ps, double q, const SvgLayers& layers) {
  Eigen::Vector2d lo{0.0, 0.0}, hi{1.0, 1.0};
  if (!ps.points.empty()) {
    lo = hi = ps.points.front();
    for (const auto& p : ps.points) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
  }
  const double margin = 0.6 * q + 0.02 * (hi - lo).norm();
  lo.array() -= margin;
  hi.array() += margin;
  const double w = hi.x() - lo.x(), h = hi.y() - lo.y();
  const auto sx = [&](double x) { return detail::fmt(x); };
  const auto sy = [&](double y) { return detail::fmt(lo.y() + hi.y() - y); };  // flip

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << detail::fmt(lo.x()) << " "
      << detail::fmt(lo.y()) << " " << detail::fmt(w) << " " << detail::fmt(h)
      << "\" width=\"800\" height=\"" << detail::fmt(800.0 * h / w) << "\">\n";
  out << "<rect x=\"" << detail::fmt(lo.x()) << "\" y=\"" << detail::fmt(lo.y()) << "\" width=\""
      << detail::fmt(w) << "\" height=\"" << detail::fmt(h) << "\" fill=\"#ffffff\"/>\n";

  const double vr = std::max(0.006 * std::max(w, h), 1e-6);
  if (layers.disks) {
    out << "<g id=\"disks\" fill=\"#9ecfe8\" fill-opacity=\"0.45\" stroke=\"none\">\n";
    for (const auto& p : ps.points) {
      out << "  <circle cx=\"" << sx(p.x()) << "\" cy=\"" << sy(p.y()) << "\" r=\""
          << detail::fmt(0.5 * q) << "\"/>\n";
    }
    out << "</g>\n";
  }
  const auto edge_line = [&](const Edge& e) {
    const auto& a = ps[e.first];
    const auto& b = ps[e.second];
    std::ostringstream line;
    line << "  <line x1=\"" << sx(a.x()) << "\" y1=\"" << sy(a.y()) << "\" x2=\"" << sx(b.x())
         << "\" y2=\"" << sy(b.y()) << "\"/>\n";
    return line.str();
  };
  if (layers.graph_edges != nullptr) {
    out << "<g id=\"graph-edges\" stroke=\"#c8c8c8\" stroke-width=\"" << detail::fmt(0.25 * vr)
        << "\">\n";
    for (const Edge& e : *layers.graph_edges) out << edge_line(e);
    out << "</g>\n";
  }
  if (layers.dc_triangles != nullptr) {
    out << "<g id=\"dc-triangles\" fill=\"#f2c577\" fill-opacity=\"0.5\" stroke=\"none\">\n";
    for (const Tri& t : *layers.dc_triangles) {
      out << "  <polygon points=\"";
      for (int idx = 0; idx < 3; ++idx) {
        out << sx(ps[t[idx]].x()) << "," << sy(ps[t[idx]].y()) << (idx < 2 ? " " : "");
      }
      out << "\"/>\n";
    }
    out << "</g>\n";
  }
  if (layers.dc_edges != nullptr) {
    out << "<g id=\"dc-shape\" stroke=\"#d9822b\" stroke-width=\"" << detail::fmt(0.9 * vr)
        << "\" stroke-linecap=\"round\">\n";
    for (const Edge& e : *layers.dc_edges) out << edge_line(e);
    out << "</g>\n";
  }
  if (layers.alpha_edges != nullptr) {
    out << "<g id=\"alpha-shape\" stroke=\"#1f4e79\" stroke-width=\"" << detail::fmt(0.6 * vr)
        << "\" stroke-linecap=\"round\">\n";
    for (const Edge& e : *layers.alpha_edges) out << edge_line(e);
    out << "</g>\n";
  }
  out << "<g id=\"vertices\" fill=\"#333333\">\n";
  for (std::size_t v = 0; v < ps.size(); ++v) {
    const bool marked =
        layers.marked_vertices != nullptr && layers.marked_vertices->count(static_cast<int>(v)) > 0;
    out << "  <circle cx=\"" << sx(ps[v].x()) << "\" cy=\"" << sy(ps[v].y()) << "\" r=\""
        << detail::fmt(marked ? 1.4 * vr : 0.8 * vr) << "\""
        << (marked ? " fill=\"#b02418\"" : "") << "/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace dcshape

#endif  // DCSHAPE_SVG_HPP
