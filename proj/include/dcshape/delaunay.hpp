#ifndef DCSHAPE_DELAUNAY_HPP
#define DCSHAPE_DELAUNAY_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "dcshape/complex.hpp"
#include "dcshape/errors.hpp"
#include "dcshape/geometry.hpp"

namespace dcshape {

namespace detail {

/** In-circle determinant, centered at the query point d. Positive when d is
 *  strictly inside the circle through a CCW triangle (a, b, c). Also returns
 *  a magnitude bound for the uncertainty filter. */
struct InCircle {
  double det = 0.0;
  double bound = 0.0;
};

inline InCircle incircle(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                         const Eigen::Vector2d& c, const Eigen::Vector2d& d) {
  const double adx = a.x() - d.x(), ady = a.y() - d.y();
  const double bdx = b.x() - d.x(), bdy = b.y() - d.y();
  const double cdx = c.x() - d.x(), cdy = c.y() - d.y();
  const double ad2 = adx * adx + ady * ady;
  const double bd2 = bdx * bdx + bdy * bdy;
  const double cd2 = cdx * cdx + cdy * cdy;
  InCircle r;
  r.det = adx * (bdy * cd2 - cdy * bd2) - ady * (bdx * cd2 - cdx * bd2) +
          ad2 * (bdx * cdy - cdx * bdy);
  r.bound = std::abs(adx) * (std::abs(bdy) * cd2 + std::abs(cdy) * bd2) +
            std::abs(ady) * (std::abs(bdx) * cd2 + std::abs(cdx) * bd2) +
            ad2 * (std::abs(bdx) * std::abs(cdy) + std::abs(cdx) * std::abs(bdy));
  return r;
}

// Relative filter below which the in-circle sign is treated as unreliable.
inline constexpr double kInCircleFilter = 1e-12;

}  // namespace detail

/** Delaunay triangulation by incremental insertion (Bowyer–Watson against a
 *  large enclosing triangle). Returns the triangulation as a closed
 *  2-complex: every triangle's open circumdisk is empty of input points.
 *
 *  @throws DegenerateInput for fewer than 3 points or an all-collinear set.
 *  @throws CocircularDegeneracy when an in-circle test between four input
 *          points is too close to zero to call, reporting the 4-tuple.
 */
inline Complex2 delaunay(const PointSet& ps) {
  const int n = static_cast<int>(ps.size());
  if (n < 3) throw DegenerateInput("delaunay: need at least 3 points");

  // Collinearity check against the widest direction through the set.
  {
    int far = 1;
    double best = 0.0;
    for (int i = 1; i < n; ++i) {
      const double d = (ps[i] - ps[0]).norm();
      if (d > best) {
        best = d;
        far = i;
      }
    }
    const Eigen::Vector2d dir = (ps[far] - ps[0]).normalized();
    const Eigen::Vector2d nrm(-dir.y(), dir.x());
    bool all_on_line = true;
    for (int i = 0; i < n; ++i) {
      if (std::abs(nrm.dot(ps[i] - ps[0])) > ps.abs_tol()) {
        all_on_line = false;
        break;
      }
    }
    if (all_on_line) throw DegenerateInput("delaunay: all points are collinear within tolerance");
  }

  // Working copy of coordinates with three synthetic far-away vertices.
  std::vector<Eigen::Vector2d> pts(ps.points);
  Eigen::Vector2d lo = pts[0], hi = pts[0];
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const Eigen::Vector2d center = 0.5 * (lo + hi);
  const double big = 1000.0 * std::max((hi - lo).norm(), 1.0);
  for (int k = 0; k < 3; ++k) {
    const double ang = kPi / 2.0 + 2.0 * kPi * k / 3.0;
    pts.emplace_back(center + big * Eigen::Vector2d(std::cos(ang), std::sin(ang)));
  }

  struct WorkTri {
    int a, b, c;  // CCW
  };
  std::vector<WorkTri> tris{{n, n + 1, n + 2}};
  if (signed_area(pts[n], pts[n + 1], pts[n + 2]) < 0.0) std::swap(tris[0].b, tris[0].c);

  auto strictly_inside = [&](const WorkTri& t, int p) {
    const auto r = detail::incircle(pts[t.a], pts[t.b], pts[t.c], pts[p]);
    if (std::abs(r.det) <= detail::kInCircleFilter * r.bound) {
      if (t.a < n && t.b < n && t.c < n && p < n) {
        std::ostringstream msg;
        msg << "points (" << t.a << ", " << t.b << ", " << t.c << ", " << p
            << ") are cocircular within tolerance";
        throw CocircularDegeneracy(msg.str(), {t.a, t.b, t.c, p});
      }
      return false;  // uncertain tests against synthetic vertices resolve to "outside"
    }
    return r.det > 0.0;
  };

  for (int p = 0; p < n; ++p) {
    std::vector<WorkTri> keep;
    std::map<Edge, int> cavity;  // edges of removed triangles, with multiplicity
    keep.reserve(tris.size() + 2);
    for (const WorkTri& t : tris) {
      if (strictly_inside(t, p)) {
        ++cavity[make_edge(t.a, t.b)];
        ++cavity[make_edge(t.b, t.c)];
        ++cavity[make_edge(t.c, t.a)];
      } else {
        keep.push_back(t);
      }
    }
    for (const auto& [e, count] : cavity) {
      if (count != 1) continue;  // interior edge of the cavity
      WorkTri t{e.first, e.second, p};
      if (signed_area(pts[t.a], pts[t.b], pts[t.c]) < 0.0) std::swap(t.a, t.b);
      keep.push_back(t);
    }
    tris = std::move(keep);
  }

  Complex2 out;
  for (int v = 0; v < n; ++v) out.add_vertex(v);
  for (const WorkTri& t : tris) {
    if (t.a < n && t.b < n && t.c < n) out.add_triangle(t.a, t.b, t.c);
  }
  // A valid triangulation of a point set with interior structure triangulates
  // a disk, so Euler's relation pins the simplex counts.
  const auto v = static_cast<long>(out.vertices.size());
  const auto e = static_cast<long>(out.edges.size());
  const auto f = static_cast<long>(out.triangles.size());
  if (v - e + f != 1) {
    throw DegenerateInput("delaunay: triangulation failed Euler check (degenerate input?)");
  }
  return out;
}

}  // namespace dcshape

#endif  // DCSHAPE_DELAUNAY_HPP
