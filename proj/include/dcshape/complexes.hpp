#ifndef DCSHAPE_COMPLEXES_HPP
#define DCSHAPE_COMPLEXES_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "dcshape/complex.hpp"
#include "dcshape/delaunay.hpp"
#include "dcshape/distance_graph.hpp"
#include "dcshape/errors.hpp"
#include "dcshape/geometry.hpp"

namespace dcshape {

/** Delaunay complex extended to tiny inputs: 0/1 points give vertices only,
 *  2 points give the single edge. Three or more go through delaunay(). */
inline Complex2 delaunay_skeleton(const PointSet& ps) {
  Complex2 out;
  const int n = static_cast<int>(ps.size());
  if (n <= 2) {
    for (int v = 0; v < n; ++v) out.add_vertex(v);
    if (n == 2) out.add_edge(0, 1);
    return out;
  }
  return delaunay(ps);
}

/** True when no other input point lies strictly inside the circle that has
 *  segment (i, j) as a diameter; the midpoint then witnesses the edge (its
 *  two nearest input points are exactly i and j). Points within tolerance of
 *  that circle count as outside and are reported as near-degenerate. */
inline bool midpoint_is_witness(const PointSet& ps, int i, int j, NearDegeneracy* nd = nullptr) {
  const int n = static_cast<int>(ps.size());
  if (i < 0 || i >= n || j < 0 || j >= n || i == j) {
    throw OutOfRange("midpoint_is_witness: bad vertex pair");
  }
  const Eigen::Vector2d m = 0.5 * (ps[i] + ps[j]);
  const double rad = 0.5 * (ps[i] - ps[j]).norm();
  const double tol = ps.abs_tol();
  for (int k = 0; k < n; ++k) {
    if (k == i || k == j) continue;
    const double dk = (ps[k] - m).norm();
    if (std::abs(dk - rad) <= tol) {
      std::ostringstream what;
      what << "point " << k << " grazes the diametral circle of (" << i << ", " << j << ")";
      note_near(nd, std::abs(dk - rad), what.str());
      continue;  // boundary counts as outside
    }
    if (dk < rad) return false;
  }
  return true;
}

/** Alpha complex at scale q (disk radius q/2): all vertices; Delaunay
 *  triangles with circumradius <= q/2; Delaunay edges of length <= q that are
 *  a face of such a triangle or whose midpoint is a witness. */
inline Complex2 alpha_complex(const PointSet& ps, double q, NearDegeneracy* nd = nullptr) {
  if (!(q > 0.0)) throw OutOfRange("alpha_complex: scale must be positive");
  const Complex2 base = delaunay_skeleton(ps);
  const double tol = ps.abs_tol();
  Complex2 out;
  out.vertices = base.vertices;
  for (const Tri& t : base.triangles) {
    const double rr = circumradius(ps[t[0]], ps[t[1]], ps[t[2]], ps.epsilon);
    if (std::abs(rr - 0.5 * q) <= tol) {
      std::ostringstream what;
      what << "triangle (" << t[0] << ", " << t[1] << ", " << t[2]
           << ") circumradius within tolerance of q/2";
      note_near(nd, std::abs(rr - 0.5 * q), what.str());
    }
    if (rr <= 0.5 * q) out.add_triangle(t[0], t[1], t[2]);
  }
  for (const Edge& e : base.edges) {
    const double d = (ps[e.first] - ps[e.second]).norm();
    if (std::abs(d - q) <= tol) {
      std::ostringstream what;
      what << "edge (" << e.first << ", " << e.second << ") length within tolerance of q";
      note_near(nd, std::abs(d - q), what.str());
    }
    if (d > q) continue;
    if (out.edges.count(e)) continue;  // already a face of an accepted triangle
    if (midpoint_is_witness(ps, e.first, e.second, nd)) out.add_edge(e.first, e.second);
  }
  return out;
}

/** Čech complex at scale q, truncated to dimension 2: edges for pairs within
 *  q, triangles for triples whose smallest enclosing disk has radius <= q/2. */
inline Complex2 cech2(const PointSet& ps, double q, NearDegeneracy* nd = nullptr) {
  if (!(q > 0.0)) throw OutOfRange("cech2: scale must be positive");
  const int n = static_cast<int>(ps.size());
  const double tol = ps.abs_tol();
  Complex2 out;
  for (int v = 0; v < n; ++v) out.add_vertex(v);
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = (ps[i] - ps[j]).norm();
      if (std::abs(d - q) <= tol) {
        std::ostringstream what;
        what << "pair (" << i << ", " << j << ") within tolerance of q";
        note_near(nd, std::abs(d - q), what.str());
      }
      if (d <= q) {
        out.add_edge(i, j);
        adj[static_cast<std::size_t>(i)].push_back(j);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j : adj[static_cast<std::size_t>(i)]) {
      for (int k : adj[static_cast<std::size_t>(j)]) {
        if (!out.has_edge(i, k)) continue;
        const double mer = min_enclosing_radius(ps[i], ps[j], ps[k], ps.epsilon);
        if (std::abs(mer - 0.5 * q) <= tol) {
          std::ostringstream what;
          what << "triple (" << i << ", " << j << ", " << k
               << ") enclosing radius within tolerance of q/2";
          note_near(nd, std::abs(mer - 0.5 * q), what.str());
        }
        if (mer <= 0.5 * q) out.add_triangle(i, j, k);
      }
    }
  }
  return out;
}

/** Flag (clique) complex of a distance graph, truncated to dimension 2. */
inline Complex2 flag2(const DistanceGraph& g) {
  Complex2 out;
  for (int v = 0; v < g.order(); ++v) out.add_vertex(v);
  for (const Edge& e : g.edges()) out.add_edge(e.first, e.second);
  for (const Edge& e : g.edges()) {
    for (int k : g.common_neighbors(e.first, e.second)) {
      if (k > e.second) out.add_triangle(e.first, e.second, k);
    }
  }
  return out;
}

/** Delaunay–Čech complex: simplex-wise intersection of the Delaunay
 *  triangulation with the Čech complex at scale q. */
inline Complex2 delaunay_cech(const PointSet& ps, double q, NearDegeneracy* nd = nullptr) {
  return intersect(delaunay_skeleton(ps), cech2(ps, q, nd));
}

/** Intersection of the Delaunay triangulation with the flag complex of the
 *  distance graph at range q: the ambient complex the edge classifier's
 *  triangle tests live in. */
inline Complex2 delaunay_flag(const PointSet& ps, double q, NearDegeneracy* nd = nullptr) {
  return intersect(delaunay_skeleton(ps), flag2(build_graph(ps, q, nd)));
}

/** Triangles of the ambient complex incident to one edge, split by the two
 *  tests the edge-membership rule uses. */
struct IncidentTriangles {
  std::vector<Tri> incident;           // all triangles on the edge (at most two)
  std::vector<Tri> small_circumradius; // circumradius <= q/2
  std::vector<Tri> obtuse_opposite;    // angle opposite the edge > pi/2
};

/** Splits the triangles incident to edge e in the given ambient complex
 *  (pass delaunay_flag(ps, q)). @throws NotAnEdge if e is absent. */
inline IncidentTriangles incident_triangle_sets(const PointSet& ps, double q, Edge e,
                                                const Complex2& ambient,
                                                NearDegeneracy* nd = nullptr) {
  if (!ambient.edges.count(e)) {
    std::ostringstream msg;
    msg << "(" << e.first << ", " << e.second << ") is not an edge of the complex";
    throw NotAnEdge(msg.str());
  }
  IncidentTriangles out;
  const double tol = ps.abs_tol();
  for (const Tri& t : ambient.triangles) {
    bool on_edge = false;
    int apex = -1;
    for (int idx = 0; idx < 3; ++idx) {
      const Edge f = make_edge(t[idx], t[(idx + 1) % 3]);
      if (f == e) {
        on_edge = true;
        apex = t[(idx + 2) % 3];
        break;
      }
    }
    if (!on_edge) continue;
    out.incident.push_back(t);

    const double rr = circumradius(ps[t[0]], ps[t[1]], ps[t[2]], ps.epsilon);
    if (std::abs(rr - 0.5 * q) <= tol) {
      note_near(nd, std::abs(rr - 0.5 * q), "incident triangle circumradius near q/2");
    }
    if (rr <= 0.5 * q) out.small_circumradius.push_back(t);

    // Obtuse at the apex exactly when the diagonal dot product is negative.
    const Eigen::Vector2d u = ps[e.first] - ps[apex];
    const Eigen::Vector2d v = ps[e.second] - ps[apex];
    const double dot = u.dot(v);
    if (std::abs(dot) <= tol * std::max(u.norm(), 1.0) * std::max(v.norm(), 1.0)) {
      note_near(nd, std::abs(dot), "incident triangle within tolerance of a right angle");
    }
    if (dot < 0.0) out.obtuse_opposite.push_back(t);
  }
  return out;
}

/** Convenience overload that builds the ambient complex itself. */
inline IncidentTriangles incident_triangle_sets(const PointSet& ps, double q, Edge e,
                                                NearDegeneracy* nd = nullptr) {
  return incident_triangle_sets(ps, q, e, delaunay_flag(ps, q, nd), nd);
}

}  // namespace dcshape

#endif  // DCSHAPE_COMPLEXES_HPP
