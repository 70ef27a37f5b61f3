#ifndef DCSHAPE_LOCAL_ALPHA_HPP
#define DCSHAPE_LOCAL_ALPHA_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dcshape/distance_graph.hpp"
#include "dcshape/errors.hpp"
#include "dcshape/geometry.hpp"

namespace dcshape {

enum class Verdict { Boundary, NotBoundary };

enum class Reason {
  NoAnnulusNode,        // no common neighbor lies inside either probe circle
  OneCircleOnly,        // every in-circle neighbor sits in the same circle
  NodeInLens,           // some neighbor is inside both circles at once
  BothCirclesOccupied,  // two neighbors occupy the two circles separately
};

inline const char* to_string(Verdict v) {
  return v == Verdict::Boundary ? "Boundary" : "NotBoundary";
}

inline const char* to_string(Reason r) {
  switch (r) {
    case Reason::NoAnnulusNode: return "NoAnnulusNode";
    case Reason::OneCircleOnly: return "OneCircleOnly";
    case Reason::NodeInLens: return "NodeInLens";
    case Reason::BothCirclesOccupied: return "BothCirclesOccupied";
  }
  return "?";
}

struct EdgeDecision {
  Edge edge{};
  Verdict verdict = Verdict::Boundary;
  Reason reason = Reason::NoAnnulusNode;
  std::vector<int> evidence;     // vertices that triggered or witnessed the verdict
  bool near_degenerate = false;  // some test landed within epsilon of its threshold
};

namespace detail {

/** Edge classification from pairwise distances only.
 *
 *  Probe-circle geometry for edge (i, j) at shape scale q: two circles of
 *  diameter q pass through both endpoints; the edge is on the shape boundary
 *  exactly when at least one of them contains no other vertex. Every test is
 *  expressed through angles recovered from distances:
 *    theta      inscribed angle of the edge on either circle's major arc,
 *    phi_k      angle at a common neighbor k opposite the edge:
 *               phi_k > pi - theta      -> k inside both circles (lens),
 *               theta < phi_k <= pi-theta -> k inside exactly one circle,
 *               phi_k <= theta          -> k inside neither;
 *    side test  whether a later one-circle node l shares the first one's
 *               circle: the angle beta at v_i between k0 and l equals
 *               |a_k0 - a_l| on the same circle and a_k0 + a_l (folded to
 *               [0, pi]) on opposite circles, where a_x is the angle at v_i
 *               between x and v_j. Nearest candidate decides.
 *
 *  Comparisons within epsilon of a threshold resolve toward "outside"/"same"
 *  and set near_degenerate.
 */
template <DistanceQueryable G>
EdgeDecision classify_edge_ordered(const G& g, int i, int j, double q,
                                   std::span<const int> neighbor_order) {
  if (q > g.range()) {
    std::ostringstream msg;
    msg << "shape scale " << q << " exceeds graph range " << g.range();
    throw ParameterTooLarge(msg.str());
  }
  if (!(q > 0.0)) throw OutOfRange("shape scale must be positive");
  const double eps = g.epsilon();
  const double d = g.length(i, j);

  EdgeDecision out;
  out.edge = make_edge(i, j);
  const double theta = chord_inscribed_angle(d, q, eps).radians;

  int k0 = -1;
  double a_k0 = 0.0;  // angle at v_i between k0 and v_j
  for (const int k : neighbor_order) {
    const double dik = g.length(i, k);
    const double djk = g.length(j, k);
    if (std::max(dik, djk) >= q) continue;  // cannot lie inside a circle of diameter q
    const double phi = angle_from_sides(dik, djk, d, eps).radians;

    if (std::abs(phi - (kPi - theta)) <= eps) {
      out.near_degenerate = true;  // grazing the far circle's boundary
    }
    if (phi > kPi - theta + eps) {
      out.verdict = Verdict::NotBoundary;
      out.reason = Reason::NodeInLens;
      out.evidence = {k};
      return out;
    }
    if (std::abs(phi - theta) <= eps) out.near_degenerate = true;
    if (phi <= theta + eps) continue;  // outside both circles

    // k sits inside exactly one circle.
    const double a_k = angle_from_sides(dik, d, djk, eps).radians;
    if (k0 < 0) {
      k0 = k;
      a_k0 = a_k;
      continue;
    }
    if (!g.has_edge(k0, k)) {
      // Two vertices inside one circle of diameter q <= range are always
      // adjacent, so non-adjacency proves they straddle the two circles.
      out.verdict = Verdict::NotBoundary;
      out.reason = Reason::BothCirclesOccupied;
      out.evidence = {k0, k};
      return out;
    }
    const double beta = angle_from_sides(g.length(i, k0), dik, g.length(k0, k), eps).radians;
    const double s_minus = std::abs(a_k0 - a_k);
    const double s_plus_raw = a_k0 + a_k;
    const double s_plus = std::min(s_plus_raw, 2.0 * kPi - s_plus_raw);  // principal value
    const double d_minus = std::abs(beta - s_minus);
    const double d_plus = std::abs(beta - s_plus);
    if (std::abs(s_plus - s_minus) < eps && d_minus <= eps && d_plus <= eps) {
      std::ostringstream msg;
      msg << "side test for node " << k << " against reference " << k0 << " on edge (" << i
          << ", " << j << ") is ambiguous";
      throw AmbiguousSideTest(msg.str(), out.edge, k0, k);
    }
    if (std::abs(d_minus - d_plus) <= eps) out.near_degenerate = true;
    if (d_plus < d_minus) {
      out.verdict = Verdict::NotBoundary;
      out.reason = Reason::BothCirclesOccupied;
      out.evidence = {k0, k};
      return out;
    }
    // Same circle as the reference: keep scanning.
  }

  out.verdict = Verdict::Boundary;
  if (k0 < 0) {
    out.reason = Reason::NoAnnulusNode;
  } else {
    out.reason = Reason::OneCircleOnly;
    out.evidence = {k0};
  }
  return out;
}

}  // namespace detail

/** Classifies edge (i, j) as shape boundary or interior at scale q, using
 *  only distances among {i, j} and their common neighbors. Common neighbors
 *  are scanned in ascending index order; the verdict does not depend on that
 *  order, only the evidence can.
 *
 *  @throws ParameterTooLarge when q exceeds the graph range.
 *  @throws NotAnEdge when (i, j) is not an edge.
 *  @throws ChordTooLong when the edge is longer than q.
 *  @throws AmbiguousSideTest when a side test cannot be decided within epsilon.
 */
template <DistanceQueryable G>
EdgeDecision classify_edge(const G& g, int i, int j, double q) {
  const std::vector<int> order = g.common_neighbors(i, j);
  return detail::classify_edge_ordered(g, i, j, q, order);
}

struct LocalShape {
  double q = 0.0;
  std::set<Edge> boundary_edges;
  std::set<int> boundary_vertices;
  std::map<Edge, EdgeDecision> decisions;  // one per edge with length <= q
  bool near_degenerate = false;
};

namespace detail {

template <DistanceQueryable G>
void fill_shape_vertices(const G& g, double q, LocalShape& shape) {
  for (const Edge& e : shape.boundary_edges) {
    shape.boundary_vertices.insert(e.first);
    shape.boundary_vertices.insert(e.second);
  }
  for (int v = 0; v < g.order(); ++v) {
    bool isolated = true;
    for (const auto& [u, d] : g.neighbors(v)) {
      if (d <= q) {
        isolated = false;
        break;
      }
    }
    if (isolated) shape.boundary_vertices.insert(v);
  }
}

}  // namespace detail

/** Runs the edge classifier over every edge of length <= q and assembles the
 *  boundary: all Boundary edges, their endpoints, plus vertices isolated at
 *  scale q. */
inline LocalShape alpha_shape_local(const DistanceGraph& g, double q) {
  if (!(q > 0.0)) throw OutOfRange("alpha_shape_local: shape scale must be positive");
  if (q > g.range()) {
    std::ostringstream msg;
    msg << "shape scale " << q << " exceeds graph range " << g.range();
    throw ParameterTooLarge(msg.str());
  }
  LocalShape shape;
  shape.q = q;
  for (const Edge& e : g.edges()) {
    const double d = g.length(e.first, e.second);
    if (std::abs(d - q) <= g.epsilon() * q) shape.near_degenerate = true;
    if (d > q) continue;
    EdgeDecision dec = classify_edge(g, e.first, e.second, q);
    shape.near_degenerate = shape.near_degenerate || dec.near_degenerate;
    if (dec.verdict == Verdict::Boundary) shape.boundary_edges.insert(e);
    shape.decisions.emplace(e, std::move(dec));
  }
  detail::fill_shape_vertices(g, q, shape);
  return shape;
}

/** What one node knows after the gather round: its own distance list plus the
 *  full lists of its neighbors. Queries outside that table are protocol bugs
 *  and throw. */
class NeighborhoodView {
 public:
  NeighborhoodView(const DistanceGraph& base, int owner) : base_(&base), owner_(owner) {}

  int order() const { return base_->order(); }
  double range() const { return base_->range(); }
  double epsilon() const { return base_->epsilon(); }

  bool has_edge(int a, int b) const {
    require_known(a, b);
    return base_->has_edge(a, b);
  }
  double length(int a, int b) const {
    require_known(a, b);
    return base_->length(a, b);
  }
  std::vector<int> common_neighbors(int a, int b) const {
    if (!known(a) || !known(b)) {
      throw OutOfRange("NeighborhoodView: neighbor lists of both endpoints are required");
    }
    return base_->common_neighbors(a, b);
  }

 private:
  bool known(int v) const { return v == owner_ || base_->has_edge(owner_, v); }
  void require_known(int a, int b) const {
    // A pair is answerable when either endpoint's full list was received.
    if (!known(a) && !known(b)) {
      std::ostringstream msg;
      msg << "node " << owner_ << " holds no distance data for (" << a << ", " << b << ")";
      throw OutOfRange(msg.str());
    }
  }

  const DistanceGraph* base_;
  int owner_;
};

struct SimStats {
  std::size_t messages = 0;             // neighbor-list messages, one per directed edge
  std::map<int, std::size_t> per_node;  // messages sent by each node
  int rounds = 0;                       // 2 when any edge exists (gather + classify), else 0
};

/** Two-round message-passing execution: every node sends its neighbor list
 *  across each incident edge, then the smaller endpoint of every edge of
 *  length <= q classifies it from its own table. The outcome is identical to
 *  alpha_shape_local by construction (views answer from the same data). */
inline std::pair<LocalShape, SimStats> simulate_distributed(const DistanceGraph& g, double q) {
  if (!(q > 0.0)) throw OutOfRange("simulate_distributed: shape scale must be positive");
  if (q > g.range()) {
    std::ostringstream msg;
    msg << "shape scale " << q << " exceeds graph range " << g.range();
    throw ParameterTooLarge(msg.str());
  }
  SimStats stats;
  for (int v = 0; v < g.order(); ++v) {
    const std::size_t sent = g.neighbors(v).size();
    stats.per_node[v] = sent;
    stats.messages += sent;
  }
  stats.rounds = g.edge_count() > 0 ? 2 : 0;

  LocalShape shape;
  shape.q = q;
  for (const Edge& e : g.edges()) {
    const double d = g.length(e.first, e.second);
    if (std::abs(d - q) <= g.epsilon() * q) shape.near_degenerate = true;
    if (d > q) continue;
    const NeighborhoodView view(g, std::min(e.first, e.second));
    EdgeDecision dec = classify_edge(view, e.first, e.second, q);
    shape.near_degenerate = shape.near_degenerate || dec.near_degenerate;
    if (dec.verdict == Verdict::Boundary) shape.boundary_edges.insert(e);
    shape.decisions.emplace(e, std::move(dec));
  }
  detail::fill_shape_vertices(g, q, shape);
  return {std::move(shape), std::move(stats)};
}

}  // namespace dcshape

#endif  // DCSHAPE_LOCAL_ALPHA_HPP
