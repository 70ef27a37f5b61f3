#ifndef DCSHAPE_DISTANCE_GRAPH_HPP
#define DCSHAPE_DISTANCE_GRAPH_HPP

#include <algorithm>
#include <concepts>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dcshape/complex.hpp"
#include "dcshape/errors.hpp"
#include "dcshape/geometry.hpp"

namespace dcshape {

/** Symmetric unit-disk graph: vertices 0..n-1, an edge per pair within the
 *  communication range, each edge carrying its exact distance. Neighbor lists
 *  are kept ascending by index, so every traversal is deterministic.
 */
class DistanceGraph {
 public:
  DistanceGraph(int n, double range, double epsilon = kDefaultEpsilon)
      : n_(n), range_(range), epsilon_(epsilon), adj_(static_cast<std::size_t>(std::max(n, 0))) {
    if (n < 0) throw OutOfRange("DistanceGraph: vertex count must be non-negative");
    if (!(range > 0.0)) throw OutOfRange("DistanceGraph: range must be positive");
  }

  int order() const { return n_; }
  double range() const { return range_; }
  double epsilon() const { return epsilon_; }
  std::size_t edge_count() const { return edge_count_; }

  void add_edge(int i, int j, double dist) {
    check_vertex(i);
    check_vertex(j);
    if (i == j) throw OutOfRange("DistanceGraph: self-edges are not allowed");
    if (!(dist > 0.0) || dist > range_) {
      std::ostringstream msg;
      msg << "DistanceGraph: distance " << dist << " for (" << i << ", " << j
          << ") outside (0, " << range_ << "]";
      throw OutOfRange(msg.str());
    }
    insert_half(i, j, dist);
    insert_half(j, i, dist);
    ++edge_count_;
  }

  bool has_edge(int i, int j) const {
    check_vertex(i);
    check_vertex(j);
    return find(i, j) != nullptr;
  }

  /** Distance label of edge (i, j). @throws NotAnEdge when absent. */
  double length(int i, int j) const {
    check_vertex(i);
    check_vertex(j);
    if (const double* d = find(i, j)) return *d;
    std::ostringstream msg;
    msg << "(" << i << ", " << j << ") is not an edge";
    throw NotAnEdge(msg.str());
  }

  /** Neighbors of v with distances, ascending by neighbor index. */
  const std::vector<std::pair<int, double>>& neighbors(int v) const {
    check_vertex(v);
    return adj_[static_cast<std::size_t>(v)];
  }

  /** Vertices adjacent to both endpoints of edge (i, j), ascending.
   *  @throws NotAnEdge if (i, j) is not an edge. */
  std::vector<int> common_neighbors(int i, int j) const {
    length(i, j);  // validates the edge
    const auto& ni = neighbors(i);
    const auto& nj = neighbors(j);
    std::vector<int> out;
    auto a = ni.begin();
    auto b = nj.begin();
    while (a != ni.end() && b != nj.end()) {
      if (a->first < b->first) {
        ++a;
      } else if (b->first < a->first) {
        ++b;
      } else {
        if (a->first != i && a->first != j) out.push_back(a->first);
        ++a;
        ++b;
      }
    }
    return out;
  }

  /** All edges (i < j), ascending lexicographically. */
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (int i = 0; i < n_; ++i) {
      for (const auto& [j, d] : adj_[static_cast<std::size_t>(i)]) {
        if (j > i) out.emplace_back(i, j);
      }
    }
    return out;
  }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= n_) {
      std::ostringstream msg;
      msg << "vertex " << v << " outside [0, " << n_ << ")";
      throw OutOfRange(msg.str());
    }
  }

  const double* find(int i, int j) const {
    const auto& row = adj_[static_cast<std::size_t>(i)];
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const std::pair<int, double>& p, int v) { return p.first < v; });
    if (it != row.end() && it->first == j) return &it->second;
    return nullptr;
  }

  void insert_half(int i, int j, double dist) {
    auto& row = adj_[static_cast<std::size_t>(i)];
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const std::pair<int, double>& p, int v) { return p.first < v; });
    if (it != row.end() && it->first == j) {
      std::ostringstream msg;
      msg << "edge (" << i << ", " << j << ") already present";
      throw OutOfRange(msg.str());
    }
    row.insert(it, {j, dist});
  }

  int n_ = 0;
  double range_ = 0.0;
  double epsilon_ = kDefaultEpsilon;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<std::pair<int, double>>> adj_;
};

/** Anything that answers the distance queries the edge classifier needs. */
template <class G>
concept DistanceQueryable = requires(const G& g, int i, int j) {
  { g.order() } -> std::convertible_to<int>;
  { g.range() } -> std::convertible_to<double>;
  { g.epsilon() } -> std::convertible_to<double>;
  { g.has_edge(i, j) } -> std::convertible_to<bool>;
  { g.length(i, j) } -> std::convertible_to<double>;
  { g.common_neighbors(i, j) } -> std::convertible_to<std::vector<int>>;
};

/** Unit-disk graph of a point set at range r: an edge per pair with
 *  Euclidean distance <= r (the boundary case is included). */
inline DistanceGraph build_graph(const PointSet& ps, double r, NearDegeneracy* nd = nullptr) {
  if (!(r > 0.0)) throw OutOfRange("build_graph: range must be positive");
  DistanceGraph g(static_cast<int>(ps.size()), r, ps.epsilon);
  const double tol = ps.abs_tol();
  for (int i = 0; i < g.order(); ++i) {
    for (int j = i + 1; j < g.order(); ++j) {
      const double d = (ps[i] - ps[j]).norm();
      if (std::abs(d - r) <= tol) {
        std::ostringstream what;
        what << "pair (" << i << ", " << j << ") within tolerance of range";
        note_near(nd, std::abs(d - r), what.str());
      }
      if (d <= r) g.add_edge(i, j, d);
    }
  }
  return g;
}

struct EdgeRecord {
  int i = 0;
  int j = 0;
  double dist = 0.0;
};

/** Builds a graph from explicit edge records (no coordinates involved).
 *  Duplicate records agreeing within epsilon * r are merged (first one kept).
 *
 *  @throws InconsistentDuplicate when duplicates disagree beyond tolerance.
 *  @throws OutOfRange for bad indices or distances outside (0, r].
 */
inline DistanceGraph load_graph(const std::vector<EdgeRecord>& records, int n, double r,
                                double epsilon = kDefaultEpsilon) {
  DistanceGraph g(n, r, epsilon);
  for (const EdgeRecord& rec : records) {
    if (g.has_edge(rec.i, rec.j)) {
      const double prev = g.length(rec.i, rec.j);
      if (std::abs(prev - rec.dist) > epsilon * r) {
        std::ostringstream msg;
        msg << "duplicate records for (" << rec.i << ", " << rec.j << ") disagree: " << prev
            << " vs " << rec.dist;
        throw InconsistentDuplicate(msg.str());
      }
      continue;
    }
    g.add_edge(rec.i, rec.j, rec.dist);
  }
  return g;
}

/** Component label per vertex (labels are the smallest vertex id in the
 *  component) for the subgraph of edges with length <= q. */
inline std::vector<int> component_labels(const DistanceGraph& g, double q) {
  std::vector<int> label(static_cast<std::size_t>(g.order()), -1);
  for (int s = 0; s < g.order(); ++s) {
    if (label[static_cast<std::size_t>(s)] >= 0) continue;
    std::vector<int> stack{s};
    label[static_cast<std::size_t>(s)] = s;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const auto& [u, d] : g.neighbors(v)) {
        if (d <= q && label[static_cast<std::size_t>(u)] < 0) {
          label[static_cast<std::size_t>(u)] = s;
          stack.push_back(u);
        }
      }
    }
  }
  return label;
}

inline int component_count(const DistanceGraph& g, double q) {
  const auto labels = component_labels(g, q);
  std::set<int> uniq(labels.begin(), labels.end());
  return static_cast<int>(uniq.size());
}

/** Text form: header "n r", then one "i j dist" line per edge, ascending. */
inline void write_edge_list(std::ostream& out, const DistanceGraph& g) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", g.range());
  out << g.order() << " " << buf << "\n";
  for (const Edge& e : g.edges()) {
    std::snprintf(buf, sizeof(buf), "%.17g", g.length(e.first, e.second));
    out << e.first << " " << e.second << " " << buf << "\n";
  }
}

inline DistanceGraph read_edge_list(std::istream& in, double epsilon = kDefaultEpsilon) {
  int n = 0;
  double r = 0.0;
  if (!(in >> n >> r)) throw OutOfRange("edge list: missing 'n r' header");
  std::vector<EdgeRecord> records;
  EdgeRecord rec;
  while (in >> rec.i >> rec.j >> rec.dist) records.push_back(rec);
  return load_graph(records, n, r, epsilon);
}

}  // namespace dcshape

#endif  // DCSHAPE_DISTANCE_GRAPH_HPP
