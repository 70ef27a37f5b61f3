#ifndef DCSHAPE_COMPLEX_HPP
#define DCSHAPE_COMPLEX_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dcshape/errors.hpp"

namespace dcshape {

using Edge = std::pair<int, int>;
using Tri = std::array<int, 3>;

inline Edge make_edge(int i, int j) {
  if (i == j) throw OutOfRange("edge endpoints must differ");
  return i < j ? Edge{i, j} : Edge{j, i};
}

inline Tri make_tri(int i, int j, int k) {
  Tri t{i, j, k};
  std::sort(t.begin(), t.end());
  if (t[0] == t[1] || t[1] == t[2]) throw OutOfRange("triangle vertices must be distinct");
  return t;
}

inline std::array<Edge, 3> tri_edges(const Tri& t) {
  return {make_edge(t[0], t[1]), make_edge(t[0], t[2]), make_edge(t[1], t[2])};
}

/** Two-dimensional simplicial complex over integer vertex ids.
 *
 *  All members are kept sorted; the add_* operations insert faces so the
 *  complex stays closed. Iteration order is therefore deterministic.
 */
struct Complex2 {
  std::set<int> vertices;
  std::set<Edge> edges;
  std::set<Tri> triangles;

  void add_vertex(int v) { vertices.insert(v); }

  void add_edge(int i, int j) {
    const Edge e = make_edge(i, j);
    edges.insert(e);
    vertices.insert(e.first);
    vertices.insert(e.second);
  }

  void add_triangle(int i, int j, int k) {
    const Tri t = make_tri(i, j, k);
    triangles.insert(t);
    for (const Edge& e : tri_edges(t)) add_edge(e.first, e.second);
  }

  bool has_vertex(int v) const { return vertices.count(v) > 0; }
  bool has_edge(int i, int j) const { return edges.count(make_edge(i, j)) > 0; }
  bool has_triangle(int i, int j, int k) const { return triangles.count(make_tri(i, j, k)) > 0; }

  bool empty() const { return vertices.empty() && edges.empty() && triangles.empty(); }

  /** True when every face of every simplex is itself present. */
  bool closed() const {
    for (const Edge& e : edges) {
      if (!vertices.count(e.first) || !vertices.count(e.second)) return false;
    }
    for (const Tri& t : triangles) {
      for (const Edge& e : tri_edges(t)) {
        if (!edges.count(e)) return false;
      }
    }
    return true;
  }

  /** Number of triangles having e as a face. */
  int triangle_count_of_edge(const Edge& e) const {
    int count = 0;
    for (const Tri& t : triangles) {
      for (const Edge& f : tri_edges(t)) {
        if (f == e) {
          ++count;
          break;
        }
      }
    }
    return count;
  }

  bool operator==(const Complex2&) const = default;
};

/** Simplex-wise intersection. Closed inputs give a closed result. */
inline Complex2 intersect(const Complex2& a, const Complex2& b) {
  Complex2 out;
  std::set_intersection(a.vertices.begin(), a.vertices.end(), b.vertices.begin(), b.vertices.end(),
                        std::inserter(out.vertices, out.vertices.end()));
  std::set_intersection(a.edges.begin(), a.edges.end(), b.edges.begin(), b.edges.end(),
                        std::inserter(out.edges, out.edges.end()));
  std::set_intersection(a.triangles.begin(), a.triangles.end(), b.triangles.begin(),
                        b.triangles.end(), std::inserter(out.triangles, out.triangles.end()));
  return out;
}

inline bool is_subcomplex(const Complex2& sub, const Complex2& sup) {
  return std::includes(sup.vertices.begin(), sup.vertices.end(), sub.vertices.begin(),
                       sub.vertices.end()) &&
         std::includes(sup.edges.begin(), sup.edges.end(), sub.edges.begin(), sub.edges.end()) &&
         std::includes(sup.triangles.begin(), sup.triangles.end(), sub.triangles.begin(),
                       sub.triangles.end());
}

/** Boundary of a 2-complex: edges that bound at most one triangle, their
 *  endpoints, and vertices that are faces of nothing else. No triangles.
 *
 *  @throws OutOfRange if k is not closed under faces.
 */
inline Complex2 boundary_shape(const Complex2& k) {
  if (!k.closed()) throw OutOfRange("boundary_shape: complex is not closed under faces");
  Complex2 out;
  std::map<Edge, int> incident;
  for (const Edge& e : k.edges) incident[e] = 0;
  for (const Tri& t : k.triangles) {
    for (const Edge& e : tri_edges(t)) ++incident[e];
  }
  for (const auto& [e, count] : incident) {
    if (count <= 1) out.add_edge(e.first, e.second);
  }
  std::set<int> covered;
  for (const Edge& e : k.edges) {
    covered.insert(e.first);
    covered.insert(e.second);
  }
  for (int v : k.vertices) {
    if (!covered.count(v)) out.add_vertex(v);  // isolated vertices are their own boundary
  }
  return out;
}

/** Rank of a GF(2) matrix. Rows are packed into 64-bit words internally;
 *  elimination is plain Gauss without pivot magic (all entries are bits). */
inline int rank_mod2(const Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>& m) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  if (rows == 0 || cols == 0) return 0;
  const int words = (cols + 63) / 64;
  std::vector<std::vector<std::uint64_t>> packed(rows, std::vector<std::uint64_t>(words, 0));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (m(r, c) & 1) packed[r][c / 64] |= (std::uint64_t{1} << (c % 64));
    }
  }
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    const int word = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (packed[r][word] & bit) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(packed[rank], packed[pivot]);
    for (int r = 0; r < rows; ++r) {
      if (r != rank && (packed[r][word] & bit)) {
        for (int w = 0; w < words; ++w) packed[r][w] ^= packed[rank][w];
      }
    }
    ++rank;
  }
  return rank;
}

struct BettiPair {
  int b0 = 0;
  int b1 = 0;
  bool operator==(const BettiPair&) const = default;
};

/** Betti numbers b0, b1 over GF(2) from boundary-matrix ranks:
 *  b0 = #V - rank(d1), b1 = #E - rank(d1) - rank(d2). */
inline BettiPair betti(const Complex2& k) {
  using Mat = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;
  std::map<int, int> vix;
  std::map<Edge, int> eix;
  int idx = 0;
  for (int v : k.vertices) vix[v] = idx++;
  idx = 0;
  for (const Edge& e : k.edges) eix[e] = idx++;

  const int nv = static_cast<int>(k.vertices.size());
  const int ne = static_cast<int>(k.edges.size());
  const int nt = static_cast<int>(k.triangles.size());

  Mat d1 = Mat::Zero(ne, std::max(nv, 1));
  for (const auto& [e, r] : eix) {
    d1(r, vix.at(e.first)) = 1;
    d1(r, vix.at(e.second)) = 1;
  }
  Mat d2 = Mat::Zero(ne == 0 ? 1 : ne, std::max(nt, 1));
  {
    int col = 0;
    for (const Tri& t : k.triangles) {
      for (const Edge& e : tri_edges(t)) d2(eix.at(e), col) = 1;
      ++col;
    }
  }
  const int r1 = (ne == 0 || nv == 0) ? 0 : rank_mod2(d1);
  const int r2 = (nt == 0 || ne == 0) ? 0 : rank_mod2(d2);
  return BettiPair{nv - r1, ne - r1 - r2};
}

/** One-line-per-simplex text form: "v i", "e i j", "t i j k", sorted. */
inline std::string to_text(const Complex2& k) {
  std::ostringstream out;
  for (int v : k.vertices) out << "v " << v << "\n";
  for (const Edge& e : k.edges) out << "e " << e.first << " " << e.second << "\n";
  for (const Tri& t : k.triangles) out << "t " << t[0] << " " << t[1] << " " << t[2] << "\n";
  return out.str();
}

inline Complex2 complex_from_text(std::istream& in) {
  Complex2 k;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string tag;
    row >> tag;
    int a = 0, b = 0, c = 0;
    if (tag == "v" && (row >> a)) {
      k.add_vertex(a);
    } else if (tag == "e" && (row >> a >> b)) {
      k.add_edge(a, b);
    } else if (tag == "t" && (row >> a >> b >> c)) {
      k.add_triangle(a, b, c);
    } else {
      throw OutOfRange("complex_from_text: unrecognized line: " + line);
    }
  }
  return k;
}

}  // namespace dcshape

#endif  // DCSHAPE_COMPLEX_HPP
