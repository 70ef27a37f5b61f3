#ifndef DCSHAPE_COLLAPSE_HPP
#define DCSHAPE_COLLAPSE_HPP

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dcshape/complex.hpp"
#include "dcshape/complexes.hpp"
#include "dcshape/errors.hpp"
#include "dcshape/geometry.hpp"

namespace dcshape {

/** Pairs every surplus edge (Delaunay–Čech minus alpha) with the unique
 *  incident triangle whose angle opposite the edge is obtuse. The result is a
 *  bijection onto the surplus triangles.
 *
 *  @throws PairingViolation if uniqueness, membership, injectivity, or
 *          surjectivity fails (possible only within epsilon of degeneracy).
 */
inline std::map<Edge, Tri> build_pairing(const PointSet& ps, double q,
                                         NearDegeneracy* nd = nullptr) {
  const Complex2 alpha = alpha_complex(ps, q, nd);
  const Complex2 dc = delaunay_cech(ps, q, nd);
  const Complex2 ambient = delaunay_flag(ps, q, nd);

  std::set<Edge> surplus_edges;
  std::set_difference(dc.edges.begin(), dc.edges.end(), alpha.edges.begin(), alpha.edges.end(),
                      std::inserter(surplus_edges, surplus_edges.end()));
  std::set<Tri> surplus_tris;
  std::set_difference(dc.triangles.begin(), dc.triangles.end(), alpha.triangles.begin(),
                      alpha.triangles.end(), std::inserter(surplus_tris, surplus_tris.end()));

  std::map<Edge, Tri> pairing;
  std::set<Tri> used;
  for (const Edge& e : surplus_edges) {
    const IncidentTriangles sets = incident_triangle_sets(ps, q, e, ambient, nd);
    if (sets.obtuse_opposite.size() != 1) {
      std::ostringstream msg;
      msg << "surplus edge (" << e.first << ", " << e.second << ") has "
          << sets.obtuse_opposite.size() << " obtuse-opposite triangles, expected 1";
      throw PairingViolation(msg.str());
    }
    const Tri t = sets.obtuse_opposite.front();
    if (!surplus_tris.count(t)) {
      std::ostringstream msg;
      msg << "pair of surplus edge (" << e.first << ", " << e.second
          << ") is not a surplus triangle";
      throw PairingViolation(msg.str());
    }
    if (!used.insert(t).second) {
      std::ostringstream msg;
      msg << "triangle (" << t[0] << ", " << t[1] << ", " << t[2] << ") paired twice";
      throw PairingViolation(msg.str());
    }
    pairing.emplace(e, t);
  }
  if (pairing.size() != surplus_tris.size()) {
    std::ostringstream msg;
    msg << "pairing covers " << pairing.size() << " of " << surplus_tris.size()
        << " surplus triangles";
    throw PairingViolation(msg.str());
  }
  return pairing;
}

struct CollapseTrace {
  Complex2 start;  // Delaunay–Čech complex
  Complex2 end;    // what remains after all collapses
  std::vector<std::pair<Edge, Tri>> steps;
};

/** Collapses the Delaunay–Čech complex down to the alpha complex through
 *  elementary free-pair removals, in ascending edge order among the pairs
 *  that are currently free. Each recorded step removes an edge that bounds
 *  exactly one remaining triangle, together with that triangle.
 *
 *  @throws StuckCollapse if pairs remain but none is free.
 */
inline CollapseTrace collapse_to_alpha(const PointSet& ps, double q, NearDegeneracy* nd = nullptr) {
  CollapseTrace trace;
  trace.start = delaunay_cech(ps, q, nd);
  std::map<Edge, Tri> pending = build_pairing(ps, q, nd);

  Complex2 cur = trace.start;
  while (!pending.empty()) {
    bool progressed = false;
    for (auto it = pending.begin(); it != pending.end(); ++it) {
      if (cur.triangle_count_of_edge(it->first) != 1) continue;
      // The one remaining triangle on a pending edge is its partner: partners
      // are only ever removed together with their own edge.
      cur.edges.erase(it->first);
      cur.triangles.erase(it->second);
      trace.steps.push_back(*it);
      pending.erase(it);
      progressed = true;
      break;
    }
    if (!progressed) {
      throw StuckCollapse("no free pair available among pending collapses", pending.size());
    }
  }
  trace.end = std::move(cur);
  return trace;
}

/** One line per step: "collapse e(i,j) t(i,j,k)". */
inline std::string trace_to_text(const CollapseTrace& trace) {
  std::ostringstream out;
  for (const auto& [e, t] : trace.steps) {
    out << "collapse e(" << e.first << "," << e.second << ") t(" << t[0] << "," << t[1] << ","
        << t[2] << ")\n";
  }
  return out.str();
}

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  BettiPair betti_alpha, betti_dc, betti_cech;
  std::size_t pairing_size = 0;
  std::size_t trace_length = 0;
  bool near_degenerate = false;
  std::vector<CheckResult> checks;

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  }
};

/** Runs the full equivalence audit for one instance: the complex nesting
 *  chain, the surplus pairing, the collapse endpoint, and the homology
 *  agreement between the alpha and Delaunay–Čech complexes. Errors from any
 *  stage become failed checks instead of escaping. */
inline VerifyReport verify_equivalence(const PointSet& ps, double q) {
  VerifyReport report;
  NearDegeneracy nd;
  auto add = [&report](const std::string& name, bool pass, const std::string& detail = "") {
    report.checks.push_back({name, pass, detail});
  };

  try {
    const Complex2 alpha = alpha_complex(ps, q, &nd);
    const Complex2 dc = delaunay_cech(ps, q, &nd);
    const Complex2 ambient = delaunay_flag(ps, q, &nd);
    const Complex2 dt = delaunay_skeleton(ps);
    const Complex2 cech = cech2(ps, q, &nd);
    const DistanceGraph gq = ps.size() > 0 ? build_graph(ps, q, &nd) : DistanceGraph(0, q);
    const Complex2 flag = flag2(gq);

    add("alpha_in_delaunay_cech", is_subcomplex(alpha, dc));
    add("delaunay_cech_in_delaunay_flag", is_subcomplex(dc, ambient));
    add("delaunay_flag_in_delaunay", is_subcomplex(ambient, dt));
    add("cech_in_flag", is_subcomplex(cech, flag));

    report.betti_alpha = betti(alpha);
    report.betti_dc = betti(dc);
    report.betti_cech = betti(cech);

    {
      std::ostringstream detail;
      detail << "alpha (" << report.betti_alpha.b0 << ", " << report.betti_alpha.b1 << ") vs dc ("
             << report.betti_dc.b0 << ", " << report.betti_dc.b1 << ")";
      add("betti_alpha_equals_dc", report.betti_alpha == report.betti_dc, detail.str());
    }
    {
      const int comps = component_count(gq, q);
      std::ostringstream detail;
      detail << "b0 " << report.betti_alpha.b0 << " vs components " << comps;
      add("b0_matches_components", report.betti_alpha.b0 == comps, detail.str());
    }
    {
      std::ostringstream detail;
      detail << "alpha b1 " << report.betti_alpha.b1 << " vs cech b1 " << report.betti_cech.b1;
      add("b1_matches_cech", report.betti_alpha.b1 == report.betti_cech.b1, detail.str());
    }

    const std::map<Edge, Tri> pairing = build_pairing(ps, q, &nd);
    report.pairing_size = pairing.size();
    const std::size_t surplus_edges = dc.edges.size() - alpha.edges.size();
    const std::size_t surplus_tris = dc.triangles.size() - alpha.triangles.size();
    {
      std::ostringstream detail;
      detail << pairing.size() << " pairs for " << surplus_edges << " edges / " << surplus_tris
             << " triangles";
      add("pairing_bijective", pairing.size() == surplus_edges && pairing.size() == surplus_tris,
          detail.str());
    }

    const CollapseTrace trace = collapse_to_alpha(ps, q, &nd);
    report.trace_length = trace.steps.size();
    add("collapse_reaches_alpha", trace.end == alpha);
    add("trace_length_matches", trace.steps.size() == pairing.size());
  } catch (const Error& err) {
    add("no_errors", false, err.what());
  }

  report.near_degenerate = nd.flagged();
  return report;
}

}  // namespace dcshape

#endif  // DCSHAPE_COLLAPSE_HPP
