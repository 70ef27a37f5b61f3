#include <doctest.h>

#include <set>
#include <sstream>

#include "dcshape/collapse.hpp"
#include "dcshape/generator.hpp"

using namespace dcshape;

namespace {

PointSet random_instance(std::uint64_t seed, int n) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.n = n;
  return generate_points(cfg).points;
}

}  // namespace

TEST_CASE("acute triangle just past its circumdiameter: nothing to collapse") {
  // Sides 1, 1.3, 1.3 all fit under q = 1.35, but the circumradius 1.69/2.4
  // = 0.704 exceeds q/2 = 0.675; the triangle is acute, so its smallest
  // enclosing radius is the same 0.704: the triple is in neither complex and
  // the Delaunay-Cech complex already equals the alpha complex.
  const PointSet ps = make_point_set({{0, 0}, {1, 0}, {0.5, 1.2}});
  const double q = 1.35;
  const Complex2 a = alpha_complex(ps, q);
  const Complex2 dc = delaunay_cech(ps, q);
  CHECK(a == dc);
  CHECK(a.triangles.empty());
  CHECK(a.edges.size() == 3);

  CHECK(build_pairing(ps, q).empty());
  const CollapseTrace trace = collapse_to_alpha(ps, q);
  CHECK(trace.steps.empty());
  CHECK(trace.end == a);
}

TEST_CASE("obtuse triangle collapses in one step") {
  // Enclosing radius 0.5 <= q/2 = 0.6 puts the triple in the Cech complex,
  // but circumradius 0.725 > 0.6 keeps it out of the alpha complex: one
  // surplus triangle paired with its long edge.
  const PointSet ps = make_point_set({{0, 0}, {1, 0}, {0.5, 0.2}});
  const double q = 1.2;
  const Complex2 a = alpha_complex(ps, q);
  const Complex2 dc = delaunay_cech(ps, q);
  CHECK(dc.triangles.size() == 1);
  CHECK(a.triangles.empty());
  CHECK(a.edges.size() == 2);      // the two short sides survive
  CHECK(!a.has_edge(0, 1));        // the long edge loses its witness

  const auto pairing = build_pairing(ps, q);
  REQUIRE(pairing.size() == 1);
  CHECK(pairing.begin()->first == Edge{0, 1});
  CHECK(pairing.begin()->second == Tri{0, 1, 2});

  const CollapseTrace trace = collapse_to_alpha(ps, q);
  REQUIRE(trace.steps.size() == 1);
  CHECK(trace.end == a);
  CHECK(trace_to_text(trace) == "collapse e(0,1) t(0,1,2)\n");
  CHECK(betti(trace.start) == betti(trace.end));
}

TEST_CASE("pairing is a bijection between surplus edges and triangles") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const PointSet ps = random_instance(seed, 35);
    for (const double q : {0.3, 0.2}) {
      NearDegeneracy nd;
      const Complex2 a = alpha_complex(ps, q, &nd);
      const Complex2 dc = delaunay_cech(ps, q, &nd);
      const auto pairing = build_pairing(ps, q, &nd);
      if (nd.flagged()) continue;

      std::set<Edge> surplus_edges;
      std::set_difference(dc.edges.begin(), dc.edges.end(), a.edges.begin(), a.edges.end(),
                          std::inserter(surplus_edges, surplus_edges.end()));
      std::set<Tri> surplus_tris;
      std::set_difference(dc.triangles.begin(), dc.triangles.end(), a.triangles.begin(),
                          a.triangles.end(), std::inserter(surplus_tris, surplus_tris.end()));

      std::set<Edge> keys;
      std::set<Tri> values;
      for (const auto& [e, t] : pairing) {
        keys.insert(e);
        values.insert(t);
      }
      CHECK(keys == surplus_edges);
      CHECK(values == surplus_tris);          // injective and onto
      CHECK(values.size() == pairing.size());
    }
  }
}

TEST_CASE("greedy collapse reaches the alpha complex with correct free pairs") {
  for (std::uint64_t seed = 16; seed <= 30; ++seed) {
    const PointSet ps = random_instance(seed, 35);
    const double q = 0.26;
    NearDegeneracy nd;
    const Complex2 a = alpha_complex(ps, q, &nd);
    const CollapseTrace trace = collapse_to_alpha(ps, q, &nd);
    if (nd.flagged()) continue;

    CHECK(trace.end == a);
    CHECK(betti(trace.start) == betti(trace.end));

    // Replay: every removed edge must bound exactly one triangle at its turn,
    // and that triangle must be its recorded partner.
    Complex2 cur = trace.start;
    for (const auto& [e, t] : trace.steps) {
      REQUIRE(cur.triangle_count_of_edge(e) == 1);
      REQUIRE(cur.triangles.count(t) == 1);
      cur.edges.erase(e);
      cur.triangles.erase(t);
    }
    CHECK(cur == a);
  }
}

TEST_CASE("verify_equivalence passes on random instances") {
  for (std::uint64_t seed = 41; seed <= 50; ++seed) {
    const PointSet ps = random_instance(seed, 30);
    const VerifyReport report = verify_equivalence(ps, 0.24);
    if (report.near_degenerate) continue;
    for (const CheckResult& c : report.checks) {
      INFO(c.name << ": " << c.detail);
      CHECK(c.pass);
    }
    CHECK(report.trace_length == report.pairing_size);
  }
}

TEST_CASE("verify_equivalence on edge-case inputs") {
  SUBCASE("empty point set: all checks hold vacuously") {
    const PointSet ps = make_point_set({});
    const VerifyReport report = verify_equivalence(ps, 0.5);
    CHECK(report.all_pass());
    CHECK(report.betti_alpha == BettiPair{0, 0});
  }
  SUBCASE("two far clusters: two components, coherent homology") {
    const PointSet ps = make_point_set(
        {{0, 0}, {0.1, 0}, {0.03, 0.09}, {5, 5}, {5.11, 5}, {5.02, 5.08}});
    const VerifyReport report = verify_equivalence(ps, 0.3);
    for (const CheckResult& c : report.checks) {
      INFO(c.name << ": " << c.detail);
      CHECK(c.pass);
    }
    CHECK(report.betti_alpha.b0 == 2);
  }
}

TEST_CASE("collapse trace serializes one step per line") {
  const PointSet ps = random_instance(8, 30);
  const CollapseTrace trace = collapse_to_alpha(ps, 0.3);
  const std::string text = trace_to_text(trace);
  std::istringstream in(text);
  std::string word;
  std::size_t lines = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++lines;
    std::istringstream ls(line);
    ls >> word;
    CHECK(word == "collapse");
    ls >> word;
    CHECK(word.substr(0, 2) == "e(");
    ls >> word;
    CHECK(word.substr(0, 2) == "t(");
  }
  CHECK(lines == trace.steps.size());
}
