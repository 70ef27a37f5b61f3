#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "dcshape/complexes.hpp"
#include "dcshape/generator.hpp"
#include "dcshape/local_alpha.hpp"
#include "nerve_oracle.hpp"

using namespace dcshape;
using Eigen::Vector2d;

namespace {

PointSet random_instance(std::uint64_t seed, int n) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.n = n;
  return generate_points(cfg).points;
}

}  // namespace

TEST_CASE("equilateral triangle: every edge is boundary") {
  const PointSet ps = make_point_set({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
  const DistanceGraph g = build_graph(ps, 1.0);

  SUBCASE("at q equal to the side length the neighbor is below the annulus") {
    const EdgeDecision dec = classify_edge(g, 0, 1, 1.0);
    CHECK(dec.verdict == Verdict::Boundary);
    CHECK(dec.reason == Reason::NoAnnulusNode);  // phi = pi/3 <= theta = pi/2
  }
  SUBCASE("full shape") {
    const LocalShape shape = alpha_shape_local(g, 1.0);
    CHECK(shape.boundary_edges.size() == 3);
    CHECK(shape.boundary_vertices == std::set<int>{0, 1, 2});
  }
}

TEST_CASE("equilateral triangle at a larger scale: annulus node, still boundary") {
  const double side = 1.0, r = 1.2, q = 1.2;
  const PointSet ps = make_point_set({{0, 0}, {side, 0}, {0.5, std::sqrt(3.0) / 2}});
  const DistanceGraph g = build_graph(ps, r);
  const EdgeDecision dec = classify_edge(g, 0, 1, q);
  // theta(1, 1.2) ~ 0.985 < phi = pi/3 ~ 1.047 < pi - theta: node 2 occupies one circle.
  CHECK(dec.verdict == Verdict::Boundary);
  CHECK(dec.reason == Reason::OneCircleOnly);
  CHECK(dec.evidence == std::vector<int>{2});
}

TEST_CASE("a node in the lens kills the edge") {
  const PointSet ps = make_point_set({{0, 0}, {0.2, 0}, {0.1, 0.001}});
  const DistanceGraph g = build_graph(ps, 1.0);
  const EdgeDecision dec = classify_edge(g, 0, 1, 1.0);
  CHECK(dec.verdict == Verdict::NotBoundary);
  CHECK(dec.reason == Reason::NodeInLens);
  CHECK(dec.evidence == std::vector<int>{2});

  // The coordinate oracle agrees: the edge is not even in the shape complex.
  const Complex2 alpha = alpha_complex(ps, 1.0);
  CHECK(!alpha.has_edge(0, 1));
}

TEST_CASE("two annulus nodes on opposite circles: side test fires") {
  // Edge of length 0.6 at q = 0.8; probe circles have radius 0.4 and centers
  // 0.2646 off the midpoint. The two extra nodes sit symmetrically in the two
  // circles and are adjacent, so the verdict comes from the angle comparison.
  const PointSet ps = make_point_set({{0, 0}, {0.6, 0}, {0.3, 0.35}, {0.3, -0.35}});
  const DistanceGraph g = build_graph(ps, 0.8);
  const EdgeDecision dec = classify_edge(g, 0, 1, 0.8);
  CHECK(dec.verdict == Verdict::NotBoundary);
  CHECK(dec.reason == Reason::BothCirclesOccupied);
  CHECK(dec.evidence == std::vector<int>{2, 3});
  CHECK(testsupport::boundary_by_circle_emptiness(ps, 0, 1, 0.8) == false);
}

TEST_CASE("two annulus nodes in the same circle: boundary survives") {
  const PointSet ps = make_point_set({{0, 0}, {0.6, 0}, {0.3, 0.35}, {0.25, 0.30}});
  const DistanceGraph g = build_graph(ps, 0.8);
  const EdgeDecision dec = classify_edge(g, 0, 1, 0.8);
  CHECK(dec.verdict == Verdict::Boundary);
  CHECK(dec.reason == Reason::OneCircleOnly);
  CHECK(testsupport::boundary_by_circle_emptiness(ps, 0, 1, 0.8) == true);
}

TEST_CASE("non-adjacent annulus nodes prove both circles occupied") {
  // The two extra nodes are 0.9936 apart with range 0.8: no edge between
  // them, which is only possible when they straddle the two circles.
  const PointSet ps = make_point_set({{0, 0}, {0.6, 0}, {0.62, 0.38}, {-0.02, -0.38}});
  const DistanceGraph g = build_graph(ps, 0.8);
  REQUIRE(!g.has_edge(2, 3));
  const EdgeDecision dec = classify_edge(g, 0, 1, 0.8);
  CHECK(dec.verdict == Verdict::NotBoundary);
  CHECK(dec.reason == Reason::BothCirclesOccupied);
}

TEST_CASE("scale and edge-length guards") {
  const PointSet ps = make_point_set({{0, 0}, {0.9, 0}, {0.45, 0.4}});
  const DistanceGraph g = build_graph(ps, 1.0);
  CHECK_THROWS_AS(classify_edge(g, 0, 1, 2.0), ParameterTooLarge);
  CHECK_THROWS_AS(classify_edge(g, 0, 1, 0.5), ChordTooLong);  // edge longer than q
  CHECK_THROWS_AS(classify_edge(g, 0, 1, 0.0), OutOfRange);
  CHECK_THROWS_AS(alpha_shape_local(g, 2.0), ParameterTooLarge);

  DistanceGraph sparse(3, 1.0);
  sparse.add_edge(0, 1, 0.4);
  CHECK_THROWS_AS(classify_edge(sparse, 0, 2, 0.5), NotAnEdge);
}

TEST_CASE("verdicts agree with both coordinate oracles on random instances") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const PointSet ps = random_instance(seed, 40);
    const double r = 0.25;
    NearDegeneracy nd;
    const DistanceGraph g = build_graph(ps, r, &nd);
    for (const double q : {0.25, 0.2, 0.15}) {
      const LocalShape shape = alpha_shape_local(g, q);
      if (shape.near_degenerate || nd.flagged()) continue;

      NearDegeneracy nd_oracle;
      const Complex2 bd = boundary_shape(alpha_complex(ps, q, &nd_oracle));
      if (nd_oracle.flagged()) continue;

      for (const auto& [e, dec] : shape.decisions) {
        const bool local_says = dec.verdict == Verdict::Boundary;
        CHECK(local_says == (bd.edges.count(e) > 0));
        CHECK(local_says == testsupport::boundary_by_circle_emptiness(ps, e.first, e.second, q));
        ++checked;
      }
      CHECK(shape.boundary_edges == bd.edges);
      CHECK(shape.boundary_vertices == bd.vertices);
    }
  }
  CHECK(checked > 3000);  // the sweep must actually exercise many edges
}

TEST_CASE("verdict is independent of the neighbor scan order") {
  for (std::uint64_t seed = 2; seed <= 6; ++seed) {
    const PointSet ps = random_instance(seed, 35);
    const DistanceGraph g = build_graph(ps, 0.3);
    for (const Edge& e : g.edges()) {
      if (g.length(e.first, e.second) > 0.3) continue;
      std::vector<int> order = g.common_neighbors(e.first, e.second);
      if (order.size() < 2) continue;
      const Verdict base =
          detail::classify_edge_ordered(g, e.first, e.second, 0.3, order).verdict;
      std::reverse(order.begin(), order.end());
      CHECK(detail::classify_edge_ordered(g, e.first, e.second, 0.3, order).verdict == base);
      std::rotate(order.begin(), order.begin() + 1, order.end());
      CHECK(detail::classify_edge_ordered(g, e.first, e.second, 0.3, order).verdict == base);
    }
  }
}

TEST_CASE("classification only touches pairs inside the edge neighborhood") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const PointSet ps = random_instance(seed, 40);
    const DistanceGraph g = build_graph(ps, 0.3);
    const testsupport::LoggingGraph logged(g);
    for (const Edge& e : g.edges()) {
      if (g.length(e.first, e.second) > 0.25) continue;
      logged.reset();
      classify_edge(logged, e.first, e.second, 0.25);
      const std::set<Edge> allowed = testsupport::allowed_pairs(g, e.first, e.second);
      for (const Edge& pair : logged.touched()) {
        CHECK(allowed.count(pair) == 1);
      }
    }
  }
}

TEST_CASE("NeighborhoodView answers only what the protocol delivered") {
  DistanceGraph g(4, 1.0);
  g.add_edge(0, 1, 0.5);
  g.add_edge(1, 2, 0.5);
  g.add_edge(2, 3, 0.5);

  const NeighborhoodView view(g, 0);
  CHECK(view.length(0, 1) == doctest::Approx(0.5));
  CHECK(view.length(1, 2) == doctest::Approx(0.5));  // endpoint 1 is a neighbor of 0
  CHECK(view.has_edge(1, 2));
  CHECK_THROWS_AS(view.length(2, 3), OutOfRange);          // neither endpoint known to 0
  CHECK_THROWS_AS(view.common_neighbors(1, 2), OutOfRange);  // needs both lists
  CHECK(view.common_neighbors(0, 1).empty());
}

TEST_CASE("distributed simulation on a three-node path") {
  const PointSet ps = make_point_set({{0, 0}, {1, 0}, {2, 0}});
  const DistanceGraph g = build_graph(ps, 1.1);
  const auto [shape, stats] = simulate_distributed(g, 1.05);

  CHECK(stats.rounds == 2);
  CHECK(stats.messages == 4);  // one list per directed edge
  CHECK(stats.per_node.at(0) == 1);
  CHECK(stats.per_node.at(1) == 2);
  CHECK(stats.per_node.at(2) == 1);

  CHECK(shape.boundary_edges == std::set<Edge>{{0, 1}, {1, 2}});
  CHECK(shape.boundary_vertices == std::set<int>{0, 1, 2});
}

TEST_CASE("distributed simulation trivia") {
  SUBCASE("single vertex: no messages, no rounds, vertex is its own boundary") {
    const PointSet ps = make_point_set({{0.5, 0.5}});
    const DistanceGraph g = build_graph(ps, 1.0);
    const auto [shape, stats] = simulate_distributed(g, 1.0);
    CHECK(stats.rounds == 0);
    CHECK(stats.messages == 0);
    CHECK(shape.boundary_vertices == std::set<int>{0});
    CHECK(shape.boundary_edges.empty());
  }
  SUBCASE("vertices isolated at scale q but connected at range r") {
    const PointSet ps = make_point_set({{0, 0}, {0.8, 0}});
    const DistanceGraph g = build_graph(ps, 1.0);
    const auto [shape, stats] = simulate_distributed(g, 0.5);
    CHECK(stats.messages == 2);
    CHECK(shape.boundary_edges.empty());
    CHECK(shape.boundary_vertices == std::set<int>{0, 1});  // both isolated at q
  }
}

TEST_CASE("distributed run reproduces the centralized shape") {
  for (std::uint64_t seed = 10; seed <= 20; ++seed) {
    const PointSet ps = random_instance(seed, 35);
    const DistanceGraph g = build_graph(ps, 0.3);
    const LocalShape direct = alpha_shape_local(g, 0.22);
    const auto [shape, stats] = simulate_distributed(g, 0.22);
    CHECK(shape.boundary_edges == direct.boundary_edges);
    CHECK(shape.boundary_vertices == direct.boundary_vertices);
    CHECK(stats.messages == 2 * g.edge_count());
  }
}
