#include <doctest.h>

#include <cmath>

#include "dcshape/complexes.hpp"
#include "dcshape/generator.hpp"
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

TEST_CASE("alpha complex of an equilateral triangle fills at the circumdiameter") {
  const PointSet ps = make_point_set({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
  // Circumradius 1/sqrt(3) ~ 0.577: hollow below q = 2/sqrt(3), filled above.
  SUBCASE("hollow at q = 1") {
    const Complex2 a = alpha_complex(ps, 1.0);
    CHECK(a.edges.size() == 3);
    CHECK(a.triangles.empty());
    CHECK(betti(a) == BettiPair{1, 1});
  }
  SUBCASE("filled at q = 1.2") {
    const Complex2 a = alpha_complex(ps, 1.2);
    CHECK(a.triangles.size() == 1);
    CHECK(betti(a) == BettiPair{1, 0});
  }
  SUBCASE("Cech triangle appears at the same threshold") {
    CHECK(cech2(ps, 1.0).triangles.empty());
    CHECK(cech2(ps, 1.2).triangles.size() == 1);
    // The flag complex already fills the hollow triangle: Cech is strictly finer.
    CHECK(flag2(build_graph(ps, 1.0)).triangles.size() == 1);
  }
}

TEST_CASE("alpha complex of two distant points is a pair of isolated vertices") {
  const PointSet ps = make_point_set({{0, 0}, {2, 0}});
  const Complex2 a = alpha_complex(ps, 1.0);
  CHECK(a.vertices.size() == 2);
  CHECK(a.edges.empty());
  const Complex2 b = boundary_shape(a);
  CHECK(b.vertices == std::set<int>{0, 1});
  CHECK(betti(a) == BettiPair{2, 0});
}

TEST_CASE("midpoint witness test") {
  SUBCASE("a point inside the diametral circle blocks the witness") {
    const PointSet ps = make_point_set({{0, 0}, {2, 0}, {1, 0.5}});
    CHECK(!midpoint_is_witness(ps, 0, 1));
  }
  SUBCASE("a point outside leaves the witness intact") {
    const PointSet ps = make_point_set({{0, 0}, {2, 0}, {1, 1.5}});
    CHECK(midpoint_is_witness(ps, 0, 1));
  }
  SUBCASE("grazing contact counts as outside but is flagged") {
    const PointSet ps = make_point_set({{0, 0}, {2, 0}, {1, 1}});
    NearDegeneracy nd;
    CHECK(midpoint_is_witness(ps, 0, 1, &nd));
    CHECK(nd.flagged());
  }
  SUBCASE("bad pairs are rejected") {
    const PointSet ps = make_point_set({{0, 0}, {2, 0}});
    CHECK_THROWS_AS(midpoint_is_witness(ps, 0, 0), OutOfRange);
    CHECK_THROWS_AS(midpoint_is_witness(ps, 0, 5), OutOfRange);
  }
}

TEST_CASE("flag complex of a clique fills every triple") {
  const PointSet ps = make_point_set({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const Complex2 f = flag2(build_graph(ps, 1.5));  // diagonal = 1.414: K4
  CHECK(f.edges.size() == 6);
  CHECK(f.triangles.size() == 4);
}

TEST_CASE("at saturation scale the filtered complexes reach Delaunay") {
  const PointSet ps = make_point_set({{0, 0}, {1, 0}, {0.5, 1}, {1.5, 1}});
  const Complex2 dt = delaunay_skeleton(ps);
  const Complex2 dc = delaunay_cech(ps, 10.0);
  const Complex2 a = alpha_complex(ps, 10.0);
  CHECK(dc == dt);
  CHECK(a == dt);
}

TEST_CASE("alpha complex equals the nerve oracle on random instances") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const PointSet ps = random_instance(seed, 30);
    for (const double q : {0.3, 0.2}) {
      NearDegeneracy nd;
      const Complex2 a = alpha_complex(ps, q, &nd);
      if (nd.flagged()) continue;
      const Complex2 nerve = testsupport::alpha_complex_by_nerve(ps, q);
      CHECK(a == nerve);
    }
  }
}

TEST_CASE("sampled witness search agrees with the exact interval test") {
  const PointSet ps = random_instance(3, 25);
  const double q = 0.3;
  for (int i = 0; i < 25; ++i) {
    for (int j = i + 1; j < 25; ++j) {
      if ((ps[i] - ps[j]).norm() > q) continue;
      CHECK(testsupport::edge_in_alpha_exact(ps, i, j, q) ==
            testsupport::edge_in_alpha_sampled(ps, i, j, q));
    }
  }
}

TEST_CASE("independent enclosing-radius oracle matches min_enclosing_radius") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const Vector2d a(uniform01(rng), uniform01(rng));
    const Vector2d b(uniform01(rng), uniform01(rng));
    const Vector2d c(uniform01(rng), uniform01(rng));
    if (std::abs(signed_area(a, b, c)) < 1e-4) continue;
    CHECK(min_enclosing_radius(a, b, c) ==
          doctest::Approx(testsupport::enclosing_radius_brute(a, b, c)).epsilon(1e-9));
  }
}

TEST_CASE("edge and triangle membership rules hold over random instances") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const PointSet ps = random_instance(seed, 30);
    const double q = 0.28;
    NearDegeneracy nd;
    const Complex2 a = alpha_complex(ps, q, &nd);
    const Complex2 dt = delaunay_skeleton(ps);
    const Complex2 ambient = delaunay_flag(ps, q, &nd);
    if (nd.flagged()) continue;

    // Triangle membership is exactly the circumradius threshold on Delaunay triangles.
    for (const Tri& t : dt.triangles) {
      const bool in_alpha = a.triangles.count(t) > 0;
      const double rr = circumradius(ps[t[0]], ps[t[1]], ps[t[2]]);
      CHECK(in_alpha == (rr <= q / 2.0));
    }

    for (const Edge& e : ambient.edges) {
      const IncidentTriangles sets = incident_triangle_sets(ps, q, e, ambient);

      // At most one incident triangle can be obtuse opposite the edge.
      CHECK(sets.obtuse_opposite.size() <= 1);
      CHECK(sets.incident.size() <= 2);

      // The midpoint witnesses the edge exactly when no incident triangle is obtuse.
      CHECK(midpoint_is_witness(ps, e.first, e.second) == sets.obtuse_opposite.empty());

      // Edge membership: witnessed at the midpoint, or covered by a small triangle.
      const bool in_alpha = a.edges.count(e) > 0;
      CHECK(in_alpha == (midpoint_is_witness(ps, e.first, e.second) ||
                         !sets.small_circumradius.empty()));
    }
  }
}

TEST_CASE("complex nesting chain on random instances") {
  for (std::uint64_t seed = 20; seed <= 30; ++seed) {
    const PointSet ps = random_instance(seed, 30);
    for (const double q : {0.3, 0.18}) {
      const Complex2 a = alpha_complex(ps, q);
      const Complex2 dc = delaunay_cech(ps, q);
      const Complex2 df = delaunay_flag(ps, q);
      const Complex2 dt = delaunay_skeleton(ps);
      const Complex2 cech = cech2(ps, q);
      const Complex2 flag = flag2(build_graph(ps, q));
      CHECK(is_subcomplex(a, dc));
      CHECK(is_subcomplex(dc, df));
      CHECK(is_subcomplex(df, dt));
      CHECK(is_subcomplex(cech, flag));
    }
  }
}

TEST_CASE("homology invariants match graph-level counts") {
  for (std::uint64_t seed = 31; seed <= 40; ++seed) {
    const PointSet ps = random_instance(seed, 35);
    const double q = 0.22;
    const Complex2 a = alpha_complex(ps, q);
    const Complex2 cech = cech2(ps, q);
    const DistanceGraph g = build_graph(ps, q);
    CHECK(betti(a).b0 == component_count(g, q));
    CHECK(betti(a).b1 == betti(cech).b1);
  }
}

TEST_CASE("incident_triangle_sets validates the edge") {
  const PointSet ps = make_point_set({{0, 0}, {1, 0}, {0.5, 1}});
  CHECK_THROWS_AS(incident_triangle_sets(ps, 0.1, make_edge(0, 1)), NotAnEdge);
}
