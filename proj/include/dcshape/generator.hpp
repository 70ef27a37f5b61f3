#ifndef DCSHAPE_GENERATOR_HPP
#define DCSHAPE_GENERATOR_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dcshape/errors.hpp"
#include "dcshape/geometry.hpp"

namespace dcshape {

/** Uniform double in [0, 1) from the top 53 bits of the engine output.
 *  std::uniform_real_distribution is implementation-defined; this mapping is
 *  not, and reruns must be byte-identical. */
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct GenConfig {
  std::uint64_t seed = 1;
  int n = 60;
  Eigen::Vector2d lo{0.0, 0.0};
  Eigen::Vector2d hi{1.0, 1.0};
  double epsilon = kDefaultEpsilon;
  bool inject_degeneracy = false;  // start from a cocircular quadruple to exercise the repair path
  int max_sweeps = 100;
};

struct GenResult {
  PointSet points;
  std::vector<std::string> log;  // one entry per repaired configuration
};

namespace detail {

inline Eigen::Vector2d draw_point(std::mt19937_64& rng, const GenConfig& cfg) {
  const double x = cfg.lo.x() + (cfg.hi.x() - cfg.lo.x()) * uniform01(rng);
  const double y = cfg.lo.y() + (cfg.hi.y() - cfg.lo.y()) * uniform01(rng);
  return {x, y};
}

/** Index of one point participating in a configuration within tolerance of
 *  degeneracy, or -1 when the set is clean. Checks pairs (coincidence),
 *  triples (collinearity), and quadruples (cocircularity, for triples whose
 *  circumcircle is small enough for the distance test to be meaningful). */
inline int find_degenerate_member(const std::vector<Eigen::Vector2d>& pts, double tol,
                                  double radius_cap, std::string* what) {
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if ((pts[i] - pts[j]).norm() <= tol) {
        std::ostringstream msg;
        msg << "coincident pair (" << i << ", " << j << ")";
        *what = msg.str();
        return j;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Eigen::Vector2d base = pts[i];
      const Eigen::Vector2d dir = pts[j] - base;
      const double len = dir.norm();
      for (int k = j + 1; k < n; ++k) {
        const double dist_to_line = std::abs(cross2(base, pts[j], pts[k])) / len;
        if (dist_to_line <= tol) {
          std::ostringstream msg;
          msg << "collinear triple (" << i << ", " << j << ", " << k << ")";
          *what = msg.str();
          return k;
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        Circumcircle cc;
        try {
          cc = circumcircle(pts[i], pts[j], pts[k], 0.0);
        } catch (const CollinearPoints&) {
          continue;  // exact collinearity is caught by the triple scan
        }
        if (cc.radius > radius_cap) continue;
        for (int l = 0; l < n; ++l) {
          if (l == i || l == j || l == k) continue;
          if (std::abs((pts[l] - cc.center).norm() - cc.radius) <= tol) {
            std::ostringstream msg;
            msg << "cocircular quadruple (" << i << ", " << j << ", " << k << ", " << l << ")";
            *what = msg.str();
            return l > k ? l : k;  // prefer redrawing the later index
          }
        }
      }
    }
  }
  return -1;
}

}  // namespace detail

/** Draws n points uniformly in the configured box, then redraws members of
 *  any configuration that sits within epsilon of a degeneracy (coincident,
 *  collinear, or cocircular) until the set is clean. Fully deterministic in
 *  the seed; every repair is logged.
 *
 *  @throws GenerationFailed when max_sweeps redraws do not produce a clean set.
 */
inline GenResult generate_points(const GenConfig& cfg) {
  if (cfg.n < 0) throw OutOfRange("generate_points: n must be non-negative");
  if (!(cfg.hi.x() > cfg.lo.x()) || !(cfg.hi.y() > cfg.lo.y())) {
    throw OutOfRange("generate_points: domain box is empty");
  }
  std::mt19937_64 rng(cfg.seed);
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(static_cast<std::size_t>(cfg.n));
  for (int i = 0; i < cfg.n; ++i) pts.push_back(detail::draw_point(rng, cfg));

  if (cfg.inject_degeneracy && cfg.n >= 4) {
    // Four points on one circle; the repair loop below must detect and fix.
    const Eigen::Vector2d c = 0.5 * (cfg.lo + cfg.hi);
    const double rad = 0.25 * std::min(cfg.hi.x() - cfg.lo.x(), cfg.hi.y() - cfg.lo.y());
    for (int k = 0; k < 4; ++k) {
      const double ang = 2.0 * kPi * k / 4.0;
      pts[static_cast<std::size_t>(k)] = c + rad * Eigen::Vector2d(std::cos(ang), std::sin(ang));
    }
  }

  const double diag = (cfg.hi - cfg.lo).norm();
  const double tol = cfg.epsilon * std::max(diag, 1.0);
  const double radius_cap = 1000.0 * diag;
  GenResult out;
  for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
    std::string what;
    const int bad = detail::find_degenerate_member(pts, tol, radius_cap, &what);
    if (bad < 0) {
      out.points = PointSet{std::move(pts), cfg.epsilon};
      return out;
    }
    pts[static_cast<std::size_t>(bad)] = detail::draw_point(rng, cfg);
    std::ostringstream entry;
    entry << "sweep " << sweep << ": redrew point " << bad << " (" << what << ")";
    out.log.push_back(entry.str());
  }
  throw GenerationFailed("generate_points: still near-degenerate after max_sweeps redraws");
}

}  // namespace dcshape

#endif  // DCSHAPE_GENERATOR_HPP
