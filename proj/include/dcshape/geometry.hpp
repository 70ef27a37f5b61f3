#ifndef DCSHAPE_GEOMETRY_HPP
#define DCSHAPE_GEOMETRY_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dcshape/errors.hpp"

namespace dcshape {

/** Degeneracy margin used everywhere a comparison has a geometric threshold.
 *  Lengths are compared with epsilon scaled by the instance bounding-box
 *  diagonal; angles are compared with epsilon directly (radians).
 */
inline constexpr double kDefaultEpsilon = 1e-9;

/** Angle in radians, always in [0, pi]. */
struct Angle {
  double radians = 0.0;
};

/** Running record of decisions that landed within epsilon of their threshold.
 *  Callers that care pass a pointer; everything still resolves (boundary cases
 *  count as "outside"), but the instance should be treated as near-degenerate.
 */
struct NearDegeneracy {
  int events = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  std::string first;

  void note(double margin, const std::string& what) {
    ++events;
    if (margin < min_margin) min_margin = margin;
    if (first.empty()) first = what;
  }
  bool flagged() const { return events > 0; }
};

inline void note_near(NearDegeneracy* nd, double margin, const std::string& what) {
  if (nd != nullptr) nd->note(margin, what);
}

/** Finite planar point set with its degeneracy margin.
 *
 *  Invariants (established by make_point_set): coordinates finite, no two
 *  points coincide within epsilon * max(bbox diagonal, 1).
 */
struct PointSet {
  std::vector<Eigen::Vector2d> points;
  double epsilon = kDefaultEpsilon;

  std::size_t size() const { return points.size(); }
  const Eigen::Vector2d& operator[](std::size_t i) const { return points[i]; }

  double bbox_diag() const {
    if (points.empty()) return 0.0;
    Eigen::Vector2d lo = points.front(), hi = points.front();
    for (const auto& p : points) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    return (hi - lo).norm();
  }

  /** Absolute length tolerance: epsilon relative to the bounding-box diagonal
   *  (floored at epsilon itself so tiny/degenerate extents stay usable). */
  double abs_tol() const { return epsilon * std::max(bbox_diag(), 1.0); }
};

/** Validates and wraps raw coordinates. Throws DegenerateInput on non-finite
 *  coordinates or on a pair of points closer than the tolerance. */
inline PointSet make_point_set(std::vector<Eigen::Vector2d> pts, double epsilon = kDefaultEpsilon) {
  PointSet ps{std::move(pts), epsilon};
  for (const auto& p : ps.points) {
    if (!p.allFinite()) throw DegenerateInput("point set contains a non-finite coordinate");
  }
  const double tol = ps.abs_tol();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      if ((ps.points[i] - ps.points[j]).norm() <= tol) {
        std::ostringstream msg;
        msg << "points " << i << " and " << j << " coincide within tolerance";
        throw DegenerateInput(msg.str());
      }
    }
  }
  return ps;
}

/** Interior angle opposite side c in a triangle with side lengths a, b, c.
 *
 *  Law of cosines with the cosine clamped to [-1, 1], so inputs that satisfy
 *  the triangle inequality only up to rounding still resolve (degenerate flat
 *  triangles give exactly 0 or pi).
 *
 *  @throws OutOfRange if a or b is not positive.
 *  @throws TriangleInequalityViolation if c exceeds a+b (or falls below
 *          |a-b|) by more than epsilon * (a+b).
 */
inline Angle angle_from_sides(double a, double b, double c, double epsilon = kDefaultEpsilon) {
  if (!(a > 0.0) || !(b > 0.0) || !(c >= 0.0)) {
    throw OutOfRange("angle_from_sides: sides must be positive");
  }
  const double slack = epsilon * (a + b);
  if (c - (a + b) > slack || (std::abs(a - b) - c) > slack) {
    std::ostringstream msg;
    msg << "sides (" << a << ", " << b << ", " << c << ") violate the triangle inequality";
    throw TriangleInequalityViolation(msg.str());
  }
  const double cosv = std::clamp((a * a + b * b - c * c) / (2.0 * a * b), -1.0, 1.0);
  return Angle{std::acos(cosv)};
}

/** Inscribed angle subtending a chord of length d on the major arc of a
 *  circle of diameter q. Equals half the central angle; increases from 0 to
 *  pi/2 as d grows to q.
 *
 *  @throws ChordTooLong if d > q * (1 + epsilon).
 *  @throws OutOfRange if d or q is not positive.
 */
inline Angle chord_inscribed_angle(double d, double q, double epsilon = kDefaultEpsilon) {
  if (!(d > 0.0) || !(q > 0.0)) throw OutOfRange("chord_inscribed_angle: lengths must be positive");
  if (d > q * (1.0 + epsilon)) {
    std::ostringstream msg;
    msg << "chord " << d << " exceeds circle diameter " << q;
    throw ChordTooLong(msg.str());
  }
  const double cosw = std::clamp(1.0 - 2.0 * (d / q) * (d / q), -1.0, 1.0);
  return Angle{0.5 * std::acos(cosw)};
}

/** Twice the signed area of triangle (p1, p2, p3); positive when CCW. */
inline double cross2(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                     const Eigen::Vector2d& p3) {
  const Eigen::Vector2d u = p2 - p1, v = p3 - p1;
  return u.x() * v.y() - u.y() * v.x();
}

inline double signed_area(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                          const Eigen::Vector2d& p3) {
  return 0.5 * cross2(p1, p2, p3);
}

struct Circumcircle {
  Eigen::Vector2d center;
  double radius = 0.0;
};

/** Circumscribed circle of a proper triangle.
 *
 *  @throws CollinearPoints when |signed area| < epsilon * (longest side)^2.
 */
inline Circumcircle circumcircle(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                                 const Eigen::Vector2d& p3, double epsilon = kDefaultEpsilon) {
  const Eigen::Vector2d b = p2 - p1, c = p3 - p1;
  const double scale = std::max({b.norm(), c.norm(), (p3 - p2).norm()});
  const double area2 = b.x() * c.y() - b.y() * c.x();  // twice the signed area
  if (std::abs(0.5 * area2) < epsilon * scale * scale) {
    throw CollinearPoints("circumcircle: points are collinear within tolerance");
  }
  const double b2 = b.squaredNorm(), c2 = c.squaredNorm();
  const Eigen::Vector2d rel((c.y() * b2 - b.y() * c2) / (2.0 * area2),
                            (b.x() * c2 - c.x() * b2) / (2.0 * area2));
  return Circumcircle{p1 + rel, rel.norm()};
}

inline double circumradius(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                           const Eigen::Vector2d& p3, double epsilon = kDefaultEpsilon) {
  return circumcircle(p1, p2, p3, epsilon).radius;
}

/** Radius of the smallest disk containing the three points: circumradius for
 *  acute/right triangles, half the longest side otherwise (including the
 *  collinear limit). Three radius-rho disks centered at the points share a
 *  common point exactly when this value is <= rho. */
inline double min_enclosing_radius(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                                   const Eigen::Vector2d& p3, double epsilon = kDefaultEpsilon) {
  const double a = (p2 - p3).norm(), b = (p1 - p3).norm(), c = (p1 - p2).norm();
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0)) {
    throw OutOfRange("min_enclosing_radius: points must be pairwise distinct");
  }
  double longest = a, other1 = b, other2 = c;
  if (b > longest) { longest = b; other1 = a; other2 = c; }
  if (c > longest) { longest = c; other1 = a; other2 = b; }
  if (longest * longest >= other1 * other1 + other2 * other2) {
    return 0.5 * longest;  // obtuse or degenerate: opposite vertices span the diameter
  }
  return circumradius(p1, p2, p3, epsilon);
}

inline constexpr double kPi = std::numbers::pi;

}  // namespace dcshape

#endif  // DCSHAPE_GEOMETRY_HPP
