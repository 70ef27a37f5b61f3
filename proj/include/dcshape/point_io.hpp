#ifndef DCSHAPE_POINT_IO_HPP
#define DCSHAPE_POINT_IO_HPP

#include <Eigen/Dense>
#include <cstdio>
#include <istream>
#include <ostream>
#include <vector>

#include "dcshape/errors.hpp"
#include "dcshape/geometry.hpp"

namespace dcshape {

/** Text form: header line "n", then one "x y" line per point, full precision
 *  so a round trip reproduces the exact doubles. */
inline void write_points(std::ostream& out, const PointSet& ps) {
  out << ps.size() << "\n";
  char buf[128];
  for (const auto& p : ps.points) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g", p.x(), p.y());
    out << buf << "\n";
  }
}

inline PointSet read_points(std::istream& in, double epsilon = kDefaultEpsilon) {
  int n = 0;
  if (!(in >> n) || n < 0) throw OutOfRange("point file: missing or invalid 'n' header");
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = 0.0, y = 0.0;
    if (!(in >> x >> y)) throw OutOfRange("point file: fewer coordinate lines than the header says");
    pts.emplace_back(x, y);
  }
  return make_point_set(std::move(pts), epsilon);
}

}  // namespace dcshape

#endif  // DCSHAPE_POINT_IO_HPP
