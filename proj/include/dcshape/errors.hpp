#ifndef DCSHAPE_ERRORS_HPP
#define DCSHAPE_ERRORS_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <utility>

namespace dcshape {

/** Base class for every failure this library raises on purpose. */
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** A side length is incompatible with the other two beyond tolerance. */
class TriangleInequalityViolation : public Error {
 public:
  using Error::Error;
};

/** Chord longer than the circle diameter it is inscribed in. */
class ChordTooLong : public Error {
 public:
  using Error::Error;
};

/** Three points are collinear within tolerance where a proper triangle is required. */
class CollinearPoints : public Error {
 public:
  using Error::Error;
};

/** Input unusable for triangulation (too few points, or all collinear). */
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/** Four input points lie on a common circle within tolerance. */
class CocircularDegeneracy : public Error {
 public:
  CocircularDegeneracy(std::string msg, std::array<int, 4> points)
      : Error(std::move(msg)), points(points) {}
  std::array<int, 4> points{};
};

/** Duplicate edge records disagree about the distance beyond tolerance. */
class InconsistentDuplicate : public Error {
 public:
  using Error::Error;
};

/** Index or scalar outside its documented range. */
class OutOfRange : public Error {
 public:
  using Error::Error;
};

/** Queried pair is not an edge of the graph. */
class NotAnEdge : public Error {
 public:
  using Error::Error;
};

/** Probe length exceeds the graph's communication range. */
class ParameterTooLarge : public Error {
 public:
  using Error::Error;
};

/** The side test for an annulus node is too close to both candidates to decide. */
class AmbiguousSideTest : public Error {
 public:
  AmbiguousSideTest(std::string msg, std::pair<int, int> edge, int reference, int node)
      : Error(std::move(msg)), edge(edge), reference(reference), node(node) {}
  std::pair<int, int> edge{};
  int reference = -1;
  int node = -1;
};

/** The surplus edge/triangle pairing failed to be a bijection. */
class PairingViolation : public Error {
 public:
  using Error::Error;
};

/** No free pair available while surplus simplices remain. */
class StuckCollapse : public Error {
 public:
  StuckCollapse(std::string msg, std::size_t pending) : Error(std::move(msg)), pending(pending) {}
  std::size_t pending = 0;
};

/** Instance generator gave up removing near-degenerate configurations. */
class GenerationFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace dcshape

#endif  // DCSHAPE_ERRORS_HPP
