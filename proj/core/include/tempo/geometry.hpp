/*
 * geometry.hpp
 *
 * Axis-aligned hyperrectangles and set operations on finite unions of them.
 */

#ifndef TEMPO_GEOMETRY_HPP_
#define TEMPO_GEOMETRY_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace tempo {

/**
 * @brief Axis-aligned hyperrectangle given by componentwise bounds.
 *
 * All membership and intersection tests treat the box as closed. A
 * degenerate box (lo == hi in some dimension) is allowed and denotes a
 * lower-dimensional set, e.g. a single point.
 */
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  Box() = default;
  Box(std::vector<double> lo_, std::vector<double> hi_)
      : lo(std::move(lo_)), hi(std::move(hi_)) {}

  /* degenerate box {x} */
  static Box point(std::vector<double> x) {
    Box b;
    b.lo = x;
    b.hi = std::move(x);
    return b;
  }

  std::size_t dim() const { return lo.size(); }

  /* lo <= hi componentwise and bounds of equal dimension */
  bool wellformed() const;

  bool contains(std::span<const double> x) const;
  bool contains(const Box& other) const;
  bool intersects(const Box& other) const;

  std::vector<double> center() const;
  double volume() const;
};

/* closed membership of x in the union of boxes */
bool union_contains(const std::vector<Box>& boxes, std::span<const double> x);

/* true iff some box of the union intersects b (closed sets) */
bool union_intersects(const std::vector<Box>& boxes, const Box& b);

/*
 * Exact cover test: closed box b contained in the union of closed boxes.
 * Decided by recursive splitting along box faces, so the result involves
 * only coordinate comparisons and is exact in floating point.
 */
bool union_covers(const std::vector<Box>& boxes, const Box& b);

}  // namespace tempo

#endif /* TEMPO_GEOMETRY_HPP_ */
