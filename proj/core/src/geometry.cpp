#include "tempo/geometry.hpp"

#include <cmath>

namespace tempo {

bool Box::wellformed() const {
  if (lo.size() != hi.size() || lo.empty()) return false;
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (!(lo[k] <= hi[k])) return false;
    if (!std::isfinite(lo[k]) || !std::isfinite(hi[k])) return false;
  }
  return true;
}

bool Box::contains(std::span<const double> x) const {
  if (x.size() != lo.size()) return false;
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (x[k] < lo[k] || x[k] > hi[k]) return false;
  }
  return true;
}

bool Box::contains(const Box& other) const {
  if (other.dim() != dim()) return false;
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (other.lo[k] < lo[k] || other.hi[k] > hi[k]) return false;
  }
  return true;
}

bool Box::intersects(const Box& other) const {
  if (other.dim() != dim()) return false;
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (other.hi[k] < lo[k] || other.lo[k] > hi[k]) return false;
  }
  return true;
}

std::vector<double> Box::center() const {
  std::vector<double> c(lo.size());
  for (std::size_t k = 0; k < lo.size(); ++k) c[k] = lo[k] + 0.5 * (hi[k] - lo[k]);
  return c;
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t k = 0; k < lo.size(); ++k) v *= hi[k] - lo[k];
  return v;
}

bool union_contains(const std::vector<Box>& boxes, std::span<const double> x) {
  for (const Box& b : boxes) {
    if (b.contains(x)) return true;
  }
  return false;
}

bool union_intersects(const std::vector<Box>& boxes, const Box& b) {
  for (const Box& r : boxes) {
    if (r.intersects(b)) return true;
  }
  return false;
}

bool union_covers(const std::vector<Box>& boxes, const Box& b) {
  for (const Box& r : boxes) {
    if (r.contains(b)) return true;
  }
  /* split b at a face of some intersecting box lying strictly inside b;
   * if no box admits a split and none contains b, part of b is uncovered */
  for (const Box& r : boxes) {
    if (!r.intersects(b)) continue;
    for (std::size_t k = 0; k < b.dim(); ++k) {
      for (double c : {r.lo[k], r.hi[k]}) {
        if (c > b.lo[k] && c < b.hi[k]) {
          Box left = b;
          Box right = b;
          left.hi[k] = c;
          right.lo[k] = c;
          return union_covers(boxes, left) && union_covers(boxes, right);
        }
      }
    }
  }
  return false;
}

}  // namespace tempo
