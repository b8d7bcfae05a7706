/*
 * reach_avoid.hpp
 *
 * Reach-avoid specifications: drive every state of the initial set into the
 * target set in finitely many steps while the sampled states stay clear of
 * the obstacles. All three sets are finite unions of hyperrectangles in
 * concrete state coordinates.
 */

#ifndef TEMPO_REACH_AVOID_HPP_
#define TEMPO_REACH_AVOID_HPP_

#include <vector>

#include "tempo/errors.hpp"
#include "tempo/geometry.hpp"

namespace tempo {

struct ReachAvoidSpec {
  std::vector<Box> initial;
  std::vector<Box> target;
  std::vector<Box> obstacles;
};

/*
 * True iff the target and obstacle unions are disjoint. Throws
 * ValidationError on malformed rectangles.
 */
inline bool spec_is_wellformed(const ReachAvoidSpec& spec) {
  auto check = [](const std::vector<Box>& boxes, const char* what) {
    for (const Box& b : boxes) {
      if (!b.wellformed())
        throw ValidationError(std::string("reach-avoid spec: malformed ") + what +
                              " rectangle (lo > hi or non-finite)");
    }
  };
  check(spec.initial, "initial");
  check(spec.target, "target");
  check(spec.obstacles, "obstacle");
  for (const Box& f : spec.target) {
    if (union_intersects(spec.obstacles, f)) return false;
  }
  return true;
}

}  // namespace tempo

#endif /* TEMPO_REACH_AVOID_HPP_ */
