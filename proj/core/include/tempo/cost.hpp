/*
 * cost.hpp
 *
 * Transition costs c(q, (u, tau)) with values in (0, inf]. Every cost is
 * uniformly bounded below by a known b > 0, which bounds the number of
 * controlled steps by v/b and makes worst-case value iteration terminate.
 */

#ifndef TEMPO_COST_HPP_
#define TEMPO_COST_HPP_

#include <limits>
#include <span>
#include <vector>

#include "tempo/transition_system.hpp"

namespace tempo {

/*
 * Infinity is the IEEE sentinel, never a large finite float. The identities
 * used by the solver (x + inf = inf, min(x, inf) = x, max(x, inf) = inf)
 * hold exactly for it; the helpers below name them explicitly.
 */
inline constexpr double kInfCost = std::numeric_limits<double>::infinity();

inline bool is_finite_cost(double v) { return v < kInfCost; }
inline double cost_add(double a, double b) { return a + b; }
inline double cost_min(double a, double b) { return a < b ? a : b; }
inline double cost_max(double a, double b) { return a > b ? a : b; }

/**
 * @brief Per-(state, input) cost table for the Custom kind.
 *
 * values[q * num_inputs + u] is the abstract cost; entries may be kInfCost
 * (input unusable) but never <= 0. concrete_max, when nonempty, holds the
 * maximum of the underlying concrete cost over each cell and is checked
 * against values during value transfer.
 */
struct CostTable {
  StateId num_states = 0;
  InputId num_inputs = 0;
  std::vector<double> values;
  std::vector<double> concrete_max;
};

/** @brief Transition cost function, one of the built-in kinds or a table. */
class TransitionCost {
 public:
  enum class Kind { kEffort, kTime, kCustom };

  /* |u|^2 * tau + epsilon */
  static TransitionCost effort(double epsilon);
  /* tau */
  static TransitionCost time();
  static TransitionCost custom(CostTable table);

  Kind kind() const { return kind_; }
  double epsilon() const { return epsilon_; }
  bool state_independent() const { return kind_ != Kind::kCustom; }
  const CostTable& table() const { return table_; }

  /* cost of a label for the state-independent kinds; throws for kCustom */
  double evaluate(const InputLabel& label) const;
  /* cost of label u at state q; works for every kind */
  double evaluate(StateId q, InputId u, const InputLabel& label) const;

  /* the uniform lower bound b > 0 over the given label set */
  double lower_bound(std::span<const InputLabel> labels) const;

 private:
  Kind kind_ = Kind::kTime;
  double epsilon_ = 0.0;
  CostTable table_;
};

/* convenience spelling for the state-independent kinds */
double evaluate_cost(const TransitionCost& c, const InputLabel& label);

}  // namespace tempo

#endif /* TEMPO_COST_HPP_ */
