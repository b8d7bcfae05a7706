/*
 * synthesis.hpp
 *
 * Worst-case dynamic programming on a finite abstraction. The value of a
 * cell is the least cost that a controller can guarantee against the
 * nondeterminism of the successor sets (min over inputs of cost plus max
 * over successors), with targets pinned to 0 and obstacles and the sink
 * pinned to infinity. The resulting value function certifies an upper
 * bound on the closed-loop cost of the refined controller.
 */

#ifndef TEMPO_SYNTHESIS_HPP_
#define TEMPO_SYNTHESIS_HPP_

#include <span>
#include <vector>

#include "tempo/abstraction.hpp"
#include "tempo/controller.hpp"
#include "tempo/cost.hpp"
#include "tempo/grid.hpp"
#include "tempo/transition_system.hpp"

namespace tempo {

/** @brief Per-state worst-case cost-to-go; infinity marks "not winnable". */
struct ValueFunction {
  /* length num_states + 1 when the system has a sink (pinned to infinity) */
  std::vector<double> values;

  double operator[](StateId q) const { return values[q]; }
  /* states with finite value, ascending */
  std::vector<StateId> finite_support() const;
};

struct BellmanResult {
  double value = kInfCost;
  std::vector<InputId> minimizers;  // every input attaining the min, ascending
};

/*
 * One application of the min-max operator at state q:
 *   min over available u of  c(q, u) + max over successors of v.
 * An empty available set yields infinity; q must not be a target (targets
 * stay pinned at 0).
 */
BellmanResult bellman_apply(const FiniteTransitionSystem& ts, const TransitionCost& cost,
                            std::span<const InputLabel> labels, const ValueFunction& v,
                            StateId q);

/*
 * Least fixpoint of the operator above with v(target) = 0 and
 * v(obstacle) = v(sink) = infinity, computed by worklist iteration in
 * ascending state-id sweeps: a state is recomputed when some successor's
 * value dropped. Values are exact sums of costs, so convergence is exact
 * and needs no tolerance. Targets overlapping obstacles must have been
 * resolved by the caller (classify_cells gives obstacles precedence).
 */
ValueFunction value_iteration(const FiniteTransitionSystem& ts, const TransitionCost& cost,
                              std::span<const InputLabel> labels,
                              std::span<const StateId> targets,
                              std::span<const StateId> obstacles);

/*
 * All minimizing inputs per finite-valued non-target state (ties kept).
 * Targets are recovered as the zero set of v; they and infinite states get
 * an empty choice.
 */
AbstractController extract_controller(const FiniteTransitionSystem& ts,
                                      const TransitionCost& cost,
                                      std::span<const InputLabel> labels,
                                      const ValueFunction& v);

/*
 * True iff v dominates its own Bellman update on its finite support, i.e.
 * v(q) >= bellman(q) for every finite non-target q. Output of
 * value_iteration passes with equality everywhere.
 */
bool check_suboptimal(const FiniteTransitionSystem& ts, const TransitionCost& cost,
                      std::span<const InputLabel> labels, const ValueFunction& v);

/* compose an abstract controller with the quantizer */
ConcreteController concretize(const AbstractController& controller, const UniformGrid& grid,
                              std::vector<InputLabel> labels);

/** @brief Concrete value map v1 = v2 after quantization; infinite off-grid. */
class ConcreteValueMap {
 public:
  ConcreteValueMap(UniformGrid grid, ValueFunction v2);
  double operator()(std::span<const double> x) const;
  const UniformGrid& grid() const { return grid_; }
  const ValueFunction& abstract_values() const { return v2_; }

 private:
  UniformGrid grid_;
  ValueFunction v2_;
};

/*
 * Transfer the abstract value function to the plant. For a Custom cost the
 * table's concrete_max entries (when present) must not exceed the abstract
 * entries, otherwise the transfer is rejected; the built-in costs depend
 * only on the label, so nothing needs checking for them.
 */
ConcreteValueMap transfer_value(const ValueFunction& v2, const UniformGrid& grid,
                                const TransitionCost& cost);

/** @brief Bundle of everything a synthesis run produces. */
struct SynthesisOutcome {
  ValueFunction value;
  AbstractController controller;
  bool feasible = false;    // every initial cell has finite value
  double worst_case = kInfCost;  // max of v over initial cells
};

/* value iteration + extraction + feasibility over the initial cells */
SynthesisOutcome synthesize(const AbstractionResult& abstraction, const TransitionCost& cost,
                            const CellClasses& classes);

}  // namespace tempo

#endif /* TEMPO_SYNTHESIS_HPP_ */
