/*
 * sim.hpp
 *
 * Closed-loop simulation of the plant under a concretized controller, with
 * cost accounting against the transferred value function. The audit replays
 * seeded initial states and checks that every run reaches the target with
 * cost within the certified bound.
 */

#ifndef TEMPO_SIM_HPP_
#define TEMPO_SIM_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tempo/controller.hpp"
#include "tempo/cost.hpp"
#include "tempo/ode.hpp"
#include "tempo/reach_avoid.hpp"
#include "tempo/synthesis.hpp"

namespace tempo {

enum class RunOutcome {
  kReachedTarget,
  kEnteredObstacle,
  kLeftDomain,
  kNoInputAvailable,
  kStepBudgetExhausted,
};

const char* to_string(RunOutcome outcome);

struct TrajectorySample {
  double t = 0.0;
  std::vector<double> x;
  std::optional<InputLabel> label;  // label applied from this sample; none on the last one
  double step_cost = 0.0;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  RunOutcome outcome = RunOutcome::kStepBudgetExhausted;
  double total_cost = 0.0;
  std::string note;  // diagnostics, e.g. integration overflow

  std::uint64_t steps() const { return samples.empty() ? 0 : samples.size() - 1; }
};

/*
 * Run until the first sampled state inside the target union, inside an
 * obstacle, outside the grid, without a choice, or until the budget runs
 * out. Membership is checked at sampling instants only, matching the
 * specification semantics. Step costs are accumulated in reverse order so
 * the total relates to the certified bound by monotone floating-point
 * additions alone.
 */
Trajectory run_closed_loop(const ContinuousSystem& sys, const IntegratorConfig& cfg,
                           const ConcreteController& controller, const ReachAvoidSpec& spec,
                           const TransitionCost& cost, std::span<const double> x0,
                           std::uint64_t max_steps);

struct AuditReport {
  std::uint64_t samples = 0;
  std::uint64_t reached = 0;
  std::uint64_t violations = 0;  // runs failing outcome, cost or step checks
  double max_observed_cost = 0.0;
  double max_bound = 0.0;              // max v1(x0) over the sampled states
  double max_cost_ratio = 0.0;         // max observed/bound
  std::uint64_t max_steps_observed = 0;
  std::uint64_t step_budget = 0;
  double cost_lower_bound = 0.0;  // the uniform b used for the step bound
  bool certified = false;         // growth-bound provenance and zero violations
  std::vector<double> taus_used;  // distinct durations applied, ascending
  std::vector<std::string> header;
};

/*
 * Replay `samples` seeded initial states drawn uniformly from the initial
 * union. Each run must reach the target with total cost <= v1(x0) and at
 * most ceil(v1(x0)/b) steps; any miss counts as a violation. `sound`
 * declares growth-bound provenance; without it the report is marked
 * non-certified regardless of the outcome.
 */
AuditReport audit_certificate(const ContinuousSystem& sys, const IntegratorConfig& cfg,
                              const ConcreteController& controller, const ReachAvoidSpec& spec,
                              const TransitionCost& cost, const ConcreteValueMap& v1,
                              std::uint64_t samples, std::uint64_t seed, bool sound);

/* seeded uniform draw from a union of rectangles (volume weighted) */
std::vector<double> sample_from_union(const std::vector<Box>& boxes, std::uint64_t seed,
                                      std::uint64_t index);

}  // namespace tempo

#endif /* TEMPO_SIM_HPP_ */
