#include "tempo/sim.hpp"

#include <algorithm>
#include <cmath>

#include "tempo/rng.hpp"

namespace tempo {

const char* to_string(RunOutcome outcome) {
  switch (outcome) {
    case RunOutcome::kReachedTarget: return "reached_target";
    case RunOutcome::kEnteredObstacle: return "entered_obstacle";
    case RunOutcome::kLeftDomain: return "left_domain";
    case RunOutcome::kNoInputAvailable: return "no_input_available";
    case RunOutcome::kStepBudgetExhausted: return "step_budget_exhausted";
  }
  return "unknown";
}

Trajectory run_closed_loop(const ContinuousSystem& sys, const IntegratorConfig& cfg,
                           const ConcreteController& controller, const ReachAvoidSpec& spec,
                           const TransitionCost& cost, std::span<const double> x0,
                           std::uint64_t max_steps) {
  if (max_steps < 1) throw std::invalid_argument("simulation: max_steps must be >= 1");
  Trajectory traj;
  Integrator integ(sys, cfg);
  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> post(sys.dim_x);
  double t = 0.0;

  auto terminal = [&](RunOutcome outcome) {
    traj.samples.push_back(TrajectorySample{t, x, std::nullopt, 0.0});
    traj.outcome = outcome;
  };

  while (true) {
    if (union_contains(spec.target, x)) {
      terminal(RunOutcome::kReachedTarget);
      break;
    }
    if (union_contains(spec.obstacles, x)) {
      terminal(RunOutcome::kEnteredObstacle);
      break;
    }
    const auto cell = controller.grid().quantize(x);
    if (!cell) {
      terminal(RunOutcome::kLeftDomain);
      break;
    }
    const auto choice = controller.abstract().export_choice(*cell);
    if (!choice) {
      terminal(RunOutcome::kNoInputAvailable);
      break;
    }
    if (traj.steps() >= max_steps) {
      terminal(RunOutcome::kStepBudgetExhausted);
      break;
    }
    const InputLabel& label = controller.labels()[*choice];
    const double step_cost = cost.evaluate(*cell, *choice, label);
    try {
      integ.flow(x, label.u, label.tau, post);
    } catch (const IntegrationOverflowError& e) {
      traj.note = e.what();
      terminal(RunOutcome::kLeftDomain);
      break;
    }
    traj.samples.push_back(TrajectorySample{t, x, label, step_cost});
    x = post;
    t += label.tau;
  }

  /* reverse-order fold: each partial sum then relates to the value
   * recursion by monotone additions, so the certified bound holds exactly
   * in floating point, not just in real arithmetic */
  double total = 0.0;
  for (std::size_t i = traj.samples.size(); i-- > 0;) {
    if (traj.samples[i].label) total = traj.samples[i].step_cost + total;
  }
  traj.total_cost = total;
  return traj;
}

std::vector<double> sample_from_union(const std::vector<Box>& boxes, std::uint64_t seed,
                                      std::uint64_t index) {
  if (boxes.empty()) throw ValidationError("sampling: empty rectangle union");
  Rng rng(Rng::mix(seed, index, 0x5eedu));
  std::size_t pick = 0;
  if (boxes.size() > 1) {
    double total = 0.0;
    for (const Box& b : boxes) total += b.volume();
    if (total > 0.0) {
      const double r = rng.uniform(0.0, total);
      double acc = 0.0;
      for (std::size_t i = 0; i < boxes.size(); ++i) {
        acc += boxes[i].volume();
        if (r < acc || i + 1 == boxes.size()) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<std::size_t>(rng.uniform01() * static_cast<double>(boxes.size()));
      pick = std::min(pick, boxes.size() - 1);
    }
  }
  const Box& b = boxes[pick];
  std::vector<double> x(b.dim());
  for (std::size_t k = 0; k < b.dim(); ++k) x[k] = rng.uniform(b.lo[k], b.hi[k]);
  return x;
}

AuditReport audit_certificate(const ContinuousSystem& sys, const IntegratorConfig& cfg,
                              const ConcreteController& controller, const ReachAvoidSpec& spec,
                              const TransitionCost& cost, const ConcreteValueMap& v1,
                              std::uint64_t samples, std::uint64_t seed, bool sound) {
  AuditReport report;
  report.header.push_back(
      "simulation uses the same integrator as abstraction construction; this audit checks "
      "internal consistency of the toolchain, not model fidelity");
  report.samples = samples;
  report.cost_lower_bound = cost.lower_bound(controller.labels());
  report.certified = sound;
  if (samples == 0) return report;
  if (spec.initial.empty())
    throw ValidationError("audit: the specification has no initial set to sample");

  /* draw all starting points first so the step budget can follow the
   * worst certified bound among them */
  std::vector<std::vector<double>> starts(samples);
  std::vector<double> bounds(samples);
  double worst_bound = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    starts[i] = sample_from_union(spec.initial, seed, i);
    bounds[i] = v1(starts[i]);
    worst_bound = cost_max(worst_bound, bounds[i]);
  }
  report.max_bound = worst_bound;
  const double b = report.cost_lower_bound;
  std::uint64_t budget = 10000;
  if (is_finite_cost(worst_bound) && b > 0.0) {
    const double steps = std::ceil(worst_bound / b);
    budget = steps < 1e18 ? static_cast<std::uint64_t>(steps) + 10 : ~0ULL - 1;
  }
  report.step_budget = budget;

  std::vector<double> taus;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const Trajectory traj =
        run_closed_loop(sys, cfg, controller, spec, cost, starts[i], budget);
    const double bound = bounds[i];
    bool ok = traj.outcome == RunOutcome::kReachedTarget;
    if (!(traj.total_cost <= bound)) ok = false;
    if (is_finite_cost(bound) && b > 0.0) {
      const double step_bound = std::ceil(bound / b);
      if (static_cast<double>(traj.steps()) > step_bound) ok = false;
    }
    if (traj.outcome == RunOutcome::kReachedTarget) ++report.reached;
    if (!ok) ++report.violations;
    report.max_observed_cost = cost_max(report.max_observed_cost, traj.total_cost);
    report.max_steps_observed = std::max(report.max_steps_observed, traj.steps());
    const double ratio = bound > 0.0 ? traj.total_cost / bound
                                     : (traj.total_cost > 0.0 ? kInfCost : 0.0);
    report.max_cost_ratio = cost_max(report.max_cost_ratio, ratio);
    for (const TrajectorySample& s : traj.samples) {
      if (s.label) taus.push_back(s.label->tau);
    }
  }
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
  report.taus_used = std::move(taus);
  if (report.violations > 0) report.certified = false;
  return report;
}

}  // namespace tempo
