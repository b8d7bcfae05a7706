#include "tempo/synthesis.hpp"

#include <algorithm>
#include <stdexcept>

#include "tempo/errors.hpp"

namespace tempo {

namespace {

/* uniform view of the cost so the solver loop has one code path; built-in
 * kinds are precomputed per label */
struct CostView {
  std::vector<double> label_costs;  // state-independent kinds
  const CostTable* table = nullptr;
  InputId num_inputs = 0;

  static CostView make(const FiniteTransitionSystem& ts, const TransitionCost& cost,
                       std::span<const InputLabel> labels) {
    if (labels.size() != ts.num_inputs())
      throw std::invalid_argument("synthesis: label list does not match the input count");
    CostView view;
    view.num_inputs = ts.num_inputs();
    if (cost.state_independent()) {
      view.label_costs.reserve(labels.size());
      for (const InputLabel& l : labels) view.label_costs.push_back(cost.evaluate(l));
    } else {
      const CostTable& t = cost.table();
      if (t.num_states != ts.num_states() || t.num_inputs != ts.num_inputs())
        throw std::invalid_argument("synthesis: custom cost table does not match the system");
      view.table = &t;
    }
    return view;
  }

  double at(StateId q, InputId u) const {
    return table ? table->values[static_cast<std::size_t>(q) * num_inputs + u]
                 : label_costs[u];
  }
};

/*
 * The single min-max evaluation used by the solver, the extractor and the
 * residual check; keeping one code path makes recomputed values bit-equal
 * to stored ones.
 */
double bellman_value(const FiniteTransitionSystem& ts, const CostView& cost,
                     std::span<const double> v, StateId q, std::vector<InputId>* minimizers) {
  double best = kInfCost;
  if (minimizers) minimizers->clear();
  for (InputId u = 0; u < ts.num_inputs(); ++u) {
    const auto succ = ts.successors(q, u);
    if (succ.empty()) continue;
    double worst = v[succ[0]];
    for (std::size_t i = 1; i < succ.size(); ++i) worst = cost_max(worst, v[succ[i]]);
    const double val = cost_add(cost.at(q, u), worst);
    if (val < best) {
      best = val;
      if (minimizers) {
        minimizers->clear();
        minimizers->push_back(u);
      }
    } else if (minimizers && val == best && is_finite_cost(best)) {
      minimizers->push_back(u);
    }
  }
  return best;
}

std::size_t value_size(const FiniteTransitionSystem& ts) {
  return static_cast<std::size_t>(ts.num_states()) + (ts.has_sink() ? 1 : 0);
}

}  // namespace

std::vector<StateId> ValueFunction::finite_support() const {
  std::vector<StateId> out;
  for (std::size_t q = 0; q < values.size(); ++q) {
    if (is_finite_cost(values[q])) out.push_back(static_cast<StateId>(q));
  }
  return out;
}

BellmanResult bellman_apply(const FiniteTransitionSystem& ts, const TransitionCost& cost,
                            std::span<const InputLabel> labels, const ValueFunction& v,
                            StateId q) {
  if (q >= ts.num_states()) throw std::out_of_range("bellman: invalid state id");
  if (v.values.size() != value_size(ts))
    throw std::invalid_argument("bellman: value function size mismatch");
  const CostView view = CostView::make(ts, cost, labels);
  BellmanResult res;
  res.value = bellman_value(ts, view, v.values, q, &res.minimizers);
  return res;
}

ValueFunction value_iteration(const FiniteTransitionSystem& ts, const TransitionCost& cost,
                              std::span<const InputLabel> labels,
                              std::span<const StateId> targets,
                              std::span<const StateId> obstacles) {
  const StateId n = ts.num_states();
  const CostView view = CostView::make(ts, cost, labels);

  enum : std::uint8_t { kPlain = 0, kTarget = 1, kPinnedInf = 2 };
  std::vector<std::uint8_t> role(n, kPlain);
  for (StateId q : obstacles) {
    if (q >= n) throw std::out_of_range("value iteration: obstacle id out of range");
    role[q] = kPinnedInf;
  }
  for (StateId q : targets) {
    if (q >= n) throw std::out_of_range("value iteration: target id out of range");
    if (role[q] == kPinnedInf)
      throw std::invalid_argument("value iteration: targets and obstacles must be disjoint");
    role[q] = kTarget;
  }

  ValueFunction vf;
  vf.values.assign(value_size(ts), kInfCost);
  std::vector<double>& v = vf.values;
  for (StateId q = 0; q < n; ++q) {
    if (role[q] == kTarget) v[q] = 0.0;
  }

  /*
   * Cell-level predecessor lists drive the worklist: when v(s) drops, every
   * state with an edge into s is recomputed. Edges into targets, obstacles
   * and the sink are dropped (those values never change), as are edges out
   * of non-plain states (their values are never recomputed).
   */
  std::vector<std::uint64_t> pre_offsets(static_cast<std::size_t>(n) + 2, 0);
  for (StateId q = 0; q < n; ++q) {
    if (role[q] != kPlain) continue;
    for (InputId u = 0; u < ts.num_inputs(); ++u) {
      for (StateId s : ts.successors(q, u)) {
        if (s < n && role[s] == kPlain) ++pre_offsets[s + 1];
      }
    }
  }
  for (std::size_t i = 1; i < pre_offsets.size(); ++i) pre_offsets[i] += pre_offsets[i - 1];
  std::vector<StateId> pre(pre_offsets.back());
  {
    std::vector<std::uint64_t> cursor(pre_offsets.begin(), pre_offsets.end() - 1);
    for (StateId q = 0; q < n; ++q) {
      if (role[q] != kPlain) continue;
      for (InputId u = 0; u < ts.num_inputs(); ++u) {
        for (StateId s : ts.successors(q, u)) {
          if (s < n && role[s] == kPlain) pre[cursor[s]++] = q;
        }
      }
    }
  }

  std::vector<std::uint8_t> dirty(n, 0);
  for (StateId q = 0; q < n; ++q) dirty[q] = role[q] == kPlain;
  bool updated = true;
  while (updated) {
    updated = false;
    for (StateId q = 0; q < n; ++q) {
      if (!dirty[q]) continue;
      dirty[q] = 0;
      const double nv = bellman_value(ts, view, v, q, nullptr);
      if (nv < v[q]) {
        v[q] = nv;
        updated = true;
        for (std::uint64_t i = pre_offsets[q]; i < pre_offsets[q + 1]; ++i) dirty[pre[i]] = 1;
      }
    }
  }
  return vf;
}

AbstractController extract_controller(const FiniteTransitionSystem& ts,
                                      const TransitionCost& cost,
                                      std::span<const InputLabel> labels,
                                      const ValueFunction& v) {
  if (v.values.size() != value_size(ts))
    throw std::invalid_argument("extract: value function size mismatch");
  const CostView view = CostView::make(ts, cost, labels);
  AbstractController controller(ts.num_states());
  std::vector<InputId> minimizers;
  for (StateId q = 0; q < ts.num_states(); ++q) {
    if (!is_finite_cost(v.values[q]) || v.values[q] == 0.0) continue;
    const double val = bellman_value(ts, view, v.values, q, &minimizers);
    if (val == v.values[q]) controller.set_choice(q, minimizers);
  }
  return controller;
}

bool check_suboptimal(const FiniteTransitionSystem& ts, const TransitionCost& cost,
                      std::span<const InputLabel> labels, const ValueFunction& v) {
  if (v.values.size() != value_size(ts))
    throw std::invalid_argument("check: value function size mismatch");
  const CostView view = CostView::make(ts, cost, labels);
  if (ts.has_sink() && is_finite_cost(v.values[ts.sink()])) return false;
  for (double val : v.values) {
    if (val < 0.0) return false;
  }
  for (StateId q = 0; q < ts.num_states(); ++q) {
    if (!is_finite_cost(v.values[q]) || v.values[q] == 0.0) continue;
    if (bellman_value(ts, view, v.values, q, nullptr) > v.values[q]) return false;
  }
  return true;
}

ConcreteController concretize(const AbstractController& controller, const UniformGrid& grid,
                              std::vector<InputLabel> labels) {
  return ConcreteController(grid, std::move(labels), controller);
}

ConcreteValueMap::ConcreteValueMap(UniformGrid grid, ValueFunction v2)
    : grid_(std::move(grid)), v2_(std::move(v2)) {
  if (v2_.values.size() != grid_.num_cells() && v2_.values.size() != grid_.num_cells() + 1)
    throw std::invalid_argument("value map: size does not match the grid");
}

double ConcreteValueMap::operator()(std::span<const double> x) const {
  const auto q = grid_.quantize(x);
  return q ? v2_.values[*q] : kInfCost;
}

ConcreteValueMap transfer_value(const ValueFunction& v2, const UniformGrid& grid,
                                const TransitionCost& cost) {
  if (cost.kind() == TransitionCost::Kind::kCustom) {
    const CostTable& t = cost.table();
    if (!t.concrete_max.empty()) {
      for (std::size_t i = 0; i < t.values.size(); ++i) {
        if (t.concrete_max[i] > t.values[i])
          throw ValidationError(
              "value transfer: abstract cost table underestimates the concrete cost");
      }
    }
  }
  return ConcreteValueMap(grid, v2);
}

SynthesisOutcome synthesize(const AbstractionResult& abstraction, const TransitionCost& cost,
                            const CellClasses& classes) {
  SynthesisOutcome out;
  out.value = value_iteration(abstraction.ts, cost, abstraction.labels, classes.targets,
                              classes.obstacles);
  out.controller = extract_controller(abstraction.ts, cost, abstraction.labels, out.value);
  out.feasible = true;
  out.worst_case = 0.0;
  for (StateId q : classes.initials) {
    out.worst_case = cost_max(out.worst_case, out.value.values[q]);
  }
  out.feasible = is_finite_cost(out.worst_case);
  return out;
}

}  // namespace tempo
