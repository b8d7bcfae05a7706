#include "tempo/cost.hpp"

#include <algorithm>
#include <stdexcept>

#include "tempo/errors.hpp"

namespace tempo {

TransitionCost TransitionCost::effort(double epsilon) {
  if (!(epsilon > 0.0)) throw ValidationError("effort cost: epsilon must be > 0");
  TransitionCost c;
  c.kind_ = Kind::kEffort;
  c.epsilon_ = epsilon;
  return c;
}

TransitionCost TransitionCost::time() {
  TransitionCost c;
  c.kind_ = Kind::kTime;
  return c;
}

TransitionCost TransitionCost::custom(CostTable table) {
  const std::size_t rows = static_cast<std::size_t>(table.num_states) * table.num_inputs;
  if (table.values.size() != rows)
    throw ValidationError("custom cost: table size does not match states x inputs");
  if (!table.concrete_max.empty() && table.concrete_max.size() != rows)
    throw ValidationError("custom cost: concrete_max size does not match table");
  for (double v : table.values) {
    if (!(v > 0.0)) throw ValidationError("custom cost: entries must be > 0");
  }
  TransitionCost c;
  c.kind_ = Kind::kCustom;
  c.table_ = std::move(table);
  return c;
}

double TransitionCost::evaluate(const InputLabel& label) const {
  switch (kind_) {
    case Kind::kEffort: {
      double sq = 0.0;
      for (double ui : label.u) sq += ui * ui;
      return sq * label.tau + epsilon_;
    }
    case Kind::kTime:
      return label.tau;
    case Kind::kCustom:
      throw std::logic_error("custom cost requires a (state, input) pair");
  }
  return kInfCost;
}

double TransitionCost::evaluate(StateId q, InputId u, const InputLabel& label) const {
  if (kind_ != Kind::kCustom) return evaluate(label);
  if (q >= table_.num_states || u >= table_.num_inputs)
    throw std::out_of_range("custom cost: (state, input) outside the table");
  return table_.values[static_cast<std::size_t>(q) * table_.num_inputs + u];
}

double TransitionCost::lower_bound(std::span<const InputLabel> labels) const {
  switch (kind_) {
    case Kind::kEffort:
      return epsilon_;
    case Kind::kTime: {
      double b = kInfCost;
      for (const InputLabel& l : labels) b = cost_min(b, l.tau);
      return b;
    }
    case Kind::kCustom: {
      double b = kInfCost;
      for (double v : table_.values) {
        if (is_finite_cost(v)) b = cost_min(b, v);
      }
      return b;
    }
  }
  return kInfCost;
}

double evaluate_cost(const TransitionCost& c, const InputLabel& label) {
  return c.evaluate(label);
}

}  // namespace tempo
