#include "tempo/controller.hpp"

#include <algorithm>
#include <stdexcept>

namespace tempo {

void AbstractController::set_choice(StateId q, std::vector<InputId> inputs) {
  if (q >= choices_.size()) throw std::out_of_range("controller: invalid state id");
  if (!std::is_sorted(inputs.begin(), inputs.end()))
    throw std::invalid_argument("controller: choices must be sorted");
  choices_[q] = std::move(inputs);
}

std::span<const InputId> AbstractController::choice(StateId q) const {
  if (q >= choices_.size()) throw std::out_of_range("controller: invalid state id");
  return choices_[q];
}

std::optional<InputId> AbstractController::export_choice(StateId q) const {
  const auto c = choice(q);
  if (c.empty()) return std::nullopt;
  return c.front();
}

std::vector<StateId> AbstractController::domain() const {
  std::vector<StateId> out;
  for (StateId q = 0; q < choices_.size(); ++q) {
    if (!choices_[q].empty()) out.push_back(q);
  }
  return out;
}

ConcreteController::ConcreteController(UniformGrid grid, std::vector<InputLabel> labels,
                                       AbstractController controller)
    : grid_(std::move(grid)), labels_(std::move(labels)), controller_(std::move(controller)) {
  if (controller_.num_states() != grid_.num_cells())
    throw std::invalid_argument("controller: state count does not match the grid");
}

std::vector<InputLabel> ConcreteController::choices(std::span<const double> x) const {
  std::vector<InputLabel> out;
  const auto q = grid_.quantize(x);
  if (!q) return out;
  for (InputId u : controller_.choice(*q)) out.push_back(labels_[u]);
  return out;
}

std::optional<std::pair<InputId, InputLabel>> ConcreteController::export_choice(
    std::span<const double> x) const {
  const auto q = grid_.quantize(x);
  if (!q) return std::nullopt;
  const auto u = controller_.export_choice(*q);
  if (!u) return std::nullopt;
  return std::make_pair(*u, labels_[*u]);
}

}  // namespace tempo
