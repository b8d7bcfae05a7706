/*
 * controller.hpp
 *
 * Static (memoryless) controllers. The abstract controller maps cell ids to
 * input-id choices; the concrete controller is its composition with the
 * grid quantizer and is what gets executed on the plant.
 */

#ifndef TEMPO_CONTROLLER_HPP_
#define TEMPO_CONTROLLER_HPP_

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tempo/grid.hpp"
#include "tempo/transition_system.hpp"

namespace tempo {

/** @brief Set-valued state feedback on the abstraction. */
class AbstractController {
 public:
  AbstractController() = default;
  explicit AbstractController(StateId num_states) : choices_(num_states) {}

  StateId num_states() const { return static_cast<StateId>(choices_.size()); }

  /* inputs must be sorted and unique */
  void set_choice(StateId q, std::vector<InputId> inputs);

  std::span<const InputId> choice(StateId q) const;

  /* deterministic export: the lowest input id; with labels ordered by input
   * then timestep this prefers shorter durations among ties */
  std::optional<InputId> export_choice(StateId q) const;

  /* states with nonempty choice, ascending */
  std::vector<StateId> domain() const;

  friend bool operator==(const AbstractController&, const AbstractController&) = default;

 private:
  std::vector<std::vector<InputId>> choices_;
};

/**
 * @brief Controller for the plant: quantize the state, look up the cell's
 * choice. States outside the grid or outside the controller domain get an
 * empty choice.
 */
class ConcreteController {
 public:
  ConcreteController(UniformGrid grid, std::vector<InputLabel> labels,
                     AbstractController controller);

  const UniformGrid& grid() const { return grid_; }
  std::span<const InputLabel> labels() const { return labels_; }
  const AbstractController& abstract() const { return controller_; }

  std::vector<InputLabel> choices(std::span<const double> x) const;
  std::optional<std::pair<InputId, InputLabel>> export_choice(std::span<const double> x) const;

 private:
  UniformGrid grid_;
  std::vector<InputLabel> labels_;
  AbstractController controller_;
};

}  // namespace tempo

#endif /* TEMPO_CONTROLLER_HPP_ */
