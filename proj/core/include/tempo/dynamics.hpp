/*
 * dynamics.hpp
 *
 * Registry of benchmark vector fields selectable by string key from problem
 * configs. Custom plants are added through register_dynamics at startup;
 * there is no runtime expression parser.
 */

#ifndef TEMPO_DYNAMICS_HPP_
#define TEMPO_DYNAMICS_HPP_

#include <string>
#include <vector>

#include "tempo/ode.hpp"

namespace tempo {

struct DynamicsEntry {
  std::size_t dim_x = 0;
  std::size_t dim_u = 0;
  VectorField vector_field;
  JacobianBound jacobian_bound;
};

/* throws ValidationError for unknown keys; built-ins: "pendulum", "vehicle" */
const DynamicsEntry& dynamics_registry(const std::string& key);

bool dynamics_registered(const std::string& key);
std::vector<std::string> registered_dynamics();

/* register a custom plant; call before any worker threads start */
void register_dynamics(const std::string& key, DynamicsEntry entry);

/* assemble a system from a registered key and domain boxes */
ContinuousSystem make_system(const std::string& key, Box state_box, Box input_box);

}  // namespace tempo

#endif /* TEMPO_DYNAMICS_HPP_ */
