/*
 * io.hpp
 *
 * Artifact files written and read by the pipeline stages. All formats are
 * plain text with deterministic ordering and shortest round-trip number
 * formatting, so identical runs rewrite identical bytes.
 *
 *   abstraction.fts   transition system (core text format)
 *   abstraction.meta  grid, labels, mode, seed, stats (key-value)
 *   value.txt         one `cell v` record per cell, `inf` for infinity
 *   controller.txt    one `cell u_index tau` record per domain cell
 *   traj_*.txt        `t x_1 .. x_n u_1 .. u_m tau step_cost` rows
 */

#ifndef TEMPO_IO_HPP_
#define TEMPO_IO_HPP_

#include <string>

#include "tempo/abstraction.hpp"
#include "tempo/controller.hpp"
#include "tempo/sim.hpp"
#include "tempo/synthesis.hpp"

namespace tempo {

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

/* abstraction artifact pair: <stem>.fts and <stem>.meta */
void write_abstraction(const std::string& stem, const AbstractionResult& result);
AbstractionResult read_abstraction(const std::string& stem);

/* everything but the transition system; enough to run a controller */
struct AbstractionMeta {
  UniformGrid grid;
  std::vector<InputLabel> labels;
  std::size_t num_taus = 0;
  AbstractionMode mode = AbstractionMode::kGrowthBound;
  std::uint32_t samples_per_cell = 0;
  std::uint64_t rng_seed = 0;
  IntegratorConfig integrator;
  std::string system_name;
  AbstractionStats stats;
};
AbstractionMeta read_abstraction_meta(const std::string& stem);

std::string value_text(const ValueFunction& v, StateId num_cells);
ValueFunction read_value(const std::string& path, StateId num_cells, bool with_sink);

/* exports the deterministic choice (lowest input id) per domain cell;
 * u_index enumerates the input set U', tau is the duration value */
std::string controller_text(const AbstractController& controller,
                            std::span<const InputLabel> labels, std::size_t num_taus);
AbstractController read_controller(const std::string& path, StateId num_cells,
                                   std::span<const InputLabel> labels, std::size_t num_taus);

std::string trajectory_text(const Trajectory& traj);
std::string audit_text(const AuditReport& report);
std::string diagnostics_text(const DiagnosticsReport& report);
std::string stats_line(const AbstractionResult& result);

}  // namespace tempo

#endif /* TEMPO_IO_HPP_ */
