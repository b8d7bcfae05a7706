/*
 * abstraction.hpp
 *
 * Construction of the finite temporal abstraction of a continuous-time
 * plant over a uniform grid. The abstract input alphabet is the product of
 * a finite input set with a finite set of durations, so one abstraction
 * mixes several sampling periods.
 *
 * Two builders are provided. The growth-bound builder over-approximates
 * every cell's reachable set (center trajectory plus a divergence radius),
 * which makes the abstraction sound for controller refinement. The
 * data-driven builder only samples trajectories and therefore
 * under-approximates; controllers derived from it carry no guarantee.
 */

#ifndef TEMPO_ABSTRACTION_HPP_
#define TEMPO_ABSTRACTION_HPP_

#include <cstdint>
#include <vector>

#include "tempo/grid.hpp"
#include "tempo/ode.hpp"
#include "tempo/transition_system.hpp"

namespace tempo {

enum class AbstractionMode { kGrowthBound, kDataDriven };

struct AbstractionConfig {
  std::vector<std::vector<double>> inputs;  // finite input set U'
  std::vector<double> timesteps;            // finite duration set T, all > 0
  AbstractionMode mode = AbstractionMode::kGrowthBound;
  std::uint32_t samples_per_cell = 100;  // data-driven only
  std::uint64_t rng_seed = 0;            // data-driven only
  IntegratorConfig integrator;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct AbstractionStats {
  std::uint64_t transitions = 0;     // total successor multiset size
  std::uint64_t self_loops = 0;      // (cell, label) rows containing the cell itself
  std::uint64_t sink_rows = 0;       // rows whose successors include the sink
  std::uint64_t overflow_rows = 0;   // rows degraded to {sink} by integration overflow

  friend bool operator==(const AbstractionStats&, const AbstractionStats&) = default;
};

struct AbstractionResult {
  FiniteTransitionSystem ts;  // states = cells plus one sink
  UniformGrid grid;
  std::vector<InputLabel> labels;  // input-major: index = u_index * |T| + t_index
  AbstractionMode mode = AbstractionMode::kGrowthBound;
  std::uint32_t samples_per_cell = 0;
  std::uint64_t rng_seed = 0;
  IntegratorConfig integrator;
  std::string system_name;
  AbstractionStats stats;
};

/* the label list U' x T in input-major order; this fixes input ids */
std::vector<InputLabel> make_labels(const AbstractionConfig& cfg);

/*
 * Sound builder: per (cell, label), integrate the cell center, inflate by
 * the growth bound of the half cell widths and collect every cell touched
 * by the resulting box. When the box leaves the grid hull the sink is added
 * as a successor; integration overflow degrades the row to {sink}.
 */
AbstractionResult build_growth_bound(const ContinuousSystem& sys, const UniformGrid& grid,
                                     const AbstractionConfig& cfg);

/*
 * Sampling builder: per (cell, label), integrate the cell center plus
 * samples_per_cell points drawn uniformly from the cell with a stream
 * seeded by (rng_seed, cell, label); successors are the cells observed.
 * Deterministic for a fixed seed regardless of the thread count.
 */
AbstractionResult build_data_driven(const ContinuousSystem& sys, const UniformGrid& grid,
                                    const AbstractionConfig& cfg);

AbstractionResult build_abstraction(const ContinuousSystem& sys, const UniformGrid& grid,
                                    const AbstractionConfig& cfg);

/** @brief Structural health report: stuttering and non-determinism per duration. */
struct DiagnosticsReport {
  struct PerTimestep {
    double tau = 0.0;
    std::uint64_t rows = 0;        // (cell, label) rows with this duration
    std::uint64_t self_loops = 0;  // rows that contain their own cell
    std::uint64_t sink_rows = 0;   // rows that can fall off the domain
    double mean_successors = 0.0;
  };
  std::vector<PerTimestep> per_timestep;
  double self_loop_rate = 0.0;
  double mean_successors = 0.0;
  double sink_row_fraction = 0.0;
};

DiagnosticsReport abstraction_diagnostics(const AbstractionResult& result);

}  // namespace tempo

#endif /* TEMPO_ABSTRACTION_HPP_ */
