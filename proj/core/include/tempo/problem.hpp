/*
 * problem.hpp
 *
 * Problem configurations: everything a benchmark run needs, parsed from the
 * key-value config format and validated before any computation. The two
 * paper-style benchmarks ship as preset files under presets/.
 */

#ifndef TEMPO_PROBLEM_HPP_
#define TEMPO_PROBLEM_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "tempo/abstraction.hpp"
#include "tempo/cost.hpp"
#include "tempo/dynamics.hpp"
#include "tempo/grid.hpp"
#include "tempo/reach_avoid.hpp"

namespace tempo {

struct ProblemConfig {
  std::string system;  // registered dynamics key
  Box state_box;
  Box input_box;
  std::vector<double> eta;

  /* either per-dimension uniform counts or explicit vectors */
  std::vector<std::uint32_t> input_counts;
  std::vector<std::vector<double>> explicit_inputs;

  std::vector<double> timesteps;  // normalized: ascending, unique

  std::string cost_kind = "time";  // "effort" or "time"
  double epsilon = 1e-6;           // effort only

  ReachAvoidSpec spec;

  AbstractionMode mode = AbstractionMode::kGrowthBound;
  std::uint32_t samples = 100;  // data-driven samples per cell
  std::uint64_t seed = 0;
  unsigned substeps = 10;

  std::string out_dir;  // optional default output directory
};

/* parse + validate; throws ValidationError naming the offending field */
ProblemConfig load_config(const std::string& path);
ProblemConfig parse_config(const std::string& text, const std::string& origin);

/* canonical echo with all defaults filled; byte-stable across runs */
std::string resolved_config_text(const ProblemConfig& cfg);

/* the realized input set U' (uniform counts expanded to vectors) */
std::vector<std::vector<double>> make_input_vectors(const ProblemConfig& cfg);

ContinuousSystem make_system_from(const ProblemConfig& cfg);
UniformGrid make_grid(const ProblemConfig& cfg);
AbstractionConfig make_abstraction_config(const ProblemConfig& cfg, unsigned threads = 0);
TransitionCost make_cost(const ProblemConfig& cfg);

/* number of abstract labels |U'| * |T| */
std::uint64_t label_budget(const ProblemConfig& cfg);

struct EqualizedBudget {
  ProblemConfig config;
  std::uint64_t requested_labels = 0;
  std::uint64_t achieved_labels = 0;  // nearest product reachable by uniform counts
};

/*
 * Derive a single-duration config whose input discretization is refined so
 * the label count matches the base config's budget as closely as a uniform
 * per-dimension refinement allows; used for fair single-vs-multi
 * comparisons. Requires the base to use input_counts.
 */
EqualizedBudget equalized_input_budget(const ProblemConfig& base, double single_tau);

}  // namespace tempo

#endif /* TEMPO_PROBLEM_HPP_ */
