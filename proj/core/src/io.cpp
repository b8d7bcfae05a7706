#include "tempo/io.hpp"

#include <fstream>
#include <sstream>

#include "tempo/kv.hpp"

namespace tempo {

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ValidationError("write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_abstraction(const std::string& stem, const AbstractionResult& result) {
  {
    std::ofstream out(stem + ".fts", std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + stem + ".fts'");
    result.ts.write(out);
  }
  std::ostringstream meta;
  meta << "system = " << result.system_name << "\n";
  meta << "grid_lo = "
       << format_double_list({result.grid.lo().begin(), result.grid.lo().end()}) << "\n";
  meta << "grid_eta = "
       << format_double_list({result.grid.eta().begin(), result.grid.eta().end()}) << "\n";
  meta << "grid_dims = [";
  for (std::size_t k = 0; k < result.grid.dim(); ++k)
    meta << (k ? ", " : "") << result.grid.dims()[k];
  meta << "]\n";
  const std::size_t num_taus = result.labels.empty() ? 0 : [&] {
    std::size_t n = 1;
    while (n < result.labels.size() && result.labels[n].u == result.labels[0].u) ++n;
    return n;
  }();
  std::vector<double> taus;
  for (std::size_t t = 0; t < num_taus; ++t) taus.push_back(result.labels[t].tau);
  meta << "timesteps = " << format_double_list(taus) << "\n";
  for (std::size_t j = 0; j < result.labels.size(); j += num_taus)
    meta << "input = " << format_double_list(result.labels[j].u) << "\n";
  meta << "mode = " << (result.mode == AbstractionMode::kGrowthBound ? "growth" : "data") << "\n";
  meta << "samples = " << result.samples_per_cell << "\n";
  meta << "seed = " << result.rng_seed << "\n";
  meta << "substeps = " << result.integrator.substeps_per_tau << "\n";
  meta << "transitions = " << result.stats.transitions << "\n";
  meta << "self_loops = " << result.stats.self_loops << "\n";
  meta << "sink_rows = " << result.stats.sink_rows << "\n";
  meta << "overflow_rows = " << result.stats.overflow_rows << "\n";
  write_text_file(stem + ".meta", meta.str());
}

AbstractionMeta read_abstraction_meta(const std::string& stem) {
  const KvFile meta = KvFile::load(stem + ".meta");
  AbstractionMeta out;
  out.system_name = meta.require_one("system");
  const auto lo = parse_double_list(meta.require_one("grid_lo"), "grid_lo");
  const auto eta = parse_double_list(meta.require_one("grid_eta"), "grid_eta");
  const auto dims_raw = parse_double_list(meta.require_one("grid_dims"), "grid_dims");
  std::vector<std::uint32_t> dims;
  for (double d : dims_raw) dims.push_back(static_cast<std::uint32_t>(d));
  out.grid = UniformGrid::from_dims(lo, eta, dims);

  const auto taus = parse_double_list(meta.require_one("timesteps"), "timesteps");
  std::vector<std::vector<double>> inputs;
  for (const std::string& line : meta.get_all("input"))
    inputs.push_back(parse_double_list(line, "input"));
  if (taus.empty() || inputs.empty())
    throw ValidationError(stem + ".meta: empty input or timestep set");
  out.num_taus = taus.size();
  for (const auto& u : inputs) {
    for (double tau : taus) out.labels.push_back(InputLabel{u, tau});
  }

  const std::string mode = meta.require_one("mode");
  if (mode == "growth")
    out.mode = AbstractionMode::kGrowthBound;
  else if (mode == "data")
    out.mode = AbstractionMode::kDataDriven;
  else
    throw ValidationError(stem + ".meta: bad mode '" + mode + "'");
  out.samples_per_cell =
      static_cast<std::uint32_t>(parse_double(meta.require_one("samples"), "samples"));
  out.rng_seed = static_cast<std::uint64_t>(parse_double(meta.require_one("seed"), "seed"));
  out.integrator.substeps_per_tau =
      static_cast<unsigned>(parse_double(meta.require_one("substeps"), "substeps"));
  out.stats.transitions =
      static_cast<std::uint64_t>(parse_double(meta.require_one("transitions"), "transitions"));
  out.stats.self_loops =
      static_cast<std::uint64_t>(parse_double(meta.require_one("self_loops"), "self_loops"));
  out.stats.sink_rows =
      static_cast<std::uint64_t>(parse_double(meta.require_one("sink_rows"), "sink_rows"));
  out.stats.overflow_rows = static_cast<std::uint64_t>(
      parse_double(meta.require_one("overflow_rows"), "overflow_rows"));
  return out;
}

AbstractionResult read_abstraction(const std::string& stem) {
  AbstractionMeta meta = read_abstraction_meta(stem);
  AbstractionResult result;
  result.grid = std::move(meta.grid);
  result.labels = std::move(meta.labels);
  result.mode = meta.mode;
  result.samples_per_cell = meta.samples_per_cell;
  result.rng_seed = meta.rng_seed;
  result.integrator = meta.integrator;
  result.system_name = std::move(meta.system_name);
  result.stats = meta.stats;

  std::ifstream fts(stem + ".fts", std::ios::binary);
  if (!fts) throw ValidationError("cannot open '" + stem + ".fts'");
  result.ts = FiniteTransitionSystem::read(fts);
  if (result.ts.num_states() != result.grid.num_cells())
    throw ValidationError(stem + ": transition system does not match the grid");
  if (result.ts.num_inputs() != result.labels.size())
    throw ValidationError(stem + ": transition system does not match the label set");
  return result;
}

std::string value_text(const ValueFunction& v, StateId num_cells) {
  if (v.values.size() < num_cells)
    throw std::invalid_argument("value dump: value function too short");
  std::ostringstream os;
  for (StateId q = 0; q < num_cells; ++q)
    os << q << ' ' << format_double(v.values[q]) << '\n';
  return os.str();
}

ValueFunction read_value(const std::string& path, StateId num_cells, bool with_sink) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  ValueFunction v;
  v.values.assign(static_cast<std::size_t>(num_cells) + (with_sink ? 1 : 0), kInfCost);
  std::uint64_t q = 0;
  std::string token;
  std::uint64_t count = 0;
  while (in >> q >> token) {
    if (q >= num_cells) throw ValidationError(path + ": cell id out of range");
    v.values[q] = parse_double(token, "value");
    ++count;
  }
  if (count != num_cells) throw ValidationError(path + ": expected one record per cell");
  return v;
}

std::string controller_text(const AbstractController& controller,
                            std::span<const InputLabel> labels, std::size_t num_taus) {
  std::ostringstream os;
  for (StateId q = 0; q < controller.num_states(); ++q) {
    const auto u = controller.export_choice(q);
    if (!u) continue;
    os << q << ' ' << (*u / num_taus) << ' ' << format_double(labels[*u].tau) << '\n';
  }
  return os.str();
}

AbstractController read_controller(const std::string& path, StateId num_cells,
                                   std::span<const InputLabel> labels, std::size_t num_taus) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  AbstractController controller(num_cells);
  std::uint64_t q = 0, u_index = 0;
  std::string tau_token;
  while (in >> q >> u_index >> tau_token) {
    if (q >= num_cells) throw ValidationError(path + ": cell id out of range");
    const double tau = parse_double(tau_token, "tau");
    const std::size_t base = u_index * num_taus;
    if (base >= labels.size()) throw ValidationError(path + ": input index out of range");
    std::size_t label = labels.size();
    for (std::size_t t = 0; t < num_taus; ++t) {
      if (labels[base + t].tau == tau) {
        label = base + t;
        break;
      }
    }
    if (label == labels.size())
      throw ValidationError(path + ": timestep " + tau_token + " not in the label set");
    controller.set_choice(static_cast<StateId>(q), {static_cast<InputId>(label)});
  }
  return controller;
}

std::string trajectory_text(const Trajectory& traj) {
  std::ostringstream os;
  os << "# t x_1..x_n u_1..u_m tau step_cost (terminal row has nan input columns)\n";
  for (const TrajectorySample& s : traj.samples) {
    os << format_double(s.t);
    for (double xi : s.x) os << ' ' << format_double(xi);
    if (s.label) {
      for (double ui : s.label->u) os << ' ' << format_double(ui);
      os << ' ' << format_double(s.label->tau) << ' ' << format_double(s.step_cost);
    } else {
      std::size_t input_dim = 0;
      for (const TrajectorySample& other : traj.samples) {
        if (other.label) {
          input_dim = other.label->u.size();
          break;
        }
      }
      for (std::size_t i = 0; i < input_dim + 1; ++i) os << " nan";
      os << " 0";
    }
    os << '\n';
  }
  os << "# outcome " << to_string(traj.outcome) << " total_cost "
     << format_double(traj.total_cost) << " steps " << traj.steps() << '\n';
  if (!traj.note.empty()) os << "# note " << traj.note << '\n';
  return os.str();
}

std::string audit_text(const AuditReport& report) {
  std::ostringstream os;
  for (const std::string& line : report.header) os << "# " << line << '\n';
  os << "samples = " << report.samples << '\n';
  os << "reached = " << report.reached << '\n';
  os << "violations = " << report.violations << '\n';
  os << "max_observed_cost = " << format_double(report.max_observed_cost) << '\n';
  os << "max_bound = " << format_double(report.max_bound) << '\n';
  os << "max_cost_ratio = " << format_double(report.max_cost_ratio) << '\n';
  os << "max_steps_observed = " << report.max_steps_observed << '\n';
  os << "step_budget = " << report.step_budget << '\n';
  os << "cost_lower_bound = " << format_double(report.cost_lower_bound) << '\n';
  os << "certified = " << (report.certified ? "true" : "false") << '\n';
  os << "taus_used = " << format_double_list(report.taus_used) << '\n';
  return os.str();
}

std::string diagnostics_text(const DiagnosticsReport& report) {
  std::ostringstream os;
  os << "self_loop_rate = " << format_double(report.self_loop_rate) << '\n';
  os << "mean_successors = " << format_double(report.mean_successors) << '\n';
  os << "sink_row_fraction = " << format_double(report.sink_row_fraction) << '\n';
  os << "timestep_count = " << report.per_timestep.size() << '\n';
  for (std::size_t t = 0; t < report.per_timestep.size(); ++t) {
    const auto& b = report.per_timestep[t];
    os << "tau." << t << " = " << format_double(b.tau) << '\n';
    os << "rows." << t << " = " << b.rows << '\n';
    os << "self_loops." << t << " = " << b.self_loops << '\n';
    os << "sink_rows." << t << " = " << b.sink_rows << '\n';
    os << "mean_successors." << t << " = " << format_double(b.mean_successors) << '\n';
  }
  return os.str();
}

std::string stats_line(const AbstractionResult& result) {
  std::ostringstream os;
  os << "cells=" << result.grid.num_cells() << " labels=" << result.labels.size()
     << " transitions=" << result.stats.transitions
     << " selfloops=" << result.stats.self_loops;
  return os.str();
}

}  // namespace tempo
