#include "tempo/abstraction.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "tempo/parallel.hpp"
#include "tempo/rng.hpp"

namespace tempo {

namespace {

/* rounding guard added to the growth radius so box/cell intersections do
 * not lose a successor to the last ulp (same role as the measurement fuzz
 * in classical symbolic-model tools) */
constexpr double kRadiusFuzz = 1e-10;

void validate_config(const ContinuousSystem& sys, const UniformGrid& grid,
                     const AbstractionConfig& cfg) {
  if (cfg.inputs.empty()) throw ValidationError("abstraction: at least one input required");
  if (cfg.timesteps.empty()) throw ValidationError("abstraction: at least one timestep required");
  for (std::size_t i = 0; i < cfg.timesteps.size(); ++i) {
    if (!(cfg.timesteps[i] > 0.0))
      throw ValidationError("abstraction: timesteps must be > 0");
    if (i > 0 && !(cfg.timesteps[i] > cfg.timesteps[i - 1]))
      throw ValidationError("abstraction: timesteps must be strictly increasing");
  }
  for (const auto& u : cfg.inputs) {
    if (u.size() != sys.dim_u)
      throw ValidationError("abstraction: input vector dimension mismatch");
    if (!sys.input_box.contains(u))
      throw ValidationError("abstraction: input vector outside the input box");
  }
  if (grid.dim() != sys.dim_x)
    throw ValidationError("abstraction: grid dimension does not match the system");
  const Box hull = grid.hull();
  for (std::size_t k = 0; k < grid.dim(); ++k) {
    const double slack = grid.eta()[k] * (1.0 + 1e-9);
    if (hull.lo[k] < sys.state_box.lo[k] - 1e-9 * grid.eta()[k] ||
        hull.hi[k] > sys.state_box.hi[k] + slack)
      throw ValidationError("abstraction: grid must lie inside the state box");
  }
  if (cfg.mode == AbstractionMode::kDataDriven && cfg.samples_per_cell < 1)
    throw ValidationError("abstraction: samples_per_cell must be >= 1");
}

struct RowFlags {
  static constexpr std::uint8_t kNonEmpty = 1;
  static constexpr std::uint8_t kExits = 2;
  static constexpr std::uint8_t kOverflow = 4;
};

AbstractionResult finalize(const ContinuousSystem& sys, const UniformGrid& grid,
                           const AbstractionConfig& cfg, std::vector<InputLabel> labels,
                           FiniteTransitionSystem ts, AbstractionStats stats) {
  AbstractionResult res;
  res.ts = std::move(ts);
  res.grid = grid;
  res.labels = std::move(labels);
  res.mode = cfg.mode;
  res.samples_per_cell = cfg.mode == AbstractionMode::kDataDriven ? cfg.samples_per_cell : 0;
  res.rng_seed = cfg.mode == AbstractionMode::kDataDriven ? cfg.rng_seed : 0;
  res.integrator = cfg.integrator;
  res.system_name = sys.name;
  res.stats = stats;
  return res;
}

}  // namespace

std::vector<InputLabel> make_labels(const AbstractionConfig& cfg) {
  std::vector<InputLabel> labels;
  labels.reserve(cfg.inputs.size() * cfg.timesteps.size());
  for (const auto& u : cfg.inputs) {
    for (double tau : cfg.timesteps) labels.push_back(InputLabel{u, tau});
  }
  return labels;
}

AbstractionResult build_growth_bound(const ContinuousSystem& sys, const UniformGrid& grid,
                                     const AbstractionConfig& cfg) {
  validate_config(sys, grid, cfg);
  std::vector<InputLabel> labels = make_labels(cfg);

  const std::uint64_t num_cells = grid.num_cells();
  const std::size_t num_labels = labels.size();
  const std::size_t dim = grid.dim();
  const std::uint64_t rows = num_cells * num_labels;
  const CellId sink = static_cast<CellId>(num_cells);

  /* per-label inflation radius: the growth bound of the half cell widths
   * plus the rounding guard; identical for every cell */
  std::vector<double> half_eta(dim);
  for (std::size_t k = 0; k < dim; ++k) half_eta[k] = 0.5 * grid.eta()[k];
  std::vector<std::vector<double>> radius(num_labels);
  for (std::size_t j = 0; j < num_labels; ++j) {
    radius[j] = growth_bound(sys, labels[j].u, labels[j].tau, half_eta);
    for (std::size_t k = 0; k < dim; ++k) radius[j][k] += grid.eta()[k] * kRadiusFuzz;
  }

  std::vector<CellId> corner_lo(rows, 0);
  std::vector<CellId> corner_hi(rows, 0);
  std::vector<std::uint8_t> flags(rows, 0);

  parallel_blocks(num_cells, cfg.threads, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
    Integrator integ(sys, cfg.integrator);
    std::vector<double> center(dim), post(dim);
    std::vector<std::uint32_t> ilo(dim), ihi(dim);
    Box box;
    box.lo.resize(dim);
    box.hi.resize(dim);
    for (std::uint64_t q = begin; q < end; ++q) {
      const std::vector<double> c = grid.cell_center(static_cast<CellId>(q));
      for (std::size_t j = 0; j < num_labels; ++j) {
        const std::uint64_t row = q * num_labels + j;
        std::copy(c.begin(), c.end(), center.begin());
        try {
          integ.flow(center, labels[j].u, labels[j].tau, post);
        } catch (const IntegrationOverflowError&) {
          flags[row] = RowFlags::kOverflow;
          continue;
        }
        for (std::size_t k = 0; k < dim; ++k) {
          box.lo[k] = post[k] - radius[j][k];
          box.hi[k] = post[k] + radius[j][k];
        }
        bool exits = false;
        const bool nonempty = grid.intersect_ranges(box, ilo, ihi, exits);
        std::uint8_t f = 0;
        if (nonempty) {
          f |= RowFlags::kNonEmpty;
          corner_lo[row] = grid.flatten(ilo);
          corner_hi[row] = grid.flatten(ihi);
        }
        if (exits) f |= RowFlags::kExits;
        flags[row] = f;
      }
    }
  });

  /* assemble the transition system in ascending (cell, label) order */
  std::vector<std::uint64_t> offsets(rows + 1, 0);
  AbstractionStats stats;
  {
    std::vector<std::uint32_t> a(dim), b(dim), qi(dim);
    for (std::uint64_t row = 0; row < rows; ++row) {
      std::uint64_t count = 0;
      const std::uint8_t f = flags[row];
      if (f & RowFlags::kNonEmpty) {
        grid.unflatten(corner_lo[row], a);
        grid.unflatten(corner_hi[row], b);
        count = 1;
        for (std::size_t k = 0; k < dim; ++k) count *= b[k] - a[k] + 1;
        const CellId q = static_cast<CellId>(row / num_labels);
        grid.unflatten(q, qi);
        bool self = true;
        for (std::size_t k = 0; k < dim; ++k) {
          if (qi[k] < a[k] || qi[k] > b[k]) {
            self = false;
            break;
          }
        }
        if (self) ++stats.self_loops;
      }
      if (f & (RowFlags::kExits | RowFlags::kOverflow)) {
        ++count;
        ++stats.sink_rows;
        if (f & RowFlags::kOverflow) ++stats.overflow_rows;
      }
      offsets[row + 1] = offsets[row] + count;
    }
  }
  stats.transitions = offsets.back();

  std::vector<StateId> data(offsets.back());
  parallel_blocks(num_cells, cfg.threads, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
    std::vector<std::uint32_t> a(dim), b(dim), cur(dim);
    for (std::uint64_t q = begin; q < end; ++q) {
      for (std::size_t j = 0; j < num_labels; ++j) {
        const std::uint64_t row = q * num_labels + j;
        std::uint64_t pos = offsets[row];
        const std::uint8_t f = flags[row];
        if (f & RowFlags::kNonEmpty) {
          grid.unflatten(corner_lo[row], a);
          grid.unflatten(corner_hi[row], b);
          cur = a;
          while (true) {
            data[pos++] = grid.flatten(cur);
            std::size_t k = dim;
            bool done = false;
            while (true) {
              if (k == 0) {
                done = true;
                break;
              }
              --k;
              if (cur[k] < b[k]) {
                ++cur[k];
                for (std::size_t l = k + 1; l < dim; ++l) cur[l] = a[l];
                break;
              }
            }
            if (done) break;
          }
        }
        if (f & (RowFlags::kExits | RowFlags::kOverflow)) data[pos++] = sink;
      }
    }
  });

  FiniteTransitionSystem ts = FiniteTransitionSystem::from_csr(
      static_cast<StateId>(num_cells), static_cast<InputId>(num_labels), true,
      std::move(offsets), std::move(data));
  return finalize(sys, grid, cfg, std::move(labels), std::move(ts), stats);
}

AbstractionResult build_data_driven(const ContinuousSystem& sys, const UniformGrid& grid,
                                    const AbstractionConfig& cfg) {
  validate_config(sys, grid, cfg);
  std::vector<InputLabel> labels = make_labels(cfg);

  const std::uint64_t num_cells = grid.num_cells();
  const std::size_t num_labels = labels.size();
  const std::size_t dim = grid.dim();
  const CellId sink = static_cast<CellId>(num_cells);

  /* per-cell arenas keep successor data local; rows inside a cell are laid
   * out in label order so the merge below is a plain concatenation */
  struct CellRows {
    std::vector<StateId> data;
    std::vector<std::uint32_t> row_end;  // one past the end per label
  };
  std::vector<CellRows> cells(num_cells);
  std::atomic<std::uint64_t> overflow_rows{0};

  parallel_blocks(num_cells, cfg.threads, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
    Integrator integ(sys, cfg.integrator);
    std::vector<double> x(dim), post(dim);
    std::vector<StateId> ids;
    for (std::uint64_t q = begin; q < end; ++q) {
      CellRows& rows = cells[q];
      rows.row_end.resize(num_labels);
      const Box cell = grid.cell_box(static_cast<CellId>(q));
      const std::vector<double> center = grid.cell_center(static_cast<CellId>(q));
      for (std::size_t j = 0; j < num_labels; ++j) {
        Rng rng(Rng::mix(cfg.rng_seed, q, j));
        ids.clear();
        bool overflow = false;
        /* sample 0 is always the cell center */
        for (std::uint32_t s = 0; s <= cfg.samples_per_cell; ++s) {
          if (s == 0) {
            std::copy(center.begin(), center.end(), x.begin());
          } else {
            for (std::size_t k = 0; k < dim; ++k) x[k] = rng.uniform(cell.lo[k], cell.hi[k]);
          }
          try {
            integ.flow(x, labels[j].u, labels[j].tau, post);
          } catch (const IntegrationOverflowError&) {
            overflow = true;
            break;
          }
          const auto id = grid.quantize(post);
          ids.push_back(id ? *id : sink);
        }
        if (overflow) {
          ids.assign(1, sink);
          overflow_rows.fetch_add(1, std::memory_order_relaxed);
        } else {
          std::sort(ids.begin(), ids.end());
          ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        }
        rows.data.insert(rows.data.end(), ids.begin(), ids.end());
        rows.row_end[j] = static_cast<std::uint32_t>(rows.data.size());
      }
    }
  });

  /* merge in ascending (cell, label) order */
  const std::uint64_t nrows = num_cells * num_labels;
  std::vector<std::uint64_t> offsets(nrows + 1, 0);
  std::uint64_t total = 0;
  for (std::uint64_t q = 0; q < num_cells; ++q) {
    std::uint32_t prev = 0;
    for (std::size_t j = 0; j < num_labels; ++j) {
      const std::uint32_t rend = cells[q].row_end[j];
      total += rend - prev;
      offsets[q * num_labels + j + 1] = total;
      prev = rend;
    }
  }
  std::vector<StateId> data;
  data.reserve(total);
  AbstractionStats stats;
  for (std::uint64_t q = 0; q < num_cells; ++q) {
    const CellRows& rows = cells[q];
    std::uint32_t prev = 0;
    for (std::size_t j = 0; j < num_labels; ++j) {
      const std::uint32_t rend = rows.row_end[j];
      const auto first = rows.data.begin() + prev;
      const auto last = rows.data.begin() + rend;
      data.insert(data.end(), first, last);
      if (std::binary_search(first, last, static_cast<StateId>(q))) ++stats.self_loops;
      if (rend > prev && *(last - 1) == sink) ++stats.sink_rows;
      prev = rend;
    }
    std::vector<StateId>().swap(cells[q].data);  // release arena early
  }
  stats.transitions = data.size();
  stats.overflow_rows = overflow_rows.load();

  FiniteTransitionSystem ts = FiniteTransitionSystem::from_csr(
      static_cast<StateId>(num_cells), static_cast<InputId>(num_labels), true,
      std::move(offsets), std::move(data));
  return finalize(sys, grid, cfg, std::move(labels), std::move(ts), stats);
}

AbstractionResult build_abstraction(const ContinuousSystem& sys, const UniformGrid& grid,
                                    const AbstractionConfig& cfg) {
  return cfg.mode == AbstractionMode::kGrowthBound ? build_growth_bound(sys, grid, cfg)
                                                   : build_data_driven(sys, grid, cfg);
}

DiagnosticsReport abstraction_diagnostics(const AbstractionResult& result) {
  const FiniteTransitionSystem& ts = result.ts;
  /* recover the duration set from the labels (input-major layout) */
  std::size_t num_taus = 1;
  for (std::size_t j = 1; j < result.labels.size(); ++j) {
    if (result.labels[j].u == result.labels[0].u)
      num_taus = j + 1;
    else
      break;
  }
  DiagnosticsReport report;
  report.per_timestep.resize(num_taus);
  for (std::size_t t = 0; t < num_taus; ++t) report.per_timestep[t].tau = result.labels[t].tau;

  std::uint64_t total_rows = 0, total_succ = 0, total_self = 0, total_sink = 0;
  std::vector<std::uint64_t> succ_per_tau(num_taus, 0);
  for (StateId q = 0; q < ts.num_states(); ++q) {
    for (InputId u = 0; u < ts.num_inputs(); ++u) {
      const auto succ = ts.successors(q, u);
      if (succ.empty()) continue;
      auto& bucket = report.per_timestep[u % num_taus];
      ++bucket.rows;
      ++total_rows;
      succ_per_tau[u % num_taus] += succ.size();
      total_succ += succ.size();
      if (std::binary_search(succ.begin(), succ.end(), q)) {
        ++bucket.self_loops;
        ++total_self;
      }
      if (ts.has_sink() && succ.back() == ts.sink()) {
        ++bucket.sink_rows;
        ++total_sink;
      }
    }
  }
  for (std::size_t t = 0; t < num_taus; ++t) {
    auto& bucket = report.per_timestep[t];
    bucket.mean_successors =
        bucket.rows ? static_cast<double>(succ_per_tau[t]) / static_cast<double>(bucket.rows) : 0.0;
  }
  report.self_loop_rate =
      total_rows ? static_cast<double>(total_self) / static_cast<double>(total_rows) : 0.0;
  report.mean_successors =
      total_rows ? static_cast<double>(total_succ) / static_cast<double>(total_rows) : 0.0;
  report.sink_row_fraction =
      total_rows ? static_cast<double>(total_sink) / static_cast<double>(total_rows) : 0.0;
  return report;
}

}  // namespace tempo
