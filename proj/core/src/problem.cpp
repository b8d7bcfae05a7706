#include "tempo/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tempo/kv.hpp"

namespace tempo {

namespace {

const std::vector<std::string> kConfigKeys = {
    "system",     "state_lo",  "state_hi", "eta",       "input_lo", "input_hi",
    "input_counts", "input",   "timesteps", "cost",     "epsilon",  "initial",
    "target",     "obstacle",  "mode",     "samples",   "seed",     "substeps",
    "out",
};

std::vector<double> require_list(const KvFile& kv, const std::string& key, std::size_t arity,
                                 const std::string& what) {
  const auto values = parse_double_list(kv.require_one(key), key);
  if (arity != 0 && values.size() != arity)
    throw ValidationError(kv.origin() + ": '" + key + "' must have " + std::to_string(arity) +
                          " entries (" + what + ")");
  return values;
}

Box parse_rect(const std::string& value, std::size_t dim, const std::string& field,
               const std::string& origin) {
  const auto values = parse_double_list(value, field);
  if (values.size() != 2 * dim)
    throw ValidationError(origin + ": '" + field + "' must list " + std::to_string(2 * dim) +
                          " numbers (lo then hi per dimension)");
  Box b;
  b.lo.assign(values.begin(), values.begin() + dim);
  b.hi.assign(values.begin() + dim, values.end());
  if (!b.wellformed())
    throw ValidationError(origin + ": '" + field + "' has lo > hi or non-finite bounds");
  return b;
}

}  // namespace

ProblemConfig parse_config(const std::string& text, const std::string& origin) {
  const KvFile kv = KvFile::parse(text, origin);
  kv.restrict_keys(kConfigKeys);
  ProblemConfig cfg;

  cfg.system = kv.require_one("system");
  if (!dynamics_registered(cfg.system))
    throw ValidationError(origin + ": unknown system key '" + cfg.system + "'");
  const DynamicsEntry& dyn = dynamics_registry(cfg.system);

  cfg.state_box.lo = require_list(kv, "state_lo", dyn.dim_x, "state dimension");
  cfg.state_box.hi = require_list(kv, "state_hi", dyn.dim_x, "state dimension");
  if (!cfg.state_box.wellformed())
    throw ValidationError(origin + ": 'state_lo'/'state_hi' has lo >= hi or non-finite bounds");
  cfg.eta = require_list(kv, "eta", dyn.dim_x, "state dimension");
  for (double e : cfg.eta) {
    if (!(e > 0.0)) throw ValidationError(origin + ": 'eta' entries must be > 0");
  }
  cfg.input_box.lo = require_list(kv, "input_lo", dyn.dim_u, "input dimension");
  cfg.input_box.hi = require_list(kv, "input_hi", dyn.dim_u, "input dimension");
  if (!cfg.input_box.wellformed())
    throw ValidationError(origin + ": 'input_lo'/'input_hi' has lo > hi or non-finite bounds");

  const bool has_counts = kv.has("input_counts");
  const bool has_explicit = kv.has("input");
  if (has_counts == has_explicit)
    throw ValidationError(origin + ": give exactly one of 'input_counts' or 'input' lines");
  if (has_counts) {
    const auto counts = parse_double_list(kv.require_one("input_counts"), "input_counts");
    if (counts.size() != dyn.dim_u)
      throw ValidationError(origin + ": 'input_counts' must have one entry per input dimension");
    for (double c : counts) {
      if (!(c >= 1.0) || c != std::floor(c))
        throw ValidationError(origin + ": 'input_counts' entries must be positive integers");
      cfg.input_counts.push_back(static_cast<std::uint32_t>(c));
    }
  } else {
    for (const std::string& line : kv.get_all("input")) {
      const auto u = parse_double_list(line, "input");
      if (u.size() != dyn.dim_u)
        throw ValidationError(origin + ": 'input' must list one value per input dimension");
      if (!cfg.input_box.contains(u))
        throw ValidationError(origin + ": 'input' vector outside the input box");
      cfg.explicit_inputs.push_back(u);
    }
  }

  cfg.timesteps = parse_double_list(kv.require_one("timesteps"), "timesteps");
  if (cfg.timesteps.empty())
    throw ValidationError(origin + ": 'timesteps' must not be empty");
  for (double tau : cfg.timesteps) {
    if (!(tau > 0.0)) throw ValidationError(origin + ": 'timesteps' entries must be > 0");
  }
  std::sort(cfg.timesteps.begin(), cfg.timesteps.end());
  cfg.timesteps.erase(std::unique(cfg.timesteps.begin(), cfg.timesteps.end()),
                      cfg.timesteps.end());

  cfg.cost_kind = kv.require_one("cost");
  if (cfg.cost_kind != "effort" && cfg.cost_kind != "time")
    throw ValidationError(origin + ": 'cost' must be 'effort' or 'time'");
  if (const auto eps = kv.get_one("epsilon")) {
    cfg.epsilon = parse_double(*eps, "epsilon");
    if (!(cfg.epsilon > 0.0)) throw ValidationError(origin + ": 'epsilon' must be > 0");
  }

  auto parse_rects = [&](const char* key, std::vector<Box>& dst, bool required) {
    const auto lines = kv.get_all(key);
    if (required && lines.empty())
      throw ValidationError(origin + ": at least one '" + std::string(key) + "' required");
    for (const std::string& line : lines) {
      Box b = parse_rect(line, dyn.dim_x, key, origin);
      if (!cfg.state_box.contains(b))
        throw ValidationError(origin + ": '" + std::string(key) +
                              "' rectangle outside the state box");
      dst.push_back(std::move(b));
    }
  };
  parse_rects("initial", cfg.spec.initial, true);
  parse_rects("target", cfg.spec.target, true);
  parse_rects("obstacle", cfg.spec.obstacles, false);
  if (!spec_is_wellformed(cfg.spec))
    throw ValidationError(origin + ": 'target' and 'obstacle' rectangles must be disjoint");

  if (const auto mode = kv.get_one("mode")) {
    if (*mode == "growth")
      cfg.mode = AbstractionMode::kGrowthBound;
    else if (*mode == "data")
      cfg.mode = AbstractionMode::kDataDriven;
    else
      throw ValidationError(origin + ": 'mode' must be 'growth' or 'data'");
  }
  if (const auto samples = kv.get_one("samples")) {
    const double s = parse_double(*samples, "samples");
    if (!(s >= 1.0) || s != std::floor(s))
      throw ValidationError(origin + ": 'samples' must be a positive integer");
    cfg.samples = static_cast<std::uint32_t>(s);
  }
  if (const auto seed = kv.get_one("seed")) {
    const double s = parse_double(*seed, "seed");
    if (s < 0.0 || s != std::floor(s))
      throw ValidationError(origin + ": 'seed' must be a non-negative integer");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (const auto substeps = kv.get_one("substeps")) {
    const double s = parse_double(*substeps, "substeps");
    if (!(s >= 1.0) || s != std::floor(s))
      throw ValidationError(origin + ": 'substeps' must be a positive integer");
    cfg.substeps = static_cast<unsigned>(s);
  }
  if (const auto out = kv.get_one("out")) cfg.out_dir = *out;
  return cfg;
}

ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

std::string resolved_config_text(const ProblemConfig& cfg) {
  std::ostringstream os;
  auto list = [](const std::vector<double>& v) { return format_double_list(v); };
  os << "system = " << cfg.system << "\n";
  os << "state_lo = " << list(cfg.state_box.lo) << "\n";
  os << "state_hi = " << list(cfg.state_box.hi) << "\n";
  os << "eta = " << list(cfg.eta) << "\n";
  os << "input_lo = " << list(cfg.input_box.lo) << "\n";
  os << "input_hi = " << list(cfg.input_box.hi) << "\n";
  if (!cfg.input_counts.empty()) {
    os << "input_counts = [";
    for (std::size_t i = 0; i < cfg.input_counts.size(); ++i)
      os << (i ? ", " : "") << cfg.input_counts[i];
    os << "]\n";
  } else {
    for (const auto& u : cfg.explicit_inputs) os << "input = " << list(u) << "\n";
  }
  os << "timesteps = " << list(cfg.timesteps) << "\n";
  os << "cost = " << cfg.cost_kind << "\n";
  if (cfg.cost_kind == "effort") os << "epsilon = " << format_double(cfg.epsilon) << "\n";
  auto rects = [&](const char* key, const std::vector<Box>& boxes) {
    for (const Box& b : boxes) {
      std::vector<double> flat = b.lo;
      flat.insert(flat.end(), b.hi.begin(), b.hi.end());
      os << key << " = " << list(flat) << "\n";
    }
  };
  rects("initial", cfg.spec.initial);
  rects("target", cfg.spec.target);
  rects("obstacle", cfg.spec.obstacles);
  os << "mode = " << (cfg.mode == AbstractionMode::kGrowthBound ? "growth" : "data") << "\n";
  os << "samples = " << cfg.samples << "\n";
  os << "seed = " << cfg.seed << "\n";
  os << "substeps = " << cfg.substeps << "\n";
  if (!cfg.out_dir.empty()) os << "out = " << cfg.out_dir << "\n";
  return os.str();
}

std::vector<std::vector<double>> make_input_vectors(const ProblemConfig& cfg) {
  if (!cfg.explicit_inputs.empty()) return cfg.explicit_inputs;
  const std::size_t dim = cfg.input_counts.size();
  std::vector<std::vector<double>> axes(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const std::uint32_t n = cfg.input_counts[k];
    const double lo = cfg.input_box.lo[k];
    const double hi = cfg.input_box.hi[k];
    axes[k].reserve(n);
    if (n == 1) {
      axes[k].push_back(lo + 0.5 * (hi - lo));
    } else {
      for (std::uint32_t i = 0; i < n; ++i)
        axes[k].push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
  }
  std::vector<std::vector<double>> out;
  std::vector<std::size_t> idx(dim, 0);
  while (true) {
    std::vector<double> u(dim);
    for (std::size_t k = 0; k < dim; ++k) u[k] = axes[k][idx[k]];
    out.push_back(std::move(u));
    std::size_t k = dim;
    bool done = false;
    while (true) {
      if (k == 0) {
        done = true;
        break;
      }
      --k;
      if (idx[k] + 1 < axes[k].size()) {
        ++idx[k];
        std::fill(idx.begin() + k + 1, idx.end(), 0);
        break;
      }
    }
    if (done) break;
  }
  return out;
}

ContinuousSystem make_system_from(const ProblemConfig& cfg) {
  return make_system(cfg.system, cfg.state_box, cfg.input_box);
}

UniformGrid make_grid(const ProblemConfig& cfg) {
  return UniformGrid(cfg.state_box.lo, cfg.state_box.hi, cfg.eta);
}

AbstractionConfig make_abstraction_config(const ProblemConfig& cfg, unsigned threads) {
  AbstractionConfig out;
  out.inputs = make_input_vectors(cfg);
  out.timesteps = cfg.timesteps;
  out.mode = cfg.mode;
  out.samples_per_cell = cfg.samples;
  out.rng_seed = cfg.seed;
  out.integrator.substeps_per_tau = cfg.substeps;
  out.threads = threads;
  return out;
}

TransitionCost make_cost(const ProblemConfig& cfg) {
  if (cfg.cost_kind == "effort") return TransitionCost::effort(cfg.epsilon);
  return TransitionCost::time();
}

std::uint64_t label_budget(const ProblemConfig& cfg) {
  std::uint64_t inputs = 1;
  if (!cfg.explicit_inputs.empty()) {
    inputs = cfg.explicit_inputs.size();
  } else {
    for (std::uint32_t c : cfg.input_counts) inputs *= c;
  }
  return inputs * cfg.timesteps.size();
}

EqualizedBudget equalized_input_budget(const ProblemConfig& base, double single_tau) {
  if (!(single_tau > 0.0))
    throw ValidationError("equalized budget: single_tau must be > 0");
  if (base.input_counts.empty())
    throw ValidationError(
        "equalized budget: the base config must use 'input_counts' so the input set can be "
        "refined uniformly");
  EqualizedBudget out;
  out.requested_labels = label_budget(base);

  const std::size_t dim = base.input_counts.size();
  const double budget = static_cast<double>(out.requested_labels);
  double product = 1.0;
  for (std::uint32_t c : base.input_counts) product *= c;
  const double scale = std::pow(budget / product, 1.0 / static_cast<double>(dim));

  /* search counts near the aspect-preserving rescale; prefer the product
   * closest to the budget, then the smaller product, then the
   * lexicographically smallest counts */
  std::vector<std::uint32_t> best;
  std::uint64_t best_product = 0;
  std::vector<std::uint32_t> candidate(dim);
  std::vector<std::vector<std::uint32_t>> options(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const double scaled = base.input_counts[k] * scale;
    const std::int64_t mid = std::max<std::int64_t>(1, std::llround(scaled));
    for (std::int64_t c : {mid - 1, mid, mid + 1}) {
      if (c >= 1) options[k].push_back(static_cast<std::uint32_t>(c));
    }
    std::sort(options[k].begin(), options[k].end());
    options[k].erase(std::unique(options[k].begin(), options[k].end()), options[k].end());
  }
  const auto dist = [&](std::uint64_t prod) {
    return prod > out.requested_labels ? prod - out.requested_labels
                                       : out.requested_labels - prod;
  };
  std::vector<std::size_t> idx(dim, 0);
  while (true) {
    std::uint64_t p = 1;
    for (std::size_t k = 0; k < dim; ++k) {
      candidate[k] = options[k][idx[k]];
      p *= candidate[k];
    }
    bool better;
    if (best.empty()) {
      better = true;
    } else if (dist(p) != dist(best_product)) {
      better = dist(p) < dist(best_product);
    } else if (p != best_product) {
      better = p < best_product;
    } else {
      better = candidate < best;
    }
    if (better) {
      best = candidate;
      best_product = p;
    }
    std::size_t k = dim;
    bool done = false;
    while (true) {
      if (k == 0) {
        done = true;
        break;
      }
      --k;
      if (idx[k] + 1 < options[k].size()) {
        ++idx[k];
        std::fill(idx.begin() + k + 1, idx.end(), 0);
        break;
      }
    }
    if (done) break;
  }

  out.config = base;
  out.config.input_counts = best;
  out.config.explicit_inputs.clear();
  out.config.timesteps = {single_tau};
  out.achieved_labels = best_product;
  return out;
}

}  // namespace tempo
