#include "tempo/transition_system.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tempo/errors.hpp"

namespace tempo {

FiniteTransitionSystem FiniteTransitionSystem::from_csr(StateId num_states, InputId num_inputs,
                                                        bool has_sink,
                                                        std::vector<std::uint64_t> offsets,
                                                        std::vector<StateId> data) {
  const std::uint64_t rows = static_cast<std::uint64_t>(num_states) * num_inputs;
  if (offsets.size() != rows + 1 || offsets.front() != 0 || offsets.back() != data.size())
    throw std::invalid_argument("transition system: inconsistent row offsets");
  const StateId max_id = has_sink ? num_states : (num_states == 0 ? 0 : num_states - 1);
  for (std::uint64_t r = 0; r < rows; ++r) {
    if (offsets[r] > offsets[r + 1])
      throw std::invalid_argument("transition system: row offsets not monotone");
    for (std::uint64_t i = offsets[r]; i < offsets[r + 1]; ++i) {
      if (data[i] > max_id)
        throw std::invalid_argument("transition system: successor id out of range");
      if (i > offsets[r] && data[i - 1] >= data[i])
        throw std::invalid_argument("transition system: successor set not sorted/unique");
    }
  }
  FiniteTransitionSystem ts;
  ts.num_states_ = num_states;
  ts.num_inputs_ = num_inputs;
  ts.has_sink_ = has_sink;
  ts.offsets_ = std::move(offsets);
  ts.data_ = std::move(data);
  return ts;
}

FiniteTransitionSystem FiniteTransitionSystem::from_rows(
    StateId num_states, InputId num_inputs, bool has_sink,
    const std::vector<std::vector<StateId>>& rows) {
  const std::uint64_t nrows = static_cast<std::uint64_t>(num_states) * num_inputs;
  if (rows.size() != nrows)
    throw std::invalid_argument("transition system: wrong number of rows");
  std::vector<std::uint64_t> offsets(nrows + 1, 0);
  std::vector<StateId> data;
  for (std::uint64_t r = 0; r < nrows; ++r) {
    std::vector<StateId> row = rows[r];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    data.insert(data.end(), row.begin(), row.end());
    offsets[r + 1] = data.size();
  }
  return from_csr(num_states, num_inputs, has_sink, std::move(offsets), std::move(data));
}

void FiniteTransitionSystem::check_ids(StateId q, InputId u) const {
  if (q >= num_states_) throw std::out_of_range("transition system: invalid state id");
  if (u >= num_inputs_) throw std::out_of_range("transition system: invalid input id");
}

std::span<const StateId> FiniteTransitionSystem::successors(StateId q, InputId u) const {
  check_ids(q, u);
  const std::uint64_t r = static_cast<std::uint64_t>(q) * num_inputs_ + u;
  return {data_.data() + offsets_[r], data_.data() + offsets_[r + 1]};
}

std::vector<InputId> FiniteTransitionSystem::available_inputs(StateId q) const {
  if (q >= num_states_) throw std::out_of_range("transition system: invalid state id");
  std::vector<InputId> out;
  const std::uint64_t base = static_cast<std::uint64_t>(q) * num_inputs_;
  for (InputId u = 0; u < num_inputs_; ++u) {
    if (offsets_[base + u] < offsets_[base + u + 1]) out.push_back(u);
  }
  return out;
}

void FiniteTransitionSystem::write(std::ostream& os) const {
  os << "states " << num_states_ << " inputs " << num_inputs_ << "\n";
  for (StateId q = 0; q < num_states_; ++q) {
    for (InputId u = 0; u < num_inputs_; ++u) {
      const std::uint64_t r = static_cast<std::uint64_t>(q) * num_inputs_ + u;
      const std::uint64_t n = offsets_[r + 1] - offsets_[r];
      if (n == 0) continue;
      os << q << ' ' << u << ' ' << n;
      for (std::uint64_t i = offsets_[r]; i < offsets_[r + 1]; ++i) os << ' ' << data_[i];
      os << '\n';
    }
  }
}

FiniteTransitionSystem FiniteTransitionSystem::read(std::istream& is) {
  std::string kw_states, kw_inputs;
  std::uint64_t n = 0, m = 0;
  if (!(is >> kw_states >> n >> kw_inputs >> m) || kw_states != "states" || kw_inputs != "inputs")
    throw ValidationError("transition system: bad header, expected 'states N inputs M'");
  const std::uint64_t nrows = n * m;
  std::vector<std::uint64_t> offsets(nrows + 1, 0);
  std::vector<StateId> data;
  bool sink_seen = false;
  std::uint64_t prev_row = 0;
  bool first = true;
  std::uint64_t q = 0, u = 0, k = 0;
  /* rows arrive in ascending (q, u) order per the format */
  while (is >> q >> u >> k) {
    if (q >= n || u >= m) throw ValidationError("transition system: row ids out of range");
    const std::uint64_t r = q * m + u;
    if (!first && r <= prev_row) throw ValidationError("transition system: rows out of order");
    for (std::uint64_t rr = first ? 0 : prev_row + 1; rr <= r; ++rr) offsets[rr] = data.size();
    for (std::uint64_t i = 0; i < k; ++i) {
      std::uint64_t s = 0;
      if (!(is >> s)) throw ValidationError("transition system: truncated row");
      if (s > n) throw ValidationError("transition system: successor id out of range");
      if (s == n) sink_seen = true;
      data.push_back(static_cast<StateId>(s));
    }
    prev_row = r;
    first = false;
  }
  for (std::uint64_t rr = first ? 0 : prev_row + 1; rr <= nrows; ++rr) offsets[rr] = data.size();
  return from_csr(static_cast<StateId>(n), static_cast<InputId>(m), sink_seen,
                  std::move(offsets), std::move(data));
}

std::vector<StateId> reachable_set(const FiniteTransitionSystem& ts,
                                   std::span<const StateId> states, InputId u) {
  std::vector<StateId> out;
  for (StateId q : states) {
    auto succ = ts.successors(q, u);
    out.insert(out.end(), succ.begin(), succ.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace tempo
