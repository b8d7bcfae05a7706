/*
 * transition_system.hpp
 *
 * Finite transition systems with set-valued successor maps. States and
 * inputs are dense integer ids; the successor map is stored in compressed
 * sparse rows, one row per (state, input) pair.
 */

#ifndef TEMPO_TRANSITION_SYSTEM_HPP_
#define TEMPO_TRANSITION_SYSTEM_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace tempo {

using StateId = std::uint32_t;
using InputId = std::uint32_t;

/** @brief A control input vector paired with the duration it is applied for. */
struct InputLabel {
  std::vector<double> u;
  double tau = 0.0;

  friend bool operator==(const InputLabel&, const InputLabel&) = default;
};

/**
 * @brief Finite transition system with set-valued dynamics.
 *
 * Successor sets are sorted and duplicate-free. An optional sink state with
 * id == num_states() represents "left the domain"; it has no outgoing
 * transitions and appears only on the successor side. Instances are
 * immutable once constructed and safe to share between threads.
 */
class FiniteTransitionSystem {
 public:
  FiniteTransitionSystem() = default;

  /**
   * @brief Build from compressed sparse rows.
   *
   * @param offsets  row offsets of size num_states*num_inputs + 1
   * @param data     concatenated successor sets, each row sorted and unique;
   *                 entries must be < num_states, or == num_states when
   *                 has_sink is set
   */
  static FiniteTransitionSystem from_csr(StateId num_states, InputId num_inputs,
                                         bool has_sink,
                                         std::vector<std::uint64_t> offsets,
                                         std::vector<StateId> data);

  /* convenience for small systems: rows indexed by q*num_inputs + u */
  static FiniteTransitionSystem from_rows(StateId num_states, InputId num_inputs,
                                          bool has_sink,
                                          const std::vector<std::vector<StateId>>& rows);

  StateId num_states() const { return num_states_; }
  InputId num_inputs() const { return num_inputs_; }
  bool has_sink() const { return has_sink_; }
  /* the sink id; only meaningful when has_sink() */
  StateId sink() const { return num_states_; }

  std::span<const StateId> successors(StateId q, InputId u) const;
  bool input_available(StateId q, InputId u) const { return !successors(q, u).empty(); }

  /* inputs u with successors(q, u) nonempty, ascending */
  std::vector<InputId> available_inputs(StateId q) const;

  std::uint64_t num_transitions() const { return data_.size(); }

  /*
   * Text serialization. Format:
   *   states N inputs M
   *   q u k s1 ... sk        (one line per nonempty row, ascending q then u)
   * A sink is encoded implicitly by successor entries equal to N.
   */
  void write(std::ostream& os) const;
  static FiniteTransitionSystem read(std::istream& is);

  friend bool operator==(const FiniteTransitionSystem&, const FiniteTransitionSystem&) = default;

 private:
  void check_ids(StateId q, InputId u) const;

  StateId num_states_ = 0;
  InputId num_inputs_ = 0;
  bool has_sink_ = false;
  std::vector<std::uint64_t> offsets_;
  std::vector<StateId> data_;
};

/* union of successor sets over a set of states, sorted and deduplicated */
std::vector<StateId> reachable_set(const FiniteTransitionSystem& ts,
                                   std::span<const StateId> states, InputId u);

}  // namespace tempo

#endif /* TEMPO_TRANSITION_SYSTEM_HPP_ */
