/*
 * grid.hpp
 *
 * Uniform hyperrectangular partition of the state space. Cells are
 * half-open boxes [lo + i*eta, lo + (i+1)*eta) so every in-domain point has
 * exactly one cell; intersection tests use the closed cell hull so set
 * over-approximations err on the safe side.
 *
 * Cell ids are the row-major flattening of the per-dimension indices, with
 * the first dimension varying slowest:
 *   id = ((i_0 * d_1) + i_1) * d_2 + ... + i_{n-1}
 * External tools can decode value-function dumps with this rule.
 */

#ifndef TEMPO_GRID_HPP_
#define TEMPO_GRID_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tempo/geometry.hpp"
#include "tempo/reach_avoid.hpp"
#include "tempo/transition_system.hpp"

namespace tempo {

using CellId = StateId;

class UniformGrid {
 public:
  /*
   * Per-dimension cell counts are ceil((hi - lo) / eta); the last row of
   * cells may extend past hi, and the grid hull [lo, lo + dims*eta) is then
   * the quantizer domain. Throws ValidationError on lo >= hi, eta <= 0 or
   * more than 2^32 - 2 cells.
   */
  /* an empty grid; every real grid comes from the validating constructor */
  UniformGrid() = default;

  UniformGrid(std::vector<double> lo, std::vector<double> hi, std::vector<double> eta);

  /* reconstruct a grid from stored parameters without re-deriving counts */
  static UniformGrid from_dims(std::vector<double> lo, std::vector<double> eta,
                               std::vector<std::uint32_t> dims);

  std::size_t dim() const { return lo_.size(); }
  std::uint64_t num_cells() const { return num_cells_; }
  std::span<const double> lo() const { return lo_; }
  std::span<const double> eta() const { return eta_; }
  std::span<const std::uint32_t> dims() const { return dims_; }

  /* closed hull [lo, lo + dims*eta] of the cell union */
  Box hull() const;

  /* the unique cell containing x, or nullopt when x is outside the hull */
  std::optional<CellId> quantize(std::span<const double> x) const;

  /* closed hull of one cell */
  Box cell_box(CellId q) const;
  std::vector<double> cell_center(CellId q) const;

  struct Intersection {
    std::vector<CellId> cells;  // ascending
    bool exits_domain = false;  // box not contained in the closed hull
  };
  /* all cells whose closed hull meets the closed box */
  Intersection cells_intersecting(const Box& box) const;

  /*
   * Range form for hot paths: writes per-dimension index ranges
   * [idx_lo[k], idx_hi[k]] of the intersecting cells, sets exits_domain,
   * and returns false when no cell intersects at all.
   */
  bool intersect_ranges(const Box& box, std::span<std::uint32_t> idx_lo,
                        std::span<std::uint32_t> idx_hi, bool& exits_domain) const;

  CellId flatten(std::span<const std::uint32_t> idx) const;
  void unflatten(CellId q, std::span<std::uint32_t> idx) const;

  friend bool operator==(const UniformGrid&, const UniformGrid&) = default;

 private:
  std::vector<double> lo_;
  std::vector<double> eta_;
  std::vector<std::uint32_t> dims_;
  std::uint64_t num_cells_ = 0;
};

/** @brief Grid-level classification of a reach-avoid specification. */
struct CellClasses {
  std::vector<CellId> targets;    // closed hull inside the target union
  std::vector<CellId> obstacles;  // closed hull meets the obstacle union
  std::vector<CellId> initials;   // closed hull meets the initial union
};

/*
 * Conservative direction: target cells are fully contained (reaching them
 * implies reaching the concrete target), obstacle cells are anything
 * touched (avoiding them implies avoiding the concrete obstacles).
 * Obstacles win when a cell qualifies for both. Throws ValidationError on
 * an ill-formed spec.
 */
CellClasses classify_cells(const UniformGrid& grid, const ReachAvoidSpec& spec);

}  // namespace tempo

#endif /* TEMPO_GRID_HPP_ */
