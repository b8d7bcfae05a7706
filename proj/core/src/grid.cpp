#include "tempo/grid.hpp"

#include <algorithm>
#include <cmath>

#include "tempo/errors.hpp"

namespace tempo {

namespace {

/* guard against an extra phantom row when (hi-lo)/eta lands on an integer
 * up to rounding */
constexpr double kCountSlack = 1e-9;

}  // namespace

UniformGrid::UniformGrid(std::vector<double> lo, std::vector<double> hi,
                         std::vector<double> eta) {
  if (lo.empty() || lo.size() != hi.size() || lo.size() != eta.size())
    throw ValidationError("grid: lo, hi, eta must share a nonzero dimension");
  dims_.resize(lo.size());
  num_cells_ = 1;
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (!(lo[k] < hi[k])) throw ValidationError("grid: lo < hi required componentwise");
    if (!(eta[k] > 0.0)) throw ValidationError("grid: eta > 0 required componentwise");
    const double count = (hi[k] - lo[k]) / eta[k];
    const double d = std::ceil(count - kCountSlack);
    if (!(d >= 1.0) || d > 4294967294.0) throw ValidationError("grid: cell count out of range");
    dims_[k] = static_cast<std::uint32_t>(d);
    num_cells_ *= dims_[k];
    if (num_cells_ > 4294967294ULL) throw ValidationError("grid: too many cells");
  }
  lo_ = std::move(lo);
  eta_ = std::move(eta);
}

UniformGrid UniformGrid::from_dims(std::vector<double> lo, std::vector<double> eta,
                                   std::vector<std::uint32_t> dims) {
  if (lo.empty() || lo.size() != eta.size() || lo.size() != dims.size())
    throw ValidationError("grid: lo, eta, dims must share a nonzero dimension");
  UniformGrid g;
  g.lo_ = std::move(lo);
  g.eta_ = std::move(eta);
  g.num_cells_ = 1;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (dims[k] == 0 || !(g.eta_[k] > 0.0)) throw ValidationError("grid: invalid dims/eta");
    g.num_cells_ *= dims[k];
    if (g.num_cells_ > 4294967294ULL) throw ValidationError("grid: too many cells");
  }
  g.dims_ = std::move(dims);
  return g;
}

Box UniformGrid::hull() const {
  Box b;
  b.lo = lo_;
  b.hi.resize(dim());
  for (std::size_t k = 0; k < dim(); ++k) b.hi[k] = lo_[k] + dims_[k] * eta_[k];
  return b;
}

std::optional<CellId> UniformGrid::quantize(std::span<const double> x) const {
  if (x.size() != dim()) throw std::out_of_range("grid: point dimension mismatch");
  std::uint64_t id = 0;
  for (std::size_t k = 0; k < dim(); ++k) {
    const double t = (x[k] - lo_[k]) / eta_[k];
    const double fl = std::floor(t);
    if (fl < 0.0 || fl >= static_cast<double>(dims_[k])) return std::nullopt;
    id = id * dims_[k] + static_cast<std::uint64_t>(fl);
  }
  return static_cast<CellId>(id);
}

Box UniformGrid::cell_box(CellId q) const {
  if (q >= num_cells_) throw std::out_of_range("grid: invalid cell id");
  std::vector<std::uint32_t> idx(dim());
  unflatten(q, idx);
  Box b;
  b.lo.resize(dim());
  b.hi.resize(dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    b.lo[k] = lo_[k] + idx[k] * eta_[k];
    b.hi[k] = lo_[k] + (idx[k] + 1) * eta_[k];
  }
  return b;
}

std::vector<double> UniformGrid::cell_center(CellId q) const {
  if (q >= num_cells_) throw std::out_of_range("grid: invalid cell id");
  std::vector<std::uint32_t> idx(dim());
  unflatten(q, idx);
  std::vector<double> c(dim());
  for (std::size_t k = 0; k < dim(); ++k) c[k] = lo_[k] + (idx[k] + 0.5) * eta_[k];
  return c;
}

bool UniformGrid::intersect_ranges(const Box& box, std::span<std::uint32_t> idx_lo,
                                   std::span<std::uint32_t> idx_hi, bool& exits_domain) const {
  if (box.dim() != dim() || idx_lo.size() != dim() || idx_hi.size() != dim())
    throw std::out_of_range("grid: box dimension mismatch");
  exits_domain = false;
  bool nonempty = true;
  for (std::size_t k = 0; k < dim(); ++k) {
    const double hull_hi = lo_[k] + dims_[k] * eta_[k];
    if (box.lo[k] < lo_[k] || box.hi[k] > hull_hi) exits_domain = true;
    if (box.hi[k] < lo_[k] || box.lo[k] > hull_hi) {
      nonempty = false;
      continue;
    }
    /* lower index: floor, then step down one cell when box.lo sits exactly
     * on a face (closed hulls touch there) */
    double fl = std::floor((box.lo[k] - lo_[k]) / eta_[k]);
    std::int64_t ilo = fl < 0.0 ? 0 : static_cast<std::int64_t>(fl);
    if (ilo >= dims_[k]) ilo = dims_[k] - 1;
    if (ilo > 0 && lo_[k] + ilo * eta_[k] == box.lo[k]) --ilo;
    double fh = std::floor((box.hi[k] - lo_[k]) / eta_[k]);
    std::int64_t ihi = fh < 0.0 ? 0 : static_cast<std::int64_t>(fh);
    if (ihi >= dims_[k]) ihi = dims_[k] - 1;
    if (ihi < ilo) ihi = ilo;
    idx_lo[k] = static_cast<std::uint32_t>(ilo);
    idx_hi[k] = static_cast<std::uint32_t>(ihi);
  }
  return nonempty;
}

UniformGrid::Intersection UniformGrid::cells_intersecting(const Box& box) const {
  Intersection out;
  std::vector<std::uint32_t> ilo(dim()), ihi(dim()), cur(dim());
  if (!intersect_ranges(box, ilo, ihi, out.exits_domain)) return out;
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < dim(); ++k) count *= ihi[k] - ilo[k] + 1;
  out.cells.reserve(count);
  cur.assign(ilo.begin(), ilo.end());
  /* enumerate the index box in row-major order; flat ids come out ascending */
  while (true) {
    out.cells.push_back(flatten(cur));
    std::size_t k = dim();
    while (true) {
      if (k == 0) return out;
      --k;
      if (cur[k] < ihi[k]) {
        ++cur[k];
        for (std::size_t j = k + 1; j < dim(); ++j) cur[j] = ilo[j];
        break;
      }
    }
  }
}

CellId UniformGrid::flatten(std::span<const std::uint32_t> idx) const {
  std::uint64_t id = 0;
  for (std::size_t k = 0; k < dim(); ++k) id = id * dims_[k] + idx[k];
  return static_cast<CellId>(id);
}

void UniformGrid::unflatten(CellId q, std::span<std::uint32_t> idx) const {
  std::uint64_t rest = q;
  for (std::size_t k = dim(); k-- > 0;) {
    idx[k] = static_cast<std::uint32_t>(rest % dims_[k]);
    rest /= dims_[k];
  }
}

CellClasses classify_cells(const UniformGrid& grid, const ReachAvoidSpec& spec) {
  if (!spec_is_wellformed(spec))
    throw ValidationError("classify: target and obstacle unions must be disjoint");
  CellClasses out;
  auto collect_intersecting = [&](const std::vector<Box>& boxes, std::vector<CellId>& dst) {
    for (const Box& b : boxes) {
      auto isect = grid.cells_intersecting(b);
      dst.insert(dst.end(), isect.cells.begin(), isect.cells.end());
    }
    std::sort(dst.begin(), dst.end());
    dst.erase(std::unique(dst.begin(), dst.end()), dst.end());
  };
  collect_intersecting(spec.obstacles, out.obstacles);
  collect_intersecting(spec.initial, out.initials);

  /* target candidates touch some target rectangle; keep those whose whole
   * hull is covered by the target union */
  std::vector<CellId> candidates;
  collect_intersecting(spec.target, candidates);
  for (CellId q : candidates) {
    if (union_covers(spec.target, grid.cell_box(q))) out.targets.push_back(q);
  }
  /* obstacle precedence on overlap */
  std::vector<CellId> pruned;
  std::set_difference(out.targets.begin(), out.targets.end(), out.obstacles.begin(),
                      out.obstacles.end(), std::back_inserter(pruned));
  out.targets = std::move(pruned);
  return out;
}

}  // namespace tempo
