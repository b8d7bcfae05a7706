#include "tempo/ode.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace tempo {

namespace {

bool all_finite(std::span<const double> x) {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

/* row-major n*n matrix product: c = a * b */
void mat_mul(std::span<const double> a, std::span<const double> b, std::span<double> c,
             std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += a[i * n + k] * b[k * n + j];
      c[i * n + j] = s;
    }
  }
}

/*
 * Dense matrix exponential by scaling and squaring with a truncated Taylor
 * series. The matrices here are tiny (plant dimension), so no Pade economy
 * is needed; the series is summed until terms vanish in double precision.
 */
std::vector<double> expm(std::vector<double> a, std::size_t n) {
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(a[i * n + j]);
    norm = std::max(norm, row);
  }
  unsigned squarings = 0;
  while (norm > 0.5 && squarings < 64) {
    norm *= 0.5;
    ++squarings;
  }
  const double scale = std::ldexp(1.0, -static_cast<int>(squarings));
  for (double& v : a) v *= scale;

  std::vector<double> result(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) result[i * n + i] = 1.0;
  std::vector<double> term = result;
  std::vector<double> tmp(n * n);
  for (unsigned k = 1; k <= 40; ++k) {
    mat_mul(term, a, tmp, n);
    for (std::size_t i = 0; i < n * n; ++i) term[i] = tmp[i] / static_cast<double>(k);
    bool negligible = true;
    for (std::size_t i = 0; i < n * n; ++i) {
      result[i] += term[i];
      if (std::abs(term[i]) > 1e-300 && std::abs(term[i]) > 1e-18 * std::abs(result[i]))
        negligible = false;
    }
    if (negligible) break;
  }
  for (unsigned s = 0; s < squarings; ++s) {
    mat_mul(result, result, tmp, n);
    result.swap(tmp);
  }
  return result;
}

}  // namespace

Integrator::Integrator(const ContinuousSystem& sys, IntegratorConfig cfg)
    : sys_(&sys), cfg_(cfg) {
  if (cfg_.substeps_per_tau < 1)
    throw std::invalid_argument("integrator: substeps_per_tau must be >= 1");
  const std::size_t n = sys.dim_x;
  k1_.resize(n);
  k2_.resize(n);
  k3_.resize(n);
  k4_.resize(n);
  stage_.resize(n);
  cur_.resize(n);
}

void Integrator::flow(std::span<const double> x0, std::span<const double> u, double tau,
                      std::span<double> out) {
  const std::size_t n = sys_->dim_x;
  if (x0.size() != n || out.size() != n)
    throw std::invalid_argument("integrator: state dimension mismatch");
  if (!(tau >= 0.0)) throw std::invalid_argument("integrator: tau must be >= 0");
  if (!all_finite(x0)) throw IntegrationOverflowError("integrator: non-finite initial state");
  std::copy(x0.begin(), x0.end(), cur_.begin());
  if (tau > 0.0) {
    const double h = tau / cfg_.substeps_per_tau;
    const VectorField& f = sys_->vector_field;
    for (unsigned step = 0; step < cfg_.substeps_per_tau; ++step) {
      f(cur_, u, k1_);
      for (std::size_t i = 0; i < n; ++i) stage_[i] = cur_[i] + 0.5 * h * k1_[i];
      f(stage_, u, k2_);
      for (std::size_t i = 0; i < n; ++i) stage_[i] = cur_[i] + 0.5 * h * k2_[i];
      f(stage_, u, k3_);
      for (std::size_t i = 0; i < n; ++i) stage_[i] = cur_[i] + h * k3_[i];
      f(stage_, u, k4_);
      for (std::size_t i = 0; i < n; ++i)
        cur_[i] += h / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
      if (!all_finite(cur_))
        throw IntegrationOverflowError("integrator: state diverged during integration");
    }
  }
  std::copy(cur_.begin(), cur_.end(), out.begin());
}

std::vector<double> flow(const ContinuousSystem& sys, const IntegratorConfig& cfg,
                         std::span<const double> x0, std::span<const double> u, double tau) {
  std::vector<double> out(sys.dim_x);
  Integrator integ(sys, cfg);
  integ.flow(x0, u, tau, out);
  return out;
}

std::vector<double> multi_sampled_step(const ContinuousSystem& sys, const IntegratorConfig& cfg,
                                       std::span<const double> x, const InputLabel& label) {
  return flow(sys, cfg, x, label.u, label.tau);
}

std::vector<double> growth_matrix(const ContinuousSystem& sys, std::span<const double> u,
                                  double tau) {
  const std::size_t n = sys.dim_x;
  std::vector<double> L(n * n);
  sys.jacobian_bound(u, L);
  for (double v : L) {
    if (!(v >= 0.0)) throw std::invalid_argument("growth bound: L(u) must be entrywise >= 0");
  }
  for (double& v : L) v *= tau;
  return expm(std::move(L), n);
}

std::vector<double> growth_bound(const ContinuousSystem& sys, std::span<const double> u,
                                 double tau, std::span<const double> r) {
  const std::size_t n = sys.dim_x;
  if (r.size() != n) throw std::invalid_argument("growth bound: radius dimension mismatch");
  for (double v : r) {
    if (!(v >= 0.0)) throw std::invalid_argument("growth bound: radius must be >= 0");
  }
  const std::vector<double> E = growth_matrix(sys, u, tau);
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += E[i * n + j] * r[j];
    out[i] = s;
  }
  return out;
}

}  // namespace tempo
