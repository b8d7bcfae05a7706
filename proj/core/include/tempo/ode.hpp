/*
 * ode.hpp
 *
 * Continuous-time plants and their sampled transition semantics. flow()
 * approximates the general solution of xdot = f(x, u) under a constant
 * input with a fixed-step classical Runge-Kutta scheme; growth_bound()
 * bounds the componentwise divergence of trajectories started in the same
 * cell, which is what makes the abstraction an over-approximation.
 */

#ifndef TEMPO_ODE_HPP_
#define TEMPO_ODE_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tempo/errors.hpp"
#include "tempo/geometry.hpp"
#include "tempo/transition_system.hpp"

namespace tempo {

/* writes dx/dt for the given state and input */
using VectorField =
    std::function<void(std::span<const double> x, std::span<const double> u, std::span<double> dxdt)>;

/*
 * writes the row-major dim_x * dim_x matrix L(u) with
 * L[i][j] >= sup_{x in state_box} |df_i/dx_j (x, u)|; entries must be >= 0
 */
using JacobianBound = std::function<void(std::span<const double> u, std::span<double> L)>;

/** @brief Continuous-time control system xdot = f(x, u) on a box domain. */
struct ContinuousSystem {
  std::size_t dim_x = 0;
  std::size_t dim_u = 0;
  Box state_box;
  Box input_box;
  VectorField vector_field;
  JacobianBound jacobian_bound;
  std::string name;  // registry key, empty for ad-hoc systems
};

struct IntegratorConfig {
  /* fixed substep count per applied duration; the scheme is the classical
   * 4th-order one-step method, chosen fixed-step so abstractions are
   * reproducible bit for bit */
  unsigned substeps_per_tau = 10;
};

/**
 * @brief Reusable fixed-step integrator; holds scratch buffers so repeated
 * flows allocate nothing. Not thread-safe; use one instance per worker.
 */
class Integrator {
 public:
  Integrator(const ContinuousSystem& sys, IntegratorConfig cfg);

  /*
   * out := phi(tau, x0, u) with constant input u. tau == 0 copies x0
   * exactly. out may alias x0. Throws IntegrationOverflowError when an
   * intermediate state turns non-finite.
   */
  void flow(std::span<const double> x0, std::span<const double> u, double tau,
            std::span<double> out);

 private:
  const ContinuousSystem* sys_;
  IntegratorConfig cfg_;
  std::vector<double> k1_, k2_, k3_, k4_, stage_, cur_;
};

/* one-shot convenience wrappers */
std::vector<double> flow(const ContinuousSystem& sys, const IntegratorConfig& cfg,
                         std::span<const double> x0, std::span<const double> u, double tau);

/* deterministic singleton step of the multi-sampled system: phi(tau, x, u)
 * for the label (u, tau) */
std::vector<double> multi_sampled_step(const ContinuousSystem& sys, const IntegratorConfig& cfg,
                                       std::span<const double> x, const InputLabel& label);

/*
 * exp(L(u) * tau) as a row-major dim_x * dim_x matrix, computed by scaling
 * and squaring of the truncated series. All entries are >= 0 since L is.
 */
std::vector<double> growth_matrix(const ContinuousSystem& sys, std::span<const double> u,
                                  double tau);

/*
 * Componentwise divergence bound: trajectories from x and x' with
 * |x - x'| <= r (componentwise) satisfy |phi(tau,x,u) - phi(tau,x',u)| <=
 * growth_bound(sys, u, tau, r). Equals exp(L(u) tau) * r.
 */
std::vector<double> growth_bound(const ContinuousSystem& sys, std::span<const double> u,
                                 double tau, std::span<const double> r);

}  // namespace tempo

#endif /* TEMPO_ODE_HPP_ */
