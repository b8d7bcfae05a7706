#include "tempo/dynamics.hpp"

#include <cmath>
#include <map>

namespace tempo {

namespace {

/* frictionless pendulum on a rigid rod: theta measured from the stable
 * equilibrium, input is the torque */
constexpr double kGravity = 9.81;
constexpr double kRodLength = 1.0;

DynamicsEntry make_pendulum() {
  DynamicsEntry e;
  e.dim_x = 2;
  e.dim_u = 1;
  e.vector_field = [](std::span<const double> x, std::span<const double> u,
                      std::span<double> dxdt) {
    dxdt[0] = x[1];
    dxdt[1] = -(kGravity / kRodLength) * std::sin(x[0]) + u[0];
  };
  /* |d f2 / d theta| = (g/l)|cos(theta)| <= g/l */
  e.jacobian_bound = [](std::span<const double>, std::span<double> L) {
    L[0] = 0.0;
    L[1] = 1.0;
    L[2] = kGravity / kRodLength;
    L[3] = 0.0;
  };
  return e;
}

/* kinematic single-track vehicle; u1 is the wheel speed, u2 the steering
 * angle, alpha the slip angle of the velocity vector */
DynamicsEntry make_vehicle() {
  DynamicsEntry e;
  e.dim_x = 3;
  e.dim_u = 2;
  e.vector_field = [](std::span<const double> x, std::span<const double> u,
                      std::span<double> dxdt) {
    const double alpha = std::atan(std::tan(u[1]) / 2.0);
    const double inv_cos_alpha = 1.0 / std::cos(alpha);
    dxdt[0] = u[0] * std::cos(alpha + x[2]) * inv_cos_alpha;
    dxdt[1] = u[0] * std::sin(alpha + x[2]) * inv_cos_alpha;
    dxdt[2] = u[0] * std::tan(u[1]);
  };
  /* the position rates depend on the state only through theta, with
   * |d/d theta| <= |u1| / cos(alpha) = |u1| sqrt(tan(u2)^2/4 + 1) */
  e.jacobian_bound = [](std::span<const double> u, std::span<double> L) {
    const double t = std::tan(u[1]);
    const double c = std::abs(u[0]) * std::sqrt(t * t / 4.0 + 1.0);
    std::fill(L.begin(), L.end(), 0.0);
    L[0 * 3 + 2] = c;
    L[1 * 3 + 2] = c;
  };
  return e;
}

std::map<std::string, DynamicsEntry>& registry() {
  static std::map<std::string, DynamicsEntry> reg = [] {
    std::map<std::string, DynamicsEntry> r;
    r.emplace("pendulum", make_pendulum());
    r.emplace("vehicle", make_vehicle());
    return r;
  }();
  return reg;
}

}  // namespace

const DynamicsEntry& dynamics_registry(const std::string& key) {
  auto it = registry().find(key);
  if (it == registry().end())
    throw ValidationError("unknown system key '" + key + "'");
  return it->second;
}

bool dynamics_registered(const std::string& key) { return registry().count(key) > 0; }

std::vector<std::string> registered_dynamics() {
  std::vector<std::string> keys;
  for (const auto& [key, entry] : registry()) keys.push_back(key);
  return keys;
}

void register_dynamics(const std::string& key, DynamicsEntry entry) {
  registry()[key] = std::move(entry);
}

ContinuousSystem make_system(const std::string& key, Box state_box, Box input_box) {
  const DynamicsEntry& e = dynamics_registry(key);
  if (state_box.dim() != e.dim_x)
    throw ValidationError("state box dimension does not match system '" + key + "'");
  if (input_box.dim() != e.dim_u)
    throw ValidationError("input box dimension does not match system '" + key + "'");
  ContinuousSystem sys;
  sys.dim_x = e.dim_x;
  sys.dim_u = e.dim_u;
  sys.state_box = std::move(state_box);
  sys.input_box = std::move(input_box);
  sys.vector_field = e.vector_field;
  sys.jacobian_bound = e.jacobian_bound;
  sys.name = key;
  return sys;
}

}  // namespace tempo
