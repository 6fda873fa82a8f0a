#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "semigen/generator.hpp"

namespace semigen {

struct ODESettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.01;
  /// Steps whose state comes closer than this to the unit circle are rejected.
  double boundary_guard = 1e-13;

  /// ConfigError unless all fields are positive.
  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Complex> points;
  std::optional<std::vector<Complex>> derivs;
};

/// Holomorphic vector field with its derivative, for the integrator.
struct VectorField {
  std::function<Complex(Complex)> value;
  std::function<Complex(Complex)> derivative;
};

VectorField vector_field(const Generator& g);

/// phi_t(z0) by an embedded Dormand-Prince 5(4) pair with PI step control.
/// StepFailure when the step size collapses; BoundaryEscape when the state
/// cannot be kept boundary_guard away from the unit circle.
Complex integrate_flow(const Generator& g, Complex z0, double t, const ODESettings& settings = {});

struct FlowWithDerivative {
  Complex phi;
  Complex dphi;
};

/// Joint integration of phi_t(z0) and its z-derivative (variational equation
/// d/dt dphi = G'(phi) dphi, dphi(0) = 1).
FlowWithDerivative integrate_flow_with_derivative(const Generator& g, Complex z0, double t,
                                                  const ODESettings& settings = {});

/// Same on an explicit field, starting from (z0, d0).
FlowWithDerivative integrate_field(const VectorField& field, Complex z0, Complex d0, double t,
                                   const ODESettings& settings, Trajectory* record = nullptr);

/// Every accepted step of the flow, with derivatives when requested.
Trajectory integrate_trajectory(const Generator& g, Complex z0, double t, bool with_derivative,
                                const ODESettings& settings = {});

/// r = 1 - 2^-k for k = 4..14.
std::vector<double> default_radii();

/// Julia quotient ((1 - |z|^2)/|z - sigma|^2) (|phi(z) - sigma|^2/(1 - |phi(z)|^2)) at z = r sigma.
double julia_quotient(Complex z, Complex phi, const BoundaryPoint& sigma);

struct BoundaryDerivativeEstimate {
  double value = 0.0;
  std::vector<double> radii;
  std::vector<double> quotients;
  std::vector<double> extrapolated;
};

/// phi_t'(sigma) from Julia quotients along z = r sigma, Richardson-extrapolated
/// in 1 - r (first order). ExtrapolationDivergence when the last two
/// extrapolants differ by more than 10 * target relative.
BoundaryDerivativeEstimate estimate_boundary_derivative_detail(const std::function<Complex(Complex)>& flow,
                                                               const BoundaryPoint& sigma,
                                                               const std::vector<double>& radii = default_radii(),
                                                               double target = 1e-3);

double estimate_boundary_derivative(const Generator& g, const BoundaryPoint& sigma, double t,
                                    const ODESettings& settings = {},
                                    const std::vector<double>& radii = default_radii(), double target = 1e-3);

struct AttractionReport {
  std::vector<Complex> starts;
  std::vector<double> initial_distance;
  std::vector<double> final_distance;
  bool all_attracted = false;
};

/// Integrates `samples` random starts (|z| <= 0.9) to t_max and compares
/// their distance |z - tau| to the Denjoy-Wolff point before and after.
AttractionReport dw_attraction_check(const Generator& g, std::size_t samples, double t_max, std::uint64_t seed = 1,
                                     const ODESettings& settings = {});

} // namespace semigen
