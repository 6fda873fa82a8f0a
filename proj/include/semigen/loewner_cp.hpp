#pragma once

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "semigen/generator.hpp"
#include "semigen/semiflow.hpp"
#include "semigen/value_regions.hpp"

namespace semigen {

struct Segment {
  double duration = 0.0;
  GeneratorSpec gen;
};

/// Herglotz vector field that is constant in t on consecutive segments. All
/// segments share tau and F; each belongs to Gen_tau(F), i.e. the BRFP
/// spectral values satisfy sum |lambda'_k| <= 1.
class PiecewiseField {
public:
  /// DomainError on empty input, non-positive durations, mismatched tau or F,
  /// or a segment with sum |lambda'_k| > 1 + 1e-12.
  explicit PiecewiseField(std::vector<Segment> segments);

  const std::vector<Segment>& segments() const { return segments_; }
  double total_duration() const { return total_; }
  Complex tau() const { return segments_.front().gen.config.tau(); }
  const std::vector<BoundaryPoint>& sigmas() const { return segments_.front().gen.config.sigmas(); }
  std::size_t size() const { return sigmas().size(); }
  bool is_boundary() const { return segments_.front().gen.config.is_boundary(); }

  /// Every segment lies in Gen'_tau(F): sum |lambda'_k| = 1 within tol.
  bool is_normalized(double tol = 1e-12) const;

private:
  std::vector<Segment> segments_;
  double total_ = 0.0;
};

/// Reparametrizes time so that every segment lies in Gen'_tau(F): a segment
/// G with s = sum |lambda'_k| becomes G/s run for s times as long. The
/// evolved map does not change.
PiecewiseField normalize_time(const PiecewiseField& field);

struct CPTarget {
  /// DomainError unless every a_k > 1.
  explicit CPTarget(std::vector<double> a);
  std::vector<double> a;

  /// T = log prod a_k.
  double total_log() const;
};

Complex evolve(const PiecewiseField& field, Complex z0, const ODESettings& settings = {});
FlowWithDerivative evolve_with_derivative(const PiecewiseField& field, Complex z0, const ODESettings& settings = {});

/// log phi'(sigma_k) = sum over segments of duration * |lambda'_k|, 0-based k.
double boundary_log_derivative(const PiecewiseField& field, std::size_t k);

/// Psi[phi](tau) = sum over segments of duration * G'(tau) = -duration * lambda(G).
Complex psi_tau(const PiecewiseField& field);

/// r(A) = (sum 1/log a_k)^-1.
double cp_radius(const CPTarget& target);
/// Interior tau: D(A) = {|omega - r| <= r}.
DiskRegion cp_region(const CPTarget& target);
/// Boundary tau: [0, r(A)].
IntervalRegion cp_region_boundary(const CPTarget& target);

/// Single segment of length T = sum log a_k with lambda_k = -log a_k / T and
/// constant Herglotz part c (Re c >= 0). For boundary tau the imaginary part
/// is shifted by -B so that c = 0 gives the extremal -log phi'(tau) = r(A).
PiecewiseField cp_extremal_field(Complex tau, const std::vector<BoundaryPoint>& sigmas, const CPTarget& target,
                                 Complex c);

/// Closed form of -log phi'(tau) for cp_extremal_field with interior tau:
/// (c~ + sum 1/(2 log a_k))^-1, c~ = (c/T + i sum Im(conj(sigma_k) tau)/log a_k)/(1 - |tau|^2).
Complex cp_extremal_value(Complex tau, const std::vector<BoundaryPoint>& sigmas, const CPTarget& target, Complex c);

/// Random field in Gen'_tau(F) realizing the target: 1..max_segments segments
/// whose spectral magnitudes average to log a_k / T. Some segments realize
/// their spectral values through atoms of p at sigma_k.
PiecewiseField random_admissible_field(std::mt19937_64& rng, Complex tau, const std::vector<BoundaryPoint>& sigmas,
                                       const CPTarget& target, int max_segments = 4);

/// Q(x) = (sum 1/x_j)^-1.
double harmonic_Q(const std::vector<double>& x);

/// Hessian of Q: a_jk = (2 Q^3/(x_j^2 x_k^2)) (1 - delta_jk x_j / Q).
std::vector<std::vector<double>> harmonic_Q_hessian(const std::vector<double>& x);

struct QConcavityReport {
  double max_eigenvalue = 0.0;
  double determinant = 0.0;
  double determinant_scale = 1.0;
  double min_midpoint_gap = 0.0;
  std::size_t strictness_failures = 0;
  bool homogeneous_equality = false;
  bool pass = false;
};

/// Hessian spectrum at x, midpoint concavity on `trials` random pairs, strict
/// concavity on the simplex, equality along rays. n <= 8.
QConcavityReport q_concavity_check(const std::vector<double>& x, std::size_t trials, std::uint64_t seed = 1);

struct CPResult {
  Complex point;
  bool inside = false;
  double slack = 0.0;
  /// |exp(psi) - phi'(tau)| from the variational ODE; interior tau only, NaN otherwise.
  double ode_residual = 0.0;
};

/// -Psi[phi](tau) of the field tested against D(A) (or [0, r(A)]).
/// TargetMismatch unless boundary_log_derivative_k = log a_k within 1e-9.
CPResult cp_experiment(const PiecewiseField& field, const CPTarget& target, const ODESettings& settings = {},
                       bool ode_check = false);
/// Same, additionally requiring the field to live on (tau, F); TargetMismatch otherwise.
CPResult cp_experiment(Complex tau, const std::vector<BoundaryPoint>& sigmas, const CPTarget& target,
                       const PiecewiseField& field, const ODESettings& settings = {}, bool ode_check = false);

struct JensenChain {
  double lhs = 0.0;     // Re(-e^{-i theta} Psi)
  double middle = 0.0;  // (1 + cos theta) sum duration Q(|lambda'|)
  double rhs = 0.0;     // (1 + cos theta) T Q(mean |lambda'|)
};

JensenChain jensen_chain(const PiecewiseField& field, double theta);

} // namespace semigen
