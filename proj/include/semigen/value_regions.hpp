#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "semigen/generator.hpp"

namespace semigen {

constexpr double kRegionTolerance = 1e-10;

/// Closed disk |w - center| <= radius; radius 0 is a single point.
struct DiskRegion {
  Complex center;
  double radius = 0.0;

  /// radius - |w - center|; nonnegative inside.
  double slack(Complex w) const { return radius - std::abs(w - center); }
  /// Membership with tolerance tol * max(1, |center|, radius).
  bool contains(Complex w, double tol = kRegionTolerance) const;
  bool on_boundary(Complex w, double tol = kRegionTolerance) const;
};

struct IntervalRegion {
  double lo = 0.0;
  double hi = 0.0;

  double slack(double x) const { return std::min(x - lo, hi - x); }
  bool contains(double x, double tol = kRegionTolerance) const;
};

/// A disk stored in a transformed coordinate. For Reciprocal charts the chart
/// point of w is factor / w (Omega_zeta uses eta = (1 - |tau|^2) / omega);
/// for Linear charts it is factor * w (Z_omega uses zeta / (2 omega^2)).
/// zero_only marks the degenerate regions Omega_0 = Z_0 = {0}.
struct ChartedDisk {
  enum class Chart { Reciprocal, Linear };

  DiskRegion disk;
  Chart chart = Chart::Linear;
  Complex factor = 1.0;
  bool zero_only = false;

  Complex to_chart(Complex w) const;
  Complex from_chart(Complex c) const;
  double slack(Complex w) const;
  bool contains(Complex w, double tol = kRegionTolerance) const;
  bool on_boundary(Complex w, double tol = kRegionTolerance) const;
};

/// Z = {zeta : |(2A/tau) zeta - 1| <= 1}: center tau/(2A), radius |tau|/(2A).
/// DegenerateConfig for tau = 0.
DiskRegion region_Z(const FixedPointConfig& config);

/// ell_zeta = tau/zeta - A. DivisionByZero for zeta = 0.
Complex ell(const FixedPointConfig& config, Complex zeta);

/// Omega_zeta for 0 < |tau| < 1 in the eta = (1 - |tau|^2)/omega chart.
ChartedDisk region_Omega(const FixedPointConfig& config, Complex zeta);

/// G_{zeta,sigma}: p = Re(ell) K_sigma + i Im(ell) for zeta in int Z.
GeneratorSpec extremal_interior(const FixedPointConfig& config, Complex zeta, const BoundaryPoint& sigma);
/// G_zeta: p = i Im(ell) for zeta on the boundary of Z, zeta != 0.
GeneratorSpec extremal_boundary_of_Z(const FixedPointConfig& config, Complex zeta);

/// tau = 0: Omega = {|omega - r| <= r}.
DiskRegion region_Omega_origin(const FixedPointConfig& config);
/// tau = 0: Z_omega in the zeta/(2 omega^2) chart, center sum conj(sigma_k)/|lambda_k|,
/// radius 2 Re(1/omega) - S.
ChartedDisk region_Z_omega(const FixedPointConfig& config, Complex omega);
/// ell-hat_omega = 1/omega - S/2.
Complex ell_origin(const FixedPointConfig& config, Complex omega);
/// tau = 0 extremals: p = Re(ell-hat) K_sigma + i Im(ell-hat) for omega in int Omega,
/// p = i Im(ell-hat) for omega on the boundary of Omega.
GeneratorSpec extremal_origin(const FixedPointConfig& config, Complex omega, const BoundaryPoint& sigma);
GeneratorSpec extremal_origin_boundary(const FixedPointConfig& config, Complex omega);

/// f(w) = 2 Re w / (|w|^2 + 2 Re w S).
double hyperbolic_bound(const FixedPointConfig& config, Complex w);

/// |tau| = 1: range of lambda(G) over G with G(0) = zeta. For zeta in int Z this
/// is [0, f(ell + iB)]; on the boundary of Z it is {r} when ell + iB = 0 (the
/// condition 1/conj(zeta) = sum (tau - sigma_k)/|lambda_k|) and {0} otherwise.
IntervalRegion interval_I(const FixedPointConfig& config, Complex zeta);
/// |ell + iB| relative to 1 + |ell| + |B|; used to flag near coincidences.
double boundary_coincidence_residual(const FixedPointConfig& config, Complex zeta);

/// sigma_zeta = -tau (1 + ia)/(1 - ia), a = -(Im ell + B)/Re ell.
BoundaryPoint hyperbolic_sigma(const FixedPointConfig& config, Complex zeta);
GeneratorSpec extremal_hyperbolic(const FixedPointConfig& config, Complex zeta);

/// |tau| = 1: range [0, 2 Re ell] of beta(G) over G with G(0) = zeta.
IntervalRegion parabolic_region(const FixedPointConfig& config, Complex zeta);
/// p = Re(ell) K_tau + i Im(ell); beta = 2 Re ell.
GeneratorSpec extremal_parabolic(const FixedPointConfig& config, Complex zeta);

struct LambdaRange {
  std::variant<DiskRegion, IntervalRegion> region;
  /// p = -iB, the unique maximizer of Re lambda(G).
  GeneratorSpec extremal;
};

/// Interior tau: {|omega - r| <= r}; boundary tau: [0, r]; r = 1/S.
LambdaRange lambda_range(const FixedPointConfig& config);

struct CaratheodoryMin {
  double value = 0.0;
  BoundaryPoint sigma;
};

/// Minimum of q#(tau) over Caratheodory functions with boundary value q(tau) = ia:
/// (1 + a^2)/2, attained only by K_sigma with sigma = -tau (1 + ia)/(1 - ia).
CaratheodoryMin caratheodory_min_sharp(const BoundaryPoint& tau, double a);

struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  /// lhs - rhs; the inequality reads lhs >= rhs.
  double slack = 0.0;
  double scale = 1.0;

  bool violated(double tol = kRegionTolerance) const { return slack < -tol * scale; }
};

struct InequalityReport {
  std::vector<InequalityCheck> checks;
  /// Boundary tau with G(0) on the boundary of Z and ell + iB within 1e-6 of 0
  /// but not within 1e-10.
  bool near_miss = false;

  std::size_t violations(double tol = kRegionTolerance) const;
  double min_relative_slack() const;
};

/// Evaluates every inequality that applies to the position of tau, using the
/// closed-form G(0), lambda(G), G''(0) and beta(G).
InequalityReport inequality_suite(const GeneratorSpec& spec);

struct BoundarySample {
  double param = 0.0;
  Complex point;
};

/// n points on the boundary of the region, param = angle in [0, 2 pi).
std::vector<BoundarySample> sample_boundary(const DiskRegion& disk, std::size_t n = 720);
/// Chart circle mapped back to the untransformed plane.
std::vector<BoundarySample> sample_boundary(const ChartedDisk& region, std::size_t n = 720);
/// Interval as n points on the real axis, param in [0, 1].
std::vector<BoundarySample> sample_boundary(const IntervalRegion& interval, std::size_t n = 720);

} // namespace semigen
