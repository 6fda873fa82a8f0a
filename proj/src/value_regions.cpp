#include "semigen/value_regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semigen/error.hpp"

namespace semigen {

namespace {

constexpr double kNearMissBand = 1e-6;

double scale_of(std::initializer_list<double> xs) {
  double s = 1.0;
  for (double x : xs) s = std::max(s, std::abs(x));
  return s;
}

void require_interior_nonzero(const FixedPointConfig& config) {
  if (config.is_boundary()) throw DomainError("this region needs tau inside the disk");
  if (config.is_origin()) throw DegenerateConfig("Z is not defined for tau = 0");
}

void require_origin(const FixedPointConfig& config) {
  if (!config.is_origin()) throw DomainError("this region needs tau = 0");
}

void require_boundary(const FixedPointConfig& config) {
  if (!config.is_boundary()) throw DomainError("this region needs tau on the unit circle");
}

// Position of zeta relative to Z through the sign of Re ell_zeta.
enum class ZPosition { Outside, Boundary, Interior };

ZPosition z_position(Complex l) {
  const double tol = kRegionTolerance * std::max(1.0, std::abs(l));
  if (l.real() < -tol) return ZPosition::Outside;
  if (l.real() <= tol) return ZPosition::Boundary;
  return ZPosition::Interior;
}

Complex checked_ell(const FixedPointConfig& config, Complex zeta, const char* what) {
  if (zeta == Complex(0.0)) throw DomainError(std::string(what) + " needs zeta != 0");
  const Complex l = ell(config, zeta);
  if (z_position(l) == ZPosition::Outside) throw DomainError(std::string(what) + ": zeta lies outside Z");
  return l;
}

Complex sum_conj_sigma_over_lambda(const FixedPointConfig& config) {
  Complex c(0.0);
  for (std::size_t k = 0; k < config.size(); ++k)
    c += std::conj(config.sigmas()[k].value()) / -config.lambdas()[k];
  return c;
}

double omega_position(const FixedPointConfig& config, Complex omega) {
  // 2 Re(1/omega) - S, positive in int Omega
  return 2.0 * (1.0 / omega).real() - config.sum_inv_lambda();
}

} // namespace

bool DiskRegion::contains(Complex w, double tol) const {
  return slack(w) >= -tol * std::max({1.0, std::abs(center), radius});
}

bool DiskRegion::on_boundary(Complex w, double tol) const {
  return std::abs(slack(w)) <= tol * std::max({1.0, std::abs(center), radius});
}

bool IntervalRegion::contains(double x, double tol) const {
  return slack(x) >= -tol * std::max({1.0, std::abs(lo), std::abs(hi)});
}

Complex ChartedDisk::to_chart(Complex w) const {
  return chart == Chart::Reciprocal ? factor / w : factor * w;
}

Complex ChartedDisk::from_chart(Complex c) const {
  return chart == Chart::Reciprocal ? factor / c : c / factor;
}

double ChartedDisk::slack(Complex w) const {
  if (zero_only) return -std::abs(w);
  return disk.slack(to_chart(w));
}

bool ChartedDisk::contains(Complex w, double tol) const {
  if (zero_only) return std::abs(w) <= tol;
  return disk.contains(to_chart(w), tol);
}

bool ChartedDisk::on_boundary(Complex w, double tol) const {
  if (zero_only) return std::abs(w) <= tol;
  return disk.on_boundary(to_chart(w), tol);
}

DiskRegion region_Z(const FixedPointConfig& config) {
  if (config.is_origin()) throw DegenerateConfig("Z is not defined for tau = 0");
  const double a = config.cap_a();
  return {config.tau() / (2.0 * a), std::abs(config.tau()) / (2.0 * a)};
}

Complex ell(const FixedPointConfig& config, Complex zeta) {
  if (zeta == Complex(0.0)) throw DivisionByZero("ell is undefined at zeta = 0");
  return config.tau() / zeta - config.cap_a();
}

ChartedDisk region_Omega(const FixedPointConfig& config, Complex zeta) {
  require_interior_nonzero(config);
  const double t2 = std::norm(config.tau());
  const double scale = 1.0 - t2;
  if (zeta == Complex(0.0)) return {{0.0, 0.0}, ChartedDisk::Chart::Reciprocal, scale, true};
  const Complex l = checked_ell(config, zeta, "region_Omega");
  const double re = std::max(l.real(), 0.0);
  const Complex center = Complex((1.0 + t2) / scale * re, l.imag()) + eval_p0(config, config.tau());
  const double radius = 2.0 * std::sqrt(t2) / scale * re;
  return {{center, radius}, ChartedDisk::Chart::Reciprocal, scale, false};
}

GeneratorSpec extremal_interior(const FixedPointConfig& config, Complex zeta, const BoundaryPoint& sigma) {
  require_interior_nonzero(config);
  const Complex l = checked_ell(config, zeta, "extremal_interior");
  if (z_position(l) != ZPosition::Interior) throw DomainError("extremal_interior needs zeta in the interior of Z");
  return {config, AtomicHerglotz::single_atom(sigma, l.real(), l.imag())};
}

GeneratorSpec extremal_boundary_of_Z(const FixedPointConfig& config, Complex zeta) {
  if (config.is_origin()) throw DegenerateConfig("Z is not defined for tau = 0");
  const Complex l = checked_ell(config, zeta, "extremal_boundary_of_Z");
  if (z_position(l) != ZPosition::Boundary) throw DomainError("extremal_boundary_of_Z needs zeta on the boundary of Z");
  return {config, AtomicHerglotz::imaginary_constant(l.imag())};
}

DiskRegion region_Omega_origin(const FixedPointConfig& config) {
  require_origin(config);
  const double r = config.harmonic_radius();
  return {r, r};
}

ChartedDisk region_Z_omega(const FixedPointConfig& config, Complex omega) {
  require_origin(config);
  if (omega == Complex(0.0)) return {{0.0, 0.0}, ChartedDisk::Chart::Linear, 1.0, true};
  const double rad = omega_position(config, omega);
  const double tol = kRegionTolerance * std::max(1.0, config.sum_inv_lambda());
  if (rad < -tol) throw DomainError("region_Z_omega: omega lies outside Omega");
  return {{sum_conj_sigma_over_lambda(config), std::max(rad, 0.0)},
          ChartedDisk::Chart::Linear,
          1.0 / (2.0 * omega * omega),
          false};
}

Complex ell_origin(const FixedPointConfig& config, Complex omega) {
  if (omega == Complex(0.0)) throw DivisionByZero("ell-hat is undefined at omega = 0");
  return 1.0 / omega - 0.5 * config.sum_inv_lambda();
}

GeneratorSpec extremal_origin(const FixedPointConfig& config, Complex omega, const BoundaryPoint& sigma) {
  require_origin(config);
  const Complex l = ell_origin(config, omega);
  if (z_position(l) != ZPosition::Interior) throw DomainError("extremal_origin needs omega in the interior of Omega");
  return {config, AtomicHerglotz::single_atom(sigma, l.real(), l.imag())};
}

GeneratorSpec extremal_origin_boundary(const FixedPointConfig& config, Complex omega) {
  require_origin(config);
  const Complex l = ell_origin(config, omega);
  if (z_position(l) != ZPosition::Boundary)
    throw DomainError("extremal_origin_boundary needs omega on the boundary of Omega");
  return {config, AtomicHerglotz::imaginary_constant(l.imag())};
}

double hyperbolic_bound(const FixedPointConfig& config, Complex w) {
  const double re = w.real();
  const double den = std::norm(w) + 2.0 * re * config.sum_inv_lambda();
  if (den == 0.0) return config.harmonic_radius();
  return 2.0 * re / den;
}

double boundary_coincidence_residual(const FixedPointConfig& config, Complex zeta) {
  const Complex l = ell(config, zeta);
  const Complex w = l + Complex(0.0, config.cap_b());
  return std::abs(w) / (1.0 + std::abs(l) + std::abs(config.cap_b()));
}

IntervalRegion interval_I(const FixedPointConfig& config, Complex zeta) {
  require_boundary(config);
  if (zeta == Complex(0.0)) return {0.0, 0.0};
  const Complex l = checked_ell(config, zeta, "interval_I");
  if (z_position(l) == ZPosition::Boundary) {
    if (boundary_coincidence_residual(config, zeta) <= kRegionTolerance) {
      const double r = config.harmonic_radius();
      return {r, r};
    }
    return {0.0, 0.0};
  }
  return {0.0, hyperbolic_bound(config, l + Complex(0.0, config.cap_b()))};
}

BoundaryPoint hyperbolic_sigma(const FixedPointConfig& config, Complex zeta) {
  require_boundary(config);
  const Complex l = checked_ell(config, zeta, "hyperbolic_sigma");
  if (z_position(l) != ZPosition::Interior) throw DomainError("hyperbolic_sigma needs zeta in the interior of Z");
  const double a = -(l.imag() + config.cap_b()) / l.real();
  return caratheodory_min_sharp(config.tau_point(), a).sigma;
}

GeneratorSpec extremal_hyperbolic(const FixedPointConfig& config, Complex zeta) {
  const BoundaryPoint sigma = hyperbolic_sigma(config, zeta);
  const Complex l = ell(config, zeta);
  return {config, AtomicHerglotz::single_atom(sigma, l.real(), l.imag())};
}

IntervalRegion parabolic_region(const FixedPointConfig& config, Complex zeta) {
  require_boundary(config);
  if (zeta == Complex(0.0)) throw DomainError("parabolic_region needs zeta != 0");
  const Complex l = checked_ell(config, zeta, "parabolic_region");
  return {0.0, 2.0 * std::max(l.real(), 0.0)};
}

GeneratorSpec extremal_parabolic(const FixedPointConfig& config, Complex zeta) {
  require_boundary(config);
  const Complex l = checked_ell(config, zeta, "extremal_parabolic");
  return {config, AtomicHerglotz::single_atom(config.tau_point(), std::max(l.real(), 0.0), l.imag())};
}

LambdaRange lambda_range(const FixedPointConfig& config) {
  const double r = config.harmonic_radius();
  GeneratorSpec extremal{config, AtomicHerglotz::imaginary_constant(-config.cap_b())};
  if (config.is_boundary()) return {IntervalRegion{0.0, r}, std::move(extremal)};
  return {DiskRegion{r, r}, std::move(extremal)};
}

CaratheodoryMin caratheodory_min_sharp(const BoundaryPoint& tau, double a) {
  const Complex ia(0.0, a);
  const Complex sigma = -tau.value() * (1.0 + ia) / (1.0 - ia);
  return {(1.0 + a * a) / 2.0, BoundaryPoint::from_complex(sigma)};
}

std::size_t InequalityReport::violations(double tol) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [tol](const InequalityCheck& c) { return c.violated(tol); }));
}

double InequalityReport::min_relative_slack() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& c : checks) m = std::min(m, c.slack / c.scale);
  return m;
}

namespace {

void add_check(InequalityReport& report, std::string name, double lhs, double rhs) {
  report.checks.push_back({std::move(name), lhs, rhs, lhs - rhs, scale_of({lhs, rhs})});
}

} // namespace

InequalityReport inequality_suite(const GeneratorSpec& spec) {
  const FixedPointConfig& config = spec.config;
  const Complex tau = config.tau();
  const double cap_s = config.sum_inv_lambda();
  InequalityReport report;
  const Complex g0 = eval_generator(spec, 0.0);
  const Complex lam = dw_spectral_value(spec);

  if (config.is_origin()) {
    add_check(report, "lambda_disk", 2.0 * (1.0 / lam).real(), cap_s);
    const DiskRegion omega = region_Omega_origin(config);
    add_check(report, "lambda_in_Omega", omega.radius, std::abs(lam - omega.center));
    const Complex g2 = eval_generator_second_derivative(spec, 0.0);
    add_check(report, "second_derivative", 2.0 * (1.0 / lam).real() - cap_s,
              std::abs(g2 / (2.0 * lam * lam) - sum_conj_sigma_over_lambda(config)));
    return report;
  }

  const Complex q = tau / g0;
  const Complex l = q - config.cap_a();
  add_check(report, "G0_in_Z", q.real(), config.cap_a());

  if (!config.is_boundary()) {
    const double t = std::abs(tau);
    const double t2 = t * t;
    const Complex eta = (1.0 - t2) / lam;
    const double mid = eta.real() - 0.5 * (1.0 - t2) * cap_s;
    add_check(report, "harnack_lower", mid, (1.0 - t) / (1.0 + t) * l.real());
    add_check(report, "harnack_upper", (1.0 + t) / (1.0 - t) * l.real(), mid);
    add_check(report, "imaginary_part", 2.0 * t / (1.0 - t2) * l.real(),
              std::abs((eta - q).imag() - config.cap_b()));
    const ChartedDisk omega = region_Omega(config, g0);
    add_check(report, "lambda_in_Omega_zeta", omega.disk.radius, std::abs(eta - omega.disk.center));
    add_check(report, "lambda_disk", 2.0 * (1.0 / lam).real(), cap_s);
    return report;
  }

  const double lr = lam.real();
  add_check(report, "lambda_bound", config.harmonic_radius(), lr);
  add_check(report, "lambda_in_I", interval_I(config, g0).hi, lr);
  if (lr > 0.0) {
    const double b = l.imag() + config.cap_b();
    add_check(report, "hyperbolic_quadratic", 2.0 * (1.0 / lr - cap_s) * l.real(), l.real() * l.real() + b * b);
  }
  add_check(report, "beta_bound", 2.0 * l.real(), beta(spec));
  if (z_position(l) == ZPosition::Boundary) {
    const double res = boundary_coincidence_residual(config, g0);
    report.near_miss = res > kRegionTolerance && res < kNearMissBand;
  }
  return report;
}

std::vector<BoundarySample> sample_boundary(const DiskRegion& disk, std::size_t n) {
  std::vector<BoundarySample> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    out.push_back({t, disk.center + std::polar(disk.radius, t)});
  }
  return out;
}

std::vector<BoundarySample> sample_boundary(const ChartedDisk& region, std::size_t n) {
  auto out = sample_boundary(region.disk, n);
  for (auto& s : out) s.point = region.zero_only ? Complex(0.0) : region.from_chart(s.point);
  return out;
}

std::vector<BoundarySample> sample_boundary(const IntervalRegion& interval, std::size_t n) {
  std::vector<BoundarySample> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = n > 1 ? static_cast<double>(j) / static_cast<double>(n - 1) : 0.0;
    out.push_back({t, Complex(interval.lo + t * (interval.hi - interval.lo), 0.0)});
  }
  return out;
}

} // namespace semigen
