#include "semigen/loewner_cp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "semigen/error.hpp"

namespace semigen {

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kTargetTolerance = 1e-9;
constexpr double kSlackTolerance = 1e-8;

double spectral_mass(const GeneratorSpec& gen) {
  double s = 0.0;
  for (double v : brfp_spectral_values(gen)) s += std::abs(v);
  return s;
}

bool same_skeleton(const FixedPointConfig& a, Complex tau, const std::vector<BoundaryPoint>& sigmas) {
  if (std::abs(a.tau() - tau) > 1e-15 || a.size() != sigmas.size()) return false;
  for (std::size_t k = 0; k < sigmas.size(); ++k)
    if (!a.sigmas()[k].same_as(sigmas[k])) return false;
  return true;
}

} // namespace

PiecewiseField::PiecewiseField(std::vector<Segment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw DomainError("piecewise field needs at least one segment");
  const auto& first = segments_.front().gen.config;
  for (const auto& seg : segments_) {
    if (!(seg.duration > 0.0) || !std::isfinite(seg.duration)) throw DomainError("segment durations must be positive");
    if (!same_skeleton(seg.gen.config, first.tau(), first.sigmas()))
      throw DomainError("segments must share tau and the fixed points");
    if (spectral_mass(seg.gen) > 1.0 + kNormTolerance) throw DomainError("segment outside Gen_tau(F): sum |lambda'| > 1");
    total_ += seg.duration;
  }
}

bool PiecewiseField::is_normalized(double tol) const {
  return std::all_of(segments_.begin(), segments_.end(),
                     [tol](const Segment& seg) { return std::abs(spectral_mass(seg.gen) - 1.0) <= tol; });
}

PiecewiseField normalize_time(const PiecewiseField& field) {
  std::vector<Segment> out;
  for (const auto& seg : field.segments()) {
    double s = spectral_mass(seg.gen);
    std::vector<double> lambdas = seg.gen.config.lambdas();
    for (double& l : lambdas) l /= s;
    out.push_back({seg.duration * s, GeneratorSpec{seg.gen.config.with_lambdas(std::move(lambdas)), seg.gen.p.scaled(s)}});
  }
  return PiecewiseField(std::move(out));
}

CPTarget::CPTarget(std::vector<double> values) : a(std::move(values)) {
  if (a.empty()) throw DomainError("target needs at least one boundary derivative");
  for (double v : a)
    if (!(v > 1.0) || !std::isfinite(v)) throw DomainError("target boundary derivatives must exceed 1");
}

double CPTarget::total_log() const {
  double t = 0.0;
  for (double v : a) t += std::log(v);
  return t;
}

Complex evolve(const PiecewiseField& field, Complex z0, const ODESettings& settings) {
  if (!(std::abs(z0) < 1.0)) throw DomainError("evolve needs |z0| < 1");
  Complex z = z0;
  for (const auto& seg : field.segments())
    z = integrate_field(vector_field(Generator(seg.gen)), z, 0.0, seg.duration, settings).phi;
  return z;
}

FlowWithDerivative evolve_with_derivative(const PiecewiseField& field, Complex z0, const ODESettings& settings) {
  if (!(std::abs(z0) < 1.0)) throw DomainError("evolve needs |z0| < 1");
  FlowWithDerivative state{z0, 1.0};
  for (const auto& seg : field.segments())
    state = integrate_field(vector_field(Generator(seg.gen)), state.phi, state.dphi, seg.duration, settings);
  return state;
}

double boundary_log_derivative(const PiecewiseField& field, std::size_t k) {
  if (k >= field.size()) throw DomainError("fixed point index out of range");
  double sum = 0.0;
  for (const auto& seg : field.segments()) sum += seg.duration * std::abs(brfp_spectral_value(seg.gen, k));
  return sum;
}

Complex psi_tau(const PiecewiseField& field) {
  Complex sum(0.0);
  for (const auto& seg : field.segments()) sum -= seg.duration * dw_spectral_value(seg.gen);
  return sum;
}

double cp_radius(const CPTarget& target) {
  double s = 0.0;
  for (double v : target.a) s += 1.0 / std::log(v);
  return 1.0 / s;
}

DiskRegion cp_region(const CPTarget& target) {
  double r = cp_radius(target);
  return {Complex(r, 0.0), r};
}

IntervalRegion cp_region_boundary(const CPTarget& target) { return {0.0, cp_radius(target)}; }

PiecewiseField cp_extremal_field(Complex tau, const std::vector<BoundaryPoint>& sigmas, const CPTarget& target,
                                 Complex c) {
  if (!(c.real() >= 0.0)) throw DomainError("extremal constant needs Re c >= 0");
  if (sigmas.size() != target.a.size()) throw DomainError("target size does not match the fixed points");
  double total = target.total_log();
  std::vector<double> lambdas;
  for (double v : target.a) lambdas.push_back(-std::log(v) / total);
  FixedPointConfig config(tau, sigmas, std::move(lambdas));
  double gamma = c.imag();
  if (config.is_boundary()) gamma -= config.cap_b();
  return PiecewiseField({Segment{total, GeneratorSpec{config, AtomicHerglotz({}, gamma, c.real())}}});
}

Complex cp_extremal_value(Complex tau, const std::vector<BoundaryPoint>& sigmas, const CPTarget& target, Complex c) {
  if (!(std::abs(tau) < 1.0)) throw DomainError("closed form is for interior tau");
  if (sigmas.size() != target.a.size()) throw DomainError("target size does not match the fixed points");
  double total = target.total_log();
  double im = 0.0;
  double half = 0.0;
  for (std::size_t k = 0; k < sigmas.size(); ++k) {
    double la = std::log(target.a[k]);
    im += std::imag(std::conj(sigmas[k].value()) * tau) / la;
    half += 0.5 / la;
  }
  Complex ctilde = (c / total + Complex(0.0, im)) / (1.0 - std::norm(tau));
  return 1.0 / (ctilde + half);
}

PiecewiseField random_admissible_field(std::mt19937_64& rng, Complex tau, const std::vector<BoundaryPoint>& sigmas,
                                       const CPTarget& target, int max_segments) {
  if (sigmas.size() != target.a.size()) throw DomainError("target size does not match the fixed points");
  if (max_segments < 1) throw DomainError("need at least one segment");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  const std::size_t n = sigmas.size();
  const double total = target.total_log();
  std::vector<double> mean(n);
  for (std::size_t k = 0; k < n; ++k) mean[k] = std::log(target.a[k]) / total;

  int segs = std::uniform_int_distribution<int>(1, max_segments)(rng);
  std::vector<double> share(segs);
  for (double& s : share) s = expo(rng) + 1e-3;
  double share_sum = std::accumulate(share.begin(), share.end(), 0.0);
  for (double& s : share) s /= share_sum;

  // Zero-sum perturbations u_j, recentred so that the share-weighted mean is zero.
  std::vector<std::vector<double>> u(segs, std::vector<double>(n));
  for (auto& row : u) {
    for (double& v : row) v = unit(rng) - 0.5;
    double m = std::accumulate(row.begin(), row.end(), 0.0) / static_cast<double>(n);
    for (double& v : row) v -= m;
  }
  std::vector<double> centre(n, 0.0);
  for (int j = 0; j < segs; ++j)
    for (std::size_t k = 0; k < n; ++k) centre[k] += share[j] * u[j][k];
  double smax = std::numeric_limits<double>::infinity();
  for (int j = 0; j < segs; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      u[j][k] -= centre[k];
      if (u[j][k] < 0.0) smax = std::min(smax, 0.9 * mean[k] / -u[j][k]);
    }
  double scale = std::isfinite(smax) ? smax * unit(rng) : 0.0;

  std::vector<Segment> segments;
  for (int j = 0; j < segs; ++j) {
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = mean[k] + scale * u[j][k];
    double wsum = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& v : w) v /= wsum;

    bool use_atoms = unit(rng) < 0.5;
    std::vector<double> lambdas(n);
    for (std::size_t k = 0; k < n; ++k) lambdas[k] = -w[k] * (use_atoms ? 1.0 + 2.0 * unit(rng) : 1.0);
    FixedPointConfig config(tau, sigmas, lambdas);

    std::vector<AtomicHerglotz::Atom> atoms;
    int extra = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int i = 0; i < extra; ++i)
      atoms.push_back({BoundaryPoint(kTwoPi * unit(rng)), std::exp(-3.0 + 4.0 * unit(rng))});
    if (use_atoms)
      for (std::size_t k = 0; k < n; ++k)
        atoms.push_back({sigmas[k], config.alphas()[k] * (std::abs(lambdas[k]) / w[k] - 1.0)});
    double gamma = -3.0 + 6.0 * unit(rng);
    double offset = unit(rng) < 0.25 ? expo(rng) : 0.0;
    segments.push_back({share[j] * total, GeneratorSpec{config, AtomicHerglotz(std::move(atoms), gamma, offset)}});
  }
  return PiecewiseField(std::move(segments));
}

double harmonic_Q(const std::vector<double>& x) {
  if (x.empty()) throw DomainError("Q needs at least one argument");
  double s = 0.0;
  for (double v : x) {
    if (!(v > 0.0)) throw DomainError("Q needs positive arguments");
    s += 1.0 / v;
  }
  return 1.0 / s;
}

std::vector<std::vector<double>> harmonic_Q_hessian(const std::vector<double>& x) {
  double q = harmonic_Q(x);
  std::size_t n = x.size();
  std::vector<std::vector<double>> h(n, std::vector<double>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      double b = 1.0 - (j == k ? x[j] / q : 0.0);
      h[j][k] = 2.0 * q * q * q / (x[j] * x[j] * x[k] * x[k]) * b;
    }
  return h;
}

QConcavityReport q_concavity_check(const std::vector<double>& x, std::size_t trials, std::uint64_t seed) {
  const std::size_t n = x.size();
  if (n == 0 || n > 8) throw DomainError("q_concavity_check supports 1 <= n <= 8");
  QConcavityReport report;

  auto h = harmonic_Q_hessian(x);
  Eigen::MatrixXd m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) m(j, k) = h[j][k];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  report.max_eigenvalue = solver.eigenvalues().maxCoeff();
  report.determinant = m.determinant();
  report.determinant_scale = std::max(1.0, std::pow(m.norm(), static_cast<double>(n)));

  auto mid_gap = [](const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> mid(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) mid[i] = 0.5 * (a[i] + b[i]);
    return harmonic_Q(mid) - 0.5 * (harmonic_Q(a) + harmonic_Q(b));
  };
  auto to_simplex = [](std::vector<double> v) {
    double s = std::accumulate(v.begin(), v.end(), 0.0);
    for (double& e : v) e /= s;
    return v;
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> logu(-2.0, 2.0);
  report.min_midpoint_gap = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = std::exp(logu(rng));
      b[i] = std::exp(logu(rng));
    }
    report.min_midpoint_gap = std::min(report.min_midpoint_gap, mid_gap(a, b));
    auto sa = to_simplex(a);
    auto sb = to_simplex(b);
    double dist = 0.0;
    for (std::size_t i = 0; i < n; ++i) dist = std::max(dist, std::abs(sa[i] - sb[i]));
    if (dist > 1e-4 && mid_gap(sa, sb) <= 1e-12) ++report.strictness_failures;
  }
  if (trials == 0) report.min_midpoint_gap = 0.0;

  std::vector<double> doubled(x);
  for (double& v : doubled) v *= 2.0;
  report.homogeneous_equality = std::abs(mid_gap(x, x)) <= 1e-12 && std::abs(mid_gap(x, doubled)) <= 1e-12 * std::max(1.0, harmonic_Q(doubled));

  report.pass = report.max_eigenvalue <= 1e-9 && std::abs(report.determinant) <= 1e-9 * report.determinant_scale &&
                report.min_midpoint_gap >= -1e-12 && report.strictness_failures == 0 && report.homogeneous_equality;
  return report;
}

CPResult cp_experiment(const PiecewiseField& field, const CPTarget& target, const ODESettings& settings,
                       bool ode_check) {
  if (field.size() != target.a.size()) throw TargetMismatch("target size does not match the fixed points");
  for (std::size_t k = 0; k < field.size(); ++k) {
    double want = std::log(target.a[k]);
    if (std::abs(boundary_log_derivative(field, k) - want) > kTargetTolerance * std::max(1.0, want))
      throw TargetMismatch("field misses the target boundary derivative at sigma_" + std::to_string(k + 1));
  }
  CPResult result;
  Complex psi = psi_tau(field);
  result.point = -psi;
  result.ode_residual = std::numeric_limits<double>::quiet_NaN();
  if (field.is_boundary()) {
    IntervalRegion region = cp_region_boundary(target);
    result.slack = region.slack(result.point.real()) - std::abs(result.point.imag());
  } else {
    result.slack = cp_region(target).slack(result.point);
    if (ode_check) {
      auto state = evolve_with_derivative(field, field.tau(), settings);
      result.ode_residual = std::abs(std::exp(psi) - state.dphi);
    }
  }
  result.inside = result.slack >= -kSlackTolerance;
  return result;
}

CPResult cp_experiment(Complex tau, const std::vector<BoundaryPoint>& sigmas, const CPTarget& target,
                       const PiecewiseField& field, const ODESettings& settings, bool ode_check) {
  if (!same_skeleton(field.segments().front().gen.config, tau, sigmas))
    throw TargetMismatch("field lives on a different tau or set of fixed points");
  return cp_experiment(field, target, settings, ode_check);
}

JensenChain jensen_chain(const PiecewiseField& field, double theta) {
  JensenChain chain;
  const double weight = 1.0 + std::cos(theta);
  chain.lhs = std::real(-std::exp(Complex(0.0, -theta)) * psi_tau(field));
  std::vector<double> mean(field.size(), 0.0);
  double middle = 0.0;
  for (const auto& seg : field.segments()) {
    std::vector<double> mags;
    for (double v : brfp_spectral_values(seg.gen)) mags.push_back(std::abs(v));
    middle += seg.duration * harmonic_Q(mags);
    for (std::size_t k = 0; k < mags.size(); ++k) mean[k] += seg.duration * mags[k];
  }
  const double total = field.total_duration();
  for (double& v : mean) v /= total;
  chain.middle = weight * middle;
  chain.rhs = weight * total * harmonic_Q(mean);
  return chain;
}

} // namespace semigen
