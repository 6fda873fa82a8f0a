#include "semigen/semiflow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>

#include "semigen/error.hpp"

namespace semigen {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                 e5 = b5 - -92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

constexpr double kSafety = 0.9;
constexpr double kAlpha = 0.7 / 5.0;
constexpr double kBeta = 0.4 / 5.0;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;
constexpr int kMaxBoundaryRejections = 60;
constexpr long kMaxSteps = 50'000'000;

struct State {
  Complex w;
  Complex d;
};

State operator+(const State& a, const State& b) { return {a.w + b.w, a.d + b.d}; }
State operator*(double h, const State& a) { return {h * a.w, h * a.d}; }

class OutsideDisk {};

struct Rhs {
  const VectorField& field;
  bool track;

  State operator()(const State& y) const {
    if (!(std::abs(y.w) < 1.0)) throw OutsideDisk{};
    try {
      const Complex v = field.value(y.w);
      const Complex dv = track ? field.derivative(y.w) * y.d : Complex(0.0);
      return {v, dv};
    } catch (const DomainError&) {
      throw OutsideDisk{};
    }
  }
};

double error_norm(const State& err, const State& y0, const State& y1, const ODESettings& s, bool track) {
  auto term = [&](Complex e, Complex a, Complex b) {
    const double sc = s.abs_tol + s.rel_tol * std::max(std::abs(a), std::abs(b));
    return std::norm(e) / (sc * sc);
  };
  double sum = term(err.w, y0.w, y1.w);
  int count = 1;
  if (track) {
    sum += term(err.d, y0.d, y1.d);
    ++count;
  }
  return std::sqrt(sum / count);
}

} // namespace

void ODESettings::validate() const {
  if (!(rel_tol > 0.0 && abs_tol > 0.0 && max_step > 0.0 && boundary_guard > 0.0))
    throw ConfigError("ODE settings must all be positive");
}

VectorField vector_field(const Generator& g) {
  return {[g](Complex z) { return eval_generator(g, z); }, [g](Complex z) { return eval_generator_derivative(g, z); }};
}

FlowWithDerivative integrate_field(const VectorField& field, Complex z0, Complex d0, double t,
                                   const ODESettings& settings, Trajectory* record) {
  settings.validate();
  if (!(std::abs(z0) < 1.0)) throw DomainError("initial point must lie inside the unit disk");
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("integration time must be finite and >= 0");
  const bool track = d0 != Complex(0.0);
  const Rhs f{field, track};
  const double limit = 1.0 - settings.boundary_guard;

  State y{z0, d0};
  double now = 0.0;
  if (record) {
    record->times.push_back(0.0);
    record->points.push_back(z0);
    if (record->derivs) record->derivs->push_back(d0);
  }
  if (t == 0.0) return {z0, d0};

  State k1 = f(y);
  double h = std::min(settings.max_step, t);
  double err_prev = 1.0;
  int boundary_rejections = 0;
  for (long step = 0; step < kMaxSteps; ++step) {
    const double remaining = t - now;
    const bool last = h >= remaining - 1e-13 * std::max(1.0, t);
    if (last) h = remaining;
    if (h <= 1e-15 * std::max(1.0, t)) {
      if (boundary_rejections > 0)
        throw BoundaryEscape("trajectory reached the boundary guard at t = " + std::to_string(now));
      throw StepFailure("step size collapsed at t = " + std::to_string(now));
    }

    State y1;
    State k7;
    double err = 0.0;
    bool inside = true;
    try {
      const State k2 = f(y + (h * a21) * k1);
      const State k3 = f(y + h * (a31 * k1 + a32 * k2));
      const State k4 = f(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
      const State k5 = f(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const State k6 = f(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      if (!(std::abs(y1.w) < limit)) throw OutsideDisk{};
      k7 = f(y1);
      const State e = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      err = error_norm(e, y, y1, settings, track);
    } catch (const OutsideDisk&) {
      inside = false;
    }

    if (!inside) {
      if (++boundary_rejections > kMaxBoundaryRejections)
        throw BoundaryEscape("trajectory reached the boundary guard at t = " + std::to_string(now));
      h *= 0.25;
      continue;
    }
    boundary_rejections = 0;
    if (!std::isfinite(err)) {
      h *= kMinFactor;
      continue;
    }
    if (err > 1.0) {
      h *= std::max(kMinFactor, kSafety * std::pow(err, -0.2));
      continue;
    }

    now = last ? t : now + h;
    y = y1;
    k1 = k7;
    if (record) {
      record->times.push_back(now);
      record->points.push_back(y.w);
      if (record->derivs) record->derivs->push_back(y.d);
    }
    if (last) return {y.w, y.d};
    const double e = std::max(err, 1e-10);
    const double factor = kSafety * std::pow(e, -kAlpha) * std::pow(err_prev, kBeta);
    err_prev = e;
    h = std::min(settings.max_step, h * std::clamp(factor, kMinFactor, kMaxFactor));
  }
  throw StepFailure("step limit exceeded");
}

Complex integrate_flow(const Generator& g, Complex z0, double t, const ODESettings& settings) {
  return integrate_field(vector_field(g), z0, 0.0, t, settings).phi;
}

FlowWithDerivative integrate_flow_with_derivative(const Generator& g, Complex z0, double t,
                                                  const ODESettings& settings) {
  return integrate_field(vector_field(g), z0, 1.0, t, settings, nullptr);
}

Trajectory integrate_trajectory(const Generator& g, Complex z0, double t, bool with_derivative,
                                const ODESettings& settings) {
  Trajectory tr;
  if (with_derivative) tr.derivs.emplace();
  integrate_field(vector_field(g), z0, with_derivative ? Complex(1.0) : Complex(0.0), t, settings, &tr);
  return tr;
}

std::vector<double> default_radii() {
  std::vector<double> r;
  for (int k = 4; k <= 14; ++k) r.push_back(1.0 - std::ldexp(1.0, -k));
  return r;
}

double julia_quotient(Complex z, Complex phi, const BoundaryPoint& sigma) {
  const Complex s = sigma.value();
  return (1.0 - std::norm(z)) / std::norm(z - s) * (std::norm(phi - s) / (1.0 - std::norm(phi)));
}

BoundaryDerivativeEstimate estimate_boundary_derivative_detail(const std::function<Complex(Complex)>& flow,
                                                               const BoundaryPoint& sigma,
                                                               const std::vector<double>& radii, double target) {
  if (radii.size() < 3) throw DomainError("at least three radii are needed");
  BoundaryDerivativeEstimate est;
  est.radii = radii;
  for (double r : radii) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("radii must lie in (0, 1)");
    const Complex z = r * sigma.value();
    est.quotients.push_back(julia_quotient(z, flow(z), sigma));
  }
  for (std::size_t k = 1; k < radii.size(); ++k) {
    const double h0 = 1.0 - radii[k - 1];
    const double h1 = 1.0 - radii[k];
    est.extrapolated.push_back((h0 * est.quotients[k] - h1 * est.quotients[k - 1]) / (h0 - h1));
  }
  const double last = est.extrapolated.back();
  const double prev = est.extrapolated[est.extrapolated.size() - 2];
  if (!(std::abs(last - prev) <= 10.0 * target * std::abs(last)))
    throw ExtrapolationDivergence("Julia quotients are not converging: " + std::to_string(prev) + " vs " +
                                  std::to_string(last));
  est.value = last;
  return est;
}

double estimate_boundary_derivative(const Generator& g, const BoundaryPoint& sigma, double t,
                                    const ODESettings& settings, const std::vector<double>& radii, double target) {
  return estimate_boundary_derivative_detail([&](Complex z) { return integrate_flow(g, z, t, settings); }, sigma,
                                             radii, target)
      .value;
}

AttractionReport dw_attraction_check(const Generator& g, std::size_t samples, double t_max, std::uint64_t seed,
                                     const ODESettings& settings) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Complex tau = dw_point(g);
  AttractionReport rep;
  rep.all_attracted = true;
  for (std::size_t i = 0; i < samples; ++i) {
    const Complex z = std::polar(0.9 * std::sqrt(u(rng)), kTwoPi * u(rng));
    const Complex w = integrate_flow(g, z, t_max, settings);
    rep.starts.push_back(z);
    rep.initial_distance.push_back(std::abs(z - tau));
    rep.final_distance.push_back(std::abs(w - tau));
    rep.all_attracted = rep.all_attracted && rep.final_distance.back() < rep.initial_distance.back();
  }
  return rep;
}

} // namespace semigen
