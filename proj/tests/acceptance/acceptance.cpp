#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "../oracles.hpp"
#include "../region_checks.hpp"
#include "semigen/error.hpp"
#include "semigen/herglotz.hpp"
#include "semigen/loewner_cp.hpp"
#include "semigen/sampling.hpp"
#include "semigen/semiflow.hpp"
#include "semigen/value_regions.hpp"

using namespace semigen;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Outcome representation_round_trip() {
  std::mt19937_64 rng(101);
  const Regime regimes[] = {Regime::Interior, Regime::Origin, Regime::BoundaryHyperbolic, Regime::BoundaryParabolic};
  double worst = 0.0;
  std::size_t with_atom = 0, without_atom = 0;
  for (int i = 0; i < 1000; ++i) {
    const GeneratorSpec spec = random_spec(rng, regimes[i % 4]);
    const auto& c = spec.config;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double lam = std::abs(c.lambdas()[k]);
      const double alpha = std::norm(c.tau() - c.sigmas()[k].value()) / (2.0 * lam);
      const double m = spec.p.mass_at(c.sigmas()[k]);
      const double expected = m > 0.0 ? -lam / (1.0 + m / alpha) : -lam;
      (m > 0.0 ? with_atom : without_atom)++;
      worst = std::max(worst, std::abs(brfp_spectral_value(spec, k) - expected));
    }
  }
  return {worst <= 1e-12 && with_atom > 0 && without_atom > 0,
          "max err " + fmt(worst) + ", " + std::to_string(with_atom) + " atom / " + std::to_string(without_atom) +
              " plain points"};
}

Outcome reciprocal_involution() {
  std::mt19937_64 rng(202);
  double worst_mass = 0.0, worst_product = 0.0;
  std::size_t failures = 0;
  for (int t = 0; t < 200; ++t) {
    const int m = 1 + t % 6;
    std::vector<AtomicHerglotz::Atom> atoms;
    for (int j = 0; j < m; ++j) atoms.push_back({BoundaryPoint(uniform(rng, 0.0, kTwoPi)), std::exp(uniform(rng, -3.0, 1.0))});
    const RationalHerglotz p(AtomicHerglotz(std::move(atoms), uniform(rng, -5.0, 5.0)));
    try {
      const RationalHerglotz q = reciprocal(p);
      const RationalHerglotz pp = reciprocal(q);
      if (pp.degree() != p.degree()) ++failures;
      worst_mass = std::max(worst_mass, std::abs(pp.function().gamma() - p.function().gamma()));
      for (const auto& a : p.function().atoms())
        worst_mass = std::max(worst_mass, std::abs(pp.function().mass_at(a.point) - a.mass));
      for (int i = 0; i < 20; ++i) {
        const Complex z = oracle::random_in_disk(rng, 0.99);
        worst_product = std::max(worst_product, std::abs(eval_herglotz(p.function(), z) * eval_herglotz(q.function(), z) - 1.0));
      }
    } catch (const Error&) {
      ++failures;
    }
  }
  return {failures == 0 && worst_mass <= 1e-9 && worst_product <= 1e-9,
          "round-trip err " + fmt(worst_mass) + ", |p/p - 1| " + fmt(worst_product) + ", failures " +
              std::to_string(failures)};
}

Outcome regions_contain_and_are_sharp() {
  std::ostringstream detail;
  bool ok = true;
  std::uint64_t seed = 303;
  for (Regime r : {Regime::Interior, Regime::Origin, Regime::BoundaryHyperbolic, Regime::BoundaryParabolic}) {
    const auto c = checks::containment(r, 10000, seed++, 1e-9);
    const auto s = checks::sharpness(r, 10000, seed++);
    const bool good = c.samples == 10000 && c.violations == 0 && s.off_boundary == 0 && s.not_strictly_inside == 0 &&
                      s.uniqueness_failures == 0;
    ok = ok && good;
    detail << regime_name(r) << ": " << c.violations << " violations, boundary err " << fmt(s.worst_boundary) << ", "
           << s.off_boundary << " off boundary, " << s.not_strictly_inside << " perturbations not inside, "
           << s.uniqueness_failures << " non-unique; ";
  }
  return {ok, detail.str()};
}

Outcome spectral_value_disk() {
  const FixedPointConfig c(Complex(0.3, 0.1), {BoundaryPoint(0.0)}, {-1.0});
  const double attained = dw_spectral_value(lambda_range(c).extremal).real();
  const double r = c.harmonic_radius();
  bool ok = std::abs(attained - 2.0) <= 1e-10 && std::abs(2.0 * r - 2.0) <= 1e-10;

  std::mt19937_64 rng(404);
  double worst = -1e300;
  for (int i = 0; i < 1000; ++i) {
    const GeneratorSpec spec = random_spec(rng, i % 2 ? Regime::Interior : Regime::Origin);
    worst = std::max(worst, dw_spectral_value(spec).real() - 2.0 * spec.config.harmonic_radius());
  }
  ok = ok && worst <= 1e-10;

  const FixedPointConfig b(1.0, {BoundaryPoint(M_PI)}, {-1.0});
  const double bmax = dw_spectral_value(lambda_range(b).extremal).real();
  double bworst = -1e300;
  for (int i = 0; i < 1000; ++i) {
    AtomicHerglotz p = random_herglotz(rng, b);
    if (i % 2) p = p.with_gamma(-contact_value(p.with_gamma(0.0), b.tau_point()).imag() - b.cap_b());
    bworst = std::max(bworst, dw_spectral_value(GeneratorSpec{b, p}).real() - 1.0);
  }
  ok = ok && std::abs(bmax - 1.0) <= 1e-10 && bworst <= 1e-10;
  return {ok, "interior max " + fmt(attained) + ", random excess " + fmt(worst) + ", boundary max " + fmt(bmax) +
                  ", boundary excess " + fmt(bworst)};
}

double koenigs_oracle(double z, double t) {
  const double rhs = std::exp(-4.0 * t) * z / ((1.0 - z) * (1.0 - z));
  return oracle::bisect([rhs](double w) { return w / ((1.0 - w) * (1.0 - w)) - rhs; }, 0.0, z, 1e-15);
}

Outcome semiflow_closed_form() {
  const Generator g = GeneratorSpec{FixedPointConfig(0.0, {BoundaryPoint(0.0)}, {-2.0}), AtomicHerglotz()};
  const double flow_err = std::abs(integrate_flow(g, 0.5, 0.1) - koenigs_oracle(0.5, 0.1));
  double deriv_err = 0.0;
  for (double t : {0.1, 0.25, 0.5, 1.0})
    deriv_err = std::max(deriv_err, std::abs(integrate_flow_with_derivative(g, 0.0, t).dphi - std::exp(-4.0 * t)));
  const double julia = estimate_boundary_derivative(g, BoundaryPoint(0.0), 0.5);
  const double julia_rel = std::abs(julia - std::exp(1.0)) / std::exp(1.0);
  return {flow_err <= 1e-8 && deriv_err <= 1e-8 && julia_rel <= 1e-3,
          "flow err " + fmt(flow_err) + ", derivative err " + fmt(deriv_err) + ", Julia rel err " + fmt(julia_rel)};
}

Outcome cowen_pommerenke() {
  const CPTarget e1({std::exp(1.0)});
  const double r1 = cp_radius(e1);
  const PiecewiseField ext = cp_extremal_field(0.0, {BoundaryPoint(0.0)}, e1, 0.0);
  const CPResult res = cp_experiment(0.0, {BoundaryPoint(0.0)}, e1, ext);
  const double ode = std::abs(-std::log(evolve_with_derivative(ext, 0.0).dphi) - 2.0);
  bool ok = std::abs(r1 - 1.0) <= 1e-12 && std::abs(res.point - 2.0) <= 1e-10 && ode <= 1e-6;

  const CPTarget ee({std::exp(1.0), std::exp(1.0)});
  std::mt19937_64 rng(606);
  double worst = 1e300;
  std::size_t outside = 0;
  for (int i = 0; i < 500; ++i) {
    const Complex tau = oracle::random_in_disk(rng, 0.95);
    const BoundaryPoint s1(uniform(rng, 0.0, kTwoPi));
    const BoundaryPoint s2(s1.theta() + uniform(rng, 0.1, kTwoPi - 0.1));
    const std::vector<BoundaryPoint> sigmas{s1, s2};
    const CPResult r = cp_experiment(tau, sigmas, ee, random_admissible_field(rng, tau, sigmas, ee));
    worst = std::min(worst, r.slack);
    if (!(r.slack >= -1e-8) || r.point == Complex(0.0)) ++outside;
  }
  ok = ok && outside == 0;

  const std::vector<BoundaryPoint> sigmas{BoundaryPoint(2.0), BoundaryPoint(-1.0)};
  const Complex tau = BoundaryPoint(0.4).value();
  const CPResult b = cp_experiment(tau, sigmas, ee, cp_extremal_field(tau, sigmas, ee, 0.0));
  const double b_err = std::abs(b.point - cp_radius(ee));
  ok = ok && b_err <= 1e-6;
  return {ok, "r(e) " + fmt(r1) + ", extremal " + fmt(res.point.real()) + ", ODE err " + fmt(ode) + ", min slack " +
                  fmt(worst) + ", boundary err " + fmt(b_err)};
}

Outcome derivative_budget() {
  std::mt19937_64 rng(707);
  double worst_sum = 0.0, worst_julia = 0.0;
  std::size_t unnormalized = 0;
  for (int i = 0; i < 40; ++i) {
    const int n = 1 + i % 3;
    std::vector<BoundaryPoint> sigmas;
    std::vector<double> a;
    const double base = uniform(rng, 0.0, kTwoPi);
    for (int k = 0; k < n; ++k) {
      sigmas.emplace_back(base + kTwoPi * k / n + uniform(rng, 0.0, 1.0));
      a.push_back(std::exp(uniform(rng, 0.1, 1.5)));
    }
    const CPTarget target(a);
    const Complex tau = i % 4 == 3 ? BoundaryPoint(base - 0.7).value() : oracle::random_in_disk(rng, 0.9);
    const PiecewiseField field = random_admissible_field(rng, tau, sigmas, target);
    if (!field.is_normalized()) ++unnormalized;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += boundary_log_derivative(field, k);
    worst_sum = std::max(worst_sum, std::abs(sum - field.total_duration()));
    for (int k = 0; k < n; ++k) {
      const auto est = estimate_boundary_derivative_detail([&](Complex z) { return evolve(field, z); }, sigmas[k]);
      const double expected = std::exp(boundary_log_derivative(field, k));
      worst_julia = std::max(worst_julia, std::abs(est.value - expected) / expected);
    }
  }
  return {unnormalized == 0 && worst_sum <= 1e-9 && worst_julia <= 1e-3,
          "sum err " + fmt(worst_sum) + ", Julia rel err " + fmt(worst_julia)};
}

// Two-atom Caratheodory measures w K_{s1} + (1 - w) K_{s2} with contact value ia at tau.
// Im K_s(tau) = cot((theta_tau - theta_s)/2) parametrizes s by a real number.
Outcome caratheodory_minimum() {
  const BoundaryPoint tau(0.9);
  const std::size_t grid = 200, weights = 50;
  auto k_of = [&](const BoundaryPoint& s) { return 1.0 / std::tan(0.5 * (tau.theta() - s.theta())); };
  auto point_of = [&](double k) { return BoundaryPoint(tau.theta() - 2.0 * std::atan2(1.0, k)); };
  auto q_sharp = [&](const BoundaryPoint& s) { return 2.0 / std::norm(s.value() - tau.value()); };

  std::ostringstream detail;
  bool ok = true;
  for (double a : {0.0, 1.0, -2.0}) {
    double best = 1e300;
    BoundaryPoint best_s;
    AtomicHerglotz best_q;
    auto consider = [&](const BoundaryPoint& s1, const BoundaryPoint& s2, double w) {
      const double v = w * q_sharp(s1) + (1.0 - w) * q_sharp(s2);
      if (v < best) {
        best = v;
        best_s = w >= 0.5 ? s1 : s2;
        best_q = AtomicHerglotz({{s1, w}, {s2, 1.0 - w}});
      }
    };
    for (std::size_t i = 0; i < grid; ++i) {
      const BoundaryPoint s1(kTwoPi * (i + 0.5) / grid);
      if (s1.same_as(tau, 1e-9)) continue;
      const double k1 = k_of(s1);
      for (std::size_t j = 0; j < grid; ++j) {
        const BoundaryPoint s2(kTwoPi * (j + 0.5) / grid);
        const double k2 = k_of(s2);
        if (s2.same_as(tau, 1e-9) || std::abs(k1 - k2) < 1e-14) continue;
        const double w = (a - k2) / (k1 - k2);
        if (w >= 0.0 && w <= 1.0) consider(s1, s2, w);
      }
      for (std::size_t m = 1; m <= weights; ++m) {
        const double w = static_cast<double>(m) / (weights + 1);
        consider(s1, point_of((a - w * k1) / (1.0 - w)), w);
      }
    }
    const auto exact = caratheodory_min_sharp(tau, a);
    const double err = std::abs(best - (1.0 + a * a) / 2.0);
    const double angle = std::abs(best_s.angle_to(exact.sigma));
    const double contact_err = std::abs(contact_value(best_q, tau) - Complex(0.0, a));
    const bool good = err <= 1e-4 && angle <= kTwoPi / grid && contact_err <= 1e-9 &&
                      std::abs(exact.value - (1.0 + a * a) / 2.0) <= 1e-12;
    ok = ok && good;
    detail << "a=" << a << ": min err " << fmt(err) << ", angle err " << fmt(angle) << "; ";
  }
  return {ok, detail.str()};
}

Outcome concavity_toolkit() {
  std::mt19937_64 rng(909);
  std::size_t failures = 0;
  double max_eig = -1e300, max_det = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::vector<double> x(2 + i % 5);
    for (double& v : x) v = std::exp(uniform(rng, -2.0, 2.0));
    const auto rep = q_concavity_check(x, 100, 1000 + i);
    if (!rep.pass) ++failures;
    max_eig = std::max(max_eig, rep.max_eigenvalue);
    max_det = std::max(max_det, std::abs(rep.determinant) / rep.determinant_scale);
  }
  return {failures == 0 && max_eig <= 1e-9,
          "max eigenvalue " + fmt(max_eig) + ", max |det|/scale " + fmt(max_det) + ", failures " + std::to_string(failures)};
}

Outcome counterexample() {
  double prev = 1e300;
  bool decreasing = true;
  double last = 0.0;
  for (int k = 1; k <= 6; ++k) {
    last = counterexample_P(std::pow(10.0, -k));
    decreasing = decreasing && last < prev;
    prev = last;
  }
  double worst = 0.0;
  for (int k = 1; k <= 4; ++k) {
    const double delta = std::exp(-std::exp(static_cast<double>(k)));
    worst = std::max(worst, std::abs(counterexample_divergence(delta) - std::log(std::log(1.0 / delta))));
  }
  const double at4 = counterexample_divergence(std::exp(-std::exp(4.0)));
  const double beyond = counterexample_divergence(0.5 * std::exp(-std::exp(4.0)));
  const bool ok = decreasing && last < 0.2 && worst <= 1e-9 && at4 >= 4.0 - 1e-9 && beyond > 4.0;
  return {ok, "P(1e-6) " + fmt(last) + ", divergence err " + fmt(worst) + ", value at e^-e^4 " + fmt(at4) +
                  ", at half that delta " + fmt(beyond)};
}

} // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"representation round-trip", representation_round_trip},
      {"reciprocal involution", reciprocal_involution},
      {"value-region containment and sharpness", regions_contain_and_are_sharp},
      {"spectral-value disk", spectral_value_disk},
      {"semiflow vs closed form", semiflow_closed_form},
      {"Cowen-Pommerenke", cowen_pommerenke},
      {"derivative-budget identity", derivative_budget},
      {"Caratheodory minimum", caratheodory_minimum},
      {"concavity toolkit", concavity_toolkit},
      {"counterexample", counterexample},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failed;
    std::printf("%s %d %s: %s [%.2fs]\n", out.pass ? "PASS" : "FAIL", index++, name, out.detail.c_str(), secs);
  }
  return failed == 0 ? 0 : 1;
}
