#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "semigen/error.hpp"
#include "semigen/sampling.hpp"
#include "semigen/semiflow.hpp"

using namespace semigen;

namespace {

Generator minus_z() { return BerksonPortaSpec{0.0, AtomicHerglotz({}, 0.0, 1.0)}; }

GeneratorSpec koenigs_spec() { return {FixedPointConfig(0.0, {BoundaryPoint(0.0)}, {-2.0}), AtomicHerglotz()}; }

// w/(1 - w)^2 = e^{-4t} z/(1 - z)^2 on (0, 1), solved by bisection.
double koenigs_oracle(double z, double t) {
  const double rhs = std::exp(-4.0 * t) * z / ((1.0 - z) * (1.0 - z));
  return oracle::bisect([rhs](double w) { return w / ((1.0 - w) * (1.0 - w)) - rhs; }, 0.0, z, 1e-15);
}

} // namespace

TEST_CASE("linear flow") {
  CHECK(std::abs(integrate_flow(minus_z(), 0.3, 0.5) - 0.3 * std::exp(-0.5)) < 1e-12);
  const auto fd = integrate_flow_with_derivative(minus_z(), Complex(0.2, -0.4), 1.3);
  CHECK(std::abs(fd.dphi - std::exp(-1.3)) < 1e-12);
  CHECK(integrate_flow(minus_z(), Complex(0.1, 0.7), 0.0) == Complex(0.1, 0.7));
}

TEST_CASE("flow against the Koenigs-type oracle") {
  const Generator g = koenigs_spec();
  const double w = koenigs_oracle(0.5, 0.1);
  CHECK(w == doctest::Approx(0.43227).epsilon(1e-4));
  CHECK(std::abs(integrate_flow(g, 0.5, 0.1) - w) < 1e-8);
  for (double z : {0.1, 0.7, 0.95}) {
    for (double t : {0.05, 0.3, 1.0}) CHECK(std::abs(integrate_flow(g, z, t) - koenigs_oracle(z, t)) < 1e-8);
  }
  const auto fd = integrate_flow_with_derivative(g, 0.0, 0.25);
  CHECK(std::abs(fd.dphi - std::exp(-1.0)) < 1e-8);
  CHECK(std::abs(fd.phi) < 1e-15);
}

TEST_CASE("chain rule and semigroup property") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const Generator g = random_spec(rng, static_cast<Regime>(trial % 4));
    const Complex z = oracle::random_in_disk(rng, 0.9);
    const double s = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double t = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const auto a = integrate_flow_with_derivative(g, z, s);
    const auto b = integrate_flow_with_derivative(g, a.phi, t);
    const auto c = integrate_flow_with_derivative(g, z, s + t);
    CHECK(std::abs(b.phi - c.phi) < 1e-8);
    CHECK(std::abs(b.dphi * a.dphi - c.dphi) < 1e-8 * std::max(1.0, std::abs(c.dphi)));
  }
}

TEST_CASE("variational derivative matches finite differences") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 20; ++trial) {
    const Generator g = random_spec(rng, static_cast<Regime>(trial % 4));
    const Complex z = oracle::random_in_disk(rng, 0.85);
    const double t = 0.5;
    const auto fd = integrate_flow_with_derivative(g, z, t);
    const Complex num = oracle::central_difference([&](Complex w) { return integrate_flow(g, w, t); }, z, 1e-6);
    CHECK(std::abs(fd.dphi - num) <= 1e-5 * std::abs(fd.dphi));
  }
}

TEST_CASE("interior derivative equals exp(-lambda t)") {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 20; ++trial) {
    const auto spec = random_spec(rng, trial % 2 ? Regime::Interior : Regime::Origin);
    const double t = 0.4;
    const auto fd = integrate_flow_with_derivative(spec, spec.config.tau(), t);
    const Complex expect = std::exp(-dw_spectral_value(spec) * t);
    CHECK(std::abs(fd.dphi - expect) < 1e-8);
    CHECK(std::abs(fd.phi - spec.config.tau()) < 1e-12);
  }
}

TEST_CASE("trajectories stay inside the disk") {
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 20; ++trial) {
    const Generator g = random_spec(rng, static_cast<Regime>(trial % 4));
    const auto tr = integrate_trajectory(g, oracle::random_in_disk(rng, 0.99), 2.0, true);
    REQUIRE(tr.derivs.has_value());
    CHECK(tr.points.size() == tr.derivs->size());
    double maxabs = 0.0;
    for (const auto& p : tr.points) maxabs = std::max(maxabs, std::abs(p));
    CHECK(maxabs < 1.0);
    for (std::size_t i = 1; i < tr.times.size(); ++i) CHECK(tr.times[i] > tr.times[i - 1]);
    CHECK(tr.times.back() == 2.0);
  }
}

TEST_CASE("boundary derivative via Julia quotients") {
  const Generator g = koenigs_spec();
  const double e1 = estimate_boundary_derivative(g, BoundaryPoint(0.0), 0.5);
  CHECK(std::abs(e1 / std::exp(1.0) - 1.0) < 1e-3);

  const GeneratorSpec heavy{FixedPointConfig(0.0, {BoundaryPoint(0.0)}, {-2.0}),
                            AtomicHerglotz::single_atom(BoundaryPoint(0.0), 0.25)};
  CHECK(brfp_spectral_value(heavy, 0) == doctest::Approx(-1.0));
  const double e2 = estimate_boundary_derivative(heavy, BoundaryPoint(0.0), 0.5);
  CHECK(std::abs(e2 / std::exp(0.5) - 1.0) < 1e-3);

  const auto detail = estimate_boundary_derivative_detail(
      [&](Complex z) { return integrate_flow(g, z, 0.5); }, BoundaryPoint(0.0), default_radii());
  for (std::size_t k = 1; k < detail.quotients.size(); ++k)
    CHECK(detail.quotients[k] >= detail.quotients[k - 1] - 1e-9);

  std::mt19937_64 rng(65);
  for (int trial = 0; trial < 8; ++trial) {
    const auto spec = random_spec(rng, trial % 2 ? Regime::Interior : Regime::Origin);
    for (std::size_t k = 0; k < spec.config.size(); ++k) {
      const double t = 0.1;
      const double expect = std::exp(-brfp_spectral_value(spec, k) * t);
      const auto d = estimate_boundary_derivative_detail(
          [&](Complex z) { return integrate_flow(spec, z, t); }, spec.config.sigmas()[k], default_radii());
      CHECK(std::abs(d.value / expect - 1.0) < 1e-3);
      for (std::size_t i = 1; i < d.quotients.size(); ++i) CHECK(d.quotients[i] >= d.quotients[i - 1] - 1e-9);
    }
  }
}

TEST_CASE("Julia extrapolation rejects divergent data") {
  auto bad = [](Complex z) { return z * (1.0 + 0.5 * std::sin(40.0 / (1.0 - std::abs(z)))); };
  CHECK_THROWS_AS(estimate_boundary_derivative_detail(bad, BoundaryPoint(0.0), default_radii()),
                  ExtrapolationDivergence);
}

TEST_CASE("Denjoy-Wolff attraction") {
  const auto a = dw_attraction_check(minus_z(), 10, 3.0);
  CHECK(a.all_attracted);
  CHECK(dw_attraction_check(koenigs_spec(), 10, 3.0).all_attracted);
  const GeneratorSpec hyper{FixedPointConfig(1.0, {BoundaryPoint(M_PI)}, {-1.0}), AtomicHerglotz()};
  CHECK(dw_spectral_value(hyper).real() == doctest::Approx(1.0));
  const auto h = dw_attraction_check(hyper, 10, 3.0);
  CHECK(h.all_attracted);
  CHECK(h.final_distance.size() == 10);
}

TEST_CASE("settings and domain errors") {
  ODESettings bad;
  bad.rel_tol = -1.0;
  CHECK_THROWS_AS(integrate_flow(minus_z(), 0.1, 1.0, bad), ConfigError);
  CHECK_THROWS_AS(integrate_flow(minus_z(), 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(integrate_flow(minus_z(), 0.1, -1.0), DomainError);
  // an outward field leaves the disk in finite time
  const VectorField out{[](Complex z) { return z; }, [](Complex) { return Complex(1.0); }};
  CHECK_THROWS_AS(integrate_field(out, 0.5, 0.0, 2.0, {}), BoundaryEscape);
}
