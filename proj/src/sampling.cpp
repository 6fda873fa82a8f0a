#include "semigen/sampling.hpp"

#include <cmath>
#include <thread>
#include <vector>

namespace semigen {

namespace {

constexpr double kMinSeparation = 1e-3;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool far_from(const std::vector<BoundaryPoint>& pts, const BoundaryPoint& s, Complex tau) {
  if (std::abs(s.value() - tau) < kMinSeparation) return false;
  for (const auto& q : pts)
    if (std::abs(q.value() - s.value()) < kMinSeparation) return false;
  return true;
}

} // namespace

std::string regime_name(Regime r) {
  switch (r) {
  case Regime::Interior:
    return "interior";
  case Regime::Origin:
    return "origin";
  case Regime::BoundaryHyperbolic:
    return "boundary-hyperbolic";
  case Regime::BoundaryParabolic:
    return "boundary-parabolic";
  }
  return "unknown";
}

FixedPointConfig random_config(std::mt19937_64& rng, Regime regime) {
  Complex tau(0.0);
  switch (regime) {
  case Regime::Interior: {
    const double r = std::sqrt(uniform(rng, 0.0, 1.0));
    tau = std::polar(std::min(r, 0.999), uniform(rng, 0.0, kTwoPi));
    break;
  }
  case Regime::Origin:
    break;
  case Regime::BoundaryHyperbolic:
  case Regime::BoundaryParabolic:
    tau = BoundaryPoint(uniform(rng, 0.0, kTwoPi)).value();
    break;
  }
  const int n = std::uniform_int_distribution<int>(1, 4)(rng);
  std::vector<BoundaryPoint> sigmas;
  std::vector<double> lambdas;
  while (static_cast<int>(sigmas.size()) < n) {
    BoundaryPoint s(uniform(rng, 0.0, kTwoPi));
    if (!far_from(sigmas, s, tau)) continue;
    sigmas.push_back(s);
    lambdas.push_back(-std::exp(uniform(rng, -2.0, 2.0)));
  }
  return FixedPointConfig(tau, std::move(sigmas), std::move(lambdas));
}

AtomicHerglotz random_herglotz(std::mt19937_64& rng, const FixedPointConfig& config, int max_atoms) {
  const int m = std::uniform_int_distribution<int>(0, max_atoms)(rng);
  std::vector<AtomicHerglotz::Atom> atoms;
  for (int j = 0; j < m; ++j) {
    BoundaryPoint s(uniform(rng, 0.0, kTwoPi));
    if (uniform(rng, 0.0, 1.0) < 1.0 / 3.0) {
      s = config.sigmas()[std::uniform_int_distribution<std::size_t>(0, config.size() - 1)(rng)];
    } else if (config.is_boundary() && std::abs(s.value() - config.tau()) < kMinSeparation) {
      continue;
    }
    atoms.push_back({s, std::exp(uniform(rng, -3.0, 1.0))});
  }
  return AtomicHerglotz(std::move(atoms), uniform(rng, -5.0, 5.0));
}

GeneratorSpec random_spec(std::mt19937_64& rng, Regime regime) {
  FixedPointConfig config = random_config(rng, regime);
  AtomicHerglotz p = random_herglotz(rng, config);
  if (regime == Regime::BoundaryHyperbolic && uniform(rng, 0.0, 1.0) < 0.75) {
    const Complex cv = contact_value(p.with_gamma(0.0), config.tau_point());
    p = p.with_gamma(-cv.imag() - config.cap_b());
  }
  if (regime == Regime::BoundaryParabolic && uniform(rng, 0.0, 1.0) < 0.5) {
    p = p.with_atom(config.tau_point(), std::exp(uniform(rng, -3.0, 1.0)));
  }
  return {config, p};
}

void run_sharded(std::uint64_t seed, std::size_t total, std::size_t shards,
                 const std::function<void(std::size_t, std::mt19937_64&, std::size_t)>& body) {
  if (shards == 0) shards = 1;
  std::vector<std::thread> workers;
  workers.reserve(shards);
  for (std::size_t s = 0; s < shards; ++s) {
    const std::size_t count = total / shards + (s < total % shards ? 1 : 0);
    workers.emplace_back([&body, seed, s, count] {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(s)};
      std::mt19937_64 rng(seq);
      body(s, rng, count);
    });
  }
  for (auto& w : workers) w.join();
}

} // namespace semigen
