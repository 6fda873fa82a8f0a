#include "semigen/extremals.hpp"

#include <cmath>
#include <numeric>

#include "semigen/error.hpp"

namespace semigen {

namespace {

constexpr double kNormalizationTolerance = 1e-12;

} // namespace

ExtremeCandidate::ExtremeCandidate(FixedPointConfig cfg, double b_, std::vector<FreeAtom> atoms)
    : config(std::move(cfg)), b(b_), free_atoms(std::move(atoms)) {
  if (free_atoms.size() + 1 > config.size())
    throw DomainError("an extreme candidate has at most n - 1 free atoms");
  for (const auto& a : free_atoms)
    if (!(a.mass >= 0.0)) throw DomainError("free atom masses must be nonnegative");
}

GeneratorSpec extreme_candidate_generator(const ExtremeCandidate& cand) {
  std::vector<AtomicHerglotz::Atom> atoms;
  atoms.reserve(cand.free_atoms.size());
  for (const auto& a : cand.free_atoms) atoms.push_back({a.point, a.mass});
  return {cand.config, AtomicHerglotz(std::move(atoms), cand.b)};
}

GeneratorSpec extreme_point_GenF(Complex tau, const std::vector<BoundaryPoint>& sigmas,
                                 const std::vector<double>& spectral_values, double b) {
  double total = 0.0;
  for (double l : spectral_values) total += std::abs(l);
  if (std::abs(total - 1.0) > kNormalizationTolerance)
    throw NormalizationError("spectral values of an extreme point of Gen_tau(F) must satisfy sum |lambda_k| = 1");
  return {FixedPointConfig(tau, sigmas, spectral_values), AtomicHerglotz::imaginary_constant(b)};
}

bool is_extreme_GenF(const GeneratorSpec& spec, double tol) {
  if (!spec.p.atoms().empty() || spec.p.offset() > 0.0) return false;
  double total = 0.0;
  for (double l : brfp_spectral_values(spec)) total += std::abs(l);
  return std::abs(total - 1.0) <= tol;
}

GeneratorSpec convex_combination_GenF(const GeneratorSpec& g1, const GeneratorSpec& g2, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("mixing weight must lie in [0, 1]");
  const auto& c1 = g1.config;
  const auto& c2 = g2.config;
  if (std::abs(c1.tau() - c2.tau()) > 1e-12 || c1.size() != c2.size())
    throw DomainError("convex combination needs a common tau and F");
  for (std::size_t k = 0; k < c1.size(); ++k)
    if (!c1.sigmas()[k].same_as(c2.sigmas()[k])) throw DomainError("convex combination needs a common F");
  const auto l1 = brfp_spectral_values(g1);
  const auto l2 = brfp_spectral_values(g2);
  std::vector<double> mixed(l1.size());
  for (std::size_t k = 0; k < l1.size(); ++k) mixed[k] = (1.0 - t) * l1[k] + t * l2[k];
  const BerksonPortaSpec b1 = to_berkson_porta(g1);
  const BerksonPortaSpec b2 = to_berkson_porta(g2);
  const BerksonPortaSpec mix{c1.tau(), b1.pstar.scaled(1.0 - t) + b2.pstar.scaled(t)};
  return from_berkson_porta(mix, c1.sigmas(), mixed);
}

Complex gk_generator(Complex tau, const BoundaryPoint& sigma, double lambda, const std::vector<WeightedPoint>& mu,
                     Complex z) {
  if (!(std::abs(z) < 1.0)) throw DomainError("gk_generator needs |z| < 1");
  if (!(lambda < 0.0)) throw DomainError("gk_generator needs lambda < 0");
  const Complex s = sigma.value();
  const double dist2 = std::norm(s - tau);
  if (!(dist2 > 0.0)) throw DomainError("gk_generator needs tau != sigma");
  double total = 0.0;
  for (const auto& w : mu) {
    if (!(w.weight >= 0.0)) throw WeightError("weights must be nonnegative");
    total += w.weight;
  }
  if (mu.empty() || std::abs(total - 1.0) > kNormalizationTolerance) throw WeightError("weights must sum to 1");
  const Complex u = std::conj(s) * z;
  Complex sum(0.0);
  for (const auto& w : mu) {
    const Complex k = w.kappa.value();
    sum += w.weight * (1.0 - k) / (1.0 - k * u);
  }
  return (-lambda / dist2) * (tau - z) * (1.0 - std::conj(tau) * z) * (1.0 - u) * sum;
}

BoundaryPoint gk_kappa(Complex tau, const BoundaryPoint& sigma, double lambda, double b) {
  const double y = 2.0 * b * std::abs(lambda) / std::norm(sigma.value() - tau);
  const Complex iy(0.0, y);
  return BoundaryPoint::from_complex((iy - 1.0) / (iy + 1.0));
}

} // namespace semigen
