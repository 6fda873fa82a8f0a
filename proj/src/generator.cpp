#include "semigen/generator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "semigen/error.hpp"

namespace semigen {

namespace {

constexpr double kCircleSnap = 1e-12;
// Relative tolerance for "the boundary value of p + p0 vanishes at tau".
constexpr double kContactVanishTolerance = 1e-10;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Complex bp_factor(Complex tau, Complex z) { return (tau - z) * (1.0 - std::conj(tau) * z); }
Complex bp_factor_d1(Complex tau, Complex z) { return -1.0 - std::norm(tau) + 2.0 * std::conj(tau) * z; }
Complex bp_factor_d2(Complex tau) { return 2.0 * std::conj(tau); }

} // namespace

FixedPointConfig::FixedPointConfig(Complex tau, std::vector<BoundaryPoint> sigmas, std::vector<double> lambdas)
    : tau_(tau), sigmas_(std::move(sigmas)), lambdas_(std::move(lambdas)) {
  if (!std::isfinite(tau.real()) || !std::isfinite(tau.imag())) throw DomainError("tau must be finite");
  const double modulus = std::abs(tau_);
  if (modulus > 1.0 + kCircleSnap) throw DomainError("tau must lie in the closed unit disk");
  if (modulus >= 1.0 - kCircleSnap) {
    tau_ = tau_ / modulus;
    boundary_ = true;
  }
  if (sigmas_.empty()) throw DomainError("at least one boundary fixed point is required");
  if (sigmas_.size() != lambdas_.size()) throw DomainError("sigmas and lambdas differ in length");
  for (std::size_t i = 0; i < sigmas_.size(); ++i) {
    for (std::size_t j = i + 1; j < sigmas_.size(); ++j)
      if (sigmas_[i].same_as(sigmas_[j])) throw DomainError("boundary fixed points must be distinct");
  }
  alphas_.reserve(sigmas_.size());
  for (std::size_t k = 0; k < sigmas_.size(); ++k) {
    const double lam = lambdas_[k];
    if (!(lam < 0.0) || !std::isfinite(lam)) throw DomainError("spectral bounds lambda_k must be negative");
    const Complex s = sigmas_[k].value();
    const double dist2 = std::norm(tau_ - s);
    if (!(dist2 > kCircleSnap * kCircleSnap)) throw DomainError("tau coincides with a boundary fixed point");
    const double alpha = dist2 / (2.0 * -lam);
    alphas_.push_back(alpha);
    cap_a_ += alpha;
    cap_b_ += (std::conj(s) * tau_).imag() / -lam;
    sum_inv_lambda_ += 1.0 / -lam;
  }
}

BoundaryPoint FixedPointConfig::tau_point() const {
  if (!boundary_) throw DomainError("tau is not on the unit circle");
  return BoundaryPoint::from_complex(tau_);
}

AtomicHerglotz FixedPointConfig::p0() const {
  std::vector<AtomicHerglotz::Atom> atoms;
  atoms.reserve(sigmas_.size());
  for (std::size_t k = 0; k < sigmas_.size(); ++k) atoms.push_back({sigmas_[k], alphas_[k]});
  return AtomicHerglotz(std::move(atoms));
}

FixedPointConfig FixedPointConfig::with_lambdas(std::vector<double> lambdas) const {
  return FixedPointConfig(tau_, sigmas_, std::move(lambdas));
}

Complex eval_p0(const FixedPointConfig& config, Complex z) {
  if (!(std::abs(z) < 1.0)) throw DomainError("eval_p0 needs |z| < 1");
  Complex sum(0.0);
  for (std::size_t k = 0; k < config.size(); ++k) sum += config.alphas()[k] * kernel(config.sigmas()[k], z);
  return sum;
}

AtomicHerglotz denominator(const GeneratorSpec& spec) { return spec.p + spec.config.p0(); }

Complex eval_generator(const GeneratorSpec& spec, Complex z) {
  const Complex d = eval_herglotz(spec.p, z) + eval_p0(spec.config, z);
  return bp_factor(spec.config.tau(), z) / d;
}

Complex eval_generator_derivative(const GeneratorSpec& spec, Complex z) {
  const AtomicHerglotz den = denominator(spec);
  const Complex d = eval_herglotz(den, z);
  const Complex d1 = eval_herglotz_derivative(den, z);
  const Complex tau = spec.config.tau();
  return (bp_factor_d1(tau, z) * d - bp_factor(tau, z) * d1) / (d * d);
}

Complex eval_generator_second_derivative(const GeneratorSpec& spec, Complex z) {
  const AtomicHerglotz den = denominator(spec);
  const Complex d = eval_herglotz(den, z);
  const Complex d1 = eval_herglotz_derivative(den, z);
  const Complex d2 = eval_herglotz_second_derivative(den, z);
  const Complex tau = spec.config.tau();
  const Complex n = bp_factor(tau, z);
  const Complex n1 = bp_factor_d1(tau, z);
  const Complex n2 = bp_factor_d2(tau);
  return (n2 * d - n * d2) / (d * d) - 2.0 * d1 * (n1 * d - n * d1) / (d * d * d);
}

Complex eval_generator(const BerksonPortaSpec& spec, Complex z) {
  return bp_factor(spec.tau, z) * eval_herglotz(spec.pstar, z);
}

Complex eval_generator_derivative(const BerksonPortaSpec& spec, Complex z) {
  return bp_factor_d1(spec.tau, z) * eval_herglotz(spec.pstar, z) +
         bp_factor(spec.tau, z) * eval_herglotz_derivative(spec.pstar, z);
}

Complex eval_generator(const Generator& g, Complex z) {
  return std::visit(Overloaded{[z](const TrivialGenerator&) -> Complex {
                                 if (!(std::abs(z) < 1.0)) throw DomainError("generator evaluated outside the disk");
                                 return Complex(0.0);
                               },
                               [z](const auto& spec) -> Complex { return eval_generator(spec, z); }},
                    g);
}

Complex eval_generator_derivative(const Generator& g, Complex z) {
  return std::visit(Overloaded{[z](const TrivialGenerator&) -> Complex {
                                 if (!(std::abs(z) < 1.0)) throw DomainError("generator evaluated outside the disk");
                                 return Complex(0.0);
                               },
                               [z](const auto& spec) -> Complex { return eval_generator_derivative(spec, z); }},
                    g);
}

Complex dw_point(const Generator& g) {
  return std::visit(Overloaded{[](const GeneratorSpec& s) { return s.config.tau(); },
                               [](const BerksonPortaSpec& s) { return s.tau; },
                               [](const TrivialGenerator& s) { return s.tau; }},
                    g);
}

Complex dw_spectral_value(const GeneratorSpec& spec) {
  const FixedPointConfig& cfg = spec.config;
  const Complex tau = cfg.tau();
  if (!cfg.is_boundary()) {
    const Complex d = eval_herglotz(spec.p, tau) + eval_p0(cfg, tau);
    return (1.0 - std::norm(tau)) / d;
  }
  const BoundaryPoint tp = cfg.tau_point();
  if (spec.p.offset() > 0.0 || spec.p.has_atom_at(tp)) return 0.0;
  // Boundary value of p0 at tau is i*B.
  const Complex limit = contact_value(spec.p, tp) + Complex(0.0, cfg.cap_b());
  double scale = 1.0 + std::abs(spec.p.gamma()) + std::abs(cfg.cap_b());
  for (const auto& a : spec.p.atoms()) scale += a.mass * std::abs((a.point.value() + tau) / (a.point.value() - tau));
  if (std::abs(limit) > kContactVanishTolerance * scale) return 0.0;
  return 1.0 / (p_sharp(spec.p, tp) + cfg.sum_inv_lambda());
}

double brfp_spectral_value(const GeneratorSpec& spec, std::size_t k) {
  const FixedPointConfig& cfg = spec.config;
  if (k >= cfg.size()) throw DomainError("fixed point index out of range");
  const double star = p_star(spec.p, cfg.sigmas()[k]);
  return cfg.lambdas()[k] / (1.0 + star / (2.0 * cfg.alphas()[k]));
}

std::vector<double> brfp_spectral_values(const GeneratorSpec& spec) {
  std::vector<double> out;
  out.reserve(spec.config.size());
  for (std::size_t k = 0; k < spec.config.size(); ++k) out.push_back(brfp_spectral_value(spec, k));
  return out;
}

double beta(const GeneratorSpec& spec) {
  if (!spec.config.is_boundary()) throw DomainError("beta is defined for a boundary Denjoy-Wolff point only");
  return p_star(spec.p, spec.config.tau_point());
}

bool is_generator(const BerksonPortaSpec& bp) {
  const double m = std::abs(bp.tau);
  return std::isfinite(m) && m <= 1.0 + kCircleSnap;
}

BerksonPortaSpec to_berkson_porta(const GeneratorSpec& spec) {
  if (spec.p.offset() > 0.0) throw DomainError("p with a Lebesgue component has no atomic reciprocal");
  return {spec.config.tau(), reciprocal(RationalHerglotz(denominator(spec))).function()};
}

GeneratorSpec from_berkson_porta(const BerksonPortaSpec& bp, const std::vector<BoundaryPoint>& sigmas,
                                 const std::vector<double>& lambdas, double tol) {
  FixedPointConfig config(bp.tau, sigmas, lambdas);
  const AtomicHerglotz q = reciprocal(RationalHerglotz(bp.pstar)).function();
  std::vector<bool> matched(config.size(), false);
  std::vector<AtomicHerglotz::Atom> atoms;
  for (const auto& a : q.atoms()) {
    AtomicHerglotz::Atom atom = a;
    for (std::size_t k = 0; k < config.size(); ++k) {
      if (!a.point.same_as(sigmas[k], 1e-9)) continue;
      atom.point = sigmas[k];
      atom.mass -= config.alphas()[k];
      if (atom.mass < -tol * (1.0 + config.alphas()[k]))
        throw DomainError("generator misses the spectral bound at sigma_" + std::to_string(k + 1));
      if (atom.mass <= tol * (1.0 + config.alphas()[k])) atom.mass = 0.0;
      matched[k] = true;
    }
    atoms.push_back(atom);
  }
  for (std::size_t k = 0; k < config.size(); ++k) {
    if (!matched[k]) throw DomainError("sigma_" + std::to_string(k + 1) + " is not a boundary regular fixed point");
  }
  return {config, AtomicHerglotz(std::move(atoms), q.gamma())};
}

} // namespace semigen
