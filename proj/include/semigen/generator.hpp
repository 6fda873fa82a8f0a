#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "semigen/boundary_point.hpp"
#include "semigen/herglotz.hpp"

namespace semigen {

/// Denjoy-Wolff point tau together with boundary regular fixed points
/// sigma_k and lower bounds lambda_k < 0 for their spectral values.
///
/// Derived quantities:
///   alpha_k = |tau - sigma_k|^2 / (2 |lambda_k|),
///   A = sum alpha_k,  B = sum Im(conj(sigma_k) tau) / |lambda_k|,
///   S = sum 1/|lambda_k|, r = 1/S.
///
/// A tau within 1e-12 of the unit circle is snapped onto it.
class FixedPointConfig {
public:
  FixedPointConfig(Complex tau, std::vector<BoundaryPoint> sigmas, std::vector<double> lambdas);

  Complex tau() const { return tau_; }
  const std::vector<BoundaryPoint>& sigmas() const { return sigmas_; }
  const std::vector<double>& lambdas() const { return lambdas_; }
  const std::vector<double>& alphas() const { return alphas_; }
  std::size_t size() const { return sigmas_.size(); }

  double cap_a() const { return cap_a_; }
  double cap_b() const { return cap_b_; }
  double sum_inv_lambda() const { return sum_inv_lambda_; }
  double harmonic_radius() const { return 1.0 / sum_inv_lambda_; }

  bool is_boundary() const { return boundary_; }
  bool is_origin() const { return tau_ == Complex(0.0); }
  /// tau as a circle point; DomainError for interior tau.
  BoundaryPoint tau_point() const;

  /// p0 as an atomic Herglotz function with atoms (sigma_k, alpha_k).
  AtomicHerglotz p0() const;

  /// Same points and tau with different spectral bounds.
  FixedPointConfig with_lambdas(std::vector<double> lambdas) const;

private:
  Complex tau_;
  std::vector<BoundaryPoint> sigmas_;
  std::vector<double> lambdas_;
  std::vector<double> alphas_;
  double cap_a_ = 0.0;
  double cap_b_ = 0.0;
  double sum_inv_lambda_ = 0.0;
  bool boundary_ = false;
};

/// G(z) = (tau - z)(1 - conj(tau) z) / (p(z) + p0(z)).
struct GeneratorSpec {
  FixedPointConfig config;
  AtomicHerglotz p;
};

/// G(z) = (tau - z)(1 - conj(tau) z) p*(z); any Herglotz p* gives a generator.
struct BerksonPortaSpec {
  Complex tau;
  AtomicHerglotz pstar;
};

/// The trivial generator G == 0, which belongs to every class Gen_tau.
struct TrivialGenerator {
  Complex tau;
};

using Generator = std::variant<GeneratorSpec, BerksonPortaSpec, TrivialGenerator>;

Complex eval_p0(const FixedPointConfig& config, Complex z);

Complex eval_generator(const GeneratorSpec& spec, Complex z);
Complex eval_generator_derivative(const GeneratorSpec& spec, Complex z);
Complex eval_generator_second_derivative(const GeneratorSpec& spec, Complex z);

Complex eval_generator(const BerksonPortaSpec& spec, Complex z);
Complex eval_generator_derivative(const BerksonPortaSpec& spec, Complex z);

Complex eval_generator(const Generator& g, Complex z);
Complex eval_generator_derivative(const Generator& g, Complex z);
Complex dw_point(const Generator& g);

/// Spectral value at the Denjoy-Wolff point, in closed form.
///
/// Interior tau: (1 - |tau|^2) / (p(tau) + p0(tau)).
/// Boundary tau: 0 when p has an atom or a Lebesgue component at tau or when
/// the boundary value of p + p0 at tau is nonzero; otherwise
/// 1 / (p#(tau) + S). The imaginary part is zero in the boundary case.
Complex dw_spectral_value(const GeneratorSpec& spec);

/// Spectral value lambda'_k at sigma_k (0-based k):
/// -|lambda_k| / (1 + p_star(p, sigma_k) / (2 alpha_k)).
double brfp_spectral_value(const GeneratorSpec& spec, std::size_t k);
std::vector<double> brfp_spectral_values(const GeneratorSpec& spec);

/// beta(G) = p_star(p, tau) for boundary tau; DomainError otherwise.
double beta(const GeneratorSpec& spec);

/// Well-formedness check for a Berkson-Porta pair. Every well-formed pair is
/// a generator, so this only rejects malformed input.
bool is_generator(const BerksonPortaSpec& bp);

/// p + p0 with the atoms of p0 merged in.
AtomicHerglotz denominator(const GeneratorSpec& spec);

/// Berkson-Porta form of spec, p* = 1 / (p + p0). DomainError when p has a
/// Lebesgue component (p* is then not atomic).
BerksonPortaSpec to_berkson_porta(const GeneratorSpec& spec);

/// Inverse of to_berkson_porta for a given set of fixed points and bounds.
/// Recovers p by inverting p* and removing alpha_k from the atom at each
/// sigma_k; residual atoms at sigma_k below tol are dropped. DomainError when
/// some sigma_k is not a zero of G or its atom falls short of alpha_k by more
/// than tol (G is then not in Gen_tau(F, Lambda)).
GeneratorSpec from_berkson_porta(const BerksonPortaSpec& bp, const std::vector<BoundaryPoint>& sigmas,
                                 const std::vector<double>& lambdas, double tol = 1e-9);

} // namespace semigen
