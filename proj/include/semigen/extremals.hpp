#pragma once

#include <vector>

#include "semigen/generator.hpp"

namespace semigen {

/// Candidate extreme point of Gen_tau(F, Lambda): p = sum a_j K_{s_j} + ib
/// with at most n - 1 free atoms. The s_j may coincide with points of F.
struct ExtremeCandidate {
  struct FreeAtom {
    BoundaryPoint point;
    double mass = 0.0;
  };

  ExtremeCandidate(FixedPointConfig config, double b, std::vector<FreeAtom> free_atoms = {});

  FixedPointConfig config;
  double b = 0.0;
  std::vector<FreeAtom> free_atoms;
};

GeneratorSpec extreme_candidate_generator(const ExtremeCandidate& cand);

/// Extreme point of Gen_tau(F): spectral values L with sum |L_k| = 1 and p = ib.
/// NormalizationError unless sum |L_k| = 1 within 1e-12.
GeneratorSpec extreme_point_GenF(Complex tau, const std::vector<BoundaryPoint>& sigmas,
                                 const std::vector<double>& spectral_values, double b);

/// True iff p is a purely imaginary constant and sum |lambda'_k| = 1 within tol.
bool is_extreme_GenF(const GeneratorSpec& spec, double tol = 1e-10);

/// Convex combination (1 - t) G1 + t G2 of two generators of Gen_tau(F) with
/// the same tau and F, re-expressed over the spectral values of the mixture.
GeneratorSpec convex_combination_GenF(const GeneratorSpec& g1, const GeneratorSpec& g2, double t);

struct WeightedPoint {
  BoundaryPoint kappa;
  double weight = 0.0;
};

/// (|lambda|/|sigma - tau|^2) (tau - z)(1 - conj(tau) z)(1 - conj(sigma) z)
///   * sum_j w_j (1 - kappa_j) / (1 - kappa_j conj(sigma) z).
/// WeightError unless the weights are nonnegative and sum to 1 within 1e-12.
Complex gk_generator(Complex tau, const BoundaryPoint& sigma, double lambda, const std::vector<WeightedPoint>& mu,
                     Complex z);

/// kappa(b) = (iy - 1)/(iy + 1), y = 2 b |lambda| / |sigma - tau|^2: the Dirac
/// measure at kappa(b) reproduces the candidate with p = ib for n = 1.
BoundaryPoint gk_kappa(Complex tau, const BoundaryPoint& sigma, double lambda, double b);

} // namespace semigen
