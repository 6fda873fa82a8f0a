#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "semigen/boundary_point.hpp"

namespace semigen {

/// Circle kernel K_s(z) = (s + z) / (s - z).
Complex kernel(const BoundaryPoint& s, Complex z);

/// Herglotz function with a finite atomic Riesz-Herglotz measure:
///
///   p(z) = sum_j m_j (s_j + z)/(s_j - z) + offset + i*gamma.
///
/// `offset` is the mass of a normalized Lebesgue component, i.e. a
/// nonnegative real constant. It is what lets constants such as p == 1 be
/// expressed without a fake atom; it never produces an atom or a contact
/// point.
///
/// Construction merges atoms whose angles agree within kAngleTolerance and
/// drops atoms of zero mass, so atom points are pairwise distinct and all
/// stored masses are strictly positive.
class AtomicHerglotz {
public:
  struct Atom {
    BoundaryPoint point;
    double mass = 0.0;
  };

  AtomicHerglotz() = default;
  explicit AtomicHerglotz(std::vector<Atom> atoms, double gamma = 0.0, double offset = 0.0);

  static AtomicHerglotz imaginary_constant(double gamma) { return AtomicHerglotz({}, gamma); }
  static AtomicHerglotz single_atom(const BoundaryPoint& s, double mass, double gamma = 0.0) {
    return AtomicHerglotz({{s, mass}}, gamma);
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  double gamma() const { return gamma_; }
  double offset() const { return offset_; }

  /// Re p(0): atomic mass plus offset.
  double total_mass() const;
  Complex value_at_origin() const { return {total_mass(), gamma_}; }

  /// True for a purely imaginary constant.
  bool is_trivial() const { return atoms_.empty() && offset_ == 0.0; }

  /// Mass of the atom at s, zero when there is none.
  double mass_at(const BoundaryPoint& s) const;
  bool has_atom_at(const BoundaryPoint& s) const { return mass_at(s) > 0.0; }

  AtomicHerglotz with_atom(const BoundaryPoint& s, double mass) const;
  AtomicHerglotz with_gamma(double gamma) const;
  AtomicHerglotz scaled(double factor) const;

  friend AtomicHerglotz operator+(const AtomicHerglotz& a, const AtomicHerglotz& b);

private:
  std::vector<Atom> atoms_;
  double gamma_ = 0.0;
  double offset_ = 0.0;
};

/// Member of the class P_m: m >= 1 atoms of positive mass and no offset.
/// These are exactly the rational Herglotz functions of degree m whose
/// poles are simple and lie on the unit circle.
class RationalHerglotz {
public:
  /// Throws DomainError unless p has at least one atom and zero offset.
  explicit RationalHerglotz(AtomicHerglotz p);

  const AtomicHerglotz& function() const { return p_; }
  std::size_t degree() const { return p_.atoms().size(); }

private:
  AtomicHerglotz p_;
};

/// p(z) for |z| < 1; DomainError otherwise.
Complex eval_herglotz(const AtomicHerglotz& p, Complex z);
Complex eval_herglotz_derivative(const AtomicHerglotz& p, Complex z);
Complex eval_herglotz_second_derivative(const AtomicHerglotz& p, Complex z);

/// Angular limit of (1 - conj(s) z) p(z) at s: twice the atom mass at s.
double p_star(const AtomicHerglotz& p, const BoundaryPoint& s);

/// 2 * integral |t - s|^-2 dmu(t); +infinity when s carries an atom or the
/// measure has a Lebesgue component.
double p_sharp(const AtomicHerglotz& p, const BoundaryPoint& s);

/// Boundary value p(s), purely imaginary. Throws AtomAtPoint when s carries
/// an atom and NotContactPoint when p has a positive offset.
Complex contact_value(const AtomicHerglotz& p, const BoundaryPoint& s);

/// 1/p as a member of P_m. Zeros of p are the roots of its numerator
/// polynomial, projected radially onto the circle and polished by Newton's
/// method on the angle.
RationalHerglotz reciprocal(const RationalHerglotz& p);

struct AtomExtraction {
  double mass = 0.0;
  AtomicHerglotz remainder;
};

/// Splits p = remainder + mass * K_s with p_star(remainder, s) = 0.
AtomExtraction extract_atom(const AtomicHerglotz& p, const BoundaryPoint& s);

/// Extreme point K_s of the Caratheodory class.
AtomicHerglotz caratheodory_extreme(const BoundaryPoint& s);

/// P(iy)/(2i) for the symmetric measure dt / log(1/|t|) on [-1/e, 1/e]:
/// the integral over (0, 1/e) of y / ((t^2 + y^2) log(1/t)), 0 < y < 1.
double counterexample_P(double y);

/// Integral of dt / (t log(1/t)) over (delta, 1/e), 0 < delta < 1/e.
double counterexample_divergence(double delta);

} // namespace semigen
