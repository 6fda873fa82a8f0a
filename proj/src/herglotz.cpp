#include "semigen/herglotz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "semigen/error.hpp"

namespace semigen {

namespace {

constexpr double kRootRadiusTolerance = 1e-8;
constexpr double kRootSeparationTolerance = 1e-8;
constexpr double kQuadratureTolerance = 1e-8;

void require_inside(Complex z) {
  if (!(std::abs(z) < 1.0)) {
    throw DomainError("point " + std::to_string(z.real()) + "+" + std::to_string(z.imag()) +
                      "i is not inside the unit disk");
  }
}

// Ascending coefficients of prod_j (s_j - z), optionally skipping one index.
std::vector<Complex> product_of_linear(const std::vector<AtomicHerglotz::Atom>& atoms,
                                       std::size_t skip) {
  std::vector<Complex> poly{Complex(1.0)};
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i == skip) continue;
    const Complex s = atoms[i].point.value();
    std::vector<Complex> next(poly.size() + 1, Complex(0.0));
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k] += s * poly[k];
      next[k + 1] -= poly[k];
    }
    poly = std::move(next);
  }
  return poly;
}

// Numerator N of p = N / prod_j (s_j - z), ascending coefficients.
std::vector<Complex> numerator_polynomial(const AtomicHerglotz& p) {
  const auto& atoms = p.atoms();
  const std::size_t m = atoms.size();
  std::vector<Complex> num(m + 1, Complex(0.0));
  const auto full = product_of_linear(atoms, m);
  for (std::size_t k = 0; k <= m; ++k) num[k] += Complex(0.0, p.gamma()) * full[k];
  for (std::size_t j = 0; j < m; ++j) {
    const auto rest = product_of_linear(atoms, j);
    const Complex s = atoms[j].point.value();
    // m_j (s_j + z) * rest(z)
    for (std::size_t k = 0; k < rest.size(); ++k) {
      num[k] += atoms[j].mass * s * rest[k];
      num[k + 1] += atoms[j].mass * rest[k];
    }
  }
  return num;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& c) {
  const std::size_t m = c.size() - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m),
                                                      static_cast<Eigen::Index>(m));
  for (std::size_t i = 1; i < m; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < m; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m - 1)) = -c[i] / c[m];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw RootFindingFailure("companion eigen solver failed");
  std::vector<Complex> roots;
  roots.reserve(m);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) roots.push_back(solver.eigenvalues()[i]);
  return roots;
}

// Complex Newton on the partial-fraction form of p, which stays accurate for
// clustered zeros where the monomial coefficients do not.
Complex polish_zero(const AtomicHerglotz& p, Complex z) {
  auto eval = [&p](Complex w, Complex& d) {
    Complex v(p.offset(), p.gamma());
    d = 0.0;
    for (const auto& a : p.atoms()) {
      const Complex s = a.point.value();
      v += a.mass * (s + w) / (s - w);
      d += a.mass * 2.0 * s / ((s - w) * (s - w));
    }
    return v;
  };
  Complex d;
  Complex v = eval(z, d);
  for (int it = 0; it < 30 && std::abs(d) > 0.0; ++it) {
    const Complex next = z - v / d;
    Complex dn;
    const Complex vn = eval(next, dn);
    if (!(std::abs(vn) < std::abs(v))) break;
    z = next;
    v = vn;
    d = dn;
  }
  return z;
}

// p restricted to the circle is i*h(phi) away from the poles; Newton on h.
double polish_zero_angle(const AtomicHerglotz& p, double phi) {
  for (int it = 0; it < 20; ++it) {
    const Complex z = std::polar(1.0, phi);
    Complex value(0.0, p.gamma());
    Complex deriv(0.0);
    for (const auto& a : p.atoms()) {
      const Complex s = a.point.value();
      value += a.mass * (s + z) / (s - z);
      deriv += a.mass * 2.0 * s / ((s - z) * (s - z));
    }
    const double h = value.imag();
    const double dh = (z * deriv).real();
    if (dh == 0.0) break;
    const double step = h / dh;
    phi -= step;
    if (std::abs(step) < 1e-16) break;
  }
  return phi;
}

} // namespace

Complex kernel(const BoundaryPoint& s, Complex z) {
  const Complex sv = s.value();
  return (sv + z) / (sv - z);
}

AtomicHerglotz::AtomicHerglotz(std::vector<Atom> atoms, double gamma, double offset)
    : gamma_(gamma), offset_(offset) {
  if (!(offset >= 0.0) || !std::isfinite(offset)) throw DomainError("offset must be finite and >= 0");
  if (!std::isfinite(gamma)) throw DomainError("gamma must be finite");
  for (const auto& a : atoms) {
    if (!(a.mass >= 0.0) || !std::isfinite(a.mass)) throw DomainError("atom masses must be finite and >= 0");
    if (a.mass == 0.0) continue;
    auto hit = std::find_if(atoms_.begin(), atoms_.end(),
                            [&](const Atom& b) { return b.point.same_as(a.point); });
    if (hit != atoms_.end()) {
      hit->mass += a.mass;
    } else {
      atoms_.push_back(a);
    }
  }
}

double AtomicHerglotz::total_mass() const {
  double sum = offset_;
  for (const auto& a : atoms_) sum += a.mass;
  return sum;
}

double AtomicHerglotz::mass_at(const BoundaryPoint& s) const {
  for (const auto& a : atoms_)
    if (a.point.same_as(s)) return a.mass;
  return 0.0;
}

AtomicHerglotz AtomicHerglotz::with_atom(const BoundaryPoint& s, double mass) const {
  auto atoms = atoms_;
  atoms.push_back({s, mass});
  return AtomicHerglotz(std::move(atoms), gamma_, offset_);
}

AtomicHerglotz AtomicHerglotz::with_gamma(double gamma) const {
  AtomicHerglotz copy = *this;
  copy.gamma_ = gamma;
  return copy;
}

AtomicHerglotz AtomicHerglotz::scaled(double factor) const {
  if (!(factor >= 0.0)) throw DomainError("Herglotz functions scale by nonnegative factors only");
  auto atoms = atoms_;
  for (auto& a : atoms) a.mass *= factor;
  return AtomicHerglotz(std::move(atoms), gamma_ * factor, offset_ * factor);
}

AtomicHerglotz operator+(const AtomicHerglotz& a, const AtomicHerglotz& b) {
  auto atoms = a.atoms_;
  atoms.insert(atoms.end(), b.atoms_.begin(), b.atoms_.end());
  return AtomicHerglotz(std::move(atoms), a.gamma_ + b.gamma_, a.offset_ + b.offset_);
}

RationalHerglotz::RationalHerglotz(AtomicHerglotz p) : p_(std::move(p)) {
  if (p_.atoms().empty()) throw DomainError("a member of P_m needs at least one atom");
  if (p_.offset() != 0.0) throw DomainError("a member of P_m has no Lebesgue component");
}

Complex eval_herglotz(const AtomicHerglotz& p, Complex z) {
  require_inside(z);
  Complex sum(p.offset(), p.gamma());
  for (const auto& a : p.atoms()) sum += a.mass * kernel(a.point, z);
  return sum;
}

Complex eval_herglotz_derivative(const AtomicHerglotz& p, Complex z) {
  require_inside(z);
  Complex sum(0.0);
  for (const auto& a : p.atoms()) {
    const Complex s = a.point.value();
    const Complex d = s - z;
    sum += a.mass * 2.0 * s / (d * d);
  }
  return sum;
}

Complex eval_herglotz_second_derivative(const AtomicHerglotz& p, Complex z) {
  require_inside(z);
  Complex sum(0.0);
  for (const auto& a : p.atoms()) {
    const Complex s = a.point.value();
    const Complex d = s - z;
    sum += a.mass * 4.0 * s / (d * d * d);
  }
  return sum;
}

double p_star(const AtomicHerglotz& p, const BoundaryPoint& s) { return 2.0 * p.mass_at(s); }

double p_sharp(const AtomicHerglotz& p, const BoundaryPoint& s) {
  if (p.offset() > 0.0 || p.has_atom_at(s)) return std::numeric_limits<double>::infinity();
  double sum = 0.0;
  const Complex sv = s.value();
  for (const auto& a : p.atoms()) sum += a.mass / std::norm(a.point.value() - sv);
  return 2.0 * sum;
}

Complex contact_value(const AtomicHerglotz& p, const BoundaryPoint& s) {
  if (p.has_atom_at(s)) throw AtomAtPoint("p has an atom at the requested boundary point");
  if (p.offset() > 0.0) throw NotContactPoint("a Lebesgue component has no contact points");
  Complex sum(0.0, p.gamma());
  const Complex sv = s.value();
  for (const auto& a : p.atoms()) {
    const Complex t = a.point.value();
    sum += a.mass * (t + sv) / (t - sv);
  }
  // Each kernel term is purely imaginary on the circle; drop the round-off.
  return {0.0, sum.imag()};
}

RationalHerglotz reciprocal(const RationalHerglotz& rp) {
  const AtomicHerglotz& p = rp.function();
  const auto roots = polynomial_roots(numerator_polynomial(p));

  std::vector<double> angles;
  angles.reserve(roots.size());
  for (const Complex& root : roots) {
    const Complex r = polish_zero(p, root);
    const double deviation = std::abs(std::abs(r) - 1.0);
    if (!(deviation < kRootRadiusTolerance)) {
      throw RootFindingFailure("numerator root off the unit circle by " + std::to_string(deviation));
    }
    angles.push_back(polish_zero_angle(p, std::arg(r)));
  }
  for (std::size_t i = 0; i < angles.size(); ++i) {
    for (std::size_t j = i + 1; j < angles.size(); ++j) {
      if (std::abs(BoundaryPoint(angles[i]).angle_to(BoundaryPoint(angles[j]))) < kRootSeparationTolerance)
        throw RootFindingFailure("numerator roots are not simple");
    }
  }

  std::vector<AtomicHerglotz::Atom> atoms;
  atoms.reserve(angles.size());
  for (double phi : angles) {
    const BoundaryPoint kappa(phi);
    const Complex k = kappa.value();
    Complex deriv(0.0);
    for (const auto& a : p.atoms()) {
      const Complex s = a.point.value();
      deriv += a.mass * 2.0 * s / ((s - k) * (s - k));
    }
    const double sharp = -(k * deriv).real();
    if (!(sharp > 0.0)) throw RootFindingFailure("non-positive angular derivative at a zero of p");
    atoms.push_back({kappa, 1.0 / (2.0 * sharp)});
  }
  const Complex inv0 = 1.0 / p.value_at_origin();
  return RationalHerglotz(AtomicHerglotz(std::move(atoms), inv0.imag()));
}

AtomExtraction extract_atom(const AtomicHerglotz& p, const BoundaryPoint& s) {
  const double mass = p.mass_at(s);
  if (mass == 0.0) return {0.0, p};
  std::vector<AtomicHerglotz::Atom> rest;
  for (const auto& a : p.atoms())
    if (!a.point.same_as(s)) rest.push_back(a);
  return {mass, AtomicHerglotz(std::move(rest), p.gamma(), p.offset())};
}

AtomicHerglotz caratheodory_extreme(const BoundaryPoint& s) {
  return AtomicHerglotz::single_atom(s, 1.0);
}

double counterexample_P(double y) {
  if (!(y > 0.0 && y < 1.0)) throw DomainError("counterexample_P needs 0 < y < 1");
  // With t = y tan(theta) the integrand becomes 1 / log(1/(y tan theta)).
  const double upper = std::atan(1.0 / (std::numbers::e * y));
  auto integrand = [y](double theta) {
    const double u = y * std::tan(theta);
    if (u <= 0.0) return 0.0;
    return -1.0 / std::log(u);
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  double error = 0.0;
  double l1 = 0.0;
  const double value = integrator.integrate(integrand, 0.0, upper, 1e-13, &error, &l1);
  if (!(error <= kQuadratureTolerance) || !std::isfinite(value)) {
    throw QuadratureFailure("counterexample_P: error estimate " + std::to_string(error));
  }
  return value;
}

double counterexample_divergence(double delta) {
  const double top = 1.0 / std::numbers::e;
  if (!(delta > 0.0 && delta < top)) throw DomainError("counterexample_divergence needs 0 < delta < 1/e");
  // x = log t turns dt / (t log(1/t)) into dx / (-x).
  auto integrand = [](double x) { return -1.0 / x; };
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, std::log(delta), -1.0, 20, 1e-14, &error);
  if (!(error <= kQuadratureTolerance)) {
    throw QuadratureFailure("counterexample_divergence: error estimate " + std::to_string(error));
  }
  return value;
}

} // namespace semigen
