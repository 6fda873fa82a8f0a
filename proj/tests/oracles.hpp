#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library's closed forms.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

struct Atom {
  double theta;
  double mass;
};

inline Complex direct_herglotz(const std::vector<Atom>& atoms, double gamma, Complex z, double offset = 0.0) {
  Complex sum(offset, gamma);
  for (const auto& a : atoms) {
    const Complex s = std::polar(1.0, a.theta);
    sum += a.mass * (s + z) / (s - z);
  }
  return sum;
}

// Richardson extrapolation of samples f(h_k) assuming f(h) = L + c1 h + c2 h^2 + ...
// Uses Neville's scheme on the last `order + 1` samples.
inline double richardson(const std::vector<double>& h, const std::vector<double>& f, int order = 2) {
  const std::size_t n = h.size();
  const std::size_t m = std::min<std::size_t>(n, static_cast<std::size_t>(order) + 1);
  std::vector<double> hh(h.end() - m, h.end());
  std::vector<double> t(f.end() - m, f.end());
  const int mm = static_cast<int>(m);
  for (int level = 1; level < mm; ++level) {
    for (int i = mm - 1; i >= level; --i) t[i] = (hh[i - level] * t[i] - hh[i] * t[i - 1]) / (hh[i - level] - hh[i]);
  }
  return t[m - 1];
}

// Extrapolated limit of g(r) as r -> 1- along r = 1 - 10^-k, k = k0..k1.
inline double radial_limit(const std::function<double(double)>& g, int k0 = 4, int k1 = 8, int order = 2) {
  std::vector<double> h, f;
  for (int k = k0; k <= k1; ++k) {
    const double hk = std::pow(10.0, -k);
    h.push_back(hk);
    f.push_back(g(1.0 - hk));
  }
  return richardson(h, f, order);
}

inline Complex central_difference(const std::function<Complex(Complex)>& f, Complex z, double step = 1e-6) {
  return (f(z + step) - f(z - step)) / (2.0 * step);
}

// Root of a monotone function on [lo, hi] by bisection.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-14) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline Complex random_in_disk(std::mt19937_64& rng, double rmax = 0.95) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = rmax * std::sqrt(u(rng));
  const double t = 2.0 * M_PI * u(rng);
  return std::polar(r, t);
}

}  // namespace oracle
