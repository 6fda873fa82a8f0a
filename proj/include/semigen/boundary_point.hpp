#pragma once

#include <complex>
#include <numbers>

namespace semigen {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Angle tolerance under which two boundary points are the same point.
inline constexpr double kAngleTolerance = 1e-12;

/// A point of the unit circle, stored by its angle in [0, 2pi).
class BoundaryPoint {
public:
  BoundaryPoint() = default;
  explicit BoundaryPoint(double theta);

  /// Point closest to arg(z); z must be nonzero.
  static BoundaryPoint from_complex(Complex z);

  double theta() const { return theta_; }
  Complex value() const { return {cos_, sin_}; }
  Complex conj() const { return {cos_, -sin_}; }

  /// Equality modulo 2pi within kAngleTolerance.
  bool same_as(const BoundaryPoint& other, double tol = kAngleTolerance) const;

  /// Signed angular distance to other, in (-pi, pi].
  double angle_to(const BoundaryPoint& other) const;

private:
  double theta_ = 0.0;
  double cos_ = 1.0;
  double sin_ = 0.0;
};

inline bool operator==(const BoundaryPoint& a, const BoundaryPoint& b) {
  return a.same_as(b);
}

} // namespace semigen
