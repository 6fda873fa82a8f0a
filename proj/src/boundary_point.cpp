#include "semigen/boundary_point.hpp"

#include <cmath>

namespace semigen {

namespace {

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

} // namespace

BoundaryPoint::BoundaryPoint(double theta)
    : theta_(wrap_angle(theta)), cos_(std::cos(theta_)), sin_(std::sin(theta_)) {}

BoundaryPoint BoundaryPoint::from_complex(Complex z) {
  return BoundaryPoint(std::arg(z));
}

double BoundaryPoint::angle_to(const BoundaryPoint& other) const {
  double d = other.theta_ - theta_;
  if (d > std::numbers::pi) d -= kTwoPi;
  if (d <= -std::numbers::pi) d += kTwoPi;
  return d;
}

bool BoundaryPoint::same_as(const BoundaryPoint& other, double tol) const {
  return std::abs(angle_to(other)) <= tol;
}

} // namespace semigen
