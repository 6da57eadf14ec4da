#pragma once

#include <array>
#include <cmath>

#include "mzls/error.hpp"

namespace mzls {

inline constexpr double kUnitNormTolerance = 1e-12;

// A point on S^2 stored as a unit vector in R^3.
class UnitPoint {
 public:
  UnitPoint() = default;

  // Validates |x| = 1 within kUnitNormTolerance.
  static UnitPoint from(double x, double y, double z) {
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (!(std::abs(norm - 1.0) <= kUnitNormTolerance)) {
      throw DomainError("point is not on the unit sphere (|x| = " +
                        std::to_string(norm) + ")");
    }
    return UnitPoint(x, y, z);
  }

  // Projects a nonzero vector onto the sphere.
  static UnitPoint normalized(double x, double y, double z) {
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw DomainError("cannot normalize a zero or non-finite vector");
    }
    return UnitPoint(x / norm, y / norm, z / norm);
  }

  static UnitPoint north_pole() { return UnitPoint(0.0, 0.0, 1.0); }

  double x() const noexcept { return c_[0]; }
  double y() const noexcept { return c_[1]; }
  double z() const noexcept { return c_[2]; }
  double operator[](int i) const noexcept { return c_[i]; }
  const std::array<double, 3>& coords() const noexcept { return c_; }

  double dot(const UnitPoint& o) const noexcept {
    return c_[0] * o.c_[0] + c_[1] * o.c_[1] + c_[2] * o.c_[2];
  }

  bool operator==(const UnitPoint&) const = default;

 private:
  UnitPoint(double x, double y, double z) : c_{x, y, z} {}
  std::array<double, 3> c_{0.0, 0.0, 1.0};
};

// Geodesic distance arccos(x.y), evaluated as atan2(|x cross y|, x.y) so that
// nearby points keep full relative accuracy.
inline double geodesic_distance(const UnitPoint& a, const UnitPoint& b) noexcept {
  const double cx = a.y() * b.z() - a.z() * b.y();
  const double cy = a.z() * b.x() - a.x() * b.z();
  const double cz = a.x() * b.y() - a.y() * b.x();
  return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), a.dot(b));
}

}  // namespace mzls
