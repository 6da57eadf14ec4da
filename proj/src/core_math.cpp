#include "mzls/core_math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mzls {

namespace {

using u128 = unsigned __int128;

constexpr u128 kInt64Max = static_cast<u128>(std::numeric_limits<std::int64_t>::max());

// binom(a, k) exactly; throws if any intermediate leaves the int64 range.
u128 binomial_checked(std::int64_t a, std::int64_t k) {
  if (k < 0 || k > a) return 0;
  if (k > a - k) k = a - k;
  u128 c = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // c * (a - k + i) / i is exact at every step: it is binom(a - k + i, i).
    c = c * static_cast<u128>(a - k + i);
    if (c > kInt64Max * static_cast<u128>(i)) throw OverflowError("binomial coefficient overflows int64");
    c /= static_cast<u128>(i);
  }
  return c;
}

std::int64_t narrow_checked(u128 v, const char* what) {
  if (v > kInt64Max) throw OverflowError(std::string(what) + " overflows int64");
  return static_cast<std::int64_t>(v);
}

void require_dimension(int d) {
  if (d < 2) throw InvalidArgument("sphere dimension d must be >= 2, got " + std::to_string(d));
}

}  // namespace

double gegenbauer(double lambda, int ell, double t) {
  if (!(lambda > 0.0)) throw InvalidArgument("Gegenbauer order lambda must be positive");
  if (ell < 0) throw InvalidArgument("Gegenbauer degree must be non-negative");
  if (!(std::abs(t) <= 1.0 + 1e-12)) throw DomainError("Gegenbauer argument outside [-1, 1]");
  if (t > 1.0) t = 1.0;
  if (t < -1.0) t = -1.0;

  if (ell == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * lambda * t;
  for (int k = 1; k < ell; ++k) {
    const double next = (2.0 * (k + lambda) * t * cur - (k + 2.0 * lambda - 1.0) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

std::int64_t dim_harmonic(int d, int ell) {
  require_dimension(d);
  if (ell < 0) throw InvalidArgument("harmonic degree must be non-negative");
  if (ell == 0) return 1;
  // (2 ell + d - 1) (ell + d - 2)! / ((d - 1)! ell!) = (2 ell + d - 1) binom(ell + d - 2, ell) / (d - 1)
  const u128 c = binomial_checked(static_cast<std::int64_t>(ell) + d - 2, ell);
  const u128 num = c * static_cast<u128>(2 * static_cast<std::int64_t>(ell) + d - 1);
  return narrow_checked(num / static_cast<u128>(d - 1), "dim_harmonic");
}

std::int64_t dim_poly(int d, int n) {
  require_dimension(d);
  if (n < 0) throw InvalidArgument("polynomial degree must be non-negative");
  // (2n + d) Gamma(n + d) / (Gamma(d + 1) Gamma(n + 1)) = (2n + d) binom(n + d - 1, n) / d
  const u128 c = binomial_checked(static_cast<std::int64_t>(n) + d - 1, n);
  const u128 num = c * static_cast<u128>(2 * static_cast<std::int64_t>(n) + d);
  return narrow_checked(num / static_cast<u128>(d), "dim_poly");
}

double kernel_E(int d, int n, double u) {
  require_dimension(d);
  if (n < 0) throw InvalidArgument("polynomial degree must be non-negative");
  if (!(std::abs(u) <= 1.0 + 1e-12)) throw DomainError("kernel argument outside [-1, 1]");
  u = std::clamp(u, -1.0, 1.0);

  const double lambda = 0.5 * (d - 1);
  double sum = 1.0;
  double prev = 1.0;
  double cur = 2.0 * lambda * u;
  for (int ell = 1; ell <= n; ++ell) {
    sum += (ell + lambda) / lambda * cur;
    const double next = (2.0 * (ell + lambda) * u * cur - (ell + 2.0 * lambda - 1.0) * prev) / (ell + 1.0);
    prev = cur;
    cur = next;
  }
  return sum;
}

SphericalHarmonics::SphericalHarmonics(int degree) : degree_(degree) {
  if (degree < 0) throw InvalidArgument("harmonic degree must be non-negative");
  size_ = static_cast<std::size_t>(degree + 1) * (degree + 1);

  sectoral_.assign(degree + 1, 1.0);
  for (int m = 1; m <= degree; ++m) {
    sectoral_[m] = (m == 1) ? std::sqrt(3.0) : std::sqrt((2.0 * m + 1.0) / (2.0 * m));
  }

  offset_.assign(degree + 2, 0);
  for (int m = 0; m <= degree; ++m) {
    offset_[m + 1] = offset_[m] + static_cast<std::size_t>(std::max(0, degree - m - 1));
  }
  a_.resize(offset_.back());
  b_.resize(offset_.back());
  for (int m = 0; m <= degree; ++m) {
    for (int ell = m + 2; ell <= degree; ++ell) {
      const double lm = ell - m;
      const double lp = ell + m;
      const std::size_t i = offset_[m] + (ell - m - 2);
      a_[i] = std::sqrt((2.0 * ell - 1.0) * (2.0 * ell + 1.0) / (lm * lp));
      b_[i] = std::sqrt((2.0 * ell + 1.0) * (lp - 1.0) * (lm - 1.0) / ((2.0 * ell - 3.0) * lm * lp));
    }
  }
}

void SphericalHarmonics::eval(const UnitPoint& x, std::span<double> out) const {
  if (out.size() < size_) throw DimensionMismatch("output span shorter than basis size");
  const double t = x.z();
  // The recurrence runs on Q_ell^m = Pbar_ell^m / sin^m(theta); the factor
  // sin^m(theta) (cos m phi, sin m phi) is Re/Im of (x1 + i x2)^m, which is
  // taken from the coordinates directly and is well defined at the poles.
  double re = 1.0;
  double im = 0.0;
  double diag = 1.0;
  for (int m = 0; m <= degree_; ++m) {
    if (m > 0) {
      diag *= sectoral_[m];
      const double nre = re * x.x() - im * x.y();
      im = re * x.y() + im * x.x();
      re = nre;
    }
    auto store = [&](int ell, double q) {
      if (m == 0) {
        out[BasisSpec::block_offset(ell)] = q;
      } else {
        out[BasisSpec::index(ell, m, true)] = q * re;
        out[BasisSpec::index(ell, m, false)] = q * im;
      }
    };
    double q2 = diag;
    store(m, q2);
    if (m + 1 > degree_) continue;
    double q1 = std::sqrt(2.0 * m + 3.0) * t * diag;
    store(m + 1, q1);
    const double* a = a_.data() + offset_[m];
    const double* b = b_.data() + offset_[m];
    for (int ell = m + 2; ell <= degree_; ++ell) {
      const double q = a[ell - m - 2] * t * q1 - b[ell - m - 2] * q2;
      store(ell, q);
      q2 = q1;
      q1 = q;
    }
  }
}

Eigen::VectorXd SphericalHarmonics::eval(const UnitPoint& x) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(size_));
  eval(x, std::span<double>(out.data(), size_));
  return out;
}

Eigen::VectorXd basis_eval(const BasisSpec& spec, const UnitPoint& x) {
  if (spec.dimension != 2) {
    throw UnsupportedDimension("basis evaluation is implemented for d = 2 only, got d = " +
                               std::to_string(spec.dimension));
  }
  return SphericalHarmonics(spec.degree).eval(x);
}

}  // namespace mzls
