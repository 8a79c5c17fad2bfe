#pragma once

#include <string>

#include "spectra_cert/mpfr_num.hpp"
#include "spectra_cert/rational.hpp"

namespace spectra_cert {

/// Midpoint-radius enclosure [mid - rad, mid + rad]. The midpoint carries the
/// working precision; the radius is a 64-bit upper bound. Every operation
/// returns a ball containing the exact image of its inputs.
class Ball {
 public:
  static constexpr mpfr_prec_t kRadPrec = 64;

  explicit Ball(mpfr_prec_t prec = 256);
  /// Ball with the given midpoint and radius (radius rounded up).
  Ball(const MpfrNum& mid, const MpfrNum& rad);

  mpfr_prec_t prec() const { return mid_.prec(); }
  const MpfrNum& mid() const { return mid_; }
  const MpfrNum& rad() const { return rad_; }
  bool finite() const;

  /// Endpoints rounded outward to the working precision.
  MpfrNum lower() const;
  MpfrNum upper() const;
  bool positive() const;  // lower() > 0
  bool contains(const Rational& q) const;
  bool contains(const MpfrNum& x) const;

  std::string to_string(int digits = 20) const;

  friend Ball operator+(const Ball& a, const Ball& b);
  friend Ball operator-(const Ball& a, const Ball& b);
  friend Ball operator*(const Ball& a, const Ball& b);
  /// Infinite radius when the divisor contains zero.
  friend Ball operator/(const Ball& a, const Ball& b);
  friend Ball operator-(const Ball& a);
  Ball& operator+=(const Ball& o) { return *this = *this + o; }
  Ball& operator-=(const Ball& o) { return *this = *this - o; }

  /// Smallest ball (at the working precision) holding [lo, hi].
  static Ball from_endpoints(const MpfrNum& lo, const MpfrNum& hi, mpfr_prec_t prec);

 private:
  MpfrNum mid_;
  MpfrNum rad_;
};

Ball ball_from_rational(const Rational& q, mpfr_prec_t prec = 256);
/// Ball with midpoint (lo + hi) / 2 and radius (hi - lo) / 2.
Ball ball_hull(const Rational& lo, const Rational& hi, mpfr_prec_t prec = 256);
Ball ball_pi(mpfr_prec_t prec = 256);
Ball ball_sqrt(const Rational& q, mpfr_prec_t prec = 256);

Ball cos(const Ball& x);
Ball sin(const Ball& x);
/// cos(2 pi x) and sin(2 pi x) with exact reduction of the midpoint modulo 1.
Ball cos2pi(const Ball& x);
Ball sin2pi(const Ball& x);

}  // namespace spectra_cert
