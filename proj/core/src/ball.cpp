#include "spectra_cert/ball.hpp"

#include <algorithm>
#include <cmath>

#include "spectra_cert/errors.hpp"

namespace spectra_cert {

namespace {

constexpr mpfr_prec_t kRad = Ball::kRadPrec;

MpfrNum rad_zero() { return MpfrNum(kRad); }

MpfrNum rad_inf() {
  MpfrNum r(kRad);
  mpfr_set_inf(r.get(), 1);
  return r;
}

/// |x| rounded up to radius precision.
MpfrNum abs_up(const MpfrNum& x) {
  MpfrNum r(kRad);
  mpfr_abs(r.get(), x.get(), MPFR_RNDU);
  return r;
}

MpfrNum abs_down(const MpfrNum& x) {
  MpfrNum r(kRad);
  mpfr_abs(r.get(), x.get(), MPFR_RNDD);
  return r;
}

MpfrNum add_up(const MpfrNum& a, const MpfrNum& b) {
  MpfrNum r(kRad);
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

MpfrNum mul_up(const MpfrNum& a, const MpfrNum& b) {
  MpfrNum r(kRad);
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

/// Adds one ulp of `mid` to `rad` when the operation producing `mid` was inexact.
void add_rounding(MpfrNum& rad, const MpfrNum& mid, int ternary) {
  if (ternary == 0 || mpfr_zero_p(mid.get())) return;
  MpfrNum ulp(kRad);
  mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(mid.get()) - mid.prec(), MPFR_RNDU);
  rad = add_up(rad, ulp);
}

mpfr_prec_t joint_prec(const Ball& a, const Ball& b) { return std::max(a.prec(), b.prec()); }

struct PointEnclosure {
  MpfrNum lo;
  MpfrNum hi;
};

PointEnclosure point_trig(const MpfrNum& x, bool is_cos, mpfr_prec_t prec) {
  PointEnclosure e{MpfrNum(prec), MpfrNum(prec)};
  if (is_cos) {
    mpfr_cos(e.lo.get(), x.get(), MPFR_RNDD);
    mpfr_cos(e.hi.get(), x.get(), MPFR_RNDU);
  } else {
    mpfr_sin(e.lo.get(), x.get(), MPFR_RNDD);
    mpfr_sin(e.hi.get(), x.get(), MPFR_RNDU);
  }
  return e;
}

/// Image of [mid - rad, mid + rad] under cos or sin: hull of the endpoint
/// values, widened to +-1 wherever a critical point may lie inside.
Ball trig(const Ball& x, bool is_cos) {
  const mpfr_prec_t prec = x.prec();
  if (!x.finite()) return Ball::from_endpoints(MpfrNum::from_double(-1, prec), MpfrNum::from_double(1, prec), prec);
  if (mpfr_zero_p(x.rad().get())) {
    auto e = point_trig(x.mid(), is_cos, prec);
    return Ball::from_endpoints(e.lo, e.hi, prec);
  }
  const MpfrNum lo = x.lower();
  const MpfrNum hi = x.upper();
  MpfrNum one = MpfrNum::from_double(1, prec);
  MpfrNum minus_one = MpfrNum::from_double(-1, prec);
  if (mpfr_cmp_ui(x.rad().get(), 3) >= 0) return Ball::from_endpoints(minus_one, one, prec);

  auto el = point_trig(lo, is_cos, prec);
  auto eh = point_trig(hi, is_cos, prec);
  MpfrNum low = mpfr_cmp(el.lo.get(), eh.lo.get()) < 0 ? el.lo : eh.lo;
  MpfrNum high = mpfr_cmp(el.hi.get(), eh.hi.get()) > 0 ? el.hi : eh.hi;

  // Critical points (k + offset) pi, where the function equals (-1)^k.
  MpfrNum pi_lo(prec), pi_hi(prec);
  mpfr_const_pi(pi_lo.get(), MPFR_RNDD);
  mpfr_const_pi(pi_hi.get(), MPFR_RNDU);
  const double offset = is_cos ? 0.0 : 0.5;
  const double pi_d = mpfr_get_d(pi_lo.get(), MPFR_RNDN);
  const long k0 = static_cast<long>(std::floor(mpfr_get_d(lo.get(), MPFR_RNDD) / pi_d - offset)) - 1;
  const long k1 = static_cast<long>(std::ceil(mpfr_get_d(hi.get(), MPFR_RNDU) / pi_d - offset)) + 1;
  MpfrNum c_lo(prec), c_hi(prec), factor(prec);
  for (long k = k0; k <= k1; ++k) {
    mpfr_set_si(factor.get(), 2 * k + (is_cos ? 0 : 1), MPFR_RNDN);
    mpfr_div_2ui(factor.get(), factor.get(), 1, MPFR_RNDN);  // exact: k + offset
    if (mpfr_sgn(factor.get()) >= 0) {
      mpfr_mul(c_lo.get(), factor.get(), pi_lo.get(), MPFR_RNDD);
      mpfr_mul(c_hi.get(), factor.get(), pi_hi.get(), MPFR_RNDU);
    } else {
      mpfr_mul(c_lo.get(), factor.get(), pi_hi.get(), MPFR_RNDD);
      mpfr_mul(c_hi.get(), factor.get(), pi_lo.get(), MPFR_RNDU);
    }
    if (mpfr_cmp(c_hi.get(), lo.get()) < 0 || mpfr_cmp(c_lo.get(), hi.get()) > 0) continue;
    if (k % 2 == 0) high = one;
    else low = minus_one;
  }
  if (mpfr_cmp(low.get(), minus_one.get()) < 0) low = minus_one;
  if (mpfr_cmp(high.get(), one.get()) > 0) high = one;
  return Ball::from_endpoints(low, high, prec);
}

/// Reduces the midpoint modulo 1 (exact), then evaluates at 2 pi x.
Ball trig2pi(const Ball& x, bool is_cos) {
  const mpfr_prec_t prec = x.prec();
  MpfrNum m(prec + 2), n(prec + 2);
  mpfr_round(n.get(), x.mid().get());
  mpfr_sub(m.get(), x.mid().get(), n.get(), MPFR_RNDN);  // exact: |m| <= 1/2
  MpfrNum mm(prec);
  const int t = mpfr_set(mm.get(), m.get(), MPFR_RNDN);
  MpfrNum rad = x.rad();
  add_rounding(rad, mm, t);
  const Ball reduced(mm, rad);
  return trig(ball_from_rational(2, prec) * ball_pi(prec) * reduced, is_cos);
}

}  // namespace

Ball::Ball(mpfr_prec_t prec) : mid_(prec), rad_(rad_zero()) {}

Ball::Ball(const MpfrNum& mid, const MpfrNum& rad) : mid_(mid), rad_(kRad) {
  if (mpfr_nan_p(rad.get()) || mpfr_sgn(rad.get()) < 0) throw ParameterError("Ball: invalid radius");
  mpfr_set(rad_.get(), rad.get(), MPFR_RNDU);
}

bool Ball::finite() const { return mpfr_number_p(mid_.get()) && mpfr_number_p(rad_.get()); }

MpfrNum Ball::lower() const {
  MpfrNum r(prec());
  mpfr_sub(r.get(), mid_.get(), rad_.get(), MPFR_RNDD);
  return r;
}

MpfrNum Ball::upper() const {
  MpfrNum r(prec());
  mpfr_add(r.get(), mid_.get(), rad_.get(), MPFR_RNDU);
  return r;
}

bool Ball::positive() const { return finite() && mpfr_sgn(lower().get()) > 0; }

bool Ball::contains(const MpfrNum& x) const {
  return finite() && mpfr_cmp(lower().get(), x.get()) <= 0 && mpfr_cmp(x.get(), upper().get()) <= 0;
}

bool Ball::contains(const Rational& q) const {
  if (!finite()) return false;
  return mpfr_cmp_q(lower().get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(upper().get(), q.get_mpq_t()) >= 0;
}

std::string Ball::to_string(int digits) const {
  return "[" + mid_.to_string(digits) + " +/- " + rad_.to_string(3) + "]";
}

Ball Ball::from_endpoints(const MpfrNum& lo, const MpfrNum& hi, mpfr_prec_t prec) {
  if (mpfr_cmp(lo.get(), hi.get()) > 0) throw ParameterError("Ball::from_endpoints: lo > hi");
  MpfrNum mid(prec);
  mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  MpfrNum r1(kRad), r2(kRad);
  mpfr_sub(r1.get(), hi.get(), mid.get(), MPFR_RNDU);
  mpfr_sub(r2.get(), mid.get(), lo.get(), MPFR_RNDU);
  return Ball(mid, mpfr_cmp(r1.get(), r2.get()) > 0 ? r1 : r2);
}

Ball operator+(const Ball& a, const Ball& b) {
  MpfrNum mid(joint_prec(a, b));
  const int t = mpfr_add(mid.get(), a.mid().get(), b.mid().get(), MPFR_RNDN);
  MpfrNum rad = add_up(a.rad(), b.rad());
  add_rounding(rad, mid, t);
  return Ball(mid, rad);
}

Ball operator-(const Ball& a, const Ball& b) {
  MpfrNum mid(joint_prec(a, b));
  const int t = mpfr_sub(mid.get(), a.mid().get(), b.mid().get(), MPFR_RNDN);
  MpfrNum rad = add_up(a.rad(), b.rad());
  add_rounding(rad, mid, t);
  return Ball(mid, rad);
}

Ball operator-(const Ball& a) {
  MpfrNum mid(a.prec());
  mpfr_neg(mid.get(), a.mid().get(), MPFR_RNDN);
  return Ball(mid, a.rad());
}

Ball operator*(const Ball& a, const Ball& b) {
  MpfrNum mid(joint_prec(a, b));
  const int t = mpfr_mul(mid.get(), a.mid().get(), b.mid().get(), MPFR_RNDN);
  MpfrNum rad = add_up(add_up(mul_up(abs_up(a.mid()), b.rad()), mul_up(abs_up(b.mid()), a.rad())),
                       mul_up(a.rad(), b.rad()));
  add_rounding(rad, mid, t);
  return Ball(mid, rad);
}

Ball operator/(const Ball& a, const Ball& b) {
  const mpfr_prec_t prec = joint_prec(a, b);
  MpfrNum mid(prec);
  const int t = mpfr_div(mid.get(), a.mid().get(), b.mid().get(), MPFR_RNDN);
  const MpfrNum my = abs_down(b.mid());
  MpfrNum gap(kRad);
  mpfr_sub(gap.get(), my.get(), b.rad().get(), MPFR_RNDD);
  if (mpfr_sgn(gap.get()) <= 0 || !a.finite() || !b.finite()) return Ball(mid, rad_inf());
  MpfrNum num = add_up(mul_up(abs_up(a.mid()), b.rad()), mul_up(abs_up(b.mid()), a.rad()));
  MpfrNum den(kRad);
  mpfr_mul(den.get(), my.get(), gap.get(), MPFR_RNDD);
  MpfrNum rad(kRad);
  mpfr_div(rad.get(), num.get(), den.get(), MPFR_RNDU);
  add_rounding(rad, mid, t);
  return Ball(mid, rad);
}

Ball ball_from_rational(const Rational& q, mpfr_prec_t prec) {
  MpfrNum mid(prec);
  const int t = mpfr_set_q(mid.get(), q.get_mpq_t(), MPFR_RNDN);
  MpfrNum rad = rad_zero();
  add_rounding(rad, mid, t);
  return Ball(mid, rad);
}

Ball ball_hull(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
  if (lo > hi) throw ParameterError("ball_hull: lo > hi");
  MpfrNum mid(prec);
  const Rational m = (lo + hi) / 2;
  const Rational r = (hi - lo) / 2;
  const int t = mpfr_set_q(mid.get(), m.get_mpq_t(), MPFR_RNDN);
  MpfrNum rad(kRad);
  mpfr_set_q(rad.get(), r.get_mpq_t(), MPFR_RNDU);
  add_rounding(rad, mid, t);
  return Ball(mid, rad);
}

Ball ball_pi(mpfr_prec_t prec) {
  MpfrNum lo(prec), hi(prec);
  mpfr_const_pi(lo.get(), MPFR_RNDD);
  mpfr_const_pi(hi.get(), MPFR_RNDU);
  return Ball::from_endpoints(lo, hi, prec);
}

Ball ball_sqrt(const Rational& q, mpfr_prec_t prec) {
  if (sgn(q) < 0) throw ParameterError("ball_sqrt: negative argument");
  MpfrNum lo(prec), hi(prec);
  mpfr_set_q(lo.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi.get(), q.get_mpq_t(), MPFR_RNDU);
  mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_sqrt(hi.get(), hi.get(), MPFR_RNDU);
  return Ball::from_endpoints(lo, hi, prec);
}

Ball cos(const Ball& x) { return trig(x, true); }
Ball sin(const Ball& x) { return trig(x, false); }
Ball cos2pi(const Ball& x) { return trig2pi(x, true); }
Ball sin2pi(const Ball& x) { return trig2pi(x, false); }

}  // namespace spectra_cert
