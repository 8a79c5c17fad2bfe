#pragma once

#include <mpfr.h>

#include <string>

#include "spectra_cert/rational.hpp"

namespace spectra_cert {

/// Owning wrapper around mpfr_t.
class MpfrNum {
 public:
  explicit MpfrNum(mpfr_prec_t prec = 256) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
  MpfrNum(const MpfrNum& o) {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_set(x_, o.x_, MPFR_RNDN);
  }
  MpfrNum& operator=(const MpfrNum& o) {
    if (this != &o) {
      mpfr_set_prec(x_, mpfr_get_prec(o.x_));
      mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    return *this;
  }
  MpfrNum(MpfrNum&& o) noexcept {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_swap(x_, o.x_);
  }
  MpfrNum& operator=(MpfrNum&& o) noexcept {
    mpfr_swap(x_, o.x_);
    return *this;
  }
  ~MpfrNum() { mpfr_clear(x_); }

  mpfr_ptr get() { return x_; }
  mpfr_srcptr get() const { return x_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(x_); }
  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(x_, rnd); }
  std::string to_string(int digits = 25) const;

  static MpfrNum from_rational(const Rational& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    MpfrNum r(prec);
    mpfr_set_q(r.x_, q.get_mpq_t(), rnd);
    return r;
  }
  static MpfrNum from_double(double d, mpfr_prec_t prec) {
    MpfrNum r(prec);
    mpfr_set_d(r.x_, d, MPFR_RNDN);
    return r;
  }

 private:
  mpfr_t x_;
};

}  // namespace spectra_cert
