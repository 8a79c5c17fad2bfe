#include "spectra_cert/rational.hpp"

#include "spectra_cert/errors.hpp"

namespace spectra_cert {

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw ParseError("bad rational literal '" + s + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  const auto frac_len = s.size() - dot - 1;
  Integer num;
  if (digits.empty() || digits == "-" || num.set_str(digits, 10) != 0)
    throw ParseError("bad decimal literal '" + s + "'");
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Rational pow(const Rational& q, unsigned long e) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace spectra_cert

#include <mpfr.h>

namespace spectra_cert {

long double sqrt_to_ld(const Rational& q) {
  mpfr_t x;
  mpfr_init2(x, 128);
  mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDN);
  mpfr_sqrt(x, x, MPFR_RNDN);
  long double r = mpfr_get_ld(x, MPFR_RNDN);
  mpfr_clear(x);
  return r;
}

long double to_ld(const Rational& q) {
  mpfr_t x;
  mpfr_init2(x, 128);
  mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDN);
  long double r = mpfr_get_ld(x, MPFR_RNDN);
  mpfr_clear(x);
  return r;
}

}  // namespace spectra_cert
