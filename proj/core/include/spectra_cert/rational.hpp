#pragma once

#include <gmpxx.h>

#include <string>

namespace spectra_cert {

using Rational = mpq_class;
using Integer = mpz_class;

/// Canonical "p/q" (or "p") decimal form.
std::string to_string(const Rational& q);

/// Parses "p", "p/q" or a finite decimal such as "2.5".
Rational parse_rational(const std::string& s);

Integer binomial(unsigned long n, unsigned long k);

Rational pow(const Rational& q, unsigned long e);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace spectra_cert

namespace spectra_cert {

/// sqrt(q) rounded to nearest long double (relative error <= 2^-64).
long double sqrt_to_ld(const Rational& q);
/// q rounded to nearest long double.
long double to_ld(const Rational& q);

}  // namespace spectra_cert

namespace spectra_cert {

/// num / den in canonical form.
inline Rational ratio(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace spectra_cert
