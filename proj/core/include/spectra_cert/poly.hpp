#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "spectra_cert/rational.hpp"

namespace spectra_cert {

template <class R>
class Poly;

namespace detail {
inline bool ring_is_zero(const Rational& q) { return sgn(q) == 0; }
template <class R>
bool ring_is_zero(const Poly<R>& p) { return p.is_zero(); }
}  // namespace detail

/// Dense univariate polynomial, constant term first, never stores a zero
/// leading coefficient.
template <class R>
class Poly {
 public:
  Poly() = default;
  Poly(const R& constant) : c_{constant} { trim(); }
  Poly(int constant) : Poly(R(constant)) {}
  explicit Poly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly x() { return monomial(1, R(1)); }
  static Poly monomial(std::size_t k, const R& a) {
    std::vector<R> v(k + 1, R(0));
    v[k] = a;
    return Poly(std::move(v));
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<R>& coeffs() const { return c_; }

  R coeff(std::size_t k) const { return k < c_.size() ? c_[k] : R(0); }
  const R& leading() const { return c_.back(); }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<R> r(a.c_.size() + b.c_.size() - 1, R(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::ring_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += R(a.c_[i] * b.c_[j]);
    }
    return Poly(std::move(r));
  }
  friend Poly operator*(const R& s, Poly a) {
    for (auto& v : a.c_) v = R(s * v);
    a.trim();
    return a;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Horner evaluation; T must accept multiplication by R.
  template <class T>
  T eval(const T& x) const {
    T acc = T(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = T(acc * x + T(c_[i]));
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<R> r(c_.size() - 1, R(0));
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = R(c_[i] * static_cast<long>(i));
    return Poly(std::move(r));
  }

  /// P(a + b*x).
  Poly compose_affine(const R& a, const R& b) const {
    Poly lin(std::vector<R>{a, b});
    Poly acc;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * lin + Poly(c_[i]);
    return acc;
  }

  /// P(Q(x)).
  Poly compose(const Poly& q) const {
    Poly acc;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * q + Poly(c_[i]);
    return acc;
  }

 private:
  void trim() {
    while (!c_.empty() && detail::ring_is_zero(c_.back())) c_.pop_back();
  }
  std::vector<R> c_;
};

using RatPoly = Poly<Rational>;
/// Polynomial in x whose coefficients are polynomials in theta.
using RatPoly2 = Poly<RatPoly>;

RatPoly pow(const RatPoly& p, unsigned e);

/// Division with remainder; b must be nonzero.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
RatPoly gcd(RatPoly a, RatPoly b);
RatPoly monic(const RatPoly& p);

/// Yun square-free factorisation: returns f_1, f_2, ... with p = c * prod f_i^i.
std::vector<RatPoly> square_free_factors(const RatPoly& p);
/// Product of the distinct irreducible factors (monic).
RatPoly square_free_part(const RatPoly& p);

/// Sturm chain of a square-free polynomial.
std::vector<RatPoly> sturm_chain(const RatPoly& p);
/// Number of distinct real roots in (a, b] using a precomputed chain.
int sturm_count(const std::vector<RatPoly>& chain, const Rational& a, const Rational& b);
/// Number of distinct real roots in (-inf, b].
int sturm_count_below(const std::vector<RatPoly>& chain, const Rational& b);
/// Number of distinct real roots in (a, +inf).
int sturm_count_above(const std::vector<RatPoly>& chain, const Rational& a);

/// True iff every root of p is real and strictly negative (with multiplicity).
bool real_rooted_negative(const RatPoly& p);

bool nonnegative_coefficients(const RatPoly& p);
/// Coefficient-wise a <= b.
bool coefficientwise_leq(const RatPoly& a, const RatPoly& b);

/// Coefficients as "p/q" strings, constant first.
std::vector<std::string> coeff_strings(const RatPoly& p);
std::string to_string(const RatPoly& p, const std::string& var = "x");

/// Specialise theta in a bivariate polynomial.
RatPoly eval_theta(const RatPoly2& p, const Rational& theta);
/// d/dtheta applied coefficient-wise.
RatPoly2 theta_derivative(const RatPoly2& p);
/// Embeds a polynomial in x as a theta-constant bivariate polynomial.
RatPoly2 lift(const RatPoly& p);

}  // namespace spectra_cert
