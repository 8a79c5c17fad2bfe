#pragma once

#include <optional>
#include <vector>

#include "spectra_cert/exact_linalg.hpp"
#include "spectra_cert/mpfr_num.hpp"
#include "spectra_cert/poly.hpp"

namespace spectra_cert {

/// Closed interval [lo, hi] holding exactly one distinct root of multiplicity `multiplicity`.
struct RootInterval {
  Rational lo;
  Rational hi;
  int multiplicity = 1;
};

/// All real roots of p, isolated to width <= width and sorted ascending.
std::vector<RootInterval> isolate_real_roots(const RatPoly& p, const Rational& width);

/// Exact spectrum of a rational symmetric matrix, held as isolating intervals of
/// the roots of its characteristic polynomial and refinable on demand.
class HpSpectrum {
 public:
  explicit HpSpectrum(const RatMatrix& m);
  /// Bisects every root interval to width <= 2^-bits.
  void refine(int bits);
  /// Collapses the interval of any root equal to x onto x.
  void pin(const Rational& x);
  int bits() const { return bits_; }
  const std::vector<RootInterval>& roots() const { return roots_; }
  int size() const;

 private:
  RatPoly charpoly_;
  std::vector<std::vector<RatPoly>> chains_;  // per square-free factor
  std::vector<int> factor_of_root_;
  std::vector<RootInterval> roots_;
  int bits_ = 0;
};

enum class HpFunction {
  abs_power,   // |lambda|^param
  plus_square  // (lambda - param)_+^2
};

struct HpEnclosure {
  MpfrNum lo;
  MpfrNum hi;
};

/// Directed-rounding enclosure of sum F(lambda) over the spectrum.
HpEnclosure hp_sum(const HpSpectrum& s, HpFunction f, double param, mpfr_prec_t prec);

struct HpComparison {
  int sign = 0;   // certified sign of sum_a - sum_b; 0 when unresolved or equal
  bool exact_equal = false;  // sums certified equal
  bool same_spectrum = false;  // charpolys equal up to powers of x
  int bits = 0;   // isolation width used, as -log2
  double lo = 0;  // enclosure of the difference
  double hi = 0;
};

/// Certified sign of sum F(spec(a)) - sum F(spec(b)), doubling the isolation
/// precision from 64 up to max_bits. Both F vanish at 0 for param >= 0, so
/// matrices with the same nonzero spectrum compare as exactly equal.
HpComparison hp_compare(const RatMatrix& a, const RatMatrix& b, HpFunction f, double param, int max_bits = 1024);

/// sum (lambda - t)_+^2 over the spectrum of a rational symmetric matrix, in
/// exact arithmetic. Available when every square-free factor of the
/// characteristic polynomial, after splitting off its roots at t, at 0 and at
/// small integers, has its remaining roots on one side of t or symmetric about
/// t; the sum over such a factor follows from its power sums.
std::optional<Rational> exact_stoploss(const RatMatrix& m, const Rational& t);

}  // namespace spectra_cert
