#pragma once

#include <string>
#include <vector>

#include "spectra_cert/bernstein.hpp"

namespace spectra_cert {

/// coeff * I_[u,v](t).
struct IntervalTerm {
  Rational coeff;
  Rational u;
  Rational v;
};

/// sum of coeff * I_[u,v](t) as an exact piecewise polynomial in t.
struct PiecewiseI {
  std::vector<IntervalTerm> terms;
  /// Polynomial agreeing with the sum on a piece free of term endpoints.
  RatPoly piece(const Rational& lo, const Rational& hi) const;
  Rational eval(const Rational& t) const;
  /// Largest right endpoint; the sum vanishes beyond it.
  Rational support_end() const;
};

struct DominationCase {
  int d = 0;
  int r = 0;
  bool borderline = false;
  std::vector<BernsteinCertificate> pieces;
  std::vector<Rational> breakpoints;
  std::vector<Rational> exact_zeros;  // breakpoints t < 4 where H(t) == 0 exactly
  bool passed = false;
};

/// H = I_[a,B] - r I_[3,4], a = (d - r + 1)/d, B = a + d.
PiecewiseI domination_main(int d, int r);
/// H_d = I_[a,B] - I_[2,4] - (d - 3) I_[3,4], a = 3/d, B = a + d.
PiecewiseI domination_borderline(int d);

/// Certifies f >= 0 on [0, inf): pieces split at every term endpoint and at
/// interior critical points, each checked with exact Bernstein coefficients.
DominationCase certify_piecewise_nonneg(const PiecewiseI& f);

struct DominationSummary {
  std::vector<DominationCase> cases;
  std::vector<NamedCheck> checks;  // closed-form values at the extremal points
  bool passed() const;
};

DominationSummary run_interval_domination(int d_max);

}  // namespace spectra_cert
