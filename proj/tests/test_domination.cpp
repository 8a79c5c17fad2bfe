#include <algorithm>

#include <gtest/gtest.h>

#include "spectra_cert/domination.hpp"
#include "spectra_cert/spectral.hpp"

using namespace spectra_cert;

namespace {

/// Oracle: I_[u,v](t) = int_u^v (x - t)_+ dx = ((v - t)_+^2 - (u - t)_+^2) / 2.
Rational i_direct(const Rational& u, const Rational& v, const Rational& t) {
  const Rational a = v > t ? Rational(v - t) : Rational(0);
  const Rational b = u > t ? Rational(u - t) : Rational(0);
  return (a * a - b * b) / 2;
}

Rational h_direct(int d, int r, const Rational& t) {
  const Rational a = ratio(d - r + 1, d);
  return i_direct(a, a + d, t) - r * i_direct(Rational(3), Rational(4), t);
}

Rational h_borderline_direct(int d, const Rational& t) {
  const Rational a = ratio(3, d);
  return i_direct(a, a + d, t) - i_direct(Rational(2), Rational(4), t) - (d - 3) * i_direct(Rational(3), Rational(4), t);
}

}  // namespace

TEST(Domination, Examples) {
  EXPECT_EQ(domination_main(3, 1).eval(Rational(0)), Rational(4));
  EXPECT_EQ(domination_borderline(4).eval(Rational(3, 4) + 1), Rational(1, 4));
  for (int d = 4; d <= 20; ++d) {
    const Rational a = ratio(3, d);
    EXPECT_EQ(domination_borderline(d).eval(a + 1), ratio((d - 3) * (d * d - 4 * d + 2), 2 * d)) << d;
  }
}

TEST(Domination, ExactZeroAtUnitDeficit) {
  // r = 1 gives a = 1 and H(a + 2) = 0 when d = 3.
  const DominationCase c = certify_piecewise_nonneg(domination_main(3, 1));
  EXPECT_TRUE(c.passed);
  EXPECT_NE(std::find(c.exact_zeros.begin(), c.exact_zeros.end(), Rational(3)), c.exact_zeros.end());
  EXPECT_EQ(h_direct(3, 1, Rational(3)), Rational(0));
}

TEST(Domination, EvalAgreesWithClosedForm) {
  for (int d = 3; d <= 12; ++d) {
    for (int r = 1; r + 2 <= d; ++r) {
      const PiecewiseI h = domination_main(d, r);
      for (int k = 0; k <= 60; ++k) {
        const Rational t = ratio(k, 4);
        ASSERT_EQ(h.eval(t), h_direct(d, r, t)) << d << "," << r << " t=" << t.get_str();
      }
    }
    if (d >= 4) {
      const PiecewiseI hb = domination_borderline(d);
      for (int k = 0; k <= 60; ++k) ASSERT_EQ(hb.eval(ratio(k, 4)), h_borderline_direct(d, ratio(k, 4)));
    }
  }
}

TEST(Domination, AgreesWithSpectralIntervalIntegral) {
  const PiecewiseI h = domination_main(5, 2);
  for (int k = 0; k <= 30; ++k) {
    const double t = k / 5.0;
    const double direct = i_of(0.8, 5.8, t) - 2 * i_of(3.0, 4.0, t);
    EXPECT_NEAR(to_double(h.eval(ratio(k, 5))), direct, 1e-12);
  }
}

TEST(Domination, PiecesMatchEvaluation) {
  const PiecewiseI h = domination_main(7, 3);
  const DominationCase c = certify_piecewise_nonneg(h);
  ASSERT_GE(c.breakpoints.size(), 2u);
  for (std::size_t i = 0; i + 1 < c.breakpoints.size(); ++i) {
    const Rational lo = c.breakpoints[i], hi = c.breakpoints[i + 1];
    const RatPoly p = h.piece(lo, hi);
    for (int s = 0; s <= 4; ++s) {
      const Rational t = lo + (hi - lo) * ratio(s, 4);
      ASSERT_EQ(p.eval(t), h.eval(t));
    }
  }
  EXPECT_EQ(h.support_end(), ratio(5, 7) + 7);
}

TEST(Domination, NegativeFunctionFails) {
  const PiecewiseI bad{{IntervalTerm{Rational(-1), Rational(0), Rational(1)}}};
  EXPECT_FALSE(certify_piecewise_nonneg(bad).passed);
  const PiecewiseI dip{{IntervalTerm{Rational(1), Rational(0), Rational(4)}, IntervalTerm{Rational(-2), Rational(3), Rational(4)}}};
  // I_[0,4](t) - 2 I_[3,4](t) at t = 3.5 is 1/8 - 1/4 < 0.
  EXPECT_LT(dip.eval(Rational(7, 2)), Rational(0));
  EXPECT_FALSE(certify_piecewise_nonneg(dip).passed);
}

TEST(Domination, FullRangeUpTo40) {
  const DominationSummary s = run_interval_domination(40);
  EXPECT_TRUE(s.passed());
  int main_cases = 0, borderline = 0;
  for (const auto& c : s.cases) {
    EXPECT_TRUE(c.passed) << c.d << "," << c.r;
    (c.borderline ? borderline : main_cases) += 1;
    for (const auto& cert : c.pieces) EXPECT_GE(cert.min_coeff, Rational(0));
  }
  // r >= 1 and r + 2 <= d <= 40.
  int expect_main = 0;
  for (int d = 3; d <= 40; ++d) expect_main += d - 2;
  EXPECT_EQ(main_cases, expect_main);
  EXPECT_EQ(borderline, 38);  // d = 3..40
  for (const auto& ch : s.checks) EXPECT_TRUE(ch.passed) << ch.name << ": " << ch.detail;
}
