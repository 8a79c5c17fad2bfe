#include <gtest/gtest.h>

#include "spectra_cert/bernstein.hpp"
#include "spectra_cert/errors.hpp"
#include "spectra_cert/exact_linalg.hpp"

using namespace spectra_cert;

namespace {

RatPoly poly(std::initializer_list<Rational> c) { return RatPoly(std::vector<Rational>(c)); }

Rational binom(int n, int k) {
  Rational r(1);
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Rational rat_pow(const Rational& x, int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

/// Oracle: evaluate the Bernstein form at x and compare with P at the mapped point.
void expect_bernstein_reproduces(const RatPoly& p, const Rational& a, const Rational& b, int m) {
  const auto c = bernstein_coeffs(p, a, b, m);
  ASSERT_EQ(static_cast<int>(c.size()), m + 1);
  for (int s = 0; s <= 7; ++s) {
    const Rational x = ratio(s, 7);
    Rational sum(0);
    for (int k = 0; k <= m; ++k) sum += c[k] * binom(m, k) * rat_pow(x, k) * rat_pow(1 - x, m - k);
    ASSERT_EQ(sum, p.eval(Rational((1 - x) * a + x * b)));
  }
}

/// Oracle for the tridiagonal model: direct rational matrix powers at a fixed theta.
Rational moment_direct(int n, int j, const Rational& theta) {
  RatMatrix t(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) {
    t[i][i] = i + 1 < n ? 2 : 1;
    if (i + 1 < n) t[i][i + 1] = t[i + 1][i] = 1;
  }
  std::vector<Rational> b(n, Rational(0));
  b[0] += 1;
  b[n - 1] += 1;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) t[r][c] += theta * b[r] * b[c];
  std::vector<Rational> v = b;
  for (int k = 0; k < j; ++k) v = rat_mat_vec(t, v);
  return rat_dot(b, v);
}

const EnvelopeRow& row_named(const std::vector<EnvelopeRow>& rows, const std::string& name) {
  for (const auto& r : rows)
    if (r.name == name) return r;
  throw std::runtime_error("missing row " + name);
}

}  // namespace

TEST(BernsteinCoeffs, Examples) {
  EXPECT_EQ(bernstein_coeffs(poly({1}), Rational(-2), Rational(5), 3), std::vector<Rational>(4, Rational(1)));
  EXPECT_EQ(bernstein_coeffs(RatPoly::x(), Rational(0), Rational(1), 1), (std::vector<Rational>{0, 1}));
  const auto g0 = bernstein_coeffs(poly({Rational(7, 2), Rational(-2)}), Rational(0), Rational(3, 2), 1);
  EXPECT_EQ(g0, (std::vector<Rational>{Rational(7, 2), Rational(1, 2)}));
  EXPECT_THROW(bernstein_coeffs(poly({1, 1, 1}), Rational(0), Rational(1), 1), ParameterError);
  EXPECT_THROW(bernstein_coeffs(poly({1}), Rational(1), Rational(1), 1), ParameterError);
}

TEST(BernsteinCoeffs, ReproducesPolynomial) {
  const RatPoly p = poly({Rational(-3), Rational(1, 2), Rational(0), Rational(7), Rational(-5, 3)});
  for (int m = 4; m <= 7; ++m) expect_bernstein_reproduces(p, Rational(-1, 3), Rational(9, 4), m);
  expect_bernstein_reproduces(RatPoly::x(), Rational(2), Rational(3), 5);
}

TEST(CertifyNonneg, Examples) {
  const RatPoly t = RatPoly::x();
  const RatPoly g2 = Rational(320) * t * t * t * (poly({Rational(7, 2)}) - t) * (poly({Rational(7, 2)}) - t) - poly({1701});
  const BernsteinCertificate c = certify_nonneg(g2, Rational(2), Rational(3), 5, Rational(459));
  EXPECT_TRUE(c.passed);
  EXPECT_GE(c.min_coeff, Rational(459));
  EXPECT_EQ(c.degree, 5);

  const BernsteinCertificate neg = certify_nonneg(poly({-1}), Rational(0), Rational(1), -1, Rational(0));
  EXPECT_FALSE(neg.passed);
  EXPECT_EQ(neg.min_coeff, Rational(-1));

  const BernsteinCertificate strict = certify_nonneg(poly({0}), Rational(0), Rational(1), 2, Rational(0), "z", true);
  EXPECT_FALSE(strict.passed);
}

TEST(CertifyNonneg, EnvelopeRowsFromTable) {
  const auto rows = envelope_rows();
  const auto& f1 = row_named(rows, "F1");
  EXPECT_EQ(f1.alpha, Rational(3));
  EXPECT_EQ(f1.beta, Rational(72, 19));
  const auto c1 = certify_nonneg(f1.poly, f1.alpha, f1.beta, -1, Rational(Integer("100000000000000000000")));
  EXPECT_TRUE(c1.passed);
  const auto& f2c = row_named(rows, "F2c");
  EXPECT_EQ(f2c.alpha, Rational(75, 19));
  EXPECT_EQ(f2c.beta, Rational(151, 38));
  EXPECT_TRUE(certify_nonneg(f2c.poly, f2c.alpha, f2c.beta, -1, Rational(1000000000)).passed);
  const auto& lg5 = row_named(rows, "LG5");
  EXPECT_EQ(lg5.alpha, Rational(58, 15));
  EXPECT_EQ(lg5.beta, Rational(4));
  EXPECT_TRUE(certify_nonneg(lg5.poly, lg5.alpha, lg5.beta, -1, Rational(0), "LG5", true).passed);
}

TEST(CertifyNonneg, SamplePointsAreNonnegative) {
  for (const auto& r : envelope_rows())
    for (int s = 0; s <= 24; ++s) {
      const Rational x = r.alpha + (r.beta - r.alpha) * ratio(s, 24);
      ASSERT_GE(r.poly.eval(x), Rational(0)) << r.name << " at " << x.get_str();
    }
}

TEST(CertifyNonneg, DegreeElevationPreservesVerdict) {
  for (const auto& r : envelope_rows()) {
    const int m = r.poly.degree();
    const auto a = certify_nonneg(r.poly, r.alpha, r.beta, m, Rational(0));
    const auto b = certify_nonneg(r.poly, r.alpha, r.beta, m + 1, Rational(0));
    if (a.min_coeff >= 0) EXPECT_GE(b.min_coeff, Rational(0)) << r.name;
    EXPECT_GE(b.min_coeff, a.min_coeff) << r.name;
  }
}

TEST(MomentPoly, Examples) {
  EXPECT_EQ(moment_poly(7, 1), poly({3, 4}));
  EXPECT_EQ(moment_poly(7, 5), poly({174, 387, 507, 440, 240, 64}));
  for (int n = 3; n <= 6; ++n) EXPECT_TRUE(nonnegative_coefficients(moment_poly(n, 5) - moment_poly(7, 5))) << n;
  EXPECT_THROW(moment_poly(2, 1), ParameterError);
  EXPECT_THROW(moment_poly(7, 6), ParameterError);
}

TEST(MomentPoly, AgreesWithDirectPowers) {
  for (int n = 3; n <= 10; ++n)
    for (int j = 0; j <= 5; ++j) {
      const RatPoly q = moment_poly(n, j);
      ASSERT_TRUE(nonnegative_coefficients(q));
      for (const auto& c : q.coeffs()) ASSERT_EQ(c.get_den(), 1);
      for (const Rational& th : {Rational(0), Rational(1, 3), Rational(2), Rational(-5, 7)})
        ASSERT_EQ(q.eval(th), moment_direct(n, j, th)) << n << "," << j;
    }
}

TEST(LineModel, Examples) {
  EXPECT_EQ(line_model_poly(6), poly({249, 512, 603, 472, 240, 64}));
  EXPECT_EQ(line_model_target(), poly({249, 512, 603, 472, 240, 64}));
  for (int l = 2; l <= 5; ++l) EXPECT_TRUE(nonnegative_coefficients(line_model_poly(l) - line_model_target())) << l;
  EXPECT_THROW(line_model_poly(1), ParameterError);
  EXPECT_THROW(line_model_poly(7), ParameterError);
}

TEST(AppendixC, FullRun) {
  const AppendixCReport r = run_appendix_c();
  EXPECT_TRUE(r.passed()) << r.first_failure();
  EXPECT_EQ(r.first_failure(), "");
  EXPECT_EQ(r.certificates.size(), 14u);
  for (const auto& c : r.certificates) {
    EXPECT_TRUE(c.passed) << c.poly_name;
    EXPECT_EQ(static_cast<int>(c.coeffs.size()), c.degree + 1);
  }
  for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(AppendixC, TridiagonalEndpointValues) {
  // A(3) = 1245 and B(3) = 3677 for A = 1812 - 7t^4, B = 4001 - 4t^4.
  const RatPoly t4 = pow(RatPoly::x(), 4);
  EXPECT_EQ((poly({1812}) - Rational(7) * t4).eval(Rational(3)), Rational(1245));
  EXPECT_EQ((poly({4001}) - Rational(4) * t4).eval(Rational(3)), Rational(3677));
  bool found = false;
  for (const auto& c : run_appendix_c().checks) found = found || c.name.find("B(3) = 3677") != std::string::npos;
  EXPECT_TRUE(found);
}
