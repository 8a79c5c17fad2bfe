#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "spectra_cert/ball.hpp"
#include "spectra_cert/errors.hpp"
#include "spectra_cert/interval_cert.hpp"
#include "spectra_cert/quadrature.hpp"

using namespace spectra_cert;

namespace {

constexpr mpfr_prec_t kPrec = 256;
constexpr mpfr_prec_t kHigh = 4 * kPrec;

/// Reference value computed directly with MPFR at four times the working precision.
template <class F>
MpfrNum reference(const Rational& q, F&& fn) {
  MpfrNum x = MpfrNum::from_rational(q, kHigh, MPFR_RNDN);
  MpfrNum out(kHigh);
  fn(out.get(), x.get());
  return out;
}

void two_pi_times(mpfr_ptr out, mpfr_srcptr x) {
  mpfr_const_pi(out, MPFR_RNDN);
  mpfr_mul(out, out, x, MPFR_RNDN);
  mpfr_mul_2ui(out, out, 1, MPFR_RNDN);
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-100000, 100000), den(1, 9973);
  return ratio(num(rng), den(rng));
}

double rad_of(const Ball& b) { return b.rad().to_double(MPFR_RNDU); }

bool within(const Ball& child, const Ball& parent) {
  MpfrNum slack(kPrec), lo(kPrec), hi(kPrec);
  mpfr_mul_2ui(slack.get(), parent.rad().get(), 1, MPFR_RNDU);
  mpfr_sub(lo.get(), parent.lower().get(), slack.get(), MPFR_RNDD);
  mpfr_add(hi.get(), parent.upper().get(), slack.get(), MPFR_RNDU);
  return mpfr_cmp(child.lower().get(), lo.get()) >= 0 && mpfr_cmp(child.upper().get(), hi.get()) <= 0;
}

/// Quadrature oracle for D_p(rho): on each piece between breakpoints 1/6 and k/p
/// the weight 1{u < 1/6} + u - {p u} is affine, so integrate it piecewise.
double d_strip_quadrature(int p, double rho) {
  const double pi = std::numbers::pi;
  const double c = std::cos(2 * pi * rho);
  std::vector<double> br{0.0, 1.0 / 6};
  for (int k = 1; k < p; ++k) br.push_back(static_cast<double>(k) / p);
  std::sort(br.begin(), br.end());
  br.erase(std::remove_if(br.begin(), br.end(), [&](double x) { return x >= rho; }), br.end());
  br.push_back(rho);
  double total = 0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    const double mid = 0.5 * (br[i] + br[i + 1]);
    const double ind = mid < 1.0 / 6 ? 1.0 : 0.0;
    const double k = std::floor(p * mid);
    auto g = [&](double u) { return 16 * pi * (ind + u - (p * u - k)) * std::sin(2 * pi * u) * (std::cos(2 * pi * u) - c); };
    total += adaptive_simpson(g, br[i], br[i + 1], 1e-13).value;
  }
  return total;
}

}  // namespace

TEST(Ball, Examples) {
  const Ball sixth = ball_from_rational(Rational(1, 6), kPrec);
  EXPECT_TRUE(sixth.contains(Rational(1, 6)));
  EXPECT_LE(mpfr_cmp_d(sixth.rad().get(), std::ldexp(1.0, -kPrec + 2)), 0);

  const Ball c = cos2pi(ball_from_rational(Rational(1, 4), 128));
  EXPECT_TRUE(c.contains(Rational(0)));
  EXPECT_LE(rad_of(c), 1e-15);

  const Ball pi = ball_pi(256);
  EXPECT_TRUE(pi.contains(reference(Rational(1), [](mpfr_ptr o, mpfr_srcptr) { mpfr_const_pi(o, MPFR_RNDN); })));
  EXPECT_LE(mpfr_cmp_d(pi.rad().get(), std::ldexp(1.0, -250)), 0);

  const Ball hull = ball_hull(Rational(1, 3), Rational(1, 2), kPrec);
  EXPECT_TRUE(hull.contains(Rational(1, 3)));
  EXPECT_TRUE(hull.contains(Rational(5, 12)));
  EXPECT_TRUE(hull.contains(Rational(1, 2)));
  EXPECT_FALSE(hull.contains(Rational(3, 5)));
  EXPECT_THROW(ball_hull(Rational(1), Rational(0)), ParameterError);
}

TEST(Ball, DivisionByBallContainingZeroIsUnbounded) {
  const Ball z = ball_hull(Rational(-1), Rational(1), kPrec);
  EXPECT_FALSE((ball_from_rational(Rational(1), kPrec) / z).finite());
}

TEST(Ball, EnclosureSoundness) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const Rational a = random_rational(rng), b = random_rational(rng);
    const Ball ba = ball_from_rational(a, kPrec), bb = ball_from_rational(b, kPrec);
    ASSERT_TRUE((ba + bb).contains(Rational(a + b)));
    ASSERT_TRUE((ba - bb).contains(Rational(a - b)));
    ASSERT_TRUE((ba * bb).contains(Rational(a * b)));
    if (sgn(b) != 0) ASSERT_TRUE((ba / bb).contains(Rational(a / b)));
    ASSERT_TRUE((-ba).contains(Rational(-a)));
    ASSERT_TRUE(cos2pi(ba).contains(reference(a, [](mpfr_ptr o, mpfr_srcptr x) {
      two_pi_times(o, x);
      mpfr_cos(o, o, MPFR_RNDN);
    }))) << a.get_str();
    ASSERT_TRUE(sin2pi(ba).contains(reference(a, [](mpfr_ptr o, mpfr_srcptr x) {
      two_pi_times(o, x);
      mpfr_sin(o, o, MPFR_RNDN);
    }))) << a.get_str();
    ASSERT_TRUE(cos(ba).contains(reference(a, [](mpfr_ptr o, mpfr_srcptr x) { mpfr_cos(o, x, MPFR_RNDN); })));
    ASSERT_TRUE(sin(ba).contains(reference(a, [](mpfr_ptr o, mpfr_srcptr x) { mpfr_sin(o, x, MPFR_RNDN); })));
    const Rational aa = abs(a);
    ASSERT_TRUE(ball_sqrt(aa, kPrec).contains(reference(aa, [](mpfr_ptr o, mpfr_srcptr x) { mpfr_sqrt(o, x, MPFR_RNDN); })));
  }
}

TEST(Ball, HullEnclosuresOfTrig) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const Rational lo = random_rational(rng) / 1000;
    const Rational hi = lo + ratio(1 + static_cast<long>(rng() % 50), 1000);
    const Ball c = cos2pi(ball_hull(lo, hi, kPrec));
    for (int s = 0; s <= 8; ++s) {
      const Rational x = lo + (hi - lo) * ratio(s, 8);
      ASSERT_TRUE(c.contains(reference(x, [](mpfr_ptr o, mpfr_srcptr y) {
        two_pi_times(o, y);
        mpfr_cos(o, o, MPFR_RNDN);
      })));
    }
  }
}

TEST(DStrip, Examples) {
  const Ball d = d_strip(2, Rational(1, 6), Rational(1, 6), kPrec);
  EXPECT_TRUE(d.positive());
  EXPECT_NEAR(d.mid().to_double(), d_strip_quadrature(2, 1.0 / 6), 1e-9);
  const Ball z = d_strip(3, Rational(0), Rational(0), kPrec);
  EXPECT_TRUE(z.contains(Rational(0)));
  EXPECT_EQ(mpfr_sgn(z.rad().get()), 0);
  EXPECT_THROW(d_strip(2, Rational(1, 3), Rational(2, 3), kPrec), ParameterError);
  EXPECT_THROW(d_strip(4, Rational(1, 5), Rational(3, 10), kPrec), ParameterError);
  EXPECT_THROW(d_strip(7, Rational(1, 5), Rational(1, 5), kPrec), ParameterError);
}

TEST(DStrip, AgreesWithQuadrature) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 10; ++i) {
    const int p = 2 + static_cast<int>(rng() % 5);
    const Rational rho = Rational(1, 6) + ratio(static_cast<long>(rng() % 1000), 3000);
    const Ball d = d_strip(p, rho, rho, kPrec);
    EXPECT_NEAR(d.mid().to_double(), d_strip_quadrature(p, to_double(rho)), 1e-9) << p << " " << rho.get_str();
    EXPECT_LT(rad_of(d), 1e-30);
  }
}

TEST(KBox, Examples) {
  // Below 1/6 only the atom at 0 is active: K = 4 (1 - cos 2 pi rho)^2.
  const Rational rho(1, 12);
  const Ball k = k_box(2, 2, rho, rho, kPrec);
  const double expect = 4 * std::pow(1 - std::cos(2 * std::numbers::pi / 12), 2);
  EXPECT_NEAR(k.mid().to_double(), expect, 1e-14);
  // A newly active atom at lo contributes zero at rho = lo.
  const Ball at = k_box(2, 3, Rational(1, 3), Rational(1, 3), kPrec);
  const Ball before = k_box(2, 3, Rational(1, 3) - Rational(1, 1000000), Rational(1, 3) - Rational(1, 1000000), kPrec);
  EXPECT_NEAR(at.mid().to_double(), before.mid().to_double(), 1e-4);
  EXPECT_THROW(k_box(2, 2, Rational(1, 5), Rational(2, 5), kPrec), ParameterError);
  EXPECT_THROW(k_box(3, 2, Rational(1, 5), Rational(1, 5), kPrec), ParameterError);
}

TEST(Refinement, ChildrenInsideParent) {
  for (int p = 2; p <= 6; ++p) {
    const auto pieces = sub_intervals(strip_breakpoints(p), Rational(1, 6), Rational(1, 2));
    for (const auto& [lo, hi] : pieces) {
      const Rational mid = (lo + hi) / 2;
      const Ball parent = d_strip(p, lo, hi, kPrec);
      EXPECT_TRUE(within(d_strip(p, lo, mid, kPrec), parent));
      EXPECT_TRUE(within(d_strip(p, mid, hi, kPrec), parent));
    }
    for (int q = p; q <= 6; ++q)
      for (const auto& [lo, hi] : sub_intervals(box_breakpoints(p, q), Rational(1, 6), Rational(1, 2))) {
        const Rational mid = (lo + hi) / 2;
        const Ball parent = k_box(p, q, lo, hi, kPrec);
        EXPECT_TRUE(within(k_box(p, q, lo, mid, kPrec), parent));
        EXPECT_TRUE(within(k_box(p, q, mid, hi, kPrec), parent));
      }
  }
}

TEST(CertifyBisect, TrivialCases) {
  const std::vector<RationalBox> boxes{{Rational(0), Rational(1)}, {Rational(2), Rational(3)}};
  const Ball zero = ball_from_rational(Rational(0), kPrec);
  const CertResult one = certify_bisect(
      [](const Rational&, const Rational&) { return ball_from_rational(Rational(1), kPrec); }, boxes, zero);
  EXPECT_TRUE(one.passed);
  EXPECT_EQ(one.boxes, 2);
  EXPECT_EQ(one.max_depth, 0);
  EXPECT_GT(mpfr_cmp_d(one.min_margin.get(), 0.0), 0);
  EXPECT_THROW(certify_bisect([](const Rational&, const Rational&) { return ball_from_rational(Rational(-1), kPrec); },
                              boxes, zero, Rational(1, 10000), 5),
               CertificationFailure);
}

TEST(CertifyBisect, SplitsUntilWidthSuffices) {
  // f(box) = hull of x over the box; needs x > 1/2 + target everywhere, which holds on [3/4, 1].
  const auto f = [](const Rational& lo, const Rational& hi) { return ball_hull(lo - (hi - lo) * 4, hi, kPrec); };
  const CertResult r =
      certify_bisect(f, {{Rational(3, 4), Rational(1)}}, ball_from_rational(Rational(1, 2), kPrec), Rational(1, 100));
  EXPECT_TRUE(r.passed);
  EXPECT_GT(r.boxes, 1);
  EXPECT_GT(r.max_depth, 0);
}

TEST(AppendixA, FullSuite) {
  const AppendixAReport rep = run_appendix_a(256);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.strips.size(), 5u);
  EXPECT_EQ(rep.boxes.size(), 15u);
  EXPECT_LE(rep.max_depth(), 20);
  for (const auto& fam : rep.strips) EXPECT_GT(mpfr_sgn(fam.result.min_margin.get()), 0) << fam.log_line();
  for (const auto& fam : rep.boxes) EXPECT_GT(mpfr_sgn(fam.result.min_margin.get()), 0) << fam.log_line();
  int family_lines = 0;
  for (const auto& line : rep.log_lines()) family_lines += line.find("boxes=") != std::string::npos;
  EXPECT_EQ(family_lines, 20);
  EXPECT_EQ(rep.strips.front().log_line().rfind("p=2: boxes=", 0), 0u);
  EXPECT_EQ(rep.boxes.front().log_line().rfind("p=2, q=2: boxes=", 0), 0u);
}

TEST(AppendixA, LowPrecisionRejected) { EXPECT_THROW(run_appendix_a(32), ParameterError); }
