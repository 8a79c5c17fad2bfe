#include <random>

#include <gtest/gtest.h>

#include "spectra_cert/enumerate.hpp"
#include "spectra_cert/errors.hpp"
#include "spectra_cert/exact_linalg.hpp"
#include "spectra_cert/graph.hpp"
#include "spectra_cert/hp_spectrum.hpp"
#include "spectra_cert/poly.hpp"
#include "spectra_cert/spectral.hpp"

using namespace spectra_cert;

namespace {

RatPoly poly(std::initializer_list<int> c) {
  std::vector<Rational> v;
  for (int x : c) v.emplace_back(x);
  return RatPoly(v);
}

RatMatrix mat(std::initializer_list<std::initializer_list<int>> rows) {
  RatMatrix m;
  for (const auto& r : rows) {
    std::vector<Rational> row;
    for (int x : r) row.emplace_back(x);
    m.push_back(row);
  }
  return m;
}

/// Gram matrix B^T B of a bipartite graph over the side holding vertex 0.
RatMatrix gram(const Graph& g) {
  const auto bip = *bipartition_of(g);
  const auto& side = bip.side[0] == 0 ? bip.left : bip.right;
  RatMatrix m(side.size(), std::vector<Rational>(side.size(), Rational(0)));
  for (std::size_t i = 0; i < side.size(); ++i)
    for (std::size_t j = 0; j < side.size(); ++j)
      for (int w = 0; w < g.n(); ++w)
        if (g.has_edge(side[i], w) && g.has_edge(side[j], w)) m[i][j] += 1;
  return m;
}

}  // namespace

TEST(RationalText, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_EQ(parse_rational("2.5"), Rational(5, 2));
  EXPECT_EQ(parse_rational("0.0625"), Rational(1, 16));
  EXPECT_EQ(to_string(Rational(-3, 2)), "-3/2");
  EXPECT_EQ(to_string(Rational(4)), "4");
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational("1.2.3"), ParseError);
  EXPECT_EQ(binomial(39, 19), Integer("68923264410"));
}

TEST(PolyAlgebra, DivisionAndGcd) {
  const RatPoly a = poly({-1, 0, 1});  // x^2 - 1
  const RatPoly b = poly({1, 1});      // x + 1
  const auto [q, r] = divmod(a, b);
  EXPECT_EQ(q, poly({-1, 1}));
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(gcd(a, poly({-1, 1}) * poly({2, 1})), poly({-1, 1}));
  EXPECT_THROW(divmod(a, RatPoly()), ParameterError);
  EXPECT_EQ(poly({1, 2, 1}).compose_affine(Rational(1), Rational(1)), poly({4, 4, 1}));
  EXPECT_EQ(poly({0, 0, 0, 1}).derivative(), poly({0, 0, 3}));
}

TEST(PolyAlgebra, SquareFreeFactors) {
  // (x - 1)^2 (x + 2)^3 x
  const RatPoly p = poly({-1, 1}) * poly({-1, 1}) * pow(poly({2, 1}), 3) * poly({0, 1});
  const auto f = square_free_factors(p);
  ASSERT_GE(f.size(), 3u);
  EXPECT_EQ(monic(f[0]), poly({0, 1}));
  EXPECT_EQ(monic(f[1]), poly({-1, 1}));
  EXPECT_EQ(monic(f[2]), poly({2, 1}));
  EXPECT_EQ(square_free_part(p), poly({0, 1}) * poly({-1, 1}) * poly({2, 1}));
}

TEST(PolyAlgebra, SturmCounts) {
  const RatPoly p = poly({0, 1}) * poly({-1, 1}) * poly({2, 1}) * poly({1, 0, 1});  // roots 0, 1, -2 and +-i
  const auto chain = sturm_chain(p);
  EXPECT_EQ(sturm_count(chain, Rational(-10), Rational(10)), 3);
  EXPECT_EQ(sturm_count(chain, Rational(0), Rational(1)), 1);  // (0, 1]
  EXPECT_EQ(sturm_count_below(chain, Rational(0)), 2);
  EXPECT_EQ(sturm_count_above(chain, Rational(0)), 1);
  EXPECT_EQ(coeff_strings(poly({1, 3, 1})), (std::vector<std::string>{"1", "3", "1"}));
}

TEST(ExactLinalg, CharpolyOfSmallGraphs) {
  EXPECT_EQ(charpoly(adjacency_rat(make_path(2))), poly({-1, 0, 1}));
  EXPECT_EQ(charpoly(adjacency_rat(make_path(3))), poly({0, -2, 0, 1}));
  EXPECT_EQ(charpoly(adjacency_rat(make_complete(3))), poly({2, 3, 0, -1}) * poly({-1}));
  EXPECT_EQ(charpoly(signless_laplacian_rat(make_cycle(4))), poly({0, 1}) * poly({-4, 1}) * pow(poly({-2, 1}), 2));
  EXPECT_EQ(det_one_plus_x(gram(make_path(4))), poly({1, 3, 1}));
  EXPECT_EQ(rat_det(mat({{2, 1}, {1, 2}})), Rational(3));
  EXPECT_EQ(rat_det(mat({{0, 1}, {1, 0}})), Rational(-1));
  EXPECT_EQ(rat_trace(mat({{2, 1}, {1, 5}})), Rational(7));
}

TEST(ExactLinalg, ClosedWalksCountEdgesAndTriangles) {
  const auto levels = enumerate_connected_upto(7, GraphClass::all);
  for (int n = 1; n <= 7; ++n)
    for (const auto& g : levels[n]) {
      const auto tr = closed_walk_traces(g, 3);
      int triangles = 0;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          for (int c = b + 1; c < n; ++c) triangles += g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c);
      ASSERT_EQ(tr[0], Integer(n));
      ASSERT_EQ(tr[1], Integer(0));
      ASSERT_EQ(tr[2], Integer(2 * g.m()));
      ASSERT_EQ(tr[3], Integer(6 * triangles));
    }
}

TEST(ExactLinalg, CharpolyRootsMatchFloatingSpectrum) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = random_connected_bipartite(5 + trial % 5, 0.3, rng);
    const RatPoly cp = charpoly(adjacency_rat(g));
    for (double lam : adjacency_spectrum(g).values) {
      long double v = 0;
      for (std::size_t k = cp.coeffs().size(); k-- > 0;) v = v * lam + to_ld(cp.coeff(k));
      ASSERT_LT(std::fabs(static_cast<double>(v)), 1e-8);
    }
  }
}

TEST(HpSpectrum, IsolationAndRefinement) {
  const auto roots = isolate_real_roots(poly({-2, 0, 1}) * poly({0, 1}), Rational(1, 1000));
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_LE(roots[0].hi - roots[0].lo, Rational(1, 1000));
  EXPECT_LT(roots[0].hi, Rational(-141, 100));
  EXPECT_GT(roots[2].lo, Rational(141, 100));
  EXPECT_LE(roots[1].lo, Rational(0));
  EXPECT_GE(roots[1].hi, Rational(0));

  HpSpectrum s(adjacency_rat(make_path(4)));
  EXPECT_EQ(s.size(), 4);
  s.refine(40);
  for (const auto& r : s.roots()) EXPECT_LE(r.hi - r.lo, Rational(1, Integer(1) << 40));
  HpSpectrum c4(adjacency_rat(make_cycle(4)));
  c4.pin(Rational(2));
  int pinned = 0, double_roots = 0;
  for (const auto& r : c4.roots()) {
    pinned += r.lo == 2 && r.hi == 2;
    double_roots += r.multiplicity == 2;
  }
  EXPECT_EQ(pinned, 1);
  EXPECT_EQ(double_roots, 1);
  EXPECT_EQ(c4.size(), 4);
}

TEST(HpSpectrum, CompareCertifiesSigns) {
  // E_3(P_4) vs E_3(S_4): 2 ((1.618)^3 + (0.618)^3) = 8.944 vs 2 * 3^1.5 = 10.39.
  const HpComparison c = hp_compare(adjacency_rat(make_path(4)), adjacency_rat(make_star(4)), HpFunction::abs_power, 3.0);
  EXPECT_EQ(c.sign, -1);
  EXPECT_FALSE(c.exact_equal);
  EXPECT_LT(c.hi, 0.0);
  // K_{1,3} and C_4 plus an isolated vertex are cospectral.
  const Graph c4_plus(5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const HpComparison e = hp_compare(adjacency_rat(make_star(5)), adjacency_rat(c4_plus), HpFunction::abs_power, 2.5);
  EXPECT_TRUE(e.exact_equal);
  EXPECT_TRUE(e.same_spectrum);
  EXPECT_EQ(e.sign, 0);
}

TEST(HpSpectrum, EnclosureContainsFloatingSum) {
  HpSpectrum s(adjacency_rat(make_cycle(7)));
  s.refine(80);
  const HpEnclosure enc = hp_sum(s, HpFunction::abs_power, 3.0, 256);
  const double direct = p_energy(make_cycle(7), 3.0).v;
  EXPECT_LE(enc.lo.to_double(MPFR_RNDD), direct + 1e-12);
  EXPECT_GE(enc.hi.to_double(MPFR_RNDU), direct - 1e-12);
  EXPECT_LT(enc.hi.to_double() - enc.lo.to_double(), 1e-12);
}

TEST(ExactStoploss, Examples) {
  // B^T B of P_4 has eigenvalues (3 +- sqrt 5)/2.
  const RatMatrix p4 = gram(make_path(4));
  EXPECT_EQ(*exact_stoploss(p4, Rational(0)), Rational(7));
  // Symmetric about 3/2: (sqrt5/2)^2 from the upper root only.
  EXPECT_EQ(*exact_stoploss(p4, Rational(3, 2)), Rational(5, 4));
  EXPECT_EQ(*exact_stoploss(p4, Rational(3)), Rational(0));
  EXPECT_EQ(*exact_stoploss(gram(make_path(5)), Rational(1)), Rational(4));
  EXPECT_EQ(*exact_stoploss(gram(make_cycle(4)), Rational(0)), Rational(16));
  // x^2 - x - 1 straddles 0 without symmetry.
  EXPECT_FALSE(exact_stoploss(mat({{0, 1}, {1, 1}}), Rational(0)).has_value());
}

TEST(ExactStoploss, AgreesWithFloatingWhenAvailable) {
  const auto levels = enumerate_connected_upto(7, GraphClass::bipartite);
  int exact = 0;
  for (int n = 2; n <= 7; ++n)
    for (const auto& g : levels[n])
      for (int k = 0; k <= 20; ++k) {
        const auto v = exact_stoploss(gram(g), ratio(k, 4));
        if (!v) continue;
        ++exact;
        const Value s = stoploss(g, k / 4.0);
        ASSERT_NEAR(to_double(*v), s.v, s.err + 1e-12) << to_graph6(g) << " t=" << k / 4.0;
      }
  EXPECT_GT(exact, 100);
}
