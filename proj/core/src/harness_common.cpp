#include "harness_common.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <numbers>

#include "spectra_cert/errors.hpp"

namespace spectra_cert::detail {

RatMatrix gram_rat(const Graph& g, const Bipartition& bip) {
  if (g.weighted()) throw ContractViolation("gram_rat: unweighted graphs only");
  const std::size_t k = bip.right.size();
  RatMatrix m(k, std::vector<Rational>(k, Rational(0)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      m[i][j] = std::popcount(g.adj_mask(bip.right[i]) & g.adj_mask(bip.right[j]));
  return m;
}

RatMatrix gram_rat(const Graph& g) {
  auto bip = bipartition_of(g);
  if (!bip) throw ContractViolation("gram_rat: graph is not bipartite");
  if (bip->right.size() > bip->left.size()) std::swap(bip->left, bip->right);
  return gram_rat(g, *bip);
}

VertexUpdate vertex_update(const Graph& g, int u) {
  if (g.weighted()) throw ContractViolation("vertex_update: unweighted graphs only");
  auto bip = bipartition_of(g);
  if (!bip) throw ContractViolation("vertex_update: graph is not bipartite");
  if (bip->side[u] != 0) std::swap(bip->left, bip->right);
  VertexUpdate out;
  out.right = bip->right;
  const std::size_t k = out.right.size();
  const std::uint64_t drop = ~(std::uint64_t{1} << u);
  out.m = MatrixLD::Zero(static_cast<long>(k), static_cast<long>(k));
  out.b = VectorLD::Zero(static_cast<long>(k));
  out.m_rat.assign(k, std::vector<Rational>(k, Rational(0)));
  out.b_rat.assign(k, Rational(0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const int c = std::popcount(g.adj_mask(out.right[i]) & g.adj_mask(out.right[j]) & drop);
      out.m(static_cast<long>(i), static_cast<long>(j)) = c;
      out.m_rat[i][j] = c;
    }
    if (g.has_edge(u, out.right[i])) {
      out.b(static_cast<long>(i)) = 1;
      out.b_rat[i] = 1;
    }
  }
  return out;
}

Value j_value(const IntervalSet& e, double t) {
  double top = 0.0;
  for (const auto& [lo, hi] : e.intervals) top = std::max(top, hi);
  const double per_endpoint = (std::max(top - t, 0.0) + e.err) * e.err;
  return {j_of(e, t), 2.0 * static_cast<double>(e.intervals.size() + 1) * per_endpoint};
}

ShiftIntervals path_endpoint_shift(int n) {
  if (n < 2) throw ParameterError("path_endpoint_shift: n >= 2 required");
  // Vertex 0 is the new endpoint of P_n = 0-1-...-(n-1).
  const VertexUpdate up = vertex_update(make_path(n), 0);
  return shift_intervals(up.m, up.b);
}

std::vector<long double> path_mu(int m) {
  constexpr long double pi = std::numbers::pi_v<long double>;
  std::vector<long double> out;
  for (int i = 1; i <= m / 2; ++i) {
    const long double c = std::cos(pi * i / (m + 1));
    out.push_back(4 * c * c);
  }
  return out;
}

Value stoploss_closed(const std::vector<long double>& mu, double t) {
  Value out;
  for (long double x : mu) {
    const double y = static_cast<double>(x) - t;
    if (y > 0) out.v += y * y;
    if (y + kClosedFormErr > 0) out.err += 2 * (std::max(y, 0.0) + kClosedFormErr) * kClosedFormErr + 1e-16 * y * y;
  }
  return out;
}

Recheck recheck_stoploss_combo(const std::vector<StoplossTerm>& terms, const Rational& rhs, double t, int max_bits) {
  const Rational tq(t);
  Rational exact = -rhs;
  bool all_exact = true;
  for (const auto& term : terms) {
    if (term.m.empty() || term.coeff == 0) continue;
    const auto s = exact_stoploss(term.m, tq);
    if (!s) {
      all_exact = false;
      break;
    }
    exact += term.coeff * *s;
  }
  if (all_exact) return {sgn(exact), true, "exact-rational"};
  std::vector<HpSpectrum> specs;
  std::vector<int> coeffs;
  for (const auto& term : terms) {
    if (term.m.empty() || term.coeff == 0) continue;
    specs.emplace_back(term.m);
    specs.back().pin(tq);
    coeffs.push_back(term.coeff);
  }
  int bits = 64;
  for (; bits <= max_bits; bits *= 2) {
    const mpfr_prec_t prec = bits + 64;
    MpfrNum lo = MpfrNum::from_rational(-rhs, prec, MPFR_RNDD);
    MpfrNum hi = MpfrNum::from_rational(-rhs, prec, MPFR_RNDU);
    for (std::size_t k = 0; k < specs.size(); ++k) {
      specs[k].refine(bits);
      HpEnclosure e = hp_sum(specs[k], HpFunction::plus_square, t, prec);
      const long c = coeffs[k];
      mpfr_mul_si(e.lo.get(), e.lo.get(), c, c > 0 ? MPFR_RNDD : MPFR_RNDU);
      mpfr_mul_si(e.hi.get(), e.hi.get(), c, c > 0 ? MPFR_RNDU : MPFR_RNDD);
      if (c < 0) std::swap(e.lo, e.hi);
      mpfr_add(lo.get(), lo.get(), e.lo.get(), MPFR_RNDD);
      mpfr_add(hi.get(), hi.get(), e.hi.get(), MPFR_RNDU);
    }
    const std::string method = "hp-" + std::to_string(bits);
    if (mpfr_zero_p(lo.get()) && mpfr_zero_p(hi.get())) return {0, true, method};
    if (mpfr_sgn(lo.get()) > 0) return {1, true, method};
    if (mpfr_sgn(hi.get()) < 0) return {-1, true, method};
  }
  return {0, false, "hp-" + std::to_string(bits / 2)};
}

Recheck recheck_hp(const RatMatrix& a, const RatMatrix& b, HpFunction f, double param, int max_bits) {
  if (f == HpFunction::plus_square) {
    const Rational tq(param);
    const auto sa = exact_stoploss(a, tq), sb = exact_stoploss(b, tq);
    if (sa && sb) return {sgn(*sa - *sb), true, "exact-rational"};
  }
  const HpComparison c = hp_compare(a, b, f, param, max_bits);
  if (c.exact_equal) return {0, true, c.same_spectrum ? "charpoly" : "pinned-exact"};
  return {c.sign, c.sign != 0, "hp-" + std::to_string(c.bits)};
}

}  // namespace spectra_cert::detail
