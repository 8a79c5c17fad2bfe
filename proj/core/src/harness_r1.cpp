#include <algorithm>
#include <cmath>
#include <functional>

#include "harness_common.hpp"
#include "spectra_cert/enumerate.hpp"
#include "spectra_cert/harness.hpp"
#include "spectra_cert/matching.hpp"
#include "spectra_cert/mpfr_num.hpp"

namespace spectra_cert {

using namespace detail;

namespace {

constexpr mpfr_prec_t kLogPrec = 512;

/// Enclosure [lo, hi] of a - log(r) for rationals a and r > 0.
std::pair<MpfrNum, MpfrNum> affine_minus_log(const Rational& a, const Rational& r) {
  MpfrNum lo = MpfrNum::from_rational(a, kLogPrec, MPFR_RNDD);
  MpfrNum hi = MpfrNum::from_rational(a, kLogPrec, MPFR_RNDU);
  MpfrNum l_lo = MpfrNum::from_rational(r, kLogPrec, MPFR_RNDD);
  MpfrNum l_hi = MpfrNum::from_rational(r, kLogPrec, MPFR_RNDU);
  mpfr_log(l_lo.get(), l_lo.get(), MPFR_RNDD);
  mpfr_log(l_hi.get(), l_hi.get(), MPFR_RNDU);
  mpfr_sub(lo.get(), lo.get(), l_hi.get(), MPFR_RNDD);
  mpfr_sub(hi.get(), hi.get(), l_lo.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Recheck sign_of(const std::pair<MpfrNum, MpfrNum>& e, const char* method) {
  if (mpfr_sgn(e.first.get()) > 0) return {1, true, method};
  if (mpfr_sgn(e.second.get()) < 0) return {-1, true, method};
  if (mpfr_zero_p(e.first.get()) && mpfr_zero_p(e.second.get())) return {0, true, method};
  return {0, false, method};
}

/// Nondecreasing sequences of q parts in [1, top].
void for_each_parts(int q, int top, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> parts(q, 1);
  for (;;) {
    fn(parts);
    int i = q - 1;
    while (i >= 0 && parts[i] == top) --i;
    if (i < 0) return;
    ++parts[i];
    for (int j = i + 1; j < q; ++j) parts[j] = parts[i];
  }
}

std::string parts_id(const std::vector<int>& parts) {
  std::string s = "parts=";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "+" : "") + std::to_string(parts[i]);
  return s;
}

}  // namespace

VerificationReport verify_r1(const CampaignConfig& cfg) {
  Stopwatch clock;
  VerificationReport rep = new_report("r1", cfg.to_json());
  rep.notes.push_back(kSubstituteNote);
  const int nmax = cfg.n_max.r1;
  const auto levels = enumerate_connected_upto(nmax, GraphClass::bipartite);
  std::vector<const Graph*> graphs;
  for (int n = 2; n <= nmax; ++n)
    for (const auto& g : levels[n]) graphs.push_back(&g);
  const Rational x_small(1, 100);

  std::vector<double> small_x_ratio(graphs.size(), 1.0);
  parallel_fragments(rep, cfg.tolerance, graphs.size(), cfg.workers(), [&](std::size_t i, Recorder& rec, VerificationReport&) {
    const Graph& g = *graphs[i];
    const int n = g.n();
    const Graph pn = make_path(n);
    const std::string id = to_graph6(g);
    const bool is_path = is_path_graph(g);
    // Comparison with the path.
    for (const auto& x : cfg.x_grid) {
      const std::string prm = "compare,x=" + to_string(x);
      if (is_path) {
        rec.exact(id, prm, gram_det(g, x) == gram_det(pn, x));
        continue;
      }
      const Value a = r1(g, x), b = r1(pn, x);
      rec.ge(id, prm, a.v, b.v, a.err + b.err, [&] {
        const Rational dg = gram_det(g, x), dp = gram_det(pn, x);
        if (g.m() == pn.m()) {
          const int c = cmp(dp, dg);
          return Recheck{c > 0 ? 1 : c < 0 ? -1 : 0, true, "exact-det"};
        }
        return sign_of(affine_minus_log(x * (g.m() - pn.m()), dg / dp), "mpfr-512");
      });
    }
    // Vertex gain: (1 + d x) det(G - v) >= det(G).
    for (int v = 0; v < n; ++v) {
      const Graph h = delete_vertex(g, v).rest;
      const int d = g.degree(v);
      for (const auto& x : cfg.x_grid) {
        const Rational lhs = (1 + d * x) * gram_det(h, x), rhs = gram_det(g, x);
        rec.exact(id, "vertex-gain,v=" + std::to_string(v) + ",x=" + to_string(x), lhs >= rhs, to_double(lhs),
                  to_double(rhs));
      }
    }
    // Small-x sign against the fourth-moment difference.
    if (!is_path) {
      const Value a = r1(g, x_small), b = r1(pn, x_small);
      const Integer s0g = closed_walk_traces(g, 4)[4], s0p = closed_walk_traces(pn, 4)[4];
      const double ds0 = Integer(s0g - s0p).get_d() / 2.0;  // tr A^4 = 2 S_0
      const double predicted = to_double(x_small) * to_double(x_small) * ds0 / 2.0;
      small_x_ratio[i] = (a.v - b.v) / predicted;
      rec.exact(id, "small-x-sign,x=1/100", ds0 > 0 && a.v - b.v > a.err + b.err, a.v - b.v, predicted);
    }
  });

  Recorder rec(rep, cfg.tolerance);
  // Endpoint path determinants agree with the path recurrence.
  for (int n = 1; n <= 12; ++n)
    for (const auto& x : cfg.x_grid)
      rec.exact("P" + std::to_string(n), "path-det,x=" + to_string(x), path_poly(n).eval(x) == gram_det(make_path(n), x));
  // Path deficit: R1(P_N) - sum R1(P_{n_i}) <= r1((q+1) x), N = 1 + sum n_i.
  long long deficit_cases = 0;
  for (int q = 1; q <= 5; ++q)
    for_each_parts(q, 6, [&](const std::vector<int>& parts) {
      int big_n = 1;
      for (int p : parts) big_n += p;
      for (const auto& x : cfg.x_grid) {
        Rational prod(1);
        for (int p : parts) prod *= gram_det(make_path(p), x);
        const Rational dn = gram_det(make_path(big_n), x);
        // rhs - lhs = x - log(1 + (q+1) x) + log(D_N / prod D_i)
        const Rational y = (q + 1) * x;
        const auto e1 = affine_minus_log(x, 1 + y);
        const auto e2 = affine_minus_log(Rational(0), prod / dn);
        MpfrNum lo(kLogPrec), hi(kLogPrec);
        mpfr_add(lo.get(), e1.first.get(), e2.first.get(), MPFR_RNDD);
        mpfr_add(hi.get(), e1.second.get(), e2.second.get(), MPFR_RNDU);
        const double lhs = to_double(q * x) - std::log(to_double(dn / prod));
        const double rhs = r1_scalar(to_double(y));
        ++deficit_cases;
        rec.exact(parts_id(parts), "path-deficit,x=" + to_string(x), mpfr_sgn(lo.get()) >= 0, lhs, rhs);
      }
    });
  double lo_ratio = 1.0, hi_ratio = 1.0;
  for (double r : small_x_ratio) {
    lo_ratio = std::min(lo_ratio, r);
    hi_ratio = std::max(hi_ratio, r);
  }
  rep.summary["small_x_ratio_range"] = {lo_ratio, hi_ratio};
  rep.summary["path_deficit_cases"] = deficit_cases;
  rep.runtime_ms = clock.ms();
  return rep;
}

}  // namespace spectra_cert
