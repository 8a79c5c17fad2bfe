#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "harness_common.hpp"
#include "spectra_cert/enumerate.hpp"
#include "spectra_cert/harness.hpp"

namespace spectra_cert {

using namespace detail;

namespace {

std::vector<long double> cycle_mu(int m) {  // C_{2m}
  constexpr long double pi = std::numbers::pi_v<long double>;
  std::vector<long double> out;
  for (int j = 0; j < m; ++j) {
    const long double c = std::cos(pi * j / m);
    out.push_back(4 * c * c);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

RatMatrix block_diag(const std::vector<RatMatrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  RatMatrix m(n, std::vector<Rational>(n, Rational(0)));
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) m[off + i][off + j] = b[i][j];
    off += b.size();
  }
  return m;
}

RatMatrix scalar_block(int v) { return RatMatrix{{Rational(v)}}; }

void bipartite_subsuite(const CampaignConfig& cfg, VerificationReport& rep) {
  const auto levels = enumerate_connected_upto(cfg.n_max.stoploss, GraphClass::bipartite);
  std::vector<const Graph*> graphs;
  for (int n = 2; n <= cfg.n_max.stoploss; ++n)
    for (const auto& g : levels[n]) graphs.push_back(&g);
  std::vector<SpectralData> path_mu_num(cfg.n_max.stoploss + 1);
  std::vector<RatMatrix> path_gram(cfg.n_max.stoploss + 1);
  for (int n = 2; n <= cfg.n_max.stoploss; ++n) {
    path_mu_num[n] = mu_values(make_path(n));
    path_gram[n] = gram_rat(make_path(n));
  }
  parallel_fragments(rep, cfg.tolerance, graphs.size(), cfg.workers(),
                     [&](std::size_t i, Recorder& rec, VerificationReport&) {
                       const Graph& g = *graphs[i];
                       const int n = g.n();
                       const std::string id = to_graph6(g);
                       const bool is_path = is_path_graph(g);
                       const SpectralData mu = mu_values(g);
                       for (double t : cfg.t_grid) {
                         const std::string prm = "bipartite,n=" + std::to_string(n) + ",t=" + num(t);
                         if (is_path) {
                           rec.exact(id, prm, true);
                           continue;
                         }
                         const Value a = stoploss(mu, t), b = stoploss(path_mu_num[n], t);
                         rec.ge(id, prm, a.v, b.v, a.err + b.err, [&, t, n] {
                           return recheck_hp(gram_rat(g), path_gram[n], HpFunction::plus_square, t,
                                             cfg.tolerance.hp_max_bits);
                         });
                       }
                     });
}

void cycle_subsuite(const CampaignConfig& cfg, VerificationReport& rep) {
  Recorder rec(rep, cfg.tolerance);
  double worst_prefix = std::numeric_limits<double>::infinity();
  double worst_closed = 0.0;
  for (int m = 2; m <= cfg.cycle_m_max; ++m) {
    const std::string id = "C" + std::to_string(2 * m);
    const std::vector<long double> c = cycle_mu(m);
    std::vector<long double> p = path_mu(2 * m);
    std::sort(p.rbegin(), p.rend());
    // Closed forms against the eigensolver.
    const SpectralData cn = mu_values(make_cycle(2 * m));
    const SpectralData pn = mu_values(make_path(2 * m));
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double d = std::fabs(static_cast<double>(c[k]) - cn.values[k]);
      worst_closed = std::max(worst_closed, d);
      rec.close(id, "closed-form,k=" + std::to_string(k), static_cast<double>(c[k]), cn.values[k],
                cfg.tolerance.cycle_tol);
    }
    for (std::size_t k = 0; k < p.size(); ++k)
      rec.close("P" + std::to_string(2 * m), "closed-form,k=" + std::to_string(k), static_cast<double>(p[k]),
                pn.values[k], cfg.tolerance.cycle_tol);
    // Weak majorization: prefix sums of c dominate those of p.
    long double sc = 0, sp = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      sc += c[k];
      sp += p[k];
      worst_prefix = std::min(worst_prefix, static_cast<double>(sc - sp));
      rec.exact(id, "prefix,k=" + std::to_string(k + 1), sc - sp >= -cfg.tolerance.cycle_tol, static_cast<double>(sc),
                static_cast<double>(sp));
    }
    const RatMatrix gc = gram_rat(make_cycle(2 * m)), gp = gram_rat(make_path(2 * m));
    for (double t : cfg.t_grid) {
      const Value a = stoploss_closed(c, t), b = stoploss_closed(p, t);
      rec.ge(id, "cycle,t=" + num(t), a.v, b.v, a.err + b.err, [&, t] {
        return recheck_hp(gc, gp, HpFunction::plus_square, t, cfg.tolerance.hp_max_bits);
      });
    }
  }
  rep.summary["cycles_min_prefix_gap"] = worst_prefix;
  rep.summary["cycles_max_closed_form_err"] = worst_closed;
}

void splice_subsuite(const CampaignConfig& cfg, VerificationReport& rep) {
  const int top = cfg.splice_max;
  std::vector<std::vector<long double>> mu(2 * top + 1);
  for (int m = 1; m <= 2 * top; ++m) mu[m] = path_mu(m);
  auto gram = [](int m) { return m == 1 ? RatMatrix{} : gram_rat(make_path(m)); };
  std::vector<int> as;
  for (int a = 1; a <= top; ++a) as.push_back(a);
  double tightest = std::numeric_limits<double>::infinity();
  std::vector<double> slack(as.size(), std::numeric_limits<double>::infinity());
  parallel_fragments(rep, cfg.tolerance, as.size(), cfg.workers(), [&](std::size_t i, Recorder& rec, VerificationReport&) {
    const int a = as[i];
    for (int b = 1; b <= top; ++b)
      for (double t : cfg.t_grid) {
        const Value sab = stoploss_closed(mu[a + b], t), sa = stoploss_closed(mu[a], t), sb = stoploss_closed(mu[b], t);
        const double lhs = sab.v - sa.v - sb.v;
        const double u = std::max(4.0 - t, 0.0), v = std::max(3.0 - t, 0.0);
        const double rhs = u * u - v * v;
        const double err = sab.err + sa.err + sb.err + (rhs == 0 ? 0 : 1e-15 * rhs);
        if (lhs == 0 && rhs == 0 && err == 0) {
          rec.exact("P" + std::to_string(a) + "+P" + std::to_string(b), "splice,t=" + num(t), true);
          continue;
        }
        if (t < 4) slack[i] = std::min(slack[i], rhs - lhs);
        rec.ge("P" + std::to_string(a) + "+P" + std::to_string(b), "splice,t=" + num(t), rhs, lhs, err, [&, a, b, t] {
          const RatMatrix left = block_diag({gram(a), gram(b), scalar_block(4)});
          const RatMatrix right = block_diag({gram(a + b), scalar_block(3)});
          return recheck_hp(left, right, HpFunction::plus_square, t, cfg.tolerance.hp_max_bits);
        });
      }
  });
  for (double s : slack) tightest = std::min(tightest, s);
  rep.summary["splice_min_slack_below_4"] = tightest;
}

}  // namespace

VerificationReport verify_stoploss(const CampaignConfig& cfg) {
  Stopwatch clock;
  VerificationReport rep = new_report("stoploss", cfg.to_json());
  rep.notes.push_back(kSubstituteNote);
  bipartite_subsuite(cfg, rep);
  cycle_subsuite(cfg, rep);
  splice_subsuite(cfg, rep);
  rep.runtime_ms = clock.ms();
  return rep;
}

}  // namespace spectra_cert
