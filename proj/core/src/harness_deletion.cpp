#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "harness_common.hpp"
#include "spectra_cert/bernstein.hpp"
#include "spectra_cert/enumerate.hpp"
#include "spectra_cert/harness.hpp"

namespace spectra_cert {

using namespace detail;

namespace {

double ind(double u, double v, double t) { return i_of<double>(u, v, t); }
Rational ind_q(const Rational& u, const Rational& v, const Rational& t) { return i_of<Rational>(u, v, t); }

RatMatrix path_gram(int m) { return m <= 1 ? RatMatrix{} : gram_rat(make_path(m)); }

/// Nondecreasing sequences of r parts in [1, top].
void for_each_parts(int r, int top, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> parts(r, 1);
  for (;;) {
    fn(parts);
    int i = r - 1;
    while (i >= 0 && parts[i] == top) --i;
    if (i < 0) return;
    ++parts[i];
    for (int j = i + 1; j < r; ++j) parts[j] = parts[i];
  }
}

std::string parts_id(const std::vector<int>& parts) {
  std::string s = "P";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "+P" : "") + std::to_string(parts[i]);
  return s;
}

/// sum S_t(P_{m_i}) from closed forms.
Value path_sum(const std::vector<int>& parts, double t) {
  Value out;
  for (int m : parts) {
    const Value v = stoploss_closed(path_mu(m), t);
    out.v += v.v;
    out.err += v.err;
  }
  return out;
}

/// Checks total <= bound where total = S_t(P_big) - sum S_t(P_parts) and
/// bound is a rational combination of interval integrals.
void path_cost_check(Recorder& rec, const std::string& id, const std::string& prm, int big,
                     const std::vector<int>& parts, double t, double bound, const Rational& bound_q, int bits) {
  const Value top = stoploss_closed(path_mu(big), t);
  const Value rest = path_sum(parts, t);
  const double lhs = top.v - rest.v;
  const double err = top.err + rest.err + 1e-15 * std::fabs(bound);
  if (lhs == 0 && bound == 0 && err == 0) {
    rec.exact(id, prm, true);
    return;
  }
  rec.ge(id, prm, bound, lhs, err, [&] {
    std::vector<StoplossTerm> terms{{path_gram(big), -1}};
    for (int m : parts) terms.push_back({path_gram(m), 1});
    return recheck_stoploss_combo(terms, -bound_q, t, bits);
  });
}

void path_costs(const CampaignConfig& cfg, VerificationReport& rep) {
  Recorder rec(rep, cfg.tolerance);
  const int bits = cfg.tolerance.hp_max_bits;
  for (double t : cfg.t_grid) {
    const Rational tq(t);
    const double i34 = ind(3, 4, t), i24 = ind(2, 4, t);
    const Rational q34 = ind_q(3, 4, tq), q24 = ind_q(2, 4, tq);
    // Endpoint cost.
    for (int n = 2; n <= 40; ++n)
      path_cost_check(rec, "P" + std::to_string(n), "endpoint,t=" + num(t), n, {n - 1}, t, 2 * i34, 2 * q34, bits);
    // Two-arm cost.
    for (int a = 1; a <= 20; ++a)
      for (int b = a; b <= 20; ++b)
        path_cost_check(rec, "P" + std::to_string(a) + "+P" + std::to_string(b), "two-arm,t=" + num(t), a + b + 1,
                        {a, b}, t, 2 * i24, 2 * q24, bits);
    // Repeated costs over r parts.
    for (int r = 2; r <= 5; ++r)
      for_each_parts(r, 6, [&](const std::vector<int>& parts) {
        int sum = 0;
        for (int m : parts) sum += m;
        path_cost_check(rec, parts_id(parts), "repeated,t=" + num(t), sum, parts, t, 2 * (r - 1) * i34,
                        2 * (r - 1) * q34, bits);
        path_cost_check(rec, parts_id(parts), "repeated-joined,t=" + num(t), sum + 1, parts, t,
                        2 * i24 + 2 * (r - 2) * i34, 2 * q24 + 2 * (r - 2) * q34, bits);
      });
  }
}

struct DeletionTally {
  long long high = 0;
  long long borderline = 0;
  long long gamma_checked = 0;
};

void deletion_lemmas(const CampaignConfig& cfg, VerificationReport& rep, DeletionTally& tally) {
  const auto levels = enumerate_connected_upto(cfg.n_max.deletion, GraphClass::bipartite);
  std::vector<const Graph*> graphs;
  for (int n = 2; n <= cfg.n_max.deletion; ++n)
    for (const auto& g : levels[n]) graphs.push_back(&g);
  const int bits = cfg.tolerance.hp_max_bits;
  std::vector<DeletionTally> tallies(graphs.size());
  parallel_fragments(rep, cfg.tolerance, graphs.size(), cfg.workers(), [&](std::size_t gi, Recorder& rec, VerificationReport&) {
    const Graph& g = *graphs[gi];
    const std::string id = to_graph6(g);
    const SpectralData mu_g = mu_values(g);
    const RatMatrix gram_g = gram_rat(g);
    for (int v = 0; v < g.n(); ++v) {
      const VertexDeletion del = delete_vertex(g, v);
      const int d = g.degree(v);
      const int q = static_cast<int>(del.components.size());
      const VertexUpdate up = vertex_update(g, v);
      const SpectralData mu_h = eig_sym(up.m);
      const RatMatrix gram_h = up.m_rat;
      // gamma = b^T M b and its neighbour-count lower bound.
      const Rational gamma = rat_dot(up.b_rat, rat_mat_vec(up.m_rat, up.b_rat));
      long long degsum = 0;
      int s = 0;
      for (int x : g.neighbors(v)) {
        degsum += g.degree(x) - 1;
        if (g.degree(x) >= 2) ++s;
      }
      const std::string vid = ",v=" + std::to_string(v);
      rec.exact(id, "gamma>=sum(d-1)" + vid, gamma >= Rational(static_cast<long>(degsum)) && degsum >= s, to_double(gamma), static_cast<double>(degsum));
      ++tallies[gi].gamma_checked;
      const Rational lo = gamma / d, hi = gamma / d + d;

      // Component data for the path-deficit comparison.
      std::vector<int> sizes;
      int non_isolated = 0;
      bool two_in_one = false;
      for (const auto& c : del.components) {
        sizes.push_back(c.graph.n());
        if (c.graph.n() > 1) ++non_isolated;
        int hits = 0;
        for (int w : c.to_old)
          if (g.has_edge(v, w)) ++hits;
        two_in_one = two_in_one || hits >= 2;
      }
      const bool high = d >= q + 2;
      const bool border = d == q + 1 && non_isolated >= 2 && two_in_one;
      if (high) ++tallies[gi].high;
      if (border) ++tallies[gi].borderline;

      for (double t : cfg.t_grid) {
        const Rational tq(t);
        const Value sg = stoploss(mu_g, t), sh = stoploss(mu_h, t);
        const double gain = sg.v - sh.v, gain_err = sg.err + sh.err;
        auto gain_ge = [&](const std::string& what, double bound, const Rational& bound_q) {
          const double err = gain_err + 1e-15 * std::fabs(bound);
          if (gain == 0 && bound == 0 && err == 0) {
            rec.exact(id, what + vid + ",t=" + num(t), true);
            return;
          }
          rec.ge(id, what + vid + ",t=" + num(t), gain, bound, err, [&] {
            return recheck_stoploss_combo({{gram_g, 1}, {gram_h, -1}}, bound_q, t, bits);
          });
        };
        // Jensen bound for the rank-one gain.
        gain_ge("jensen", 2 * ind(to_double(lo), to_double(hi), t), 2 * ind_q(lo, hi, tq));
        if (!high && !border) continue;
        const double i34 = ind(3, 4, t), i24 = ind(2, 4, t);
        const Rational q34 = ind_q(3, 4, tq), q24 = ind_q(2, 4, tq);
        const double local = high ? 2 * q * i34 : 2 * i24 + 2 * (d - 3) * i34;
        const Rational local_q = high ? Rational(2 * q * q34) : Rational(2 * q24 + 2 * (d - 3) * q34);
        gain_ge(high ? "high-redundancy-gain" : "borderline-gain", local, local_q);
        // Path deficit does not exceed the local gain bound.
        path_cost_check(rec, id, std::string(high ? "high-redundancy-deficit" : "borderline-deficit") + vid + ",t=" + num(t),
                        g.n(), sizes, t, local, local_q, bits);
      }
    }
  });
  for (const auto& t : tallies) {
    tally.high += t.high;
    tally.borderline += t.borderline;
    tally.gamma_checked += t.gamma_checked;
  }
}

/// Loaded positions on C_L with pairwise cyclic distance >= 3, 1..max_leaves of them.
std::vector<std::vector<int>> separated_loads(int len, int max_leaves) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (!cur.empty()) out.push_back(cur);
    if (static_cast<int>(cur.size()) == max_leaves) return;
    for (int p = start; p < len; ++p) {
      bool ok = true;
      for (int q : cur) {
        const int dist = std::min(std::abs(p - q), len - std::abs(p - q));
        ok = ok && dist >= 3;
      }
      if (!ok) continue;
      cur.push_back(p);
      rec(p + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

void sun_local_data(const CampaignConfig& cfg, VerificationReport& rep, long long& suns) {
  Recorder rec(rep, cfg.tolerance);
  const int bits = cfg.tolerance.hp_max_bits;
  const std::vector<Rational> thetas{Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
  const RatPoly q5 = moment_target(5);
  auto j_compare = [&](const Graph& g, int u, const std::string& id) {
    const int n = g.n();
    const VertexUpdate up = vertex_update(g, u);
    const ShiftIntervals eg = shift_intervals(up.m, up.b);
    const ShiftIntervals ep = path_endpoint_shift(n);
    rec.exact(id, "interlacing", eg.interlaced && ep.interlaced);
    const RatMatrix gram_g = gram_rat(g), gram_h = up.m_rat;
    const RatMatrix gram_pn = gram_rat(make_path(n)), gram_p1 = path_gram(n - 1);
    for (double t : cfg.t_grid) {
      const Value jg = j_value(eg.set, t), jp = j_value(ep.set, t);
      if (jg.v == 0 && jp.v == 0 && jg.err == 0 && jp.err == 0) {
        rec.exact(id, "J,t=" + num(t), true);
        continue;
      }
      rec.ge(id, "J,t=" + num(t), jg.v, jp.v, jg.err + jp.err, [&, t] {
        // 2 J_E = S_t(after) - S_t(before) for both updates.
        return recheck_stoploss_combo({{gram_g, 1}, {gram_h, -1}, {gram_pn, -1}, {gram_p1, 1}}, Rational(0), t, bits);
      });
      // Trace formula consistency: 2 J_E(t) = S_t(G) - S_t(G - u).
      const Value sg = stoploss(eg.after, t), sh = stoploss(eg.before, t);
      rec.close(id, "trace-formula,t=" + num(t), 2 * jg.v, sg.v - sh.v, cfg.tolerance.identity_tol);
    }
  };
  for (int len : {6, 8, 10, 12})
    for (const auto& loads : separated_loads(len, 3)) {
      const Graph g = make_sun(SunSpec{len, loads});
      const int a = loads.front();
      for (int u : {(a + 1) % len, (a + len - 1) % len}) {
        ++suns;
        std::string id = to_graph6(g) + "[L=" + std::to_string(len) + ",u=" + std::to_string(u) + "]";
        const VertexUpdate up = vertex_update(g, u);
        // b = e_a + e_c with c the other cycle neighbour of u.
        rec.exact(id, "support", sgn(rat_dot(up.b_rat, up.b_rat) - 2) == 0);
        for (const auto& th : thetas) {
          RatMatrix mt = up.m_rat;
          for (std::size_t i = 0; i < mt.size(); ++i)
            for (std::size_t j = 0; j < mt.size(); ++j) mt[i][j] += th * up.b_rat[i] * up.b_rat[j];
          std::vector<Rational> w = up.b_rat;
          const Rational first = rat_dot(up.b_rat, rat_mat_vec(mt, w));
          rec.exact(id, "first-moment,theta=" + to_string(th), first == 3 + 4 * th, to_double(first),
                    to_double(Rational(3 + 4 * th)));
          for (int k = 0; k < 5; ++k) w = rat_mat_vec(mt, w);
          const Rational fifth = rat_dot(up.b_rat, w);
          rec.exact(id, "fifth-moment,theta=" + to_string(th), fifth >= q5.eval(th), to_double(fifth),
                    to_double(q5.eval(th)));
          const RatPoly cp = square_free_part(charpoly(mt));
          const auto chain = sturm_chain(cp);
          const int at_zero = sgn(cp.eval(Rational(0))) == 0 ? 1 : 0;
          rec.exact(id, "spectrum-in-[0,5],theta=" + to_string(th),
                    sturm_count_above(chain, Rational(5)) == 0 && sturm_count_below(chain, Rational(0)) == at_zero);
        }
        j_compare(g, u, id);
      }
    }
  // C_4 with one leaf at vertex 0; u = 1 is a cycle neighbour of the loaded vertex.
  const Graph c4 = make_sun(SunSpec{4, {0}});
  const std::string id = to_graph6(c4) + "[C4+leaf]";
  RatPoly expect(std::vector<Rational>{Rational(2), Rational(-5), Rational(1)});
  RatPoly cp = charpoly(gram_rat(c4));
  while (cp.degree() > 0 && sgn(cp.coeff(0)) == 0) cp = divmod(cp, RatPoly(std::vector<Rational>{0, 1})).first;
  rec.exact(id, "mu=(5+-sqrt17)/2", cp == expect);
  j_compare(c4, 1, id);
}

void path_moments(const CampaignConfig& cfg, VerificationReport& rep) {
  Recorder rec(rep, cfg.tolerance);
  const int mmax = 19;
  std::vector<std::vector<Integer>> tr(cfg.n_max.path_moment_n + 1);
  for (int n = 1; n <= cfg.n_max.path_moment_n; ++n) tr[n] = closed_walk_traces(make_path(n), 2 * mmax);
  double worst_cross = 0.0;
  for (int n = 2; n <= cfg.n_max.path_moment_n; ++n) {
    const ShiftIntervals e = path_endpoint_shift(n);
    for (int m = 1; m <= mmax; ++m) {
      const Integer diff = tr[n][2 * m] - tr[n - 1][2 * m];
      const Integer bound = binomial(2 * m, m);
      rec.exact("P" + std::to_string(n), "walks,m=" + std::to_string(m), diff <= bound && diff >= 0, diff.get_d(),
                bound.get_d());
      if (m <= 5) {
        // int_E y^(m-1) dy against the trace difference over 2m.
        double integral = 0.0;
        for (const auto& [lo, hi] : e.set.intervals) integral += (std::pow(hi, m) - std::pow(lo, m)) / m;
        const double exact = diff.get_d() / (2.0 * m);
        worst_cross = std::max(worst_cross, std::fabs(integral - exact));
        rec.close("P" + std::to_string(n), "moment-integral,m=" + std::to_string(m), integral, exact,
                  cfg.tolerance.identity_tol * std::max(1.0, exact));
      }
    }
  }
  rep.summary["path_moment_integral_max_err"] = worst_cross;
}

}  // namespace

VerificationReport verify_deletion_theory(const CampaignConfig& cfg) {
  Stopwatch clock;
  VerificationReport rep = new_report("deletion_theory", cfg.to_json());
  rep.notes.push_back(kSubstituteNote);
  path_costs(cfg, rep);
  DeletionTally tally;
  deletion_lemmas(cfg, rep, tally);
  long long suns = 0;
  sun_local_data(cfg, rep, suns);
  path_moments(cfg, rep);
  rep.summary["high_redundancy_cases"] = tally.high;
  rep.summary["borderline_cases"] = tally.borderline;
  rep.summary["gamma_checks"] = tally.gamma_checked;
  rep.summary["sun_updates"] = suns;
  rep.runtime_ms = clock.ms();
  return rep;
}

}  // namespace spectra_cert
