#include "spectra_cert/bernstein.hpp"

#include <algorithm>

#include "spectra_cert/errors.hpp"

namespace spectra_cert {

std::vector<Rational> bernstein_coeffs(const RatPoly& p, const Rational& alpha, const Rational& beta, int m) {
  if (alpha >= beta) throw ParameterError("bernstein_coeffs: need alpha < beta");
  if (m < p.degree() || m < 0) throw ParameterError("bernstein_coeffs: degree m below deg(P)");
  const RatPoly q = p.compose_affine(alpha, beta - alpha);
  std::vector<Integer> binom_m(m + 1);
  for (int j = 0; j <= m; ++j) binom_m[j] = binomial(m, j);
  std::vector<Rational> out(m + 1, Rational(0));
  std::vector<Integer> row{1};  // C(k, j) for the current k
  for (int k = 0; k <= m; ++k) {
    if (k > 0) {
      std::vector<Integer> next(k + 1);
      next[0] = 1;
      next[k] = 1;
      for (int j = 1; j < k; ++j) next[j] = row[j - 1] + row[j];
      row = std::move(next);
    }
    Rational v(0);
    for (int j = 0; j <= k; ++j) {
      const Rational c = q.coeff(j);
      if (sgn(c) != 0) v += c * ratio(row[j], binom_m[j]);
    }
    v.canonicalize();
    out[k] = v;
  }
  return out;
}

BernsteinCertificate certify_nonneg(const RatPoly& p, const Rational& alpha, const Rational& beta, int m,
                                    const Rational& bound, std::string name, bool strict) {
  BernsteinCertificate c;
  c.poly_name = std::move(name);
  c.alpha = alpha;
  c.beta = beta;
  c.degree = m < 0 ? std::max(p.degree(), 0) : m;
  c.coeffs = bernstein_coeffs(p, alpha, beta, c.degree);
  c.min_coeff = *std::min_element(c.coeffs.begin(), c.coeffs.end());
  c.bound = bound;
  c.strict = strict;
  c.passed = strict ? c.min_coeff > bound : c.min_coeff >= bound;
  return c;
}

namespace {

using PolyMatrix = std::vector<std::vector<RatPoly>>;

RatPoly quadratic_moment(const PolyMatrix& m, const std::vector<int>& support, int j) {
  const std::size_t n = m.size();
  std::vector<RatPoly> v(n);
  for (int s : support) v[s] = RatPoly(Rational(1));
  for (int step = 0; step < j; ++step) {
    std::vector<RatPoly> w(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (!m[r][c].is_zero() && !v[c].is_zero()) w[r] += m[r][c] * v[c];
    v = std::move(w);
  }
  RatPoly out;
  for (int s : support) out += v[s];
  return out;
}

void add_rank_one(PolyMatrix& m, const std::vector<int>& support) {
  for (int a : support)
    for (int b : support) m[a][b] += RatPoly::x();
}

RatPoly t_pow(int k) { return RatPoly::monomial(k, Rational(1)); }

RatPoly from_ints(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return RatPoly(std::move(v));
}

Rational catalan_like(int r) { return ratio(binomial(2 * r + 2, r + 1), Integer(r + 1)); }

Rational first_branch_constant(int r) {
  return Rational(pow(Rational(r - 1), r - 1) / pow(Rational(r), r));
}

}  // namespace

RatPoly moment_poly(int n, int j) {
  if (n < 3) throw ParameterError("moment_poly: N must be >= 3");
  if (j < 0 || j > 5) throw ParameterError("moment_poly: j must be in 0..5");
  PolyMatrix m(n, std::vector<RatPoly>(n));
  for (int i = 0; i < n; ++i) m[i][i] = RatPoly(Rational(i == n - 1 ? 1 : 2));
  for (int i = 0; i + 1 < n; ++i) m[i][i + 1] = m[i + 1][i] = RatPoly(Rational(1));
  const std::vector<int> b{0, n - 1};
  add_rank_one(m, b);
  return quadratic_moment(m, b, j);
}

RatPoly line_model_poly(int l) {
  if (l < 2 || l > 6) throw ParameterError("line_model_poly: L must be in 2..6");
  const int n = l + 2;
  std::vector<std::pair<int, int>> edges;
  int prev = 1;
  for (int k = 0; k < l - 1; ++k) {
    edges.emplace_back(prev, 2 + k);
    prev = 2 + k;
  }
  edges.emplace_back(prev, 0);
  edges.emplace_back(0, n - 1);
  PolyMatrix m(n, std::vector<RatPoly>(n));
  for (auto [i, j] : edges) {
    m[i][i] += RatPoly(Rational(1));
    m[j][j] += RatPoly(Rational(1));
    m[i][j] += RatPoly(Rational(1));
    m[j][i] += RatPoly(Rational(1));
  }
  const std::vector<int> b{0, 1};
  add_rank_one(m, b);
  return quadratic_moment(m, b, 5);
}

RatPoly moment_target(int j) {
  switch (j) {
    case 1: return from_ints({3, 4});
    case 2: return from_ints({7, 12, 8});
    case 3: return from_ints({19, 37, 36, 16});
    case 4: return from_ints({56, 118, 138, 96, 32});
    case 5: return from_ints({174, 387, 507, 440, 240, 64});
    default: throw ParameterError("moment_target: j must be in 1..5");
  }
}

RatPoly line_model_target() { return from_ints({249, 512, 603, 472, 240, 64}); }

std::vector<EnvelopeRow> envelope_rows() {
  const RatPoly t = RatPoly::x();
  const RatPoly seven_halves_minus_t = RatPoly(Rational(7, 2)) - t;
  std::vector<EnvelopeRow> rows;

  {
    const RatPoly a = RatPoly(Rational(1812)) - Rational(7) * t_pow(4);
    const RatPoly b = RatPoly(Rational(4001)) - Rational(4) * t_pow(4);
    const RatPoly k = Rational(5) * from_ints({125, 25, 5, 1});
    const RatPoly lhat = Rational(1, 2) * (a * a * b * b) + Rational(1000) * (a * a * a);
    const Rational c19 = ratio(binomial(39, 19), Integer(20));
    const RatPoly b3k = b * b * b * k;
    const RatPoly g0 = RatPoly(Rational(7, 2)) - Rational(2) * t;
    const RatPoly g1 = Rational(3) * t * seven_halves_minus_t * seven_halves_minus_t - RatPoly(Rational(5));
    const RatPoly g2 = Rational(320) * t_pow(3) * seven_halves_minus_t * seven_halves_minus_t - RatPoly(Rational(1701));
    const RatPoly f1 = t_pow(18) * lhat - Rational(c19 * pow(Rational(18), 18) / pow(Rational(19), 19)) * b3k;
    const RatPoly f2 = lhat - Rational(c19 / pow(Rational(4), 19)) * ((RatPoly(Rational(4)) - t) * b3k);
    const Rational ten(10);
    rows.push_back({"G0", g0, Rational(0), Rational(3, 2), Rational(1, 2)});
    rows.push_back({"G1", g1, Rational(3, 2), Rational(2), Rational(17, 2)});
    rows.push_back({"G2", g2, Rational(2), Rational(3), Rational(459)});
    rows.push_back({"F1", f1, Rational(3), Rational(72, 19), pow(ten, 20)});
    rows.push_back({"F2a", f2, Rational(72, 19), Rational(74, 19), pow(ten, 11)});
    rows.push_back({"F2b", f2, Rational(74, 19), Rational(75, 19), pow(ten, 10)});
    rows.push_back({"F2c", f2, Rational(75, 19), Rational(151, 38), pow(ten, 9)});
    rows.push_back({"F2d", f2, Rational(151, 38), Rational(4), pow(ten, 8)});
  }

  {
    const RatPoly a = RatPoly(Rational(2140)) - Rational(7) * t_pow(4);
    const RatPoly b = RatPoly(Rational(4414)) - Rational(4) * t_pow(4);
    const RatPoly k = Rational(5) * from_ints({125, 25, 5, 1});
    const RatPoly lhat = Rational(1, 2) * (a * a * b * b) + Rational(1000) * (a * a * a);
    const RatPoly b3k = b * b * b * k;
    const RatPoly lav = Rational(1, 2) * (seven_halves_minus_t * seven_halves_minus_t);
    struct Spec {
      const char* name;
      int r;
      Rational lo, hi;
    };
    for (const Spec& s : {Spec{"LG0", 3, Rational(2), Rational(12, 5)}, Spec{"LG1", 5, Rational(12, 5), Rational(14, 5)},
                          Spec{"LG2", 8, Rational(14, 5), Rational(3)}}) {
      RatPoly p = t_pow(s.r - 1) * lav - RatPoly(Rational(catalan_like(s.r) * first_branch_constant(s.r)));
      rows.push_back({s.name, p, s.lo, s.hi, Rational(0), true});
    }
    for (const Spec& s : {Spec{"LG3", 10, Rational(3), Rational(7, 2)}, Spec{"LG4", 30, Rational(7, 2), Rational(58, 15)}}) {
      RatPoly p = t_pow(s.r - 1) * lhat - Rational(catalan_like(s.r) * first_branch_constant(s.r)) * b3k;
      rows.push_back({s.name, p, s.lo, s.hi, Rational(0), true});
    }
    RatPoly p5 = lhat - Rational(catalan_like(30) / pow(Rational(4), 30)) * ((RatPoly(Rational(4)) - t) * b3k);
    rows.push_back({"LG5", p5, Rational(58, 15), Rational(4), Rational(0), true});
  }
  return rows;
}

namespace {

std::vector<BernsteinCertificate> certify_rows(bool line_graph) {
  std::vector<BernsteinCertificate> out;
  for (const auto& r : envelope_rows()) {
    const bool is_lg = r.name.rfind("LG", 0) == 0;
    if (is_lg != line_graph) continue;
    out.push_back(certify_nonneg(r.poly, r.alpha, r.beta, -1, r.bound, r.name, r.strict));
  }
  return out;
}

NamedCheck check(std::string name, bool ok, std::string detail = {}) { return {std::move(name), ok, std::move(detail)}; }

/// P(1 - z) - t^4 (3 + 4 (1 - z)) as a polynomial in z with coefficients in t.
RatPoly2 shifted_moment(const RatPoly& q) {
  RatPoly2 out = lift(q.compose_affine(Rational(1), Rational(-1)));
  const RatPoly t4 = t_pow(4);
  out -= RatPoly2(std::vector<RatPoly>{Rational(7) * t4, Rational(-4) * t4});
  return out;
}

RatPoly2 expected_expansion(const RatPoly& a, const RatPoly& b, long c2, long c3) {
  return RatPoly2(std::vector<RatPoly>{a, -b, RatPoly(Rational(c2)), RatPoly(Rational(c3)), RatPoly(Rational(560)),
                                       RatPoly(Rational(-64))});
}

}  // namespace

std::vector<BernsteinCertificate> scalar_envelope_certificates() { return certify_rows(false); }
std::vector<BernsteinCertificate> line_graph_certificates() { return certify_rows(true); }

bool AppendixCReport::passed() const { return first_failure().empty(); }

std::string AppendixCReport::first_failure() const {
  for (const auto& c : certificates)
    if (!c.passed) return c.poly_name;
  for (const auto& c : checks)
    if (!c.passed) return c.name;
  return {};
}

AppendixCReport run_appendix_c() {
  AppendixCReport rep;
  rep.certificates = scalar_envelope_certificates();
  for (auto& c : line_graph_certificates()) rep.certificates.push_back(std::move(c));

  for (int j = 1; j <= 5; ++j) {
    const RatPoly got = moment_poly(7, j);
    rep.checks.push_back(check("q" + std::to_string(j), got == moment_target(j), to_string(got, "th")));
  }
  for (int n = 3; n <= 6; ++n)
    rep.checks.push_back(check("moment_poly(" + std::to_string(n) + ",5) - q5 >= 0",
                               nonnegative_coefficients(moment_poly(n, 5) - moment_target(5))));

  const RatPoly t = RatPoly::x();
  const RatPoly a = RatPoly(Rational(1812)) - Rational(7) * t_pow(4);
  const RatPoly b = RatPoly(Rational(4001)) - Rational(4) * t_pow(4);
  rep.checks.push_back(check("P_t(1-z) expansion", shifted_moment(moment_target(5)) == expected_expansion(a, b, 3907, -2040)));
  const RatPoly num = a.derivative() * b - a * b.derivative();
  rep.checks.push_back(check("A'B - AB' = -83036 t^3", num == RatPoly::monomial(3, Rational(-83036)), to_string(num, "t")));
  rep.checks.push_back(check("A(3) = 1245", a.eval(Rational(3)) == 1245));
  rep.checks.push_back(check("B(3) = 3677", b.eval(Rational(3)) == 3677));
  const Rational h3(1245, 3677);
  const Rational dlb = Rational(3907) - Rational(2040) * h3 - Rational(64) * h3 * h3 * h3;
  rep.checks.push_back(check("3907 - 2040h - 64h^3 > 3000", dlb > 3000, to_string(dlb)));

  const RatPoly qstar = line_model_target();
  const RatPoly q6 = line_model_poly(6);
  rep.checks.push_back(check("q* = line_model_poly(6)", q6 == qstar, to_string(q6, "th")));
  for (int l = 2; l <= 5; ++l)
    rep.checks.push_back(check("line_model_poly(" + std::to_string(l) + ") - q* >= 0",
                               nonnegative_coefficients(line_model_poly(l) - qstar)));
  const RatPoly as = RatPoly(Rational(2140)) - Rational(7) * t_pow(4);
  const RatPoly bs = RatPoly(Rational(4414)) - Rational(4) * t_pow(4);
  rep.checks.push_back(check("q*(1-z) expansion", shifted_moment(qstar) == expected_expansion(as, bs, 4099, -2072)));
  rep.checks.push_back(check("A*(3) = 1573", as.eval(Rational(3)) == 1573));
  rep.checks.push_back(check("B*(3) = 4090", bs.eval(Rational(3)) == 4090));
  const Rational hmax(1573, 4090);
  const Rational dstar = Rational(4099) - Rational(2072) * hmax - Rational(64) * hmax * hmax * hmax;
  rep.checks.push_back(check("4099 - 2072h - 64h^3 > 3000", dstar > 3000, to_string(dstar)));
  return rep;
}

}  // namespace spectra_cert
