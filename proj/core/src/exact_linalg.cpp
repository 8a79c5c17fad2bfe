#include "spectra_cert/exact_linalg.hpp"

#include "spectra_cert/errors.hpp"

namespace spectra_cert {

RatMatrix rat_identity(std::size_t n) {
  RatMatrix m(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RatMatrix rat_mul(const RatMatrix& a, const RatMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  RatMatrix c(n, std::vector<Rational>(p, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (sgn(a[i][l]) == 0) continue;
      for (std::size_t j = 0; j < p; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

RatMatrix rat_add(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] += b[i][j];
  return c;
}

RatMatrix rat_scale(const Rational& s, const RatMatrix& a) {
  RatMatrix c = a;
  for (auto& row : c)
    for (auto& v : row) v *= s;
  return c;
}

Rational rat_trace(const RatMatrix& a) {
  Rational t = 0;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

std::vector<Rational> rat_mat_vec(const RatMatrix& a, const std::vector<Rational>& v) {
  std::vector<Rational> out(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  return out;
}

Rational rat_dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatMatrix adjacency_rat(const Graph& g) {
  RatMatrix a(g.n(), std::vector<Rational>(g.n(), Rational(0)));
  for (int i = 0; i < g.m(); ++i) {
    auto [u, v] = g.edges()[i];
    a[u][v] = a[v][u] = g.weight(i);
  }
  return a;
}

RatMatrix signless_laplacian_rat(const Graph& g) {
  if (g.weighted()) throw ParameterError("signless_laplacian_rat: weighted graphs are not supported");
  RatMatrix q = adjacency_rat(g);
  for (int v = 0; v < g.n(); ++v) q[v][v] = g.degree(v);
  return q;
}

RatPoly charpoly(const RatMatrix& m) {
  const std::size_t n = m.size();
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  RatMatrix mk(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t k = 1; k <= n; ++k) {
    mk = rat_mul(m, mk);
    for (std::size_t i = 0; i < n; ++i) mk[i][i] += c[n - k + 1];
    c[n - k] = -rat_trace(rat_mul(m, mk)) / Rational(static_cast<long>(k));
  }
  return RatPoly(std::move(c));
}

RatPoly det_one_plus_x(const RatMatrix& m) {
  const RatPoly p = charpoly(m);
  const std::size_t n = m.size();
  std::vector<Rational> e(n + 1, Rational(0));
  for (std::size_t k = 0; k <= n; ++k) {
    Rational ck = p.coeff(n - k);
    e[k] = (k % 2 == 0) ? ck : Rational(-ck);
  }
  return RatPoly(std::move(e));
}

Rational rat_det(RatMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && sgn(m[piv][k]) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(m[i][k]) == 0) continue;
      Rational f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

std::vector<Integer> closed_walk_traces(const Graph& g, int kmax) {
  if (g.weighted()) throw ParameterError("closed_walk_traces: weighted graphs are not supported");
  const int n = g.n();
  std::vector<std::vector<Integer>> p(n, std::vector<Integer>(n, 0));
  for (int i = 0; i < n; ++i) p[i][i] = 1;
  std::vector<Integer> out;
  out.push_back(n);
  for (int k = 1; k <= kmax; ++k) {
    std::vector<std::vector<Integer>> next(n, std::vector<Integer>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int w : g.neighbors(j)) next[i][j] += p[i][w];
    p = std::move(next);
    Integer t = 0;
    for (int i = 0; i < n; ++i) t += p[i][i];
    out.push_back(t);
  }
  return out;
}

}  // namespace spectra_cert
