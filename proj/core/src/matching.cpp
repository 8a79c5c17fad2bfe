#include "spectra_cert/matching.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "spectra_cert/exact_linalg.hpp"
#include "spectra_cert/spectral.hpp"

namespace spectra_cert {

RatPoly matching_poly(const Graph& g) {
  RatPoly out(Rational(1));
  for (int i = 0; i < g.m(); ++i)
    if (sgn(g.weight(i)) < 0) throw ParameterError("matching_poly: negative weight");
  for (const auto& comp : g.components()) {
    if (comp.size() == 1) continue;
    Graph c = induced_subgraph(g, comp);
    std::vector<Rational> w;
    for (int i = 0; i < c.m(); ++i) w.push_back(c.weight(i));
    out *= matching_poly_generic<Rational>(c.n(), c.edges(), w);
  }
  return out;
}

RatPoly path_poly(int m) {
  if (m < -1) throw ParameterError("path_poly: m must be >= -1");
  if (m == -1) return RatPoly();
  RatPoly prev2(Rational(1)), prev1(Rational(1));  // h_0, h_1
  if (m <= 1) return prev1;
  const RatPoly x = RatPoly::x();
  for (int k = 2; k <= m; ++k) {
    RatPoly next = prev1 + x * prev2;
    prev2 = std::move(prev1);
    prev1 = std::move(next);
  }
  return prev1;
}

RatPoly gram_charpoly(const Graph& f, const Bipartition& bip) {
  if (!is_forest(f)) throw ContractViolation("gram_charpoly: input is not a forest");
  if (static_cast<int>(bip.side.size()) != f.n()) throw ParameterError("gram_charpoly: bipartition size mismatch");
  for (const auto& [u, v] : f.edges())
    if (bip.side[u] == bip.side[v]) throw ParameterError("gram_charpoly: bipartition inconsistent with graph");
  // sqrt(w_xy) = r_x c_y along each tree, so B^T B is similar to
  // D_{c^2} P^T D_{r^2} P with P the 0/1 pattern; the squares are rational.
  std::vector<Rational> sq(f.n(), Rational(0));
  std::vector<char> seen(f.n(), 0);
  for (int s = 0; s < f.n(); ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    sq[s] = 1;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : f.neighbors(v))
        if (!seen[w]) {
          seen[w] = 1;
          sq[w] = f.weight_of(v, w) / sq[v];
          stack.push_back(w);
        }
    }
  }
  std::vector<int> pos(f.n(), -1);
  for (std::size_t i = 0; i < bip.left.size(); ++i) pos[bip.left[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < bip.right.size(); ++i) pos[bip.right[i]] = static_cast<int>(i);
  const std::size_t k = bip.right.size();
  RatMatrix m(k, std::vector<Rational>(k, Rational(0)));
  for (int x : bip.left)
    for (int y1 : f.neighbors(x))
      for (int y2 : f.neighbors(x)) m[pos[y1]][pos[y2]] += sq[y1] * sq[x];
  return det_one_plus_x(m);
}

RatPoly gram_charpoly(const Graph& f) {
  auto bip = bipartition_of(f);
  if (!bip) throw ContractViolation("gram_charpoly: input is not a forest");
  return gram_charpoly(f, *bip);
}

namespace {

void validate_arm(const Graph& t, int v, const std::vector<int>& arm) {
  if (arm.empty()) throw ContractViolation("theta_interpolation: empty arm");
  int prev = v;
  for (std::size_t i = 0; i < arm.size(); ++i) {
    const int u = arm[i];
    if (u < 0 || u >= t.n() || !t.has_edge(prev, u)) throw ContractViolation("theta_interpolation: arm is not a path");
    if (t.degree(u) != (i + 1 == arm.size() ? 1 : 2))
      throw ContractViolation("theta_interpolation: arm is not pendant");
    prev = u;
  }
}

void validate_step(const Graph& t, const TreeShiftStep& s) {
  if (!is_tree(t)) throw ContractViolation("theta_interpolation: input is not a tree");
  if (s.v < 0 || s.v >= t.n()) throw ContractViolation("theta_interpolation: bad branch vertex");
  validate_arm(t, s.v, s.arm_a);
  validate_arm(t, s.v, s.arm_b);
  for (int a : s.arm_a)
    if (std::find(s.arm_b.begin(), s.arm_b.end(), a) != s.arm_b.end())
      throw ContractViolation("theta_interpolation: arms intersect");
}

template <class W>
void theta_edges(const Graph& t, const TreeShiftStep& s, const W& one, const W& old_w, const W& new_w,
                 EdgeList& edges, std::vector<W>& weights) {
  const int w1 = s.arm_b.front();
  const auto old_edge = std::make_pair(std::min(s.v, w1), std::max(s.v, w1));
  for (const auto& e : t.edges()) {
    edges.push_back(e);
    weights.push_back(e == old_edge ? old_w : one);
  }
  edges.emplace_back(std::min(s.arm_a.back(), w1), std::max(s.arm_a.back(), w1));
  weights.push_back(new_w);
}

}  // namespace

Graph theta_graph(const Graph& t, const TreeShiftStep& step, const Rational& theta) {
  validate_step(t, step);
  EdgeList e;
  std::vector<Rational> w;
  theta_edges<Rational>(t, step, Rational(1), Rational(1 - theta), theta, e, w);
  return Graph(t.n(), std::move(e), std::move(w));
}

ThetaInterpolation theta_interpolation(const Graph& t, const TreeShiftStep& step) {
  validate_step(t, step);
  ThetaInterpolation out;
  const RatPoly theta = RatPoly::x();
  EdgeList e;
  std::vector<RatPoly> w;
  theta_edges<RatPoly>(t, step, RatPoly(Rational(1)), RatPoly(Rational(1)) - theta, theta, e, w);
  out.m_theta = matching_poly_generic<RatPoly>(t.n(), e, w);

  out.m0 = matching_poly(t);
  EdgeList shifted;
  const int w1 = step.arm_b.front();
  for (const auto& ed : t.edges())
    if (ed != std::make_pair(std::min(step.v, w1), std::max(step.v, w1))) shifted.push_back(ed);
  shifted.emplace_back(step.arm_a.back(), w1);
  out.m1 = matching_poly(Graph(t.n(), std::move(shifted)));
  out.endpoints_match = eval_theta(out.m_theta, Rational(0)) == out.m0 && eval_theta(out.m_theta, Rational(1)) == out.m1;

  std::vector<int> keep;
  for (int u = 0; u < t.n(); ++u)
    if (std::find(step.arm_a.begin(), step.arm_a.end(), u) == step.arm_a.end() &&
        std::find(step.arm_b.begin(), step.arm_b.end(), u) == step.arm_b.end())
      keep.push_back(u);
  const Graph c = induced_subgraph(t, keep);
  const int v_in_c = static_cast<int>(std::find(keep.begin(), keep.end(), step.v) - keep.begin());
  const RatPoly mc = matching_poly(c);
  const RatPoly mcv = matching_poly(delete_vertex(c, v_in_c).rest);
  auto [quo, rem] = divmod(mc - mcv, RatPoly::x());
  if (!rem.is_zero()) throw ContractViolation("theta_interpolation: M_C - M_{C-v} not divisible by x");
  out.w = quo;
  out.e = path_poly(static_cast<int>(step.arm_a.size()) - 1) * path_poly(static_cast<int>(step.arm_b.size()) - 1);
  out.d_theta = theta_derivative(out.m_theta);
  const RatPoly predicted = RatPoly::monomial(2, Rational(1)) * out.w * out.e;
  out.derivative_identity = out.d_theta == lift(predicted);
  return out;
}

DeletionRatioEvidence deletion_ratio_evidence(const Graph& y, const std::vector<int>& u, double tol) {
  if (!is_forest(y)) throw ContractViolation("deletion_ratio_evidence: input is not a forest");
  DeletionRatioEvidence out;
  if (u.empty()) {
    out.terms = 1;
    out.min_coeff = 1.0;
    out.passed = true;
    return out;
  }
  auto bip = bipartition_of(y);
  const int side = bip->side.at(u.front());
  for (int v : u)
    if (v < 0 || v >= y.n() || bip->side[v] != side)
      throw ParameterError("deletion_ratio_evidence: U is not within one side");
  std::vector<int> rows = side == 0 ? bip->left : bip->right;
  // A = B B^T on the side holding U, eigen-decomposed.
  MatrixLD b = biadjacency(y, *bip);
  if (side == 1) b.transposeInPlace();
  const MatrixLD a = b * b.transpose();
  MatrixLD q;
  SpectralData s = eig_sym_vectors(a, q, 1e-15 * (1 + static_cast<double>(a.norm())), 1e-9);
  std::vector<int> urows;
  for (int v : u) urows.push_back(static_cast<int>(std::find(rows.begin(), rows.end(), v) - rows.begin()));
  const int k = static_cast<int>(urows.size());
  const int n = static_cast<int>(rows.size());

  std::vector<std::vector<int>> alphas;
  std::vector<double> coeffs;
  std::vector<int> idx(k);
  auto recurse = [&](auto&& self, int start, int depth) -> void {
    if (depth == k) {
      MatrixLD sub(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub(i, j) = q(urows[i], idx[j]);
      const long double d = sub.determinant();
      alphas.push_back(idx);
      coeffs.push_back(static_cast<double>(d * d));
      return;
    }
    for (int i = start; i < n; ++i) {
      idx[depth] = i;
      self(self, i + 1, depth + 1);
    }
  };
  recurse(recurse, 0, 0);
  out.terms = static_cast<int>(coeffs.size());
  out.min_coeff = coeffs.empty() ? 0.0 : *std::min_element(coeffs.begin(), coeffs.end());

  std::vector<int> rest;
  for (int v = 0; v < y.n(); ++v)
    if (std::find(u.begin(), u.end(), v) == u.end()) rest.push_back(v);
  const RatPoly num = matching_poly(induced_subgraph(y, rest));
  const RatPoly den = matching_poly(y);
  for (const Rational& x : {Rational(1, 4), Rational(1), Rational(4)}) {
    const Rational exact = num.eval(x) / den.eval(x);
    long double sum = 0;
    for (std::size_t t = 0; t < alphas.size(); ++t) {
      long double prod = coeffs[t];
      for (int kk : alphas[t]) prod /= 1 + static_cast<long double>(x.get_d()) * s.values[kk];
      sum += prod;
    }
    out.max_repro_err = std::max(out.max_repro_err, static_cast<double>(std::fabs(sum - to_ld(exact))));
  }
  out.passed = out.min_coeff >= -tol && out.max_repro_err <= tol;
  return out;
}

}  // namespace spectra_cert
