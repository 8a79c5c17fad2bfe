#pragma once

#include <bit>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "spectra_cert/errors.hpp"
#include "spectra_cert/graph.hpp"
#include "spectra_cert/poly.hpp"

namespace spectra_cert {

/// Matching generating polynomial sum_M prod_{e in M} w_e x^{|M|} over any
/// coefficient ring W. Vertex recursion on the lowest remaining vertex with a
/// memo keyed by the remaining vertex mask (n <= 64).
template <class W>
Poly<W> matching_poly_generic(int n, const EdgeList& edges, const std::vector<W>& weights) {
  if (n > 64) throw ResourceError("matching_poly: more than 64 vertices");
  std::vector<std::vector<std::pair<int, std::size_t>>> adj(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    adj[edges[i].first].emplace_back(edges[i].second, i);
    adj[edges[i].second].emplace_back(edges[i].first, i);
  }
  std::unordered_map<std::uint64_t, Poly<W>> memo;
  auto rec = [&](auto&& self, std::uint64_t mask) -> Poly<W> {
    if (mask == 0) return Poly<W>(W(1));
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    const int v = std::countr_zero(mask);
    const std::uint64_t rest = mask & (mask - 1);
    Poly<W> r = self(self, rest);
    for (auto [u, i] : adj[v])
      if (rest >> u & 1u) r += Poly<W>::monomial(1, weights[i]) * self(self, rest & ~(std::uint64_t{1} << u));
    memo.emplace(mask, r);
    return r;
  };
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return rec(rec, all);
}

/// M_G(x) with the graph's rational weights; product over components.
RatPoly matching_poly(const Graph& g);

/// h_m: h_{-1} = 0, h_0 = h_1 = 1, h_m = h_{m-1} + x h_{m-2}.
RatPoly path_poly(int m);

/// det(I + x B^T B) for a weighted forest, computed from a rational matrix
/// similar to B^T B.
RatPoly gram_charpoly(const Graph& forest, const Bipartition& bip);
RatPoly gram_charpoly(const Graph& forest);

struct ThetaInterpolation {
  RatPoly2 m_theta;       // M_theta(x)
  RatPoly m0;             // M_T
  RatPoly m1;             // M_{T'}
  RatPoly w;              // (M_C - M_{C-v}) / x
  RatPoly e;              // h_{a-1} h_{b-1}
  RatPoly2 d_theta;       // d/dtheta M_theta
  bool endpoints_match = false;      // M_theta at 0 and 1 equal M_T and M_{T'}
  bool derivative_identity = false;  // d_theta == x^2 W E
};

/// Weighted graph G_theta: old edge v-w1 has weight 1 - theta, new edge u_a-w1 weight theta.
Graph theta_graph(const Graph& t, const TreeShiftStep& step, const Rational& theta);
/// Accepts any vertex v carrying two pendant arms (degree 2 allowed).
ThetaInterpolation theta_interpolation(const Graph& t, const TreeShiftStep& step);

struct DeletionRatioEvidence {
  double min_coeff = 0.0;       // min of det(Q[U, alpha])^2 over |alpha| = |U|
  double max_repro_err = 0.0;   // |expansion - M_{Y-U}/M_Y| at the sample points
  int terms = 0;
  bool passed = false;
};

/// Numerical evidence that M_{Y-U}/M_Y is a nonnegative combination of
/// products of at most |U| factors 1/(1 + x lambda).
DeletionRatioEvidence deletion_ratio_evidence(const Graph& y, const std::vector<int>& u, double tol = 1e-9);

}  // namespace spectra_cert
