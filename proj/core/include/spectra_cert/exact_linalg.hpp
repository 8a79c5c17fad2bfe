#pragma once

#include <vector>

#include "spectra_cert/graph.hpp"
#include "spectra_cert/poly.hpp"

namespace spectra_cert {

using RatMatrix = std::vector<std::vector<Rational>>;

RatMatrix rat_identity(std::size_t n);
RatMatrix rat_mul(const RatMatrix& a, const RatMatrix& b);
RatMatrix rat_add(const RatMatrix& a, const RatMatrix& b);
RatMatrix rat_scale(const Rational& s, const RatMatrix& a);
Rational rat_trace(const RatMatrix& a);
std::vector<Rational> rat_mat_vec(const RatMatrix& a, const std::vector<Rational>& v);
Rational rat_dot(const std::vector<Rational>& a, const std::vector<Rational>& b);

RatMatrix adjacency_rat(const Graph& g);           // exact weights (not square-rooted), unweighted -> 0/1
RatMatrix signless_laplacian_rat(const Graph& g);  // unweighted

/// det(lambda I - M), monic, by Faddeev-LeVerrier.
RatPoly charpoly(const RatMatrix& m);
/// det(I + x M).
RatPoly det_one_plus_x(const RatMatrix& m);
/// Exact determinant by fraction-free elimination.
Rational rat_det(RatMatrix m);

/// tr A^k for k = 0..kmax (closed walk counts for unweighted graphs).
std::vector<Integer> closed_walk_traces(const Graph& g, int kmax);

}  // namespace spectra_cert
