#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "spectra_cert/graph.hpp"
#include "spectra_cert/rational.hpp"

namespace spectra_cert {

/// A computed real number together with a certified absolute error bound.
struct Value {
  double v = 0.0;
  double err = 0.0;
};

/// Eigenvalues in descending order; every entry is within err of the true
/// eigenvalue of the same rank.
struct SpectralData {
  std::vector<double> values;
  double err = 0.0;
};

constexpr double kDefaultTargetErr = 1e-11;

/// Symmetric eigensolver with an a-posteriori error bound. `input_err` bounds
/// the spectral norm of the difference between `m` and the exact matrix it
/// stands for. Throws AccuracyError if the bound exceeds target_err.
SpectralData eig_sym(const MatrixLD& m, double input_err = 0.0, double target_err = kDefaultTargetErr);
/// Same, returning the eigenvectors (columns, matching the descending order).
SpectralData eig_sym_vectors(const MatrixLD& m, MatrixLD& vectors, double input_err = 0.0,
                             double target_err = kDefaultTargetErr);

SpectralData adjacency_spectrum(const Graph& g);
/// Biadjacency matrix with rows = left side, columns = right side (sqrt of weights).
MatrixLD biadjacency(const Graph& g, const Bipartition& bip);
/// Eigenvalues of the Gram matrix on the smaller side, zeros included.
SpectralData mu_values(const Graph& g, const Bipartition& bip);
/// mu_values with the bipartition from bipartition_of; throws ContractViolation if not bipartite.
SpectralData mu_values(const Graph& g);

/// Sum over the spectrum of f, with per-entry perturbation bound dev(lambda, eps)
/// (an upper bound of |f(x) - f(lambda)| for |x - lambda| <= eps).
Value spectral_sum(const SpectralData& s, const std::function<double(double)>& f,
                   const std::function<double(double, double)>& dev);

Value p_energy(const SpectralData& adj, double p);
Value p_energy(const Graph& g, double p);

struct SignedEnergy {
  Value plus;
  Value minus;
  int ambiguous = 0;  // eigenvalues with |lambda| <= err, counted as zero
};
SignedEnergy p_energy_signed(const SpectralData& adj, double p);
SignedEnergy p_energy_signed(const Graph& g, double p);

/// S_t = sum (mu - t)_+^2.
Value stoploss(const SpectralData& mu, double t);
Value stoploss(const Graph& g, double t);

/// r1(y) = y - log(1 + y), accurate for small y.
double r1_scalar(double y);
/// x|E| - log det(I + x B^T B), determinant exact over the rationals.
Value r1(const Graph& g, const Rational& x);
/// det(I + x B^T B) exactly (unweighted bipartite graphs).
Rational gram_det(const Graph& g, const Rational& x);

struct MellinResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double err = 0.0;  // quadrature estimate plus tail bounds, scaled by c_alpha
};
/// t^alpha versus c_alpha * int_0^inf r1(x t) x^(-alpha-1) dx.
MellinResult mellin_check(double t, double alpha, double quad_tol = 1e-10);

/// J_n(rho) = int_0^rho psi(n u) w_rho(u) du with psi(x) = {x} - 1/2 and
/// w_rho(u) = 16 pi sin(2 pi u) (cos(2 pi u) - cos(2 pi rho)); panels split at k/n.
double sawtooth_j(int n, double rho, double quad_tol = 1e-12);

SpectralData lap_spectrum(const Graph& g);
SpectralData q_spectrum(const Graph& g);

enum class LapMatrix { laplacian, signless };
struct LapFunctional {
  enum class Kind { power, estrada, resolvent, threshold } kind = Kind::power;
  double a = 1.0;  // power: alpha, estrada: theta, threshold: a
  double p = 2.0;  // threshold exponent
};
/// power: sum lambda^a; estrada: sum e^(a lambda); resolvent: RL (n+1) or RQ (2n-1);
/// threshold: sum (lambda - a)_+^p.
Value lap_functional(const Graph& g, LapMatrix which, const LapFunctional& f);
Value lap_functional(const SpectralData& s, int n, LapMatrix which, const LapFunctional& f);

/// Psi_t = sum (lambda(Q) - t)_+^2, t >= 2.
Value psi(const Graph& g, double t);
Value psi(const SpectralData& q, double t);

/// Finite union of closed intervals in [0, inf).
struct IntervalSet {
  std::vector<std::pair<double, double>> intervals;
  double err = 0.0;  // endpoint error bound
  double total_length() const;
};

/// Integral of (u - t)_+ over [a, b]; exact piecewise formula.
template <class T>
T i_of(const T& a, const T& b, const T& t) {
  if (t >= b) return T(0);
  if (t >= a) return T(T(b - t) * T(b - t) / 2);
  return T(T(b - a) * T(T(a + b) / 2 - t));
}

double j_of(const IntervalSet& e, double t);

struct ShiftIntervals {
  IntervalSet set;
  SpectralData before;  // spec(M)
  SpectralData after;   // spec(M + b b^T)
  bool interlaced = true;
};
/// Gap intervals between the interlaced spectra of M and M + b b^T.
ShiftIntervals shift_intervals(const MatrixLD& m, const VectorLD& b, double input_err = 0.0);

struct RankOneGain {
  double trace_diff = 0.0;  // tr(M1 - t)_+^2 - tr(M0 - t)_+^2
  double integral = 0.0;    // 2 int_0^1 b^T (M_theta - t)_+ b dtheta
  double err = 0.0;
};
/// Evaluates both sides of the rank-one trace formula; throws AccuracyError if
/// they disagree beyond tol plus the certified error.
RankOneGain rank_one_gain(const MatrixLD& m, const VectorLD& b, double t, double tol = 1e-10);

}  // namespace spectra_cert
