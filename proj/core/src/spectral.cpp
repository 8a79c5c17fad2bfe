#include "spectra_cert/spectral.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include <mpfr.h>

#include <Eigen/Eigenvalues>

#include "spectra_cert/errors.hpp"
#include "spectra_cert/quadrature.hpp"

namespace spectra_cert {
namespace {

constexpr long double kUnitLD = LDBL_EPSILON / 2;
constexpr double kUnitD = DBL_EPSILON / 2;

long double gamma_ld(long double k) { return k * kUnitLD / (1 - k * kUnitLD); }

double round_up(long double x) {
  double d = static_cast<double>(x);
  if (static_cast<long double>(d) < x) d = std::nextafter(d, HUGE_VAL);
  return d;
}

SpectralData eig_core(const MatrixLD& a, MatrixLD* vectors, double input_err, double target_err) {
  const long n = a.rows();
  if (a.cols() != n) throw ParameterError("eig_sym: matrix is not square");
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j)
      if (a(i, j) != a(j, i)) throw ParameterError("eig_sym: matrix is not symmetric");
  SpectralData out;
  if (n == 0) return out;

  Eigen::SelfAdjointEigenSolver<MatrixLD> es(a);
  if (es.info() != Eigen::Success) throw AccuracyError("eig_sym: eigensolver did not converge", HUGE_VAL);
  const MatrixLD& q = es.eigenvectors();
  const VectorLD& lam = es.eigenvalues();

  const MatrixLD r = a * q - q * lam.asDiagonal();
  const MatrixLD f = q.transpose() * q - MatrixLD::Identity(n, n);
  const long double q_fro = q.norm();
  const long double lam_max = lam.cwiseAbs().maxCoeff();
  const long double g = gamma_ld(static_cast<long double>(n) + 2);
  // Rounding committed while forming R and Q^T Q - I.
  const long double res = r.norm() * (1 + g) + g * (a.cwiseAbs().norm() * q_fro + q_fro * lam_max);
  const long double eta = f.norm() * (1 + g) + g * q_fro * q_fro;
  if (!(eta < 0.5L)) throw AccuracyError("eig_sym: eigenvectors far from orthonormal", HUGE_VAL);

  // Weyl on Q^T A Q - Lambda = F Lambda + Q^T R, then Ostrowski for the congruence.
  const long double b1 = eta * lam_max + std::sqrt(1 + eta) * res;
  const long double b2 = (lam_max + b1) * eta / (1 - eta);
  long double total = (b1 + b2) * (1 + 1e-6L) + static_cast<long double>(input_err);
  total += static_cast<long double>(kUnitD) * (lam_max + total);

  out.err = round_up(total);
  if (!(out.err <= target_err))
    throw AccuracyError("eig_sym: achieved bound " + std::to_string(out.err) + " exceeds target", out.err);
  out.values.resize(n);
  for (long i = 0; i < n; ++i) out.values[i] = static_cast<double>(lam(n - 1 - i));
  if (vectors) *vectors = q.rowwise().reverse();
  return out;
}

double frobenius(const MatrixLD& m) { return static_cast<double>(m.norm()); }

}  // namespace

SpectralData eig_sym(const MatrixLD& m, double input_err, double target_err) {
  return eig_core(m, nullptr, input_err, target_err);
}

SpectralData eig_sym_vectors(const MatrixLD& m, MatrixLD& vectors, double input_err, double target_err) {
  return eig_core(m, &vectors, input_err, target_err);
}

SpectralData adjacency_spectrum(const Graph& g) {
  MatrixLD a = g.adjacency_matrix();
  double input_err = g.weighted() ? 2.0 * static_cast<double>(kUnitLD) * frobenius(a) : 0.0;
  return eig_sym(a, input_err);
}

MatrixLD biadjacency(const Graph& g, const Bipartition& bip) {
  std::vector<int> pos(g.n(), -1);
  for (std::size_t i = 0; i < bip.left.size(); ++i) pos[bip.left[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < bip.right.size(); ++i) pos[bip.right[i]] = static_cast<int>(i);
  MatrixLD b = MatrixLD::Zero(static_cast<long>(bip.left.size()), static_cast<long>(bip.right.size()));
  for (int i = 0; i < g.m(); ++i) {
    auto [u, v] = g.edges()[i];
    if (bip.side.at(u) == bip.side.at(v)) throw ParameterError("bipartition inconsistent with graph");
    if (bip.side[u] == 1) std::swap(u, v);
    b(pos[u], pos[v]) = g.weighted() ? sqrt_to_ld(g.weight(i)) : 1.0L;
  }
  return b;
}

SpectralData mu_values(const Graph& g, const Bipartition& bip) {
  if (static_cast<int>(bip.side.size()) != g.n()) throw ParameterError("bipartition size mismatch");
  MatrixLD b = biadjacency(g, bip);
  MatrixLD gram = bip.left.size() <= bip.right.size() ? MatrixLD(b * b.transpose()) : MatrixLD(b.transpose() * b);
  gram = ((gram + gram.transpose()) / 2).eval();
  double input_err = 0.0;
  if (g.weighted()) {
    const long double bf = b.norm();
    input_err = static_cast<double>((gamma_ld(g.n() + 1) + 3 * kUnitLD) * bf * bf * 1.01L);
  }
  if (gram.rows() == 0) return {};
  return eig_sym(gram, input_err);
}

SpectralData mu_values(const Graph& g) {
  auto bip = bipartition_of(g);
  if (!bip) throw ContractViolation("mu_values: graph is not bipartite");
  return mu_values(g, *bip);
}

Value spectral_sum(const SpectralData& s, const std::function<double(double)>& f,
                   const std::function<double(double, double)>& dev) {
  Value out;
  double abs_sum = 0.0;
  for (double lam : s.values) {
    const double fv = f(lam);
    out.v += fv;
    abs_sum += std::fabs(fv);
    out.err += dev(lam, s.err);
  }
  out.err += (static_cast<double>(s.values.size()) + 2.0) * DBL_EPSILON * abs_sum;
  return out;
}

namespace {

double power_dev(double x, double eps, double p) {
  // |x|^p varies by at most this much when x moves by eps.
  const double ax = std::fabs(x);
  if (p == 0.0) return 0.0;
  if (p < 1.0) return std::pow(eps, p);
  return p * std::pow(ax + eps, p - 1.0) * eps;
}

double plus_power_dev(double y, double eps, double p) {
  // (y)_+^p under a perturbation of size eps.
  if (y + eps <= 0.0) return 0.0;
  const double yp = std::max(y, 0.0);
  if (p < 1.0) return std::pow(eps, p);
  return p * std::pow(yp + eps, p - 1.0) * eps;
}

}  // namespace

Value p_energy(const SpectralData& adj, double p) {
  if (!(p >= 0)) throw ParameterError("p_energy: p must be >= 0");
  return spectral_sum(
      adj, [p](double x) { return std::pow(std::fabs(x), p); },
      [p](double x, double e) { return power_dev(x, e, p); });
}

Value p_energy(const Graph& g, double p) { return p_energy(adjacency_spectrum(g), p); }

SignedEnergy p_energy_signed(const SpectralData& adj, double p) {
  if (!(p >= 0)) throw ParameterError("p_energy_signed: p must be >= 0");
  SignedEnergy out;
  double abs_sum = 0.0;
  const double e = adj.err;
  for (double x : adj.values) {
    if (std::fabs(x) <= e) {
      ++out.ambiguous;
      const double slack = std::pow(2.0 * e, p);
      out.plus.err += slack;
      out.minus.err += slack;
      continue;
    }
    const double fv = std::pow(std::fabs(x), p);
    abs_sum += fv;
    Value& side = x > 0 ? out.plus : out.minus;
    side.v += fv;
    side.err += power_dev(x, e, p);
  }
  const double round = (static_cast<double>(adj.values.size()) + 2.0) * DBL_EPSILON * abs_sum;
  out.plus.err += round;
  out.minus.err += round;
  return out;
}

SignedEnergy p_energy_signed(const Graph& g, double p) { return p_energy_signed(adjacency_spectrum(g), p); }

Value stoploss(const SpectralData& mu, double t) {
  if (!(t >= 0)) throw ParameterError("stoploss: t must be >= 0");
  return spectral_sum(
      mu,
      [t](double x) {
        const double y = std::max(x - t, 0.0);
        return y * y;
      },
      [t](double x, double e) { return plus_power_dev(x - t, e, 2.0); });
}

Value stoploss(const Graph& g, double t) { return stoploss(mu_values(g), t); }

double r1_scalar(double y) {
  if (std::fabs(y) < 1e-3) {
    // y^2/2 - y^3/3 + y^4/4 - ...
    double term = y * y, sum = 0.0;
    for (int k = 2; k < 12; ++k) {
      sum += (k % 2 == 0 ? 1.0 : -1.0) * term / k;
      term *= y;
    }
    return sum;
  }
  return y - std::log1p(y);
}

namespace {

Integer bareiss_det(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace

Rational gram_det(const Graph& g, const Rational& x) {
  if (g.weighted()) throw ParameterError("gram_det: weighted graphs are not supported");
  auto bip = bipartition_of(g);
  if (!bip) throw ContractViolation("gram_det: graph is not bipartite");
  const bool use_left = bip->left.size() <= bip->right.size();
  const std::vector<int>& side = use_left ? bip->left : bip->right;
  const std::size_t k = side.size();
  const Integer p = x.get_num(), q = x.get_den();
  std::vector<std::vector<Integer>> m(k, std::vector<Integer>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      long common = 0;
      for (int w : g.neighbors(side[i]))
        if (g.has_edge(w, side[j])) ++common;
      m[i][j] = p * common + (i == j ? q : Integer(0));
    }
  Integer qk;
  mpz_pow_ui(qk.get_mpz_t(), q.get_mpz_t(), k);
  Rational det(bareiss_det(std::move(m)), qk);
  det.canonicalize();
  return det;
}

Value r1(const Graph& g, const Rational& x) {
  if (sgn(x) <= 0) throw ParameterError("r1: x must be positive");
  const Rational det = gram_det(g, x);
  mpfr_t a, b;
  mpfr_inits2(256, a, b, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_q(a, det.get_mpq_t(), MPFR_RNDN);
  mpfr_log(a, a, MPFR_RNDN);
  const Rational xm = x * g.m();
  mpfr_set_q(b, xm.get_mpq_t(), MPFR_RNDN);
  mpfr_sub(a, b, a, MPFR_RNDN);
  Value out;
  out.v = mpfr_get_d(a, MPFR_RNDN);
  out.err = std::fabs(out.v) * DBL_EPSILON + 1e-70 * (1.0 + xm.get_d());
  mpfr_clears(a, b, static_cast<mpfr_ptr>(nullptr));
  return out;
}

MellinResult mellin_check(double t, double alpha, double quad_tol) {
  if (!(t >= 0)) throw ParameterError("mellin_check: t must be >= 0");
  if (!(alpha > 1 && alpha < 2)) throw ParameterError("mellin_check: alpha must lie in (1,2)");
  MellinResult out;
  if (t == 0) return out;
  out.lhs = std::pow(t, alpha);
  const double c = alpha * std::sin(M_PI * (alpha - 1)) / M_PI;
  // x = e^s; tails bounded with r1(y) <= y^2/2 below and r1(y) <= y above.
  const double tail_tol = 0.25 * quad_tol / c;
  const double s_hi = std::log(t / ((alpha - 1) * tail_tol)) / (alpha - 1);
  const double s_lo = std::log(2.0 * (2 - alpha) * tail_tol / (t * t)) / (2 - alpha);
  const double tails = t * std::exp((1 - alpha) * s_hi) / (alpha - 1) +
                       0.5 * t * t * std::exp((2 - alpha) * s_lo) / (2 - alpha);
  auto integrand = [t, alpha](double s) { return r1_scalar(t * std::exp(s)) * std::exp(-alpha * s); };
  std::vector<double> breaks;
  const int panels = std::max(8, static_cast<int>(std::ceil((s_hi - s_lo) / 2.0)));
  for (int i = 0; i <= panels; ++i) breaks.push_back(s_lo + (s_hi - s_lo) * i / panels);
  QuadResult q = piecewise_simpson(integrand, breaks, 0.5 * quad_tol / c);
  if (!q.converged) throw AccuracyError("mellin_check: quadrature did not converge", q.err_est * c);
  out.rhs = c * q.value;
  out.err = c * (q.err_est + tails);
  return out;
}

double sawtooth_j(int n, double rho, double quad_tol) {
  if (n < 1) throw ParameterError("sawtooth_j: n must be >= 1");
  if (!(rho >= 0 && rho <= 0.5)) throw ParameterError("sawtooth_j: rho must lie in [0, 1/2]");
  const double c = std::cos(2 * M_PI * rho);
  std::vector<double> breaks{0.0};
  for (int k = 1; k < n * rho; ++k) breaks.push_back(static_cast<double>(k) / n);
  breaks.push_back(rho);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    // On a panel n u - floor(n u) = n u - k with k fixed at the left end.
    const double k = std::floor(n * breaks[i] + 1e-12);
    auto f = [n, k, c](double u) {
      return (n * u - k - 0.5) * 16 * M_PI * std::sin(2 * M_PI * u) * (std::cos(2 * M_PI * u) - c);
    };
    const QuadResult q = adaptive_simpson(f, breaks[i], breaks[i + 1], quad_tol);
    if (!q.converged) throw AccuracyError("sawtooth_j: quadrature did not converge", q.err_est);
    total += q.value;
  }
  return total;
}

SpectralData lap_spectrum(const Graph& g) {
  if (g.weighted()) throw ParameterError("lap_spectrum: weighted graphs are not supported");
  return eig_sym(g.laplacian_matrix());
}

SpectralData q_spectrum(const Graph& g) {
  if (g.weighted()) throw ParameterError("q_spectrum: weighted graphs are not supported");
  return eig_sym(g.signless_laplacian_matrix());
}

Value lap_functional(const SpectralData& s, int n, LapMatrix which, const LapFunctional& f) {
  using K = LapFunctional::Kind;
  switch (f.kind) {
    case K::power: {
      const double al = f.a;
      if (!(al >= 1)) throw ParameterError("lap_functional: power needs alpha >= 1");
      return spectral_sum(
          s, [al](double x) { return std::pow(std::max(x, 0.0), al); },
          [al](double x, double e) { return plus_power_dev(x, e, al); });
    }
    case K::estrada: {
      const double th = f.a;
      if (!(th > 0)) throw ParameterError("lap_functional: estrada needs theta > 0");
      return spectral_sum(
          s, [th](double x) { return std::exp(th * x); },
          [th](double x, double e) { return th * std::exp(th * (x + e)) * e; });
    }
    case K::resolvent: {
      const double c = which == LapMatrix::laplacian ? n + 1.0 : 2.0 * n - 1.0;
      return spectral_sum(
          s, [c](double x) { return 1.0 / (c - x); },
          [c](double x, double e) {
            const double gap = c - x - e;
            if (!(gap > 0)) throw AccuracyError("lap_functional: resolvent pole within error", e);
            return e / (gap * (c - x));
          });
    }
    case K::threshold: {
      const double a = f.a, p = f.p;
      if (!(a >= 0) || !(p >= 2)) throw ParameterError("lap_functional: threshold needs a >= 0 and p >= 2");
      return spectral_sum(
          s, [a, p](double x) { return std::pow(std::max(x - a, 0.0), p); },
          [a, p](double x, double e) { return plus_power_dev(x - a, e, p); });
    }
  }
  throw ParameterError("lap_functional: unknown kind");
}

Value lap_functional(const Graph& g, LapMatrix which, const LapFunctional& f) {
  SpectralData s = which == LapMatrix::laplacian ? lap_spectrum(g) : q_spectrum(g);
  return lap_functional(s, g.n(), which, f);
}

Value psi(const SpectralData& q, double t) {
  if (!(t >= 2)) throw ParameterError("psi: t must be >= 2");
  return spectral_sum(
      q,
      [t](double x) {
        const double y = std::max(x - t, 0.0);
        return y * y;
      },
      [t](double x, double e) { return plus_power_dev(x - t, e, 2.0); });
}

Value psi(const Graph& g, double t) { return psi(q_spectrum(g), t); }

double IntervalSet::total_length() const {
  double s = 0.0;
  for (const auto& [a, b] : intervals) s += b - a;
  return s;
}

double j_of(const IntervalSet& e, double t) {
  double s = 0.0;
  for (const auto& [a, b] : e.intervals) s += i_of(a, b, t);
  return s;
}

ShiftIntervals shift_intervals(const MatrixLD& m, const VectorLD& b, double input_err) {
  if (m.rows() != b.size()) throw ParameterError("shift_intervals: dimension mismatch");
  ShiftIntervals out;
  out.before = eig_sym(m, input_err);
  const MatrixLD m1 = m + b * b.transpose();
  const double add_err =
      input_err + static_cast<double>(4 * kUnitLD * (m.cwiseAbs().norm() + b.squaredNorm()));
  out.after = eig_sym(m1, add_err);
  const double e = out.before.err + out.after.err;
  if (!out.before.values.empty() && out.before.values.back() < -out.before.err)
    throw ContractViolation("shift_intervals: matrix is not positive semidefinite");
  const std::size_t n = out.before.values.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double al = out.before.values[i], be = out.after.values[i];
    if (be < al - e) out.interlaced = false;
    if (i + 1 < n && al < out.after.values[i + 1] - e) out.interlaced = false;
    const double lo = std::max(al, 0.0);
    const double hi = std::max(be, lo);
    if (hi > lo) out.set.intervals.emplace_back(lo, hi);
  }
  std::reverse(out.set.intervals.begin(), out.set.intervals.end());
  out.set.err = e;
  return out;
}

RankOneGain rank_one_gain(const MatrixLD& m, const VectorLD& b, double t, double tol) {
  RankOneGain out;
  if (b.size() == 0 || b.isZero(0)) return out;
  ShiftIntervals sh = shift_intervals(m, b);
  auto sq = [t](double x) {
    const double y = std::max(x - t, 0.0);
    return y * y;
  };
  auto dev = [t](double x, double e) { return plus_power_dev(x - t, e, 2.0); };
  Value after = spectral_sum(sh.after, sq, dev);
  Value before = spectral_sum(sh.before, sq, dev);
  out.trace_diff = after.v - before.v;
  out.err = after.err + before.err;

  const MatrixLD outer = b * b.transpose();
  auto integrand = [&](double theta) {
    MatrixLD vec;
    const MatrixLD mt = m + static_cast<long double>(theta) * outer;
    SpectralData s = eig_sym_vectors(mt, vec, 0.0, 1e-6);
    const VectorLD proj = vec.transpose() * b;
    long double acc = 0;
    for (long k = 0; k < proj.size(); ++k) {
      const long double y = static_cast<long double>(s.values[k]) - t;
      if (y > 0) acc += y * proj(k) * proj(k);
    }
    return static_cast<double>(acc);
  };
  // At most one eigenvalue of M + theta b b^T crosses t; the crossing solves
  // 1 + theta b^T (M - t)^{-1} b = 0.
  std::vector<double> breaks{0.0, 1.0};
  const double gap = std::fabs(t - sh.before.values.front());
  double min_gap = gap;
  for (double x : sh.before.values) min_gap = std::min(min_gap, std::fabs(x - t));
  if (min_gap > 1e-9) {
    const MatrixLD shifted = m - static_cast<long double>(t) * MatrixLD::Identity(m.rows(), m.cols());
    const VectorLD y = shifted.ldlt().solve(b);
    const long double s = b.dot(y);
    if (s < 0) {
      const double theta_star = static_cast<double>(-1 / s);
      if (theta_star > 0 && theta_star < 1) breaks = {0.0, theta_star, 1.0};
    }
  }
  QuadResult q = piecewise_simpson(integrand, breaks, 0.1 * tol);
  out.integral = 2.0 * q.value;
  out.err += 2.0 * q.err_est;
  const double scale = std::max(1.0, std::fabs(out.trace_diff));
  if (std::fabs(out.integral - out.trace_diff) > tol * scale + out.err)
    throw AccuracyError("rank_one_gain: trace formula sides disagree",
                        std::fabs(out.integral - out.trace_diff));
  return out;
}

}  // namespace spectra_cert
