#pragma once

// Helpers shared by the campaign suites; not installed.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "spectra_cert/exact_linalg.hpp"
#include "spectra_cert/graph.hpp"
#include "spectra_cert/hp_spectrum.hpp"
#include "spectra_cert/parallel.hpp"
#include "spectra_cert/report.hpp"
#include "spectra_cert/spectral.hpp"

namespace spectra_cert::detail {

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::string param(const char* name, double v) { return std::string(name) + "=" + num(v); }

inline VerificationReport new_report(const std::string& suite, const nlohmann::json& config) {
  VerificationReport r;
  r.suite = suite;
  r.config = config;
  return r;
}

/// Runs body(i, fragment_recorder) for i in [0, count) in parallel and merges
/// the fragments into `into` in index order.
template <class F>
void parallel_fragments(VerificationReport& into, const TolerancePolicy& tol, std::size_t count, int threads,
                        F&& body) {
  std::vector<VerificationReport> parts(count);
  parallel_for(
      count,
      [&](std::size_t i) {
        Recorder rec(parts[i], tol);
        body(i, rec, parts[i]);
      },
      threads);
  for (const auto& p : parts) into.merge(p);
}

/// Gram matrix B^T B on the right side of `bip`, exact.
RatMatrix gram_rat(const Graph& g, const Bipartition& bip);
RatMatrix gram_rat(const Graph& g);

/// Rank-one data for adding u back to G - u: the bipartition of G puts u on
/// the left, M = B_H^T B_H on the right side of G - u, b = indicator of N(u).
struct VertexUpdate {
  MatrixLD m;
  VectorLD b;
  RatMatrix m_rat;
  std::vector<Rational> b_rat;
  std::vector<int> right;  // G-vertex of each column
};
VertexUpdate vertex_update(const Graph& g, int u);

/// J_E(t) with an error bound from the endpoint errors of E.
Value j_value(const IntervalSet& e, double t);

/// Path endpoint interval set E_n^P for P_{n-1} -> P_n.
ShiftIntervals path_endpoint_shift(int n);

/// Closed-form nonzero mu-values of P_m: 4 cos^2(pi i / (m + 1)), i = 1..m/2.
std::vector<long double> path_mu(int m);
/// Absolute error allowed per closed-form value.
constexpr double kClosedFormErr = 1e-14;
/// S_t over closed-form values, with an error bound.
Value stoploss_closed(const std::vector<long double>& mu, double t);

/// coeff * S_t(spec(m)).
struct StoplossTerm {
  RatMatrix m;
  int coeff = 1;
};
/// Certified sign of sum coeff * S_t(M) - rhs by exact root isolation.
Recheck recheck_stoploss_combo(const std::vector<StoplossTerm>& terms, const Rational& rhs, double t, int max_bits);

Recheck recheck_hp(const RatMatrix& a, const RatMatrix& b, HpFunction f, double param, int max_bits);

}  // namespace spectra_cert::detail
