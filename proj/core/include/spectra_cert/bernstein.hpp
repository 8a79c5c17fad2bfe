#pragma once

#include <string>
#include <vector>

#include "spectra_cert/poly.hpp"

namespace spectra_cert {

struct BernsteinCertificate {
  std::string poly_name;
  Rational alpha;
  Rational beta;
  int degree = 0;
  std::vector<Rational> coeffs;
  Rational min_coeff;
  Rational bound;
  bool strict = false;  // verdict uses min > bound instead of min >= bound
  bool passed = false;
};

/// b_0..b_m with P((1-x) alpha + x beta) = sum b_k C(m,k) x^k (1-x)^(m-k).
std::vector<Rational> bernstein_coeffs(const RatPoly& p, const Rational& alpha, const Rational& beta, int m);

/// m < 0 selects m = deg(P).
BernsteinCertificate certify_nonneg(const RatPoly& p, const Rational& alpha, const Rational& beta, int m,
                                    const Rational& bound, std::string name = {}, bool strict = false);

/// b^T (T_N + theta b b^T)^j b with T_N tridiagonal (diagonal 2,..,2,1, off-diagonal 1), b = e_1 + e_N.
RatPoly moment_poly(int n, int j);

/// Fifth moment b^T (Q + theta b b^T)^5 b of the path-plus-leaf signless
/// Laplacian model on L + 2 vertices, b = e_0 + e_1.
RatPoly line_model_poly(int l);

/// The q_1..q_5 polynomials of the N = 7 tridiagonal model, index 1..5.
RatPoly moment_target(int j);
/// 64 th^5 + 240 th^4 + 472 th^3 + 603 th^2 + 512 th + 249.
RatPoly line_model_target();

struct NamedCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AppendixCReport {
  std::vector<BernsteinCertificate> certificates;  // C.2 rows then the line-graph rows
  std::vector<NamedCheck> checks;
  bool passed() const;
  /// Name of the first failing certificate or check, empty if all passed.
  std::string first_failure() const;
};

/// Scalar envelope rows: G0, G1, G2, F1, F2a..F2d.
std::vector<BernsteinCertificate> scalar_envelope_certificates();
/// Line-graph rows LG0..LG5.
std::vector<BernsteinCertificate> line_graph_certificates();
/// Polynomial for a named row, together with its interval (for cross-checks).
struct EnvelopeRow {
  std::string name;
  RatPoly poly;
  Rational alpha;
  Rational beta;
  Rational bound;
  bool strict = false;
};
std::vector<EnvelopeRow> envelope_rows();

AppendixCReport run_appendix_c();

}  // namespace spectra_cert
