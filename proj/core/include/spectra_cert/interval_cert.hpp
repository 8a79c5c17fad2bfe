#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "spectra_cert/ball.hpp"

namespace spectra_cert {

using RationalBox = std::pair<Rational, Rational>;

struct CertResult {
  int boxes = 0;
  int max_depth = 0;
  MpfrNum min_margin{256};  // lower endpoint of the smallest accepted residual
  bool passed = false;
};

/// Breakpoints {0, 1/6, 1/2} and k/p <= 1/2, sorted.
std::vector<Rational> strip_breakpoints(int p);
/// Breakpoints {1/6, 1/2} and i/n in [1/6, 1/2] for n in {p, q, p+q-1}, sorted.
std::vector<Rational> box_breakpoints(int p, int q);
/// Consecutive pairs of the points lying in [lo, hi], with lo and hi added.
std::vector<RationalBox> sub_intervals(const std::vector<Rational>& points, const Rational& lo, const Rational& hi);

/// Enclosure of D_p(rho) = 16 pi int_0^rho A_p(u) sin(2 pi u) (cos(2 pi u) - cos(2 pi rho)) du
/// for every rho in [lo, hi], A_p(u) = 1{u < 1/6} + u - {p u}. The box must not
/// straddle a breakpoint of strip_breakpoints(p). Exact zero when hi <= 0.
Ball d_strip(int p, const Rational& lo, const Rational& hi, mpfr_prec_t prec = 256);

/// Enclosure of K_{p,q}(rho) = 4 sum w_a (cos 2 pi a - cos 2 pi rho)^2 over atoms
/// a <= lo, for every rho in [lo, hi]. The box must not straddle an atom.
Ball k_box(int p, int q, const Rational& lo, const Rational& hi, mpfr_prec_t prec = 256);

/// C_* (1/49 + 1/(p+6)^2) with C_* = 17 sqrt(3) pi^2 / 27.
Ball strip_threshold(int p, mpfr_prec_t prec = 256);

using BoxFunction = std::function<Ball(const Rational&, const Rational&)>;

/// Depth-first bisection; a box is accepted when f(box) - threshold - target
/// has a strictly positive lower endpoint. Throws CertificationFailure naming
/// the box once max_depth is reached without acceptance.
CertResult certify_bisect(const BoxFunction& f, const std::vector<RationalBox>& boxes, const Ball& threshold,
                          const Rational& target = Rational(1, 10000), int max_depth = 80);

struct FamilyResult {
  int p = 0;
  int q = 0;  // 0 for strip families
  CertResult result;
  std::string failure;  // message when the family did not certify
  std::string log_line() const;
};

struct AppendixAReport {
  std::vector<FamilyResult> strips;  // p = 2..6
  std::vector<FamilyResult> boxes;   // 2 <= p <= q <= 6
  bool passed() const;
  int max_depth() const;
  std::vector<std::string> log_lines() const;
};

AppendixAReport run_appendix_a(mpfr_prec_t prec = 256, int max_depth = 80);

}  // namespace spectra_cert
