#include "spectra_cert/domination.hpp"

#include <algorithm>
#include <set>

#include "spectra_cert/errors.hpp"
#include "spectra_cert/spectral.hpp"

namespace spectra_cert {

RatPoly PiecewiseI::piece(const Rational& lo, const Rational& hi) const {
  const Rational mid = (lo + hi) / 2;
  const RatPoly t = RatPoly::x();
  RatPoly out;
  for (const auto& term : terms) {
    if (term.u < mid && mid < term.v && (lo < term.u || hi > term.v))
      throw ParameterError("PiecewiseI::piece: piece straddles a term endpoint");
    RatPoly part;
    if (mid >= term.v) continue;
    if (mid >= term.u) {
      const RatPoly vt = RatPoly(term.v) - t;
      part = Rational(1, 2) * (vt * vt);
    } else {
      part = Rational(term.v - term.u) * (RatPoly(Rational((term.u + term.v) / 2)) - t);
    }
    out += term.coeff * part;
  }
  return out;
}

Rational PiecewiseI::eval(const Rational& t) const {
  Rational s(0);
  for (const auto& term : terms) s += term.coeff * i_of<Rational>(term.u, term.v, t);
  return s;
}

Rational PiecewiseI::support_end() const {
  Rational e(0);
  for (const auto& term : terms) e = std::max(e, term.v);
  return e;
}

PiecewiseI domination_main(int d, int r) {
  if (r < 1 || d < r + 2) throw ParameterError("domination_main: need r >= 1 and d >= r + 2");
  const Rational a(d - r + 1, d);
  Rational ac = a;
  ac.canonicalize();
  return PiecewiseI{{{Rational(1), ac, ac + d}, {Rational(-r), Rational(3), Rational(4)}}};
}

PiecewiseI domination_borderline(int d) {
  if (d < 3) throw ParameterError("domination_borderline: need d >= 3");
  Rational a(3, d);
  a.canonicalize();
  return PiecewiseI{{{Rational(1), a, a + d}, {Rational(-1), Rational(2), Rational(4)}, {Rational(3 - d), Rational(3), Rational(4)}}};
}

DominationCase certify_piecewise_nonneg(const PiecewiseI& f) {
  DominationCase out;
  std::set<Rational> pts{Rational(0)};
  for (const auto& term : f.terms) {
    if (term.u > 0) pts.insert(term.u);
    if (term.v > 0) pts.insert(term.v);
  }
  // Split each piece further at the vertex of its quadratic.
  std::vector<Rational> base(pts.begin(), pts.end());
  for (std::size_t i = 0; i + 1 < base.size(); ++i) {
    const RatPoly p = f.piece(base[i], base[i + 1]);
    if (p.degree() == 2) {
      const Rational crit = -p.coeff(1) / (2 * p.coeff(2));
      if (base[i] < crit && crit < base[i + 1]) pts.insert(crit);
    }
  }
  out.breakpoints.assign(pts.begin(), pts.end());
  out.passed = true;
  for (std::size_t i = 0; i + 1 < out.breakpoints.size(); ++i) {
    const Rational& lo = out.breakpoints[i];
    const Rational& hi = out.breakpoints[i + 1];
    const RatPoly p = f.piece(lo, hi);
    auto cert = certify_nonneg(p, lo, hi, std::max(p.degree(), 0), Rational(0),
                               "[" + to_string(lo) + ", " + to_string(hi) + "]");
    out.passed = out.passed && cert.passed;
    out.pieces.push_back(std::move(cert));
  }
  // Beyond the last endpoint every term vanishes, so f == 0 there.
  for (const auto& t : out.breakpoints)
    if (t < 4 && sgn(f.eval(t)) == 0) out.exact_zeros.push_back(t);
  return out;
}

bool DominationSummary::passed() const {
  for (const auto& c : cases)
    if (!c.passed) return false;
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

DominationSummary run_interval_domination(int d_max) {
  if (d_max < 3 || d_max > 40) throw ParameterError("run_interval_domination: d_max must be in 3..40");
  DominationSummary s;
  for (int d = 3; d <= d_max; ++d) {
    for (int r = 1; r + 2 <= d; ++r) {
      const PiecewiseI h = domination_main(d, r);
      DominationCase c = certify_piecewise_nonneg(h);
      c.d = d;
      c.r = r;
      const int m = d - r;
      if (m == 2) {
        Rational a(m + 1, d);
        a.canonicalize();
        const Rational expected = Rational(r) * (ratio(r, 2) - Rational(3, 2) + ratio(3, r + 2));
        const Rational got = h.eval(a + m);
        s.checks.push_back({"H(a+m) closed form d=" + std::to_string(d) + " r=" + std::to_string(r), got == expected,
                            to_string(got)});
        const bool is_zero = std::find(c.exact_zeros.begin(), c.exact_zeros.end(), a + m) != c.exact_zeros.end();
        s.checks.push_back({"H(a+m) = 0 detected iff r = 1, d=" + std::to_string(d), is_zero == (r == 1), {}});
      }
      s.cases.push_back(std::move(c));
    }
    const PiecewiseI hb = domination_borderline(d);
    DominationCase cb = certify_piecewise_nonneg(hb);
    cb.d = d;
    cb.r = d - 2;
    cb.borderline = true;
    Rational a(3, d);
    a.canonicalize();
    const Rational at_a1 = hb.eval(a + 1);
    const Rational want_a1 = ratio((d - 3) * (d * d - 4 * d + 2), 2 * d);
    s.checks.push_back({"H_d(a+1) closed form d=" + std::to_string(d), at_a1 == want_a1, to_string(at_a1)});
    const Rational at2 = hb.eval(Rational(2));
    const Rational want2 = ratio((d - 3) * (d * d * d - 4 * d * d + 3 * d - 3), 2 * d * d);
    s.checks.push_back({"H_d(2) closed form d=" + std::to_string(d), at2 == want2, to_string(at2)});
    s.cases.push_back(std::move(cb));
  }
  return s;
}

}  // namespace spectra_cert
