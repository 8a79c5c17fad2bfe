#include "spectra_cert/quadrature.hpp"

#include <cmath>

namespace spectra_cert {
namespace {

struct Panel {
  const std::function<double(double)>& f;
  bool converged = true;
  double err = 0.0;

  double step(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (std::fabs(diff) <= 15.0 * tol || depth <= 0) {
      if (depth <= 0 && std::fabs(diff) > 15.0 * tol) converged = false;
      err += std::fabs(diff) / 15.0;
      return left + right + diff / 15.0;
    }
    return step(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           step(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  }
};

}  // namespace

QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                            int max_depth) {
  if (a == b) return {};
  Panel p{f};
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  QuadResult r;
  r.value = p.step(a, b, fa, fm, fb, whole, tol, max_depth);
  r.err_est = p.err;
  r.converged = p.converged;
  return r;
}

QuadResult piecewise_simpson(const std::function<double(double)>& f, const std::vector<double>& breaks,
                             double tol, int max_depth) {
  QuadResult total;
  if (breaks.size() < 2) return total;
  const double span = breaks.back() - breaks.front();
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double w = breaks[i + 1] - breaks[i];
    if (w <= 0) continue;
    QuadResult r = adaptive_simpson(f, breaks[i], breaks[i + 1], tol * w / span, max_depth);
    total.value += r.value;
    total.err_est += r.err_est;
    total.converged = total.converged && r.converged;
  }
  return total;
}

}  // namespace spectra_cert
