#pragma once

#include <functional>
#include <vector>

namespace spectra_cert {

struct QuadResult {
  double value = 0.0;
  double err_est = 0.0;  // accumulated |S2 - S1| / 15 estimate
  bool converged = true;
};

/// Adaptive Simpson on [a, b]; each panel is refined until two successive
/// estimates agree to its share of tol or max_depth is hit.
QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                            int max_depth = 50);

/// Sums adaptive_simpson over consecutive panels of the sorted breakpoint list.
QuadResult piecewise_simpson(const std::function<double(double)>& f, const std::vector<double>& breaks,
                             double tol, int max_depth = 50);

}  // namespace spectra_cert
