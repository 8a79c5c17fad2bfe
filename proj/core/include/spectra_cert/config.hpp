#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spectra_cert/rational.hpp"

namespace spectra_cert {

/// Largest orders per enumerated class.
struct NMax {
  int main_theorem = 8;      // all connected graphs
  int stoploss = 9;          // connected bipartite
  int r1 = 8;                // connected bipartite
  int vertex_gain = 7;       // order after adding the vertex
  int deletion = 9;          // connected bipartite, deletion lemmas
  int applications = 8;      // all connected graphs
  int psi_edges = 10;        // connected graphs by edge count
  int line_square_edges = 9;
  int path_moment_n = 25;
};

struct TolerancePolicy {
  double kappa = 4.0;               // pass iff lhs - rhs >= -kappa * err
  int hp_max_bits = 1024;           // isolation width used by rechecks
  double separation = 1e-6;         // runner-up gap required for p > 2
  double cycle_tol = 1e-9;          // majorization partial sums
  double identity_tol = 1e-8;       // numeric identities (shift identity, 2 S_0)
};

struct SuiteSelection {
  bool main_theorem = true;
  bool stoploss = true;
  bool r1 = true;
  bool deletion_theory = true;
  bool interval_domination = true;
  bool applications = true;
  bool bernstein = true;
  bool interval = true;
};

struct OutputPaths {
  std::string json;
  std::string csv;
  std::string md;
};

struct CampaignConfig {
  NMax n_max;
  std::vector<double> p_grid{2, 2.1, 2.5, 3, 3.5, 4, 4.5, 5, 6.5};
  std::vector<double> t_grid;         // 0, 0.25, ..., 5 unless given
  std::vector<Rational> x_grid{Rational(1, 16), Rational(1, 4), Rational(1), Rational(4), Rational(16)};
  int cycle_m_max = 30;               // cycles C_2m, 2 <= m <= cycle_m_max
  int splice_max = 40;                // 1 <= a, b <= splice_max
  int d_max = 40;                     // interval domination
  int prec = 256;                     // interval certification bits
  int threads = 0;                    // 0 uses thread_count()
  TolerancePolicy tolerance;
  SuiteSelection suites;
  OutputPaths output;

  CampaignConfig();
  /// Throws ParameterError on violated invariants.
  void validate() const;
  nlohmann::json to_json() const;
  /// Effective worker count.
  int workers() const;
};

/// Every suite switched off.
SuiteSelection no_suites();

/// Parses a JSON config; absent keys keep their defaults. Errors are
/// ParseError with the line of the offending text.
CampaignConfig parse_config(const std::string& text);
CampaignConfig load_config(const std::string& path);

}  // namespace spectra_cert
