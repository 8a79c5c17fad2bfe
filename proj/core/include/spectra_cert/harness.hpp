#pragma once

#include <string>
#include <vector>

#include "spectra_cert/config.hpp"
#include "spectra_cert/report.hpp"

namespace spectra_cert {

/// E_p(G) >= E_p(P_n) over all connected graphs, with the strict-separation
/// check against the runner-up for p > 2.
VerificationReport verify_main_theorem(const CampaignConfig& cfg);

/// Bipartite stop-loss comparison, even cycles with the majorization partial
/// sums, and the path splicing bound.
VerificationReport verify_stoploss(const CampaignConfig& cfg);

/// R_1 comparison, vertex-gain lower bound, path-deficit upper bound.
VerificationReport verify_r1(const CampaignConfig& cfg);

/// Path costs, repeated path costs, high-redundancy and borderline deletion,
/// sparse-sun local data, the C_4 plus leaf case and path moments.
VerificationReport verify_deletion_theory(const CampaignConfig& cfg);

/// Exact interval domination for every admissible (d, r) with d <= d_max.
VerificationReport certify_interval_domination(int d_max);

/// Positive p-energies, Laplacian and signless Laplacian comparisons, the
/// edge-count Psi_t comparison and the line-graph results.
VerificationReport verify_applications(const CampaignConfig& cfg);

/// Bernstein envelope rows and the algebraic identities behind them.
VerificationReport certify_bernstein();

/// Ball-arithmetic certification of the strip and box families.
VerificationReport certify_interval(int prec);

/// Runs the selected suites in a fixed order.
std::vector<VerificationReport> run_suites(const CampaignConfig& cfg);

/// Loads the config, runs, writes the configured reports. Returns 0 iff every
/// suite passed.
int run(const std::string& config_file);

/// Statement attached to every campaign report.
extern const char* const kSubstituteNote;

}  // namespace spectra_cert
