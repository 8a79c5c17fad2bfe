#include <iostream>

#include "harness_common.hpp"
#include "spectra_cert/bernstein.hpp"
#include "spectra_cert/domination.hpp"
#include "spectra_cert/harness.hpp"
#include "spectra_cert/interval_cert.hpp"

namespace spectra_cert {

using namespace detail;

VerificationReport certify_interval_domination(int d_max) {
  Stopwatch clock;
  VerificationReport rep = new_report("interval_domination", {{"d_max", d_max}});
  const DominationSummary sum = run_interval_domination(d_max);
  long long pieces = 0;
  nlohmann::json zeros = nlohmann::json::array();
  for (const auto& c : sum.cases) {
    ++rep.instances;
    pieces += static_cast<long long>(c.pieces.size());
    const std::string id = std::string(c.borderline ? "H_d" : "H") + "[d=" + std::to_string(c.d) +
                           (c.borderline ? "" : ",r=" + std::to_string(c.r)) + "]";
    if (!c.passed) {
      std::string where;
      for (const auto& p : c.pieces)
        if (!p.passed) where = "[" + to_string(p.alpha) + "," + to_string(p.beta) + "]";
      rep.failures.push_back({id, "piece=" + where, 0, 0, 0});
    }
    for (const auto& z : c.exact_zeros) zeros.push_back({{"case", id}, {"t", to_string(z)}});
  }
  Recorder rec(rep, TolerancePolicy{});
  for (const auto& chk : sum.checks) rec.exact(chk.name, chk.detail, chk.passed);
  rep.summary["cases"] = sum.cases.size();
  rep.summary["pieces"] = pieces;
  rep.summary["exact_zeros"] = zeros;
  rep.runtime_ms = clock.ms();
  return rep;
}

VerificationReport certify_bernstein() {
  Stopwatch clock;
  VerificationReport rep = new_report("bernstein", nlohmann::json::object());
  const AppendixCReport c = run_appendix_c();
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& cert : c.certificates) {
    ++rep.instances;
    rows.push_back({{"row", cert.poly_name},
                    {"interval", "[" + to_string(cert.alpha) + "," + to_string(cert.beta) + "]"},
                    {"degree", cert.degree},
                    {"min_coeff", to_string(cert.min_coeff)},
                    {"bound", to_string(cert.bound)},
                    {"strict", cert.strict},
                    {"passed", cert.passed}});
    if (!cert.passed)
      rep.failures.push_back({cert.poly_name, "min_coeff", to_double(cert.min_coeff), to_double(cert.bound),
                              to_double(cert.min_coeff - cert.bound)});
  }
  Recorder rec(rep, TolerancePolicy{});
  for (const auto& chk : c.checks) rec.exact(chk.name, chk.detail, chk.passed);
  rep.summary["rows"] = rows;
  rep.summary["identities"] = c.checks.size();
  rep.runtime_ms = clock.ms();
  return rep;
}

VerificationReport certify_interval(int prec) {
  Stopwatch clock;
  VerificationReport rep = new_report("interval", {{"prec", prec}});
  const AppendixAReport a = run_appendix_a(prec);
  nlohmann::json fams = nlohmann::json::array();
  auto add = [&](const FamilyResult& f) {
    ++rep.instances;
    const std::string id = f.q == 0 ? "strip,p=" + std::to_string(f.p)
                                    : "box,p=" + std::to_string(f.p) + ",q=" + std::to_string(f.q);
    fams.push_back({{"family", id},
                    {"boxes", f.result.boxes},
                    {"max_depth", f.result.max_depth},
                    {"min_margin", f.result.min_margin.to_string(22)},
                    {"passed", f.result.passed}});
    if (!f.result.passed) rep.failures.push_back({id, f.failure, 0, 0, f.result.min_margin.to_double()});
  };
  for (const auto& f : a.strips) add(f);
  for (const auto& f : a.boxes) add(f);
  rep.summary["families"] = fams;
  rep.summary["max_depth"] = a.max_depth();
  rep.summary["log"] = a.log_lines();
  rep.runtime_ms = clock.ms();
  return rep;
}

std::vector<VerificationReport> run_suites(const CampaignConfig& cfg) {
  cfg.validate();
  std::vector<VerificationReport> out;
  const SuiteSelection& s = cfg.suites;
  if (s.main_theorem) out.push_back(verify_main_theorem(cfg));
  if (s.stoploss) out.push_back(verify_stoploss(cfg));
  if (s.r1) out.push_back(verify_r1(cfg));
  if (s.deletion_theory) out.push_back(verify_deletion_theory(cfg));
  if (s.interval_domination) out.push_back(certify_interval_domination(cfg.d_max));
  if (s.applications) out.push_back(verify_applications(cfg));
  if (s.bernstein) out.push_back(certify_bernstein());
  if (s.interval) out.push_back(certify_interval(cfg.prec));
  return out;
}

int run(const std::string& config_file) {
  const CampaignConfig cfg = load_config(config_file);
  const auto reports = run_suites(cfg);
  if (!cfg.output.json.empty()) emit_report(reports, ReportFormat::json, cfg.output.json);
  if (!cfg.output.csv.empty()) emit_report(reports, ReportFormat::csv, cfg.output.csv);
  if (!cfg.output.md.empty()) emit_report(reports, ReportFormat::md, cfg.output.md);
  std::cout << reports_to_markdown(reports);
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed();
  return ok ? 0 : 1;
}

}  // namespace spectra_cert
