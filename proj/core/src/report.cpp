#include "spectra_cert/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "spectra_cert/errors.hpp"

namespace spectra_cert {

using nlohmann::json;

void VerificationReport::merge(const VerificationReport& other) {
  instances += other.instances;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  near_equalities.insert(near_equalities.end(), other.near_equalities.begin(), other.near_equalities.end());
}

namespace {

// JSON has no inf/nan; keep them readable.
json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

}  // namespace

json VerificationReport::to_json() const {
  json j;
  j["suite"] = suite;
  j["config"] = config;
  j["instances"] = instances;
  json f = json::array();
  for (const auto& x : failures)
    f.push_back({{"graph6", x.graph6},
                 {"param", x.param},
                 {"lhs", number(x.lhs)},
                 {"rhs", number(x.rhs)},
                 {"margin", number(x.margin)}});
  j["failures"] = f;
  json ne = json::array();
  for (const auto& x : near_equalities)
    ne.push_back({{"graph6", x.graph6},
                  {"param", x.param},
                  {"diff", number(x.diff)},
                  {"err", number(x.err)},
                  {"method", x.method},
                  {"outcome", x.outcome}});
  j["near_equalities"] = ne;
  j["runtime_ms"] = std::round(runtime_ms);
  j["notes"] = notes;
  j["summary"] = summary;
  j["passed"] = passed();
  return j;
}

Recheck Recorder::ge(const std::string& id, const std::string& param, double lhs, double rhs, double err,
                     const RecheckFn& recheck) {
  ++report_.instances;
  const double diff = lhs - rhs;
  const double floor = tol_.kappa * err;
  if (diff == 0.0 && err == 0.0) return {0, true, "exact"};
  if (std::abs(diff) >= floor && err >= 0.0 && std::isfinite(diff)) {
    if (diff < 0) fail(id, param, lhs, rhs);
    return {diff > 0 ? 1 : -1, true, "numeric"};
  }
  NearEquality ne{id, param, diff, err, "none", "unresolved"};
  Recheck rc;
  if (recheck) rc = recheck();
  ne.method = rc.method.empty() ? "none" : rc.method;
  if (rc.resolved) ne.outcome = rc.sign > 0 ? "greater" : rc.sign < 0 ? "less" : "equal";
  report_.near_equalities.push_back(ne);
  if (!rc.resolved || rc.sign < 0) fail(id, param, lhs, rhs);
  return rc;
}

void Recorder::exact(const std::string& id, const std::string& param, bool ok, double lhs, double rhs) {
  ++report_.instances;
  if (!ok) fail(id, param, lhs, rhs);
}

void Recorder::close(const std::string& id, const std::string& param, double lhs, double rhs, double tol) {
  ++report_.instances;
  if (!(std::abs(lhs - rhs) <= tol)) fail(id, param, lhs, rhs);
}

void Recorder::fail(const std::string& id, const std::string& param, double lhs, double rhs) {
  report_.failures.push_back(Failure{id, param, lhs, rhs, lhs - rhs});
}

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
  json j;
  j["reports"] = json::array();
  bool ok = true;
  for (const auto& r : reports) {
    j["reports"].push_back(r.to_json());
    ok = ok && r.passed();
  }
  j["passed"] = ok;
  return j.dump(2) + "\n";
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "suite,kind,graph6,param,lhs,rhs,margin,instances,runtime_ms\n";
  for (const auto& r : reports) {
    os << csv_field(r.suite) << ",summary,,,,,," << r.instances << ',' << fmt(std::round(r.runtime_ms)) << '\n';
    for (const auto& f : r.failures)
      os << csv_field(r.suite) << ",failure," << csv_field(f.graph6) << ',' << csv_field(f.param) << ','
         << fmt(f.lhs) << ',' << fmt(f.rhs) << ',' << fmt(f.margin) << ",,\n";
    for (const auto& n : r.near_equalities)
      os << csv_field(r.suite) << ",near-" << n.outcome << ',' << csv_field(n.graph6) << ','
         << csv_field(n.param) << ",,," << fmt(n.diff) << ",,\n";
  }
  return os.str();
}

std::string reports_to_markdown(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "| suite | instances | failures | near equalities | runtime (ms) | status |\n";
  os << "|---|---:|---:|---:|---:|---|\n";
  for (const auto& r : reports)
    os << "| " << r.suite << " | " << r.instances << " | " << r.failures.size() << " | "
       << r.near_equalities.size() << " | " << fmt(std::round(r.runtime_ms)) << " | "
       << (r.passed() ? "pass" : "FAIL") << " |\n";
  for (const auto& r : reports) {
    if (r.failures.empty()) continue;
    os << "\n### " << r.suite << " failures\n\n| graph6 | param | lhs | rhs | margin |\n|---|---|---:|---:|---:|\n";
    for (const auto& f : r.failures)
      os << "| `" << f.graph6 << "` | " << f.param << " | " << fmt(f.lhs) << " | " << fmt(f.rhs) << " | "
         << fmt(f.margin) << " |\n";
  }
  bool any_notes = false;
  for (const auto& r : reports) any_notes = any_notes || !r.notes.empty();
  if (any_notes) {
    os << "\n### Notes\n\n";
    for (const auto& r : reports)
      for (const auto& n : r.notes) os << "- " << r.suite << ": " << n << '\n';
  }
  return os.str();
}

void emit_report(const std::vector<VerificationReport>& reports, ReportFormat fmt_kind, const std::string& path) {
  std::string body;
  switch (fmt_kind) {
    case ReportFormat::json: body = reports_to_json(reports); break;
    case ReportFormat::csv: body = reports_to_csv(reports); break;
    case ReportFormat::md: body = reports_to_markdown(reports); break;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write report " + path);
  out << body;
  if (!out) throw IoError("error writing report " + path);
}

ReportFormat parse_report_format(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  if (s == "md") return ReportFormat::md;
  throw ParameterError("unknown report format: " + s);
}

}  // namespace spectra_cert
