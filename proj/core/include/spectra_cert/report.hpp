#pragma once

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spectra_cert/config.hpp"

namespace spectra_cert {

struct Failure {
  std::string graph6;  // instance id; a descriptive label when there is no graph
  std::string param;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs
};

/// An instance whose numeric margin was below kappa * err, with its recheck.
struct NearEquality {
  std::string graph6;
  std::string param;
  double diff = 0.0;
  double err = 0.0;
  std::string method;   // "exact-integer", "exact-trace", "charpoly", "hp-<bits>", "none"
  std::string outcome;  // "equal", "greater", "less", "unresolved"
};

struct VerificationReport {
  std::string suite;
  nlohmann::json config;
  long long instances = 0;
  std::vector<Failure> failures;
  std::vector<NearEquality> near_equalities;
  double runtime_ms = 0.0;
  std::vector<std::string> notes;
  nlohmann::json summary = nlohmann::json::object();

  bool passed() const { return failures.empty(); }
  /// Appends another fragment's instances, failures and near equalities.
  void merge(const VerificationReport& other);
  nlohmann::json to_json() const;
};

/// Result of an exact or high-precision recheck of lhs - rhs.
struct Recheck {
  int sign = 0;  // certified sign of lhs - rhs
  bool resolved = false;
  std::string method;
};

using RecheckFn = std::function<Recheck()>;

/// Applies the margin policy and records outcomes into a report fragment.
class Recorder {
 public:
  Recorder(VerificationReport& report, const TolerancePolicy& tol) : report_(report), tol_(tol) {}

  /// Numeric lhs >= rhs with absolute error bound err. Returns the certified
  /// sign of lhs - rhs when it is known (after any recheck), else 0 with
  /// resolved == false.
  Recheck ge(const std::string& id, const std::string& param, double lhs, double rhs, double err,
             const RecheckFn& recheck = {});
  /// An exactly decided check.
  void exact(const std::string& id, const std::string& param, bool ok, double lhs = 0.0, double rhs = 0.0);
  /// |lhs - rhs| <= tol.
  void close(const std::string& id, const std::string& param, double lhs, double rhs, double tol);
  void fail(const std::string& id, const std::string& param, double lhs, double rhs);

 private:
  VerificationReport& report_;
  const TolerancePolicy& tol_;
};

enum class ReportFormat { json, csv, md };

/// {"reports": [...], "passed": bool}; keys sorted, so output is canonical.
std::string reports_to_json(const std::vector<VerificationReport>& reports);
std::string reports_to_csv(const std::vector<VerificationReport>& reports);
std::string reports_to_markdown(const std::vector<VerificationReport>& reports);
void emit_report(const std::vector<VerificationReport>& reports, ReportFormat fmt, const std::string& path);
ReportFormat parse_report_format(const std::string& s);

}  // namespace spectra_cert
