#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spectra_cert/enumerate.hpp"
#include "spectra_cert/errors.hpp"
#include "spectra_cert/graph.hpp"
#include "spectra_cert/harness.hpp"
#include "spectra_cert/spectral.hpp"

namespace sc = spectra_cert;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw spectra_cert::IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json spectra_row(const sc::Graph& g, const std::vector<double>& ps) {
  nlohmann::json row;
  row["graph6"] = sc::to_graph6(g);
  row["n"] = g.n();
  row["m"] = g.m();
  const sc::SpectralData adj = sc::adjacency_spectrum(g);
  row["adjacency"] = adj.values;
  row["err"] = adj.err;
  if (sc::bipartition_of(g)) row["mu"] = sc::mu_values(g).values;
  const sc::SpectralData path = sc::adjacency_spectrum(sc::make_path(g.n()));
  nlohmann::json energies = nlohmann::json::array();
  for (double p : ps) {
    const sc::Value e = sc::p_energy(adj, p), ep = sc::p_energy(path, p);
    energies.push_back({{"p", p}, {"E_p", e.v}, {"err", e.err}, {"E_p_path", ep.v}, {"path_err", ep.err}});
  }
  row["energies"] = energies;
  return row;
}

int print_reports(const std::vector<sc::VerificationReport>& reports, bool json) {
  std::cout << (json ? sc::reports_to_json(reports) : sc::reports_to_markdown(reports));
  for (const auto& r : reports)
    if (!r.passed()) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certification campaigns for spectral path-minimality inequalities"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run the suites selected in a JSON config");
  run->add_option("--config", config_path, "Config file")->required()->check(CLI::ExistingFile);

  std::string graph6, graph_file;
  std::vector<double> ps{2};
  auto* spectra = app.add_subcommand("spectra", "Spectra and p-energies of graphs");
  auto* g6_opt = spectra->add_option("--graph6", graph6, "One graph in graph6");
  auto* file_opt = spectra->add_option("--file", graph_file, "graph6 file, one graph per line")->check(CLI::ExistingFile);
  g6_opt->excludes(file_opt);
  spectra->add_option("--p", ps, "Exponents")->check(CLI::PositiveNumber);

  bool bern_json = false;
  std::string certificates_path;
  auto* bern = app.add_subcommand("certify-bernstein", "Exact Bernstein certificates and identities");
  bern->add_flag("--json", bern_json, "Print the JSON report instead of the table");
  bern->add_option("--certificates", certificates_path, "Write the full JSON report to this file");

  int prec = 256;
  auto* interval = app.add_subcommand("certify-interval", "Ball-arithmetic certification of the strip and box families");
  interval->add_option("--prec", prec, "Working precision in bits")->check(CLI::Range(64, 4096));

  int dmax = 40;
  bool dom_json = false;
  auto* dom = app.add_subcommand("certify-domination", "Exact interval domination for d <= dmax");
  dom->add_option("--dmax", dmax, "Largest degree")->check(CLI::Range(3, 40));
  dom->add_flag("--json", dom_json, "Print the JSON report instead of the table");

  int n = 0;
  std::string cls = "all", format = "graph6";
  auto* en = app.add_subcommand("enumerate", "Enumerate connected graphs up to isomorphism");
  en->add_option("--n", n, "Order")->required()->check(CLI::Range(1, 10));
  en->add_option("--class", cls, "all, bipartite or trees");
  en->add_option("--format", format, "graph6 or edges")->check(CLI::IsMember({"graph6", "edges"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*run) return sc::run(config_path);

    if (*spectra) {
      std::vector<sc::Graph> graphs;
      if (!graph_file.empty())
        graphs = sc::parse_graph6_lines(read_file(graph_file));
      else if (!graph6.empty())
        graphs.push_back(sc::from_graph6(graph6));
      else
        throw sc::ParameterError("give --graph6 or --file");
      for (const auto& g : graphs) std::cout << spectra_row(g, ps).dump() << "\n";
      return 0;
    }

    if (*bern) {
      const std::vector<sc::VerificationReport> reports{sc::certify_bernstein()};
      if (!certificates_path.empty()) sc::emit_report(reports, sc::ReportFormat::json, certificates_path);
      if (!bern_json) {
        for (const auto& row : reports[0].summary["rows"])
          std::cout << row["row"].get<std::string>() << " on " << row["interval"].get<std::string>()
                    << ": min coeff " << row["min_coeff"].get<std::string>() << (row["strict"].get<bool>() ? " > " : " >= ")
                    << row["bound"].get<std::string>() << (row["passed"].get<bool>() ? "  ok" : "  FAIL") << "\n";
        std::cout << reports[0].summary["identities"].get<std::size_t>() << " identities checked, "
                  << reports[0].failures.size() << " failures\n";
        return reports[0].passed() ? 0 : 1;
      }
      return print_reports(reports, true);
    }

    if (*interval) {
      const sc::VerificationReport rep = sc::certify_interval(prec);
      for (const auto& line : rep.summary["log"]) std::cout << line.get<std::string>() << "\n";
      for (const auto& f : rep.failures) std::cout << "FAIL " << f.graph6 << ": " << f.param << "\n";
      return rep.passed() ? 0 : 1;
    }

    if (*dom) return print_reports({sc::certify_interval_domination(dmax)}, dom_json);

    if (*en) {
      for (const auto& g : sc::enumerate_connected(n, sc::parse_graph_class(cls))) {
        if (format == "graph6")
          std::cout << sc::to_graph6(g) << "\n";
        else
          std::cout << sc::to_edge_list(g) << "\n";
      }
      return 0;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
