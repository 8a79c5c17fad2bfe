#include "spectra_cert/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "spectra_cert/enumerate.hpp"
#include "spectra_cert/errors.hpp"
#include "spectra_cert/parallel.hpp"

namespace spectra_cert {

namespace {

using nlohmann::json;

int line_at(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

/// Line of a dotted key path such as "n_max.r1", each component searched
/// after the previous one; 0 when absent.
int line_of_key(const std::string& text, const std::string& path) {
  std::size_t pos = 0, start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string part = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    pos = text.find('"' + part + '"', pos);
    if (pos == std::string::npos) return 0;
    if (dot == std::string::npos) return line_at(text, pos);
    start = dot + 1;
  }
}

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ParseError("config key \"" + key + "\": " + what, line_of_key(text_, key));
  }

  void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) const {
    if (!obj.is_object()) fail(where, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool known = false;
      for (const char* k : keys) known = known || it.key() == k;
      if (!known) fail(it.key(), "unknown key in " + where);
    }
  }

  void get_int(const json& obj, const char* key, int& out) const {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(key, "expected an integer");
    out = v.get<int>();
  }

  void get_double(const json& obj, const char* key, double& out) const {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number()) fail(key, "expected a number");
    out = v.get<double>();
  }

  void get_bool(const json& obj, const char* key, bool& out) const {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_boolean()) fail(key, "expected true or false");
    out = v.get<bool>();
  }

  void get_string(const json& obj, const char* key, std::string& out) const {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_string()) fail(key, "expected a string");
    out = v.get<std::string>();
  }

  Rational rational(const json& v, const char* key) const {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_number()) return Rational(v.get<double>());
    if (v.is_string()) {
      try {
        return parse_rational(v.get<std::string>());
      } catch (const std::exception& e) {
        fail(key, e.what());
      }
    }
    fail(key, "expected a number or a rational string");
  }

  void get_doubles(const json& obj, const char* key, std::vector<double>& out) const {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_array()) fail(key, "expected an array");
    out.clear();
    for (const auto& e : v) out.push_back(to_double(rational(e, key)));
  }

  void get_rationals(const json& obj, const char* key, std::vector<Rational>& out) const {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_array()) fail(key, "expected an array");
    out.clear();
    for (const auto& e : v) out.push_back(rational(e, key));
  }

 private:
  const std::string& text_;
};

template <class T>
bool strictly_sorted(const std::vector<T>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i - 1] < v[i])) return false;
  return true;
}

}  // namespace

CampaignConfig::CampaignConfig() {
  for (int k = 0; k <= 20; ++k) t_grid.push_back(0.25 * k);
}

SuiteSelection no_suites() {
  SuiteSelection s;
  s.main_theorem = s.stoploss = s.r1 = s.deletion_theory = false;
  s.interval_domination = s.applications = s.bernstein = s.interval = false;
  return s;
}

void CampaignConfig::validate() const {
  const EnumerationCaps caps;
  auto cap = [](int v, int lo, int hi, const char* name) {
    if (v < lo || v > hi)
      throw ParameterError(std::string(name) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  };
  cap(n_max.main_theorem, 1, caps.all, "n_max.main_theorem");
  cap(n_max.stoploss, 2, caps.bipartite, "n_max.stoploss");
  cap(n_max.r1, 2, caps.bipartite, "n_max.r1");
  cap(n_max.vertex_gain, 2, caps.all, "n_max.vertex_gain");
  cap(n_max.deletion, 2, caps.bipartite, "n_max.deletion");
  cap(n_max.applications, 1, caps.all, "n_max.applications");
  cap(n_max.psi_edges, 1, caps.edges, "n_max.psi_edges");
  cap(n_max.line_square_edges, 1, caps.edges, "n_max.line_square_edges");
  cap(n_max.path_moment_n, 2, 60, "n_max.path_moment_n");
  if (p_grid.empty()) throw ParameterError("p_grid must be non-empty");
  if (t_grid.empty()) throw ParameterError("t_grid must be non-empty");
  if (x_grid.empty()) throw ParameterError("x_grid must be non-empty");
  if (!strictly_sorted(p_grid)) throw ParameterError("p_grid must be strictly increasing");
  if (!strictly_sorted(t_grid)) throw ParameterError("t_grid must be strictly increasing");
  if (!strictly_sorted(x_grid)) throw ParameterError("x_grid must be strictly increasing");
  if (p_grid.front() < 2) throw ParameterError("p_grid must lie in [2, inf)");
  if (t_grid.front() < 0 || t_grid.back() > 5) throw ParameterError("t_grid must lie in [0, 5]");
  if (sgn(x_grid.front()) <= 0) throw ParameterError("x_grid must be positive");
  cap(cycle_m_max, 2, 200, "cycle_m_max");
  cap(splice_max, 1, 200, "splice_max");
  cap(d_max, 3, 40, "d_max");
  cap(prec, 64, 4096, "prec");
  if (threads < 0) throw ParameterError("threads must be non-negative");
  if (!(tolerance.kappa > 0)) throw ParameterError("tolerance.kappa must be positive");
  if (tolerance.hp_max_bits < 64) throw ParameterError("tolerance.hp_max_bits must be at least 64");
}

int CampaignConfig::workers() const { return threads > 0 ? threads : thread_count(); }

nlohmann::json CampaignConfig::to_json() const {
  json j;
  j["n_max"] = {{"main_theorem", n_max.main_theorem},
                {"stoploss", n_max.stoploss},
                {"r1", n_max.r1},
                {"vertex_gain", n_max.vertex_gain},
                {"deletion", n_max.deletion},
                {"applications", n_max.applications},
                {"psi_edges", n_max.psi_edges},
                {"line_square_edges", n_max.line_square_edges},
                {"path_moment_n", n_max.path_moment_n}};
  j["p_grid"] = p_grid;
  j["t_grid"] = t_grid;
  json xs = json::array();
  for (const auto& x : x_grid) xs.push_back(to_string(x));
  j["x_grid"] = xs;
  j["cycle_m_max"] = cycle_m_max;
  j["splice_max"] = splice_max;
  j["d_max"] = d_max;
  j["prec"] = prec;
  j["tolerance"] = {{"kappa", tolerance.kappa},
                    {"hp_max_bits", tolerance.hp_max_bits},
                    {"separation", tolerance.separation},
                    {"cycle_tol", tolerance.cycle_tol},
                    {"identity_tol", tolerance.identity_tol}};
  j["suites"] = {{"main_theorem", suites.main_theorem},
                 {"stoploss", suites.stoploss},
                 {"r1", suites.r1},
                 {"deletion_theory", suites.deletion_theory},
                 {"interval_domination", suites.interval_domination},
                 {"applications", suites.applications},
                 {"bernstein", suites.bernstein},
                 {"interval", suites.interval}};
  return j;
}

CampaignConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), line_at(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  Reader r(text);
  CampaignConfig cfg;
  r.only_keys(root, "config",
              {"n_max", "p_grid", "t_grid", "x_grid", "cycle_m_max", "splice_max", "d_max", "prec", "threads",
               "tolerance", "suites", "output"});
  if (root.contains("n_max")) {
    const json& n = root.at("n_max");
    r.only_keys(n, "n_max",
                {"main_theorem", "stoploss", "r1", "vertex_gain", "deletion", "applications", "psi_edges",
                 "line_square_edges", "path_moment_n"});
    r.get_int(n, "main_theorem", cfg.n_max.main_theorem);
    r.get_int(n, "stoploss", cfg.n_max.stoploss);
    r.get_int(n, "r1", cfg.n_max.r1);
    r.get_int(n, "vertex_gain", cfg.n_max.vertex_gain);
    r.get_int(n, "deletion", cfg.n_max.deletion);
    r.get_int(n, "applications", cfg.n_max.applications);
    r.get_int(n, "psi_edges", cfg.n_max.psi_edges);
    r.get_int(n, "line_square_edges", cfg.n_max.line_square_edges);
    r.get_int(n, "path_moment_n", cfg.n_max.path_moment_n);
  }
  r.get_doubles(root, "p_grid", cfg.p_grid);
  r.get_doubles(root, "t_grid", cfg.t_grid);
  r.get_rationals(root, "x_grid", cfg.x_grid);
  r.get_int(root, "cycle_m_max", cfg.cycle_m_max);
  r.get_int(root, "splice_max", cfg.splice_max);
  r.get_int(root, "d_max", cfg.d_max);
  r.get_int(root, "prec", cfg.prec);
  r.get_int(root, "threads", cfg.threads);
  if (root.contains("tolerance")) {
    const json& t = root.at("tolerance");
    r.only_keys(t, "tolerance", {"kappa", "hp_max_bits", "separation", "cycle_tol", "identity_tol"});
    r.get_double(t, "kappa", cfg.tolerance.kappa);
    r.get_int(t, "hp_max_bits", cfg.tolerance.hp_max_bits);
    r.get_double(t, "separation", cfg.tolerance.separation);
    r.get_double(t, "cycle_tol", cfg.tolerance.cycle_tol);
    r.get_double(t, "identity_tol", cfg.tolerance.identity_tol);
  }
  if (root.contains("suites")) {
    const json& s = root.at("suites");
    r.only_keys(s, "suites",
                {"main_theorem", "stoploss", "r1", "deletion_theory", "interval_domination", "applications",
                 "bernstein", "interval"});
    // A suites object lists what runs; omitted suites are off.
    cfg.suites = no_suites();
    r.get_bool(s, "main_theorem", cfg.suites.main_theorem);
    r.get_bool(s, "stoploss", cfg.suites.stoploss);
    r.get_bool(s, "r1", cfg.suites.r1);
    r.get_bool(s, "deletion_theory", cfg.suites.deletion_theory);
    r.get_bool(s, "interval_domination", cfg.suites.interval_domination);
    r.get_bool(s, "applications", cfg.suites.applications);
    r.get_bool(s, "bernstein", cfg.suites.bernstein);
    r.get_bool(s, "interval", cfg.suites.interval);
  }
  if (root.contains("output")) {
    const json& o = root.at("output");
    r.only_keys(o, "output", {"json", "csv", "md"});
    r.get_string(o, "json", cfg.output.json);
    r.get_string(o, "csv", cfg.output.csv);
    r.get_string(o, "md", cfg.output.md);
  }
  try {
    cfg.validate();
  } catch (const ParameterError& e) {
    const std::string msg = e.what();
    const std::string key = msg.substr(0, msg.find(' '));
    throw ParseError(msg, line_of_key(text, key));
  }
  return cfg;
}

CampaignConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace spectra_cert
