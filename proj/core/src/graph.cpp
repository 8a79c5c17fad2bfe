#include "spectra_cert/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

#include "spectra_cert/errors.hpp"

namespace spectra_cert {

Graph::Graph(int n) : n_(n) {
  if (n < 0) throw ParameterError("negative vertex count");
  build();
}

Graph::Graph(int n, EdgeList edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw ParameterError("negative vertex count");
  for (auto& [u, v] : edges_)
    if (u > v) std::swap(u, v);
  std::sort(edges_.begin(), edges_.end());
  build();
}

Graph::Graph(int n, EdgeList edges, std::vector<Rational> weights) : n_(n) {
  if (n < 0) throw ParameterError("negative vertex count");
  if (edges.size() != weights.size()) throw ParameterError("weight count does not match edge count");
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  for (auto& [u, v] : edges)
    if (u > v) std::swap(u, v);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
  edges_.reserve(edges.size());
  weights_.reserve(edges.size());
  for (auto i : order) {
    if (sgn(weights[i]) < 0) throw ParameterError("negative edge weight");
    edges_.push_back(edges[i]);
    weights_.push_back(weights[i]);
  }
  build();
}

void Graph::build() {
  adj_.assign(n_, {});
  mask_.assign(n_, 0);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    auto [u, v] = edges_[i];
    if (u < 0 || v >= n_) throw ParameterError("edge endpoint out of range");
    if (u == v) throw ParameterError("self-loop");
    if (i > 0 && edges_[i - 1] == edges_[i]) throw ParameterError("duplicate edge");
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    if (n_ <= 64) {
      mask_[u] |= std::uint64_t{1} << v;
      mask_[v] |= std::uint64_t{1} << u;
    }
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

Rational Graph::weight(std::size_t i) const {
  return weights_.empty() ? Rational(1) : weights_.at(i);
}

int Graph::edge_index(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v));
  if (it == edges_.end() || *it != std::make_pair(u, v)) return -1;
  return static_cast<int>(it - edges_.begin());
}

Rational Graph::weight_of(int u, int v) const {
  int i = edge_index(u, v);
  if (i < 0) throw ParameterError("no such edge");
  return weight(i);
}

std::vector<std::vector<int>> Graph::components() const {
  std::vector<int> comp(n_, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n_; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> members{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t k = 0; k < members.size(); ++k)
      for (int w : adj_[members[k]])
        if (comp[w] < 0) {
          comp[w] = comp[s];
          members.push_back(w);
        }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

bool Graph::connected() const { return n_ >= 1 && components().size() == 1; }

std::vector<int> Graph::degree_sequence() const {
  std::vector<int> d(n_);
  for (int v = 0; v < n_; ++v) d[v] = degree(v);
  std::sort(d.rbegin(), d.rend());
  return d;
}

MatrixLD Graph::adjacency_matrix() const {
  MatrixLD a = MatrixLD::Zero(n_, n_);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    auto [u, v] = edges_[i];
    long double w = weights_.empty() ? 1.0L : sqrt_to_ld(weights_[i]);
    a(u, v) = a(v, u) = w;
  }
  return a;
}

MatrixLD Graph::laplacian_matrix() const {
  MatrixLD l = -adjacency_matrix();
  for (int v = 0; v < n_; ++v) l(v, v) = degree(v);
  return l;
}

MatrixLD Graph::signless_laplacian_matrix() const {
  MatrixLD q = adjacency_matrix();
  for (int v = 0; v < n_; ++v) q(v, v) = degree(v);
  return q;
}

Graph make_path(int n) {
  if (n < 1) throw ParameterError("path needs n >= 1");
  EdgeList e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, std::move(e));
}

Graph make_cycle(int n) {
  if (n < 3) throw ParameterError("cycle needs n >= 3");
  EdgeList e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(0, n - 1);
  return Graph(n, std::move(e));
}

Graph make_star(int n) {
  if (n < 1) throw ParameterError("star needs n >= 1");
  EdgeList e;
  for (int i = 1; i < n; ++i) e.emplace_back(0, i);
  return Graph(n, std::move(e));
}

Graph make_complete_bipartite(int a, int b) {
  if (a < 1 || b < 1) throw ParameterError("complete bipartite needs both sides nonempty");
  EdgeList e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return Graph(a + b, std::move(e));
}

Graph make_complete(int n) {
  if (n < 1) throw ParameterError("complete graph needs n >= 1");
  EdgeList e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, std::move(e));
}

Graph make_sun(const SunSpec& spec) {
  const int len = spec.cycle_len;
  if (len < 4 || len % 2 != 0) throw ParameterError("sun cycle length must be even and >= 4");
  std::vector<int> seen(len, 0);
  for (int p : spec.loaded) {
    if (p < 0 || p >= len) throw ParameterError("loaded position outside the cycle");
    if (seen[p]++) throw ParameterError("loaded position repeated");
  }
  EdgeList e;
  for (int i = 0; i + 1 < len; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(0, len - 1);
  int next = len;
  for (int p : spec.loaded) e.emplace_back(p, next++);
  return Graph(next, std::move(e));
}

Graph make_spider(const std::vector<int>& legs) {
  EdgeList e;
  int next = 1;
  for (int len : legs) {
    if (len < 1) throw ParameterError("spider legs must be positive");
    int prev = 0;
    for (int k = 0; k < len; ++k) {
      e.emplace_back(prev, next);
      prev = next++;
    }
  }
  return Graph(next, std::move(e));
}

Graph make_family(FamilyKind kind, int n, int n2) {
  switch (kind) {
    case FamilyKind::path: return make_path(n);
    case FamilyKind::cycle: return make_cycle(n);
    case FamilyKind::star: return make_star(n);
    case FamilyKind::complete_bipartite: return make_complete_bipartite(n, n2);
    case FamilyKind::complete: return make_complete(n);
  }
  throw ParameterError("unknown family");
}

std::optional<Bipartition> bipartition_of(const Graph& g) {
  std::vector<int> side(g.n(), -1);
  for (int s = 0; s < g.n(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : g.neighbors(v)) {
        if (side[w] < 0) {
          side[w] = 1 - side[v];
          q.push(w);
        } else if (side[w] == side[v]) {
          return std::nullopt;
        }
      }
    }
  }
  Bipartition b;
  b.side = side;
  for (int v = 0; v < g.n(); ++v) (side[v] == 0 ? b.left : b.right).push_back(v);
  return b;
}

Graph bipartite_reduction(const Graph& g) {
  if (!g.connected()) throw ContractViolation("bipartite_reduction: graph is not connected");
  std::vector<int> depth(g.n(), -1);
  depth[0] = 0;
  std::queue<int> q;
  q.push(0);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : g.neighbors(v))
      if (depth[w] < 0) {
        depth[w] = depth[v] + 1;
        q.push(w);
      }
  }
  EdgeList kept;
  std::vector<Rational> w;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    auto [u, v] = g.edges()[i];
    if ((depth[u] ^ depth[v]) & 1) {
      kept.emplace_back(u, v);
      w.push_back(g.weight(i));
    }
  }
  if (g.weighted()) return Graph(g.n(), std::move(kept), std::move(w));
  return Graph(g.n(), std::move(kept));
}

Graph subdivision(const Graph& g) {
  EdgeList e;
  for (int i = 0; i < g.m(); ++i) {
    auto [u, v] = g.edges()[i];
    e.emplace_back(u, g.n() + i);
    e.emplace_back(v, g.n() + i);
  }
  return Graph(g.n() + g.m(), std::move(e));
}

Graph line_graph(const Graph& g) {
  if (g.m() == 0) throw ParameterError("line graph of an edgeless graph");
  EdgeList e;
  for (int i = 0; i < g.m(); ++i)
    for (int j = i + 1; j < g.m(); ++j) {
      auto [a, b] = g.edges()[i];
      auto [c, d] = g.edges()[j];
      if (a == c || a == d || b == c || b == d) e.emplace_back(i, j);
    }
  return Graph(g.m(), std::move(e));
}

Eigen::MatrixXi incidence_matrix(const Graph& g) {
  Eigen::MatrixXi nmat = Eigen::MatrixXi::Zero(g.n(), g.m());
  for (int i = 0; i < g.m(); ++i) {
    nmat(g.edges()[i].first, i) = 1;
    nmat(g.edges()[i].second, i) = 1;
  }
  return nmat;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
  std::vector<int> pos(g.n(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    int v = vertices[i];
    if (v < 0 || v >= g.n()) throw ParameterError("vertex out of range");
    pos[v] = static_cast<int>(i);
  }
  EdgeList e;
  std::vector<Rational> w;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    auto [u, v] = g.edges()[i];
    if (pos[u] >= 0 && pos[v] >= 0) {
      e.emplace_back(pos[u], pos[v]);
      w.push_back(g.weight(i));
    }
  }
  const int n = static_cast<int>(vertices.size());
  if (g.weighted()) return Graph(n, std::move(e), std::move(w));
  return Graph(n, std::move(e));
}

VertexDeletion delete_vertex(const Graph& g, int v) {
  if (v < 0 || v >= g.n()) throw ParameterError("delete_vertex: no such vertex");
  VertexDeletion out;
  for (int u = 0; u < g.n(); ++u)
    if (u != v) out.rest_to_old.push_back(u);
  out.rest = induced_subgraph(g, out.rest_to_old);
  for (const auto& comp : out.rest.components()) {
    Component c;
    c.graph = induced_subgraph(out.rest, comp);
    for (int u : comp) c.to_old.push_back(out.rest_to_old[u]);
    out.components.push_back(std::move(c));
  }
  return out;
}

Graph delete_edge(const Graph& g, int u, int v) {
  int idx = g.edge_index(u, v);
  if (idx < 0) throw ParameterError("delete_edge: no such edge");
  EdgeList e;
  std::vector<Rational> w;
  for (int i = 0; i < g.m(); ++i)
    if (i != idx) {
      e.push_back(g.edges()[i]);
      w.push_back(g.weight(i));
    }
  if (g.weighted()) return Graph(g.n(), std::move(e), std::move(w));
  return Graph(g.n(), std::move(e));
}

Graph add_vertex(const Graph& g, const std::vector<int>& nbrs) {
  if (g.weighted()) throw ParameterError("add_vertex: weighted graphs not supported");
  EdgeList e = g.edges();
  for (int u : nbrs) {
    if (u < 0 || u >= g.n()) throw ParameterError("add_vertex: neighbour out of range");
    e.emplace_back(u, g.n());
  }
  return Graph(g.n() + 1, std::move(e));
}

Graph relabel(const Graph& g, const std::vector<int>& new_of_old) {
  if (static_cast<int>(new_of_old.size()) != g.n()) throw ParameterError("relabel: size mismatch");
  EdgeList e;
  std::vector<Rational> w;
  for (int i = 0; i < g.m(); ++i) {
    e.emplace_back(new_of_old[g.edges()[i].first], new_of_old[g.edges()[i].second]);
    w.push_back(g.weight(i));
  }
  if (g.weighted()) return Graph(g.n(), std::move(e), std::move(w));
  return Graph(g.n(), std::move(e));
}

bool is_forest(const Graph& g) { return g.m() == g.n() - static_cast<int>(g.components().size()); }

bool is_tree(const Graph& g) { return g.n() >= 1 && g.m() == g.n() - 1 && g.connected(); }

bool is_path_graph(const Graph& g) {
  if (!is_tree(g)) return false;
  for (int v = 0; v < g.n(); ++v)
    if (g.degree(v) > 2) return false;
  return true;
}

int leaf_count(const Graph& g) {
  int c = 0;
  for (int v = 0; v < g.n(); ++v) c += g.degree(v) == 1;
  return c;
}

long long count_c4(const Graph& g) {
  long long twice = 0;
  for (int u = 0; u < g.n(); ++u)
    for (int w = u + 1; w < g.n(); ++w) {
      long long common = 0;
      for (int a : g.neighbors(u))
        if (a != w && g.has_edge(a, w)) ++common;
      twice += common * (common - 1) / 2;
    }
  return twice / 2;
}

std::optional<TreeShiftStep> find_tree_shift(const Graph& t) {
  if (!is_tree(t)) throw ContractViolation("find_tree_shift: input is not a tree");
  if (is_path_graph(t)) return std::nullopt;
  int root = -1;
  for (int v = 0; v < t.n() && root < 0; ++v)
    if (t.degree(v) == 1) root = v;
  std::vector<int> depth(t.n(), -1), parent(t.n(), -1);
  std::vector<int> order{root};
  depth[root] = 0;
  for (std::size_t k = 0; k < order.size(); ++k)
    for (int w : t.neighbors(order[k]))
      if (depth[w] < 0) {
        depth[w] = depth[order[k]] + 1;
        parent[w] = order[k];
        order.push_back(w);
      }
  int best = -1;
  for (int v = 0; v < t.n(); ++v)
    if (t.degree(v) >= 3 && (best < 0 || depth[v] > depth[best])) best = v;
  std::vector<std::vector<int>> arms;
  for (int c : t.neighbors(best)) {
    if (c == parent[best]) continue;
    std::vector<int> arm{c};
    int cur = c;
    while (t.degree(cur) == 2) {
      int nxt = -1;
      for (int w : t.neighbors(cur))
        if (w != parent[cur]) nxt = w;
      arm.push_back(nxt);
      cur = nxt;
    }
    arms.push_back(std::move(arm));
  }
  std::sort(arms.begin(), arms.end());
  TreeShiftStep step;
  step.v = best;
  step.arm_a = arms[0];
  step.arm_b = arms[1];
  return step;
}

namespace {

void check_arm(const Graph& t, int v, const std::vector<int>& arm) {
  if (arm.empty()) throw ContractViolation("tree shift: empty arm");
  int prev = v;
  for (std::size_t i = 0; i < arm.size(); ++i) {
    int u = arm[i];
    if (u < 0 || u >= t.n() || !t.has_edge(prev, u)) throw ContractViolation("tree shift: arm is not a path from v");
    const bool last = i + 1 == arm.size();
    if (t.degree(u) != (last ? 1 : 2)) throw ContractViolation("tree shift: arm is not pendant");
    prev = u;
  }
}

}  // namespace

std::vector<TreeShiftStep> all_tree_shifts(const Graph& t) {
  if (!is_tree(t)) throw ContractViolation("all_tree_shifts: input is not a tree");
  std::vector<TreeShiftStep> out;
  for (int v = 0; v < t.n(); ++v) {
    if (t.degree(v) < 3) continue;
    std::vector<std::vector<int>> arms;
    for (int c : t.neighbors(v)) {
      std::vector<int> arm{c};
      int prev = v, cur = c;
      while (t.degree(cur) == 2) {
        const int nxt = t.neighbors(cur)[0] == prev ? t.neighbors(cur)[1] : t.neighbors(cur)[0];
        prev = cur;
        cur = nxt;
        arm.push_back(cur);
      }
      if (t.degree(cur) == 1) arms.push_back(std::move(arm));
    }
    for (std::size_t i = 0; i < arms.size(); ++i)
      for (std::size_t j = i + 1; j < arms.size(); ++j) out.push_back(TreeShiftStep{v, arms[i], arms[j]});
  }
  return out;
}

Graph apply_tree_shift(const Graph& t, const TreeShiftStep& step) {
  if (!is_tree(t)) throw ContractViolation("apply_tree_shift: input is not a tree");
  if (step.v < 0 || step.v >= t.n() || t.degree(step.v) < 3)
    throw ContractViolation("apply_tree_shift: v is not a branching vertex");
  check_arm(t, step.v, step.arm_a);
  check_arm(t, step.v, step.arm_b);
  for (int a : step.arm_a)
    if (std::find(step.arm_b.begin(), step.arm_b.end(), a) != step.arm_b.end())
      throw ContractViolation("apply_tree_shift: arms intersect");
  EdgeList e;
  const int w1 = step.arm_b.front();
  for (const auto& ed : t.edges())
    if (ed != std::make_pair(std::min(step.v, w1), std::max(step.v, w1))) e.push_back(ed);
  e.emplace_back(step.arm_a.back(), w1);
  return Graph(t.n(), std::move(e));
}

std::string to_graph6(const Graph& g) {
  const int n = g.n();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
    out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
    out.push_back(static_cast<char>((n & 63) + 63));
  } else {
    throw ParameterError("graph6: graph too large");
  }
  int acc = 0, bits = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++bits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = bits = 0;
      }
    }
  if (bits > 0) out.push_back(static_cast<char>((acc << (6 - bits)) + 63));
  return out;
}

Graph from_graph6(const std::string& raw) {
  std::string s = raw;
  const std::string header = ">>graph6<<";
  if (s.rfind(header, 0) == 0) s = s.substr(header.size());
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
  if (s.empty()) throw ParseError("graph6: empty string");
  for (char ch : s)
    if (ch < 63 || ch > 126) throw ParseError("graph6: byte out of range");
  std::size_t pos = 0;
  long n = 0;
  if (s[0] != 126) {
    n = s[0] - 63;
    pos = 1;
  } else {
    if (s.size() < 4 || s[1] == 126) throw ParseError("graph6: unsupported size header");
    n = ((s[1] - 63) << 12) | ((s[2] - 63) << 6) | (s[3] - 63);
    pos = 4;
  }
  const long nbits = n * (n - 1) / 2;
  const std::size_t need = static_cast<std::size_t>((nbits + 5) / 6);
  if (s.size() - pos != need) throw ParseError("graph6: wrong length for n=" + std::to_string(n));
  EdgeList e;
  long k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k) {
      int byte = s[pos + k / 6] - 63;
      if ((byte >> (5 - k % 6)) & 1) e.emplace_back(i, j);
    }
  if (nbits % 6 != 0) {
    int byte = s.back() - 63;
    if (byte & ((1 << (6 - nbits % 6)) - 1)) throw ParseError("graph6: nonzero padding bits");
  }
  return Graph(static_cast<int>(n), std::move(e));
}

std::vector<Graph> parse_graph6_lines(const std::string& text) {
  std::vector<Graph> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      out.push_back(from_graph6(line));
    } catch (const std::exception& ex) {
      throw ParseError(ex.what(), lineno);
    }
  }
  return out;
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  os << g.n() << "\n";
  for (int i = 0; i < g.m(); ++i) {
    os << g.edges()[i].first << " " << g.edges()[i].second;
    if (g.weighted()) os << " " << to_string(g.weight(i));
    os << "\n";
  }
  return os.str();
}

Graph from_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0, n = -1;
  EdgeList e;
  std::vector<Rational> w;
  bool any_weight = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    try {
      if (n < 0) {
        if (tok.size() != 1) throw ParseError("expected vertex count");
        n = std::stoi(tok[0]);
        continue;
      }
      if (tok.size() != 2 && tok.size() != 3) throw ParseError("expected 'u v [w]'");
      e.emplace_back(std::stoi(tok[0]), std::stoi(tok[1]));
      if (tok.size() == 3) any_weight = true;
      w.push_back(tok.size() == 3 ? parse_rational(tok[2]) : Rational(1));
    } catch (const ParseError& ex) {
      throw ParseError(ex.what(), lineno);
    } catch (const std::exception& ex) {
      throw ParseError(std::string("bad integer: ") + ex.what(), lineno);
    }
  }
  if (n < 0) throw ParseError("missing vertex count");
  if (any_weight) return Graph(n, std::move(e), std::move(w));
  return Graph(n, std::move(e));
}

}  // namespace spectra_cert
