#include "spectra_cert/enumerate.hpp"

#include <bit>
#include <map>
#include <mutex>

#include "spectra_cert/canonical.hpp"
#include "spectra_cert/errors.hpp"
#include "spectra_cert/parallel.hpp"

namespace spectra_cert {
namespace {

using Level = std::map<CanonKey, Graph>;

std::vector<std::uint64_t> extension_sets(const Graph& h, GraphClass cls, int max_size) {
  const int n = h.n();
  std::vector<std::uint64_t> out;
  auto push_subsets_of = [&](std::uint64_t universe) {
    for (std::uint64_t s = universe; s; s = (s - 1) & universe)
      if (std::popcount(s) <= max_size) out.push_back(s);
  };
  switch (cls) {
    case GraphClass::all: push_subsets_of((n == 64 ? ~0ULL : (1ULL << n) - 1)); break;
    case GraphClass::trees:
      for (int v = 0; v < n; ++v) out.push_back(1ULL << v);
      break;
    case GraphClass::bipartite: {
      auto bip = bipartition_of(h);
      std::uint64_t left = 0, right = 0;
      for (int v : bip->left) left |= 1ULL << v;
      for (int v : bip->right) right |= 1ULL << v;
      push_subsets_of(left);
      if (right) push_subsets_of(right);
      break;
    }
  }
  return out;
}

Level extend(const Level& prev, GraphClass cls, int max_edges) {
  std::vector<const Graph*> parents;
  for (const auto& [k, g] : prev) parents.push_back(&g);
  Level next;
  std::mutex mu;
  parallel_for(parents.size(), [&](std::size_t i) {
    const Graph& h = *parents[i];
    const int budget = max_edges < 0 ? 64 : max_edges - h.m();
    Level local;
    for (std::uint64_t s : extension_sets(h, cls, budget)) {
      std::vector<int> nbrs;
      for (std::uint64_t m = s; m; m &= m - 1) nbrs.push_back(std::countr_zero(m));
      Graph g = add_vertex(h, nbrs);
      CanonicalForm cf = canonical_form(g);
      if (!local.count(cf.key)) local.emplace(cf.key, relabel(g, cf.new_of_old));
    }
    std::lock_guard<std::mutex> lock(mu);
    next.merge(local);
  });
  return next;
}

int cap_for(GraphClass cls, const EnumerationCaps& caps) {
  switch (cls) {
    case GraphClass::all: return caps.all;
    case GraphClass::trees: return caps.trees;
    case GraphClass::bipartite: return caps.bipartite;
  }
  return 0;
}

std::vector<Graph> values(const Level& level) {
  std::vector<Graph> out;
  out.reserve(level.size());
  for (const auto& [k, g] : level) out.push_back(g);
  return out;
}

}  // namespace

std::vector<std::vector<Graph>> enumerate_connected_upto(int n_max, GraphClass cls,
                                                         const EnumerationCaps& caps) {
  if (n_max < 1) throw ParameterError("enumerate: n must be >= 1");
  if (n_max > cap_for(cls, caps))
    throw ResourceError("enumerate: n=" + std::to_string(n_max) + " exceeds cap " +
                        std::to_string(cap_for(cls, caps)));
  std::vector<std::vector<Graph>> out(n_max + 1);
  Level level;
  Graph k1(1);
  level.emplace(canonical_key(k1), k1);
  out[1] = values(level);
  for (int n = 2; n <= n_max; ++n) {
    level = extend(level, cls, -1);
    out[n] = values(level);
  }
  return out;
}

std::vector<Graph> enumerate_connected(int n, GraphClass cls, const EnumerationCaps& caps) {
  return std::move(enumerate_connected_upto(n, cls, caps)[n]);
}

void for_each_connected(int n, GraphClass cls, const std::function<void(const Graph&)>& fn,
                        const EnumerationCaps& caps) {
  for (const auto& g : enumerate_connected(n, cls, caps)) fn(g);
}

std::vector<Graph> enumerate_connected_by_edges(int max_edges, const EnumerationCaps& caps) {
  if (max_edges < 1) throw ParameterError("enumerate: max_edges must be >= 1");
  if (max_edges > caps.edges) throw ResourceError("enumerate: max_edges exceeds cap");
  std::vector<Graph> out;
  Level level;
  Graph k1(1);
  level.emplace(canonical_key(k1), k1);
  for (int n = 2; n <= max_edges + 1; ++n) {
    level = extend(level, GraphClass::all, max_edges);
    for (const auto& [k, g] : level) out.push_back(g);
  }
  return out;
}

const char* to_string(GraphClass cls) {
  switch (cls) {
    case GraphClass::all: return "all";
    case GraphClass::trees: return "trees";
    case GraphClass::bipartite: return "bipartite";
  }
  return "?";
}

GraphClass parse_graph_class(const std::string& s) {
  if (s == "all") return GraphClass::all;
  if (s == "trees") return GraphClass::trees;
  if (s == "bipartite") return GraphClass::bipartite;
  throw ParameterError("unknown graph class '" + s + "'");
}

Graph random_tree(int n, std::mt19937_64& rng) {
  if (n < 1) throw ParameterError("random_tree: n must be >= 1");
  if (n == 1) return Graph(1);
  if (n == 2) return make_path(2);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<int> seq(n - 2);
  for (auto& s : seq) s = pick(rng);
  std::vector<int> deg(n, 1);
  for (int s : seq) ++deg[s];
  EdgeList e;
  for (int s : seq) {
    for (int leaf = 0; leaf < n; ++leaf)
      if (deg[leaf] == 1) {
        e.emplace_back(leaf, s);
        --deg[leaf];
        --deg[s];
        break;
      }
  }
  int a = -1;
  for (int v = 0; v < n; ++v)
    if (deg[v] == 1) {
      if (a < 0) a = v;
      else e.emplace_back(a, v);
    }
  return Graph(n, std::move(e));
}

Graph random_forest(int n, double drop, std::mt19937_64& rng) {
  Graph t = random_tree(n, rng);
  std::bernoulli_distribution coin(drop);
  EdgeList e;
  for (const auto& ed : t.edges())
    if (!coin(rng)) e.push_back(ed);
  return Graph(n, std::move(e));
}

Graph with_random_weights(const Graph& g, int max_part, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> part(1, max_part);
  std::vector<Rational> w;
  for (int i = 0; i < g.m(); ++i) {
    Rational q(part(rng), part(rng));
    q.canonicalize();
    w.push_back(q);
  }
  return Graph(g.n(), g.edges(), std::move(w));
}

Graph random_connected_bipartite(int n, double extra, std::mt19937_64& rng) {
  Graph t = random_tree(n, rng);
  auto bip = bipartition_of(t);
  std::bernoulli_distribution coin(extra);
  EdgeList e = t.edges();
  for (int u : bip->left)
    for (int v : bip->right)
      if (!t.has_edge(u, v) && coin(rng)) e.emplace_back(u, v);
  return Graph(n, std::move(e));
}

}  // namespace spectra_cert
