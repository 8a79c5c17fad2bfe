#include "spectra_cert/canonical.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "spectra_cert/errors.hpp"

namespace spectra_cert {
namespace {

using Cells = std::vector<std::vector<int>>;

std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

class Search {
 public:
  explicit Search(const Graph& g) : n_(g.n()), adj_(g.n()) {
    for (int v = 0; v < n_; ++v) adj_[v] = g.adj_mask(v);
  }

  CanonicalForm run() {
    Cells cells;
    if (n_ > 0) {
      cells.emplace_back();
      for (int v = 0; v < n_; ++v) cells[0].push_back(v);
    }
    refine(cells);
    dfs(cells);
    return {best_, best_lab_};
  }

 private:
  void refine(Cells& cells) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t s = 0; s < cells.size() && !changed; ++s) {
        std::uint64_t smask = 0;
        for (int v : cells[s]) smask |= bit(v);
        for (std::size_t c = 0; c < cells.size(); ++c) {
          if (cells[c].size() == 1) continue;
          std::map<int, std::vector<int>> groups;
          for (int v : cells[c]) groups[std::popcount(adj_[v] & smask)].push_back(v);
          if (groups.size() == 1) continue;
          Cells pieces;
          for (auto& [cnt, members] : groups) pieces.push_back(std::move(members));
          cells.erase(cells.begin() + static_cast<long>(c));
          cells.insert(cells.begin() + static_cast<long>(c), pieces.begin(), pieces.end());
          changed = true;
          break;
        }
      }
    }
  }

  bool twins(int u, int w) const { return (adj_[u] & ~bit(w)) == (adj_[w] & ~bit(u)); }

  void dfs(const Cells& cells) {
    std::size_t target = cells.size();
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i].size() > 1) {
        target = i;
        break;
      }
    if (target == cells.size()) {
      leaf(cells);
      return;
    }
    std::vector<int> tried;
    for (int u : cells[target]) {
      bool skip = false;
      for (int w : tried)
        if (twins(u, w)) {
          skip = true;
          break;
        }
      if (skip) continue;
      tried.push_back(u);
      Cells next = cells;
      std::vector<int> rest;
      for (int w : cells[target])
        if (w != u) rest.push_back(w);
      next[target] = {u};
      next.insert(next.begin() + static_cast<long>(target) + 1, rest);
      refine(next);
      dfs(next);
    }
  }

  void leaf(const Cells& cells) {
    std::vector<int> lab(n_);
    for (std::size_t i = 0; i < cells.size(); ++i) lab[cells[i][0]] = static_cast<int>(i);
    CanonKey rows(n_, 0);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      int v = cells[i][0];
      std::uint64_t r = 0;
      for (std::uint64_t m = adj_[v]; m; m &= m - 1) r |= bit(lab[std::countr_zero(m)]);
      rows[i] = r;
    }
    if (!have_ || rows > best_) {
      best_ = std::move(rows);
      best_lab_ = std::move(lab);
      have_ = true;
    }
  }

  int n_;
  std::vector<std::uint64_t> adj_;
  CanonKey best_;
  std::vector<int> best_lab_;
  bool have_ = false;
};

}  // namespace

CanonicalForm canonical_form(const Graph& g) {
  if (g.n() > 64) throw ResourceError("canonical_form: more than 64 vertices");
  return Search(g).run();
}

CanonKey canonical_key(const Graph& g) { return canonical_form(g).key; }

Graph canonical_graph(const Graph& g) { return relabel(g, canonical_form(g).new_of_old); }

bool isomorphic(const Graph& a, const Graph& b) {
  if (a.n() != b.n() || a.m() != b.m()) return false;
  if (a.degree_sequence() != b.degree_sequence()) return false;
  return canonical_key(a) == canonical_key(b);
}

}  // namespace spectra_cert
