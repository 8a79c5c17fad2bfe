#pragma once

#include <functional>
#include <random>
#include <vector>

#include "spectra_cert/graph.hpp"

namespace spectra_cert {

enum class GraphClass { all, trees, bipartite };

struct EnumerationCaps {
  int all = 10;
  int trees = 14;
  int bipartite = 12;
  int edges = 12;
};

/// One canonically labelled representative per isomorphism class of connected
/// graphs on n vertices, ordered by canonical key.
std::vector<Graph> enumerate_connected(int n, GraphClass cls, const EnumerationCaps& caps = {});

/// Levels 1..n_max in one pass; result[k] holds the graphs on k vertices (result[0] empty).
std::vector<std::vector<Graph>> enumerate_connected_upto(int n_max, GraphClass cls,
                                                         const EnumerationCaps& caps = {});

void for_each_connected(int n, GraphClass cls, const std::function<void(const Graph&)>& fn,
                        const EnumerationCaps& caps = {});

/// All connected graphs with 1 <= |E| <= max_edges, ordered by (n, canonical key).
std::vector<Graph> enumerate_connected_by_edges(int max_edges, const EnumerationCaps& caps = {});

const char* to_string(GraphClass cls);
GraphClass parse_graph_class(const std::string& s);

/// Uniform random labelled tree (Pruefer sequence).
Graph random_tree(int n, std::mt19937_64& rng);
/// Random forest: a random tree with each edge dropped with probability drop.
Graph random_forest(int n, double drop, std::mt19937_64& rng);
/// Attaches random positive rational weights p/q with 1 <= p, q <= max_part.
Graph with_random_weights(const Graph& g, int max_part, std::mt19937_64& rng);
/// Connected bipartite graph: random tree plus random extra cross edges.
Graph random_connected_bipartite(int n, double extra, std::mt19937_64& rng);

}  // namespace spectra_cert
