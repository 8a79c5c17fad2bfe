#pragma once

#include <cstdint>
#include <vector>

#include "spectra_cert/graph.hpp"

namespace spectra_cert {

/// Row bitmasks of the canonically relabelled adjacency matrix; equal keys
/// iff the (unweighted) graphs are isomorphic.
using CanonKey = std::vector<std::uint64_t>;

struct CanonicalForm {
  CanonKey key;
  std::vector<int> new_of_old;
};

/// Equitable refinement plus individualisation; requires n <= 64.
CanonicalForm canonical_form(const Graph& g);
CanonKey canonical_key(const Graph& g);
Graph canonical_graph(const Graph& g);
bool isomorphic(const Graph& a, const Graph& b);

}  // namespace spectra_cert
