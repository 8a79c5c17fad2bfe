#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spectra_cert/rational.hpp"

namespace spectra_cert {

using MatrixLD = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using VectorLD = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
using EdgeList = std::vector<std::pair<int, int>>;

/// Simple undirected graph on vertices 0..n-1 with optional nonnegative
/// rational edge weights. Immutable after construction.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, EdgeList edges);
  /// weights[i] belongs to edges[i] as given (before sorting).
  Graph(int n, EdgeList edges, std::vector<Rational> weights);

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  const EdgeList& edges() const { return edges_; }
  bool weighted() const { return !weights_.empty(); }
  /// Weight of the i-th edge in sorted order (1 when unweighted).
  Rational weight(std::size_t i) const;
  /// Weight of edge {u,v}; throws ParameterError if absent.
  Rational weight_of(int u, int v) const;
  /// Index of edge {u,v} in sorted order, or -1.
  int edge_index(int u, int v) const;

  bool has_edge(int u, int v) const { return edge_index(u, v) >= 0; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  /// Neighbourhood bitmask; valid for n <= 64.
  std::uint64_t adj_mask(int v) const { return mask_[v]; }

  bool connected() const;
  /// Vertex sets of the connected components, each sorted, ordered by minimum.
  std::vector<std::vector<int>> components() const;

  std::vector<int> degree_sequence() const;  // descending
  MatrixLD adjacency_matrix() const;           // uses sqrt(weight) entries when weighted
  MatrixLD laplacian_matrix() const;           // unweighted only
  MatrixLD signless_laplacian_matrix() const;  // unweighted only

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.weights_ == b.weights_;
  }

 private:
  void build();
  int n_ = 0;
  EdgeList edges_;
  std::vector<Rational> weights_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::uint64_t> mask_;
};

struct Bipartition {
  std::vector<int> left;   // sorted
  std::vector<int> right;  // sorted
  std::vector<int> side;   // side[v] = 0 for left, 1 for right
};

struct SunSpec {
  int cycle_len = 4;
  std::vector<int> loaded;
};

/// Pendant arms v-u1-..-ua and v-w1-..-wb (v itself excluded from the arms).
struct TreeShiftStep {
  int v = -1;
  std::vector<int> arm_a;
  std::vector<int> arm_b;
};

struct Component {
  Graph graph;
  std::vector<int> to_old;  // component vertex -> vertex of the original graph
};

struct VertexDeletion {
  Graph rest;
  std::vector<int> rest_to_old;
  std::vector<Component> components;
};

enum class FamilyKind { path, cycle, star, complete_bipartite, complete };

Graph make_path(int n);
Graph make_cycle(int n);
/// Star on n vertices with centre 0.
Graph make_star(int n);
/// Left side 0..a-1, right side a..a+b-1.
Graph make_complete_bipartite(int a, int b);
Graph make_complete(int n);
/// Cycle 0..L-1 first, then one leaf per loaded position in the given order.
Graph make_sun(const SunSpec& spec);
/// Centre 0, legs numbered consecutively outward.
Graph make_spider(const std::vector<int>& legs);
/// n2 is only used for complete_bipartite.
Graph make_family(FamilyKind kind, int n, int n2 = 0);

std::optional<Bipartition> bipartition_of(const Graph& g);
Graph bipartite_reduction(const Graph& g);

Graph subdivision(const Graph& g);
Graph line_graph(const Graph& g);
/// n x m unsigned incidence matrix, columns in sorted edge order.
Eigen::MatrixXi incidence_matrix(const Graph& g);

VertexDeletion delete_vertex(const Graph& g, int v);
Graph delete_edge(const Graph& g, int u, int v);
Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices);
/// Adds a new vertex n joined to every vertex of `nbrs`.
Graph add_vertex(const Graph& g, const std::vector<int>& nbrs);
Graph relabel(const Graph& g, const std::vector<int>& new_of_old);

bool is_tree(const Graph& g);
bool is_forest(const Graph& g);
/// True iff g is isomorphic to P_n.
bool is_path_graph(const Graph& g);
int leaf_count(const Graph& g);
/// Number of 4-cycles (as subgraphs).
long long count_c4(const Graph& g);

std::optional<TreeShiftStep> find_tree_shift(const Graph& t);
/// Every (v, arm pair) with deg v >= 3 and two pendant arms at v, arms ordered
/// by their first vertex.
std::vector<TreeShiftStep> all_tree_shifts(const Graph& t);
Graph apply_tree_shift(const Graph& t, const TreeShiftStep& step);

std::string to_graph6(const Graph& g);
Graph from_graph6(const std::string& s);
/// One graph per non-empty line; errors carry the line number.
std::vector<Graph> parse_graph6_lines(const std::string& text);

/// "n\nu v\n..." with optional third weight column.
std::string to_edge_list(const Graph& g);
Graph from_edge_list(const std::string& text);

}  // namespace spectra_cert
