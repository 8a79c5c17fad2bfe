#include <set>

#include <gtest/gtest.h>

#include "brute_force.hpp"
#include "spectra_cert/canonical.hpp"
#include "spectra_cert/enumerate.hpp"
#include "spectra_cert/errors.hpp"
#include "spectra_cert/graph.hpp"

using namespace spectra_cert;

namespace {

Graph graph_of(int n, EdgeList e) { return Graph(n, std::move(e)); }

void expect_matches_brute_force(int n, GraphClass cls) {
  // Oracle: pairwise non-isomorphic and sum of n!/|Aut| equals the labelled count.
  const auto graphs = enumerate_connected(n, cls);
  std::set<std::uint64_t> codes;
  long long labelled = 0;
  for (const auto& g : graphs) {
    ASSERT_EQ(g.n(), n);
    ASSERT_TRUE(g.connected());
    codes.insert(oracle::min_code(g));
    labelled += oracle::factorial(n) / oracle::automorphisms(g);
  }
  EXPECT_EQ(codes.size(), graphs.size()) << "duplicate isomorphism class";
  const long long expect = oracle::labelled_count(n, [&](int edges, const std::vector<std::uint32_t>& adj) {
    if (cls == GraphClass::trees) return edges == n - 1;
    if (cls == GraphClass::bipartite) return oracle::bipartite(n, adj);
    return true;
  });
  EXPECT_EQ(labelled, expect) << "n=" << n << " class=" << to_string(cls);
}

}  // namespace

TEST(Families, PathOnOneVertexHasNoEdges) {
  const Graph p = make_path(1);
  EXPECT_EQ(p.n(), 1);
  EXPECT_EQ(p.m(), 0);
}

TEST(Families, SunOnFourCycleWithOneLeaf) {
  const Graph g = make_sun(SunSpec{4, {0}});
  EXPECT_EQ(g.n(), 5);
  EXPECT_EQ(g.m(), 5);
  EXPECT_EQ(g.degree_sequence(), (std::vector<int>{3, 2, 2, 2, 1}));
}

TEST(Families, SixCycleIsTwoRegular) {
  const Graph c = make_cycle(6);
  EXPECT_EQ(c.m(), 6);
  for (int v = 0; v < 6; ++v) EXPECT_EQ(c.degree(v), 2);
}

TEST(Families, InvalidSizesRejected) {
  EXPECT_THROW(make_cycle(2), ParameterError);
  EXPECT_THROW(make_path(0), ParameterError);
  EXPECT_THROW(make_sun(SunSpec{5, {0}}), ParameterError);
  EXPECT_THROW(make_sun(SunSpec{6, {0, 0}}), ParameterError);
}

TEST(Enumerate, FourVerticesBruteForce) {
  // Oracle: distinct min codes over all connected labelled graphs on 4 vertices.
  std::set<std::uint64_t> classes;
  const auto pairs = oracle::all_pairs(4);
  for (std::uint64_t s = 0; s < 64; ++s) {
    const auto adj = oracle::adjacency(4, s);
    if (!oracle::connected(4, adj)) continue;
    EdgeList e;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (s >> i & 1u) e.push_back(pairs[i]);
    classes.insert(oracle::min_code(graph_of(4, e)));
  }
  EXPECT_EQ(enumerate_connected(4, GraphClass::all).size(), classes.size());
  EXPECT_EQ(classes.size(), 6u);
}

TEST(Enumerate, FiveVertexTrees) { EXPECT_EQ(enumerate_connected(5, GraphClass::trees).size(), 3u); }

TEST(Enumerate, SingleVertex) { EXPECT_EQ(enumerate_connected(1, GraphClass::all).size(), 1u); }

TEST(Enumerate, MatchesBruteForceUpToSeven) {
  for (int n = 1; n <= 7; ++n)
    for (GraphClass cls : {GraphClass::all, GraphClass::trees, GraphClass::bipartite})
      expect_matches_brute_force(n, cls);
}

TEST(Enumerate, PublishedCountsCrossCheck) {
  const std::vector<std::size_t> all{1, 1, 2, 6, 21, 112, 853, 11117};
  const auto levels = enumerate_connected_upto(8, GraphClass::all);
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(levels[n].size(), all[n - 1]) << n;
  const std::vector<std::size_t> trees{1, 1, 1, 2, 3, 6, 11, 23, 47, 106};
  const auto t = enumerate_connected_upto(10, GraphClass::trees);
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(t[n].size(), trees[n - 1]) << n;
}

TEST(Enumerate, Deterministic) {
  EXPECT_EQ(enumerate_connected(6, GraphClass::all), enumerate_connected(6, GraphClass::all));
}

TEST(Enumerate, OverCapRejected) { EXPECT_THROW(enumerate_connected(11, GraphClass::all), ResourceError); }

TEST(Enumerate, ByEdgeCountMatchesOrderEnumeration) {
  // Every connected graph with at most 5 edges has at most 6 vertices.
  std::size_t expect = 0;
  const auto levels = enumerate_connected_upto(6, GraphClass::all);
  for (int n = 2; n <= 6; ++n)
    for (const auto& g : levels[n]) expect += g.m() <= 5;
  EXPECT_EQ(enumerate_connected_by_edges(5).size(), expect);
}

TEST(Bipartition, PathColouring) {
  const auto b = bipartition_of(make_path(4));
  ASSERT_TRUE(b);
  EXPECT_EQ(b->left, (std::vector<int>{0, 2}));
  EXPECT_EQ(b->right, (std::vector<int>{1, 3}));
}

TEST(Bipartition, OddCycleHasNone) { EXPECT_FALSE(bipartition_of(make_cycle(5))); }

TEST(Bipartition, SixCycleBalanced) {
  const auto b = bipartition_of(make_cycle(6));
  ASSERT_TRUE(b);
  EXPECT_EQ(b->left.size(), 3u);
  EXPECT_EQ(b->right.size(), 3u);
}

TEST(BipartiteReduction, Examples) {
  EXPECT_EQ(bipartite_reduction(make_cycle(6)), make_cycle(6));
  const Graph h = bipartite_reduction(make_complete(3));
  EXPECT_EQ(h.m(), 2);
  EXPECT_TRUE(isomorphic(h, make_path(3)));
  EXPECT_EQ(bipartite_reduction(make_path(7)), make_path(7));
  EXPECT_THROW(bipartite_reduction(Graph(3, {{0, 1}})), ContractViolation);
}

TEST(BipartiteReduction, SpanningConnectedBipartiteSubgraph) {
  const auto levels = enumerate_connected_upto(8, GraphClass::all);
  for (int n = 1; n <= 8; ++n)
    for (const auto& g : levels[n]) {
      const Graph h = bipartite_reduction(g);
      ASSERT_EQ(h.n(), g.n());
      ASSERT_TRUE(h.connected());
      ASSERT_TRUE(bipartition_of(h).has_value());
      for (auto [u, v] : h.edges()) ASSERT_TRUE(g.has_edge(u, v));
      if (bipartition_of(g)) ASSERT_EQ(h, g);
    }
}

TEST(Transforms, SubdivisionOfPaths) {
  EXPECT_TRUE(isomorphic(subdivision(make_path(3)), make_path(5)));
  for (int n = 1; n <= 20; ++n) EXPECT_TRUE(isomorphic(subdivision(make_path(n)), make_path(2 * n - 1))) << n;
}

TEST(Transforms, LineGraphs) {
  for (int m = 1; m <= 10; ++m) EXPECT_TRUE(isomorphic(line_graph(make_path(m + 1)), make_path(m)));
  EXPECT_TRUE(isomorphic(line_graph(make_star(4)), make_complete(3)));
  EXPECT_THROW(line_graph(Graph(3)), ParameterError);
}

TEST(Transforms, IncidenceIdentities) {
  const auto levels = enumerate_connected_upto(8, GraphClass::all);
  for (int n = 2; n <= 8; ++n)
    for (const auto& g : levels[n]) {
      const Eigen::MatrixXi nm = incidence_matrix(g);
      Eigen::MatrixXi q = Eigen::MatrixXi::Zero(n, n);
      for (int v = 0; v < n; ++v) q(v, v) = g.degree(v);
      for (auto [u, v] : g.edges()) q(u, v) = q(v, u) = 1;
      ASSERT_EQ(Eigen::MatrixXi(nm * nm.transpose()), q);
      const Graph l = line_graph(g);
      Eigen::MatrixXi a = Eigen::MatrixXi::Zero(g.m(), g.m());
      for (auto [u, v] : l.edges()) a(u, v) = a(v, u) = 1;
      ASSERT_EQ(Eigen::MatrixXi(nm.transpose() * nm - 2 * Eigen::MatrixXi::Identity(g.m(), g.m())), a);
    }
}

TEST(Deletion, Vertex) {
  const VertexDeletion c = delete_vertex(make_cycle(4), 0);
  ASSERT_EQ(c.components.size(), 1u);
  EXPECT_TRUE(isomorphic(c.components[0].graph, make_path(3)));
  const VertexDeletion s = delete_vertex(make_star(5), 0);
  EXPECT_EQ(s.components.size(), 4u);
  for (const auto& comp : s.components) EXPECT_EQ(comp.graph.n(), 1);
  EXPECT_THROW(delete_vertex(make_cycle(4), 4), ParameterError);
}

TEST(Deletion, ComponentMapsPointBack) {
  const Graph g = make_spider({2, 1, 3});
  const VertexDeletion d = delete_vertex(g, 0);
  for (const auto& comp : d.components)
    for (auto [u, v] : comp.graph.edges())
      EXPECT_TRUE(g.has_edge(comp.to_old[u], comp.to_old[v]));
}

TEST(Deletion, Edge) {
  const Graph c4 = make_cycle(4);
  for (auto [u, v] : c4.edges()) EXPECT_TRUE(isomorphic(delete_edge(c4, u, v), make_path(4)));
  EXPECT_THROW(delete_edge(make_cycle(4), 0, 2), ParameterError);
}

TEST(TreeShift, PathHasNone) { EXPECT_FALSE(find_tree_shift(make_path(7))); }

TEST(TreeShift, StarCentre) {
  const Graph s = make_star(4);
  const auto step = find_tree_shift(s);
  ASSERT_TRUE(step);
  EXPECT_EQ(step->v, 0);
  EXPECT_EQ(step->arm_a.size(), 1u);
  EXPECT_EQ(step->arm_b.size(), 1u);
  EXPECT_TRUE(isomorphic(apply_tree_shift(s, *step), make_path(4)));
}

TEST(TreeShift, SpiderReachesPath) {
  Graph t = make_spider({2, 2, 1});
  int steps = 0;
  while (auto step = find_tree_shift(t)) {
    t = apply_tree_shift(t, *step);
    ++steps;
  }
  EXPECT_EQ(steps, 1);
  EXPECT_TRUE(isomorphic(t, make_path(6)));
}

TEST(TreeShift, InvalidStepsRejected) {
  EXPECT_THROW(apply_tree_shift(make_path(5), TreeShiftStep{2, {1, 0}, {3, 4}}), ContractViolation);
  EXPECT_THROW(apply_tree_shift(make_star(4), TreeShiftStep{0, {1}, {1}}), ContractViolation);
  EXPECT_THROW(find_tree_shift(make_cycle(4)), ContractViolation);
}

TEST(TreeShift, EveryTreeReachesPathInLeavesMinusTwoSteps) {
  const auto levels = enumerate_connected_upto(12, GraphClass::trees);
  for (int n = 3; n <= 12; ++n)
    for (const auto& t0 : levels[n]) {
      Graph t = t0;
      const int leaves = leaf_count(t);
      int steps = 0;
      while (auto step = find_tree_shift(t)) {
        const int before = leaf_count(t);
        t = apply_tree_shift(t, *step);
        ASSERT_TRUE(is_tree(t));
        ASSERT_EQ(leaf_count(t), before - 1);
        ++steps;
      }
      ASSERT_TRUE(is_path_graph(t));
      ASSERT_EQ(steps, leaves - 2);
    }
}

TEST(Graph6, RoundTripAndKnownStrings) {
  EXPECT_EQ(to_graph6(make_complete(3)), "Bw");
  EXPECT_EQ(to_graph6(make_path(2)), "A_");
  const auto levels = enumerate_connected_upto(7, GraphClass::all);
  for (int n = 1; n <= 7; ++n)
    for (const auto& g : levels[n]) ASSERT_EQ(from_graph6(to_graph6(g)), g);
}

TEST(Graph6, MalformedLineNamed) {
  try {
    parse_graph6_lines("Bw\nA_\n\nB!\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
  }
}

TEST(EdgeList, RoundTripWithWeights) {
  const Graph g(3, {{0, 1}, {1, 2}}, {Rational(2, 3), Rational(5)});
  EXPECT_EQ(from_edge_list(to_edge_list(g)), g);
  EXPECT_EQ(from_edge_list("4\n0 1\n1 2\n2 3\n"), make_path(4));
  EXPECT_THROW(from_edge_list("3\n0 1 2 3\n"), ParseError);
}

TEST(GraphInvariants, RejectsLoopsAndDuplicates) {
  EXPECT_THROW(Graph(2, {{0, 0}}), ParameterError);
  EXPECT_THROW(Graph(2, {{0, 1}, {1, 0}}), ParameterError);
  EXPECT_THROW(Graph(2, {{0, 1}}, {Rational(-1)}), ParameterError);
}
