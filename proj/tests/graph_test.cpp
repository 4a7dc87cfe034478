#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <zlib.h>

#include "dks/errors.hpp"
#include "dks/graph.hpp"
#include "dks/oracles.hpp"
#include "test_util.hpp"

using namespace dks;

TEST(Graph, FromEdgesCanonicalizes) {
  auto g = Graph::from_edges(3, std::vector<WeightedEdge>{{2, 1, 1.5}, {1, 0, 2.0}});
  ASSERT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1}));
  EXPECT_EQ(g.edges()[1], (Edge{1, 2}));
  EXPECT_DOUBLE_EQ(g.weights()[0], 2.0);
  EXPECT_DOUBLE_EQ(g.weights()[1], 1.5);
  EXPECT_DOUBLE_EQ(g.degrees()[1], 3.5);
}

TEST(Graph, FromEdgesRejectsBadInput) {
  EXPECT_THROW(Graph::from_edges(2, std::vector<Edge>{{0, 0}}), DomainError);
  EXPECT_THROW(Graph::from_edges(2, std::vector<Edge>{{0, 2}}), DomainError);
  EXPECT_THROW(Graph::from_edges(2, std::vector<Edge>{{0, 1}, {1, 0}}), DomainError);
  EXPECT_THROW(Graph::from_edges(2, std::vector<WeightedEdge>{{0, 1, 0.0}}), DomainError);
  EXPECT_THROW(Graph::from_edges(2, std::vector<WeightedEdge>{{0, 1, -1.0}}), DomainError);
  EXPECT_THROW(Graph::from_edges(2, std::vector<WeightedEdge>{{0, 1, NAN}}), DomainError);
}

TEST(Graph, InvariantsOnRandomGraphs) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto g = oracles::random_graph(30, 0.2, seed, 3.0);
    auto edges = g.edges();
    EXPECT_TRUE(std::is_sorted(edges.begin(), edges.end()));
    std::vector<double> deg(g.num_vertices(), 0.0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      EXPECT_LT(edges[e].u, edges[e].v);
      EXPECT_GT(g.weights()[e], 0.0);
      deg[edges[e].u] += g.weights()[e];
      deg[edges[e].v] += g.weights()[e];
    }
    for (std::size_t i = 0; i < deg.size(); ++i) EXPECT_NEAR(g.degrees()[i], deg[i], 1e-12);
  }
}

TEST(Operators, IncidenceTransposeExamples) {
  auto k3 = oracles::complete_graph(3);
  EXPECT_EQ(incidence_apply_t(k3, std::vector<double>{1, 1, 0}), (std::vector<double>{0, 1, 1}));
  auto p3 = oracles::path_graph(3);
  EXPECT_EQ(incidence_apply_t(p3, std::vector<double>{3, 1, 0}), (std::vector<double>{2, 1}));
  auto g = oracles::random_graph(15, 0.4, 3);
  for (double v : incidence_apply_t(g, std::vector<double>(15, 2.5))) EXPECT_EQ(v, 0.0);
}

TEST(Operators, IncidenceExamples) {
  auto k3 = oracles::complete_graph(3);
  EXPECT_EQ(incidence_apply(k3, std::vector<double>{1, 0, 0}), (std::vector<double>{1, -1, 0}));
  EXPECT_EQ(incidence_apply(k3, std::vector<double>{0, 0, 0}), (std::vector<double>{0, 0, 0}));
}

TEST(Operators, LengthMismatchThrows) {
  auto k3 = oracles::complete_graph(3);
  EXPECT_THROW(incidence_apply_t(k3, std::vector<double>{1, 2}), DomainError);
  EXPECT_THROW(incidence_apply(k3, std::vector<double>{1, 2}), DomainError);
  EXPECT_THROW(adjacency_apply(k3, std::vector<double>{1}), DomainError);
}

TEST(Operators, AdjointIdentity) {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto g = test::random_nonempty_graph(40, 0.15, seed, 2.0);
    auto x = test::random_vector(g.num_vertices(), rng, -1, 1);
    auto f = test::random_vector(g.num_edges(), rng, -1, 1);
    auto btx = incidence_apply_t(g, x);
    auto bf = incidence_apply(g, f);
    double lhs = 0, rhs = 0, scale = 0;
    for (std::size_t e = 0; e < f.size(); ++e) lhs += btx[e] * f[e], scale += std::abs(btx[e] * f[e]);
    for (std::size_t i = 0; i < x.size(); ++i) rhs += x[i] * bf[i];
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, scale));
  }
}

TEST(Operators, AdjacencyExamples) {
  auto k3 = oracles::complete_graph(3);
  EXPECT_EQ(adjacency_apply(k3, std::vector<double>(3, 1.0)), (std::vector<double>{2, 2, 2}));
  auto star = oracles::star_graph(4);
  EXPECT_EQ(adjacency_apply(star, std::vector<double>{1, 0, 0, 0}),
            (std::vector<double>{0, 1, 1, 1}));
}

TEST(Operators, DegreeIsWTimesOnes) {
  auto g = oracles::random_graph(50, 0.1, 5, 2.0);
  auto d = adjacency_apply(g, std::vector<double>(g.num_vertices(), 1.0));
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(d[i], g.degrees()[i], 1e-12);
}

TEST(Operators, LaplacianIdentity) {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = test::random_nonempty_graph(100, 0.05, seed, 2.0);
    auto x = test::random_vector(g.num_vertices(), rng, -1, 1);
    auto lx = incidence_apply(g, incidence_apply_t(g, x));
    for (VertexId i = 0; i < g.num_vertices(); ++i) {
      double expect = static_cast<double>(g.unweighted_degree(i)) * x[i];
      for (const auto& nb : g.neighbors(i)) expect -= x[nb.v];
      EXPECT_NEAR(lx[i], expect, 1e-12);
    }
  }
}

TEST(Operators, MatchDenseOracle) {
  std::mt19937_64 rng(9);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = test::random_nonempty_graph(60, 0.1, seed, 2.0);
    auto dc = oracles::dense_cross_check(g);
    auto x = test::random_vector(g.num_vertices(), rng, -1, 1);
    Eigen::VectorXd wx = dc.adjacency * test::to_eigen(x);
    Eigen::VectorXd btx = dc.incidence.transpose() * test::to_eigen(x);
    auto wx2 = adjacency_apply(g, x);
    auto btx2 = incidence_apply_t(g, x);
    for (Eigen::Index i = 0; i < wx.size(); ++i) EXPECT_NEAR(wx(i), wx2[i], 1e-12);
    for (Eigen::Index e = 0; e < btx.size(); ++e) EXPECT_EQ(btx(e), btx2[e]);
  }
}

TEST(SpectralNorm, Examples) {
  auto k2 = oracles::complete_graph(2);
  double l = incidence_spectral_norm_sq(k2, 0.01);
  EXPECT_GE(l, 2.0);
  EXPECT_LE(l, 2.02);
  for (std::size_t n : {4u, 6u, 11u}) {
    auto star = oracles::star_graph(n);
    double ls = incidence_spectral_norm_sq(star, 0.01);
    EXPECT_GE(ls, n * (1 - 1e-12));
    EXPECT_LE(ls, 1.01 * n * (1 + 1e-12));
  }
  double l3 = incidence_spectral_norm_sq(oracles::complete_graph(3), 1e-3);
  EXPECT_GE(l3, 3.0);
  EXPECT_LE(l3, 3.0 * 1.01);
}

TEST(SpectralNorm, BracketsDenseEigenvalue) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = test::random_nonempty_graph(80, 0.08, seed);
    auto dc = oracles::dense_cross_check(g);
    const double lmax = dc.laplacian_eigenvalues.maxCoeff();
    const double tol = 1e-3;
    const double est = incidence_spectral_norm_sq(g, tol);
    EXPECT_GE(est, lmax * (1 - 1e-12)) << seed;
    EXPECT_LE(est, std::min(2.0 * g.max_unweighted_degree(), (1 + 10 * tol) * lmax)) << seed;
    EXPECT_LE(est, 1.02 * lmax);
  }
}

TEST(SubgraphWeight, Examples) {
  auto k3 = oracles::complete_graph(3);
  EXPECT_EQ(subgraph_weight(k3, std::vector<VertexId>{0, 1}), 2.0);
  EXPECT_EQ(subgraph_weight(k3, std::vector<VertexId>{0, 1, 2}), 6.0);
  EXPECT_EQ(edge_density(k3, std::vector<VertexId>{0, 1, 2}), 1.0);
  EXPECT_EQ(edge_density(k3, std::vector<VertexId>{0, 1}), 1.0);
  EXPECT_EQ(edge_density(oracles::path_graph(3), std::vector<VertexId>{0, 2}), 0.0);
  EXPECT_THROW(subgraph_weight(k3, std::vector<VertexId>{0, 3}), DomainError);
  EXPECT_THROW(edge_density(k3, std::vector<VertexId>{0}), DomainError);
}

TEST(SubgraphWeight, MatchesDoubleLoop) {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = oracles::random_graph(25, 0.3, seed, 2.0);
    auto dc = oracles::dense_cross_check(g);
    std::vector<VertexId> s;
    for (VertexId i = 0; i < 25; ++i) {
      if (rng() & 1) s.push_back(i);
    }
    double expect = 0.0;
    for (VertexId a : s) {
      for (VertexId b : s) expect += dc.adjacency(a, b);
    }
    EXPECT_NEAR(subgraph_weight(g, s), expect, 1e-12);
    double total = 0.0;
    for (double d : g.degrees()) total += d;
    EXPECT_NEAR(subgraph_weight(g, test::all_ids(g)), total, 1e-9);
  }
}

TEST(VertexSet, CachesWeightAndDensity) {
  auto g = test::k4_plus_k2();
  VertexSet s(g, {3, 1, 0, 2});
  EXPECT_EQ(s.k(), 4u);
  EXPECT_EQ(s.members()[0], 0u);
  EXPECT_EQ(s.subgraph_weight(), 12.0);
  EXPECT_EQ(s.density(), 1.0);
  EXPECT_TRUE(s.contains(2));
  EXPECT_FALSE(s.contains(4));
  EXPECT_THROW(VertexSet(g, {0, 0}), DomainError);
  EXPECT_THROW(VertexSet(g, {0, 9}), DomainError);
}

TEST(Loader, SelfLoopAndReverseArc) {
  auto g = load_edge_list("1 2\n2 1\n2 2\n2 3\n");
  EXPECT_EQ(g.num_vertices(), 3u);
  ASSERT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1}));
  EXPECT_EQ(g.edges()[1], (Edge{1, 2}));
  EXPECT_EQ(g.weights()[0], 1.0);
  EXPECT_EQ(g.weights()[1], 1.0);
}

TEST(Loader, KeepsLargestComponent) {
  auto g = load_edge_list("1 2\n3 4\n4 5\n");
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(std::vector<std::int64_t>(g.original_ids().begin(), g.original_ids().end()),
            (std::vector<std::int64_t>{3, 4, 5}));
}

TEST(Loader, WeightedDuplicatesSum) {
  auto g = load_edge_list("1 2 0.5\n2 1 0.25\n", {.weighted = true});
  ASSERT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(g.weights()[0], 0.75);
}

TEST(Loader, CommentsAndBlankLines) {
  auto g = load_edge_list("# header\n% other\n\n10 20\n  20 30  \n");
  EXPECT_EQ(g.num_edges(), 2u);
}

TEST(Loader, ParseErrorsCarryLineNumbers) {
  auto line_of = [](std::string_view text, LoadOptions opts = {}) {
    try {
      load_edge_list(text, opts);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("1 2\nx 3\n"), 2u);
  EXPECT_EQ(line_of("1 2\n3\n"), 2u);
  EXPECT_EQ(line_of("# c\n1 2 -1\n", {.weighted = true}), 2u);
  EXPECT_EQ(line_of("1 2\n2 3\n", {.weighted = true}), 1u);
  EXPECT_EQ(line_of("1 2 abc\n", {.weighted = true}), 1u);
}

TEST(Loader, EmptyAfterPreprocessing) {
  EXPECT_THROW(load_edge_list("# nothing\n"), DomainError);
  EXPECT_THROW(load_edge_list("4 4\n"), DomainError);
}

TEST(Loader, RoundTripIsIdempotent) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (bool weighted : {false, true}) {
      auto g0 = test::random_nonempty_graph(40, 0.1, seed, weighted ? 5.0 : 0.0);
      std::ostringstream first;
      write_edge_list(first, g0, weighted);
      auto g1 = load_edge_list(first.str(), {.weighted = weighted});
      std::ostringstream second;
      write_edge_list(second, g1, weighted);
      auto g2 = load_edge_list(second.str(), {.weighted = weighted});
      EXPECT_EQ(g1, g2);
      std::ostringstream third;
      write_edge_list(third, g2, weighted);
      EXPECT_EQ(second.str(), third.str());
    }
  }
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("dks_graph_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST_F(TempDir, GzipIsTransparent) {
  const std::string text = "1 2 2.5\n2 3 1\n3 1 4\n";
  const auto path = dir_ / "g.txt.gz";
  gzFile f = gzopen(path.c_str(), "wb");
  ASSERT_NE(f, nullptr);
  gzwrite(f, text.data(), static_cast<unsigned>(text.size()));
  gzclose(f);
  auto g = load_edge_list_file(path, {.weighted = true});
  EXPECT_EQ(g, load_edge_list(text, {.weighted = true}));
}

TEST_F(TempDir, BinaryCacheRoundTrip) {
  auto g = load_edge_list("5 9 0.5\n9 12 1.25\n12 5 3\n100 5 1\n", {.weighted = true});
  const auto path = dir_ / "g.dksg";
  save_binary(g, path);
  auto h = load_binary(path);
  EXPECT_EQ(g, h);
  EXPECT_EQ(h.num_vertices(), g.num_vertices());
  for (std::size_t i = 0; i < g.num_vertices(); ++i) EXPECT_EQ(h.degrees()[i], g.degrees()[i]);
}

TEST_F(TempDir, BinaryCacheRejectsGarbage) {
  const auto path = dir_ / "bad.dksg";
  std::ofstream(path) << "not a cache";
  EXPECT_THROW(load_binary(path), ParseError);
}
