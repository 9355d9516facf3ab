#include <gtest/gtest.h>

#include <random>
#include <string>

#include "signed_spectra/fixtures.hpp"
#include "signed_spectra/graph.hpp"
#include "signed_spectra/io.hpp"
#include "test_support.hpp"

namespace ss = signed_spectra;

TEST(CompleteGraph, EdgeCounts) {
  EXPECT_EQ(ss::complete_graph(7).m(), 21u);
  EXPECT_EQ(ss::complete_graph(8).m(), 28u);
  EXPECT_EQ(ss::complete_graph(1).m(), 0u);
  EXPECT_THROW(ss::complete_graph(0), ss::ValidationError);
}

TEST(CompleteGraph, CanonicalOrder) {
  const auto k4 = ss::complete_graph(4);
  const std::vector<ss::Edge> expected{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  ASSERT_EQ(k4.m(), expected.size());
  for (std::size_t t = 0; t < expected.size(); ++t) {
    EXPECT_EQ(k4.edge(t), expected[t]);
    EXPECT_EQ(k4.edge_index(expected[t].v, expected[t].u), t);
  }
  EXPECT_FALSE(ss::SimpleGraph::from_edges(4, {{0, 1}}).edge_index(2, 3).has_value());
}

TEST(SimpleGraph, NormalizesAndRejects) {
  const auto g = ss::SimpleGraph::from_edges(4, {{3, 1}, {2, 0}, {1, 0}});
  ASSERT_EQ(g.m(), 3u);
  EXPECT_EQ(g.edge(0), (ss::Edge{0, 1}));
  EXPECT_EQ(g.edge(1), (ss::Edge{0, 2}));
  EXPECT_EQ(g.edge(2), (ss::Edge{1, 3}));
  EXPECT_THROW(ss::SimpleGraph::from_edges(3, {{1, 1}}), ss::ValidationError);
  EXPECT_THROW(ss::SimpleGraph::from_edges(3, {{0, 1}, {1, 0}}), ss::ValidationError);
  EXPECT_THROW(ss::SimpleGraph::from_edges(3, {{0, 3}}), ss::ValidationError);
}

TEST(SignedGraph, SignVectorLengthMustMatch) {
  EXPECT_THROW(ss::SignedGraph(ss::complete_graph(3), ss::BitVector(2)), ss::ValidationError);
  const ss::SignedGraph g(ss::complete_graph(3));
  EXPECT_TRUE(g.signs().none());
  EXPECT_EQ(g.sign(0), 1);
}

TEST(DegreeSequence, Examples) {
  EXPECT_EQ(ss::degree_sequence(ss::complete_graph(7)).deg, std::vector<std::size_t>(7, 6));
  EXPECT_EQ(ss::degree_sequence(ss::complete_graph(8)).deg, std::vector<std::size_t>(8, 7));
  EXPECT_EQ(ss::degree_sequence(ss::complete_graph(2)).deg, (std::vector<std::size_t>{1, 1}));
}

TEST(DegreeSequence, SumsToTwiceEdgeCount) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = ss::testing::random_graph(rng, 1 + trial % 12, 0.4);
    std::size_t total = 0;
    for (auto d : ss::degree_sequence(g).deg) total += d;
    EXPECT_EQ(total, 2 * g.m());
  }
}

TEST(ParseEdgeList, SingleNegativeEdge) {
  const auto g = ss::parse_edge_list("2 1\n0 1 -1");
  EXPECT_EQ(g.n(), 2u);
  ASSERT_EQ(g.m(), 1u);
  EXPECT_TRUE(g.is_negative(0));
}

TEST(ParseEdgeList, PositiveTriangle) {
  const auto g = ss::parse_edge_list("3 3\n0 1 +1\n0 2 +1\n1 2 +1\n");
  EXPECT_EQ(g, ss::SignedGraph(ss::complete_graph(3)));
}

TEST(ParseEdgeList, NormalizesOrientationAndOrder) {
  const auto g = ss::parse_edge_list("3 2\n2 1 -1\n1 0 +1\n");
  EXPECT_EQ(g.base().edge(0), (ss::Edge{0, 1}));
  EXPECT_EQ(g.base().edge(1), (ss::Edge{1, 2}));
  EXPECT_FALSE(g.is_negative(0));
  EXPECT_TRUE(g.is_negative(1));
}

namespace {

std::size_t error_line(const std::string& text) {
  try {
    ss::parse_edge_list(text);
  } catch (const ss::ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return 0;
}

}  // namespace

TEST(ParseEdgeList, ErrorsNameTheLine) {
  EXPECT_EQ(error_line("3 1\n0 0 +1\n"), 2u);
  EXPECT_EQ(error_line("3 2\n0 1 +1\n1 0 -1\n"), 3u);
  EXPECT_EQ(error_line("3 1\n0 3 +1\n"), 2u);
  EXPECT_EQ(error_line("3 2\n0 1 +1\n\n1 2 2\n"), 4u);
  EXPECT_EQ(error_line("3 1\n0 1 +\n"), 2u);
  EXPECT_EQ(error_line("three 1\n0 1 +1\n"), 1u);
  EXPECT_EQ(error_line("3 2\n0 1 +1\n"), 2u);
  EXPECT_EQ(error_line("3 1\n0 1 +1\n1 2 +1\n"), 3u);
  EXPECT_EQ(error_line(""), 1u);
}

TEST(ParseEdgeList, SelfLoopMessage) {
  try {
    ss::parse_edge_list("3 1\n0 0 +1\n");
    FAIL();
  } catch (const ss::ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("self-loop"), std::string::npos);
  }
}

TEST(Serialize, Format) {
  ss::BitVector signs(3);
  signs.set(1, true);
  EXPECT_EQ(ss::serialize(ss::SignedGraph(ss::complete_graph(3), signs)), "3 3\n0 1 +1\n0 2 -1\n1 2 +1\n");
}

TEST(Serialize, RoundTripsExamplesAndK3) {
  const auto ex1 = ss::from_laplacian_matrix(ss::fixtures::example1().laplacian);
  EXPECT_EQ(ss::parse_edge_list(ss::serialize(ex1)), ex1);
  const ss::SignedGraph k3(ss::complete_graph(3));
  EXPECT_EQ(ss::parse_edge_list(ss::serialize(k3)), k3);
}

TEST(Serialize, RoundTripProperty) {
  std::mt19937_64 rng(20240501);
  const auto k5 = ss::testing::random_signing(rng, ss::complete_graph(5));
  EXPECT_EQ(ss::parse_edge_list(ss::serialize(k5)), k5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = ss::testing::random_signing(rng, ss::testing::random_graph(rng, 1 + trial % 14, 0.5));
    ASSERT_EQ(ss::parse_edge_list(ss::serialize(g)), g);
  }
}

TEST(FromLaplacian, SinglePositiveEdge) {
  const auto g = ss::from_laplacian_matrix(ss::IntMatrix::from_rows({{1, -1}, {-1, 1}}));
  ASSERT_EQ(g.m(), 1u);
  EXPECT_FALSE(g.is_negative(0));
}

TEST(FromLaplacian, ExamplesAreSignedCompleteGraphsAndRoundTrip) {
  for (const auto& ex : {ss::fixtures::example1(), ss::fixtures::example2()}) {
    const auto g = ss::from_laplacian_matrix(ex.laplacian);
    EXPECT_TRUE(g.base().is_complete());
    EXPECT_EQ(ss::integer_laplacian(g), ex.laplacian);
  }
  const auto ex1 = ss::from_laplacian_matrix(ss::fixtures::example1().laplacian);
  // Entry (1,2) is +1 in the printed matrix: negative edge.
  EXPECT_TRUE(ex1.is_negative(*ex1.base().edge_index(0, 1)));
  EXPECT_FALSE(ex1.is_negative(*ex1.base().edge_index(0, 3)));
}

TEST(FromLaplacian, RoundTripProperty) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = ss::testing::random_signing(rng, ss::testing::random_graph(rng, 1 + trial % 12, 0.6));
    const auto M = ss::integer_laplacian(g);
    ASSERT_EQ(ss::integer_laplacian(ss::from_laplacian_matrix(M)), M);
    ASSERT_EQ(ss::from_laplacian_matrix(M), g);
  }
}

TEST(FromLaplacian, ValidationErrors) {
  EXPECT_THROW(ss::from_laplacian_matrix(ss::IntMatrix::from_rows({{1, -1}, {1, 1}})), ss::ValidationError);
  EXPECT_THROW(ss::from_laplacian_matrix(ss::IntMatrix::from_rows({{2, 2}, {2, 2}})), ss::ValidationError);
  EXPECT_THROW(ss::from_laplacian_matrix(ss::IntMatrix::from_rows({{2, -1}, {-1, 1}})), ss::ValidationError);
  EXPECT_THROW(ss::IntMatrix::from_rows({{1, -1}, {-1}}), ss::ValidationError);
}

TEST(MatrixText, ParseAndFormat) {
  const auto M = ss::fixtures::example2().laplacian;
  EXPECT_EQ(ss::parse_matrix_text(ss::format_matrix_text(M)), M);
  EXPECT_THROW(ss::parse_matrix_text("2\n1 -1\n"), ss::ParseError);
  EXPECT_THROW(ss::parse_matrix_text("2\n1 -1\n-1 x\n"), ss::ParseError);
}

TEST(DetectFormat, ByHeader) {
  EXPECT_EQ(ss::detect_format("2\n1 -1\n-1 1\n"), ss::InputFormat::LaplacianMatrix);
  EXPECT_EQ(ss::detect_format("2 1\n0 1 -1\n"), ss::InputFormat::EdgeList);
  EXPECT_THROW(ss::detect_format("1 2 3\n"), ss::ParseError);
  EXPECT_EQ(ss::parse_graph("2\n1 1\n1 1\n"), ss::parse_graph("2 1\n0 1 -1\n"));
}

TEST(BitVector, HexRoundTripAndOrdering) {
  std::mt19937_64 rng(3);
  for (std::size_t size : {0u, 1u, 4u, 21u, 28u, 64u, 66u, 130u}) {
    const auto b = ss::testing::random_bits(rng, size);
    EXPECT_EQ(ss::BitVector::from_hex(b.to_hex(), size), b);
  }
  EXPECT_EQ(ss::BitVector::from_word(0x1e2980, 21).to_hex(), "1e2980");
  EXPECT_LT(ss::BitVector::from_word(5, 70), ss::BitVector::from_word(6, 70));
  auto high = ss::BitVector(70);
  high.set(65, true);
  EXPECT_LT(ss::BitVector::from_word(~0ULL, 70), high);
  EXPECT_THROW(ss::BitVector::from_hex("10", 4), ss::InputError);
  EXPECT_THROW(ss::BitVector::from_hex("g", 4), ss::InputError);
}

TEST(Describe, Labels) {
  EXPECT_EQ(ss::describe(ss::complete_graph(7)), "K7");
  const auto path = ss::SimpleGraph::from_edges(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(ss::describe(path).rfind("G3.2.", 0), 0u);
  EXPECT_TRUE(ss::is_connected(path));
  EXPECT_FALSE(ss::is_connected(ss::SimpleGraph::from_edges(3, {{0, 1}})));
}
