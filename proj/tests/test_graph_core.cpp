#include <gtest/gtest.h>

#include <random>

#include "gstate/errors.hpp"
#include "gstate/gf2.hpp"
#include "gstate/graph.hpp"
#include "gstate/io.hpp"
#include "oracles.hpp"

using namespace gstate;

TEST(BitVec, BasicOps) {
    BitVec a(70);
    a.set(0);
    a.set(65);
    EXPECT_EQ(a.popcount(), 2u);
    EXPECT_TRUE(a.get(65));
    EXPECT_EQ(a.first_set(), 0u);
    BitVec b = ~a;
    EXPECT_EQ(b.popcount(), 68u);
    EXPECT_TRUE((a & b).none());
    EXPECT_EQ((a | b).popcount(), 70u);
    EXPECT_EQ(BitVec::from_indices(70, a.indices()), a);
}

TEST(Gf2, RankMatchesDenseElimination) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; t++) {
        size_t r = 1 + rng() % 12, c = 1 + rng() % 80;
        std::vector<BitVec> rows(r, BitVec(c));
        std::vector<std::vector<int>> dense(r, std::vector<int>(c));
        for (size_t i = 0; i < r; i++) {
            for (size_t j = 0; j < c; j++) {
                if (rng() % 3 == 0) {
                    rows[i].set(j);
                    dense[i][j] = 1;
                }
            }
        }
        EXPECT_EQ(gf2_rank(rows), oracle::rank_mod2(dense));
    }
}

TEST(Gf2, BasisCoordinates) {
    Gf2Basis basis(8);
    BitVec a = BitVec::from_indices(8, {0, 1});
    BitVec b = BitVec::from_indices(8, {1, 2});
    EXPECT_TRUE(basis.insert(a));
    EXPECT_TRUE(basis.insert(b));
    EXPECT_FALSE(basis.insert(a ^ b));
    EXPECT_EQ(basis.rank(), 2u);
    EXPECT_EQ(basis.coordinates(a ^ b), std::optional<uint64_t>(3));
    EXPECT_EQ(basis.coordinates(b), std::optional<uint64_t>(2));
    EXPECT_FALSE(basis.coordinates(BitVec::from_indices(8, {7})).has_value());
}

TEST(MakeGraph, Cycle4) {
    Graph g = Graph::make(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    EXPECT_EQ(g.num_edges(), 4u);
    EXPECT_TRUE(is_k_regular(g, 2));
    g.validate();
}

TEST(MakeGraph, SingleVertex) {
    Graph g = Graph::make(1, {});
    EXPECT_EQ(g.num_vertices(), 1u);
    EXPECT_EQ(g.num_edges(), 0u);
}

TEST(MakeGraph, DuplicatesCollapse) {
    Graph g = Graph::make(3, {{0, 1}, {0, 1}});
    EXPECT_EQ(g.num_edges(), 1u);
    EXPECT_EQ(g.degree(2), 0u);
}

TEST(MakeGraph, Rejections) {
    EXPECT_THROW(Graph::make(3, {{1, 1}}), InvalidInput);
    EXPECT_THROW(Graph::make(3, {{0, 3}}), InvalidInput);
    try {
        Graph::make(3, {{2, 2}});
    } catch (const InvalidInput &e) {
        EXPECT_NE(std::string(e.what()).find("(2, 2)"), std::string::npos);
    }
    EXPECT_THROW(Graph::make(2, {}, {"a", "a"}), InvalidInput);
}

TEST(Complement, Cycle4IsMatching) {
    Graph c = complement(oracle::cycle(4));
    EXPECT_EQ(c.edges(), (std::vector<Edge>{{0, 2}, {1, 3}}));
}

TEST(Complement, CompleteIsEmpty) {
    Graph c = complement(oracle::complete(5));
    EXPECT_EQ(c.num_edges(), 0u);
    EXPECT_EQ(c.num_vertices(), 5u);
}

TEST(Complement, InvolutionAndRegularity) {
    for (uint64_t s = 0; s < 50; s++) {
        Graph g = random_graph(1 + s % 15, 0.4, s);
        EXPECT_EQ(complement(complement(g)), g);
    }
    Graph c5 = oracle::cycle(7);
    EXPECT_TRUE(is_k_regular(complement(c5), 4));
}

TEST(Complement, KeepsLabels) {
    Graph g = Graph::make(3, {{0, 1}}, {"x", "y", "z"});
    EXPECT_EQ(complement(g).labels(), g.labels());
}

TEST(Regular, Examples) {
    EXPECT_TRUE(is_k_regular(oracle::cycle(4), 2));
    EXPECT_TRUE(is_k_regular(oracle::complete(5), 4));
    EXPECT_FALSE(is_k_regular(oracle::path(3), 2));
}

TEST(CutMatrix, Cycle4) {
    Gf2Matrix m = cut_matrix(oracle::cycle(4), Bipartition::of(4, {0, 1}));
    ASSERT_EQ(m.num_rows, 2u);
    ASSERT_EQ(m.num_cols, 2u);
    // columns 2, 3
    EXPECT_FALSE(m.get(0, 0));
    EXPECT_TRUE(m.get(0, 1));
    EXPECT_TRUE(m.get(1, 0));
    EXPECT_FALSE(m.get(1, 1));
}

TEST(CutMatrix, CompleteAllOnesEmptyZero) {
    Bipartition p = Bipartition::of(6, {1, 4});
    Gf2Matrix k = cut_matrix(oracle::complete(6), p);
    Gf2Matrix e = cut_matrix(Graph(6), p);
    for (size_t i = 0; i < 2; i++) {
        EXPECT_EQ(k.rows[i].popcount(), 4u);
        EXPECT_EQ(e.rows[i].popcount(), 0u);
    }
}

TEST(CutMatrix, EmptySideRejected) {
    EXPECT_THROW(cut_matrix(oracle::cycle(4), Bipartition::of(4, {})), InvalidInput);
    EXPECT_THROW(cut_matrix(oracle::cycle(4), Bipartition::of(4, {0, 1, 2, 3})), InvalidInput);
}

TEST(CutMatrix, ComplementIsAllOnesShift) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; t++) {
        size_t n = 2 + rng() % 12;
        Graph g = random_graph(n, 0.5, rng());
        BitVec a(n);
        a.set(0);
        for (size_t v = 1; v + 1 < n; v++) {
            a.set(v, rng() & 1);
        }
        Bipartition p{a};
        Gf2Matrix m = cut_matrix(g, p);
        Gf2Matrix mc = cut_matrix(complement(g), p);
        for (size_t i = 0; i < m.num_rows; i++) {
            EXPECT_EQ((m.rows[i] ^ mc.rows[i]).popcount(), m.num_cols);
        }
        long r = static_cast<long>(gf2_rank(m)), rc = static_cast<long>(gf2_rank(mc));
        EXPECT_LE(std::abs(r - rc), 1);
    }
}

TEST(Labels, SurviveDeletionOfOthers) {
    Graph g = Graph::make(4, {{0, 1}, {1, 2}, {2, 3}}, {"a", "b", "c", "d"});
    Graph h = g.induced(BitVec::from_indices(4, {0, 2, 3}));
    EXPECT_EQ(h.labels(), (std::vector<std::string>{"a", "c", "d"}));
    EXPECT_TRUE(h.has_edge(h.index_of("c"), h.index_of("d")));
    EXPECT_THROW(h.index_of("b"), InvalidInput);
}

TEST(EdgeList, ParseSingleEdge) {
    Graph g = parse_edge_list("2 1\n0 1\n");
    EXPECT_EQ(g.num_vertices(), 2u);
    EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}}));
}

TEST(EdgeList, HeaderOfK3) {
    std::string text = to_edge_list(oracle::complete(3));
    EXPECT_EQ(text.substr(0, text.find('\n')), "3 3");
}

TEST(EdgeList, ErrorsCarryLineNumbers) {
    auto line_of = [](const std::string &text) -> size_t {
        try {
            parse_edge_list(text);
        } catch (const ParseError &e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("3 2\n0 1\n1 x\n"), 3u);
    EXPECT_EQ(line_of("3 1\n0 3\n"), 2u);
    EXPECT_EQ(line_of("3 1\n1 1\n"), 2u);
    EXPECT_EQ(line_of("3\n"), 1u);
    EXPECT_EQ(line_of("3 2\n0 1\n"), 2u);
    EXPECT_EQ(line_of("3 1\n0 1\n1 2\n"), 3u);
    EXPECT_EQ(line_of("3 1\n0 1 2\n"), 2u);
}

TEST(EdgeList, RoundTrip) {
    for (uint64_t s = 0; s < 100; s++) {
        Graph g = random_graph(1 + s % 20, 0.3, s);
        EXPECT_EQ(parse_edge_list(to_edge_list(g)), g);
    }
}

TEST(Json, RoundTripWithLabels) {
    for (uint64_t s = 0; s < 100; s++) {
        Graph g = random_graph(1 + s % 20, 0.3, s);
        std::vector<std::string> labels;
        for (size_t v = 0; v < g.num_vertices(); v++) {
            labels.push_back("v" + std::to_string(v * 7 + s));
        }
        g = g.with_labels(labels);
        Graph back = graph_from_json(graph_to_json(g));
        EXPECT_EQ(back, g);
        EXPECT_EQ(parse_graph(graph_to_json(g).dump()), g);
    }
}

TEST(Json, Malformed) {
    EXPECT_THROW(parse_graph("{\"n\": 2, \"edges\": [[0]]}"), InvalidInput);
    EXPECT_THROW(parse_graph("{\"n\": 2"), InvalidInput);
    EXPECT_THROW(parse_graph("{\"n\": 2, \"edges\": [[0, 0]]}"), InvalidInput);
}

TEST(Dot, ExportMentionsEveryEdge) {
    std::string dot = to_dot(oracle::path(3));
    EXPECT_NE(dot.find("0 -- 1"), std::string::npos);
    EXPECT_NE(dot.find("1 -- 2"), std::string::npos);
}

TEST(RandomGraph, DeterministicPerSeed) {
    EXPECT_EQ(random_graph(12, 0.5, 9), random_graph(12, 0.5, 9));
    EXPECT_EQ(random_graph(12, 0.0, 9).num_edges(), 0u);
    EXPECT_EQ(random_graph(12, 1.0, 9).num_edges(), 66u);
}
