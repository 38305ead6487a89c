#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace graphrec;

TEST(Oracle, SmallWithWitness) {
    auto M = fixtures::small_matrix();
    auto v = oracle_is_graphic(M);
    ASSERT_TRUE(v.graphic);
    ASSERT_TRUE(v.witness);
    EXPECT_TRUE(verify_realization(M, *v.witness));
    EXPECT_GT(v.trees_checked, 0u);
}

TEST(Oracle, K33DualChecksEveryTree) {
    auto K = derive_k33_dual();
    EXPECT_EQ(K.num_rows(), 4);
    EXPECT_EQ(K.num_cols(), 5);
    EXPECT_EQ(K.nonzeros(), 12u);
    EXPECT_EQ(K.row_labels()[0], "by");
    std::set<std::string> first;
    for (int c : K.row(0)) first.insert(K.col_labels()[c]);
    EXPECT_EQ(first, (std::set<std::string>{"ax", "bx", "ay"}));
    auto v = oracle_is_graphic(K);
    EXPECT_FALSE(v.graphic);
    EXPECT_FALSE(v.witness);
    EXPECT_EQ(v.trees_checked, 125u);
}

TEST(Oracle, K5DualChecksEveryTree) {
    auto K = derive_k5_dual();
    EXPECT_EQ(K.num_rows(), 6);
    EXPECT_EQ(K.num_cols(), 4);
    auto v = oracle_is_graphic(K);
    EXPECT_FALSE(v.graphic);
    EXPECT_EQ(v.trees_checked, 16807u);
}

TEST(Oracle, AllOnesRow) {
    for (int n = 1; n <= 6; ++n) {
        auto M = SparseBinaryMatrix::from_strings({std::string(n, '1')});
        auto v = oracle_is_graphic(M);
        ASSERT_TRUE(v.graphic);
        EXPECT_TRUE(verify_realization(M, *v.witness));
        EXPECT_TRUE(is_graphic(M).graphic);
    }
}

TEST(Oracle, ZeroRowsAndColumns) {
    auto M = SparseBinaryMatrix::from_strings({"100", "000", "100"});
    auto v = oracle_is_graphic(M);
    ASSERT_TRUE(v.graphic);
    EXPECT_TRUE(verify_realization(M, *v.witness));
}

TEST(Oracle, ScaleLimit) {
    std::vector<std::string> rows(kOracleMaxBlockRows + 1, "1");
    EXPECT_THROW(oracle_is_graphic(SparseBinaryMatrix::from_strings(rows)), OracleScaleError);
    rows.pop_back();
    EXPECT_NO_THROW(oracle_is_graphic(SparseBinaryMatrix::from_strings(rows)));
    // many rows are fine while every block stays small
    std::vector<std::string> diag(12, std::string(12, '0'));
    for (int i = 0; i < 12; ++i) diag[i][i] = '1';
    EXPECT_TRUE(oracle_is_graphic(SparseBinaryMatrix::from_strings(diag)).graphic);
}

TEST(Oracle, WitnessOfConnectedBlockIsTwoConnected) {
    std::mt19937_64 rng(67);
    int checked = 0;
    for (int t = 0; t < 400; ++t) {
        auto M = fixtures::random_matrix(2 + static_cast<int>(rng() % 5), 2 + static_cast<int>(rng() % 5), 0.5, rng);
        auto d = connected_blocks(M);
        if (d.blocks.size() != 1 || !d.zero_rows.empty() || !d.zero_cols.empty()) continue;
        auto v = oracle_is_graphic(M);
        if (!v.graphic) continue;
        EXPECT_TRUE(verify_realization(M, *v.witness));
        EXPECT_TRUE(is_biconnected_multigraph(underlying_graph(*v.witness)));
        ++checked;
    }
    EXPECT_GT(checked, 50);
}

TEST(RandomInstance, SmallestCase) {
    auto inst = random_graphic_instance(1, 2, 2);
    EXPECT_EQ(inst.matrix.num_rows(), 1);
    EXPECT_EQ(inst.matrix.num_cols(), 1);
    EXPECT_EQ(inst.matrix.row(0), (std::vector<int>{0}));
}

TEST(RandomInstance, SimpleCompleteGraph) {
    auto inst = random_graphic_instance(7, 5, 10, true);
    EXPECT_EQ(inst.matrix.num_rows(), 4);
    EXPECT_EQ(inst.matrix.num_cols(), 6);
    std::set<std::pair<int, int>> pairs;
    for (const auto& e : inst.graph.edges) pairs.insert(std::minmax(e.u, e.v));
    EXPECT_EQ(pairs.size(), 10u);
    EXPECT_TRUE(is_simple(underlying_graph(inst.graph)));
    EXPECT_TRUE(verify_realization(inst.matrix, inst.graph));
}

TEST(RandomInstance, InfeasibleSizesThrow) {
    EXPECT_THROW(random_graphic_instance(1, 0, 0), std::invalid_argument);
    EXPECT_THROW(random_graphic_instance(1, 4, 2), std::invalid_argument);
    EXPECT_THROW(random_graphic_instance(1, 1, 1), std::invalid_argument);
    EXPECT_THROW(random_graphic_instance(1, 4, 7, true), std::invalid_argument);
    EXPECT_NO_THROW(random_graphic_instance(1, 4, 7));
}

TEST(RandomInstance, SeedDetermines) {
    auto a = random_graphic_instance(99, 7, 12), b = random_graphic_instance(99, 7, 12);
    EXPECT_TRUE(a.matrix.same_pattern(b.matrix));
    EXPECT_TRUE(oracle_is_graphic(a.matrix).graphic);
}

TEST(VerifyRealization, AlternateAndPerturbed) {
    auto M = fixtures::small_matrix();
    EXPECT_TRUE(verify_realization(M, fixtures::small_graph()));
    EXPECT_TRUE(verify_realization(M, fixtures::small_graph_alt()));
    auto g = fixtures::small_graph();
    // move column f = (1,3) to (1,6)
    g.edges[5].v = 5;
    EXPECT_FALSE(verify_realization(M, g));
}

TEST(OracleAgreement, RandomMatrices) {
    std::mt19937_64 rng(71);
    int graphic = 0, non_graphic = 0;
    for (int t = 0; t < 400; ++t) {
        auto M = fixtures::random_matrix(1 + static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 6), 0.5, rng);
        bool o = oracle_is_graphic(M).graphic;
        EXPECT_EQ(is_graphic(M).graphic, o);
        (o ? graphic : non_graphic)++;
    }
    EXPECT_GT(graphic, 50);
    EXPECT_GT(non_graphic, 20);
}
