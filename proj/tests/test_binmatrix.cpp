#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace graphrec;

namespace {

SparseBinaryMatrix stack_diagonal(const SparseBinaryMatrix& A, const SparseBinaryMatrix& B) {
    std::vector<std::vector<int>> rows;
    for (int i = 0; i < A.num_rows(); ++i) rows.push_back(A.row(i));
    for (int i = 0; i < B.num_rows(); ++i) {
        std::vector<int> r;
        for (int c : B.row(i)) r.push_back(c + A.num_cols());
        rows.push_back(r);
    }
    return SparseBinaryMatrix(A.num_rows() + B.num_rows(), A.num_cols() + B.num_cols(), std::move(rows));
}

int parse_error_line(const std::string& text, MatrixFormat f) {
    try {
        parse_matrix(text, f);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

} // namespace

TEST(Parse, EmptyCoordinate) {
    auto M = parse_matrix("0 0 0\n", MatrixFormat::coordinate);
    EXPECT_EQ(M.num_rows(), 0);
    EXPECT_EQ(M.num_cols(), 0);
    EXPECT_EQ(M.nonzeros(), 0u);
}

TEST(Parse, SmallDense) {
    auto M = parse_matrix("0 1 1 1 0\n1 1 0 0 0\n1 0 1 1 0\n0 0 1 1 1\n0 0 0 1 1\n", MatrixFormat::dense);
    EXPECT_EQ(M.nonzeros(), 13u);
    EXPECT_TRUE(M.same_pattern(fixtures::small_matrix()));
    EXPECT_EQ(M.row(0), (std::vector<int>{1, 2, 3}));
}

TEST(Parse, WideCoordinate) {
    auto W = fixtures::wide_matrix();
    auto text = serialize_matrix(W, MatrixFormat::coordinate);
    auto M = parse_matrix(text, MatrixFormat::coordinate);
    EXPECT_EQ(M.nonzeros(), 22u);
    EXPECT_TRUE(M.same_pattern(W));
    EXPECT_EQ(M.row(4), (std::vector<int>{0, 1, 2, 6, 7, 8}));
}

TEST(Parse, EntryOrderIrrelevant) {
    auto A = parse_matrix("2 3 3\n2 3\n1 1\n1 2\n", MatrixFormat::coordinate);
    auto B = parse_matrix("2 3 3\n1 1\n1 2\n2 3\n", MatrixFormat::coordinate);
    EXPECT_TRUE(A.same_pattern(B));
}

TEST(Parse, CommentsAndValues) {
    auto M = parse_matrix("% comment\n2 2 3\n1 1 1\n% mid\n2 2\n1 2 0\n", MatrixFormat::coordinate);
    EXPECT_EQ(M.nonzeros(), 2u);
}

TEST(Parse, RowListZeroRowsAndColumnDirective) {
    auto M = parse_matrix("#cols 4\n1 3\n\n2\n", MatrixFormat::row_list);
    EXPECT_EQ(M.num_rows(), 3);
    EXPECT_EQ(M.num_cols(), 4);
    EXPECT_TRUE(M.row(1).empty());
}

TEST(ParseErrors, NameTheLine) {
    EXPECT_EQ(parse_error_line("2 2\n", MatrixFormat::coordinate), 1);
    EXPECT_EQ(parse_error_line("2 2 2\n1 1\n3 1\n", MatrixFormat::coordinate), 3);
    EXPECT_EQ(parse_error_line("2 2 2\n1 1\n1 1\n", MatrixFormat::coordinate), 3);
    EXPECT_EQ(parse_error_line("2 2 1\n1 x\n", MatrixFormat::coordinate), 2);
    EXPECT_EQ(parse_error_line("01\n0a\n", MatrixFormat::dense), 2);
    EXPECT_EQ(parse_error_line("01\n011\n", MatrixFormat::dense), 2);
    EXPECT_EQ(parse_error_line("1 2\n2 2\n", MatrixFormat::row_list), 2);
    EXPECT_EQ(parse_error_line("#cols 2\n1 3\n", MatrixFormat::row_list), 2);
    EXPECT_EQ(parse_error_line("0\n", MatrixFormat::row_list), 1);
}

TEST(Parse, FormatNames) {
    EXPECT_EQ(format_from_string("coordinate"), MatrixFormat::coordinate);
    EXPECT_EQ(format_from_string("dense"), MatrixFormat::dense);
    EXPECT_EQ(format_from_string("row-list"), MatrixFormat::row_list);
    EXPECT_THROW(format_from_string("csv"), std::invalid_argument);
}

TEST(Serialize, RoundTripAllFormats) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        int m = 1 + static_cast<int>(rng() % 7), n = 1 + static_cast<int>(rng() % 7);
        auto M = fixtures::random_matrix(m, n, 0.4, rng);
        for (auto f : {MatrixFormat::coordinate, MatrixFormat::dense, MatrixFormat::row_list}) {
            auto back = parse_matrix(serialize_matrix(M, f), f);
            EXPECT_TRUE(back.same_pattern(M)) << serialize_matrix(M, f);
        }
    }
}

TEST(Matrix, RejectsBadRows) {
    EXPECT_THROW(SparseBinaryMatrix(1, 2, {{2}}), std::invalid_argument);
    EXPECT_THROW(SparseBinaryMatrix(1, 2, {{1, 1}}), std::invalid_argument);
}

TEST(Matrix, TransposeAndPermute) {
    auto M = fixtures::small_matrix();
    auto T = M.transpose();
    EXPECT_EQ(T.num_rows(), 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) EXPECT_EQ(M.at(i, j), T.at(j, i));
    EXPECT_TRUE(T.transpose().same_pattern(M));
    auto P = M.permute_rows({4, 3, 2, 1, 0});
    EXPECT_EQ(P.row(0), M.row(4));
    EXPECT_EQ(P.row_labels()[0], "e");
}

TEST(Blocks, SmallIsConnected) {
    auto d = connected_blocks(fixtures::small_matrix());
    ASSERT_EQ(d.blocks.size(), 1u);
    EXPECT_EQ(d.blocks[0].row_indices.size(), 5u);
    EXPECT_EQ(d.blocks[0].col_indices.size(), 5u);
}

TEST(Blocks, DiagonalStack) {
    auto F = fixtures::small_matrix();
    auto d = connected_blocks(stack_diagonal(F, F));
    ASSERT_EQ(d.blocks.size(), 2u);
    EXPECT_EQ(d.blocks[1].row_indices, (std::vector<int>{5, 6, 7, 8, 9}));
}

TEST(Blocks, Identity) {
    auto d = connected_blocks(SparseBinaryMatrix::from_strings({"100", "010", "001"}));
    ASSERT_EQ(d.blocks.size(), 3u);
    for (const auto& b : d.blocks) {
        EXPECT_EQ(b.row_indices.size(), 1u);
        EXPECT_EQ(b.col_indices.size(), 1u);
    }
}

TEST(Blocks, ZeroRowsAndColumns) {
    auto d = connected_blocks(SparseBinaryMatrix::from_strings({"100", "000", "100"}));
    EXPECT_EQ(d.blocks.size(), 1u);
    EXPECT_EQ(d.zero_rows, (std::vector<int>{1}));
    EXPECT_EQ(d.zero_cols, (std::vector<int>{1, 2}));
}

TEST(Blocks, PartitionProperty) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 300; ++t) {
        auto M = fixtures::random_matrix(1 + static_cast<int>(rng() % 8), 1 + static_cast<int>(rng() % 8), 0.2, rng);
        auto d = connected_blocks(M);
        std::vector<int> rseen(M.num_rows(), 0), cseen(M.num_cols(), 0);
        for (const auto& b : d.blocks) {
            for (int r : b.row_indices) ++rseen[r];
            for (int c : b.col_indices) ++cseen[c];
        }
        for (int r : d.zero_rows) ++rseen[r];
        for (int c : d.zero_cols) ++cseen[c];
        for (int x : rseen) EXPECT_EQ(x, 1);
        for (int x : cseen) EXPECT_EQ(x, 1);
        // entries never cross blocks
        for (int r = 0; r < M.num_rows(); ++r)
            for (int c : M.row(r)) EXPECT_EQ(d.row_block[r], d.col_block[c]);
        // each block is connected: its submatrix decomposes into one block
        for (const auto& b : d.blocks) EXPECT_EQ(connected_blocks(block_submatrix(M, b)).blocks.size(), 1u);
    }
}

TEST(PartitionRow, SingleBlock) {
    auto d = connected_blocks(fixtures::small_matrix());
    auto p = partition_row({{0, 4}, {}}, d.col_block);
    ASSERT_EQ(p.per_block.size(), 1u);
    EXPECT_EQ(p.per_block.at(0), (std::vector<int>{0, 4}));
    EXPECT_TRUE(p.fresh.empty());
}

TEST(PartitionRow, FreshColumn) {
    auto d = connected_blocks(fixtures::small_matrix());
    auto p = partition_row({{0, 5}, {5}}, d.col_block);
    EXPECT_EQ(p.per_block.at(0), (std::vector<int>{0}));
    EXPECT_EQ(p.fresh, (std::vector<int>{5}));
}

TEST(PartitionRow, ZeroRow) {
    auto d = connected_blocks(fixtures::small_matrix());
    auto p = partition_row({{}, {}}, d.col_block);
    EXPECT_TRUE(p.per_block.empty());
    EXPECT_TRUE(p.fresh.empty());
}
