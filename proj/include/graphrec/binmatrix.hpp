#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphrec {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

enum class MatrixFormat { coordinate, dense, row_list };

inline MatrixFormat format_from_string(const std::string& s) {
    if (s == "coordinate" || s == "coo" || s == "mtx") return MatrixFormat::coordinate;
    if (s == "dense") return MatrixFormat::dense;
    if (s == "row-list" || s == "rowlist" || s == "rows") return MatrixFormat::row_list;
    throw std::invalid_argument("unknown matrix format '" + s + "'");
}

// Row-major 0/1 matrix; each row holds the sorted column indices of its ones.
class SparseBinaryMatrix {
public:
    SparseBinaryMatrix() = default;

    SparseBinaryMatrix(int num_rows, int num_cols, std::vector<std::vector<int>> rows)
        : num_rows_(num_rows), num_cols_(num_cols), rows_(std::move(rows)) {
        if (static_cast<int>(rows_.size()) != num_rows_) throw std::invalid_argument("row count mismatch");
        for (auto& r : rows_) {
            std::sort(r.begin(), r.end());
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (r[i] < 0 || r[i] >= num_cols_) throw std::invalid_argument("column index out of range");
                if (i > 0 && r[i] == r[i - 1]) throw std::invalid_argument("duplicate entry");
            }
        }
        default_labels();
    }

    static SparseBinaryMatrix from_dense(const std::vector<std::vector<int>>& d) {
        int m = static_cast<int>(d.size());
        int n = m ? static_cast<int>(d[0].size()) : 0;
        std::vector<std::vector<int>> rows(m);
        for (int i = 0; i < m; ++i) {
            if (static_cast<int>(d[i].size()) != n) throw std::invalid_argument("ragged dense matrix");
            for (int j = 0; j < n; ++j)
                if (d[i][j]) rows[i].push_back(j);
        }
        return SparseBinaryMatrix(m, n, std::move(rows));
    }

    // Rows written as strings of '0'/'1'.
    static SparseBinaryMatrix from_strings(const std::vector<std::string>& d) {
        std::vector<std::vector<int>> dense;
        for (const auto& s : d) {
            std::vector<int> r;
            for (char c : s)
                if (c == '0' || c == '1') r.push_back(c - '0');
            dense.push_back(std::move(r));
        }
        return from_dense(dense);
    }

    int num_rows() const { return num_rows_; }
    int num_cols() const { return num_cols_; }
    const std::vector<int>& row(int i) const { return rows_[i]; }
    const std::vector<std::vector<int>>& rows() const { return rows_; }

    std::size_t nonzeros() const {
        std::size_t k = 0;
        for (const auto& r : rows_) k += r.size();
        return k;
    }

    bool at(int i, int j) const { return std::binary_search(rows_[i].begin(), rows_[i].end(), j); }

    const std::vector<std::string>& row_labels() const { return row_labels_; }
    const std::vector<std::string>& col_labels() const { return col_labels_; }

    void set_labels(std::vector<std::string> rl, std::vector<std::string> cl) {
        if (static_cast<int>(rl.size()) != num_rows_ || static_cast<int>(cl.size()) != num_cols_)
            throw std::invalid_argument("label count mismatch");
        row_labels_ = std::move(rl);
        col_labels_ = std::move(cl);
    }

    std::vector<std::vector<int>> columns() const {
        std::vector<std::vector<int>> c(num_cols_);
        for (int i = 0; i < num_rows_; ++i)
            for (int j : rows_[i]) c[j].push_back(i);
        return c;
    }

    SparseBinaryMatrix transpose() const {
        SparseBinaryMatrix t(num_cols_, num_rows_, columns());
        t.row_labels_ = col_labels_;
        t.col_labels_ = row_labels_;
        return t;
    }

    SparseBinaryMatrix select_rows(const std::vector<int>& which) const {
        std::vector<std::vector<int>> r;
        std::vector<std::string> rl;
        for (int i : which) {
            r.push_back(rows_[i]);
            rl.push_back(row_labels_[i]);
        }
        SparseBinaryMatrix s(static_cast<int>(which.size()), num_cols_, std::move(r));
        s.row_labels_ = std::move(rl);
        s.col_labels_ = col_labels_;
        return s;
    }

    // Row i of the result is row perm[i] of this matrix.
    SparseBinaryMatrix permute_rows(const std::vector<int>& perm) const { return select_rows(perm); }

    // Column j of this matrix becomes column perm[j] of the result.
    SparseBinaryMatrix permute_cols(const std::vector<int>& perm) const {
        std::vector<std::vector<int>> r(num_rows_);
        for (int i = 0; i < num_rows_; ++i)
            for (int j : rows_[i]) r[i].push_back(perm[j]);
        SparseBinaryMatrix s(num_rows_, num_cols_, std::move(r));
        std::vector<std::string> cl(num_cols_);
        for (int j = 0; j < num_cols_; ++j) cl[perm[j]] = col_labels_[j];
        s.row_labels_ = row_labels_;
        s.col_labels_ = std::move(cl);
        return s;
    }

    SparseBinaryMatrix with_row(std::vector<int> support) const {
        auto r = rows_;
        r.push_back(std::move(support));
        SparseBinaryMatrix s(num_rows_ + 1, num_cols_, std::move(r));
        s.col_labels_ = col_labels_;
        s.row_labels_ = row_labels_;
        s.row_labels_.push_back("r" + std::to_string(num_rows_ + 1));
        return s;
    }

    // Compares shape and nonzero pattern; labels are ignored.
    bool same_pattern(const SparseBinaryMatrix& o) const {
        return num_rows_ == o.num_rows_ && num_cols_ == o.num_cols_ && rows_ == o.rows_;
    }

    bool operator==(const SparseBinaryMatrix& o) const { return same_pattern(o); }

    std::string to_dense_string() const {
        std::string s;
        for (int i = 0; i < num_rows_; ++i) {
            for (int j = 0; j < num_cols_; ++j) {
                if (j) s += ' ';
                s += at(i, j) ? '1' : '0';
            }
            s += '\n';
        }
        return s;
    }

private:
    void default_labels() {
        row_labels_.resize(num_rows_);
        col_labels_.resize(num_cols_);
        for (int i = 0; i < num_rows_; ++i) row_labels_[i] = "r" + std::to_string(i + 1);
        for (int j = 0; j < num_cols_; ++j) col_labels_[j] = "c" + std::to_string(j + 1);
    }

    int num_rows_ = 0;
    int num_cols_ = 0;
    std::vector<std::vector<int>> rows_;
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
};

namespace detail {

inline bool blank_or_comment(const std::string& line) {
    for (char c : line) {
        if (c == '%' || c == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

inline long parse_int(const std::string& tok, int line) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(line, "expected integer, got '" + tok + "'");
    }
    if (pos != tok.size()) throw ParseError(line, "expected integer, got '" + tok + "'");
    return v;
}

inline std::vector<std::string> tokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> t;
    std::string s;
    while (is >> s) t.push_back(s);
    return t;
}

inline SparseBinaryMatrix parse_coordinate(std::istream& in) {
    std::string line;
    int ln = 0;
    bool have_header = false;
    long m = 0, n = 0, nnz = 0, seen = 0;
    std::vector<std::vector<int>> rows;
    while (std::getline(in, line)) {
        ++ln;
        if (blank_or_comment(line)) continue;
        auto t = tokens(line);
        if (!have_header) {
            if (t.size() != 3) throw ParseError(ln, "header must be 'rows cols nonzeros'");
            m = parse_int(t[0], ln);
            n = parse_int(t[1], ln);
            nnz = parse_int(t[2], ln);
            if (m < 0 || n < 0 || nnz < 0) throw ParseError(ln, "negative size in header");
            rows.assign(m, {});
            have_header = true;
            continue;
        }
        if (t.size() != 2 && t.size() != 3) throw ParseError(ln, "entry must be 'row col [value]'");
        long r = parse_int(t[0], ln), c = parse_int(t[1], ln);
        if (r < 1 || r > m || c < 1 || c > n) throw ParseError(ln, "index out of range");
        ++seen;
        if (seen > nnz) throw ParseError(ln, "more entries than declared");
        if (t.size() == 3 && parse_int(t[2], ln) == 0) continue;
        auto& row = rows[r - 1];
        if (std::find(row.begin(), row.end(), static_cast<int>(c - 1)) != row.end())
            throw ParseError(ln, "duplicate entry (" + t[0] + ", " + t[1] + ")");
        row.push_back(static_cast<int>(c - 1));
    }
    if (!have_header) throw ParseError(ln, "missing header");
    if (seen != nnz) throw ParseError(ln, "expected " + std::to_string(nnz) + " entries, found " + std::to_string(seen));
    return SparseBinaryMatrix(static_cast<int>(m), static_cast<int>(n), std::move(rows));
}

inline SparseBinaryMatrix parse_dense(std::istream& in) {
    std::string line;
    int ln = 0;
    std::vector<std::vector<int>> dense;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++ln;
        if (blank_or_comment(line)) continue;
        std::vector<int> r;
        for (const auto& tok : tokens(line))
            for (char c : tok) {
                if (c != '0' && c != '1') throw ParseError(ln, std::string("unexpected character '") + c + "'");
                r.push_back(c - '0');
            }
        if (!dense.empty() && r.size() != width) throw ParseError(ln, "row length differs from first row");
        width = r.size();
        dense.push_back(std::move(r));
    }
    return SparseBinaryMatrix::from_dense(dense);
}

// One line per row holding 1-based column indices; an empty line is a zero
// row. A '#cols N' directive fixes the column count, otherwise the largest
// index is used.
inline SparseBinaryMatrix parse_row_list(std::istream& in) {
    std::string line;
    int ln = 0;
    long n = -1, maxc = 0;
    std::vector<std::vector<int>> rows;
    std::vector<std::string> pending;
    while (std::getline(in, line)) {
        ++ln;
        auto t = tokens(line);
        if (!t.empty() && (t[0] == "#cols" || t[0] == "%cols")) {
            if (t.size() != 2) throw ParseError(ln, "malformed column directive");
            n = parse_int(t[1], ln);
            if (n < 0) throw ParseError(ln, "negative column count");
            continue;
        }
        if (!t.empty() && (t[0][0] == '#' || t[0][0] == '%')) continue;
        std::vector<int> r;
        for (const auto& tok : t) {
            long c = parse_int(tok, ln);
            if (c < 1) throw ParseError(ln, "index out of range");
            if (!r.empty() && c - 1 <= r.back())
                throw ParseError(ln, c - 1 == r.back() ? "duplicate entry" : "indices must be increasing");
            r.push_back(static_cast<int>(c - 1));
            maxc = std::max(maxc, c);
        }
        rows.push_back(std::move(r));
        if (n >= 0 && maxc > n) throw ParseError(ln, "index out of range");
    }
    if (n < 0) n = maxc;
    int m = static_cast<int>(rows.size());
    return SparseBinaryMatrix(m, static_cast<int>(n), std::move(rows));
}

} // namespace detail

inline SparseBinaryMatrix parse_matrix(std::istream& in, MatrixFormat f) {
    switch (f) {
    case MatrixFormat::coordinate: return detail::parse_coordinate(in);
    case MatrixFormat::dense: return detail::parse_dense(in);
    case MatrixFormat::row_list: return detail::parse_row_list(in);
    }
    throw std::logic_error("bad format");
}

inline SparseBinaryMatrix parse_matrix(const std::string& text, MatrixFormat f) {
    std::istringstream is(text);
    return parse_matrix(is, f);
}

inline std::string serialize_matrix(const SparseBinaryMatrix& M, MatrixFormat f) {
    std::ostringstream os;
    switch (f) {
    case MatrixFormat::coordinate:
        os << M.num_rows() << ' ' << M.num_cols() << ' ' << M.nonzeros() << '\n';
        for (int i = 0; i < M.num_rows(); ++i)
            for (int j : M.row(i)) os << i + 1 << ' ' << j + 1 << '\n';
        break;
    case MatrixFormat::dense: os << M.to_dense_string(); break;
    case MatrixFormat::row_list:
        os << "#cols " << M.num_cols() << '\n';
        for (int i = 0; i < M.num_rows(); ++i) {
            for (std::size_t k = 0; k < M.row(i).size(); ++k) os << (k ? " " : "") << M.row(i)[k] + 1;
            os << '\n';
        }
        break;
    }
    return os.str();
}

struct Block {
    std::vector<int> row_indices;
    std::vector<int> col_indices;
};

struct BlockDecomposition {
    std::vector<Block> blocks;     // connected components with at least one nonzero
    std::vector<int> zero_rows;
    std::vector<int> zero_cols;
    std::vector<int> row_block;    // block index per row, -1 for zero rows
    std::vector<int> col_block;    // block index per column, -1 for zero columns
};

// Connected components of the bipartite row/column incidence graph.
inline BlockDecomposition connected_blocks(const SparseBinaryMatrix& M) {
    BlockDecomposition d;
    const int m = M.num_rows(), n = M.num_cols();
    d.row_block.assign(m, -1);
    d.col_block.assign(n, -1);
    auto cols = M.columns();
    std::vector<int> stack;
    for (int s = 0; s < m; ++s) {
        if (d.row_block[s] != -1) continue;
        if (M.row(s).empty()) {
            d.zero_rows.push_back(s);
            continue;
        }
        int b = static_cast<int>(d.blocks.size());
        d.blocks.emplace_back();
        d.row_block[s] = b;
        stack.assign(1, s);   // rows as r, columns as m + c
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            if (x < m) {
                d.blocks[b].row_indices.push_back(x);
                for (int c : M.row(x))
                    if (d.col_block[c] == -1) {
                        d.col_block[c] = b;
                        stack.push_back(m + c);
                    }
            } else {
                int c = x - m;
                d.blocks[b].col_indices.push_back(c);
                for (int r : cols[c])
                    if (d.row_block[r] == -1) {
                        d.row_block[r] = b;
                        stack.push_back(r);
                    }
            }
        }
        std::sort(d.blocks[b].row_indices.begin(), d.blocks[b].row_indices.end());
        std::sort(d.blocks[b].col_indices.begin(), d.blocks[b].col_indices.end());
    }
    for (int c = 0; c < n; ++c)
        if (d.col_block[c] == -1) d.zero_cols.push_back(c);
    return d;
}

// A row to be appended: support over the augmented column set, some of which
// may be brand new.
struct RowVector {
    std::vector<int> support;
    std::vector<int> new_columns;
};

struct RowPartition {
    std::map<int, std::vector<int>> per_block;   // block index -> sub-support
    std::vector<int> fresh;                      // columns not yet in any block
};

// `col_block[c]` is the block of column c, or -1 when c belongs to no block.
inline RowPartition partition_row(const RowVector& b, const std::vector<int>& col_block) {
    RowPartition p;
    for (int c : b.support) {
        int blk = c < static_cast<int>(col_block.size()) ? col_block[c] : -1;
        if (blk < 0)
            p.fresh.push_back(c);
        else
            p.per_block[blk].push_back(c);
    }
    return p;
}

inline SparseBinaryMatrix block_submatrix(const SparseBinaryMatrix& M, const Block& b) {
    std::vector<int> colpos(M.num_cols(), -1);
    for (std::size_t k = 0; k < b.col_indices.size(); ++k) colpos[b.col_indices[k]] = static_cast<int>(k);
    std::vector<std::vector<int>> rows;
    for (int r : b.row_indices) {
        std::vector<int> row;
        for (int c : M.row(r)) row.push_back(colpos[c]);
        rows.push_back(std::move(row));
    }
    return SparseBinaryMatrix(static_cast<int>(b.row_indices.size()), static_cast<int>(b.col_indices.size()),
                              std::move(rows));
}

} // namespace graphrec
