#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "graphkh/errors.hpp"

namespace graphkh {

/// Dense GF(2) vector, packed 64 entries per word.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}
    BitVec(std::initializer_list<int> entries) : BitVec(entries.size()) {
        std::size_t i = 0;
        for (int e : entries) set(i++, e != 0);
    }

    std::size_t size() const { return size_; }

    bool get(std::size_t i) const {
        check_index(i);
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i, bool value) {
        check_index(i);
        std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    void operator^=(const BitVec& other) {
        if (other.size_ != size_) throw ShapeError("BitVec xor: length mismatch");
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    }

    bool is_zero() const {
        return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
    }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

    bool operator==(const BitVec& other) const {
        return size_ == other.size_ && words_ == other.words_;
    }

  private:
    void check_index(std::size_t i) const {
        if (i >= size_) throw ShapeError("BitVec index out of range");
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Dense GF(2) matrix with word-packed rows. Row operations are word-parallel.
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), bits_(rows * wpr_, 0) {}

    /// Convenience constructor for literal matrices in tests and examples.
    static BitMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows) {
        std::size_t r = rows.size();
        std::size_t c = r ? rows.begin()->size() : 0;
        BitMatrix m(r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw ShapeError("from_rows: ragged rows");
            std::size_t j = 0;
            for (int e : row) m.set(i, j++, e != 0);
            ++i;
        }
        return m;
    }

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t i, std::size_t j) const {
        check(i, j);
        return (bits_[i * wpr_ + (j >> 6)] >> (j & 63)) & 1u;
    }

    void set(std::size_t i, std::size_t j, bool value) {
        check(i, j);
        std::uint64_t mask = std::uint64_t{1} << (j & 63);
        if (value)
            bits_[i * wpr_ + (j >> 6)] |= mask;
        else
            bits_[i * wpr_ + (j >> 6)] &= ~mask;
    }

    void flip(std::size_t i, std::size_t j) { set(i, j, !get(i, j)); }

    /// row(dst) ^= row(src)
    void xor_row(std::size_t dst, std::size_t src) {
        if (dst >= rows_ || src >= rows_) throw ShapeError("xor_row: row index out of range");
        for (std::size_t w = 0; w < wpr_; ++w) bits_[dst * wpr_ + w] ^= bits_[src * wpr_ + w];
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t w = 0; w < wpr_; ++w)
            std::swap(bits_[a * wpr_ + w], bits_[b * wpr_ + w]);
    }

    bool row_is_zero(std::size_t i) const {
        for (std::size_t w = 0; w < wpr_; ++w)
            if (bits_[i * wpr_ + w]) return false;
        return true;
    }

    BitVec row(std::size_t i) const {
        BitVec v(cols_);
        for (std::size_t j = 0; j < cols_; ++j)
            if (get(i, j)) v.set(j, true);
        return v;
    }

    void assign_row(std::size_t i, const BitVec& v) {
        if (v.size() != cols_) throw ShapeError("assign_row: length mismatch");
        for (std::size_t j = 0; j < cols_; ++j) set(i, j, v.get(j));
    }

    BitMatrix with_row_appended(const BitVec& v) const {
        if (v.size() != cols_) throw ShapeError("with_row_appended: length mismatch");
        BitMatrix out(rows_ + 1, cols_);
        out.bits_ = bits_;
        out.bits_.resize((rows_ + 1) * wpr_, 0);
        out.assign_row(rows_, v);
        return out;
    }

    BitMatrix transposed() const {
        BitMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (get(i, j)) t.set(j, i, true);
        return t;
    }

    bool is_zero() const {
        return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (get(i, j) != get(j, i)) return false;
        return true;
    }

    bool operator==(const BitMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && bits_ == other.bits_;
    }

    /// Rows rendered as '0'/'1' strings, for debugging and JSON dumps.
    std::string row_string(std::size_t i) const {
        std::string s(cols_, '0');
        for (std::size_t j = 0; j < cols_; ++j)
            if (get(i, j)) s[j] = '1';
        return s;
    }

  private:
    void check(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw ShapeError("BitMatrix index out of range");
    }

    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Reduced row echelon form: nonzero rows sorted by pivot column, each pivot
/// column cleared in all other rows, zero rows dropped.
struct Rref {
    BitMatrix matrix;                    // rank many nonzero rows
    std::vector<std::size_t> pivot_cols; // strictly increasing

    std::size_t rank() const { return pivot_cols.size(); }
};

/// Canonical RREF with leftmost-column, topmost-row pivot selection.
inline Rref rref(const BitMatrix& m) {
    BitMatrix work = m;
    std::vector<std::size_t> pivots;
    std::size_t next_row = 0;
    for (std::size_t col = 0; col < work.cols() && next_row < work.rows(); ++col) {
        std::size_t pr = next_row;
        while (pr < work.rows() && !work.get(pr, col)) ++pr;
        if (pr == work.rows()) continue;
        work.swap_rows(next_row, pr);
        for (std::size_t r = 0; r < work.rows(); ++r)
            if (r != next_row && work.get(r, col)) work.xor_row(r, next_row);
        pivots.push_back(col);
        ++next_row;
    }
    Rref out;
    out.matrix = BitMatrix(pivots.size(), m.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r)
        out.matrix.assign_row(r, work.row(r));
    out.pivot_cols = std::move(pivots);
    return out;
}

inline std::size_t rank(const BitMatrix& m) { return rref(m).rank(); }

/// corank = cols - rank; defined for square matrices only.
inline std::size_t corank(const BitMatrix& m) {
    if (m.rows() != m.cols()) throw ShapeError("corank: matrix is not square");
    return m.cols() - rank(m);
}

/// Membership of v in the row space of m.
inline bool in_row_space(const BitMatrix& m, const BitVec& v) {
    if (v.size() != m.cols()) throw ShapeError("in_row_space: length mismatch");
    Rref r = rref(m);
    BitVec w = v;
    for (std::size_t p = 0; p < r.pivot_cols.size(); ++p)
        if (w.get(r.pivot_cols[p])) w ^= r.matrix.row(p);
    return w.is_zero();
}

/// Principal submatrix picked out by an index set (duplicates ignored,
/// rows/columns appear in ascending index order).
inline BitMatrix principal_submatrix(const BitMatrix& a, std::vector<std::size_t> indices) {
    if (a.rows() != a.cols()) throw ShapeError("principal_submatrix: matrix is not square");
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    for (std::size_t i : indices)
        if (i >= a.rows()) throw ShapeError("principal_submatrix: index out of range");
    BitMatrix out(indices.size(), indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i)
        for (std::size_t j = 0; j < indices.size(); ++j)
            if (a.get(indices[i], indices[j])) out.set(i, j, true);
    return out;
}

/// Principal submatrix picked out by a bitmask over indices 0..63.
inline BitMatrix principal_submatrix(const BitMatrix& a, std::uint64_t mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < 64; ++i)
        if ((mask >> i) & 1) idx.push_back(i);
    return principal_submatrix(a, std::move(idx));
}

/// Matrix product over GF(2); accumulates whole rows of b word-parallel.
inline BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("multiply: inner dimensions differ");
    BitMatrix c(a.rows(), b.cols());
    std::vector<BitVec> acc(a.rows(), BitVec(b.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (a.get(i, k)) acc[i] ^= b.row(k);
        c.assign_row(i, acc[i]);
    }
    return c;
}

}  // namespace graphkh
