#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "spdp/field.hpp"

namespace spdp {

// Dense matrix over a prime field. Row-major storage.
class ModMatrix {
public:
    ModMatrix(FieldCtx ctx, size_t rows, size_t cols)
        : ctx_(ctx), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static ModMatrix identity(FieldCtx ctx, size_t n) {
        ModMatrix m(ctx, n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    const FieldCtx& ctx() const { return ctx_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    uint64_t& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
    uint64_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

    // Exact rank by Gaussian elimination. Deterministic pivoting: columns are
    // scanned left to right, the first row with a nonzero entry is the pivot.
    size_t rank() const {
        ModMatrix work = *this;
        size_t rank = 0;
        for (size_t col = 0; col < cols_ && rank < rows_; ++col) {
            size_t piv = rank;
            while (piv < rows_ && work.at(piv, col) == 0) ++piv;
            if (piv == rows_) continue;
            work.swap_rows(piv, rank);
            uint64_t inv = ctx_.inv(work.at(rank, col));
            for (size_t c = col; c < cols_; ++c)
                work.at(rank, c) = ctx_.mul(work.at(rank, c), inv);
            for (size_t r = 0; r < rows_; ++r) {
                if (r == rank) continue;
                uint64_t f = work.at(r, col);
                if (f == 0) continue;
                for (size_t c = col; c < cols_; ++c)
                    work.at(r, c) = ctx_.sub(work.at(r, c), ctx_.mul(f, work.at(rank, c)));
            }
            ++rank;
        }
        return rank;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (size_t r = 0; r < rows_; ++r)
            for (size_t c = 0; c < cols_; ++c)
                if (at(r, c) != (r == c ? 1u : 0u)) return false;
        return true;
    }

    ModMatrix submatrix(const std::vector<size_t>& row_idx, const std::vector<size_t>& col_idx) const {
        for (size_t r : row_idx)
            if (r >= rows_) throw std::domain_error("submatrix: row index out of range");
        for (size_t c : col_idx)
            if (c >= cols_) throw std::domain_error("submatrix: column index out of range");
        ModMatrix out(ctx_, row_idx.size(), col_idx.size());
        for (size_t i = 0; i < row_idx.size(); ++i)
            for (size_t j = 0; j < col_idx.size(); ++j)
                out.at(i, j) = at(row_idx[i], col_idx[j]);
        return out;
    }

    ModMatrix multiply(const ModMatrix& o) const {
        if (cols_ != o.rows_) throw std::logic_error("multiply: shape mismatch");
        ModMatrix out(ctx_, rows_, o.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                uint64_t v = at(i, k);
                if (v == 0) continue;
                for (size_t j = 0; j < o.cols_; ++j)
                    out.at(i, j) = ctx_.add(out.at(i, j), ctx_.mul(v, o.at(k, j)));
            }
        return out;
    }

    ModMatrix transpose() const {
        ModMatrix out(ctx_, cols_, rows_);
        for (size_t r = 0; r < rows_; ++r)
            for (size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
        return out;
    }

    std::vector<uint64_t> apply(const std::vector<uint64_t>& v) const {
        if (v.size() != cols_) throw std::logic_error("apply: length mismatch");
        std::vector<uint64_t> out(rows_, 0);
        for (size_t r = 0; r < rows_; ++r) {
            uint64_t acc = 0;
            for (size_t c = 0; c < cols_; ++c)
                if (v[c] != 0) acc = ctx_.add(acc, ctx_.mul(at(r, c), v[c]));
            out[r] = acc;
        }
        return out;
    }

    bool is_zero() const {
        for (uint64_t v : a_)
            if (v != 0) return false;
        return true;
    }

    void swap_rows(size_t a, size_t b) {
        if (a == b) return;
        for (size_t c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
    }

private:
    FieldCtx ctx_;
    size_t rows_, cols_;
    std::vector<uint64_t> a_;
};

// Incremental row-echelon accumulator: feed rows one at a time, query the
// rank at any point. Lets large row families be ranked without materializing
// the whole matrix.
class RowReducer {
public:
    RowReducer(FieldCtx ctx, size_t cols) : ctx_(ctx), cols_(cols) {}

    // Returns true if the row enlarged the span.
    bool insert(std::vector<uint64_t> row) {
        if (row.size() != cols_) throw std::logic_error("RowReducer: length mismatch");
        for (size_t k = 0; k < basis_.size(); ++k) {
            uint64_t f = row[pivot_col_[k]];
            if (f == 0) continue;
            const auto& b = basis_[k];
            for (size_t c = pivot_col_[k]; c < cols_; ++c)
                if (b[c] != 0) row[c] = ctx_.sub(row[c], ctx_.mul(f, b[c]));
        }
        size_t pc = 0;
        while (pc < cols_ && row[pc] == 0) ++pc;
        if (pc == cols_) return false;
        uint64_t inv = ctx_.inv(row[pc]);
        for (size_t c = pc; c < cols_; ++c) row[c] = ctx_.mul(row[c], inv);
        basis_.push_back(std::move(row));
        pivot_col_.push_back(pc);
        return true;
    }

    size_t rank() const { return basis_.size(); }
    bool saturated() const { return basis_.size() == cols_; }

private:
    FieldCtx ctx_;
    size_t cols_;
    std::vector<std::vector<uint64_t>> basis_;
    std::vector<size_t> pivot_col_;
};

}  // namespace spdp
