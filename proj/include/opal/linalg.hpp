#pragma once
// Incremental Gaussian elimination over F_p with recorded combinations, so
// span-membership queries can return an explicit witness in terms of the
// original rows.  Row storage is dense below a column threshold and sparse
// (sorted index/value pairs) above it.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "opal/fp.hpp"

namespace opal {

using SparseVec = std::vector<std::pair<i64, int>>;  // sorted by index, values in 1..p-1

SparseVec sparse_from_dense(const std::vector<int>& v, int p);
SparseVec sparse_axpy(const SparseVec& x, const SparseVec& y, int c, int p);  // x + c y
SparseVec sparse_scale(const SparseVec& x, int c, int p);

class FpSolver {
public:
    // ncols: ambient dimension of the row vectors; dense storage is used when
    // ncols <= dense_threshold.
    FpSolver(int p, i64 ncols, i64 dense_threshold = 2048);

    // Adds a row to the span; returns true when the row enlarged it.
    bool add_row(const SparseVec& row);
    bool add_row_dense(const std::vector<int>& row);

    i64 rank() const { return static_cast<i64>(pivots_.size()); }

    // Is v in the span of the added rows?  On success *combo (when non-null)
    // receives coefficients c_j over the original row indices with
    // sum_j c_j row_j = v.
    bool in_span(const SparseVec& v, std::vector<std::pair<std::size_t, int>>* combo = nullptr) const;

    bool dense_mode() const { return dense_; }

private:
    // Reduces v against the stored echelon rows; accumulates the combination
    // of original rows subtracted.  Returns the remainder.
    SparseVec reduce(SparseVec v, std::vector<int>* used) const;

    int p_;
    i64 ncols_;
    bool dense_;
    std::size_t nrows_added_ = 0;
    std::vector<SparseVec> rows_;             // echelon rows, unit leading coefficient
    std::vector<i64> pivots_;                 // pivot column of rows_[i]
    std::vector<std::vector<int>> history_;   // rows_[i] as combination of original rows
};

}  // namespace opal
