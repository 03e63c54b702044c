#include "opal/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace opal {

SparseVec sparse_from_dense(const std::vector<int>& v, int p) {
    SparseVec out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        int c = ((v[i] % p) + p) % p;
        if (c) out.emplace_back(static_cast<i64>(i), c);
    }
    return out;
}

SparseVec sparse_axpy(const SparseVec& x, const SparseVec& y, int c, int p) {
    c = ((c % p) + p) % p;
    SparseVec out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            int v = static_cast<int>(i64(y[j].second) * c % p);
            if (v) out.emplace_back(y[j].first, v);
            ++j;
        } else {
            int v = static_cast<int>((x[i].second + i64(y[j].second) * c) % p);
            if (v) out.emplace_back(x[i].first, v);
            ++i, ++j;
        }
    }
    return out;
}

SparseVec sparse_scale(const SparseVec& x, int c, int p) {
    c = ((c % p) + p) % p;
    SparseVec out;
    if (!c) return out;
    out.reserve(x.size());
    for (auto& [i, v] : x) out.emplace_back(i, static_cast<int>(i64(v) * c % p));
    return out;
}

FpSolver::FpSolver(int p, i64 ncols, i64 dense_threshold) : p_(p), ncols_(ncols) {
    if (!is_prime(p)) throw std::invalid_argument("FpSolver: p must be prime");
    if (ncols < 0) throw std::invalid_argument("FpSolver: negative dimension");
    dense_ = ncols <= dense_threshold;
}

SparseVec FpSolver::reduce(SparseVec v, std::vector<int>* used) const {
    if (used) used->assign(nrows_added_, 0);
    if (dense_) {
        std::vector<int> scratch(ncols_, 0);
        for (auto& [i, c] : v) scratch[i] = c;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            int c = scratch[pivots_[r]];
            if (!c) continue;
            for (auto& [i, rv] : rows_[r])
                scratch[i] = static_cast<int>(((scratch[i] - i64(c) * rv) % p_ + p_) % p_);
            if (used)
                for (std::size_t k = 0; k < history_[r].size(); ++k)
                    (*used)[k] = static_cast<int>(((*used)[k] + i64(c) * history_[r][k]) % p_);
        }
        return sparse_from_dense(scratch, p_);
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        auto it = std::lower_bound(v.begin(), v.end(), std::pair<i64, int>{pivots_[r], 0},
                                   [](auto& a, auto& b) { return a.first < b.first; });
        if (it == v.end() || it->first != pivots_[r]) continue;
        int c = it->second;
        v = sparse_axpy(v, rows_[r], p_ - c, p_);
        if (used)
            for (std::size_t k = 0; k < history_[r].size(); ++k)
                (*used)[k] = static_cast<int>(((*used)[k] + i64(c) * history_[r][k]) % p_);
    }
    return v;
}

bool FpSolver::add_row(const SparseVec& row) {
    std::vector<int> used;
    SparseVec red = reduce(row, &used);
    std::size_t id = nrows_added_++;
    if (red.empty()) return false;
    int lead = red.front().second;
    int il = inv_mod(lead, p_);
    // new echelon row = (orig_new - sum used_k orig_k) / lead
    std::vector<int> h(id + 1, 0);
    for (std::size_t k = 0; k < used.size(); ++k)
        h[k] = static_cast<int>((i64(p_ - used[k]) * il) % p_);
    h[id] = il;
    rows_.push_back(sparse_scale(red, il, p_));
    pivots_.push_back(red.front().first);
    history_.push_back(std::move(h));
    return true;
}

bool FpSolver::add_row_dense(const std::vector<int>& row) {
    return add_row(sparse_from_dense(row, p_));
}

bool FpSolver::in_span(const SparseVec& v, std::vector<std::pair<std::size_t, int>>* combo) const {
    std::vector<int> used;
    SparseVec red = reduce(v, &used);
    if (!red.empty()) return false;
    if (combo) {
        combo->clear();
        for (std::size_t k = 0; k < used.size(); ++k)
            if (used[k]) combo->emplace_back(k, used[k]);
    }
    return true;
}

}  // namespace opal
