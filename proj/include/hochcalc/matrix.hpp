#pragma once

#include "scalar.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hochcalc {

template <class K>
using Vec = std::map<int, K>;  // sparse vector, absent = zero

template <class K>
void vec_add(Vec<K>& into, int i, const K& c) {
    if (c.is_zero()) return;
    auto it = into.find(i);
    if (it == into.end()) {
        into.emplace(i, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) into.erase(it);
    }
}

template <class K>
void vec_axpy(Vec<K>& into, const K& c, const Vec<K>& v) {
    if (c.is_zero()) return;
    for (auto& [i, x] : v) vec_add(into, i, c * x);
}

/// Sparse matrix over an exact field, keyed by (row, col).
template <class K>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void add(std::size_t r, std::size_t c, const K& v) {
        if (v.is_zero()) return;
        if (r >= rows_ || c >= cols_) throw std::out_of_range("Matrix::add: index out of bounds");
        auto key = std::make_pair(r, c);
        auto it = entries_.find(key);
        if (it == entries_.end()) {
            entries_.emplace(key, v);
        } else {
            it->second += v;
            if (it->second.is_zero()) entries_.erase(it);
        }
    }

    K get(std::size_t r, std::size_t c) const {
        auto it = entries_.find({r, c});
        return it == entries_.end() ? K() : it->second;
    }

    const std::map<std::pair<std::size_t, std::size_t>, K>& entries() const { return entries_; }

    bool is_zero() const { return entries_.empty(); }

    /// Column c as a sparse vector.
    Vec<K> col(std::size_t c) const {
        Vec<K> out;
        for (auto& [rc, v] : entries_)
            if (rc.second == c) out.emplace(static_cast<int>(rc.first), v);
        return out;
    }

    Vec<K> apply(const Vec<K>& x) const {
        Vec<K> out;
        for (auto& [rc, v] : entries_) {
            auto it = x.find(static_cast<int>(rc.second));
            if (it != x.end()) vec_add(out, static_cast<int>(rc.first), v * it->second);
        }
        return out;
    }

    Matrix<K> compose(const Matrix<K>& inner) const {
        // this * inner
        if (cols_ != inner.rows_) throw std::invalid_argument("Matrix::compose: shape mismatch");
        Matrix<K> out(rows_, inner.cols_);
        for (auto& [rc, v] : inner.entries_) {
            for (auto& [rc2, w] : entries_) {
                if (rc2.second == rc.first) out.add(rc2.first, rc.second, w * v);
            }
        }
        return out;
    }

private:
    std::size_t rows_, cols_;
    std::map<std::pair<std::size_t, std::size_t>, K> entries_;
};

/// Row-echelon worker. Deterministic pivot order: vectors are inserted in
/// order, the pivot is the lowest coordinate in each vector. Sparse maps;
/// fine at the sizes this engine handles.
template <class K>
struct Echelon {
    std::vector<Vec<K>> rows;          // echelon rows, pivot entry normalized to 1
    std::vector<int> pivot_col;        // pivot coordinate per echelon row

    /// Reduce v against the current rows. Returns the remainder.
    Vec<K> reduce(Vec<K> v) const {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            auto it = v.find(pivot_col[r]);
            if (it == v.end()) continue;
            K factor = it->second;  // pivot entries are normalized to 1
            Vec<K> scaled;
            for (auto& [i, x] : rows[r]) scaled.emplace(i, x * factor);
            for (auto& [i, x] : scaled) {
                auto jt = v.find(i);
                if (jt == v.end()) v.emplace(i, -x);
                else {
                    jt->second -= x;
                    if (jt->second.is_zero()) v.erase(jt);
                }
            }
        }
        return v;
    }

    /// Insert v (reduced first); returns true if it added a new pivot.
    bool insert(Vec<K> v) {
        v = reduce(std::move(v));
        if (v.empty()) return false;
        int pc = v.begin()->first;
        K piv = v.begin()->second;
        K inv = piv.inv();
        for (auto& [i, x] : v) x *= inv;
        rows.push_back(std::move(v));
        pivot_col.push_back(pc);
        return true;
    }

    std::size_t rank() const { return rows.size(); }
};

template <class K>
std::size_t rank(const Matrix<K>& m) {
    Echelon<K> e;
    // eliminate columns as vectors; column space rank == row space rank
    for (std::size_t c = 0; c < m.cols(); ++c) e.insert(m.col(c));
    return e.rank();
}

/// Exact basis of the null space; dimension = cols - rank.
/// Columns are processed in index order and augmented with identity markers,
/// so the basis is deterministic for a fixed input.
template <class K>
std::vector<Vec<K>> kernel_basis(const Matrix<K>& m, const FieldCtx<K>& F) {
    std::size_t n = m.cols();
    Echelon<K> e;
    std::vector<Vec<K>> out;
    // augmented coordinates sit above 'shift' so pivots prefer matrix coords
    const int shift = static_cast<int>(m.rows());
    for (std::size_t c = 0; c < n; ++c) {
        Vec<K> aug = m.col(c);
        aug.emplace(shift + static_cast<int>(c), F.one());
        aug = e.reduce(std::move(aug));
        bool matrix_part_zero = aug.begin()->first >= shift;  // marker keeps aug nonempty
        if (matrix_part_zero) {
            Vec<K> comb;
            for (auto& [i, x] : aug) comb.emplace(i - shift, x);
            out.push_back(std::move(comb));
        } else {
            int pc = aug.begin()->first;
            K inv = aug.begin()->second.inv();
            for (auto& [i, x] : aug) x *= inv;
            e.rows.push_back(std::move(aug));
            e.pivot_col.push_back(pc);
        }
    }
    return out;
}

/// True iff v lies in the column span of m. v is indexed by rows of m.
template <class K>
bool is_in_image(const Vec<K>& v, const Matrix<K>& m) {
    for (auto& [i, x] : v)
        if (i < 0 || static_cast<std::size_t>(i) >= m.rows())
            throw std::invalid_argument("is_in_image: vector/matrix dimension mismatch");
    Echelon<K> e;
    for (std::size_t c = 0; c < m.cols(); ++c) e.insert(m.col(c));
    return e.reduce(v).empty();
}

/// A finite complex presented by explicit differential matrices.
/// dims[i] is the dimension in degree i; d[i] maps degree i+1 to degree i
/// (so d[i] has shape dims[i] x dims[i+1]).
template <class K>
struct ComplexPresentation {
    std::vector<std::size_t> dims;
    std::vector<Matrix<K>> d;

    void check_square_zero() const {
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            if (!d[i].compose(d[i + 1]).is_zero())
                throw std::runtime_error("complex: d∘d ≠ 0 between degrees " +
                                         std::to_string(i + 2) + " -> " + std::to_string(i));
        }
    }
};

/// dim H_n = dim ker d_{n} − rank d_{n+1}, where d_n: degree n -> n-1.
/// Only degrees with both incoming and outgoing differentials represented
/// are meaningful; callers assemble one degree beyond what they report.
template <class K>
std::vector<std::size_t> homology_dims(const ComplexPresentation<K>& c) {
    c.check_square_zero();
    std::size_t n = c.dims.size();
    std::vector<std::size_t> out(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t rank_out = (i == 0) ? 0 : rank(c.d[i - 1]);  // d_i: i -> i-1
        std::size_t ker = c.dims[i] - rank_out;
        std::size_t rank_in = (i < c.d.size()) ? rank(c.d[i]) : 0;  // d_{i+1}: i+1 -> i
        out[i] = ker - rank_in;
    }
    return out;
}

} // namespace hochcalc
