#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spokess/error.hpp"
#include "spokess/fp.hpp"

namespace spokess {

struct Entry {
    std::uint32_t idx;
    std::uint32_t val;
    bool operator==(const Entry&) const = default;
};

// Sorted by idx, no zero values.
using SparseVec = std::vector<Entry>;

struct Triplet {
    std::uint32_t row;
    std::uint32_t col;
    std::int64_t val;
};

// x + c*y
inline SparseVec axpy(const PrimeField& F, const SparseVec& x, std::uint32_t c, const SparseVec& y)
{
    SparseVec out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].idx < y[j].idx)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].idx < x[i].idx) {
            std::uint32_t v = F.mul(c, y[j].val);
            if (v)
                out.push_back({y[j].idx, v});
            ++j;
        } else {
            std::uint32_t v = F.add(x[i].val, F.mul(c, y[j].val));
            if (v)
                out.push_back({x[i].idx, v});
            ++i;
            ++j;
        }
    }
    return out;
}

inline SparseVec scaled(const PrimeField& F, const SparseVec& x, std::uint32_t c)
{
    SparseVec out;
    if (c == 0)
        return out;
    out.reserve(x.size());
    for (auto e : x)
        out.push_back({e.idx, F.mul(e.val, c)});
    return out;
}

// Sort, merge duplicates, drop zeros.
inline SparseVec canonical(const PrimeField& F, std::vector<std::pair<std::uint32_t, std::int64_t>> raw)
{
    std::sort(raw.begin(), raw.end(), [](auto& a, auto& b) { return a.first < b.first; });
    SparseVec out;
    for (std::size_t i = 0; i < raw.size();) {
        std::size_t j = i;
        std::int64_t acc = 0;
        while (j < raw.size() && raw[j].first == raw[i].first)
            acc = (acc + static_cast<std::int64_t>(F.reduce(raw[j++].second))) % F.p();
        if (acc)
            out.push_back({raw[i].first, static_cast<std::uint32_t>(acc)});
        i = j;
    }
    return out;
}

// Column-major sparse matrix over F_p.
class SparseMatFp {
public:
    SparseMatFp(const PrimeField& F, std::size_t rows, std::size_t cols)
        : F_(F), rows_(rows), cols_(cols, SparseVec{})
    {
    }

    static SparseMatFp from_triplets(const PrimeField& F, std::size_t rows, std::size_t cols,
                                     const std::vector<Triplet>& ts)
    {
        SparseMatFp M(F, rows, cols);
        std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> raw(cols);
        for (auto& t : ts) {
            if (t.row >= rows || t.col >= cols)
                throw consistency_error("triplet outside matrix bounds");
            raw[t.col].push_back({t.row, t.val});
        }
        for (std::size_t j = 0; j < cols; ++j)
            M.cols_[j] = canonical(F, std::move(raw[j]));
        return M;
    }

    static SparseMatFp identity(const PrimeField& F, std::size_t n)
    {
        SparseMatFp M(F, n, n);
        for (std::size_t j = 0; j < n; ++j)
            M.cols_[j].push_back({static_cast<std::uint32_t>(j), 1});
        return M;
    }

    static SparseMatFp from_dense(const PrimeField& F, const std::vector<std::vector<std::int64_t>>& A,
                                  std::size_t cols_if_empty = 0)
    {
        std::size_t r = A.size(), c = r ? A[0].size() : cols_if_empty;
        SparseMatFp M(F, r, c);
        for (std::size_t j = 0; j < c; ++j)
            for (std::size_t i = 0; i < r; ++i)
                if (auto v = F.reduce(A[i][j]))
                    M.cols_[j].push_back({static_cast<std::uint32_t>(i), v});
        return M;
    }

    std::vector<std::vector<std::uint32_t>> to_dense() const
    {
        std::vector<std::vector<std::uint32_t>> A(rows_, std::vector<std::uint32_t>(cols_.size(), 0));
        for (std::size_t j = 0; j < cols_.size(); ++j)
            for (auto e : cols_[j])
                A[e.idx][j] = e.val;
        return A;
    }

    const PrimeField& field() const { return F_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_.size(); }
    const SparseVec& column(std::size_t j) const { return cols_[j]; }

    void set_column(std::size_t j, SparseVec v)
    {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i].idx >= rows_ || v[i].val == 0 || v[i].val >= F_.p() || (i && v[i - 1].idx >= v[i].idx))
                throw consistency_error("column is not in canonical sparse form");
        }
        cols_[j] = std::move(v);
    }

    std::size_t nnz() const
    {
        std::size_t n = 0;
        for (auto& c : cols_)
            n += c.size();
        return n;
    }

    bool is_zero() const
    {
        return std::all_of(cols_.begin(), cols_.end(), [](auto& c) { return c.empty(); });
    }

    SparseVec apply(const SparseVec& x) const
    {
        SparseVec acc;
        for (auto e : x) {
            if (e.idx >= cols_.size())
                throw consistency_error("vector longer than matrix width");
            acc = axpy(F_, acc, e.val, cols_[e.idx]);
        }
        return acc;
    }

    // this * B
    SparseMatFp multiply(const SparseMatFp& B) const
    {
        if (B.rows() != cols())
            throw consistency_error("dimension mismatch in product");
        SparseMatFp C(F_, rows_, B.cols());
        for (std::size_t j = 0; j < B.cols(); ++j)
            C.cols_[j] = apply(B.column(j));
        return C;
    }

    SparseMatFp transpose() const
    {
        SparseMatFp T(F_, cols_.size(), rows_);
        for (std::size_t j = 0; j < cols_.size(); ++j)
            for (auto e : cols_[j])
                T.cols_[e.idx].push_back({static_cast<std::uint32_t>(j), e.val});
        return T;
    }

    bool operator==(const SparseMatFp& o) const
    {
        return F_.p() == o.F_.p() && rows_ == o.rows_ && cols_ == o.cols_;
    }

private:
    PrimeField F_;
    std::size_t rows_;
    std::vector<SparseVec> cols_;
};

// Semi-echelon basis of a subspace of F_p^dim. Each stored row is normalised to have
// leading (lowest index) coefficient 1, and pivots are distinct.
class EchelonBasis {
public:
    EchelonBasis(const PrimeField& F, std::size_t dim) : F_(F), pivot_of_(dim, -1) {}

    std::size_t rank() const { return rows_.size(); }
    std::size_t dim() const { return pivot_of_.size(); }

    // Full reduction against every pivot.
    SparseVec reduce(SparseVec v) const
    {
        std::size_t pos = 0;
        while (pos < v.size()) {
            auto e = v[pos];
            int r = pivot_of_[e.idx];
            if (r < 0) {
                ++pos;
                continue;
            }
            v = axpy(F_, v, F_.neg(e.val), rows_[r]);
        }
        return v;
    }

    // Returns true if v was independent of the span. Only the leading term is reduced.
    bool insert(SparseVec v)
    {
        while (!v.empty()) {
            auto e = v.front();
            if (e.idx >= pivot_of_.size())
                throw consistency_error("vector index outside ambient dimension");
            int r = pivot_of_[e.idx];
            if (r < 0) {
                v = scaled(F_, v, F_.inv(e.val));
                pivot_of_[e.idx] = static_cast<int>(rows_.size());
                rows_.push_back(std::move(v));
                return true;
            }
            v = axpy(F_, v, F_.neg(e.val), rows_[r]);
        }
        return false;
    }

    bool contains(const SparseVec& v) const { return reduce(v).empty(); }
    const std::vector<SparseVec>& rows() const { return rows_; }

    // Reduced echelon form, sorted by pivot.
    std::vector<SparseVec> rref() const
    {
        std::vector<SparseVec> out;
        std::vector<std::uint32_t> pivots;
        for (std::size_t i = 0; i < pivot_of_.size(); ++i)
            if (pivot_of_[i] >= 0)
                pivots.push_back(static_cast<std::uint32_t>(i));
        EchelonBasis full(F_, dim());
        // back substitution from the largest pivot down
        std::vector<SparseVec> reduced(pivots.size());
        for (std::size_t k = pivots.size(); k-- > 0;) {
            SparseVec v = rows_[pivot_of_[pivots[k]]];
            SparseVec head{v.front()};
            SparseVec tail(v.begin() + 1, v.end());
            tail = full.reduce(std::move(tail));
            head.insert(head.end(), tail.begin(), tail.end());
            full.pivot_of_[pivots[k]] = static_cast<int>(full.rows_.size());
            full.rows_.push_back(head);
            reduced[k] = std::move(head);
        }
        return reduced;
    }

private:
    PrimeField F_;
    std::vector<int> pivot_of_;
    std::vector<SparseVec> rows_;
};

inline std::size_t rank(const SparseMatFp& M)
{
    EchelonBasis B(M.field(), M.rows());
    for (std::size_t j = 0; j < M.cols(); ++j)
        B.insert(M.column(j));
    return B.rank();
}

// Canonical kernel basis: one vector per free column of the reduced row echelon form,
// with a 1 in that column.
inline std::vector<SparseVec> kernel_basis(const SparseMatFp& M)
{
    const PrimeField& F = M.field();
    SparseMatFp T = M.transpose();
    EchelonBasis rowspace(F, M.cols());
    for (std::size_t i = 0; i < T.cols(); ++i)
        rowspace.insert(T.column(i));
    auto R = rowspace.rref();
    std::vector<char> is_pivot(M.cols(), 0);
    for (auto& r : R)
        is_pivot[r.front().idx] = 1;
    // column f of R: list of (pivot, coefficient)
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> colR(M.cols());
    for (auto& r : R)
        for (std::size_t k = 1; k < r.size(); ++k)
            colR[r[k].idx].push_back({r.front().idx, r[k].val});
    std::vector<SparseVec> out;
    for (std::uint32_t f = 0; f < M.cols(); ++f) {
        if (is_pivot[f])
            continue;
        std::vector<std::pair<std::uint32_t, std::int64_t>> raw{{f, 1}};
        for (auto [piv, c] : colR[f])
            raw.push_back({piv, F.neg(c)});
        out.push_back(canonical(F, std::move(raw)));
    }
    return out;
}

// Canonical basis of the column space (reduced echelon with respect to row order).
inline std::vector<SparseVec> image_basis(const SparseMatFp& M)
{
    EchelonBasis B(M.field(), M.rows());
    for (std::size_t j = 0; j < M.cols(); ++j)
        B.insert(M.column(j));
    return B.rref();
}

// Some x with M x = b, or nullopt.
inline std::optional<SparseVec> solve(const SparseMatFp& M, const SparseVec& b)
{
    const PrimeField& F = M.field();
    // Track combinations: augment each column j with a marker coordinate rows+j.
    std::size_t R = M.rows();
    EchelonBasis B(F, R + M.cols());
    for (std::size_t j = 0; j < M.cols(); ++j) {
        SparseVec v = M.column(j);
        v.push_back({static_cast<std::uint32_t>(R + j), 1});
        B.insert(std::move(v));
    }
    SparseVec r = B.reduce(b);
    // b is in the image iff the residue has no entry in the first R coordinates.
    if (!r.empty() && r.front().idx < R)
        return std::nullopt;
    // residue = b - sum c_j (col_j (+) e_j)  =>  on marker coords: -c
    SparseVec x;
    for (auto e : r)
        x.push_back({static_cast<std::uint32_t>(e.idx - R), F.neg(e.val)});
    return x;
}

struct QuotientResult {
    std::size_t dim = 0;
    std::vector<SparseVec> representatives;  // empty unless requested
};

// dim ker(dC) / im(dB) where dB : X -> Y and dC : Y -> Z.
inline QuotientResult quotient_dimension(const SparseMatFp& dB, const SparseMatFp& dC, bool with_reps = false)
{
    if (dB.rows() != dC.cols())
        throw consistency_error("quotient_dimension: incompatible shapes");
    if (!dC.multiply(dB).is_zero())
        throw consistency_error("quotient_dimension: composition is nonzero");
    QuotientResult out;
    if (!with_reps) {
        out.dim = dC.cols() - rank(dC) - rank(dB);
        return out;
    }
    EchelonBasis B(dB.field(), dB.rows());
    for (std::size_t j = 0; j < dB.cols(); ++j)
        B.insert(dB.column(j));
    for (auto& z : kernel_basis(dC)) {
        SparseVec res = B.reduce(z);
        if (B.insert(res))
            out.representatives.push_back(z);
    }
    out.dim = out.representatives.size();
    return out;
}

}  // namespace spokess
