#include "vreslab/fp_matrix.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace vreslab {

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

FieldPrime::FieldPrime(std::uint32_t p) : p_(p) {
    if (p <= 2 || p >= (1u << 31) || !is_prime(p))
        throw std::invalid_argument("field characteristic must be an odd prime below 2^31, got " +
                                    std::to_string(p));
}

Residue FieldPrime::inv(Residue a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a, e = p_ - 2;
    while (e) {
        if (e & 1) result = result * base % p_;
        base = base * base % p_;
        e >>= 1;
    }
    return static_cast<Residue>(result);
}

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, FieldPrime field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, 0) {}

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, std::vector<Residue> entries,
                   FieldPrime field)
    : rows_(rows), cols_(cols), field_(field), data_(std::move(entries)) {
    if (data_.size() != rows * cols) throw std::invalid_argument("FpMatrix: entry count mismatch");
    for (Residue e : data_)
        if (e >= field_.value()) throw std::invalid_argument("FpMatrix: entry not reduced");
}

FpMatrix FpMatrix::identity(std::size_t n, FieldPrime field) {
    FpMatrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

FpMatrix FpMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows, FieldPrime field) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    FpMatrix m(rows.size(), c, field);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != c) throw std::invalid_argument("from_rows: ragged input");
        for (std::size_t k = 0; k < c; ++k) m(r, k) = field.reduce(rows[r][k]);
    }
    return m;
}

void FpMatrix::append_row(std::span<const Residue> values) {
    if (values.size() != cols_) throw std::invalid_argument("append_row: width mismatch");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

void FpMatrix::truncate_rows(std::size_t rows) {
    if (rows > rows_) throw std::invalid_argument("truncate_rows: cannot grow");
    rows_ = rows;
    data_.resize(rows_ * cols_);
}

FpMatrix FpMatrix::transpose() const {
    FpMatrix t(cols_, rows_, field_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool FpMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Residue e) { return e == 0; });
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
    if (!(a.field() == b.field())) throw std::invalid_argument("matrix product: field mismatch");
    const auto& f = a.field();
    const std::uint64_t p = f.value();
    FpMatrix c(a.rows(), b.cols(), f);
    std::vector<std::uint64_t> acc(b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const std::uint64_t aik = a(i, k);
            if (aik == 0) continue;
            auto brow = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) acc[j] = (acc[j] + aik * brow[j]) % p;
        }
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = static_cast<Residue>(acc[j]);
    }
    return c;
}

FpMatrix stack(const FpMatrix& top, const FpMatrix& bottom) {
    if (top.cols() != bottom.cols()) throw std::invalid_argument("stack: column mismatch");
    std::vector<Residue> e = top.entries();
    e.insert(e.end(), bottom.entries().begin(), bottom.entries().end());
    return FpMatrix(top.rows() + bottom.rows(), top.cols(), std::move(e), top.field());
}

namespace {

// row[from..] -= factor * pivot_row[from..]
void axpy_neg(std::span<Residue> row, std::span<const Residue> pivot_row, Residue factor,
              std::size_t from, std::uint64_t p) {
    const std::uint64_t f = p - factor;
    for (std::size_t c = from; c < row.size(); ++c) {
        if (pivot_row[c] == 0) continue;
        row[c] = static_cast<Residue>((row[c] + f * pivot_row[c]) % p);
    }
}

void scale(std::span<Residue> row, Residue s, std::size_t from, std::uint64_t p) {
    for (std::size_t c = from; c < row.size(); ++c)
        row[c] = static_cast<Residue>(static_cast<std::uint64_t>(row[c]) * s % p);
}

// In-place Gauss-Jordan; returns pivots. Nonzero rows end up first.
std::vector<std::size_t> gauss_jordan(FpMatrix& a) {
    const auto& f = a.field();
    const std::uint64_t p = f.value();
    std::vector<std::size_t> pivots;
    std::size_t prow = 0;
    for (std::size_t col = 0; col < a.cols() && prow < a.rows(); ++col) {
        std::size_t sel = prow;
        while (sel < a.rows() && a(sel, col) == 0) ++sel;
        if (sel == a.rows()) continue;
        if (sel != prow) {
            auto r1 = a.row(sel), r2 = a.row(prow);
            std::swap_ranges(r1.begin(), r1.end(), r2.begin());
        }
        auto pr = a.row(prow);
        scale(pr, f.inv(pr[col]), col, p);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == prow) continue;
            auto row = a.row(r);
            if (row[col] != 0) axpy_neg(row, pr, row[col], col, p);
        }
        pivots.push_back(col);
        ++prow;
    }
    return pivots;
}

}  // namespace

RrefResult rref_full(FpMatrix a) {
    auto piv = gauss_jordan(a);
    return {std::move(a), std::move(piv)};
}

RrefResult rref(FpMatrix a) {
    auto piv = gauss_jordan(a);
    a.truncate_rows(piv.size());
    return {std::move(a), std::move(piv)};
}

std::size_t rank(FpMatrix a) {
    // Forward elimination only.
    const auto& f = a.field();
    const std::uint64_t p = f.value();
    std::size_t prow = 0;
    for (std::size_t col = 0; col < a.cols() && prow < a.rows(); ++col) {
        std::size_t sel = prow;
        while (sel < a.rows() && a(sel, col) == 0) ++sel;
        if (sel == a.rows()) continue;
        if (sel != prow) {
            auto r1 = a.row(sel), r2 = a.row(prow);
            std::swap_ranges(r1.begin(), r1.end(), r2.begin());
        }
        auto pr = a.row(prow);
        scale(pr, f.inv(pr[col]), col, p);
        for (std::size_t r = prow + 1; r < a.rows(); ++r) {
            auto row = a.row(r);
            if (row[col] != 0) axpy_neg(row, pr, row[col], col, p);
        }
        ++prow;
    }
    return prow;
}

FpMatrix kernel_basis(const FpMatrix& a) {
    const auto& f = a.field();
    auto [r, pivots] = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    FpMatrix k(0, a.cols(), f);
    std::vector<Residue> v(a.cols());
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::fill(v.begin(), v.end(), 0);
        v[free] = 1;
        for (std::size_t pr = 0; pr < pivots.size(); ++pr) v[pivots[pr]] = f.neg(r(pr, free));
        k.append_row(v);
    }
    return k;
}

std::size_t quotient_dim(const FpMatrix& v, const FpMatrix& w) {
    if (v.cols() != w.cols()) throw std::invalid_argument("quotient_dim: column mismatch");
    const std::size_t rv = rank(v);
    if (rank(stack(v, w)) > rv)
        throw ContainmentViolated("quotient_dim: rowspace(W) is not contained in rowspace(V)");
    return rv - rank(w);
}

bool rowspace_contains(const FpMatrix& space, const FpMatrix& sub) {
    EchelonBasis basis(space.cols(), space.field());
    for (std::size_t r = 0; r < space.rows(); ++r) basis.insert(space.row(r));
    std::vector<Residue> v(space.cols());
    for (std::size_t r = 0; r < sub.rows(); ++r) {
        std::copy(sub.row(r).begin(), sub.row(r).end(), v.begin());
        if (!basis.reduce(v)) return false;
    }
    return true;
}

FpMatrix intersect_rowspaces(const FpMatrix& a, const FpMatrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("intersect_rowspaces: column mismatch");
    const auto& f = a.field();
    // Solve alpha*A = beta*B via the kernel of [A; B]^T; intersection = alpha*A.
    auto ra = rref(a).reduced;
    auto rb = rref(b).reduced;
    FpMatrix both = stack(ra, rb).transpose();
    FpMatrix ker = kernel_basis(both);
    FpMatrix gens(0, a.cols(), f);
    std::vector<Residue> v(a.cols());
    for (std::size_t k = 0; k < ker.rows(); ++k) {
        std::fill(v.begin(), v.end(), 0);
        for (std::size_t r = 0; r < ra.rows(); ++r) {
            Residue c = ker(k, r);
            if (c == 0) continue;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.add(v[j], f.mul(c, ra(r, j)));
        }
        gens.append_row(v);
    }
    return rref(std::move(gens)).reduced;
}

EchelonBasis::EchelonBasis(std::size_t dim, FieldPrime field)
    : dim_(dim), field_(field) {}

bool EchelonBasis::reduce(std::span<Residue> v) const {
    const std::uint64_t p = field_.value();
    bool zero = true;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        Residue c = v[pivots_[k]];
        if (c != 0) axpy_neg(v, rows_[k], c, 0, p);
    }
    for (Residue e : v)
        if (e != 0) {
            zero = false;
            break;
        }
    return zero;
}

bool EchelonBasis::insert(std::span<const Residue> v_in) {
    const std::uint64_t p = field_.value();
    std::vector<Residue> v(v_in.begin(), v_in.end());
    if (reduce(v)) return false;
    std::size_t lead = 0;
    while (v[lead] == 0) ++lead;
    scale(v, field_.inv(v[lead]), lead, p);
    for (auto& row : rows_)
        if (row[lead] != 0) axpy_neg(row, v, row[lead], 0, p);
    pivots_.push_back(lead);
    rows_.push_back(std::move(v));
    return true;
}

std::vector<Residue> EchelonBasis::coordinates(std::span<const Residue> v) const {
    std::vector<Residue> c(rows_.size());
    for (std::size_t k = 0; k < rows_.size(); ++k) c[k] = v[pivots_[k]];
    return c;
}

FpMatrix EchelonBasis::to_matrix() const {
    FpMatrix m(0, dim_, field_);
    for (const auto& r : rows_) m.append_row(r);
    return m;
}

}  // namespace vreslab
