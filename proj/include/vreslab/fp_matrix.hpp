#ifndef VRESLAB_FP_MATRIX_HPP
#define VRESLAB_FP_MATRIX_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace vreslab {

/// Residue type. Every prime we accept is below 2^31, so the product of two
/// residues fits in 64 bits.
using Residue = std::uint32_t;

class FieldPrime {
public:
    static constexpr std::uint32_t kDefault = 32003;

    explicit FieldPrime(std::uint32_t p = kDefault);

    std::uint32_t value() const { return p_; }

    Residue add(Residue a, Residue b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + p_ - b; }
    Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
    Residue mul(Residue a, Residue b) const {
        return static_cast<Residue>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    Residue inv(Residue a) const;
    Residue reduce(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        return static_cast<Residue>(r < 0 ? r + p_ : r);
    }

    friend bool operator==(const FieldPrime&, const FieldPrime&) = default;

private:
    std::uint32_t p_;
};

bool is_prime(std::uint64_t p);

class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(std::size_t rows, std::size_t cols, FieldPrime field = FieldPrime{});
    FpMatrix(std::size_t rows, std::size_t cols, std::vector<Residue> entries,
             FieldPrime field = FieldPrime{});

    static FpMatrix identity(std::size_t n, FieldPrime field = FieldPrime{});
    /// Builds from signed integers, reducing each into [0, p).
    static FpMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                              FieldPrime field = FieldPrime{});

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldPrime& field() const { return field_; }

    Residue& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    const std::vector<Residue>& entries() const { return data_; }

    void append_row(std::span<const Residue> values);
    void truncate_rows(std::size_t rows);

    FpMatrix transpose() const;
    bool is_zero() const;

    friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    FieldPrime field_{};
    std::vector<Residue> data_;
};

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
/// Rows of `top` followed by rows of `bottom`; column counts must agree.
FpMatrix stack(const FpMatrix& top, const FpMatrix& bottom);

struct RrefResult {
    FpMatrix reduced;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form with leftmost pivots scaled to 1. Zero rows are
/// dropped from `reduced`, so reduced.rows() == pivots.size().
RrefResult rref(FpMatrix a);

/// Same as rref but keeps the zero rows at the bottom (shape-preserving).
RrefResult rref_full(FpMatrix a);

std::size_t rank(FpMatrix a);

/// Basis of {v : A v = 0} as rows, one per free column in increasing order.
/// The row for free column f has a 1 at f and zeros at every other free column.
FpMatrix kernel_basis(const FpMatrix& a);

struct ContainmentViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// dim rowspace(v) - dim rowspace(w), requiring rowspace(w) inside rowspace(v).
std::size_t quotient_dim(const FpMatrix& v, const FpMatrix& w);

/// Basis (RREF rows) of rowspace(a) intersected with rowspace(b).
FpMatrix intersect_rowspaces(const FpMatrix& a, const FpMatrix& b);

/// True iff every row of `sub` lies in rowspace(`space`).
bool rowspace_contains(const FpMatrix& space, const FpMatrix& sub);

/// Incremental echelon basis of a subspace of F_p^dim. Rows are kept fully
/// reduced (RREF) so coordinates of a member vector are its pivot entries.
class EchelonBasis {
public:
    EchelonBasis(std::size_t dim, FieldPrime field);

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    const FieldPrime& field() const { return field_; }

    /// Reduces `v` in place against the basis. Returns true when it becomes zero.
    bool reduce(std::span<Residue> v) const;
    /// Adds `v` if independent. Returns true when the rank grew.
    bool insert(std::span<const Residue> v);

    /// Coordinates of a vector known to lie in the span, in row order.
    std::vector<Residue> coordinates(std::span<const Residue> v) const;

    FpMatrix to_matrix() const;
    std::span<const Residue> row(std::size_t k) const { return rows_[k]; }

private:
    std::size_t dim_;
    FieldPrime field_;
    std::vector<std::vector<Residue>> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace vreslab

#endif
