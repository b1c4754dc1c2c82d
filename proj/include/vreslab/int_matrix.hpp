#ifndef VRESLAB_INT_MATRIX_HPP
#define VRESLAB_INT_MATRIX_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vreslab/cox_basis.hpp"

namespace vreslab {

/// Integer matrix indexed by bidegrees 0..max_i x 0..max_j, read as zero at
/// negative indices.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int max_i, int max_j, std::int64_t fill = 0);

    int max_i() const { return max_i_; }
    int max_j() const { return max_j_; }
    BiDegree window() const { return {max_i_, max_j_}; }
    bool in_window(int i, int j) const { return i >= 0 && j >= 0 && i <= max_i_ && j <= max_j_; }

    /// Zero for negative indices; throws std::out_of_range past the window.
    std::int64_t at(int i, int j) const;
    std::int64_t& operator()(int i, int j);
    std::int64_t operator()(int i, int j) const { return at(i, j); }

    IntMatrix restricted(int max_i, int max_j) const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    int max_i_ = -1;
    int max_j_ = -1;
    std::vector<std::int64_t> values_;
};

using HilbertMatrix = IntMatrix;

/// CSV with header "i\j,0,1,..." and one line per row index.
std::string to_csv(const IntMatrix& m);

struct CellDiff {
    BiDegree cell;
    std::int64_t expected;
    std::int64_t actual;
};

/// Cells where the two matrices differ on the common window.
std::vector<CellDiff> diff_cells(const IntMatrix& expected, const IntMatrix& actual);

}  // namespace vreslab

#endif
