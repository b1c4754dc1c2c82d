#include "vreslab/int_matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace vreslab {

IntMatrix::IntMatrix(int max_i, int max_j, std::int64_t fill) : max_i_(max_i), max_j_(max_j) {
    if (max_i < 0 || max_j < 0) throw std::invalid_argument("IntMatrix: negative window");
    values_.assign(static_cast<std::size_t>(max_i + 1) * (max_j + 1), fill);
}

std::int64_t IntMatrix::at(int i, int j) const {
    if (i < 0 || j < 0) return 0;
    if (i > max_i_ || j > max_j_)
        throw std::out_of_range("IntMatrix: index " + to_string(BiDegree{i, j}) + " past window " +
                                to_string(window()));
    return values_[static_cast<std::size_t>(i) * (max_j_ + 1) + j];
}

std::int64_t& IntMatrix::operator()(int i, int j) {
    if (!in_window(i, j)) throw std::out_of_range("IntMatrix: write outside window");
    return values_[static_cast<std::size_t>(i) * (max_j_ + 1) + j];
}

IntMatrix IntMatrix::restricted(int max_i, int max_j) const {
    IntMatrix r(max_i, max_j);
    for (int i = 0; i <= max_i; ++i)
        for (int j = 0; j <= max_j; ++j) r(i, j) = in_window(i, j) ? at(i, j) : 0;
    return r;
}

std::string to_csv(const IntMatrix& m) {
    std::ostringstream os;
    os << "i\\j";
    for (int j = 0; j <= m.max_j(); ++j) os << ',' << j;
    os << '\n';
    for (int i = 0; i <= m.max_i(); ++i) {
        os << i;
        for (int j = 0; j <= m.max_j(); ++j) os << ',' << m.at(i, j);
        os << '\n';
    }
    return os.str();
}

std::vector<CellDiff> diff_cells(const IntMatrix& expected, const IntMatrix& actual) {
    std::vector<CellDiff> out;
    const int mi = std::min(expected.max_i(), actual.max_i());
    const int mj = std::min(expected.max_j(), actual.max_j());
    for (int i = 0; i <= mi; ++i)
        for (int j = 0; j <= mj; ++j)
            if (expected.at(i, j) != actual.at(i, j))
                out.push_back({{i, j}, expected.at(i, j), actual.at(i, j)});
    return out;
}

}  // namespace vreslab
