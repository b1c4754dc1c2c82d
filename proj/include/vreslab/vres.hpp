#ifndef VRESLAB_VRES_HPP
#define VRESLAB_VRES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vreslab/betti.hpp"
#include "vreslab/cox_basis.hpp"
#include "vreslab/diff_calculus.hpp"
#include "vreslab/point_ideal.hpp"

namespace vreslab {

/// Shape of a free complex without its differentials: stage k is a multiset
/// of twists, stored as twist -> multiplicity (zero multiplicities dropped).
class FreeComplexShape {
public:
    using Stage = std::map<BiDegree, std::int64_t>;

    FreeComplexShape() = default;
    explicit FreeComplexShape(std::vector<Stage> stages);

    static FreeComplexShape from_betti(const BettiTable& bt);

    const std::vector<Stage>& stages() const { return stages_; }
    std::size_t length() const { return stages_.empty() ? 0 : stages_.size() - 1; }
    std::vector<std::int64_t> totals() const;
    BiDegree max_twist() const;

    void add(std::size_t k, BiDegree twist, std::int64_t mult);

    friend bool operator==(const FreeComplexShape&, const FreeComplexShape&) = default;

private:
    void trim_trailing();
    std::vector<Stage> stages_;
};

/// "S <- S(-2,-2)^6 + S(-4,-1)^3 + ... <- ..." on one line.
std::string pretty(const FreeComplexShape& shape);

struct RegWitness {
    BiDegree d;
    std::int64_t value;
    std::int64_t count;
};

/// Witness that d lies in reg(S/I_X), i.e. H_X(d) = |X|; nullopt otherwise.
std::optional<RegWitness> regularity_contains(const PointSet& pts, BiDegree d);

struct NotInRegularity : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Summands of the minimal resolution with twist <= d + (n,m). Throws
/// DirtyBoundary when the table was computed on too small a window.
FreeComplexShape virtual_of_pair(const BettiTable& bt, BiDegree d, int n, int m);
/// As above, after certifying d in reg(S/I_X); throws NotInRegularity.
FreeComplexShape virtual_of_pair(const PointSet& pts, const BettiTable& bt, BiDegree d);

/// Closed-form shape of the virtual of a pair at (N-1, 0) for sufficiently
/// general points in P^1 x P^2; tabulated values for 2 <= N <= 11.
FreeComplexShape predicted_pair_shape(int count);

/// Small-N tables, keyed by N, with their labels.
struct TabulatedShape {
    int count;
    std::string label;
    FreeComplexShape shape;
};
const std::vector<TabulatedShape>& small_pair_shapes();

struct IntersectionResult {
    BettiTable betti;
    int length = -1;              // pdim, or -1 if the window was dirty
    int ell = 0;
    bool fiber_bound = false;     // t >= ell - 1
    bool generic_bound = false;   // X generic and t >= min{r : T_{r,n} >= N}
    bool length_ok = true;        // length == n+m whenever a bound applies
};

/// min{r : T_{r,n} >= N}.
int generic_intersection_threshold(int count, int n);

/// Betti table and length of S/(I_X cap <x>^t).
IntersectionResult intersect_vres(const PointSet& pts, int t, BiDegree window);
IntersectionResult intersect_vres(const PointSet& pts, int t);

/// Sum_k (-1)^k sum mult * T_{i-p,n} T_{j-q,m} at degree (i,j).
std::int64_t euler_value(const FreeComplexShape& shape, int n, int m, BiDegree d);

/// Necessary condition for a virtual resolution of N points: the Euler
/// characteristic equals N on the 3x3 grid starting at `corner`. The default
/// corner is one past the largest twist in each coordinate.
bool euler_quadrant_check(const FreeComplexShape& shape, std::int64_t count, int n, int m,
                          std::optional<BiDegree> corner = std::nullopt);

struct Beta2Row {
    int row;
    int column;       // first positive DH entry in the row
    std::int64_t dh;
    std::int64_t beta2;
    bool earlier_zero;  // beta_2 vanishes left of the column
    bool ok;
};

struct Beta2Report {
    bool passed = true;
    std::vector<Beta2Row> rows;
};

/// For each row i >= 2 of DH_X with a positive entry, compares the first
/// positive entry to beta_2 there and checks beta_2 = 0 to its left.
Beta2Report beta2_first_positive_check(const PointSet& pts, BiDegree window);
Beta2Report beta2_first_positive_check(const PointSet& pts);

}  // namespace vreslab

#endif
