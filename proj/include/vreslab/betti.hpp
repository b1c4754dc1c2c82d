#ifndef VRESLAB_BETTI_HPP
#define VRESLAB_BETTI_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vreslab/cox_basis.hpp"
#include "vreslab/fp_matrix.hpp"
#include "vreslab/int_matrix.hpp"
#include "vreslab/point_ideal.hpp"

namespace vreslab {

struct ClosureViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotRegular : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DirtyBoundary : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite data of a bigraded module M on a window: the dimension of every
/// piece and, for each active variable v, the matrix of M_d -> M_(d + deg v)
/// whenever the target lies in the window.
class GradedModulePresentation {
public:
    GradedModulePresentation(CoxRing ring, FieldPrime field, BiDegree window);

    const CoxRing& ring() const { return ring_; }
    const FieldPrime& field() const { return field_; }
    BiDegree window() const { return window_; }
    /// Variables M is presented over, in increasing order. Starts as all of them.
    const std::vector<int>& active_vars() const { return active_; }

    /// Zero for negative degrees.
    std::size_t dim(BiDegree d) const;
    const FpMatrix& mult(int var, BiDegree src) const;

    HilbertMatrix hilbert() const;

    void set_dim(BiDegree d, std::size_t dim);
    void set_mult(int var, BiDegree src, FpMatrix map);
    void set_active_vars(std::vector<int> vars) { active_ = std::move(vars); }

    /// Pairwise commutation of the multiplication maps wherever both
    /// composites land in the window.
    bool maps_commute() const;

private:
    std::size_t index(BiDegree d) const;

    CoxRing ring_;
    FieldPrime field_;
    BiDegree window_;
    std::vector<int> active_;
    std::vector<std::size_t> dims_;
    std::vector<std::vector<FpMatrix>> mults_;  // [degree][var]
};

/// Degreewise ideal data: rows spanning J_d over the monomial basis of S_d.
using IdealPieces = std::function<FpMatrix(BiDegree)>;

/// Presentation of S/J with quotient bases given by the non-pivot monomials
/// of each RREF(J_d). Throws ClosureViolated if v * J_d is not inside J_(d + deg v).
GradedModulePresentation quotient_presentation(const IdealPieces& pieces, CoxRing ring,
                                               FieldPrime field, BiDegree window);

/// Presentation of S/(I_X cap <x>^t) (t = 0 gives S/I_X). Pieces with i >= t
/// are represented inside GF(p)^N by evaluation, lower pieces by monomials.
GradedModulePresentation point_module_presentation(const PointSet& pts, int t, BiDegree window);

/// M / var*M as a module over the remaining active variables. Throws
/// NotRegular unless multiplication by var is injective on the window.
GradedModulePresentation reduce_by_regular_variable(const GradedModulePresentation& pres, int var);

/// Sparse table (k, (i,j)) -> beta_{k,(i,j)} on a window.
class BettiTable {
public:
    BettiTable() = default;
    explicit BettiTable(BiDegree window) : window_(window) {}

    BiDegree window() const { return window_; }
    bool boundary_clean() const { return boundary_clean_; }
    void set_boundary_clean(bool clean) { boundary_clean_ = clean; }

    std::int64_t at(int k, BiDegree d) const;
    void set(int k, BiDegree d, std::int64_t beta);

    const std::map<std::pair<int, BiDegree>, std::int64_t>& entries() const { return entries_; }
    /// Largest k with a nonzero entry, -1 when empty.
    int max_stage() const;
    /// Sum over bidegrees per stage, index k = 0..max_stage.
    std::vector<std::int64_t> totals() const;
    /// Sum_k (-1)^k beta_{k,(p,q)} on the window.
    IntMatrix alternating_collapse() const;
    /// Restriction to one homological stage.
    std::map<BiDegree, std::int64_t> stage(int k) const;

    friend bool operator==(const BettiTable&, const BettiTable&) = default;

private:
    BiDegree window_{};
    bool boundary_clean_ = true;
    std::map<std::pair<int, BiDegree>, std::int64_t> entries_;
};

struct BettiOptions {
    /// Stages above this are not computed (-1: all).
    int max_stage = -1;
};

/// Koszul homology of M against its active variables, bidegree by bidegree.
BettiTable betti_numbers(const GradedModulePresentation& pres, BettiOptions opts = {});

/// Betti table of S/(I_X cap <x>^t). Uses the y_0-reduction (y_0 is checked
/// to be regular first) and falls back to the full Koszul complex otherwise.
BettiTable point_betti_numbers(const PointSet& pts, int t, BiDegree window, BettiOptions opts = {});

/// Default window (N + n, d_y + m + 2) for S/I_X.
BiDegree default_betti_window(const PointSet& pts);
/// (max(N, t + 1) + n, d_y + m + 2) for S/(I_X cap <x>^t).
BiDegree default_intersection_window(const PointSet& pts, int t);

/// Minimal generator counts of I_X, computed as dim J_d / sum_v v J_(d - deg v)
/// in monomial coordinates.
std::map<BiDegree, std::int64_t> beta1_table(const PointSet& pts, BiDegree window);

/// max k with a nonzero entry; throws DirtyBoundary if the window was too small.
int pdim(const BettiTable& bt);

struct MrcCell {
    BiDegree cell;
    std::int64_t dh;
    bool predicted;
    std::int64_t beta1;
    bool ok;
};

struct MrcReport {
    bool generic = false;
    bool boundary_clean = true;
    bool passed = false;
    std::vector<MrcCell> cells;  // every cell (i,j) > (0,0) of the window
    std::map<BiDegree, std::int64_t> beta1_support;
};

/// Checks the weakened minimal resolution statement for a point set in
/// P^1 x P^2: beta_1 > 0 exactly where DH first turns negative along every
/// chain from the origin, with beta_1 = -DH there.
MrcReport mrc_check(const PointSet& pts, BiDegree window);
MrcReport mrc_check(const PointSet& pts);

}  // namespace vreslab

#endif
