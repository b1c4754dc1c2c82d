#ifndef VRESLAB_POINT_IDEAL_HPP
#define VRESLAB_POINT_IDEAL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "vreslab/cox_basis.hpp"
#include "vreslab/fp_matrix.hpp"
#include "vreslab/int_matrix.hpp"

namespace vreslab {

/// A point [1:a_1:...:a_n] x [1:b_1:...:b_m].
struct Point {
    std::vector<Residue> x;
    std::vector<Residue> y;
    friend bool operator==(const Point&, const Point&) = default;
};

/// Distinct normalized points in P^n x P^m over GF(p).
class PointSet {
public:
    PointSet(int n, int m, FieldPrime field, std::vector<Point> points,
             std::optional<std::uint64_t> seed = std::nullopt);

    int n() const { return ring_.n; }
    int m() const { return ring_.m; }
    const CoxRing& ring() const { return ring_; }
    const FieldPrime& field() const { return field_; }
    std::size_t size() const { return points_.size(); }
    const std::vector<Point>& points() const { return points_; }
    const Point& operator[](std::size_t k) const { return points_[k]; }
    std::optional<std::uint64_t> seed() const { return seed_; }

    /// Value of variable `var` at each point (affine chart x_0 = y_0 = 1).
    std::vector<Residue> variable_values(int var) const;

    PointSet subset(const std::vector<std::size_t>& indices) const;

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    CoxRing ring_;
    FieldPrime field_;
    std::vector<Point> points_;
    std::optional<std::uint64_t> seed_;
};

struct GenericityExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct WindowTooSmall : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct PreconditionT : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SampledPoints {
    PointSet points;
    int rejections = 0;
};

constexpr int kDefaultGenericityCap = 100;

/// N distinct normalized points from the mt19937_64 stream of `seed`. With
/// require_generic, whole sets are redrawn until the Hilbert matrix is generic.
SampledPoints random_points(int n, int m, int count, std::uint64_t seed, bool require_generic,
                            FieldPrime field = FieldPrime{}, int rejection_cap = kDefaultGenericityCap);

/// N x dim S_d matrix whose (s, mu) entry is monomial mu evaluated at point s.
FpMatrix evaluation_matrix(const PointSet& pts, BiDegree d);

/// Basis of [I_X]_d as coefficient rows over the monomial basis of S_d.
FpMatrix ideal_piece(const PointSet& pts, BiDegree d);

/// Span of the evaluation vectors of S_d inside GF(p)^N for every d in a
/// window, built degree by degree: V_(i,j) = sum_k x_k V_(i-1,j), and
/// V_(0,j) = sum_k y_k V_(0,j-1).
class EvaluationSpaces {
public:
    EvaluationSpaces(const PointSet& pts, BiDegree window);

    BiDegree window() const { return window_; }
    const EchelonBasis& at(BiDegree d) const;

private:
    BiDegree window_;
    std::vector<EchelonBasis> spaces_;
};

/// H(i,j) = dim S_(i,j)/[I_X]_(i,j) on 0..window.
HilbertMatrix hilbert_matrix(const PointSet& pts, BiDegree window);
/// Same values, computed as ranks of evaluation_matrix. Slow; for cross-checks.
HilbertMatrix hilbert_matrix_by_evaluation(const PointSet& pts, BiDegree window);

/// min{N, T_{i,n} T_{j,m}} on the window.
HilbertMatrix generic_hilbert_matrix(int count, int n, int m, BiDegree window);

/// min{j : T_{j,m} >= N}.
int saturation_y_degree(int count, int m);
/// Smallest window on which genericity implies genericity everywhere.
BiDegree genericity_window(int count, int m);

bool is_generic_hilbert(const PointSet& pts, BiDegree window);
bool is_generic_hilbert(const PointSet& pts);

/// Grouping of the points by their first coordinate.
struct Pi1Fibration {
    struct Fiber {
        std::vector<Residue> base;          // the shared x-part
        std::vector<std::size_t> members;   // indices into the point set
    };
    std::vector<Fiber> fibers;  // ordered by first appearance

    std::size_t ell() const { return fibers.size(); }
    std::vector<std::size_t> fiber_sizes() const;
};

Pi1Fibration pi1_fibers(const PointSet& pts);

/// Basis of [I_X intersect <x>^t]_d: ideal_piece when d.i >= t, else empty.
FpMatrix intersected_piece(const PointSet& pts, int t, BiDegree d);

struct DecompositionReport {
    bool holds = true;            // equality at every bidegree of the window
    bool containment = true;      // left side inside right side everywhere
    std::vector<BiDegree> unequal;
    std::vector<BiDegree> not_contained;
};

/// Degreewise check that <I_X cap <x>^t, y_0> equals the intersection of the
/// <I_{X_k}, y_0> over the pi_1-fibers with <<x>^t, y_0>. Throws PreconditionT
/// when t < ell - 1 unless `allow_small_t`.
DecompositionReport decomposition_check(const PointSet& pts, int t, BiDegree window,
                                        bool allow_small_t = false);

/// Rows spanning y_0 * S_(d - (0,1)) inside S_d.
FpMatrix y0_multiples(const CoxRing& ring, BiDegree d, FieldPrime field);

/// True iff multiplication by y_0 is injective on S/I_X throughout the window.
bool y0_is_nonzerodivisor(const PointSet& pts, BiDegree window);

}  // namespace vreslab

#endif
