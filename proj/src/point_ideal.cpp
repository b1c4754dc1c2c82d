#include "vreslab/point_ideal.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <string>
#include <tuple>

namespace vreslab {

PointSet::PointSet(int n, int m, FieldPrime field, std::vector<Point> points,
                   std::optional<std::uint64_t> seed)
    : ring_{n, m}, field_(field), points_(std::move(points)), seed_(seed) {
    if (n < 1 || m < 1) throw std::invalid_argument("PointSet: need n, m >= 1");
    for (const auto& pt : points_) {
        if (pt.x.size() != static_cast<std::size_t>(n + 1) ||
            pt.y.size() != static_cast<std::size_t>(m + 1))
            throw std::invalid_argument("PointSet: coordinate vector has wrong length");
        if (pt.x[0] != 1 || pt.y[0] != 1)
            throw std::invalid_argument("PointSet: points must be normalized with x_0 = y_0 = 1");
        for (Residue c : pt.x)
            if (c >= field.value()) throw std::invalid_argument("PointSet: coordinate not reduced");
        for (Residue c : pt.y)
            if (c >= field.value()) throw std::invalid_argument("PointSet: coordinate not reduced");
    }
    auto sorted = points_;
    auto key = [](const Point& a, const Point& b) {
        return std::tie(a.x, a.y) < std::tie(b.x, b.y);
    };
    std::sort(sorted.begin(), sorted.end(), key);
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("PointSet: points must be pairwise distinct");
}

std::vector<Residue> PointSet::variable_values(int var) const {
    std::vector<Residue> v(points_.size());
    for (std::size_t s = 0; s < points_.size(); ++s)
        v[s] = ring_.is_x(var) ? points_[s].x[var] : points_[s].y[var - ring_.n - 1];
    return v;
}

PointSet PointSet::subset(const std::vector<std::size_t>& indices) const {
    std::vector<Point> sub;
    sub.reserve(indices.size());
    for (auto k : indices) sub.push_back(points_.at(k));
    return PointSet(ring_.n, ring_.m, field_, std::move(sub), seed_);
}

namespace {

Residue uniform_residue(std::mt19937_64& gen, std::uint32_t p) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = kMax - kMax % p;
    std::uint64_t r;
    do {
        r = gen();
    } while (r >= limit);
    return static_cast<Residue>(r % p);
}

std::vector<Point> draw_points(std::mt19937_64& gen, int n, int m, int count, FieldPrime field) {
    std::vector<Point> pts;
    pts.reserve(count);
    while (static_cast<int>(pts.size()) < count) {
        Point pt{std::vector<Residue>(n + 1, 1), std::vector<Residue>(m + 1, 1)};
        for (int k = 1; k <= n; ++k) pt.x[k] = uniform_residue(gen, field.value());
        for (int k = 1; k <= m; ++k) pt.y[k] = uniform_residue(gen, field.value());
        if (std::find(pts.begin(), pts.end(), pt) == pts.end()) pts.push_back(std::move(pt));
    }
    return pts;
}

Residue power(const FieldPrime& f, Residue base, int e) {
    Residue r = 1;
    for (int k = 0; k < e; ++k) r = f.mul(r, base);
    return r;
}

}  // namespace

SampledPoints random_points(int n, int m, int count, std::uint64_t seed, bool require_generic,
                            FieldPrime field, int rejection_cap) {
    if (count < 1) throw std::invalid_argument("random_points: need at least one point");
    if (static_cast<std::uint64_t>(count) >= field.value())
        throw std::invalid_argument("random_points: field too small for the requested point count");
    std::mt19937_64 gen(seed);
    int rejections = 0;
    while (true) {
        PointSet pts(n, m, field, draw_points(gen, n, m, count, field), seed);
        if (!require_generic || is_generic_hilbert(pts)) return {std::move(pts), rejections};
        if (++rejections > rejection_cap)
            throw GenericityExhausted("random_points: no generic set after " +
                                      std::to_string(rejection_cap) + " redraws");
    }
}

FpMatrix evaluation_matrix(const PointSet& pts, BiDegree d) {
    const auto& ring = pts.ring();
    const auto& f = pts.field();
    MonomialBasis basis(ring, d);
    FpMatrix e(pts.size(), basis.size(), f);
    const auto& xs = basis.x_exponents();
    const auto& ys = basis.y_exponents();
    for (std::size_t s = 0; s < pts.size(); ++s) {
        const Point& pt = pts[s];
        std::vector<Residue> xv(xs.size()), yv(ys.size());
        for (std::size_t a = 0; a < xs.size(); ++a) {
            Residue v = 1;
            for (int k = 0; k <= ring.n; ++k) v = f.mul(v, power(f, pt.x[k], xs[a][k]));
            xv[a] = v;
        }
        for (std::size_t b = 0; b < ys.size(); ++b) {
            Residue v = 1;
            for (int k = 0; k <= ring.m; ++k) v = f.mul(v, power(f, pt.y[k], ys[b][k]));
            yv[b] = v;
        }
        for (std::size_t a = 0; a < xs.size(); ++a)
            for (std::size_t b = 0; b < ys.size(); ++b) e(s, a * ys.size() + b) = f.mul(xv[a], yv[b]);
    }
    return e;
}

FpMatrix ideal_piece(const PointSet& pts, BiDegree d) { return kernel_basis(evaluation_matrix(pts, d)); }

EvaluationSpaces::EvaluationSpaces(const PointSet& pts, BiDegree window) : window_(window) {
    if (!nonnegative(window)) throw std::invalid_argument("EvaluationSpaces: negative window");
    const auto& ring = pts.ring();
    const auto& f = pts.field();
    const std::size_t count = pts.size();
    std::vector<std::vector<Residue>> values(ring.num_vars());
    for (int v = 0; v < ring.num_vars(); ++v) values[v] = pts.variable_values(v);

    spaces_.reserve(static_cast<std::size_t>(window.i + 1) * (window.j + 1));
    std::vector<Residue> w(count);
    auto idx = [&](int i, int j) { return static_cast<std::size_t>(i) * (window.j + 1) + j; };
    for (int i = 0; i <= window.i; ++i) {
        for (int j = 0; j <= window.j; ++j) {
            EchelonBasis space(count, f);
            if (i == 0 && j == 0) {
                std::fill(w.begin(), w.end(), 1);
                space.insert(w);
            } else {
                const bool from_x = i > 0;
                const EchelonBasis& prev = spaces_[from_x ? idx(i - 1, j) : idx(i, j - 1)];
                const int first = from_x ? 0 : ring.n + 1;
                const int last = from_x ? ring.n : ring.n + ring.m + 1;
                for (int v = first; v <= last && space.rank() < count; ++v) {
                    for (std::size_t r = 0; r < prev.rank() && space.rank() < count; ++r) {
                        auto row = prev.row(r);
                        for (std::size_t s = 0; s < count; ++s) w[s] = f.mul(row[s], values[v][s]);
                        space.insert(w);
                    }
                }
            }
            spaces_.push_back(std::move(space));
        }
    }
}

const EchelonBasis& EvaluationSpaces::at(BiDegree d) const {
    if (!nonnegative(d) || !leq(d, window_))
        throw std::out_of_range("EvaluationSpaces: degree " + to_string(d) + " outside window");
    return spaces_[static_cast<std::size_t>(d.i) * (window_.j + 1) + d.j];
}

HilbertMatrix hilbert_matrix(const PointSet& pts, BiDegree window) {
    EvaluationSpaces spaces(pts, window);
    HilbertMatrix h(window.i, window.j);
    for (int i = 0; i <= window.i; ++i)
        for (int j = 0; j <= window.j; ++j)
            h(i, j) = static_cast<std::int64_t>(spaces.at({i, j}).rank());
    return h;
}

HilbertMatrix hilbert_matrix_by_evaluation(const PointSet& pts, BiDegree window) {
    HilbertMatrix h(window.i, window.j);
    for (int i = 0; i <= window.i; ++i)
        for (int j = 0; j <= window.j; ++j)
            h(i, j) = static_cast<std::int64_t>(rank(evaluation_matrix(pts, {i, j})));
    return h;
}

HilbertMatrix generic_hilbert_matrix(int count, int n, int m, BiDegree window) {
    if (count < 1) throw std::invalid_argument("generic_hilbert_matrix: need N >= 1");
    HilbertMatrix h(window.i, window.j);
    for (int i = 0; i <= window.i; ++i)
        for (int j = 0; j <= window.j; ++j)
            h(i, j) = std::min<std::int64_t>(count, t_binom(i, n) * t_binom(j, m));
    return h;
}

int saturation_y_degree(int count, int m) {
    int j = 0;
    while (t_binom(j, m) < count) ++j;
    return j;
}

BiDegree genericity_window(int count, int m) { return {count - 1, saturation_y_degree(count, m)}; }

bool is_generic_hilbert(const PointSet& pts, BiDegree window) {
    const auto count = static_cast<std::int64_t>(pts.size());
    if (pts.ring().dim(window) < count)
        throw WindowTooSmall("is_generic_hilbert: window " + to_string(window) +
                             " does not reach the saturation value N");
    return hilbert_matrix(pts, window) ==
           generic_hilbert_matrix(static_cast<int>(count), pts.n(), pts.m(), window);
}

bool is_generic_hilbert(const PointSet& pts) {
    return is_generic_hilbert(pts, genericity_window(static_cast<int>(pts.size()), pts.m()));
}

std::vector<std::size_t> Pi1Fibration::fiber_sizes() const {
    std::vector<std::size_t> sizes;
    for (const auto& fb : fibers) sizes.push_back(fb.members.size());
    return sizes;
}

Pi1Fibration pi1_fibers(const PointSet& pts) {
    Pi1Fibration fib;
    for (std::size_t s = 0; s < pts.size(); ++s) {
        auto it = std::find_if(fib.fibers.begin(), fib.fibers.end(),
                               [&](const auto& fb) { return fb.base == pts[s].x; });
        if (it == fib.fibers.end())
            fib.fibers.push_back({pts[s].x, {s}});
        else
            it->members.push_back(s);
    }
    return fib;
}

FpMatrix intersected_piece(const PointSet& pts, int t, BiDegree d) {
    if (t < 0) throw std::invalid_argument("intersected_piece: t must be nonnegative");
    if (d.i >= t) return ideal_piece(pts, d);
    return FpMatrix(0, static_cast<std::size_t>(pts.ring().dim(d)), pts.field());
}

FpMatrix y0_multiples(const CoxRing& ring, BiDegree d, FieldPrime field) {
    const auto dim = static_cast<std::size_t>(ring.dim(d));
    FpMatrix rows(0, dim, field);
    if (d.j < 1) return rows;
    auto image = mult_index_map(ring.y0(), {d.i, d.j - 1}, ring.n, ring.m);
    std::vector<Residue> e(dim, 0);
    for (auto k : image) {
        e[k] = 1;
        rows.append_row(e);
        e[k] = 0;
    }
    return rows;
}

DecompositionReport decomposition_check(const PointSet& pts, int t, BiDegree window,
                                        bool allow_small_t) {
    const auto fib = pi1_fibers(pts);
    if (t < static_cast<int>(fib.ell()) - 1 && !allow_small_t)
        throw PreconditionT("decomposition_check: t = " + std::to_string(t) +
                            " is below ell - 1 = " + std::to_string(fib.ell() - 1));
    const auto& ring = pts.ring();
    const auto& f = pts.field();
    std::vector<PointSet> fiber_sets;
    for (const auto& fb : fib.fibers) fiber_sets.push_back(pts.subset(fb.members));

    DecompositionReport report;
    for (int i = 0; i <= window.i; ++i) {
        for (int j = 0; j <= window.j; ++j) {
            const BiDegree d{i, j};
            const auto dim = static_cast<std::size_t>(ring.dim(d));
            const FpMatrix ymult = y0_multiples(ring, d, f);

            FpMatrix lhs = stack(intersected_piece(pts, t, d), ymult);

            FpMatrix rhs = i >= t ? FpMatrix::identity(dim, f) : ymult;
            for (const auto& sub : fiber_sets) rhs = intersect_rowspaces(rhs, stack(ideal_piece(sub, d), ymult));

            const std::size_t rl = rank(lhs), rr = rank(rhs);
            const std::size_t joint = rank(stack(lhs, rhs));
            if (joint != rr) {
                report.containment = false;
                report.not_contained.push_back(d);
            }
            if (!(rl == rr && joint == rr)) {
                report.holds = false;
                report.unequal.push_back(d);
            }
        }
    }
    return report;
}

bool y0_is_nonzerodivisor(const PointSet& pts, BiDegree window) {
    EvaluationSpaces spaces(pts, window);
    const auto& f = pts.field();
    const auto y0 = pts.variable_values(pts.ring().y0());
    for (int i = 0; i <= window.i; ++i) {
        for (int j = 0; j < window.j; ++j) {
            const auto& src = spaces.at({i, j});
            FpMatrix img(0, pts.size(), f);
            std::vector<Residue> w(pts.size());
            for (std::size_t r = 0; r < src.rank(); ++r) {
                auto row = src.row(r);
                for (std::size_t s = 0; s < w.size(); ++s) w[s] = f.mul(row[s], y0[s]);
                img.append_row(w);
            }
            if (rank(img) != src.rank()) return false;
        }
    }
    return true;
}

}  // namespace vreslab
