#include "vreslab/vres.hpp"

#include <algorithm>
#include <sstream>

#include "vreslab/diff_calculus.hpp"

namespace vreslab {

FreeComplexShape::FreeComplexShape(std::vector<Stage> stages) : stages_(std::move(stages)) {
    for (auto& st : stages_)
        for (auto it = st.begin(); it != st.end();) {
            if (it->second < 0) throw std::invalid_argument("FreeComplexShape: negative multiplicity");
            it = it->second == 0 ? st.erase(it) : std::next(it);
        }
    trim_trailing();
}

FreeComplexShape FreeComplexShape::from_betti(const BettiTable& bt) {
    FreeComplexShape shape;
    for (const auto& [key, beta] : bt.entries()) shape.add(static_cast<std::size_t>(key.first), key.second, beta);
    return shape;
}

void FreeComplexShape::add(std::size_t k, BiDegree twist, std::int64_t mult) {
    if (mult < 0) throw std::invalid_argument("FreeComplexShape: negative multiplicity");
    if (mult == 0) return;
    if (stages_.size() <= k) stages_.resize(k + 1);
    stages_[k][twist] += mult;
}

void FreeComplexShape::trim_trailing() {
    while (!stages_.empty() && stages_.back().empty()) stages_.pop_back();
}

std::vector<std::int64_t> FreeComplexShape::totals() const {
    std::vector<std::int64_t> t;
    for (const auto& st : stages_) {
        std::int64_t s = 0;
        for (const auto& [tw, mult] : st) s += mult;
        t.push_back(s);
    }
    return t;
}

BiDegree FreeComplexShape::max_twist() const {
    BiDegree mx{0, 0};
    for (const auto& st : stages_)
        for (const auto& [tw, mult] : st) mx = {std::max(mx.i, tw.i), std::max(mx.j, tw.j)};
    return mx;
}

std::string pretty(const FreeComplexShape& shape) {
    std::ostringstream os;
    bool first_stage = true;
    for (const auto& st : shape.stages()) {
        if (!first_stage) os << " <- ";
        first_stage = false;
        if (st.empty()) {
            os << "0";
            continue;
        }
        bool first = true;
        for (const auto& [tw, mult] : st) {
            if (!first) os << " + ";
            first = false;
            if (tw.i == 0 && tw.j == 0)
                os << "S";
            else
                os << "S(" << -tw.i << "," << -tw.j << ")";
            if (mult != 1) os << "^" << mult;
        }
    }
    os << " <- 0";
    return os.str();
}

std::optional<RegWitness> regularity_contains(const PointSet& pts, BiDegree d) {
    if (!nonnegative(d)) throw NegativeDegree("regularity_contains: negative degree " + to_string(d));
    const auto h = hilbert_matrix(pts, d).at(d.i, d.j);
    const auto count = static_cast<std::int64_t>(pts.size());
    if (h != count) return std::nullopt;
    return RegWitness{d, h, count};
}

FreeComplexShape virtual_of_pair(const BettiTable& bt, BiDegree d, int n, int m) {
    if (!bt.boundary_clean())
        throw DirtyBoundary("virtual_of_pair: Betti table window " + to_string(bt.window()) +
                            " is too small");
    const BiDegree bound = d + BiDegree{n, m};
    FreeComplexShape shape;
    for (const auto& [key, beta] : bt.entries())
        if (leq(key.second, bound)) shape.add(static_cast<std::size_t>(key.first), key.second, beta);
    return shape;
}

FreeComplexShape virtual_of_pair(const PointSet& pts, const BettiTable& bt, BiDegree d) {
    if (!regularity_contains(pts, d))
        throw NotInRegularity("virtual_of_pair: " + to_string(d) + " is not in reg(S/I_X)");
    return virtual_of_pair(bt, d, pts.n(), pts.m());
}

namespace {

using Stage = FreeComplexShape::Stage;

TabulatedShape tab(int count, Stage s1, Stage s2, Stage s3) {
    return {count, "|X|=" + std::to_string(count),
            FreeComplexShape({Stage{{{0, 0}, 1}}, std::move(s1), std::move(s2), std::move(s3)})};
}

}  // namespace

const std::vector<TabulatedShape>& small_pair_shapes() {
    static const std::vector<TabulatedShape> tables = {
        tab(2, {{{0, 2}, 1}, {{0, 1}, 1}, {{1, 1}, 2}, {{2, 0}, 1}}, {{{1, 2}, 4}, {{2, 1}, 3}}, {{{2, 2}, 3}}),
        tab(3, {{{0, 2}, 3}, {{1, 1}, 3}, {{3, 0}, 1}}, {{{1, 2}, 6}, {{3, 1}, 3}}, {{{3, 2}, 3}}),
        tab(4, {{{0, 2}, 2}, {{1, 1}, 2}, {{2, 1}, 1}, {{4, 0}, 1}},
            {{{1, 2}, 2}, {{2, 2}, 3}, {{4, 1}, 3}}, {{{4, 2}, 3}}),
        tab(5, {{{0, 2}, 1}, {{1, 2}, 2}, {{1, 1}, 1}, {{2, 1}, 2}, {{5, 0}, 1}},
            {{{2, 2}, 6}, {{5, 1}, 3}}, {{{5, 2}, 3}}),
        tab(6, {{{1, 2}, 6}, {{2, 1}, 3}, {{6, 0}, 1}}, {{{2, 2}, 9}, {{6, 1}, 3}}, {{{6, 2}, 3}}),
        tab(7, {{{1, 2}, 5}, {{2, 1}, 2}, {{3, 1}, 1}, {{7, 0}, 1}},
            {{{2, 2}, 5}, {{3, 2}, 3}, {{7, 1}, 3}}, {{{7, 2}, 3}}),
        tab(8, {{{1, 2}, 4}, {{2, 1}, 1}, {{3, 1}, 2}, {{8, 0}, 1}},
            {{{2, 2}, 1}, {{3, 2}, 6}, {{8, 1}, 3}}, {{{8, 2}, 3}}),
        tab(9, {{{1, 2}, 3}, {{2, 2}, 3}, {{3, 1}, 3}, {{9, 0}, 1}}, {{{3, 2}, 9}, {{9, 1}, 3}},
            {{{9, 2}, 3}}),
        tab(10, {{{1, 2}, 2}, {{2, 2}, 4}, {{3, 1}, 2}, {{4, 1}, 1}, {{10, 0}, 1}},
            {{{3, 2}, 6}, {{4, 2}, 3}, {{10, 1}, 3}}, {{{10, 2}, 3}}),
        tab(11, {{{1, 2}, 1}, {{2, 2}, 5}, {{3, 1}, 1}, {{4, 1}, 2}, {{11, 0}, 1}},
            {{{3, 2}, 3}, {{4, 2}, 6}, {{11, 1}, 3}}, {{{11, 2}, 3}}),
    };
    return tables;
}

FreeComplexShape predicted_pair_shape(int count) {
    if (count < 2)
        throw NTooSmall("predicted_pair_shape: need N >= 2, got " + std::to_string(count));
    if (count <= 11) {
        for (const auto& t : small_pair_shapes())
            if (t.count == count) return t.shape;
    }
    const auto [n_, q, r, qp, rp] = nr_decomposition(count);
    FreeComplexShape shape;
    shape.add(0, {0, 0}, 1);
    shape.add(1, {q, 2}, 6 - r);
    shape.add(1, {q + 1, 2}, r);
    shape.add(1, {qp, 1}, 3 - rp);
    shape.add(1, {qp + 1, 1}, rp);
    shape.add(1, {count, 0}, 1);
    shape.add(2, {qp, 2}, 9 - 3 * rp);
    shape.add(2, {qp + 1, 2}, 3 * rp);
    shape.add(2, {count, 1}, 3);
    shape.add(3, {count, 2}, 3);
    return shape;
}

int generic_intersection_threshold(int count, int n) {
    int r = 0;
    while (t_binom(r, n) < count) ++r;
    return r;
}

IntersectionResult intersect_vres(const PointSet& pts, int t, BiDegree window) {
    if (t < 1) throw std::invalid_argument("intersect_vres: t must be at least 1");
    IntersectionResult res;
    res.betti = point_betti_numbers(pts, t, window);
    res.length = res.betti.boundary_clean() ? pdim(res.betti) : -1;
    res.ell = static_cast<int>(pi1_fibers(pts).ell());
    const int count = static_cast<int>(pts.size());
    res.fiber_bound = t >= res.ell - 1;
    res.generic_bound = t >= generic_intersection_threshold(count, pts.n()) && is_generic_hilbert(pts);
    if (res.fiber_bound || res.generic_bound) res.length_ok = res.length == pts.n() + pts.m();
    return res;
}

IntersectionResult intersect_vres(const PointSet& pts, int t) {
    return intersect_vres(pts, t, default_intersection_window(pts, t));
}

std::int64_t euler_value(const FreeComplexShape& shape, int n, int m, BiDegree d) {
    std::int64_t total = 0;
    for (std::size_t k = 0; k < shape.stages().size(); ++k) {
        const std::int64_t sign = k % 2 == 0 ? 1 : -1;
        for (const auto& [tw, mult] : shape.stages()[k])
            total += sign * mult * t_binom(d.i - tw.i, n) * t_binom(d.j - tw.j, m);
    }
    return total;
}

bool euler_quadrant_check(const FreeComplexShape& shape, std::int64_t count, int n, int m,
                          std::optional<BiDegree> corner) {
    const BiDegree c = corner.value_or(shape.max_twist() + BiDegree{1, 1});
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (euler_value(shape, n, m, c + BiDegree{a, b}) != count) return false;
    return true;
}

Beta2Report beta2_first_positive_check(const PointSet& pts, BiDegree window) {
    if (pts.size() < 12)
        throw NTooSmall("beta2_first_positive_check: needs N >= 12");
    const IntMatrix dh = alternating_betti_from_hilbert(hilbert_matrix(pts, window), pts.n(), pts.m());
    const BettiTable bt = point_betti_numbers(pts, 0, window, BettiOptions{2});
    Beta2Report report;
    report.passed = bt.boundary_clean();
    for (int i = 2; i <= window.i; ++i) {
        int col = -1;
        for (int j = 0; j <= window.j; ++j)
            if (dh.at(i, j) > 0) {
                col = j;
                break;
            }
        if (col < 0) continue;
        Beta2Row row{i, col, dh.at(i, col), bt.at(2, {i, col}), true, true};
        for (int j = 0; j < col; ++j)
            if (bt.at(2, {i, j}) != 0) row.earlier_zero = false;
        row.ok = row.beta2 == row.dh && row.earlier_zero;
        report.passed = report.passed && row.ok;
        report.rows.push_back(row);
    }
    return report;
}

Beta2Report beta2_first_positive_check(const PointSet& pts) {
    return beta2_first_positive_check(pts, default_betti_window(pts));
}

}  // namespace vreslab
