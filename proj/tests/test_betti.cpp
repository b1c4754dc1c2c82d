#include <doctest.h>

#include "fixtures.hpp"
#include "vreslab/betti.hpp"
#include "vreslab/diff_calculus.hpp"

using namespace vreslab;

namespace {

using Stage = std::map<BiDegree, std::int64_t>;

IdealPieces point_pieces(const PointSet& pts) {
    return [&pts](BiDegree d) { return ideal_piece(pts, d); };
}

Stage add(Stage s, BiDegree d, std::int64_t v) {
    s[d] += v;
    return s;
}

}  // namespace

TEST_CASE("presentations of S, the residue field and one point") {
    const CoxRing ring{1, 2};
    const FieldPrime f;
    const BiDegree w{3, 3};
    const auto free = quotient_presentation([&](BiDegree d) { return FpMatrix(0, ring.dim(d), f); }, ring, f, w);
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j) CHECK(static_cast<std::int64_t>(free.dim({i, j})) == ring.dim({i, j}));
    const auto bt_free = betti_numbers(free);
    CHECK(bt_free.entries().size() == 1);
    CHECK(bt_free.at(0, {0, 0}) == 1);

    const auto field = quotient_presentation(
        [&](BiDegree d) {
            return d == BiDegree{0, 0} ? FpMatrix(0, 1, f) : FpMatrix::identity(ring.dim(d), f);
        },
        ring, f, w);
    CHECK(field.dim({0, 0}) == 1);
    CHECK(field.dim({1, 0}) == 0);
    CHECK(field.dim({2, 3}) == 0);
    CHECK(field.maps_commute());

    const PointSet one(1, 2, f, {Point{{1, 1}, {1, 1, 1}}});
    const auto pres = quotient_presentation(point_pieces(one), ring, f, w);
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j) {
            CHECK(pres.dim({i, j}) == 1);
            for (int v = 0; v < ring.num_vars(); ++v) {
                const BiDegree e = BiDegree{i, j} + ring.degree_of(v);
                if (leq(e, w)) CHECK(pres.mult(v, {i, j}) == FpMatrix::identity(1, f));
            }
        }
}

TEST_CASE("presentation errors") {
    const CoxRing ring{1, 1};
    const FieldPrime f;
    // x0 in J but x0^2 not: closure fails
    auto broken = [&](BiDegree d) {
        FpMatrix rows(0, ring.dim(d), f);
        if (d == BiDegree{1, 0}) rows = FpMatrix::from_rows({{1, 0}}, f);
        return rows;
    };
    CHECK_THROWS_AS(quotient_presentation(broken, ring, f, {2, 1}), ClosureViolated);

    const auto x0 = quotient_presentation(fixture::monomial_ideal(ring, {Monomial{{1, 0}, {0, 0}}}), ring, f, {3, 2});
    CHECK_NOTHROW(reduce_by_regular_variable(x0, 1));
    CHECK_THROWS_AS(reduce_by_regular_variable(reduce_by_regular_variable(x0, 1), 0), NotRegular);

    BettiTable dirty({2, 2});
    dirty.set(1, {2, 0}, 1);
    dirty.set_boundary_clean(false);
    CHECK_THROWS_AS(pdim(dirty), DirtyBoundary);
    CHECK_THROWS_AS(dirty.set(1, {1, 1}, -1), std::invalid_argument);
}

TEST_CASE("Betti numbers of one point") {
    const PointSet one(1, 2, FieldPrime{}, {Point{{1, 7}, {1, 3, 9}}});
    const auto bt = point_betti_numbers(one, 0, {3, 4});
    CHECK(bt.boundary_clean());
    CHECK(bt.stage(0) == Stage{{{0, 0}, 1}});
    CHECK(bt.stage(1) == Stage{{{1, 0}, 1}, {{0, 1}, 2}});
    CHECK(bt.stage(2) == Stage{{{1, 1}, 2}, {{0, 2}, 1}});
    CHECK(bt.stage(3) == Stage{{{1, 2}, 1}});
    CHECK(pdim(bt) == 3);
    CHECK(beta1_table(one, {3, 4}) == Stage{{{1, 0}, 1}, {{0, 1}, 2}});
}

TEST_CASE("twelve general points") {
    const auto pts = fixture::generic(1, 2, 12, 1);
    const BiDegree w = default_betti_window(pts);
    const auto bt = point_betti_numbers(pts, 0, w);
    CHECK(bt.boundary_clean());
    const auto b1 = bt.stage(1);
    CHECK(b1.at({2, 2}) == 6);
    CHECK(b1.at({4, 1}) == 3);
    CHECK(b1.at({12, 0}) == 1);
    CHECK(b1.count({0, 0}) == 0);
    // generators in low x-degree sit outside the trimmed complex but are part of I_X
    CHECK(b1.at({0, 4}) == 3);
    CHECK(b1.at({1, 3}) == 8);
    CHECK(beta1_table(pts, w) == b1);

    const auto report = mrc_check(pts);
    CHECK(report.generic);
    CHECK(report.passed);
    for (BiDegree d : {BiDegree{2, 2}, BiDegree{4, 1}, BiDegree{12, 0}}) {
        auto it = std::find_if(report.cells.begin(), report.cells.end(), [&](const MrcCell& c) { return c.cell == d; });
        REQUIRE(it != report.cells.end());
        CHECK(it->predicted);
        CHECK(it->beta1 == -it->dh);
    }
}

TEST_CASE("MRC for two points matches the small table") {
    const auto pts = fixture::generic(1, 2, 2, 3);
    const auto report = mrc_check(pts);
    CHECK(report.passed);
    CHECK(report.beta1_support == Stage{{{0, 2}, 1}, {{0, 1}, 1}, {{1, 1}, 2}, {{2, 0}, 1}});
}

TEST_CASE("MRC reports non-generic input instead of failing loudly") {
    const PointSet line(1, 2, FieldPrime{},
                        {Point{{1, 5}, {1, 0, 0}}, Point{{1, 5}, {1, 1, 2}}, Point{{1, 5}, {1, 2, 4}}});
    const auto report = mrc_check(line);
    CHECK_FALSE(report.generic);
    CHECK_FALSE(report.passed);
}

TEST_CASE("boundary detection") {
    const auto pts = fixture::generic(1, 2, 8, 2);
    CHECK_FALSE(point_betti_numbers(pts, 0, {4, 3}).boundary_clean());
    CHECK(point_betti_numbers(pts, 0, default_betti_window(pts)).boundary_clean());
}

TEST_CASE("property: Koszul counts for complete intersections") {
    const CoxRing ring{1, 2};
    const FieldPrime f;
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b)
            for (int c = 1; c <= 3; ++c) {
                const std::vector<Monomial> gens{{{a, 0}, {0, 0, 0}}, {{0, 0}, {b, 0, 0}}, {{0, 0}, {0, c, 0}}};
                const BiDegree w{a + 1, b + c + 1};
                const auto bt = betti_numbers(quotient_presentation(fixture::monomial_ideal(ring, gens), ring, f, w));
                CHECK(bt.boundary_clean());
                CHECK(bt.stage(0) == Stage{{{0, 0}, 1}});
                CHECK(bt.stage(1) == add(add(add({}, {a, 0}, 1), {0, b}, 1), {0, c}, 1));
                CHECK(bt.stage(2) == add(add(add({}, {a, b}, 1), {a, c}, 1), {0, b + c}, 1));
                CHECK(bt.stage(3) == Stage{{{a, b + c}, 1}});
                CHECK(bt.max_stage() == 3);
            }
}

TEST_CASE("property: Euler consistency and Hilbert reconstruction") {
    for (std::uint64_t seed = 0; seed < 9; ++seed) {
        const int n = 1 + static_cast<int>(seed % 2), m = 1 + static_cast<int>(seed / 3 % 2);
        const int count = 2 + static_cast<int>(seed % 7);
        const auto pts = fixture::generic(n, m, count, seed);
        const BiDegree w = default_betti_window(pts);
        const auto bt = point_betti_numbers(pts, 0, w);
        REQUIRE(bt.boundary_clean());
        const auto h = hilbert_matrix(pts, w);
        CHECK(bt.alternating_collapse() == alternating_betti_from_hilbert(h, n, m));
        CHECK(hilbert_from_betti(bt.alternating_collapse(), n, m, w) == h);
        if (n == 1 && m == 2) {
            const auto dh = dh_p1p2(h);
            for (int i = 0; i <= w.i; ++i)
                for (int j = 0; j <= w.j; ++j) {
                    if (i == 0 && j == 0) continue;
                    const BiDegree d{i, j};
                    CHECK(dh.at(i, j) == -bt.at(1, d) + bt.at(2, d) - bt.at(3, d) + bt.at(4, d));
                }
        }
    }
}

TEST_CASE("cross-check: reduced, full and monomial routes agree") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const int n = 1 + static_cast<int>(seed % 2), m = 2 - static_cast<int>(seed % 2);
        const int count = 2 + static_cast<int>(seed);
        const auto pts = random_points(n, m, count, seed, false).points;
        const BiDegree w = default_betti_window(pts);
        const auto reduced = point_betti_numbers(pts, 0, w);
        const auto full = betti_numbers(point_module_presentation(pts, 0, w));
        CHECK(reduced.entries() == full.entries());
        CHECK(reduced.boundary_clean() == full.boundary_clean());
        if (count <= 4) {
            const auto mono = betti_numbers(quotient_presentation(point_pieces(pts), pts.ring(), pts.field(), w));
            CHECK(mono.entries() == full.entries());
        }
        CHECK(beta1_table(pts, w) == reduced.stage(1));
        CHECK(point_module_presentation(pts, 0, w).maps_commute());
    }
}

TEST_CASE("cross-check: intersected modules via both presentations") {
    const auto pts = fixture::fibered_points(1, 2, {2, 1}, 4);
    const BiDegree w{5, 5};
    for (int t = 1; t <= 2; ++t) {
        const auto by_points = betti_numbers(point_module_presentation(pts, t, w));
        const auto by_pieces = betti_numbers(quotient_presentation(
            [&](BiDegree d) { return intersected_piece(pts, t, d); }, pts.ring(), pts.field(), w));
        CHECK(by_points.entries() == by_pieces.entries());
        CHECK(point_betti_numbers(pts, t, w).entries() == by_points.entries());
        CHECK(point_module_presentation(pts, t, w).hilbert() ==
              quotient_presentation([&](BiDegree d) { return intersected_piece(pts, t, d); }, pts.ring(),
                                    pts.field(), w)
                  .hilbert());
    }
}

TEST_CASE("Betti tables at a second prime agree") {
    // Same integer coordinates read in two fields; for these small values the tables coincide.
    const std::vector<Point> coords{Point{{1, 2}, {1, 3, 5}}, Point{{1, 7}, {1, 1, 4}}, Point{{1, 4}, {1, 6, 2}},
                                    Point{{1, 9}, {1, 8, 7}}};
    const PointSet a(1, 2, FieldPrime(32003), coords), b(1, 2, FieldPrime(10007), coords);
    CHECK(point_betti_numbers(a, 0, {6, 6}).entries() == point_betti_numbers(b, 0, {6, 6}).entries());
}
