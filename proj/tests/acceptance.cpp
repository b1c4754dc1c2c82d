// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "vreslab/harness.hpp"

using namespace vreslab;

namespace {

constexpr std::uint64_t kMaster = 1;

struct Verdict {
    bool ok;
    std::string detail;
};

std::string join(const std::vector<std::int64_t>& v) {
    std::ostringstream os;
    for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
    return os.str();
}

BettiTable clean_table(const PointSet& pts, int t = 0) {
    BiDegree w = t > 0 ? default_intersection_window(pts, t) : default_betti_window(pts);
    BettiTable bt = point_betti_numbers(pts, t, w);
    if (!bt.boundary_clean()) bt = point_betti_numbers(pts, t, {2 * w.i, 2 * w.j});
    return bt;
}

Verdict pair_shapes(int lo, int hi, int seeds) {
    int bad = 0, total = 0;
    std::string first;
    for (int count = lo; count <= hi; ++count)
        for (int s = 0; s < seeds; ++s) {
            ++total;
            const auto pts = random_points(1, 2, count, derive_seed(kMaster, count, s), true).points;
            const auto shape = virtual_of_pair(pts, clean_table(pts), {count - 1, 0});
            if (shape != predicted_pair_shape(count)) {
                ++bad;
                if (first.empty()) first = "; first mismatch N=" + std::to_string(count) + ": " + pretty(shape);
            }
        }
    return {bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) + " shapes equal" + first};
}

Verdict final_example() {
    const auto pts = random_points(1, 2, 31, derive_seed(kMaster, 31, 0), true).points;
    const auto bt = clean_table(pts);
    const std::vector<std::int64_t> want{1, 34, 66, 39, 6};
    const bool totals_ok = bt.totals() == want;
    const bool reg_ok = regularity_contains(pts, {2, 4}).has_value();
    const auto trimmed = virtual_of_pair(pts, bt, {2, 4});
    const bool shape_ok = trimmed == final_example_shape();
    std::string detail = "minimal totals " + join(bt.totals()) + (totals_ok ? " == " : " != ") + join(want) +
                         "; trimmed at (2,4) totals " + join(trimmed.totals()) + ", shape " +
                         (shape_ok ? "matches" : "differs") + (reg_ok ? "" : "; (2,4) not in regularity");
    return {totals_ok && shape_ok && reg_ok, detail};
}

Verdict mrc_sweep() {
    HarnessOptions o;
    o.seed = 7;
    o.nmin = 2;
    o.nmax = 25;
    o.trials = 50;
    const auto outcome = cmd_mrc(o);
    const Json j = Json::parse(outcome.output);
    int rejections = 0;
    for (const auto& row : j.at("per_N")) rejections += row.at("genericity_rejections").get<int>();
    return {outcome.exit_code == 0, std::to_string(j.at("passed").get<int>()) + " passed, " +
                                        std::to_string(j.at("failed").get<int>()) + " failed, " +
                                        std::to_string(rejections) + " genericity redraws logged"};
}

Verdict euler_identity() {
    const std::pair<int, int> dims[] = {{1, 1}, {1, 2}, {2, 1}};
    int bad = 0;
    for (int k = 0; k < 20; ++k) {
        const auto [n, m] = dims[k % 3];
        const int count = 1 + k % 10;
        const auto pts = random_points(n, m, count, derive_seed(kMaster, count, 100 + k), false).points;
        const auto bt = clean_table(pts);
        const auto h = hilbert_matrix(pts, bt.window());
        if (!bt.boundary_clean() || !diff_cells(alternating_betti_from_hilbert(h, n, m), bt.alternating_collapse()).empty())
            ++bad;
    }
    return {bad == 0, std::to_string(20 - bad) + "/20 tables match the difference operator exactly"};
}

Verdict intersection_length() {
    int bad = 0, total = 0;
    std::string first;
    for (auto [n, m] : {std::pair{1, 1}, {1, 2}, {2, 2}})
        for (int count = 2; count <= 8; ++count) {
            ++total;
            const auto pts = random_points(n, m, count, derive_seed(kMaster, count, 10 * n + m), true).points;
            const int t = std::max(1, static_cast<int>(pi1_fibers(pts).ell()) - 1);
            const auto res = intersect_vres(pts, t);
            if (res.length != n + m) {
                ++bad;
                if (first.empty())
                    first = "; (n,m,N)=(" + std::to_string(n) + "," + std::to_string(m) + "," +
                            std::to_string(count) + ") length " + std::to_string(res.length);
            }
        }
    const auto pts = random_points(2, 1, 5, derive_seed(kMaster, 5, 21), true).points;
    const auto res = intersect_vres(pts, 2);
    const bool improved = res.length == 3 && res.generic_bound && !res.fiber_bound;
    return {bad == 0 && improved, std::to_string(total - bad) + "/" + std::to_string(total) +
                                      " with t = ell-1 have length n+m; P2xP1 N=5 t=2 length " +
                                      std::to_string(res.length) + first};
}

Verdict decomposition() {
    std::mt19937_64 gen(derive_seed(kMaster, 0, 7));
    std::uniform_int_distribution<int> ells(3, 5), sizes(1, 3);
    int bad = 0;
    for (int k = 0; k < 10; ++k) {
        std::vector<int> fibers(ells(gen));
        for (int& s : fibers) s = sizes(gen);
        const auto pts = fixture::fibered_points(1, 2, fibers, gen());
        const int ell = static_cast<int>(fibers.size());
        if (!decomposition_check(pts, ell - 1, {ell + 3, 5}).holds) ++bad;
    }
    return {bad == 0, std::to_string(10 - bad) + "/10 sets decompose on every bidegree"};
}

Verdict dh_oracle() {
    int bad = 0;
    for (int count = 12; count <= 200; ++count)
        if (predicted_dh_generic(count) != dh_p1p2(generic_hilbert_matrix(count, 1, 2, {count + 1, 2}))) ++bad;
    return {bad == 0, std::to_string(189 - bad) + "/189 closed forms equal the computed operator on columns 0..2"};
}

Verdict properties() {
    std::mt19937_64 gen(derive_seed(kMaster, 0, 9));
    std::uniform_int_distribution<std::size_t> dim(0, 15);
    std::uniform_int_distribution<Residue> entry(0, FieldPrime::kDefault - 1);
    int la_bad = 0;
    for (int k = 0; k < 1000; ++k) {
        const std::size_t rows = dim(gen), cols = dim(gen), inner = dim(gen);
        FpMatrix a(rows, inner), b(inner, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < inner; ++c) a(r, c) = entry(gen);
        for (std::size_t r = 0; r < inner; ++r)
            for (std::size_t c = 0; c < cols; ++c) b(r, c) = entry(gen);
        const FpMatrix m = a * b;
        const auto red = rref(m);
        const auto ker = kernel_basis(m);
        const bool ok = ker.rows() + rank(m) == cols && rref(red.reduced).reduced == red.reduced &&
                        (ker.rows() == 0 || rows == 0 || (m * ker.transpose()).is_zero());
        la_bad += !ok;
    }

    std::uniform_int_distribution<int> ci(0, 10), cj(0, 5), val(-9, 9), cnt(0, 8), nm(1, 3);
    int rt_bad = 0;
    for (int k = 0; k < 200; ++k) {
        const int n = nm(gen), m = nm(gen);
        IntMatrix b(10, 5);
        for (int c = cnt(gen); c > 0; --c) b(ci(gen), cj(gen)) += val(gen);
        const auto h = hilbert_from_betti(b, n, m, {10, 5});
        rt_bad += alternating_betti_from_hilbert(h, n, m) != b;
    }

    // Regular sequences x0^a, y0^b, y1^c: beta_k counts the k-subsets of generator degrees.
    int ci_bad = 0;
    const CoxRing ring{1, 2};
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b)
            for (int c = 1; c <= 3; ++c) {
                const BiDegree degs[] = {{a, 0}, {0, b}, {0, c}};
                std::map<std::pair<int, BiDegree>, std::int64_t> counts;
                for (unsigned s = 0; s < 8; ++s) {
                    BiDegree d{0, 0};
                    for (int g = 0; g < 3; ++g)
                        if (s & (1u << g)) d = d + degs[g];
                    counts[{std::popcount(s), d}] += 1;
                }
                const std::vector<Monomial> gens{{{a, 0}, {0, 0, 0}}, {{0, 0}, {b, 0, 0}}, {{0, 0}, {0, c, 0}}};
                const auto bt = betti_numbers(
                    quotient_presentation(fixture::monomial_ideal(ring, gens), ring, FieldPrime{}, {a + 1, b + c + 1}));
                ci_bad += bt.entries() != counts || !bt.boundary_clean();
            }

    return {la_bad + rt_bad + ci_bad == 0, std::to_string(1000 - la_bad) + "/1000 matrices, " +
                                               std::to_string(200 - rt_bad) + "/200 round trips, " +
                                               std::to_string(27 - ci_bad) + "/27 complete intersections"};
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Verdict()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "small-N pair shapes, N=2..11", 10, [] { return pair_shapes(2, 11, 1); }},
        {2, "closed-form pair shapes, N=12..40 x 5 seeds", 120, [] { return pair_shapes(12, 40, 5); }},
        {3, "31-point totals and trimming at (2,4)", 30, final_example},
        {4, "weakened MRC, 50 sets for each N=2..25", 300, mrc_sweep},
        {5, "alternating Betti sums equal differenced Hilbert matrix", 0, euler_identity},
        {6, "intersection resolutions have length n+m", 0, intersection_length},
        {7, "degreewise primary decomposition modulo y0", 0, decomposition},
        {8, "closed-form DH matches the computed operator, N=12..200", 1, dh_oracle},
        {9, "property suites: linear algebra, H<->B, Koszul counts", 0, properties},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.budget_s <= 0 || secs < c.budget_s;
        const bool ok = v.ok && in_time;
        failures += !ok;
        std::printf("%s criterion %d: %s | %s | %.2fs%s\n", ok ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), secs,
                    in_time ? "" : " (over budget)");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
