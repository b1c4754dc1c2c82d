#include "vreslab/harness.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "vreslab/diff_calculus.hpp"

namespace vreslab {

std::uint64_t derive_seed(std::uint64_t master, int count, int trial) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t h = mix(master);
    h = mix(h ^ static_cast<std::uint64_t>(count));
    h = mix(h ^ (static_cast<std::uint64_t>(trial) << 32));
    return h;
}

std::uint32_t default_prime_from_env() {
    if (const char* env = std::getenv("VRES_PRIME")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::uint32_t>(v);
    }
    return FieldPrime::kDefault;
}

Json to_json(const ExperimentRecord& rec) {
    Json j;
    j["timestamp"] = rec.timestamp;
    j["seed"] = rec.seed;
    j["n"] = rec.n;
    j["m"] = rec.m;
    j["N"] = rec.count;
    j["p"] = rec.p;
    j["command"] = rec.command;
    j["verdicts"] = rec.verdicts;
    j["artifacts"] = rec.artifacts;
    j["runtime_ms"] = rec.runtime_ms;
    return j;
}

FreeComplexShape final_example_shape() {
    using Stage = FreeComplexShape::Stage;
    return FreeComplexShape({Stage{{{0, 0}, 1}},
                             Stage{{{3, 3}, 9}, {{2, 4}, 14}, {{1, 5}, 11}},
                             Stage{{{3, 4}, 26}, {{2, 5}, 32}, {{1, 6}, 8}},
                             Stage{{{3, 5}, 24}, {{2, 6}, 15}},
                             Stage{{{3, 6}, 6}}});
}

namespace {

using Clock = std::chrono::steady_clock;

std::string now_iso() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::int64_t elapsed_ms(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

ExperimentRecord make_record(const std::string& command, std::uint64_t seed, int n, int m, int count,
                             std::uint32_t p) {
    ExperimentRecord rec;
    rec.timestamp = now_iso();
    rec.seed = seed;
    rec.n = n;
    rec.m = m;
    rec.count = count;
    rec.p = p;
    rec.command = command;
    return rec;
}

struct Sample {
    PointSet points;
    int rejections;
};

Sample obtain_points(const HarnessOptions& opts) {
    if (!opts.points_file.empty()) {
        std::ifstream in(opts.points_file);
        if (!in) throw UsageError("cannot open point file " + opts.points_file);
        return {point_set_from_json(Json::parse(in)), 0};
    }
    if (!opts.seed) throw UsageError("--seed is required for randomized commands");
    if (opts.count < 1) throw UsageError("--N must be at least 1");
    auto s = random_points(opts.n, opts.m, opts.count, *opts.seed, opts.generic, FieldPrime(opts.prime));
    return {std::move(s.points), s.rejections};
}

BettiTable betti_with_retry(const PointSet& pts, int t, std::optional<BiDegree> window) {
    BiDegree w = window.value_or(t > 0 ? default_intersection_window(pts, t) : default_betti_window(pts));
    BettiTable bt = point_betti_numbers(pts, t, w);
    if (!bt.boundary_clean() && !window) bt = point_betti_numbers(pts, t, {2 * w.i, 2 * w.j});
    return bt;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Runs fn(index) for index in [0, total) on up to `jobs` threads.
template <class F>
void run_parallel(std::size_t total, int jobs, F&& fn) {
    const auto workers = static_cast<std::size_t>(std::max(1, jobs));
    if (workers == 1 || total <= 1) {
        for (std::size_t k = 0; k < total; ++k) fn(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, total); ++w)
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < total; k = next++) fn(k);
        });
    for (auto& th : pool) th.join();
}

struct PairCheck {
    bool ok = false;
    Json detail;
};

// Virtual of a pair at (N-1, 0) for one seeded generic set, against the prediction.
PairCheck check_pair_shape(int count, std::uint64_t seed, FieldPrime field) {
    PairCheck res;
    auto sample = random_points(1, 2, count, seed, true, field);
    const auto& pts = sample.points;
    const BettiTable bt = betti_with_retry(pts, 0, std::nullopt);
    const BiDegree d{count - 1, 0};
    const FreeComplexShape shape = virtual_of_pair(pts, bt, d);
    const FreeComplexShape expected = predicted_pair_shape(count);
    res.ok = shape == expected;
    res.detail = {{"N", count}, {"seed", seed}, {"rejections", sample.rejections}, {"ok", res.ok},
                  {"shape", pretty(shape)}};
    if (!res.ok) {
        res.detail["expected"] = pretty(expected);
        res.detail["diff"] = shape_diff_report(expected, shape);
    }
    return res;
}

void write_log(const std::string& path, const std::vector<ExperimentRecord>& records) {
    if (path.empty()) return;
    static std::mutex log_mutex;
    std::lock_guard lock(log_mutex);
    std::ofstream out(path, std::ios::app);
    if (!out) throw UsageError("cannot open log file " + path);
    for (const auto& r : records) out << to_json(r).dump() << '\n';
}

CommandOutcome finish(CommandOutcome outcome, const HarnessOptions& opts) {
    write_log(opts.log, outcome.records);
    return outcome;
}

}  // namespace

CommandOutcome cmd_points(const HarnessOptions& opts) {
    const auto start = Clock::now();
    auto sample = obtain_points(opts);
    CommandOutcome out;
    Json j = to_json(sample.points);
    j["rejections"] = sample.rejections;
    out.output = dump(j);
    auto rec = make_record("points", opts.seed.value_or(0), opts.n, opts.m,
                           static_cast<int>(sample.points.size()), opts.prime);
    rec.verdicts["generic"] = is_generic_hilbert(sample.points);
    rec.runtime_ms = elapsed_ms(start);
    out.records.push_back(rec);
    return finish(std::move(out), opts);
}

CommandOutcome cmd_hilbert(const HarnessOptions& opts) {
    const auto start = Clock::now();
    auto sample = obtain_points(opts);
    const auto& pts = sample.points;
    const BiDegree w = opts.window.value_or(default_betti_window(pts));
    CommandOutcome out;
    out.output = to_csv(hilbert_matrix(pts, w));
    auto rec = make_record("hilbert", opts.seed.value_or(0), pts.n(), pts.m(), static_cast<int>(pts.size()),
                           pts.field().value());
    rec.runtime_ms = elapsed_ms(start);
    out.records.push_back(rec);
    return finish(std::move(out), opts);
}

CommandOutcome cmd_dh(const HarnessOptions& opts) {
    const auto start = Clock::now();
    auto sample = obtain_points(opts);
    const auto& pts = sample.points;
    const int count = static_cast<int>(pts.size());
    const BiDegree w = opts.window.value_or(default_betti_window(pts));
    const IntMatrix dh = alternating_betti_from_hilbert(hilbert_matrix(pts, w), pts.n(), pts.m());
    CommandOutcome out;
    auto rec = make_record("dh", opts.seed.value_or(0), pts.n(), pts.m(), count, pts.field().value());
    // Closed form applies to columns 0..2 for N >= 12 generic points in P^1 x P^2.
    if (pts.n() == 1 && pts.m() == 2 && count >= 12 && is_generic_hilbert(pts) && w.i >= count + 1 && w.j >= 2) {
        const auto diffs = diff_cells(predicted_dh_generic(count), dh.restricted(count + 1, 2));
        rec.verdicts["closed_form"] = diffs.empty();
        if (!diffs.empty()) {
            out.exit_code = 1;
            out.output = dump({{"command", "dh"}, {"ok", false}, {"failures", diff_report(diffs)}});
        }
    }
    if (out.exit_code == 0) out.output = to_csv(dh);
    rec.runtime_ms = elapsed_ms(start);
    out.records.push_back(rec);
    return finish(std::move(out), opts);
}

CommandOutcome cmd_betti(const HarnessOptions& opts) {
    const auto start = Clock::now();
    auto sample = obtain_points(opts);
    const auto& pts = sample.points;
    const int t = opts.t.value_or(0);
    const BettiTable bt = betti_with_retry(pts, t, opts.window);
    CommandOutcome out;
    Json j = to_json(bt);
    j["totals"] = bt.totals();
    out.output = dump(j);
    auto rec = make_record("betti", opts.seed.value_or(0), pts.n(), pts.m(), static_cast<int>(pts.size()),
                           pts.field().value());
    rec.verdicts["boundary_clean"] = bt.boundary_clean();
    // Euler consistency with the Hilbert matrix is the one property asserted here.
    const IntMatrix expected = alternating_betti_from_hilbert(point_module_presentation(pts, t, bt.window()).hilbert(),
                                                              pts.n(), pts.m());
    const auto diffs = diff_cells(expected, bt.alternating_collapse());
    rec.verdicts["euler"] = diffs.empty();
    if (!diffs.empty() || !bt.boundary_clean()) {
        out.exit_code = 1;
        out.output = dump({{"command", "betti"},
                           {"ok", false},
                           {"boundary_clean", bt.boundary_clean()},
                           {"failures", diff_report(diffs)}});
    }
    rec.runtime_ms = elapsed_ms(start);
    out.records.push_back(rec);
    return finish(std::move(out), opts);
}

CommandOutcome cmd_mrc(const HarnessOptions& opts) {
    if (!opts.seed) throw UsageError("--seed is required for mrc");
    if (opts.nmin < 2 || opts.nmax < opts.nmin) throw UsageError("need 2 <= --nmin <= --nmax");
    if (opts.trials < 1) throw UsageError("--trials must be positive");
    if (opts.n != 1 || opts.m != 2) throw UsageError("mrc is defined for P^1 x P^2 only");
    const FieldPrime field(opts.prime);
    const int range = opts.nmax - opts.nmin + 1;
    const auto total = static_cast<std::size_t>(range) * opts.trials;

    struct TrialResult {
        bool passed = false;
        bool exhausted = false;
        int rejections = 0;
        ExperimentRecord record;
        Json failure;
    };
    std::vector<TrialResult> results(total);
    run_parallel(total, opts.jobs, [&](std::size_t idx) {
        const auto start = Clock::now();
        const int count = opts.nmin + static_cast<int>(idx / opts.trials);
        const int trial = static_cast<int>(idx % opts.trials);
        const std::uint64_t seed = derive_seed(*opts.seed, count, trial);
        TrialResult& r = results[idx];
        r.record = make_record("mrc", seed, 1, 2, count, field.value());
        try {
            auto sample = random_points(1, 2, count, seed, true, field);
            r.rejections = sample.rejections;
            const MrcReport rep = mrc_check(sample.points);
            r.passed = rep.passed;
            r.record.verdicts["generic"] = rep.generic;
            r.record.verdicts["boundary_clean"] = rep.boundary_clean;
            r.record.verdicts["mrc"] = rep.passed;
            if (!rep.passed) r.failure = {{"N", count}, {"trial", trial}, {"seed", seed}, {"report", to_json(rep)}};
        } catch (const GenericityExhausted& e) {
            r.exhausted = true;
            r.record.verdicts["generic"] = false;
            r.failure = {{"N", count}, {"trial", trial}, {"seed", seed}, {"error", e.what()}};
        }
        r.record.runtime_ms = elapsed_ms(start);
    });

    CommandOutcome out;
    Json per_n = Json::array();
    Json failures = Json::array();
    int passed_total = 0, failed_total = 0;
    for (int c = 0; c < range; ++c) {
        int passed = 0, failed = 0, rejections = 0, exhausted = 0;
        for (int trial = 0; trial < opts.trials; ++trial) {
            auto& r = results[static_cast<std::size_t>(c) * opts.trials + trial];
            rejections += r.rejections;
            if (r.exhausted) ++exhausted;
            if (r.passed)
                ++passed;
            else {
                ++failed;
                failures.push_back(r.failure);
            }
            out.records.push_back(std::move(r.record));
        }
        passed_total += passed;
        failed_total += failed;
        per_n.push_back({{"N", opts.nmin + c},
                         {"trials", opts.trials},
                         {"passed", passed},
                         {"failed", failed},
                         {"genericity_rejections", rejections},
                         {"genericity_exhausted", exhausted}});
    }
    out.exit_code = failed_total == 0 ? 0 : 1;
    out.output = dump({{"command", "mrc"},
                       {"seed", *opts.seed},
                       {"p", field.value()},
                       {"ok", failed_total == 0},
                       {"passed", passed_total},
                       {"failed", failed_total},
                       {"per_N", per_n},
                       {"failures", failures}});
    return finish(std::move(out), opts);
}

CommandOutcome cmd_vres_intersect(const HarnessOptions& opts) {
    const auto start = Clock::now();
    auto sample = obtain_points(opts);
    const auto& pts = sample.points;
    const int ell = static_cast<int>(pi1_fibers(pts).ell());
    const int t = opts.t.value_or(std::max(1, ell - 1));
    IntersectionResult res = opts.window ? intersect_vres(pts, t, *opts.window) : intersect_vres(pts, t);
    if (!opts.window && res.length < 0) {
        const BiDegree w = default_intersection_window(pts, t);
        res = intersect_vres(pts, t, {2 * w.i, 2 * w.j});
    }
    CommandOutcome out;
    const bool ok = res.length >= 0 && res.length_ok;
    out.exit_code = ok ? 0 : 1;
    out.output = dump({{"command", "vres-intersect"},
                       {"ok", ok},
                       {"t", t},
                       {"ell", res.ell},
                       {"length", res.length},
                       {"expected_length", pts.n() + pts.m()},
                       {"fiber_bound", res.fiber_bound},
                       {"generic_bound", res.generic_bound},
                       {"shape", pretty(FreeComplexShape::from_betti(res.betti))},
                       {"betti", to_json(res.betti)}});
    auto rec = make_record("vres-intersect", opts.seed.value_or(0), pts.n(), pts.m(), static_cast<int>(pts.size()),
                           pts.field().value());
    rec.verdicts["length"] = ok;
    rec.runtime_ms = elapsed_ms(start);
    out.records.push_back(rec);
    return finish(std::move(out), opts);
}

CommandOutcome cmd_vres_pair(const HarnessOptions& opts) {
    const auto start = Clock::now();
    auto sample = obtain_points(opts);
    const auto& pts = sample.points;
    const int count = static_cast<int>(pts.size());
    const BiDegree d = opts.d.value_or(BiDegree{count - 1, 0});
    CommandOutcome out;
    auto rec = make_record("vres-pair", opts.seed.value_or(0), pts.n(), pts.m(), count, pts.field().value());

    const auto witness = regularity_contains(pts, d);
    rec.verdicts["in_regularity"] = witness.has_value();
    if (!witness) {
        out.exit_code = 1;
        out.output = dump({{"command", "vres-pair"},
                           {"ok", false},
                           {"error", "degree " + to_string(d) + " is not in reg(S/I_X)"}});
    } else {
        const BettiTable bt = betti_with_retry(pts, 0, opts.window);
        const FreeComplexShape shape = virtual_of_pair(pts, bt, d);
        const bool euler = euler_quadrant_check(shape, count, pts.n(), pts.m());
        rec.verdicts["euler_quadrant"] = euler;
        Json j{{"command", "vres-pair"},
               {"d", {d.i, d.j}},
               {"regularity_witness", {{"d", {d.i, d.j}}, {"value", witness->value}, {"N", witness->count}}},
               {"minimal_totals", bt.totals()},
               {"totals", shape.totals()},
               {"pretty", pretty(shape)},
               {"shape", to_json(shape)},
               {"euler_quadrant", euler}};
        bool ok = euler;
        if (pts.n() == 1 && pts.m() == 2 && d == BiDegree{count - 1, 0} && count >= 2 && is_generic_hilbert(pts)) {
            const FreeComplexShape expected = predicted_pair_shape(count);
            const bool match = shape == expected;
            rec.verdicts["predicted_shape"] = match;
            j["predicted_match"] = match;
            if (!match) j["failures"] = shape_diff_report(expected, shape);
            ok = ok && match;
        }
        j["ok"] = ok;
        out.exit_code = ok ? 0 : 1;
        out.output = dump(j);
    }
    rec.runtime_ms = elapsed_ms(start);
    out.records.push_back(rec);
    return finish(std::move(out), opts);
}

CommandOutcome cmd_regress(const HarnessOptions& opts) {
    const std::uint64_t master = opts.seed.value_or(1);
    const FieldPrime field(opts.prime);
    const auto& suite = opts.suite;
    if (suite != "appendix" && suite != "theorem" && suite != "final" && suite != "all")
        throw UsageError("unknown regression suite '" + suite + "'");
    CommandOutcome out;
    Json report{{"command", "regress"}, {"suite", suite}, {"seed", master}, {"p", field.value()}};
    bool ok = true;

    auto run_pairs = [&](const std::string& name, int lo, int hi, int seeds) {
        const auto start = Clock::now();
        Json cases = Json::array();
        bool all = true;
        for (int c = lo; c <= hi; ++c)
            for (int s = 0; s < seeds; ++s) {
                const std::uint64_t seed = derive_seed(master, c, s);
                const PairCheck pc = check_pair_shape(c, seed, field);
                all = all && pc.ok;
                cases.push_back(pc.detail);
                auto rec = make_record("regress " + name, seed, 1, 2, c, field.value());
                rec.verdicts["shape"] = pc.ok;
                out.records.push_back(rec);
            }
        report[name] = {{"ok", all}, {"runtime_ms", elapsed_ms(start)}, {"cases", cases}};
        ok = ok && all;
    };

    if (suite == "appendix" || suite == "all") run_pairs("appendix", 2, 11, 1);
    if (suite == "theorem" || suite == "all") run_pairs("theorem", 12, 40, 5);
    if (suite == "final" || suite == "all") {
        const std::uint64_t seed = derive_seed(master, 31, 0);
        auto sample = random_points(1, 2, 31, seed, true, field);
        const BettiTable bt = betti_with_retry(sample.points, 0, std::nullopt);
        const FreeComplexShape shape = virtual_of_pair(sample.points, bt, {2, 4});
        const bool match = shape == final_example_shape();
        Json fin{{"ok", match},
                 {"seed", seed},
                 {"minimal_totals", bt.totals()},
                 {"trimmed_totals", shape.totals()},
                 {"pretty", pretty(shape)}};
        if (!match) fin["failures"] = shape_diff_report(final_example_shape(), shape);
        report["final"] = fin;
        auto rec = make_record("regress final", seed, 1, 2, 31, field.value());
        rec.verdicts["shape"] = match;
        out.records.push_back(rec);
        ok = ok && match;
    }
    report["ok"] = ok;
    out.exit_code = ok ? 0 : 1;
    out.output = dump(report);
    return finish(std::move(out), opts);
}

}  // namespace vreslab
