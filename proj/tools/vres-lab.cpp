#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "vreslab/harness.hpp"

using namespace vreslab;

namespace {

BiDegree parse_bidegree(const std::string& text, const char* flag) {
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) throw std::invalid_argument(text);
        std::size_t used_i = 0, used_j = 0;
        const int i = std::stoi(text.substr(0, comma), &used_i);
        const std::string rest = text.substr(comma + 1);
        const int j = std::stoi(rest, &used_j);
        if (used_i != comma || used_j != rest.size()) throw std::invalid_argument(text);
        return {i, j};
    } catch (const std::exception&) {
        throw UsageError(std::string(flag) + " expects i,j but got '" + text + "'");
    }
}

struct RawFlags {
    std::string d, window;
    std::uint64_t seed = 0;
    int t = 0;
    bool any_points = false;
};

void add_common(CLI::App* cmd, HarnessOptions& o, RawFlags& raw) {
    cmd->add_option("--n", o.n, "dimension of the first factor")->check(CLI::NonNegativeNumber);
    cmd->add_option("--m", o.m, "dimension of the second factor")->check(CLI::NonNegativeNumber);
    cmd->add_option("--N", o.count, "number of points");
    cmd->add_option("--seed", raw.seed, "master seed");
    cmd->add_option("--prime", o.prime, "field characteristic");
    cmd->add_option("--window", raw.window, "degree window i,j");
    cmd->add_option("--points", o.points_file, "read the point set from a JSON file");
    cmd->add_flag("--any", raw.any_points, "do not require a generic Hilbert function");
    cmd->add_option("--out", o.out, "write the result here instead of stdout");
    cmd->add_option("--log", o.log, "append JSONL experiment records here");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Virtual resolutions of points in products of projective spaces"};
    app.require_subcommand(1);

    HarnessOptions opts;
    opts.prime = default_prime_from_env();
    RawFlags raw;

    auto* points = app.add_subcommand("points", "sample a seeded point set");
    auto* hilbert = app.add_subcommand("hilbert", "bigraded Hilbert matrix as CSV");
    auto* dh = app.add_subcommand("dh", "alternating Betti sums from the Hilbert matrix");
    auto* betti = app.add_subcommand("betti", "graded Betti table");
    auto* mrc = app.add_subcommand("mrc", "minimal resolution conjecture sweep");
    auto* inter = app.add_subcommand("vres-intersect", "resolution of S/(I_X cap <x>^t)");
    auto* pair = app.add_subcommand("vres-pair", "virtual resolution of a pair");
    auto* regress = app.add_subcommand("regress", "regression suites");

    for (auto* cmd : {points, hilbert, dh, betti, mrc, inter, pair, regress}) add_common(cmd, opts, raw);
    betti->add_option("--t", raw.t, "intersect with <x>^t first");
    inter->add_option("--t", raw.t, "power of the irrelevant x ideal");
    pair->add_option("--d", raw.d, "degree i,j in the regularity");
    mrc->add_option("--trials", opts.trials)->check(CLI::PositiveNumber);
    mrc->add_option("--nmin", opts.nmin);
    mrc->add_option("--nmax", opts.nmax);
    mrc->add_option("--jobs", opts.jobs)->check(CLI::PositiveNumber);
    regress->add_option("suite", opts.suite, "appendix | theorem | final | all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    CLI::App* cmd = app.get_subcommands().front();
    auto given = [&](const char* name) {
        const auto* opt = cmd->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    try {
        if (given("--seed")) opts.seed = raw.seed;
        if (given("--t")) opts.t = raw.t;
        if (given("--d")) opts.d = parse_bidegree(raw.d, "--d");
        if (given("--window")) opts.window = parse_bidegree(raw.window, "--window");
        opts.generic = !raw.any_points;

        const std::string name = cmd->get_name();
        CommandOutcome outcome;
        if (name == "points") outcome = cmd_points(opts);
        else if (name == "hilbert") outcome = cmd_hilbert(opts);
        else if (name == "dh") outcome = cmd_dh(opts);
        else if (name == "betti") outcome = cmd_betti(opts);
        else if (name == "mrc") outcome = cmd_mrc(opts);
        else if (name == "vres-intersect") outcome = cmd_vres_intersect(opts);
        else if (name == "vres-pair") outcome = cmd_vres_pair(opts);
        else outcome = cmd_regress(opts);

        if (opts.out.empty()) {
            std::cout << outcome.output;
        } else {
            std::ofstream out(opts.out);
            if (!out) throw UsageError("cannot write " + opts.out);
            out << outcome.output;
        }
        return outcome.exit_code;
    } catch (const UsageError& e) {
        std::cerr << "vres-lab: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        // Mathematical preconditions and exhausted sampling land here.
        std::cout << Json{{"ok", false}, {"error", e.what()}}.dump(2) << "\n";
        return 1;
    }
}
