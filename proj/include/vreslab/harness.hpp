#ifndef VRESLAB_HARNESS_HPP
#define VRESLAB_HARNESS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vreslab/io.hpp"

namespace vreslab {

/// Per-trial seed: a splitmix64 hash of (master, N, trial index).
std::uint64_t derive_seed(std::uint64_t master, int count, int trial);

/// Field prime from VRES_PRIME, falling back to the default.
std::uint32_t default_prime_from_env();

struct ExperimentRecord {
    std::string timestamp;
    std::uint64_t seed = 0;
    int n = 1, m = 2, count = 0;
    std::uint32_t p = FieldPrime::kDefault;
    std::string command;
    std::map<std::string, bool> verdicts;
    std::vector<std::string> artifacts;
    std::int64_t runtime_ms = 0;
};

Json to_json(const ExperimentRecord& rec);

struct HarnessOptions {
    int n = 1;
    int m = 2;
    int count = 0;                       // --N
    std::optional<int> t;
    std::optional<BiDegree> d;
    std::optional<BiDegree> window;
    std::optional<std::uint64_t> seed;
    std::uint32_t prime = FieldPrime::kDefault;
    int trials = 50;
    int nmin = 2;
    int nmax = 25;
    int jobs = 1;
    bool generic = true;
    std::string points_file;             // load a point set instead of drawing one
    std::string suite = "all";           // regress: appendix | theorem | final | all
    std::string out;
    std::string log;
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CommandOutcome {
    int exit_code = 0;
    std::string output;                  // written to stdout or --out
    std::vector<ExperimentRecord> records;
};

CommandOutcome cmd_points(const HarnessOptions& opts);
CommandOutcome cmd_hilbert(const HarnessOptions& opts);
CommandOutcome cmd_dh(const HarnessOptions& opts);
CommandOutcome cmd_betti(const HarnessOptions& opts);
CommandOutcome cmd_mrc(const HarnessOptions& opts);
CommandOutcome cmd_vres_intersect(const HarnessOptions& opts);
CommandOutcome cmd_vres_pair(const HarnessOptions& opts);
CommandOutcome cmd_regress(const HarnessOptions& opts);

/// The complex obtained from 31 general points by trimming at (2,4).
FreeComplexShape final_example_shape();

}  // namespace vreslab

#endif
