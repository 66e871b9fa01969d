// Randomized property suites behind the verify/explore commands: seeded
// per-trial draws, slack collection, summary statistics. Each trial derives
// its own child generator from (seed, trial index), so results do not depend
// on how trials are sharded across workers.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsand/channels.hpp"
#include "qsand/inequalities.hpp"

namespace qsand {

// Threshold used for the strictness frequency (fraction of trials whose
// slack exceeds it).
inline constexpr double kStrictThreshold = 1e-6;

struct SuiteConfig {
    std::string chain; // ssa | monotonicity | sandwich | ls-main | ls9 | fin-equivalence
    int trials = 0;
    std::vector<int> dims;
    int kraus_count = 2;
    std::uint64_t seed = 0;
    double tolerance = tol::slack;
    bool regularize = true;
    double corrupt_slack = 0.0;             // test hook, subtracted from every slack
    std::optional<KrausSet> fixed_channel;  // overrides the random Kraus draw
};

struct TrialRow {
    int trial = 0;
    std::uint64_t trial_seed = 0;
    std::vector<double> terms;
    std::vector<double> slacks;
};

struct SuiteResult {
    SuiteConfig config;
    std::vector<std::string> term_descriptions;
    std::vector<TrialRow> rows;
    double min_slack = 0.0;
    double mean_slack = 0.0;
    std::vector<double> strict_frequency; // per slack position
    int violations = 0;
};

const std::vector<std::string>& suite_names();

SuiteResult run_suite(const SuiteConfig& config);

} // namespace qsand
