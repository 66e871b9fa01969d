// Acceptance suite: one test case per release criterion, each printing a
// single PASS/FAIL line. Criteria 8 and 9 drive the installed CLI binary.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "helpers.hpp"
#include "qsand/inequalities.hpp"
#include "qsand/io.hpp"
#include "qsand/optimizer.hpp"
#include "qsand/samplers.hpp"
#include "qsand/suites.hpp"

using namespace qsand;
using namespace qsand::testing;

// Records the verdict while keeping doctest's bookkeeping.
#define ACHECK(cond)                                                                       \
    do {                                                                                   \
        const bool acheck_ok_ = static_cast<bool>(cond);                                   \
        CHECK(acheck_ok_);                                                                 \
        ok = ok && acheck_ok_;                                                             \
    } while (0)

namespace {

void report(int number, const std::string& name, bool ok) {
    std::cout << "criterion " << number << " (" << name << "): " << (ok ? "PASS" : "FAIL")
              << std::endl;
}

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string capture = "/tmp/qsand_acceptance_cli_" + std::to_string(counter++) + ".log";
    const std::string command = std::string(QSAND_CLI_PATH) + " " + args + " > " + capture + " 2>&1";
    const int raw = std::system(command.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(capture);
    std::stringstream ss;
    ss << in.rdbuf();
    result.output = ss.str();
    return result;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

} // namespace

TEST_CASE("criterion 1: ssa suite") {
    bool ok = true;
    const auto started = std::chrono::steady_clock::now();

    SuiteConfig config;
    config.chain = "ssa";
    config.trials = 1000;
    config.dims = {2, 2, 2};
    config.seed = 1001;
    SuiteResult result = run_suite(config);
    ACHECK(result.violations == 0);
    ACHECK(result.min_slack >= -1e-9);

    config.trials = 200;
    config.dims = {2, 3, 2};
    config.seed = 1002;
    result = run_suite(config);
    ACHECK(result.violations == 0);
    ACHECK(result.min_slack >= -1e-9);

    ACHECK(std::abs(check_ssa(ghz_state()).slacks[0] - kLn2) <= 1e-9);
    ACHECK(std::abs(check_ssa(fixture_state("product", {2, 2, 2})).slacks[0]) <= 1e-9);

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    ACHECK(seconds < 30.0);

    report(1, "ssa suite", ok);
}

TEST_CASE("criterion 2: conditional-entropy identity") {
    bool ok = true;
    SeededGenerator gen(2001);
    for (int rep = 0; rep < 500; ++rep) {
        const SystemLayout layout = rep % 2 == 0 ? SystemLayout::of_dims({2, 2, 2})
                                                 : SystemLayout::of_dims({2, 3});
        const DensityMatrix rho =
            random_density_matrix(layout, layout.total_dim(), gen).regularized();
        const auto labels = layout.labels();
        const std::string target = labels[static_cast<std::size_t>(rep) % labels.size()];
        std::vector<std::string> rest;
        for (const auto& l : labels) {
            if (l != target) rest.push_back(l);
        }
        const double direct = conditional_entropy(rho, target, rest);
        const double rewritten = conditional_via_relative(rho, target, rest);
        ACHECK(std::abs(direct - rewritten) <= 1e-9);
    }
    report(2, "conditional-entropy identity", ok);
}

TEST_CASE("criterion 3: dilation contract") {
    bool ok = true;
    SeededGenerator gen(3001);
    for (int rep = 0; rep < 500; ++rep) {
        const int d = rep % 2 == 0 ? 2 : 3;
        const int m = rep % 4 < 2 ? 2 : 3;
        const DensityMatrix rho = random_density_matrix(d, d, gen);
        const DensityMatrix gamma = random_density_matrix(d, d, gen);
        const KrausSet ks = random_kraus_set(d, m, gen);

        const DilationResult dil = build_dilation(ks, rho);
        ACHECK(isometry_deviation(dil.isometry) <= 1e-10);
        ACHECK(max_abs_diff(dil.sigma.trace_out({dil.env_label}).matrix(),
                            apply_ls_channel(ks, rho).matrix()) <= 1e-10);
        ACHECK(max_abs_diff(dil.sigma.trace_out({dil.flag_label, dil.env_label}).matrix(),
                            apply_channel(ks, rho).matrix()) <= 1e-10);
        ACHECK(std::abs(von_neumann_entropy(dil.sigma) - von_neumann_entropy(rho)) <= 1e-9);

        const DilationResult dil_gamma = build_dilation(ks, gamma);
        ACHECK(std::abs(relative_entropy(dil.sigma, dil_gamma.sigma) -
                        relative_entropy(rho, gamma)) <= 1e-9);
    }
    report(3, "dilation contract", ok);
}

TEST_CASE("criterion 4: sandwich inequality") {
    bool ok = true;
    SeededGenerator gen(4001);
    for (int rep = 0; rep < 1000; ++rep) {
        const int d = rep % 2 == 0 ? 2 : 3;
        const int m = rep % 4 < 2 ? 2 : 3;
        const DensityMatrix rho = random_density_matrix(d, d, gen).regularized();
        const DensityMatrix gamma = random_density_matrix(d, d, gen).regularized();
        const SlackReport r = check_sandwich(rho, gamma, random_kraus_set(d, m, gen));
        ACHECK(r.slacks[0] >= -1e-9);
        ACHECK(r.slacks[1] >= -1e-9);
    }

    const DensityMatrix rho = random_density_matrix(2, 2, gen);
    const DensityMatrix gamma = random_density_matrix(2, 2, gen);
    const KrausSet unitary{{random_unitary(2, gen)}, ""};
    const SlackReport rev = check_sandwich(rho, gamma, unitary);
    ACHECK(std::abs(rev.terms[0].value - rev.terms[2].value) <= 1e-9);
    ACHECK(std::abs(rev.terms[1].value - rev.terms[2].value) <= 1e-9);

    const SlackReport deph = check_sandwich(
        plus_state(), maximally_mixed(SystemLayout::of_dims({2})), fixture_channel("dephasing", 2, ""));
    ACHECK(std::abs(deph.terms[0].value - 0.0) <= 1e-9);
    ACHECK(std::abs(deph.terms[1].value - 0.0) <= 1e-9);
    ACHECK(std::abs(deph.terms[2].value - kLn2) <= 1e-9);

    report(4, "sandwich inequality", ok);
}

TEST_CASE("criterion 5: entropy-difference chains") {
    bool ok = true;
    SeededGenerator gen(5001);

    for (int rep = 0; rep < 500; ++rep) {
        const SystemLayout layout = SystemLayout::of_dims({2, 2, 2});
        const DensityMatrix rho = random_density_matrix(layout, 8, gen).regularized();
        const SlackReport r = check_ls_main(rho, random_kraus_set(4, 2 + rep % 2, gen));
        ACHECK(r.slacks[0] >= -1e-9);
        ACHECK(r.slacks[1] >= -1e-9);
    }
    for (int rep = 0; rep < 500; ++rep) {
        const std::vector<int> dims = rep % 2 == 0 ? std::vector<int>{2, 2, 2}
                                                   : std::vector<int>{2, 3, 2};
        const SystemLayout layout = SystemLayout::of_dims(dims);
        const DensityMatrix rho =
            random_density_matrix(layout, layout.total_dim(), gen).regularized();
        KrausSet ks = random_kraus_set(dims[1], 2 + rep % 2, gen);
        ks.acting_on = "B";
        const SlackReport r = check_ls9(rho, ks);
        ACHECK(r.slacks[0] >= -1e-9);
        ACHECK(r.slacks[1] >= -1e-9);
        ACHECK(r.slacks[2] >= -1e-9);
    }

    // Identity fixtures: zero slacks / collapsed middle.
    const SystemLayout layout = SystemLayout::of_dims({2, 2, 2});
    const DensityMatrix rho = random_density_matrix(layout, 8, gen).regularized();
    const SlackReport main_id = check_ls_main(rho, KrausSet{{ComplexMatrix::Identity(4, 4)}, ""});
    ACHECK(std::abs(main_id.slacks[0]) <= 1e-9);
    ACHECK(std::abs(main_id.slacks[1]) <= 1e-9);

    const SlackReport ls9_id = check_ls9(rho, KrausSet{{ComplexMatrix::Identity(2, 2)}, "B"});
    ACHECK(std::abs(ls9_id.terms[0].value - ls9_id.terms[1].value) <= 1e-9);
    ACHECK(std::abs(ls9_id.terms[1].value - ls9_id.terms[2].value) <= 1e-9);

    report(5, "entropy-difference chains", ok);
}

TEST_CASE("criterion 6: relative-entropy form equivalence") {
    bool ok = true;
    SeededGenerator gen(6001);
    for (int rep = 0; rep < 300; ++rep) {
        const SystemLayout layout = SystemLayout::of_dims({2, 2, 2});
        const DensityMatrix rho = random_density_matrix(layout, 8, gen).regularized();
        KrausSet ks = random_kraus_set(2, 2 + rep % 2, gen);
        ks.acting_on = "B";

        const SlackReport fin = check_fin_equivalence(rho, ks);
        const SlackReport ls9 = check_ls9(rho, ks);
        ACHECK(std::abs(fin.slacks[1] - (ls9.terms[1].value - ls9.terms[0].value)) <= 1e-9);
        ACHECK(std::abs(fin.slacks[0] - (ls9.terms[3].value - ls9.terms[1].value)) <= 1e-9);
    }
    report(6, "relative-entropy form equivalence", ok);
}

TEST_CASE("criterion 7: optimizer contract") {
    bool ok = true;
    SeededGenerator gen(7001);
    for (int problem = 0; problem < 50; ++problem) {
        const int m = problem % 2 == 0 ? 2 : 3;
        RemixObjective obj{Direction::MaximizeMiddle, ChainKind::Sandwich,
                           random_kraus_set(2, m, gen),
                           random_density_matrix(2, 2, gen).regularized(),
                           random_density_matrix(2, 2, gen).regularized()};

        SeededGenerator s_max(9000 + static_cast<std::uint64_t>(problem));
        const RemixTrace up = tighten(obj, 300, 3, s_max);

        RemixObjective down = obj;
        down.direction = Direction::MinimizeMiddle;
        SeededGenerator s_min(9000 + static_cast<std::uint64_t>(problem));
        const RemixTrace low = tighten(down, 300, 3, s_min);

        ACHECK(up.best_value >= up.baseline_value - 1e-12);
        ACHECK(low.best_value <= low.baseline_value + 1e-12);
        ACHECK(up.baseline_value == low.baseline_value);

        // Every evaluated remix stays inside the w-independent bounds and
        // leaves the plain channel untouched.
        const DensityMatrix probe = random_density_matrix(2, 2, gen);
        const DensityMatrix base_out = apply_channel(obj.base, probe);
        for (const auto& e : up.evaluations) {
            ACHECK(e.value - up.outer_lower >= -1e-9);
            ACHECK(up.outer_upper - e.value >= -1e-9);
            const KrausSet remixed = remix_kraus(obj.base, parametrize_unitary(e.params));
            ACHECK(max_abs_diff(apply_channel(remixed, probe).matrix(), base_out.matrix()) <=
                   1e-9);
        }

        // Same seed, same trace.
        SeededGenerator s_again(9000 + static_cast<std::uint64_t>(problem));
        const RemixTrace again = tighten(obj, 300, 3, s_again);
        bool identical = again.evaluations.size() == up.evaluations.size();
        if (identical) {
            for (std::size_t i = 0; i < again.evaluations.size(); ++i) {
                identical = identical &&
                            again.evaluations[i].value == up.evaluations[i].value &&
                            again.evaluations[i].params == up.evaluations[i].params;
            }
        }
        ACHECK(identical);
        ACHECK(again.best_value == up.best_value);
    }
    report(7, "optimizer contract", ok);
}

TEST_CASE("criterion 8: strictness measurement") {
    bool ok = true;
    const std::string csv_path = "/tmp/qsand_acceptance_strictness.csv";
    std::remove(csv_path.c_str());
    const CliResult run = run_cli(
        "explore ls-main --trials 500 --dims 2,2,2 --kraus-count 2 --seed 8001 --out " +
        csv_path);
    ACHECK(run.exit_code == 0);

    std::ifstream in(csv_path);
    ACHECK(static_cast<bool>(in));
    int data_rows = 0;
    bool header_seen = false;
    bool summary_seen = false;
    double freq_12b = -1.0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# summary", 0) == 0) {
            summary_seen = true;
            // The second slack of the chain is the strictness target.
            const std::string key = "strict_frequency_1=";
            const auto pos = line.find(key);
            ACHECK(pos != std::string::npos);
            if (pos != std::string::npos) {
                freq_12b = std::strtod(line.c_str() + pos + key.size(), nullptr);
            }
            continue;
        }
        if (line.rfind("#", 0) == 0) continue;
        if (!header_seen) {
            header_seen = true;
            ACHECK(line == "trial,trial_seed,term_0,term_1,term_2,slack_0,slack_1");
            continue;
        }
        ++data_rows;
    }
    ACHECK(data_rows == 500);
    ACHECK(summary_seen);
    // The frequency itself carries no pass/fail threshold; it only has to be
    // a well-formed probability.
    ACHECK(freq_12b >= 0.0);
    ACHECK(freq_12b <= 1.0);
    std::cout << "  (empirical strictness frequency of the second slack: " << freq_12b << ")\n";

    report(8, "strictness measurement", ok);
}

TEST_CASE("criterion 9: CLI exit codes and CSV round-trip") {
    bool ok = true;

    const CliResult pass =
        run_cli("verify ssa --trials 50 --dims 2,2,2 --seed 9001 --out /dev/null");
    ACHECK(pass.exit_code == 0);

    const CliResult corrupted = run_cli(
        "verify ssa --trials 50 --dims 2,2,2 --seed 9001 --test-corrupt-slack 1.0 --out "
        "/dev/null");
    ACHECK(corrupted.exit_code == 1);

    const std::string malformed_path = "/tmp/qsand_acceptance_malformed.json";
    {
        std::ofstream bad(malformed_path);
        bad << "this is not json";
    }
    const CliResult malformed = run_cli("entropy S --state " + malformed_path);
    ACHECK(malformed.exit_code == 2);

    const CliResult bad_usage = run_cli("verify ssa --trials 0 --dims 2,2,2 --seed 9001");
    ACHECK(bad_usage.exit_code == 2);

    // CSV round-trip: recompute the summary statistics from the data rows.
    const std::string csv_path = "/tmp/qsand_acceptance_roundtrip.csv";
    std::remove(csv_path.c_str());
    const CliResult explore = run_cli(
        "explore sandwich --trials 100 --dims 2 --kraus-count 2 --seed 9002 --out " + csv_path);
    ACHECK(explore.exit_code == 0);

    std::ifstream in(csv_path);
    ACHECK(static_cast<bool>(in));
    std::string line;
    bool header_skipped = false;
    double min_slack = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    long count = 0;
    std::vector<int> strict_counts;
    int rows = 0;
    double reported_min = NAN, reported_mean = NAN;
    std::vector<double> reported_freq;
    while (std::getline(in, line)) {
        if (line.rfind("# summary", 0) == 0) {
            for (const auto& field : split(line.substr(2), ' ')) {
                const auto eq = field.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = field.substr(0, eq);
                const double value = std::strtod(field.c_str() + eq + 1, nullptr);
                if (key == "min_slack") reported_min = value;
                if (key == "mean_slack") reported_mean = value;
                if (key.rfind("strict_frequency_", 0) == 0) reported_freq.push_back(value);
            }
            continue;
        }
        if (line.rfind("#", 0) == 0) continue;
        if (!header_skipped) {
            header_skipped = true;
            continue;
        }
        const auto fields = split(line, ',');
        ACHECK(fields.size() == 2 + 3 + 2); // trial, seed, three terms, two slacks
        ++rows;
        if (strict_counts.empty()) strict_counts.assign(2, 0);
        for (std::size_t i = 5; i < fields.size(); ++i) {
            const double s = std::strtod(fields[i].c_str(), nullptr);
            min_slack = std::min(min_slack, s);
            if (!std::isinf(s)) {
                sum += s;
                ++count;
            }
            if (s > kStrictThreshold) ++strict_counts[i - 5];
        }
    }
    ACHECK(rows == 100);
    const double mean = sum / static_cast<double>(count);
    ACHECK(min_slack == reported_min);
    ACHECK(mean == reported_mean);
    ACHECK(reported_freq.size() == strict_counts.size());
    for (std::size_t i = 0; i < reported_freq.size(); ++i) {
        ACHECK(static_cast<double>(strict_counts[i]) / 100.0 == reported_freq[i]);
    }

    report(9, "CLI exit codes and CSV round-trip", ok);
}
