// qsand — batch front end: randomized verification suites, slack-distribution
// exploration, representation tightening, and entropy evaluation on files.
//
// Exit codes: 0 all checks passed, 1 a mathematical check failed, 2 usage or
// input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "qsand/inequalities.hpp"
#include "qsand/io.hpp"
#include "qsand/optimizer.hpp"
#include "qsand/samplers.hpp"
#include "qsand/suites.hpp"

namespace {

using namespace qsand;

constexpr int kExitPass = 0;
constexpr int kExitMathFail = 1;
constexpr int kExitUsage = 2;

void write_text(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write '" + out_path + "'");
    out << content;
}

std::string dims_to_string(const std::vector<int>& dims) {
    std::ostringstream os;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) os << ",";
        os << dims[i];
    }
    return os.str();
}

struct CommonOptions {
    int trials = 0;
    std::vector<int> dims{2, 2, 2};
    int kraus_count = 2;
    std::uint64_t seed = 0;
    double tolerance = tol::slack;
    std::string out_path;
    std::string channel_spec;
    double corrupt_slack = 0.0;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--trials", opt.trials, "number of random trials")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--dims", opt.dims, "factor dimensions, e.g. 2,2,2")
        ->delimiter(',');
    cmd->add_option("--kraus-count", opt.kraus_count, "operators per random Kraus set")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opt.seed, "base seed (required: no wall-clock default)")
        ->required();
    cmd->add_option("--tolerance", opt.tolerance, "slack tolerance")->capture_default_str();
    cmd->add_option("--out", opt.out_path, "write the report here instead of stdout");
    cmd->add_option("--channel", opt.channel_spec,
                    "fixed channel (file or fixture) instead of random Kraus draws");
    // Test hook for the exit-code contract; shifts every slack.
    cmd->add_option("--test-corrupt-slack", opt.corrupt_slack)->group("");
}

SuiteConfig make_config(const std::string& chain, const CommonOptions& opt) {
    SuiteConfig config;
    config.chain = chain;
    config.trials = opt.trials;
    config.dims = opt.dims;
    config.kraus_count = opt.kraus_count;
    config.seed = opt.seed;
    config.tolerance = opt.tolerance;
    config.corrupt_slack = opt.corrupt_slack;
    if (!opt.channel_spec.empty()) config.fixed_channel = load_channel(opt.channel_spec);
    return config;
}

std::string report_header(const std::string& command, const SuiteConfig& config) {
    std::ostringstream os;
    os << "tool: qsand " << kToolVersion << "\n"
       << "command: " << command << "\n"
       << "suite: " << config.chain << "\n"
       << "trials: " << config.trials << "\n"
       << "dims: " << dims_to_string(config.dims) << "\n"
       << "kraus_count: " << config.kraus_count << "\n"
       << "seed: " << config.seed << "\n"
       << "rng: " << SeededGenerator::algorithm() << "\n"
       << "tolerance: " << format_full(config.tolerance) << "\n"
       << "regularization: " << (config.regularize ? format_full(tol::regularize_eps) : "off")
       << "\n"
       << "units: nats\n";
    return os.str();
}

int cmd_verify(const std::string& suite, const CommonOptions& opt) {
    std::vector<std::string> chains;
    if (suite == "all") {
        chains = suite_names();
    } else {
        chains.push_back(suite);
    }

    std::ostringstream report;
    bool all_passed = true;
    for (const auto& chain : chains) {
        const SuiteResult result = run_suite(make_config(chain, opt));
        report << report_header("verify", result.config);
        report << "terms:";
        for (const auto& d : result.term_descriptions) report << " | " << d;
        report << "\n";
        for (const auto& row : result.rows) {
            report << "trial " << row.trial << " seed " << row.trial_seed << ": slacks";
            for (double s : row.slacks) report << " " << format_full(s);
            report << "\n";
        }
        report << "min_slack: " << format_full(result.min_slack) << "\n"
               << "mean_slack: " << format_full(result.mean_slack) << "\n"
               << "violations: " << result.violations << "\n"
               << "verdict: " << (result.violations == 0 ? "PASS" : "FAIL") << "\n\n";
        if (result.violations != 0) all_passed = false;
        std::cerr << "verify " << chain << ": " << (result.violations == 0 ? "PASS" : "FAIL")
                  << " (min slack " << format_value(result.min_slack) << ")\n";
    }
    write_text(opt.out_path, report.str());
    return all_passed ? kExitPass : kExitMathFail;
}

int cmd_explore(const std::string& chain, const CommonOptions& opt) {
    const SuiteResult result = run_suite(make_config(chain, opt));
    const std::size_t n_terms = result.term_descriptions.size();
    const std::size_t n_slacks = result.rows.empty() ? 0 : result.rows.front().slacks.size();

    std::ostringstream csv;
    csv << "# tool=qsand version=" << kToolVersion << " command=explore chain=" << chain
        << "\n";
    csv << "# dims=" << dims_to_string(opt.dims) << " kraus_count=" << opt.kraus_count
        << " trials=" << opt.trials << " seed=" << opt.seed
        << " tolerance=" << format_full(opt.tolerance)
        << " regularization=" << format_full(tol::regularize_eps)
        << " rng=" << SeededGenerator::algorithm() << " units=nats\n";
    csv << "# terms:";
    for (const auto& d : result.term_descriptions) csv << " | " << d;
    csv << "\n";

    csv << "trial,trial_seed";
    for (std::size_t i = 0; i < n_terms; ++i) csv << ",term_" << i;
    for (std::size_t i = 0; i < n_slacks; ++i) csv << ",slack_" << i;
    csv << "\n";
    for (const auto& row : result.rows) {
        csv << row.trial << "," << row.trial_seed;
        for (double t : row.terms) csv << "," << format_full(t);
        for (double s : row.slacks) csv << "," << format_full(s);
        csv << "\n";
    }
    csv << "# summary min_slack=" << format_full(result.min_slack)
        << " mean_slack=" << format_full(result.mean_slack)
        << " strict_threshold=" << format_full(kStrictThreshold);
    for (std::size_t i = 0; i < result.strict_frequency.size(); ++i) {
        csv << " strict_frequency_" << i << "=" << format_full(result.strict_frequency[i]);
    }
    csv << "\n";

    write_text(opt.out_path, csv.str());
    std::cerr << "explore " << chain << ": " << opt.trials << " trials, min slack "
              << format_value(result.min_slack) << ", violations " << result.violations
              << "\n";
    return result.violations == 0 ? kExitPass : kExitMathFail;
}

struct TightenOptions {
    std::string channel_spec;
    std::string chain = "sandwich";
    std::string direction;
    std::string rho_spec;
    std::string gamma_spec;
    std::string state_spec;
    int budget = 300;
    int restarts = 3;
    std::uint64_t seed = 0;
    std::string out_path;
};

int cmd_tighten(const TightenOptions& opt) {
    const bool sandwich = opt.chain == "sandwich";
    if (sandwich && (opt.rho_spec.empty() || opt.gamma_spec.empty())) {
        throw ParseError("tighten sandwich needs --rho and --gamma");
    }
    if (!sandwich && opt.state_spec.empty()) {
        throw ParseError("tighten " + opt.chain + " needs --state");
    }

    RemixObjective obj{direction_from_name(opt.direction), chain_kind_from_name(opt.chain),
                       load_channel(opt.channel_spec),
                       load_state(sandwich ? opt.rho_spec : opt.state_spec), std::nullopt};
    if (sandwich) {
        obj.gamma = load_state(opt.gamma_spec);
        // A subsystem-local channel spec is lifted to the full state space.
        if (obj.base.dim() != obj.rho.dim() && !obj.base.acting_on.empty() &&
            obj.rho.layout().has_label(obj.base.acting_on)) {
            obj.base = embed_on_subsystem(obj.base, obj.rho.layout());
        }
    }

    SeededGenerator gen(opt.seed);
    const RemixTrace trace = tighten(obj, opt.budget, opt.restarts, gen);

    nlohmann::json j;
    j["tool_version"] = kToolVersion;
    j["command"] = "tighten";
    j["chain"] = to_string(obj.chain);
    j["direction"] = to_string(obj.direction);
    j["seed"] = trace.seed;
    j["rng"] = trace.rng_algorithm;
    j["budget"] = opt.budget;
    j["restarts"] = opt.restarts;
    j["budget_used"] = trace.budget_used;
    j["units"] = "nats";
    j["baseline_middle"] = trace.baseline_value;
    j["best_middle"] = trace.best_value;
    j["outer_lower"] = trace.outer_lower;
    j["outer_upper"] = trace.outer_upper;
    j["best_params"] = trace.best_params;
    j["best_unitary"] = matrix_to_json(trace.best_unitary);
    nlohmann::json values = nlohmann::json::array();
    for (const auto& e : trace.evaluations) values.push_back(e.value);
    j["objective_values"] = std::move(values);

    write_text(opt.out_path, j.dump(2) + "\n");
    std::cerr << "tighten " << to_string(obj.chain) << " " << to_string(obj.direction)
              << ": baseline " << format_value(trace.baseline_value) << ", best "
              << format_value(trace.best_value) << " in " << trace.budget_used
              << " evaluations\n";
    return kExitPass;
}

struct EntropyOptions {
    std::string quantity;
    std::string state_spec;
    std::string gamma_spec;
    std::vector<std::string> keep;
    std::string target;
    std::vector<std::string> rest;
};

int cmd_entropy(const EntropyOptions& opt) {
    DensityMatrix rho = load_state(opt.state_spec);
    if (!opt.keep.empty()) rho = rho.keeping(opt.keep);

    double value = 0.0;
    if (opt.quantity == "S") {
        value = von_neumann_entropy(rho);
    } else if (opt.quantity == "H") {
        if (opt.gamma_spec.empty()) throw ParseError("entropy H needs --gamma");
        DensityMatrix gamma = load_state(opt.gamma_spec);
        if (!opt.keep.empty()) gamma = gamma.keeping(opt.keep);
        value = relative_entropy(rho, gamma);
    } else if (opt.quantity == "conditional") {
        if (opt.target.empty()) throw ParseError("entropy conditional needs --target");
        std::vector<std::string> rest = opt.rest;
        if (rest.empty()) {
            for (const auto& l : rho.layout().labels()) {
                if (l != opt.target) rest.push_back(l);
            }
        }
        value = conditional_entropy(rho, opt.target, rest);
    } else {
        throw ParseError("unknown quantity '" + opt.quantity + "' (expected S, H or conditional)");
    }
    std::cout << format_value(value) << "\n";
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropy-inequality chains, flagged channels and Kraus-remix bounds"};
    app.set_version_flag("--version", std::string("qsand ") + kToolVersion);
    app.require_subcommand(1);

    std::string verify_suite;
    CommonOptions verify_opt;
    auto* verify = app.add_subcommand("verify", "run a randomized inequality suite");
    {
        auto names = suite_names();
        names.push_back("all");
        verify->add_option("suite", verify_suite, "one of ssa, monotonicity, sandwich, ls-main, ls9, fin-equivalence, all")
            ->required()
            ->check(CLI::IsMember(names));
    }
    add_common(verify, verify_opt);

    std::string explore_chain;
    CommonOptions explore_opt;
    auto* explore = app.add_subcommand("explore", "sample slack distributions to CSV");
    explore->add_option("chain", explore_chain, "inequality chain to sample")
        ->required()
        ->check(CLI::IsMember(suite_names()));
    add_common(explore, explore_opt);

    TightenOptions tighten_opt;
    auto* tighten_cmd = app.add_subcommand("tighten", "search Kraus remixes for tighter bounds");
    tighten_cmd->add_option("--channel", tighten_opt.channel_spec, "base channel (file or fixture)")
        ->required();
    tighten_cmd->add_option("--chain", tighten_opt.chain, "sandwich, ls-main or ls9")
        ->check(CLI::IsMember({"sandwich", "ls-main", "ls9"}));
    tighten_cmd->add_option("--direction", tighten_opt.direction, "maximize or minimize the middle term")
        ->required();
    tighten_cmd->add_option("--rho", tighten_opt.rho_spec, "first state (sandwich)");
    tighten_cmd->add_option("--gamma", tighten_opt.gamma_spec, "second state (sandwich)");
    tighten_cmd->add_option("--state", tighten_opt.state_spec, "three-factor state (ls-main, ls9)");
    tighten_cmd->add_option("--budget", tighten_opt.budget, "total objective evaluations")->capture_default_str()
        ->check(CLI::PositiveNumber);
    tighten_cmd->add_option("--restarts", tighten_opt.restarts, "search restarts")->capture_default_str()
        ->check(CLI::PositiveNumber);
    tighten_cmd->add_option("--seed", tighten_opt.seed, "seed for restart points")->required();
    tighten_cmd->add_option("--out", tighten_opt.out_path, "write the JSON report here");

    EntropyOptions entropy_opt;
    auto* entropy_cmd = app.add_subcommand("entropy", "evaluate S, H or conditional entropy");
    entropy_cmd->add_option("quantity", entropy_opt.quantity, "S, H or conditional")->required();
    entropy_cmd->add_option("--state", entropy_opt.state_spec, "state file or fixture")
        ->required();
    entropy_cmd->add_option("--gamma", entropy_opt.gamma_spec, "second state for H");
    entropy_cmd->add_option("--keep", entropy_opt.keep, "restrict to these factors first")
        ->delimiter(',');
    entropy_cmd->add_option("--target", entropy_opt.target, "conditioned factor");
    entropy_cmd->add_option("--rest", entropy_opt.rest, "conditioning factors")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (verify->parsed()) return cmd_verify(verify_suite, verify_opt);
        if (explore->parsed()) return cmd_explore(explore_chain, explore_opt);
        if (tighten_cmd->parsed()) return cmd_tighten(tighten_opt);
        if (entropy_cmd->parsed()) return cmd_entropy(entropy_opt);
        std::cerr << "no subcommand\n";
        return kExitUsage;
    } catch (const consistency_error& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return kExitMathFail;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
