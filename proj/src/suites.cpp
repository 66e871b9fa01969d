#include "qsand/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qsand/samplers.hpp"

namespace qsand {

namespace {

void require_three_factor(const SuiteConfig& config) {
    if (config.dims.size() != 3) {
        throw std::invalid_argument("suite '" + config.chain +
                                    "' needs exactly three dimensions, got " +
                                    std::to_string(config.dims.size()));
    }
}

DensityMatrix draw_state(const SystemLayout& layout, SeededGenerator& gen, bool regularize) {
    DensityMatrix rho = random_density_matrix(layout, layout.total_dim(), gen);
    return regularize ? rho.regularized() : rho;
}

SlackReport run_trial(const SuiteConfig& config, const SystemLayout& layout,
                      SeededGenerator& gen) {
    if (config.chain == "ssa") {
        return check_ssa(draw_state(layout, gen, config.regularize), config.tolerance);
    }
    if (config.chain == "monotonicity") {
        return check_monotonicity_form(draw_state(layout, gen, config.regularize),
                                       config.tolerance);
    }
    if (config.chain == "sandwich") {
        const DensityMatrix rho = draw_state(layout, gen, config.regularize);
        const DensityMatrix gamma = draw_state(layout, gen, config.regularize);
        const KrausSet ks = config.fixed_channel
                                ? *config.fixed_channel
                                : random_kraus_set(layout.total_dim(), config.kraus_count, gen);
        return check_sandwich(rho, gamma, ks, config.tolerance);
    }
    if (config.chain == "ls-main") {
        const DensityMatrix rho = draw_state(layout, gen, config.regularize);
        const int dim_ab = layout.factor(0).dim * layout.factor(1).dim;
        const KrausSet ks = config.fixed_channel
                                ? *config.fixed_channel
                                : random_kraus_set(dim_ab, config.kraus_count, gen);
        return check_ls_main(rho, ks, config.tolerance);
    }
    if (config.chain == "ls9" || config.chain == "fin-equivalence") {
        const DensityMatrix rho = draw_state(layout, gen, config.regularize);
        KrausSet ks;
        if (config.fixed_channel) {
            ks = *config.fixed_channel;
        } else {
            ks = random_kraus_set(layout.factor(1).dim, config.kraus_count, gen);
            ks.acting_on = layout.factor(1).label;
        }
        return config.chain == "ls9" ? check_ls9(rho, ks, config.tolerance)
                                     : check_fin_equivalence(rho, ks, config.tolerance);
    }
    throw std::invalid_argument("unknown suite '" + config.chain + "'");
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"ssa",     "monotonicity", "sandwich",
                                                "ls-main", "ls9",          "fin-equivalence"};
    return names;
}

SuiteResult run_suite(const SuiteConfig& config) {
    if (config.trials < 1) {
        throw std::invalid_argument("suite needs trials >= 1");
    }
    if (config.kraus_count < 1) {
        throw std::invalid_argument("suite needs kraus_count >= 1");
    }
    if (config.dims.empty()) {
        throw std::invalid_argument("suite needs a dimension list");
    }
    if (config.chain != "sandwich") require_three_factor(config);
    const SystemLayout layout = SystemLayout::of_dims(config.dims);

    SuiteResult result;
    result.config = config;

    std::size_t n_slacks = 0;
    for (int t = 0; t < config.trials; ++t) {
        SeededGenerator gen(SeededGenerator::child_seed(config.seed, static_cast<std::uint64_t>(t)));
        SlackReport report = run_trial(config, layout, gen);
        if (result.term_descriptions.empty()) {
            for (const auto& term : report.terms) {
                result.term_descriptions.push_back(term.description);
            }
            n_slacks = report.slacks.size();
        }

        TrialRow row;
        row.trial = t;
        row.trial_seed = gen.seed();
        for (const auto& term : report.terms) row.terms.push_back(term.value);
        for (double s : report.slacks) row.slacks.push_back(s - config.corrupt_slack);
        result.rows.push_back(std::move(row));
    }

    result.min_slack = std::numeric_limits<double>::infinity();
    result.mean_slack = 0.0;
    result.strict_frequency.assign(n_slacks, 0.0);
    std::size_t slack_count = 0;
    for (const auto& row : result.rows) {
        bool violated = false;
        for (std::size_t i = 0; i < row.slacks.size(); ++i) {
            const double s = row.slacks[i];
            result.min_slack = std::min(result.min_slack, s);
            if (!std::isinf(s)) {
                result.mean_slack += s;
                ++slack_count;
            }
            if (s > kStrictThreshold) result.strict_frequency[i] += 1.0;
            if (s < -config.tolerance) violated = true;
        }
        if (violated) ++result.violations;
    }
    if (slack_count > 0) result.mean_slack /= static_cast<double>(slack_count);
    for (auto& f : result.strict_frequency) f /= static_cast<double>(config.trials);
    return result;
}

} // namespace qsand
