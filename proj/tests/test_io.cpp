#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "helpers.hpp"
#include "qsand/io.hpp"
#include "qsand/samplers.hpp"
#include "qsand/suites.hpp"

using namespace qsand;
using namespace qsand::testing;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = std::string("/tmp/qsand_io_") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

} // namespace

TEST_CASE("built-in fixtures") {
    const DensityMatrix bell = fixture_state("bell", {});
    CHECK(von_neumann_entropy(bell) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(von_neumann_entropy(bell.keeping({"A"})) == doctest::Approx(kLn2).epsilon(1e-9));

    const DensityMatrix ghz = fixture_state("ghz", {});
    CHECK(ghz.layout().to_string() == "A:2,B:2,C:2");
    CHECK(max_abs_diff(ghz.matrix(), ghz_state().matrix()) <= 1e-12);

    const DensityMatrix qutrit_ghz = fixture_state("ghz", {3, 3});
    CHECK(von_neumann_entropy(qutrit_ghz.keeping({"A"})) ==
          doctest::Approx(std::log(3.0)).epsilon(1e-9));

    const DensityMatrix product = fixture_state("product", {2, 3, 2});
    CHECK(check_ssa(product).slacks[0] == doctest::Approx(0.0).epsilon(1e-9));

    CHECK(validate_kraus(fixture_channel("dephasing", 3, "B")).pass);
    CHECK(fixture_channel("dephasing", 3, "B").count() == 3);
    CHECK(fixture_channel("identity", 4, "").count() == 1);
    CHECK_THROWS_AS(fixture_state("nope", {}), ParseError);
    CHECK_THROWS_AS(fixture_channel("nope", 2, ""), ParseError);
}

TEST_CASE("fixture shorthand strings") {
    CHECK(load_state("bell").layout().to_string() == "A:2,B:2");
    CHECK(load_state("ghz:3,3").layout().to_string() == "A:3,B:3");
    CHECK(load_channel("dephasing:3@B").acting_on == "B");
    CHECK(load_channel("identity:4").dim() == 4);
}

TEST_CASE("state files round-trip") {
    SeededGenerator gen(90);
    const DensityMatrix rho = random_density_matrix(SystemLayout({{"A", 2}, {"B", 2}}), 4, gen);

    nlohmann::json j;
    j["layout"] = nlohmann::json::array({{"A", 2}, {"B", 2}});
    j["matrix"] = matrix_to_json(rho.matrix());
    const std::string path = write_temp("state.json", j.dump());

    const DensityMatrix loaded = load_state(path);
    CHECK(max_abs_diff(loaded.matrix(), rho.matrix()) <= 1e-15);
    CHECK(loaded.layout() == rho.layout());
}

TEST_CASE("channel files round-trip and refuse incomplete sets") {
    SeededGenerator gen(91);
    const KrausSet ks = random_kraus_set(2, 2, gen);

    nlohmann::json j;
    j["d"] = 2;
    j["m"] = 2;
    j["acting_on"] = "B";
    j["operators"] = nlohmann::json::array({matrix_to_json(ks.operators[0]),
                                            matrix_to_json(ks.operators[1])});
    const std::string path = write_temp("channel.json", j.dump());
    const KrausSet loaded = load_channel(path);
    CHECK(loaded.acting_on == "B");
    CHECK(max_abs_diff(loaded.operators[0], ks.operators[0]) <= 1e-15);

    // Halving one operator breaks completeness: the loader must refuse.
    nlohmann::json bad = j;
    bad["operators"][0] = matrix_to_json(ComplexMatrix(0.5 * ks.operators[0]));
    const std::string bad_path = write_temp("bad_channel.json", bad.dump());
    CHECK_THROWS_AS(load_channel(bad_path), ParseError);
}

TEST_CASE("malformed documents raise ParseError") {
    CHECK_THROWS_AS(load_state("/tmp/qsand_io_does_not_exist.json"), ParseError);
    const std::string garbage = write_temp("garbage.json", "not json {");
    CHECK_THROWS_AS(load_state(garbage), ParseError);
    const std::string empty = write_temp("empty.json", "{}");
    CHECK_THROWS_AS(load_state(empty), ParseError);
    CHECK_THROWS_AS(load_channel(empty), ParseError);
    const std::string ragged = write_temp(
        "ragged.json", R"({"layout": [["A",2]], "matrix": [[[1,0],[0,0]],[[0,0]]]})");
    CHECK_THROWS_AS(load_state(ragged), ParseError);
}

TEST_CASE("format_full round-trips doubles exactly") {
    for (double v : {0.1, 1.0 / 3.0, 6.93147180559945286e-01, 1e-300, 12345.6789}) {
        CHECK(std::strtod(format_full(v).c_str(), nullptr) == v);
    }
}

TEST_CASE("suites: fixed channel and corruption hook") {
    SuiteConfig config;
    config.chain = "ls9";
    config.trials = 5;
    config.dims = {2, 2, 2};
    config.seed = 17;
    config.fixed_channel = fixture_channel("identity", 2, "B");
    const SuiteResult result = run_suite(config);
    CHECK(result.violations == 0);
    for (const auto& row : result.rows) {
        CHECK(row.slacks[0] == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(row.slacks[1] == doctest::Approx(0.0).epsilon(1e-9));
    }

    SuiteConfig corrupted;
    corrupted.chain = "ssa";
    corrupted.trials = 5;
    corrupted.dims = {2, 2, 2};
    corrupted.seed = 17;
    corrupted.corrupt_slack = 10.0;
    CHECK(run_suite(corrupted).violations == 5);

    SuiteConfig bad;
    bad.chain = "ssa";
    bad.trials = 0;
    bad.dims = {2, 2, 2};
    CHECK_THROWS_AS(run_suite(bad), std::invalid_argument);
    bad.trials = 3;
    bad.dims = {2, 2};
    CHECK_THROWS_AS(run_suite(bad), std::invalid_argument);
}

TEST_CASE("suite rows are independent of other trials") {
    SuiteConfig config;
    config.chain = "sandwich";
    config.trials = 6;
    config.dims = {2};
    config.seed = 23;
    const SuiteResult full = run_suite(config);

    SuiteConfig shorter = config;
    shorter.trials = 3;
    const SuiteResult prefix = run_suite(shorter);
    for (int t = 0; t < 3; ++t) {
        CHECK(full.rows[t].trial_seed == prefix.rows[t].trial_seed);
        CHECK(full.rows[t].slacks == prefix.rows[t].slacks);
    }
}
