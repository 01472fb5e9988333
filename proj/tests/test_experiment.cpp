#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nhlab/experiment.hpp"
#include "test_support.hpp"

using namespace nhlab;

namespace {

const SweepRow& row_at(const SweepResult& result, double theta0) {
    for (const SweepRow& row : result.rows)
        if (std::abs(row.theta0_deg - theta0) < 1e-9) return row;
    throw std::runtime_error("row not found");
}

}  // namespace

TEST_CASE("noiseless real sweep") {
    ExperimentConfig config = default_experiment_config(ExperimentMode::Real);
    SweepResult result = run_real_sweep(config);
    CHECK(result.rows.size() == 91);

    const SweepRow& zero = row_at(result, 0.0);
    CHECK(std::abs(zero.lhs - 0.546875) < 1e-12);
    CHECK(std::abs(zero.rhs - 0.546875) < 1e-12);

    int flagged = 0;
    for (const SweepRow& row : result.rows) {
        if (row.equality_expected)
            CHECK(std::abs(row.slack) < 1e-10);
        else
            ++flagged;
        CHECK(row.slack >= -1e-10);
    }
    CHECK(flagged == 6);
}

TEST_CASE("noiseless complex sweep") {
    ExperimentConfig config = default_experiment_config(ExperimentMode::Complex);
    SweepResult result = run_complex_sweep(config);
    CHECK(result.rows.size() == 91);
    for (const SweepRow& row : result.rows) {
        CHECK(row.lhs <= 1.0 + 1e-10);
        CHECK(std::abs(row.t22 - 0.625) < 1e-10);
        CHECK(row.rhs == doctest::Approx(1.0));
    }
    const SweepRow& zero = row_at(result, 0.0);
    CHECK(std::abs(zero.t13 - std::sqrt(3.0) / 2.0) < 1e-10);
}

TEST_CASE("mode mismatches are rejected") {
    CHECK_THROWS(run_real_sweep(default_experiment_config(ExperimentMode::Complex)));
    CHECK_THROWS(run_complex_sweep(default_experiment_config(ExperimentMode::Real)));
}

TEST_CASE("noisy sweep columns carry sigmas and stay near the truth") {
    ExperimentConfig config = default_experiment_config(ExperimentMode::Real);
    config.noise = CountingModel{1.0e4, 1.0, 31};
    SweepResult noisy = run_real_sweep(config);
    SweepResult truth = run_real_sweep(default_experiment_config(ExperimentMode::Real));

    for (std::size_t i = 0; i < noisy.rows.size(); ++i) {
        REQUIRE(noisy.rows[i].sigma.has_value());
        const SweepSigmas& sigma = *noisy.rows[i].sigma;
        CHECK(sigma.t23 > 0.0);
        CHECK(std::abs(noisy.rows[i].t23 - truth.rows[i].t23) < 6.0 * sigma.t23 + 1e-6);
    }
}

TEST_CASE("noisy sweep slack is consistent with the propagated sigma") {
    // Over many seeds, |lhs - rhs| <= 3 sigma on ~99% of the rows where the
    // equality actually binds (cos Phi = 1).
    int covered = 0, total = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        ExperimentConfig config = default_experiment_config(ExperimentMode::Real);
        config.noise = CountingModel{1.0e4, 1.0, seed};
        SweepResult result = run_real_sweep(config);
        for (const SweepRow& row : result.rows) {
            if (!row.equality_expected) continue;
            ++total;
            if (std::abs(row.slack) <= 3.0 * row.sigma->slack) ++covered;
        }
    }
    CHECK(total == 40 * 85);
    CHECK(static_cast<double>(covered) / total >= 0.985);
}

TEST_CASE("sweep serialization is deterministic") {
    ExperimentConfig config = default_experiment_config(ExperimentMode::Real);
    config.noise = CountingModel{1.0e4, 0.99, 77};
    std::string csv_a = run_real_sweep(config).to_csv();
    std::string csv_b = run_real_sweep(config).to_csv();
    CHECK(csv_a == csv_b);

    std::string json_a = run_real_sweep(config).to_json().dump(2);
    CHECK(json_a == run_real_sweep(config).to_json().dump(2));

    config.noise->seed = 78;
    CHECK(run_real_sweep(config).to_csv() != csv_a);

    CHECK(csv_a.substr(0, csv_a.find('\n')) ==
          "theta0_deg,T12,T13,T22,T33,T23,lhs,rhs,slack,sigma_T12,sigma_T13,sigma_T22,"
          "sigma_T33,sigma_T23,sigma_lhs,sigma_rhs,sigma_slack");
}

TEST_CASE("fringe run with and without noise") {
    ExperimentConfig config = default_experiment_config(ExperimentMode::Real);
    config.arm_reflect = "I";
    config.arm_transmit = "I";
    FringeRun clean = run_fringe(config);
    CHECK(clean.visibility == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(clean.counts.empty());

    config.noise = CountingModel{1.0e6, 0.9828, 3};
    FringeRun noisy = run_fringe(config);
    CHECK(noisy.counts.size() == noisy.scan.phases.size());
    CHECK(std::abs(noisy.fitted_visibility - 0.9828) < 0.005);

    std::string csv = noisy.to_csv();
    CHECK(csv.substr(0, csv.find('\n')) == "phase_rad,intensity,counts");
    Json sidecar = noisy.sidecar_json();
    CHECK(sidecar["visibility"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("entanglement runner handles the reference cases") {
    const char* base =
        "[entangle]\n"
        "kraus_a_1 = (0,0) (0.70710678118654752,0) (0.70710678118654752,0) (0,0)\n"
        "kraus_a_2 = (0,0) (0,-0.70710678118654752) (0,0.70710678118654752) (0,0)\n"
        "kraus_b_1 = (0,0) (0.70710678118654752,0) (0.70710678118654752,0) (0,0)\n"
        "kraus_b_2 = (0,0) (0,-0.70710678118654752) (0,0.70710678118654752) (0,0)\n";

    Json singlet = run_entanglement(
        ConfigFile::parse_string(std::string(base) + "state = singlet\n"));
    CHECK(singlet["verdict"] == "entangled");
    CHECK(std::abs(singlet["margin"].get<double>() - 1.0) < 1e-9);
    CHECK(singlet["kraus_a"].size() == 2);

    Json product = run_entanglement(ConfigFile::parse_string(
        std::string(base) + "state = product\nket_a = (1,0) (0,0)\nket_b = (1,0) (0,0)\n"));
    CHECK(product["verdict"] == "not violated");

    Json identity = run_entanglement(ConfigFile::parse_string(
        "[entangle]\nkraus_a_1 = (1,0) (0,0) (0,0) (1,0)\n"
        "kraus_b_1 = (1,0) (0,0) (0,0) (1,0)\nstate = singlet\n"));
    CHECK(identity["verdict"] == "not violated");
    CHECK(std::abs(identity["rhs"].get<double>()) < 1e-8);
}

TEST_CASE("noise calibration runner") {
    ExperimentConfig config = default_experiment_config(ExperimentMode::Real);
    config.noise = CountingModel{1.0e4, 1.0, 11};
    Json report = run_noise_calibration(config, 500);
    CHECK(report["trials"] == 500);
    double mc = report["T23"]["mc_sigma"].get<double>();
    double prop = report["T23"]["prop_sigma"].get<double>();
    CHECK(mc > 0.0);
    CHECK(std::abs(mc - prop) / prop < 0.25);

    config.noise.reset();
    CHECK_THROWS(run_noise_calibration(config, 500));
}

TEST_CASE("property suite passes end to end") {
    for (const CheckResult& check : run_property_suite(20240801)) {
        INFO(check.name, ": ", check.detail);
        CHECK(check.pass);
    }
}
