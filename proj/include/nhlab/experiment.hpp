#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "nhlab/config.hpp"
#include "nhlab/entanglement.hpp"
#include "nhlab/uncertainty.hpp"

namespace nhlab {

using Json = nlohmann::ordered_json;

/// Per-column standard deviations for a noisy sweep row, from the variance
/// transfer formula with the shared-normalization covariance included.
struct SweepSigmas {
    double t12 = 0.0, t13 = 0.0, t22 = 0.0, t33 = 0.0, t23 = 0.0;
    double lhs = 0.0, rhs = 0.0, slack = 0.0;
};

struct SweepRow {
    double theta0_deg = 0.0;
    double t12 = 0.0, t13 = 0.0, t22 = 0.0, t33 = 0.0, t23 = 0.0;
    double lhs = 0.0, rhs = 0.0, slack = 0.0;
    double phase_phi = 0.0;
    bool equality_expected = false;
    std::optional<SweepSigmas> sigma;
};

struct SweepResult {
    ExperimentMode mode = ExperimentMode::Real;
    std::vector<SweepRow> rows;

    std::string to_csv() const;
    Json to_json() const;
};

/// Equality sweep with real operators: per theta0, the five overlap
/// magnitudes and both sides of the real-case identity. With noise enabled
/// the magnitudes come from simulated peak/trough counts (row-seeded).
SweepResult run_real_sweep(const ExperimentConfig& config);

/// Bound sweep with complex operators: lhs of the normalized qubit relation
/// against rhs = 1.
SweepResult run_complex_sweep(const ExperimentConfig& config);

struct FringeRun {
    FringeScan scan;
    std::vector<std::int64_t> counts;  // empty when noise is off
    double visibility = 0.0;           // ideal (n_max - n_min) / (n_max + n_min)
    double fitted_visibility = 0.0;    // from counts; equals `visibility` when noise is off
    double fitted_n_max = 0.0;
    double fitted_n_min = 0.0;

    std::string to_csv() const;
    Json sidecar_json() const;
};

FringeRun run_fringe(const ExperimentConfig& config);

/// Channels/state parsed from [entangle]; returns the full separability report.
Json run_entanglement(const ConfigFile& file);

/// errorbar_pipeline against the configured operators and noise model.
Json run_noise_calibration(const ExperimentConfig& config, int trials);

/// One named pass/fail line of the `verify` property suite.
struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Reduced-count property suite behind the CLI `verify` subcommand.
std::vector<CheckResult> run_property_suite(std::uint64_t seed);

}  // namespace nhlab
