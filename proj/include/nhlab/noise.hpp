#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nhlab/interferometer.hpp"

namespace nhlab {

/// Child RNG derived from (seed, stream index); independent streams make
/// Monte-Carlo results order-independent.
std::mt19937_64 make_child_rng(std::uint64_t seed, std::uint64_t stream);

/// Poisson draw; mean <= 0 yields 0.
std::int64_t poisson_draw(std::mt19937_64& rng, double mean);

/// Photon-counting model. Counts at each phase point are Poisson with mean
/// rate_scale * I~(theta), where I~ is the ideal fringe with its amplitude
/// scaled by visibility_factor about the fringe mean (the single-parameter
/// contrast imperfection). rate_scale = 0 is the degenerate noiseless limit
/// (all counts zero).
struct CountingModel {
    double rate_scale = 1.0e4;
    double visibility_factor = 1.0;
    std::uint64_t seed = 0;
};

void validate(const CountingModel& model);

/// Fringe intensity with the contrast imperfection applied.
double degraded_intensity(const FringeScan& scan, std::size_t index,
                          const CountingModel& model);

/// One Poisson count per phase point; identical seeds give identical streams.
std::vector<std::int64_t> sample_counts(const FringeScan& scan, const CountingModel& model);

/// Variance transfer: sigma^2(y) = sum_i d_i^2 s2_i + 2 sum_{i<j} d_i d_j cov_ij.
double propagate_variance(const std::vector<double>& partials,
                          const std::vector<double>& sigmas2,
                          const Eigen::MatrixXd& covariances);

/// A measured value with its variance.
struct MeasuredQuantity {
    double mean = 0.0;
    double variance = 0.0;
};

struct ErrorBudget {
    enum class Method { Propagation, MonteCarlo };
    double value = 0.0;
    double sigma = 0.0;
    Method method = Method::Propagation;
};

/// y = x1/x2 with independent inputs:
/// sigma^2(y) = (1/x2)^2 s2(x1) + (x1/x2^2)^2 s2(x2).
ErrorBudget ratio_error(const MeasuredQuantity& x1, const MeasuredQuantity& x2);

/// Propagation and Monte-Carlo error bars for one extracted magnitude.
struct TErrorEstimate {
    double ideal = 0.0;      // noiseless extraction
    double mc_mean = 0.0;    // Monte-Carlo mean
    double mc_sigma = 0.0;   // Monte-Carlo standard deviation
    double prop_sigma = 0.0; // variance-transfer prediction
};

struct TErrorReport {
    TErrorEstimate t12, t13, t22, t23, t33;
};

/// Simulates `trials` independent seeded count experiments. Each trial reads
/// Poisson counts at the two ideal extremal phases of every arm scan (the
/// peak/trough readout the propagation formula models) and rebuilds each
/// |T_ij| from the count ratios; returns the Monte-Carlo spread next to the
/// variance-transfer prediction. Trial t uses a child RNG derived from
/// (model.seed, t), so results do not depend on evaluation order.
TErrorReport errorbar_pipeline(const OperatorMatrix& a, const OperatorMatrix& b,
                               const StateVector& input, const CountingModel& model,
                               int trials);

}  // namespace nhlab
