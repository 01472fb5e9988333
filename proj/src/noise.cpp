#include "nhlab/noise.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace nhlab {

void validate(const CountingModel& model) {
    detail::require(model.rate_scale >= 0.0, "CountingModel: rate_scale must be >= 0");
    detail::require(model.visibility_factor > 0.0 && model.visibility_factor <= 1.0,
                    "CountingModel: visibility_factor must be in (0, 1]");
}

double degraded_intensity(const FringeScan& scan, std::size_t index,
                          const CountingModel& model) {
    double mean_level = 0.5 * (scan.n_max + scan.n_min);
    return mean_level + model.visibility_factor * (scan.intensities[index] - mean_level);
}

std::mt19937_64 make_child_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

std::int64_t poisson_draw(std::mt19937_64& rng, double mean) {
    if (mean <= 0.0) return 0;
    std::poisson_distribution<std::int64_t> dist(mean);
    return dist(rng);
}

std::vector<std::int64_t> sample_counts(const FringeScan& scan, const CountingModel& model) {
    validate(model);
    std::mt19937_64 rng(model.seed);
    std::vector<std::int64_t> counts;
    counts.reserve(scan.intensities.size());
    for (std::size_t k = 0; k < scan.intensities.size(); ++k)
        counts.push_back(poisson_draw(rng, model.rate_scale * degraded_intensity(scan, k, model)));
    return counts;
}

double propagate_variance(const std::vector<double>& partials,
                          const std::vector<double>& sigmas2,
                          const Eigen::MatrixXd& covariances) {
    const auto n = static_cast<Eigen::Index>(partials.size());
    detail::require(static_cast<Eigen::Index>(sigmas2.size()) == n &&
                        covariances.rows() == n && covariances.cols() == n,
                    "propagate_variance: shape mismatch");
    detail::require((covariances - covariances.transpose()).cwiseAbs().maxCoeff() <= 1e-12,
                    "propagate_variance: covariance matrix must be symmetric");

    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) total += partials[i] * partials[i] * sigmas2[i];
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            total += 2.0 * partials[i] * partials[j] * covariances(i, j);
    return total;
}

ErrorBudget ratio_error(const MeasuredQuantity& x1, const MeasuredQuantity& x2) {
    if (x2.mean == 0.0) throw std::domain_error("ratio_error: zero denominator");
    std::vector<double> partials = {1.0 / x2.mean, -x1.mean / (x2.mean * x2.mean)};
    std::vector<double> sigmas2 = {x1.variance, x2.variance};
    double var = propagate_variance(partials, sigmas2, Eigen::Matrix2d::Zero());
    return {x1.mean / x2.mean, std::sqrt(var), ErrorBudget::Method::Propagation};
}

namespace {

struct ScanReadout {
    std::size_t peak_index = 0;
    std::size_t trough_index = 0;
    double peak_mean = 0.0;    // expected counts at the peak phase
    double trough_mean = 0.0;  // expected counts at the trough phase
};

ScanReadout make_readout(const FringeScan& scan, const CountingModel& model) {
    auto [lo, hi] = std::minmax_element(scan.intensities.begin(), scan.intensities.end());
    ScanReadout r;
    r.peak_index = static_cast<std::size_t>(hi - scan.intensities.begin());
    r.trough_index = static_cast<std::size_t>(lo - scan.intensities.begin());
    r.peak_mean = model.rate_scale * degraded_intensity(scan, r.peak_index, model);
    r.trough_mean = model.rate_scale * degraded_intensity(scan, r.trough_index, model);
    return r;
}

}  // namespace

TErrorReport errorbar_pipeline(const OperatorMatrix& a, const OperatorMatrix& b,
                               const StateVector& input, const CountingModel& model,
                               int trials) {
    validate(model);
    detail::require(trials >= 100, "errorbar_pipeline: need at least 100 trials");

    OperatorMatrix id = OperatorMatrix::identity(2);
    const std::array<std::pair<OperatorMatrix, OperatorMatrix>, 6> arm_pairs = {
        std::pair{a, a}, {b, b}, {a, b}, {a, id}, {id, b}, {id, id}};

    std::array<FringeScan, 6> scans;
    std::array<ScanReadout, 6> readouts;
    for (std::size_t s = 0; s < 6; ++s) {
        scans[s] = scan_fringe(make_sagnac(arm_pairs[s].first, arm_pairs[s].second, input));
        readouts[s] = make_readout(scans[s], model);
    }

    // Variance-transfer prediction: each |T| is (peak - trough) / (peak + trough of
    // the normalization scan), with Poisson variances peak + trough on each side.
    const ScanReadout& norm = readouts[5];
    MeasuredQuantity x2{norm.peak_mean + norm.trough_mean,
                        norm.peak_mean + norm.trough_mean};
    std::array<TErrorEstimate, 5> estimates;
    for (std::size_t s = 0; s < 5; ++s) {
        MeasuredQuantity x1{readouts[s].peak_mean - readouts[s].trough_mean,
                            readouts[s].peak_mean + readouts[s].trough_mean};
        ErrorBudget prop = ratio_error(x1, x2);
        estimates[s].ideal = (scans[s].n_max - scans[s].n_min) / (scans[5].n_max + scans[5].n_min);
        estimates[s].prop_sigma = prop.sigma;
    }

    // Monte Carlo over independently seeded trials; two-point readout per scan.
    std::array<double, 5> sum{}, sum_sq{};
    long effective_trials = 0;
    for (int trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng = make_child_rng(model.seed, static_cast<std::uint64_t>(trial));
        std::array<double, 6> diffs{}, sums{};
        for (std::size_t s = 0; s < 6; ++s) {
            double peak = static_cast<double>(poisson_draw(rng, readouts[s].peak_mean));
            double trough = static_cast<double>(poisson_draw(rng, readouts[s].trough_mean));
            diffs[s] = peak - trough;
            sums[s] = peak + trough;
        }
        if (sums[5] <= 0.0) continue;  // empty normalization scan, skip trial
        ++effective_trials;
        for (std::size_t s = 0; s < 5; ++s) {
            double value = diffs[s] / sums[5];
            sum[s] += value;
            sum_sq[s] += value * value;
        }
    }

    auto finalize = [&](std::size_t s) {
        TErrorEstimate& e = estimates[s];
        double n = static_cast<double>(effective_trials);
        if (effective_trials < 2) return e;
        e.mc_mean = sum[s] / n;
        double var = std::max(0.0, sum_sq[s] / n - e.mc_mean * e.mc_mean) * n / (n - 1.0);
        e.mc_sigma = std::sqrt(var);
        return e;
    };

    TErrorReport report;
    report.t22 = finalize(0);
    report.t33 = finalize(1);
    report.t23 = finalize(2);
    report.t12 = finalize(3);
    report.t13 = finalize(4);
    return report;
}

}  // namespace nhlab
