#include "nhlab/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nhlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate_grid(const std::vector<double>& grid) {
    detail::require(grid.size() >= 3, "phase grid: need at least 3 points");
    for (size_t i = 1; i < grid.size(); ++i)
        detail::require(grid[i] > grid[i - 1], "phase grid: must be strictly increasing");
    // Period coverage of the sample set: the grid span plus one mean spacing,
    // so an M-point grid over [0, 2 pi) covers exactly one period.
    double span = grid.back() - grid.front();
    double coverage = span + span / static_cast<double>(grid.size() - 1);
    detail::require(coverage >= kTwoPi - 1e-9, "phase grid: must span at least 2 pi");
    double points_per_period = static_cast<double>(grid.size()) * kTwoPi / coverage;
    if (points_per_period < 8.0 - 1e-9)
        throw std::invalid_argument("phase grid: too coarse, need >= 8 points per period");
}

}  // namespace

std::vector<double> default_phase_grid() {
    std::vector<double> grid(256);
    for (size_t i = 0; i < grid.size(); ++i)
        grid[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(grid.size());
    return grid;
}

SagnacConfig make_sagnac(OperatorMatrix arm_reflect, OperatorMatrix arm_transmit,
                         StateVector input) {
    detail::require(arm_reflect.dim() == 2 && arm_transmit.dim() == 2 && input.dim() == 2,
                    "make_sagnac: arms and input must be 2-dimensional");
    return {std::move(arm_reflect), std::move(arm_transmit), std::move(input),
            default_phase_grid()};
}

SagnacFields propagate(const SagnacConfig& config, double theta) {
    detail::require(config.arm_reflect.dim() == 2 && config.arm_transmit.dim() == 2 &&
                        config.input.dim() == 2,
                    "propagate: arms and input must be 2-dimensional");
    const Complex i_unit(0.0, 1.0);
    const Complex phase = std::exp(Complex(0.0, theta));
    const double r = 1.0 / std::sqrt(2.0);

    // First BS + phase shifter: (i e^{i theta} |e> + |f>) |phi> / sqrt2.
    Eigen::Vector2cd arm_e = r * i_unit * phase * config.input.vec();
    Eigen::Vector2cd arm_f = r * config.input.vec();

    // Arm operators; the norm deficit is the amplitude lost in the trains.
    double norm_before = arm_e.squaredNorm() + arm_f.squaredNorm();
    arm_e = config.arm_reflect.mat() * arm_e;
    arm_f = config.arm_transmit.mat() * arm_f;
    double lost = norm_before - arm_e.squaredNorm() - arm_f.squaredNorm();

    // Second pass through the BS: g = (i e + f)/sqrt2, h = (e + i f)/sqrt2.
    SagnacFields fields;
    fields.port_g = r * (i_unit * arm_e + arm_f);
    fields.port_h = r * (arm_e + i_unit * arm_f);
    fields.lost = lost;
    return fields;
}

double detector_intensity(const SagnacConfig& config, double theta) {
    if (!config.input.is_normalized())
        throw std::domain_error("detector_intensity: input must be normalized");
    return propagate(config, theta).port_h.squaredNorm();
}

CosineFitResult fit_cosine(const std::vector<double>& phases, const std::vector<double>& values) {
    detail::require(phases.size() == values.size() && phases.size() >= 3,
                    "fit_cosine: need matching phase/value arrays of size >= 3");
    // Normal equations for y = dc + p cos(theta) + q sin(theta).
    Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
    Eigen::Vector3d atb = Eigen::Vector3d::Zero();
    for (size_t k = 0; k < phases.size(); ++k) {
        Eigen::Vector3d row(1.0, std::cos(phases[k]), std::sin(phases[k]));
        ata += row * row.transpose();
        atb += row * values[k];
    }
    Eigen::Vector3d coeff = ata.ldlt().solve(atb);

    CosineFitResult fit;
    fit.dc = coeff(0);
    fit.amplitude = std::hypot(coeff(1), coeff(2));
    fit.phase = fit.amplitude > 0.0 ? std::atan2(coeff(2), coeff(1)) : 0.0;
    if (fit.phase <= -std::numbers::pi) fit.phase = std::numbers::pi;
    return fit;
}

FringeScan scan_fringe(const SagnacConfig& config, ExtremaMode mode) {
    validate_grid(config.phase_grid);
    if (!config.input.is_normalized())
        throw std::domain_error("scan_fringe: input must be normalized");

    FringeScan scan;
    scan.phases = config.phase_grid;
    scan.intensities.reserve(scan.phases.size());
    for (double theta : scan.phases) {
        double intensity = propagate(config, theta).port_h.squaredNorm();
        detail::require(intensity <= 1.0 + 1e-9,
                        "scan_fringe: intensity above 1, arms are not passive");
        scan.intensities.push_back(intensity);
    }

    if (mode == ExtremaMode::CosineFit) {
        CosineFitResult fit = fit_cosine(scan.phases, scan.intensities);
        scan.n_max = fit.dc + fit.amplitude;
        scan.n_min = fit.dc - fit.amplitude;
        scan.psi = fit.phase;
    } else {
        auto [lo, hi] = std::minmax_element(scan.intensities.begin(), scan.intensities.end());
        scan.n_max = *hi;
        scan.n_min = *lo;
        scan.psi = scan.phases[static_cast<size_t>(hi - scan.intensities.begin())];
        if (scan.psi > std::numbers::pi) scan.psi -= kTwoPi;
    }
    return scan;
}

double t_from_fringes(const FringeScan& scan_ab, const FringeScan& scan_ii) {
    double total = scan_ii.n_max + scan_ii.n_min;
    if (std::abs(total) < 1e-14)
        throw std::domain_error("t_from_fringes: zero normalization denominator");
    return (scan_ab.n_max - scan_ab.n_min) / total;
}

TMagnitudes full_t_extraction(const OperatorMatrix& a, const OperatorMatrix& b,
                              const StateVector& input) {
    OperatorMatrix id = OperatorMatrix::identity(2);
    auto scan = [&](const OperatorMatrix& reflect, const OperatorMatrix& transmit) {
        return scan_fringe(make_sagnac(reflect, transmit, input));
    };

    FringeScan norm_scan = scan(id, id);
    TMagnitudes t;
    t.t22 = t_from_fringes(scan(a, a), norm_scan);
    t.t33 = t_from_fringes(scan(b, b), norm_scan);
    t.t23 = t_from_fringes(scan(a, b), norm_scan);
    t.t12 = t_from_fringes(scan(a, id), norm_scan);
    t.t13 = t_from_fringes(scan(id, b), norm_scan);
    return t;
}

}  // namespace nhlab
