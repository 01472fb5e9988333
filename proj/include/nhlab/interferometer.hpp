#pragma once

#include <vector>

#include "nhlab/qmath.hpp"

namespace nhlab {

/// Phase-scanned two-arm ring: the input splits at a 50:50 BS, the reflected
/// arm (factor i, phase e^{i theta}) carries arm_reflect, the transmitted arm
/// carries arm_transmit, both recombine at the same BS into ports g and h.
/// The detector sits on port h.
struct SagnacConfig {
    OperatorMatrix arm_reflect;
    OperatorMatrix arm_transmit;
    StateVector input;
    std::vector<double> phase_grid;  // radians, strictly increasing, covering >= 2 pi
};

/// Default scan grid: 256 uniform phases over [0, 2 pi).
std::vector<double> default_phase_grid();

SagnacConfig make_sagnac(OperatorMatrix arm_reflect, OperatorMatrix arm_transmit,
                         StateVector input);

/// Output-port amplitudes at one phase setting, plus the amplitude lost in
/// the arms (norm deficit of the two lossy operators).
struct SagnacFields {
    Eigen::Vector2cd port_g;
    Eigen::Vector2cd port_h;
    double lost = 0.0;
};

SagnacFields propagate(const SagnacConfig& config, double theta);

/// Detector-port intensity |<h|Psi>|^2 by explicit state propagation.
double detector_intensity(const SagnacConfig& config, double theta);

/// How fringe extrema are extracted from a scan. CosineFit solves
/// a + b cos(theta - psi) by least squares (robust under noise);
/// RawExtrema takes the largest/smallest sample.
enum class ExtremaMode { CosineFit, RawExtrema };

/// One phase scan: sampled intensities plus extracted extrema and fringe phase.
struct FringeScan {
    std::vector<double> phases;       // radians
    std::vector<double> intensities;  // in [0, 1]
    double n_max = 0.0;
    double n_min = 0.0;
    double psi = 0.0;  // fringe phase, radians in (-pi, pi]
};

FringeScan scan_fringe(const SagnacConfig& config, ExtremaMode mode = ExtremaMode::CosineFit);

/// Least-squares fit y ~ dc + amplitude * cos(theta - phase), amplitude >= 0.
struct CosineFitResult {
    double dc = 0.0;
    double amplitude = 0.0;
    double phase = 0.0;
};

CosineFitResult fit_cosine(const std::vector<double>& phases, const std::vector<double>& values);

/// Normalized visibility analogue:
/// (n_max - n_min) of the operator scan over (n_max + n_min) of the
/// identity-identity normalization scan.
double t_from_fringes(const FringeScan& scan_ab, const FringeScan& scan_ii);

/// The five overlap magnitudes measured by the arm configurations
/// (A,A), (B,B), (A,B), (A,I), (I,B), each normalized by the (I,I) scan.
struct TMagnitudes {
    double t12 = 0.0;
    double t13 = 0.0;
    double t22 = 0.0;
    double t23 = 0.0;
    double t33 = 0.0;
};

TMagnitudes full_t_extraction(const OperatorMatrix& a, const OperatorMatrix& b,
                              const StateVector& input);

}  // namespace nhlab
