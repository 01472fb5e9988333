#pragma once

#include <cstdint>
#include <random>

#include "nhlab/entanglement.hpp"
#include "nhlab/qmath.hpp"

namespace nhlab {

/// Seeded generators for reproducible property sweeps. Matrix entries are
/// complex standard normal; states are uniform on the sphere.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

    Complex gaussian();
    double uniform(double lo, double hi);

    StateVector state(int dim);
    StateVector real_state(int dim);
    OperatorMatrix op(int dim);
    OperatorMatrix real_op(int dim);
    /// Random operator rescaled so its largest singular value is at most 1.
    OperatorMatrix contraction(int dim);
    /// Random channel with `terms` Kraus operators from a Haar-ish isometry.
    KrausChannel channel(int dim, int terms);
    /// Random K x K unitary (for remixing Kraus representations).
    Eigen::MatrixXcd unitary(int dim);

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
    std::normal_distribution<double> gauss_{0.0, 1.0};
};

}  // namespace nhlab
