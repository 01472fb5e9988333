#pragma once

#include <cstdint>
#include <vector>

#include "nhlab/qmath.hpp"

namespace nhlab {

/// A quantum channel rho -> sum_k E_k rho E_k^dag given by its Kraus
/// operators, validated against the completeness relation
/// sum_k E_k^dag E_k = I (tolerance 1e-10).
class KrausChannel {
public:
    explicit KrausChannel(std::vector<OperatorMatrix> kraus);

    int dim() const { return kraus_.front().dim(); }
    std::size_t size() const { return kraus_.size(); }
    const OperatorMatrix& kraus(std::size_t k) const { return kraus_[k]; }

    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;

private:
    std::vector<OperatorMatrix> kraus_;
};

/// Density matrix, optionally bipartite (dims d_a x d_b with d_a*d_b rows).
/// Hermitian within 1e-12, unit trace within 1e-10, eigenvalues >= -1e-10.
class DensityMatrix {
public:
    explicit DensityMatrix(Eigen::MatrixXcd rho, int dim_a = 0, int dim_b = 0);

    static DensityMatrix pure(const StateVector& psi);
    static DensityMatrix pure_product(const StateVector& a, const StateVector& b);
    /// (|01> - |10>)/sqrt2 as a two-qubit density matrix.
    static DensityMatrix singlet();

    const Eigen::MatrixXcd& mat() const { return rho_; }
    int dim() const { return static_cast<int>(rho_.rows()); }
    int dim_a() const { return dim_a_; }
    int dim_b() const { return dim_b_; }
    bool bipartite() const { return dim_a_ > 0; }

private:
    Eigen::MatrixXcd rho_;
    int dim_a_ = 0;
    int dim_b_ = 0;
};

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Channel fidelity F = <psi| E(|psi><psi|) |psi> = sum_k |<psi|E_k|psi>|^2
/// for a pure state, together with the Kraus-variance sum; for a complete
/// channel the two satisfy variance_sum = 1 - fidelity.
struct FidelityResult {
    double fidelity = 0.0;
    double variance_sum = 0.0;
};

FidelityResult channel_fidelity(const KrausChannel& channel, const StateVector& state);

/// Numerical max of the channel fidelity over pure inputs: a coarse grid
/// (Bloch for qubits, seeded random starts above) followed by pattern-search
/// ascent. Supported for dim <= 4; result clamped to [0, 1].
double f_max(const KrausChannel& channel);

/// sum_k Var_rho(E_k^A x I + I x E_k^B) with the mixed-state variance
/// Tr(rho M^dag M) - |Tr(rho M)|^2. Channels with different Kraus counts are
/// aligned by zero-padding the shorter list. Note the value depends on the
/// chosen Kraus representations, unlike f_max.
double collective_variance_sum(const KrausChannel& channel_a, const KrausChannel& channel_b,
                               const DensityMatrix& rho);

/// Separability criterion: every separable state obeys lhs >= rhs with
/// lhs the collective variance sum and rhs = 2 - f_max(A) - f_max(B);
/// lhs < rhs - 1e-9 certifies entanglement.
struct SeparabilityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs; positive margin for violations
    bool violated = false;
    double f_max_a = 0.0;
    double f_max_b = 0.0;
};

SeparabilityReport separability_test(const KrausChannel& channel_a,
                                     const KrausChannel& channel_b, const DensityMatrix& rho);

}  // namespace nhlab
