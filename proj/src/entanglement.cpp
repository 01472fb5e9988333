#include "nhlab/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

namespace nhlab {

KrausChannel::KrausChannel(std::vector<OperatorMatrix> kraus) : kraus_(std::move(kraus)) {
    detail::require(!kraus_.empty(), "KrausChannel: need at least one Kraus operator");
    int d = kraus_.front().dim();
    for (const auto& e : kraus_)
        detail::require(e.dim() == d, "KrausChannel: mixed Kraus dimensions");
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& e : kraus_) total += e.mat().adjoint() * e.mat();
    double deficit = (total - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
    if (deficit > kClassifyTol)
        throw std::invalid_argument("KrausChannel: completeness sum E^dag E = I violated");
}

Eigen::MatrixXcd KrausChannel::apply(const Eigen::MatrixXcd& rho) const {
    detail::require(rho.rows() == dim() && rho.cols() == dim(),
                    "KrausChannel::apply: dimension mismatch");
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim(), dim());
    for (const auto& e : kraus_) out += e.mat() * rho * e.mat().adjoint();
    return out;
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd rho, int dim_a, int dim_b)
    : rho_(std::move(rho)), dim_a_(dim_a), dim_b_(dim_b) {
    detail::require(rho_.rows() == rho_.cols() && rho_.rows() >= 1,
                    "DensityMatrix: must be square");
    if (dim_a_ > 0 || dim_b_ > 0)
        detail::require(dim_a_ > 0 && dim_b_ > 0 && dim_a_ * dim_b_ == rho_.rows(),
                        "DensityMatrix: bipartite dims do not match matrix size");
    detail::require((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() <= kAlgebraTol,
                    "DensityMatrix: not Hermitian");
    detail::require(std::abs(rho_.trace().real() - 1.0) <= kClassifyTol &&
                        std::abs(rho_.trace().imag()) <= kClassifyTol,
                    "DensityMatrix: trace must be 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
    detail::require(es.eigenvalues().minCoeff() >= -kClassifyTol,
                    "DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    if (!psi.is_normalized()) throw std::domain_error("DensityMatrix::pure: not normalized");
    return DensityMatrix(psi.vec() * psi.vec().adjoint());
}

DensityMatrix DensityMatrix::pure_product(const StateVector& a, const StateVector& b) {
    if (!a.is_normalized() || !b.is_normalized())
        throw std::domain_error("DensityMatrix::pure_product: factors must be normalized");
    Eigen::VectorXcd joint = Eigen::VectorXcd::Zero(a.dim() * b.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j)
            joint(i * b.dim() + j) = a.amplitude(i) * b.amplitude(j);
    return DensityMatrix(joint * joint.adjoint(), a.dim(), b.dim());
}

DensityMatrix DensityMatrix::singlet() {
    Eigen::VectorXcd psi(4);
    psi << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0;
    return DensityMatrix(psi * psi.adjoint(), 2, 2);
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

FidelityResult channel_fidelity(const KrausChannel& channel, const StateVector& state) {
    detail::require(channel.dim() == state.dim(), "channel_fidelity: dimension mismatch");
    if (!state.is_normalized())
        throw std::domain_error("channel_fidelity: state must be pure and normalized");

    FidelityResult result;
    for (std::size_t k = 0; k < channel.size(); ++k) {
        Eigen::VectorXcd mapped = channel.kraus(k).mat() * state.vec();
        Complex mean = state.vec().dot(mapped);
        result.fidelity += std::norm(mean);
        result.variance_sum += mapped.squaredNorm() - std::norm(mean);
    }
    // For a complete channel the variance sum is 1 - F up to the completeness
    // deficit, which the constructor bounds at 1e-10.
    if (std::abs(result.variance_sum - (1.0 - result.fidelity)) > 1e-9)
        throw std::logic_error("channel_fidelity: variance/fidelity identity violated");
    return result;
}

namespace {

double fidelity_of_raw(const KrausChannel& channel, const Eigen::VectorXcd& raw) {
    double n2 = raw.squaredNorm();
    if (n2 <= 0.0) return 0.0;
    double f = 0.0;
    for (std::size_t k = 0; k < channel.size(); ++k)
        f += std::norm(raw.dot(channel.kraus(k).mat() * raw));
    return f / (n2 * n2);
}

// Coordinate pattern search on the unnormalized real/imag components:
// 50 refinement iterations, each exhausting the current step before halving.
double ascend(const KrausChannel& channel, Eigen::VectorXcd start, double step) {
    Eigen::VectorXcd x = std::move(start);
    double best = fidelity_of_raw(channel, x);
    const int dim = static_cast<int>(x.size());

    auto one_pass = [&]() {
        bool improved = false;
        for (int i = 0; i < dim; ++i) {
            for (Complex delta : {Complex(step, 0.0), Complex(-step, 0.0), Complex(0.0, step),
                                  Complex(0.0, -step)}) {
                Eigen::VectorXcd trial = x;
                trial(i) += delta;
                double f = fidelity_of_raw(channel, trial);
                if (f > best) {
                    best = f;
                    x = trial;
                    improved = true;
                }
            }
        }
        return improved;
    };

    for (int iter = 0; iter < 50; ++iter) {
        for (int guard = 0; guard < 200 && one_pass(); ++guard) {}
        step *= 0.5;
    }
    return best;
}

}  // namespace

double f_max(const KrausChannel& channel) {
    if (channel.dim() > 4)
        throw std::invalid_argument("f_max: dimensions above 4 are not supported");

    double best = 0.0;
    Eigen::VectorXcd best_start;

    if (channel.dim() == 2) {
        // Bloch-sphere grid, 64 polar x 128 azimuthal points.
        for (int i = 0; i < 64; ++i) {
            double th = std::numbers::pi * (i + 0.5) / 64.0;
            for (int j = 0; j < 128; ++j) {
                double ph = 2.0 * std::numbers::pi * j / 128.0;
                Eigen::VectorXcd v(2);
                v << std::cos(th / 2.0), std::exp(Complex(0.0, ph)) * std::sin(th / 2.0);
                double f = fidelity_of_raw(channel, v);
                if (f >= best) {
                    best = f;
                    best_start = v;
                }
            }
        }
    } else {
        // Seeded random starts on the hypersphere.
        std::mt19937_64 rng(0x5eedf00dULL);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int s = 0; s < 512; ++s) {
            Eigen::VectorXcd v(channel.dim());
            for (int i = 0; i < channel.dim(); ++i) v(i) = Complex(gauss(rng), gauss(rng));
            v.normalize();
            double f = fidelity_of_raw(channel, v);
            if (f >= best) {
                best = f;
                best_start = v;
            }
        }
    }

    best = std::max(best, ascend(channel, best_start, 0.1));
    return std::clamp(best, 0.0, 1.0);
}

double collective_variance_sum(const KrausChannel& channel_a, const KrausChannel& channel_b,
                               const DensityMatrix& rho) {
    detail::require(rho.bipartite(), "collective_variance_sum: rho must be bipartite");
    detail::require(rho.dim_a() == channel_a.dim() && rho.dim_b() == channel_b.dim(),
                    "collective_variance_sum: channel/state dimension mismatch");

    const Eigen::MatrixXcd id_a = Eigen::MatrixXcd::Identity(channel_a.dim(), channel_a.dim());
    const Eigen::MatrixXcd id_b = Eigen::MatrixXcd::Identity(channel_b.dim(), channel_b.dim());
    const Eigen::MatrixXcd zero_a = Eigen::MatrixXcd::Zero(channel_a.dim(), channel_a.dim());
    const Eigen::MatrixXcd zero_b = Eigen::MatrixXcd::Zero(channel_b.dim(), channel_b.dim());

    std::size_t terms = std::max(channel_a.size(), channel_b.size());
    double total = 0.0;
    for (std::size_t k = 0; k < terms; ++k) {
        const Eigen::MatrixXcd& ea = k < channel_a.size() ? channel_a.kraus(k).mat() : zero_a;
        const Eigen::MatrixXcd& eb = k < channel_b.size() ? channel_b.kraus(k).mat() : zero_b;
        Eigen::MatrixXcd m = kron(ea, id_b) + kron(id_a, eb);
        Complex mean = (rho.mat() * m).trace();
        double second = (rho.mat() * m.adjoint() * m).trace().real();
        total += second - std::norm(mean);
    }
    return total;
}

SeparabilityReport separability_test(const KrausChannel& channel_a,
                                     const KrausChannel& channel_b, const DensityMatrix& rho) {
    SeparabilityReport report;
    report.f_max_a = f_max(channel_a);
    report.f_max_b = f_max(channel_b);
    report.lhs = collective_variance_sum(channel_a, channel_b, rho);
    report.rhs = 2.0 - report.f_max_a - report.f_max_b;
    report.margin = report.rhs - report.lhs;
    report.violated = report.lhs < report.rhs - 1e-9;
    return report;
}

}  // namespace nhlab
