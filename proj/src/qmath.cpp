#include "nhlab/qmath.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace nhlab {

namespace detail {

void require(bool condition, const char* message) {
    if (!condition) throw std::invalid_argument(message);
}

}  // namespace detail

namespace {

bool all_finite(const Eigen::MatrixXcd& m) {
    return m.allFinite();
}

Eigen::MatrixXcd square_from_row_major(int dim, std::initializer_list<Complex> row_major) {
    detail::require(dim >= 1 && static_cast<int>(row_major.size()) == dim * dim,
                    "OperatorMatrix: wrong number of entries");
    return Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                          Eigen::RowMajor>>(std::data(row_major), dim, dim);
}

}  // namespace

StateVector::StateVector(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
    detail::require(amps_.size() >= 1, "StateVector: dim must be >= 1");
    detail::require(all_finite(amps_), "StateVector: amplitudes must be finite");
    detail::require(amps_.squaredNorm() <= 1.0 + 1e-12,
                    "StateVector: squared norm must not exceed 1");
}

StateVector::StateVector(std::initializer_list<Complex> amplitudes)
    : StateVector(Eigen::Map<const Eigen::VectorXcd>(std::data(amplitudes),
                                                     static_cast<long>(amplitudes.size()))) {}

StateVector StateVector::basis(int dim, int index) {
    detail::require(dim >= 1 && index >= 0 && index < dim, "StateVector::basis: bad index");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(index) = 1.0;
    return StateVector(std::move(v));
}

bool StateVector::is_real(double tol) const {
    return amps_.imag().cwiseAbs().maxCoeff() <= tol;
}

OperatorMatrix::OperatorMatrix(Eigen::MatrixXcd entries) : m_(std::move(entries)) {
    detail::require(m_.rows() >= 1 && m_.rows() == m_.cols(),
                    "OperatorMatrix: entries must form a square matrix");
    detail::require(all_finite(m_), "OperatorMatrix: entries must be finite");
}

OperatorMatrix::OperatorMatrix(int dim, std::initializer_list<Complex> row_major)
    : OperatorMatrix(square_from_row_major(dim, row_major)) {}

OperatorMatrix OperatorMatrix::identity(int dim) {
    return OperatorMatrix(Eigen::MatrixXcd::Identity(dim, dim));
}

bool OperatorMatrix::is_hermitian(double tol) const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool OperatorMatrix::is_unitary(double tol) const {
    Eigen::MatrixXcd residual = m_.adjoint() * m_ - Eigen::MatrixXcd::Identity(dim(), dim());
    return residual.cwiseAbs().maxCoeff() <= tol;
}

bool OperatorMatrix::is_psd(double tol) const {
    if (!is_hermitian(tol)) return false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
}

bool OperatorMatrix::is_real(double tol) const {
    return m_.imag().cwiseAbs().maxCoeff() <= tol;
}

OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
    detail::require(lhs.dim() == rhs.dim(), "operator*: dimension mismatch");
    return OperatorMatrix(lhs.mat() * rhs.mat());
}

TMatrix::TMatrix(Eigen::Matrix3cd t, StateVector source_state,
                 OperatorMatrix source_a, OperatorMatrix source_b)
    : t_(t), state_(std::move(source_state)), a_(std::move(source_a)), b_(std::move(source_b)) {
    detail::require((t_ - t_.adjoint()).cwiseAbs().maxCoeff() <= kAlgebraTol,
                    "TMatrix: not conjugate-symmetric");
    detail::require(min_eigenvalue() >= -kClassifyTol, "TMatrix: Hermitian part not PSD");
}

bool TMatrix::sources_real(double tol) const {
    return state_.is_real(tol) && a_.is_real(tol) && b_.is_real(tol);
}

double TMatrix::min_eigenvalue() const {
    Eigen::Matrix3cd herm = 0.5 * (t_ + t_.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(herm, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Complex expectation(const OperatorMatrix& op, const StateVector& state) {
    detail::require(op.dim() == state.dim(), "expectation: dimension mismatch");
    return state.vec().dot(op.mat() * state.vec());
}

double variance(const OperatorMatrix& op, const StateVector& state) {
    detail::require(op.dim() == state.dim(), "variance: dimension mismatch");
    if (!state.is_normalized())
        throw std::domain_error("variance: state must be normalized");
    Eigen::VectorXcd mapped = op.mat() * state.vec();
    double second_moment = mapped.squaredNorm();
    Complex mean = state.vec().dot(mapped);
    return second_moment - std::norm(mean);
}

PolarFactors polar_decompose(const OperatorMatrix& op) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(op.mat(),
                                           Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXcd& w = svd.matrixU();
    const Eigen::MatrixXcd& v = svd.matrixV();
    Eigen::MatrixXcd s = w * svd.singularValues().asDiagonal() * w.adjoint();
    Eigen::MatrixXcd u = w * v.adjoint();
    return {OperatorMatrix(std::move(s)), OperatorMatrix(std::move(u))};
}

TMatrix gram_matrix(const OperatorMatrix& a, const OperatorMatrix& b,
                    const StateVector& state) {
    detail::require(a.dim() == state.dim() && b.dim() == state.dim(),
                    "gram_matrix: dimension mismatch");
    if (!state.is_normalized(kAlgebraTol))
        throw std::domain_error("gram_matrix: state must be pure (normalized)");

    std::vector<Eigen::VectorXcd> phi;
    phi.push_back(state.vec());
    phi.push_back(a.mat() * state.vec());
    phi.push_back(b.mat() * state.vec());

    Eigen::Matrix3cd t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t(i, j) = phi[i].dot(phi[j]);
    return TMatrix(t, state, a, b);
}

}  // namespace nhlab
