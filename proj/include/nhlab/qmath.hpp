#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace nhlab {

using Complex = std::complex<double>;

/// Absolute tolerance for operator classification queries (is_hermitian etc.).
inline constexpr double kClassifyTol = 1e-10;
/// Absolute tolerance for algebraic identities (polar reconstruction, Gram symmetry).
inline constexpr double kAlgebraTol = 1e-12;

/// Complex amplitude vector over a finite-dimensional Hilbert space.
/// May be sub-normalized: the squared norm is the survival probability
/// after lossy elements, so ||psi||^2 must stay in [0, 1].
class StateVector {
public:
    explicit StateVector(Eigen::VectorXcd amplitudes);
    StateVector(std::initializer_list<Complex> amplitudes);

    static StateVector basis(int dim, int index);

    int dim() const { return static_cast<int>(amps_.size()); }
    const Eigen::VectorXcd& vec() const { return amps_; }
    Complex amplitude(int i) const { return amps_(i); }

    double norm2() const { return amps_.squaredNorm(); }
    bool is_normalized(double tol = 1e-10) const { return std::abs(norm2() - 1.0) <= tol; }
    bool is_real(double tol = kAlgebraTol) const;

private:
    Eigen::VectorXcd amps_;
};

/// Dense complex square matrix; a general (typically non-Hermitian) operator.
class OperatorMatrix {
public:
    explicit OperatorMatrix(Eigen::MatrixXcd entries);
    OperatorMatrix(int dim, std::initializer_list<Complex> row_major);

    static OperatorMatrix identity(int dim);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Eigen::MatrixXcd& mat() const { return m_; }
    Complex entry(int r, int c) const { return m_(r, c); }

    OperatorMatrix adjoint() const { return OperatorMatrix(m_.adjoint()); }

    bool is_hermitian(double tol = kClassifyTol) const;
    bool is_unitary(double tol = kClassifyTol) const;
    bool is_psd(double tol = kClassifyTol) const;
    bool is_real(double tol = kClassifyTol) const;

private:
    Eigen::MatrixXcd m_;
};

OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs);

/// Left polar factors: op = s * u with s PSD Hermitian and u unitary.
struct PolarFactors {
    OperatorMatrix s;
    OperatorMatrix u;
};

/// Gram matrix of {|phi>, A|phi>, B|phi>}: t(i,j) = <phi_i|phi_j>, 0-based.
/// Always conjugate-symmetric and positive semidefinite; t(0,0) is the
/// squared norm of the source state (1 for pure inputs).
class TMatrix {
public:
    TMatrix(Eigen::Matrix3cd t, StateVector source_state,
            OperatorMatrix source_a, OperatorMatrix source_b);

    const Eigen::Matrix3cd& mat() const { return t_; }
    Complex entry(int i, int j) const { return t_(i, j); }

    const StateVector& source_state() const { return state_; }
    const OperatorMatrix& source_a() const { return a_; }
    const OperatorMatrix& source_b() const { return b_; }

    /// True when both source operators and the source state are real
    /// (all imaginary parts within tol).
    bool sources_real(double tol = kAlgebraTol) const;

    /// Smallest eigenvalue of the Hermitian part (t + t^dag)/2.
    double min_eigenvalue() const;

private:
    Eigen::Matrix3cd t_;
    StateVector state_;
    OperatorMatrix a_;
    OperatorMatrix b_;
};

/// <state|op|state>. Conjugates under op -> op^dag. Accepts sub-normalized states.
Complex expectation(const OperatorMatrix& op, const StateVector& state);

/// <op^dag op> - <op^dag><op> for a normalized state. The raw value is
/// returned unclamped; it is >= 0 up to roundoff (about -1e-12).
double variance(const OperatorMatrix& op, const StateVector& state);

/// Left polar decomposition op = s * u via SVD (op = W S V^dag gives
/// s = W S W^dag, u = W V^dag). For singular op the unitary is completed
/// on the null directions by the same SVD convention, deterministically.
PolarFactors polar_decompose(const OperatorMatrix& op);

/// Gram matrix of {|phi>, a|phi>, b|phi>} for a pure state phi.
TMatrix gram_matrix(const OperatorMatrix& a, const OperatorMatrix& b,
                    const StateVector& state);

namespace detail {
void require(bool condition, const char* message);
}

}  // namespace nhlab
