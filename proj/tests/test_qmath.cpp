#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nhlab/optics.hpp"
#include "nhlab/qmath.hpp"
#include "nhlab/random.hpp"
#include "test_support.hpp"

using namespace nhlab;
using test_support::max_abs_diff;
using test_support::qubit_state;

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

OperatorMatrix real_a() { return operator_real(22.5, 60.0); }
OperatorMatrix real_b() { return operator_real_b(22.5, 75.0); }

}  // namespace

TEST_CASE("state vector validation") {
    CHECK_THROWS(StateVector{Eigen::VectorXcd()});
    CHECK_THROWS(StateVector{Complex(1.0), Complex(1.0)});  // norm 2
    StateVector sub{Complex(0.5), Complex(0.0)};            // sub-normalized is fine
    CHECK(sub.norm2() == doctest::Approx(0.25));
    CHECK_FALSE(sub.is_normalized());
    CHECK(qubit_state(13.0).is_normalized(1e-14));
}

TEST_CASE("operator classification queries") {
    OperatorMatrix id = OperatorMatrix::identity(2);
    CHECK(id.is_hermitian());
    CHECK(id.is_unitary());
    CHECK(id.is_psd());
    CHECK(id.is_real());

    OperatorMatrix lower(2, {0.0, 1.0, 0.0, 0.0});  // |0><1|
    CHECK_FALSE(lower.is_hermitian());
    CHECK_FALSE(lower.is_unitary());

    OperatorMatrix y(2, {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0});
    CHECK(y.is_hermitian());
    CHECK(y.is_unitary());
    CHECK_FALSE(y.is_psd());
    CHECK_FALSE(y.is_real());
}

TEST_CASE("expectation basics") {
    CHECK(test_support::complex_close(
        expectation(OperatorMatrix::identity(2), StateVector::basis(2, 0)), 1.0));

    // <A^dag A> at theta0 = 0 for the real-case A.
    OperatorMatrix a = real_a();
    OperatorMatrix ada = a.adjoint() * a;
    CHECK(std::abs(expectation(ada, qubit_state(0.0)) - Complex(5.0 / 8.0)) < 1e-12);

    // |<A^dag B>| at theta0 = 0.
    OperatorMatrix adb = real_a().adjoint() * real_b();
    CHECK(std::abs(std::abs(expectation(adb, qubit_state(0.0))) - (4.0 + kSqrt3) / 8.0) < 1e-12);

    CHECK_THROWS_AS(expectation(OperatorMatrix::identity(3), StateVector::basis(2, 0)),
                    std::invalid_argument);
}

TEST_CASE("expectation conjugates under the adjoint") {
    RandomSource random(11);
    for (int i = 0; i < 200; ++i) {
        int dim = 2 + i % 4;
        OperatorMatrix op = random.op(dim);
        StateVector s = random.state(dim);
        CHECK(std::abs(expectation(op.adjoint(), s) - std::conj(expectation(op, s))) < 1e-12);
    }
}

TEST_CASE("variance basics") {
    CHECK(variance(OperatorMatrix::identity(2), qubit_state(17.0)) ==
          doctest::Approx(0.0).epsilon(1e-12));

    // Lowering operator |0><1| on |1>: <O^dag O> = 1, <O> = 0.
    OperatorMatrix lower(2, {0.0, 1.0, 0.0, 0.0});
    CHECK(variance(lower, StateVector::basis(2, 1)) == doctest::Approx(1.0));

    // Real-case A on |phi(0)>: 5/8 - 1/8.
    CHECK(std::abs(variance(real_a(), qubit_state(0.0)) - 0.5) < 1e-12);

    CHECK_THROWS_AS(variance(OperatorMatrix::identity(2), StateVector{Complex(0.5), 0.0}),
                    std::domain_error);
    CHECK_THROWS_AS(variance(OperatorMatrix::identity(3), qubit_state(0.0)),
                    std::invalid_argument);
}

TEST_CASE("variance is shift invariant and matches the projector form") {
    RandomSource random(12);
    for (int i = 0; i < 200; ++i) {
        int dim = 2 + i % 3;
        OperatorMatrix op = random.op(dim);
        StateVector s = random.state(dim);
        double base = variance(op, s);

        Complex shift = random.gaussian();
        OperatorMatrix shifted(op.mat() +
                               shift * Eigen::MatrixXcd::Identity(dim, dim));
        CHECK(std::abs(variance(shifted, s) - base) < 1e-10);

        // <psi| O^dag (1 - |psi><psi|) O |psi>.
        Eigen::MatrixXcd projector =
            Eigen::MatrixXcd::Identity(dim, dim) - s.vec() * s.vec().adjoint();
        double via_projector =
            expectation(OperatorMatrix(op.mat().adjoint() * projector * op.mat()), s).real();
        CHECK(std::abs(base - via_projector) < 1e-12);
    }
}

TEST_CASE("polar decomposition of a unitary") {
    OperatorMatrix h = hwp_matrix(22.5);
    PolarFactors f = polar_decompose(h);
    CHECK(max_abs_diff(f.s.mat(), Eigen::MatrixXcd::Identity(2, 2)) < 1e-12);
    CHECK(max_abs_diff(f.u.mat(), h.mat()) < 1e-12);
}

TEST_CASE("polar decomposition recovers the diagonal/waveplate factorization") {
    // diag(1/2, 1) * HWP(22.5): the canonical PSD factor is the diagonal itself.
    PolarFactors f = polar_decompose(real_a());
    Eigen::Matrix2cd s_expected;
    s_expected << 0.5, 0.0, 0.0, 1.0;
    CHECK(max_abs_diff(f.s.mat(), s_expected) < 1e-12);
    CHECK(max_abs_diff(f.u.mat(), hwp_matrix(22.5).mat()) < 1e-12);
}

TEST_CASE("polar factors reconstruct random operators") {
    RandomSource random(13);
    for (int i = 0; i < 100; ++i) {
        OperatorMatrix op = random.op(2);
        PolarFactors f = polar_decompose(op);
        CHECK(f.s.is_hermitian(1e-12));
        CHECK(f.s.is_psd(1e-12));
        CHECK(f.u.is_unitary(1e-12));
        CHECK(max_abs_diff((f.s * f.u).mat(), op.mat()) < 1e-12);
    }
}

TEST_CASE("polar decomposition completes singular operators") {
    OperatorMatrix rank1(2, {1.0, 0.0, 0.0, 0.0});
    PolarFactors f = polar_decompose(rank1);
    CHECK(f.u.is_unitary(1e-12));
    CHECK(f.s.is_psd(1e-12));
    CHECK(max_abs_diff((f.s * f.u).mat(), rank1.mat()) < 1e-12);

    OperatorMatrix zero(2, {0.0, 0.0, 0.0, 0.0});
    PolarFactors fz = polar_decompose(zero);
    CHECK(fz.u.is_unitary(1e-12));
    CHECK(max_abs_diff((fz.s * fz.u).mat(), zero.mat()) < 1e-12);
}

TEST_CASE("gram matrix for identity operators") {
    TMatrix t = gram_matrix(OperatorMatrix::identity(2), OperatorMatrix::identity(2),
                            qubit_state(7.0));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(test_support::complex_close(t.entry(i, j), 1.0));
}

TEST_CASE("gram matrix magnitudes for the real configuration at theta0 = 0") {
    TMatrix t = gram_matrix(real_a(), real_b(), qubit_state(0.0));
    CHECK(std::abs(std::abs(t.entry(0, 1)) - 1.0 / (2.0 * kSqrt2)) < 1e-12);
    CHECK(std::abs(std::abs(t.entry(0, 2)) - kSqrt3 / (2.0 * kSqrt2)) < 1e-12);
    CHECK(std::abs(std::abs(t.entry(1, 1)) - 5.0 / 8.0) < 1e-12);
    CHECK(std::abs(std::abs(t.entry(2, 2)) - 7.0 / 8.0) < 1e-12);
    CHECK(std::abs(std::abs(t.entry(1, 2)) - (4.0 + kSqrt3) / 8.0) < 1e-12);
    CHECK(std::abs(t.entry(0, 0) - Complex(1.0)) < 1e-12);
    CHECK(t.sources_real());
}

TEST_CASE("gram matrices are PSD and conjugate-symmetric") {
    RandomSource random(14);
    double min_eig = 0.0;
    for (int i = 0; i < 2000; ++i) {
        int dim = 2 + i % 4;
        TMatrix t = gram_matrix(random.op(dim), random.op(dim), random.state(dim));
        min_eig = std::min(min_eig, t.min_eigenvalue());
        CHECK(max_abs_diff(t.mat(), t.mat().adjoint()) < 1e-12);
        CHECK(std::abs(t.entry(0, 0).real() - 1.0) < 1e-12);
    }
    CHECK(min_eig >= -1e-10);
}

TEST_CASE("gram matrix rejects bad inputs") {
    CHECK_THROWS_AS(gram_matrix(OperatorMatrix::identity(3), OperatorMatrix::identity(2),
                                qubit_state(0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(gram_matrix(OperatorMatrix::identity(2), OperatorMatrix::identity(2),
                                StateVector{Complex(0.5), 0.0}),
                    std::domain_error);
}
