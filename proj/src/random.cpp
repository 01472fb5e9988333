#include "nhlab/random.hpp"

#include <cmath>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace nhlab {

Complex RandomSource::gaussian() {
    double re = gauss_(rng_);
    double im = gauss_(rng_);
    return Complex(re, im) / std::sqrt(2.0);
}

double RandomSource::uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

StateVector RandomSource::state(int dim) {
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = gaussian();
    v.normalize();
    return StateVector(std::move(v));
}

StateVector RandomSource::real_state(int dim) {
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = gauss_(rng_);
    v.normalize();
    return StateVector(std::move(v));
}

OperatorMatrix RandomSource::op(int dim) {
    Eigen::MatrixXcd m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = gaussian();
    return OperatorMatrix(std::move(m));
}

OperatorMatrix RandomSource::real_op(int dim) {
    Eigen::MatrixXcd m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = gauss_(rng_);
    return OperatorMatrix(std::move(m));
}

OperatorMatrix RandomSource::contraction(int dim) {
    Eigen::MatrixXcd m = op(dim).mat();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    double top = svd.singularValues()(0);
    if (top > 1.0) m /= top * (1.0 + 1e-15);
    return OperatorMatrix(std::move(m));
}

KrausChannel RandomSource::channel(int dim, int terms) {
    // QR of a random (terms*dim) x dim Gaussian block gives an isometry whose
    // dim-sized slices satisfy the completeness relation exactly.
    Eigen::MatrixXcd g(terms * dim, dim);
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(terms * dim, dim);

    std::vector<OperatorMatrix> kraus;
    kraus.reserve(terms);
    for (int k = 0; k < terms; ++k)
        kraus.emplace_back(Eigen::MatrixXcd(q.block(k * dim, 0, dim, dim)));
    return KrausChannel(std::move(kraus));
}

Eigen::MatrixXcd RandomSource::unitary(int dim) {
    Eigen::MatrixXcd g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    return qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
}

}  // namespace nhlab
