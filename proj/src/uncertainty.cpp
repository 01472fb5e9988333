#include "nhlab/uncertainty.hpp"

#include <cmath>
#include <numbers>

namespace nhlab {

namespace {

Complex triple_product(const TMatrix& t) {
    return t.entry(1, 2) * t.entry(0, 1) * t.entry(2, 0);
}

double phase_in_range(Complex p) {
    double phi = std::arg(p);
    if (phi <= -std::numbers::pi) phi = std::numbers::pi;  // arg may return -pi for negative reals
    return phi;
}

}  // namespace

RelationReport check_product_relation(const OperatorMatrix& a, const OperatorMatrix& b,
                                      const StateVector& state) {
    detail::require(a.dim() == state.dim() && b.dim() == state.dim(),
                    "check_product_relation: dimension mismatch");
    TMatrix t = gram_matrix(a, b, state);

    Complex covariance = t.entry(1, 2) - t.entry(1, 0) * t.entry(0, 2);
    double var_a = t.entry(1, 1).real() - std::norm(t.entry(0, 1));
    double var_b = t.entry(2, 2).real() - std::norm(t.entry(0, 2));

    RelationReport report;
    report.lhs = std::norm(covariance);
    report.rhs = var_a * var_b;
    report.slack = report.rhs - report.lhs;
    report.satisfied = report.slack >= -kRelationTol;
    Complex p = triple_product(t);
    report.phase_phi = std::abs(p) > kDegenerateTol ? phase_in_range(p) : 0.0;
    report.equality_expected = state.dim() == 2;
    return report;
}

RelationReport check_qubit_relation(const TMatrix& t) {
    double t22 = std::abs(t.entry(1, 1));
    double t33 = std::abs(t.entry(2, 2));
    if (t22 * t33 <= kDegenerateTol)
        throw std::domain_error("check_qubit_relation: relation undefined, |T22 T33| degenerate");

    Complex p = triple_product(t);
    double t12 = std::abs(t.entry(0, 1));
    double t31 = std::abs(t.entry(2, 0));
    double t23 = std::abs(t.entry(1, 2));

    RelationReport report;
    report.lhs = t12 * t12 / t22 + t31 * t31 / t33 + t23 * t23 / (t22 * t33) -
                 2.0 * std::abs(p) / (t22 * t33);
    report.rhs = 1.0;
    report.slack = report.rhs - report.lhs;
    report.satisfied = report.slack >= -kRelationTol;
    report.phase_phi = std::abs(p) > kDegenerateTol ? phase_in_range(p) : 0.0;
    report.equality_expected =
        t.source_state().dim() == 2 &&
        (std::abs(p) <= kDegenerateTol || std::cos(report.phase_phi) >= 1.0 - kRelationTol);
    return report;
}

RelationReport check_real_equality(const TMatrix& t) {
    if (!t.sources_real())
        throw std::domain_error(
            "check_real_equality: rejected, source operators/state have complex entries");
    if (t.source_state().dim() != 2)
        throw std::domain_error("check_real_equality: rejected, source state is not a qubit");

    double t12 = std::abs(t.entry(0, 1));
    double t13 = std::abs(t.entry(0, 2));
    double t22 = std::abs(t.entry(1, 1));
    double t33 = std::abs(t.entry(2, 2));
    double t23 = std::abs(t.entry(1, 2));
    Complex p = triple_product(t);

    RelationReport report;
    report.lhs = t12 * t12 * t33 + t13 * t13 * t22 + t23 * t23 - 2.0 * std::abs(p);
    report.rhs = t22 * t33;
    report.slack = report.rhs - report.lhs;
    report.satisfied = report.slack >= -kRelationTol;
    report.phase_phi = std::abs(p) > kDegenerateTol ? phase_in_range(p) : 0.0;
    report.equality_expected =
        std::abs(p) <= kDegenerateTol || std::cos(report.phase_phi) >= 1.0 - kRelationTol;
    return report;
}

double equality_phase(const TMatrix& t) {
    Complex p = triple_product(t);
    if (std::abs(p) <= kDegenerateTol)
        throw std::domain_error("equality_phase: phase undefined, triple product vanishes");
    return phase_in_range(p);
}

}  // namespace nhlab
