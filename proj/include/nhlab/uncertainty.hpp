#pragma once

#include "nhlab/qmath.hpp"

namespace nhlab {

/// Outcome of one uncertainty-relation evaluation.
///
/// slack is rhs - lhs for the product/equality relations and 1 - lhs for the
/// qubit bound; satisfied means slack >= -1e-10. phase_phi is the phase of
/// the Gram triple product T23*T12*T31 (0 when the product vanishes), in
/// (-pi, pi]. equality_expected marks instances where the relation is an
/// exact equality: pure qubit inputs for the product relation, and
/// additionally cos(phase_phi) = 1 for the T-matrix forms.
struct RelationReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool satisfied = false;
    double phase_phi = 0.0;
    bool equality_expected = false;
};

inline constexpr double kRelationTol = 1e-10;
/// Below this magnitude a |T22 T33| denominator or triple product is degenerate.
inline constexpr double kDegenerateTol = 1e-14;

/// Variance-product relation: lhs = |<A^dag B> - <A^dag><B>|^2,
/// rhs = var(A) var(B). Holds for every pure state; equality for qubits.
RelationReport check_product_relation(const OperatorMatrix& a, const OperatorMatrix& b,
                                      const StateVector& state);

/// Normalized single-qubit bound:
/// |T12|^2/|T22| + |T31|^2/|T33| + |T23|^2/|T22 T33| - 2|T23 T12 T31|/|T22 T33| <= 1.
/// Throws std::domain_error when |T22 T33| is degenerate ("relation undefined").
RelationReport check_qubit_relation(const TMatrix& t);

/// Real-case equality:
/// lhs = |T12|^2 |T33| + |T13|^2 |T22| + |T23|^2 - 2|T23 T12 T31|, rhs = |T22 T33|.
/// Requires real source operators and a real pure qubit state. The equality
/// only binds when the (real) triple product is nonnegative; instances with
/// phase pi are reported with equality_expected = false rather than asserted.
RelationReport check_real_equality(const TMatrix& t);

/// Phase of T23*T12*T31 in (-pi, pi]. Throws std::domain_error when the
/// product magnitude is below the degeneracy threshold ("phase undefined").
double equality_phase(const TMatrix& t);

}  // namespace nhlab
