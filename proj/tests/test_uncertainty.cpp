#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nhlab/optics.hpp"
#include "nhlab/random.hpp"
#include "nhlab/uncertainty.hpp"
#include "test_support.hpp"

using namespace nhlab;
using test_support::kPi;
using test_support::qubit_state;

namespace {

TMatrix real_config_t(double theta0_deg) {
    return gram_matrix(operator_real(22.5, 60.0), operator_real_b(22.5, 75.0),
                       qubit_state(theta0_deg));
}

TMatrix complex_config_t(double theta0_deg) {
    return gram_matrix(operator_complex(22.5, 60.0), operator_complex_b(0.0, 75.0),
                       qubit_state(theta0_deg));
}

}  // namespace

TEST_CASE("product relation for identical identity operators") {
    RelationReport r = check_product_relation(OperatorMatrix::identity(2),
                                              OperatorMatrix::identity(2), qubit_state(3.0));
    CHECK(r.lhs == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(r.rhs == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(r.satisfied);
    CHECK(r.equality_expected);
}

TEST_CASE("product relation is an equality for pure qubit instances") {
    RandomSource random(101);
    double worst = 0.0;
    for (int i = 0; i < 3000; ++i) {
        RelationReport r = check_product_relation(random.op(2), random.op(2), random.state(2));
        worst = std::max(worst, std::abs(r.lhs - r.rhs) / std::max(1.0, r.rhs));
        CHECK(r.equality_expected);
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("product relation is an inequality in dims 3 and 4") {
    RandomSource random(102);
    double min_slack = 0.0;
    for (int i = 0; i < 3000; ++i) {
        int dim = 3 + i % 2;
        RelationReport r = check_product_relation(random.op(dim), random.op(dim),
                                                  random.state(dim));
        min_slack = std::min(min_slack, r.slack);
        CHECK_FALSE(r.equality_expected);
    }
    CHECK(min_slack >= -1e-10);
}

TEST_CASE("qubit relation saturates for identity operators") {
    TMatrix t = gram_matrix(OperatorMatrix::identity(2), OperatorMatrix::identity(2),
                            qubit_state(5.0));
    RelationReport r = check_qubit_relation(t);
    CHECK(std::abs(r.lhs - 1.0) < 1e-12);
    CHECK(r.satisfied);
}

TEST_CASE("qubit relation saturates for the real configuration at theta0 = 0") {
    RelationReport r = check_qubit_relation(real_config_t(0.0));
    CHECK(std::abs(r.lhs - 1.0) < 1e-10);
    CHECK(r.equality_expected);
}

TEST_CASE("qubit relation bound holds across the complex sweep") {
    for (double theta0 = -45.0; theta0 <= 45.0 + 1e-9; theta0 += 1.0) {
        RelationReport r = check_qubit_relation(complex_config_t(theta0));
        CHECK(r.lhs <= 1.0 + 1e-10);
        CHECK(r.satisfied);
    }
}

TEST_CASE("qubit relation refuses degenerate denominators") {
    // theta3 = 45 gives S = diag(0, 1); acting on |0> the A branch vanishes.
    OperatorMatrix a = operator_real(0.0, 45.0);
    TMatrix t = gram_matrix(a, OperatorMatrix::identity(2), StateVector::basis(2, 0));
    CHECK_THROWS_AS(check_qubit_relation(t), std::domain_error);
}

TEST_CASE("real equality for identity operators") {
    TMatrix t = gram_matrix(OperatorMatrix::identity(2), OperatorMatrix::identity(2),
                            qubit_state(9.0));
    RelationReport r = check_real_equality(t);
    CHECK(std::abs(r.lhs - 1.0) < 1e-12);
    CHECK(std::abs(r.rhs - 1.0) < 1e-12);
    CHECK(r.equality_expected);
}

TEST_CASE("real equality at theta0 = 0 gives 35/64") {
    RelationReport r = check_real_equality(real_config_t(0.0));
    CHECK(std::abs(r.lhs - 0.546875) < 1e-12);
    CHECK(std::abs(r.rhs - 0.546875) < 1e-12);
    CHECK(r.equality_expected);
}

TEST_CASE("real equality sweep holds wherever the triple product is nonnegative") {
    // With the paper angle set the triple product T23*T12*T31 dips negative on
    // two theta0 windows; there the absolute-value form deviates from
    // |T22 T33| by 4|T23 T12 T31| while the signed identity keeps holding.
    int flagged = 0;
    for (double theta0 = -45.0; theta0 <= 45.0 + 1e-9; theta0 += 1.0) {
        TMatrix t = real_config_t(theta0);
        RelationReport r = check_real_equality(t);
        CHECK(r.satisfied);
        Complex p = t.entry(1, 2) * t.entry(0, 1) * t.entry(2, 0);
        double signed_lhs = std::norm(t.entry(0, 1)) * std::abs(t.entry(2, 2)) +
                            std::norm(t.entry(0, 2)) * std::abs(t.entry(1, 1)) +
                            std::norm(t.entry(1, 2)) - 2.0 * p.real();
        CHECK(std::abs(signed_lhs - r.rhs) < 1e-10);
        if (r.equality_expected) {
            CHECK(std::abs(r.lhs - r.rhs) < 1e-10);
        } else {
            ++flagged;
            CHECK(std::abs(r.phase_phi) == doctest::Approx(kPi));
            CHECK(std::abs((r.rhs - r.lhs) - 4.0 * std::abs(p)) < 1e-10);
        }
    }
    CHECK(flagged == 6);  // theta0 in {-10, -9, -8, 31, 32, 33}
}

TEST_CASE("real equality rejects complex sources") {
    CHECK_THROWS_AS(check_real_equality(complex_config_t(0.0)), std::domain_error);
}

TEST_CASE("equality phase basics") {
    TMatrix t = gram_matrix(OperatorMatrix::identity(2), OperatorMatrix::identity(2),
                            qubit_state(4.0));
    CHECK(equality_phase(t) == doctest::Approx(0.0));

    double phi_real = equality_phase(real_config_t(10.0));
    CHECK((std::abs(phi_real) < 1e-10 || std::abs(std::abs(phi_real) - kPi) < 1e-10));

    double phi_complex = equality_phase(complex_config_t(10.0));
    CHECK(std::abs(phi_complex) > 1e-6);

    OperatorMatrix a = operator_real(0.0, 45.0);  // kills the triple product on |0>
    TMatrix degenerate = gram_matrix(a, OperatorMatrix::identity(2), StateVector::basis(2, 0));
    CHECK_THROWS_AS(equality_phase(degenerate), std::domain_error);
}

TEST_CASE("monotone chain of the derivation holds on random instances") {
    RandomSource random(103);
    for (int i = 0; i < 1000; ++i) {
        int dim = 2 + i % 3;
        TMatrix t = gram_matrix(random.op(dim), random.op(dim), random.state(dim));
        Complex p = t.entry(1, 2) * t.entry(0, 1) * t.entry(2, 0);
        double chain_lhs = std::norm(t.entry(0, 1)) * std::abs(t.entry(2, 2)) +
                           std::norm(t.entry(0, 2)) * std::abs(t.entry(1, 1)) +
                           std::norm(t.entry(1, 2)) -
                           std::abs(t.entry(1, 1) * t.entry(2, 2));
        double cos_term = 2.0 * std::abs(p) * std::cos(std::arg(p));
        CHECK(chain_lhs <= cos_term + 1e-12);
        CHECK(cos_term <= 2.0 * std::abs(p) + 1e-12);
    }
}

TEST_CASE("qubit relation lhs is invariant under operator rescaling") {
    RandomSource random(104);
    for (int i = 0; i < 300; ++i) {
        OperatorMatrix a = random.op(2);
        OperatorMatrix b = random.op(2);
        StateVector s = random.state(2);
        Complex c = random.gaussian();
        if (std::abs(c) < 1e-3) continue;

        double base_var = variance(a, s);
        OperatorMatrix scaled(c * a.mat());
        CHECK(std::abs(variance(scaled, s) - std::norm(c) * base_var) <
              1e-10 * std::max(1.0, std::norm(c) * base_var));

        double lhs = check_qubit_relation(gram_matrix(a, b, s)).lhs;
        double lhs_scaled = check_qubit_relation(gram_matrix(scaled, b, s)).lhs;
        CHECK(std::abs(lhs - lhs_scaled) < 1e-10 * std::max(1.0, std::abs(lhs)));
    }
}
