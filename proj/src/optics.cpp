#include "nhlab/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nhlab {

double deg_to_rad(double degrees) { return degrees * std::numbers::pi / 180.0; }

ElementKind element_kind_from_string(const std::string& name) {
    if (name == "HWP") return ElementKind::HWP;
    if (name == "QWP") return ElementKind::QWP;
    if (name == "BD") return ElementKind::BD;
    if (name == "PBS") return ElementKind::PBS;
    if (name == "PS" || name == "PhaseShifter") return ElementKind::PhaseShifter;
    if (name == "BS") return ElementKind::BS;
    throw std::invalid_argument("unknown optical element kind: " + name);
}

std::string to_string(ElementKind kind) {
    switch (kind) {
        case ElementKind::HWP: return "HWP";
        case ElementKind::QWP: return "QWP";
        case ElementKind::BD: return "BD";
        case ElementKind::PBS: return "PBS";
        case ElementKind::PhaseShifter: return "PS";
        case ElementKind::BS: return "BS";
    }
    return "?";
}

OperatorMatrix hwp_matrix(double angle_deg) {
    double a = 2.0 * deg_to_rad(angle_deg);
    return OperatorMatrix(2, {std::cos(a), std::sin(a), std::sin(a), -std::cos(a)});
}

OperatorMatrix qwp_matrix(double angle_deg) {
    double b = deg_to_rad(angle_deg);
    double c = std::cos(b), s = std::sin(b);
    Complex off = Complex(1.0, -1.0) * c * s;
    return OperatorMatrix(2, {Complex(c * c, s * s), off, off, Complex(s * s, c * c)});
}

PathPolState::PathPolState(std::vector<std::string> path_order, const std::string& entry_path,
                           const StateVector& input)
    : order_(std::move(path_order)) {
    detail::require(!order_.empty(), "PathPolState: empty path order");
    detail::require(input.dim() == 2, "PathPolState: input must be a polarization qubit");
    for (const auto& label : order_) amps_[label] = Eigen::Vector2cd::Zero();
    if (!has_path(entry_path))
        throw std::invalid_argument("PathPolState: unknown entry path " + entry_path);
    amps_[entry_path] = input.vec();
}

bool PathPolState::has_path(const std::string& label) const { return amps_.count(label) > 0; }

const Eigen::Vector2cd& PathPolState::amplitudes(const std::string& label) const {
    auto it = amps_.find(label);
    if (it == amps_.end()) throw std::invalid_argument("PathPolState: unknown path " + label);
    return it->second;
}

Eigen::Vector2cd& PathPolState::amplitudes(const std::string& label) {
    auto it = amps_.find(label);
    if (it == amps_.end()) throw std::invalid_argument("PathPolState: unknown path " + label);
    return it->second;
}

double PathPolState::total_norm2() const {
    double total = 0.0;
    for (const auto& [label, amp] : amps_) total += amp.squaredNorm();
    return total;
}

double PathPolState::path_norm2(const std::string& label) const {
    return amplitudes(label).squaredNorm();
}

namespace {

void apply_bd(PathPolState& state) {
    // Horizontal moves one step down the path order, vertical stays.
    const auto& order = state.path_order();
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
        Complex h = state.amplitudes(order[i])(0);
        if (h == Complex(0.0, 0.0)) continue;
        if (i + 1 >= static_cast<int>(order.size()))
            throw std::invalid_argument(
                "BD: horizontal amplitude on the last declared path has nowhere to go");
        state.amplitudes(order[i])(0) = 0.0;
        state.amplitudes(order[i + 1])(0) += h;
    }
}

void apply_element(PathPolState& state, const JonesElement& el) {
    switch (el.kind) {
        case ElementKind::HWP:
            state.amplitudes(el.path) = hwp_matrix(el.angle_deg).mat() * state.amplitudes(el.path);
            return;
        case ElementKind::QWP:
            state.amplitudes(el.path) = qwp_matrix(el.angle_deg).mat() * state.amplitudes(el.path);
            return;
        case ElementKind::BD:
            apply_bd(state);
            return;
        case ElementKind::PBS: {
            Complex v = state.amplitudes(el.path)(1);
            state.amplitudes(el.path)(1) = 0.0;
            state.amplitudes(el.path_b)(1) += v;
            return;
        }
        case ElementKind::PhaseShifter:
            state.amplitudes(el.path) *= std::exp(Complex(0.0, deg_to_rad(el.angle_deg)));
            return;
        case ElementKind::BS: {
            Eigen::Vector2cd in_a = state.amplitudes(el.path);
            Eigen::Vector2cd in_b = state.amplitudes(el.path_b);
            const double r = 1.0 / std::sqrt(2.0);
            state.amplitudes(el.path) = r * (in_a + Complex(0.0, 1.0) * in_b);
            state.amplitudes(el.path_b) = r * (Complex(0.0, 1.0) * in_a + in_b);
            return;
        }
    }
}

}  // namespace

PathPolState propagate_train(const OpticalTrain& train, const StateVector& input) {
    PathPolState state(train.path_order, train.entry_path, input);
    for (const auto& el : train.elements) apply_element(state, el);
    return state;
}

StateVector compile_train(const OpticalTrain& train, const StateVector& input) {
    PathPolState state = propagate_train(train, input);
    return StateVector(state.amplitudes(train.surviving_path));
}

OperatorMatrix train_operator(const OpticalTrain& train) {
    Eigen::Matrix2cd m;
    for (int col = 0; col < 2; ++col)
        m.col(col) = compile_train(train, StateVector::basis(2, col)).vec();
    return OperatorMatrix(m);
}

namespace {

OpticalTrain lossy_train(double rot_deg, double atten_deg, bool with_qwp, double qwp_deg) {
    OpticalTrain train;
    train.entry_path = "a";
    train.surviving_path = "b";
    train.lost_paths = {"a", "c"};
    if (with_qwp) train.elements.push_back({ElementKind::QWP, qwp_deg, "a", ""});
    train.elements.push_back({ElementKind::HWP, rot_deg, "a", ""});
    train.elements.push_back({ElementKind::BD, 0.0, "", ""});
    train.elements.push_back({ElementKind::HWP, 45.0, "a", ""});
    train.elements.push_back({ElementKind::HWP, 45.0, "b", ""});
    train.elements.push_back({ElementKind::HWP, atten_deg, "b", ""});
    train.elements.push_back({ElementKind::BD, 0.0, "", ""});
    train.elements.push_back({ElementKind::HWP, 45.0, "b", ""});
    return train;
}

}  // namespace

OpticalTrain real_train_a(double theta1_deg, double theta3_deg) {
    return lossy_train(theta1_deg, theta3_deg, false, 0.0);
}

OpticalTrain real_train_b(double theta5_deg, double theta7_deg) {
    return lossy_train(theta5_deg, theta7_deg, false, 0.0);
}

OpticalTrain complex_train_a(double theta1_deg, double theta3_deg, double theta_a_deg) {
    if (theta_a_deg != 0.0)
        throw std::invalid_argument("complex_train_a: QWP angle must be 0 deg (not in v1)");
    return lossy_train(theta1_deg, theta3_deg, true, theta_a_deg);
}

OpticalTrain complex_train_b(double theta5_deg, double theta7_deg, double theta_b_deg) {
    if (theta_b_deg != 0.0)
        throw std::invalid_argument("complex_train_b: QWP angle must be 0 deg (not in v1)");
    return lossy_train(theta5_deg, theta7_deg, true, theta_b_deg);
}

OperatorRecipe real_recipe(double theta_rot_deg, double theta_atten_deg) {
    double d = -std::cos(2.0 * deg_to_rad(theta_atten_deg));
    OperatorMatrix s(2, {Complex(d), 0.0, 0.0, 1.0});
    OperatorMatrix u = hwp_matrix(theta_rot_deg);
    return {s * u, s, u, d >= -kClassifyTol};
}

OperatorRecipe complex_recipe(double theta_rot_deg, double theta_atten_deg, double theta_qwp_deg) {
    if (theta_qwp_deg != 0.0)
        throw std::invalid_argument("complex_recipe: QWP angle must be 0 deg (not in v1)");
    double d = -std::cos(2.0 * deg_to_rad(theta_atten_deg));
    OperatorMatrix s(2, {Complex(d), 0.0, 0.0, 1.0});
    OperatorMatrix u = hwp_matrix(theta_rot_deg) * qwp_matrix(theta_qwp_deg);
    return {s * u, s, u, d >= -kClassifyTol};
}

OperatorMatrix operator_real(double theta1_deg, double theta3_deg) {
    return real_recipe(theta1_deg, theta3_deg).op;
}

OperatorMatrix operator_real_b(double theta5_deg, double theta7_deg) {
    return real_recipe(theta5_deg, theta7_deg).op;
}

OperatorMatrix operator_complex(double theta1_deg, double theta3_deg, double theta_a_deg) {
    return complex_recipe(theta1_deg, theta3_deg, theta_a_deg).op;
}

OperatorMatrix operator_complex_b(double theta5_deg, double theta7_deg, double theta_b_deg) {
    return complex_recipe(theta5_deg, theta7_deg, theta_b_deg).op;
}

}  // namespace nhlab
