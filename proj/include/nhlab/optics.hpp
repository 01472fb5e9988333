#pragma once

#include <map>
#include <string>
#include <vector>

#include "nhlab/qmath.hpp"

namespace nhlab {

/// Optical element kinds. Angles are degrees at the interface: fast-axis
/// angle for waveplates, phase for the shifter.
enum class ElementKind { HWP, QWP, BD, PBS, PhaseShifter, BS };

ElementKind element_kind_from_string(const std::string& name);
std::string to_string(ElementKind kind);

/// One element of an optical train. Waveplates and phase shifters act on a
/// single path; BD displaces the horizontal component of every occupied path
/// one step down the path order; PBS keeps horizontal on `path` and reflects
/// vertical to `path_b`; BS mixes `path` and `path_b` (transmit 1/sqrt2,
/// reflect i/sqrt2).
struct JonesElement {
    ElementKind kind;
    double angle_deg = 0.0;
    std::string path;
    std::string path_b;
};

/// Polarization amplitudes per spatial path. Paths come from a declared,
/// ordered label set; the total squared norm never exceeds 1.
class PathPolState {
public:
    PathPolState(std::vector<std::string> path_order, const std::string& entry_path,
                 const StateVector& input);

    const std::vector<std::string>& path_order() const { return order_; }
    bool has_path(const std::string& label) const;
    const Eigen::Vector2cd& amplitudes(const std::string& label) const;
    Eigen::Vector2cd& amplitudes(const std::string& label);

    double total_norm2() const;
    double path_norm2(const std::string& label) const;

private:
    std::vector<std::string> order_;
    std::map<std::string, Eigen::Vector2cd> amps_;
};

/// Ordered element sequence with one surviving path; everything on the
/// lost paths is discarded (the loss that makes compiled operators
/// non-unitary).
struct OpticalTrain {
    std::vector<JonesElement> elements;
    std::string entry_path = "a";
    std::string surviving_path = "b";
    std::vector<std::string> lost_paths;
    std::vector<std::string> path_order = {"a", "b", "c"};
};

/// [[cos2a, sin2a], [sin2a, -cos2a]] — unitary, Hermitian, involutory.
OperatorMatrix hwp_matrix(double angle_deg);

/// [[cos^2 b + i sin^2 b, (1-i) cos b sin b], [(1-i) cos b sin b, sin^2 b + i cos^2 b]].
OperatorMatrix qwp_matrix(double angle_deg);

/// Propagate the input through every element, keeping all paths.
PathPolState propagate_train(const OpticalTrain& train, const StateVector& input);

/// Amplitude left on the surviving path after the lost paths are discarded.
StateVector compile_train(const OpticalTrain& train, const StateVector& input);

/// The 2x2 operator a train implements (columns are its action on the
/// basis states; trains are linear maps after the lost paths are dropped).
OperatorMatrix train_operator(const OpticalTrain& train);

/// Element sequences matching the lossy two-BD interferometer construction:
/// waveplate, displace, swap both paths, attenuating waveplate, displace,
/// swap. The complex variants add a leading QWP.
OpticalTrain real_train_a(double theta1_deg, double theta3_deg);
OpticalTrain real_train_b(double theta5_deg, double theta7_deg);
OpticalTrain complex_train_a(double theta1_deg, double theta3_deg, double theta_a_deg = 0.0);
OpticalTrain complex_train_b(double theta5_deg, double theta7_deg, double theta_b_deg = 0.0);

/// Closed operator forms the trains compile to. These are fixed matrices
/// (independent of the input-state angle): diag(-cos 2*theta_atten, 1) times
/// the rotation waveplate, with a trailing QWP(0) for the complex variants.
OperatorMatrix operator_real(double theta1_deg, double theta3_deg);
OperatorMatrix operator_real_b(double theta5_deg, double theta7_deg);
/// Complex variants support only a 0-degree QWP; other angles throw.
OperatorMatrix operator_complex(double theta1_deg, double theta3_deg, double theta_a_deg = 0.0);
OperatorMatrix operator_complex_b(double theta5_deg, double theta7_deg, double theta_b_deg = 0.0);

/// The diagonal/unitary factor pair behind operator_real and friends.
/// The diagonal factor diag(-cos 2*theta_atten, 1) is only PSD for angles
/// where -cos 2*theta_atten >= 0; s_is_psd flags that. polar_decompose
/// always returns a canonical PSD factor, which may differ from this
/// diagonal by a sign absorbed into the unitary.
struct OperatorRecipe {
    OperatorMatrix op;
    OperatorMatrix s_factor;
    OperatorMatrix u_factor;
    bool s_is_psd;
};

OperatorRecipe real_recipe(double theta_rot_deg, double theta_atten_deg);
OperatorRecipe complex_recipe(double theta_rot_deg, double theta_atten_deg,
                              double theta_qwp_deg = 0.0);

double deg_to_rad(double degrees);

}  // namespace nhlab
