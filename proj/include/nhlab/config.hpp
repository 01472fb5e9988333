#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nhlab/noise.hpp"
#include "nhlab/optics.hpp"

namespace nhlab {

/// Flat key = value file with [section] headers, # or ; comments.
/// Lookups remember source line numbers so validation errors can point at
/// the offending line.
class ConfigFile {
public:
    static ConfigFile parse_file(const std::string& path);
    static ConfigFile parse_string(const std::string& text, const std::string& name = "<config>");

    bool has(const std::string& section, const std::string& key) const;
    bool has_section(const std::string& section) const;
    std::vector<std::string> keys(const std::string& section) const;

    std::string get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key,
                         double fallback) const;
    long long get_int_or(const std::string& section, const std::string& key,
                         long long fallback) const;
    bool get_bool_or(const std::string& section, const std::string& key, bool fallback) const;

    /// "config.ini:12: message" for the given key (or the file name when absent).
    [[noreturn]] void fail(const std::string& section, const std::string& key,
                           const std::string& message) const;

    const std::string& name() const { return name_; }

private:
    struct Entry {
        std::string value;
        int line = 0;
    };
    std::string name_;
    std::map<std::string, std::map<std::string, Entry>> sections_;
};

/// "(re,im) (re,im) ..." -> complex list; used for matrices and kets.
std::vector<Complex> parse_complex_list(const std::string& text);

/// Row-major dim x dim matrix from a complex pair list.
OperatorMatrix parse_matrix(const std::string& text, int dim);

/// Ordered element records "KIND angle path [path_b]" under one section
/// (element1, element2, ...), plus entry/surviving/lost/paths keys.
OpticalTrain parse_train(const ConfigFile& config, const std::string& section);

enum class ExperimentMode { Real, Complex };

struct SweepSpec {
    double start_deg = -45.0;
    double stop_deg = 45.0;
    double step_deg = 1.0;
};

struct AngleSet {
    double theta1 = 22.5;
    double theta3 = 60.0;
    double theta5 = 22.5;  // complex mode defaults to 0
    double theta7 = 75.0;
    double theta_a = 0.0;
    double theta_b = 0.0;
};

/// Validated CLI experiment configuration (angles in degrees).
struct ExperimentConfig {
    ExperimentMode mode = ExperimentMode::Real;
    SweepSpec sweep;
    AngleSet angles;
    std::optional<CountingModel> noise;
    std::string arm_reflect = "A";   // fringe subcommand: I | A | B
    std::string arm_transmit = "B";
    double fringe_theta0_deg = 0.0;
    // Custom [train_a]/[train_b] sections override the angle-built operators.
    std::optional<OperatorMatrix> custom_a;
    std::optional<OperatorMatrix> custom_b;

    OperatorMatrix make_a() const;
    OperatorMatrix make_b() const;
    StateVector make_state(double theta0_deg) const;
    OperatorMatrix arm_operator(const std::string& label) const;
};

ExperimentConfig default_experiment_config(ExperimentMode mode);
ExperimentConfig load_experiment_config(const ConfigFile& config);

}  // namespace nhlab
