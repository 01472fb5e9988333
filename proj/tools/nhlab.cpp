#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "nhlab/experiment.hpp"
#include "nhlab/io.hpp"

namespace {

using nhlab::Json;

struct GlobalOptions {
    std::string config_path;
    std::string out_dir = "out";
    std::string format = "csv";
    long long seed = -1;        // -1: keep the config value
    std::string noise = "";     // "", "on", "off"
    double theta0 = 0.0;
    bool theta0_set = false;
    int trials = 1000;
};

nhlab::ExperimentConfig load_config(const GlobalOptions& options, nhlab::ExperimentMode mode,
                                    bool force_mode) {
    nhlab::ExperimentConfig config;
    if (options.config_path.empty()) {
        config = nhlab::default_experiment_config(mode);
    } else {
        config =
            nhlab::load_experiment_config(nhlab::ConfigFile::parse_file(options.config_path));
        if (force_mode && config.mode != mode) {
            // Subcommand choice wins over the file's mode key.
            nhlab::ExperimentConfig fresh = nhlab::default_experiment_config(mode);
            fresh.sweep = config.sweep;
            fresh.noise = config.noise;
            fresh.arm_reflect = config.arm_reflect;
            fresh.arm_transmit = config.arm_transmit;
            fresh.fringe_theta0_deg = config.fringe_theta0_deg;
            config = fresh;
        }
    }
    if (options.noise == "on" && !config.noise) config.noise = nhlab::CountingModel{};
    if (options.noise == "off") config.noise.reset();
    if (options.seed >= 0 && config.noise)
        config.noise->seed = static_cast<std::uint64_t>(options.seed);
    if (options.theta0_set) config.fringe_theta0_deg = options.theta0;
    return config;
}

std::filesystem::path prepare_out_dir(const GlobalOptions& options) {
    std::filesystem::path dir(options.out_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

int finish(const std::filesystem::path& out_dir, const Json& failures) {
    if (failures.empty()) return 0;
    Json report{{"failures", failures}};
    std::string text = report.dump(2) + "\n";
    nhlab::write_text_file((out_dir / "failures.json").string(), text);
    std::cout << text;
    return 1;
}

Json sweep_failures(const nhlab::SweepResult& result, bool noisy) {
    Json failures = Json::array();
    for (const nhlab::SweepRow& row : result.rows) {
        double allowance = noisy && row.sigma ? 5.0 * row.sigma->slack : 0.0;
        if (row.slack < -1e-10 - allowance)
            failures.push_back(Json{{"check", "relation-satisfied"},
                                    {"theta0_deg", row.theta0_deg},
                                    {"slack", row.slack}});
        if (result.mode == nhlab::ExperimentMode::Real && row.equality_expected &&
            std::abs(row.slack) > 1e-10 + allowance)
            failures.push_back(Json{{"check", "real-equality"},
                                    {"theta0_deg", row.theta0_deg},
                                    {"slack", row.slack}});
    }
    return failures;
}

int run_sweep_command(const GlobalOptions& options, nhlab::ExperimentMode mode) {
    nhlab::ExperimentConfig config = load_config(options, mode, true);
    std::filesystem::path out_dir = prepare_out_dir(options);

    nhlab::SweepResult result = mode == nhlab::ExperimentMode::Real
                                    ? nhlab::run_real_sweep(config)
                                    : nhlab::run_complex_sweep(config);
    std::string base = mode == nhlab::ExperimentMode::Real ? "sweep_real" : "sweep_complex";
    std::string filename = base + (options.format == "json" ? ".json" : ".csv");
    if (options.format == "json")
        nhlab::write_text_file((out_dir / filename).string(), result.to_json().dump(2) + "\n");
    else
        nhlab::write_text_file((out_dir / filename).string(), result.to_csv());
    std::cout << base << ": " << result.rows.size() << " rows written to "
              << (out_dir / filename).string() << "\n";
    return finish(out_dir, sweep_failures(result, config.noise.has_value()));
}

int run_fringe_command(const GlobalOptions& options) {
    // The config's own mode (default real) decides what operators A and B are.
    nhlab::ExperimentConfig config = load_config(options, nhlab::ExperimentMode::Real, false);
    std::filesystem::path out_dir = prepare_out_dir(options);
    nhlab::FringeRun run = nhlab::run_fringe(config);
    nhlab::write_text_file((out_dir / "fringe.csv").string(), run.to_csv());
    nhlab::write_text_file((out_dir / "fringe.json").string(),
                           run.sidecar_json().dump(2) + "\n");
    std::cout << "fringe: visibility " << nhlab::format_g12(run.visibility) << ", fitted "
              << nhlab::format_g12(run.fitted_visibility) << ", written to "
              << (out_dir / "fringe.csv").string() << "\n";
    return 0;
}

int run_tmatrix_command(const GlobalOptions& options, const std::string& mode_name) {
    nhlab::ExperimentMode mode = mode_name == "complex" ? nhlab::ExperimentMode::Complex
                                                        : nhlab::ExperimentMode::Real;
    nhlab::ExperimentConfig config = load_config(options, mode, true);
    std::filesystem::path out_dir = prepare_out_dir(options);

    nhlab::OperatorMatrix a = config.make_a();
    nhlab::OperatorMatrix b = config.make_b();
    nhlab::StateVector state = config.make_state(config.fringe_theta0_deg);
    nhlab::TMatrix t = nhlab::gram_matrix(a, b, state);
    nhlab::TMagnitudes extracted = nhlab::full_t_extraction(a, b, state);
    nhlab::RelationReport relation = mode == nhlab::ExperimentMode::Real
                                         ? nhlab::check_real_equality(t)
                                         : nhlab::check_qubit_relation(t);

    Json direct{{"T12", std::abs(t.entry(0, 1))},
                {"T13", std::abs(t.entry(0, 2))},
                {"T22", std::abs(t.entry(1, 1))},
                {"T33", std::abs(t.entry(2, 2))},
                {"T23", std::abs(t.entry(1, 2))}};
    Json fringes{{"T12", extracted.t12},
                 {"T13", extracted.t13},
                 {"T22", extracted.t22},
                 {"T33", extracted.t33},
                 {"T23", extracted.t23}};
    Json report{{"mode", mode == nhlab::ExperimentMode::Real ? "real" : "complex"},
                {"theta0_deg", config.fringe_theta0_deg},
                {"direct", direct},
                {"from_fringes", fringes},
                {"relation",
                 Json{{"lhs", relation.lhs},
                      {"rhs", relation.rhs},
                      {"slack", relation.slack},
                      {"satisfied", relation.satisfied},
                      {"phase_phi", relation.phase_phi},
                      {"equality_expected", relation.equality_expected}}}};
    nhlab::write_text_file((out_dir / "tmatrix.json").string(), report.dump(2) + "\n");
    std::cout << report.dump(2) << "\n";

    Json failures = Json::array();
    for (auto& [key, value] : direct.items())
        if (std::abs(value.get<double>() - fringes[key].get<double>()) > 1e-9)
            failures.push_back(Json{{"check", "extraction-vs-direct"}, {"entry", key}});
    if (!relation.satisfied)
        failures.push_back(Json{{"check", "relation-satisfied"}, {"slack", relation.slack}});
    return finish(out_dir, failures);
}

int run_verify_command(const GlobalOptions& options) {
    std::filesystem::path out_dir = prepare_out_dir(options);
    std::uint64_t seed =
        options.seed >= 0 ? static_cast<std::uint64_t>(options.seed) : 20240801;
    std::vector<nhlab::CheckResult> checks = nhlab::run_property_suite(seed);

    Json failures = Json::array();
    Json report = Json::array();
    for (const nhlab::CheckResult& check : checks) {
        std::cout << (check.pass ? "[pass] " : "[FAIL] ") << check.name << ": " << check.detail
                  << "\n";
        report.push_back(
            Json{{"name", check.name}, {"pass", check.pass}, {"detail", check.detail}});
        if (!check.pass)
            failures.push_back(Json{{"check", check.name}, {"detail", check.detail}});
    }
    nhlab::write_text_file((out_dir / "verify.json").string(),
                           Json{{"seed", seed}, {"checks", report}}.dump(2) + "\n");
    return finish(out_dir, failures);
}

int run_entangle_command(const GlobalOptions& options) {
    if (options.config_path.empty())
        throw std::runtime_error("entangle: --config with an [entangle] section is required");
    nhlab::ConfigFile file = nhlab::ConfigFile::parse_file(options.config_path);
    std::filesystem::path out_dir = prepare_out_dir(options);
    Json report = nhlab::run_entanglement(file);
    nhlab::write_text_file((out_dir / "entangle.json").string(), report.dump(2) + "\n");
    std::cout << report.dump(2) << "\n";
    return 0;
}

int run_noise_calib_command(const GlobalOptions& options) {
    nhlab::ExperimentConfig config = load_config(options, nhlab::ExperimentMode::Real, false);
    if (!config.noise) config.noise = nhlab::CountingModel{};
    if (options.seed >= 0) config.noise->seed = static_cast<std::uint64_t>(options.seed);
    std::filesystem::path out_dir = prepare_out_dir(options);
    Json report = nhlab::run_noise_calibration(config, options.trials);
    nhlab::write_text_file((out_dir / "noise_calib.json").string(), report.dump(2) + "\n");
    std::cout << report.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"virtual Sagnac test bench for non-Hermitian operator relations"};
    app.require_subcommand(1);
    app.fallthrough();  // accept global flags after the subcommand name

    GlobalOptions options;
    app.add_option("--config", options.config_path, "configuration file (key = value sections)");
    app.add_option("--out", options.out_dir, "output directory")->capture_default_str();
    app.add_option("--seed", options.seed, "override the noise/verify seed");
    app.add_option("--noise", options.noise, "force noise on or off")
        ->check(CLI::IsMember({"on", "off"}));
    app.add_option("--format", options.format, "sweep output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    auto add_theta0 = [&options](CLI::App* cmd) {
        cmd->add_option("--theta0", options.theta0, "input-state angle, degrees")
            ->each([&options](const std::string&) { options.theta0_set = true; });
    };

    add_theta0(app.add_subcommand("fringe", "scan one interference fringe"));
    app.add_subcommand("sweep-real", "equality sweep with real operators");
    app.add_subcommand("sweep-complex", "bound sweep with complex operators");

    std::string tmatrix_mode = "real";
    auto* tmatrix = app.add_subcommand("tmatrix", "overlap magnitudes at one input angle");
    tmatrix->add_option("--mode", tmatrix_mode, "real or complex")
        ->check(CLI::IsMember({"real", "complex"}));
    add_theta0(tmatrix);

    app.add_subcommand("verify", "run the property suite");
    app.add_subcommand("entangle", "evaluate the separability criterion");

    auto* calib = app.add_subcommand("noise-calib", "compare propagated and Monte-Carlo errors");
    calib->add_option("--trials", options.trials, "Monte-Carlo trials")->capture_default_str();
    add_theta0(calib);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("fringe")) return run_fringe_command(options);
        if (app.got_subcommand("sweep-real"))
            return run_sweep_command(options, nhlab::ExperimentMode::Real);
        if (app.got_subcommand("sweep-complex"))
            return run_sweep_command(options, nhlab::ExperimentMode::Complex);
        if (app.got_subcommand("tmatrix")) return run_tmatrix_command(options, tmatrix_mode);
        if (app.got_subcommand("verify")) return run_verify_command(options);
        if (app.got_subcommand("entangle")) return run_entangle_command(options);
        if (app.got_subcommand("noise-calib")) return run_noise_calib_command(options);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
