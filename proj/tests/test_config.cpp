#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nhlab/config.hpp"
#include "nhlab/io.hpp"
#include "test_support.hpp"

using namespace nhlab;
using test_support::max_abs_diff;

TEST_CASE("config parsing basics") {
    ConfigFile config = ConfigFile::parse_string(
        "top = 1\n"
        "[sweep]\n"
        "start = -45  # inline comment\n"
        "stop = 45\n"
        "; full-line comment\n"
        "[noise]\n"
        "enabled = true\n",
        "test.ini");
    CHECK(config.has("main", "top"));
    CHECK(config.get_double("sweep", "start") == doctest::Approx(-45.0));
    CHECK(config.get_bool_or("noise", "enabled", false));
    CHECK(config.get_or("noise", "missing", "fallback") == "fallback");
    CHECK_FALSE(config.has("noise", "rate_scale"));
}

TEST_CASE("config errors carry file and line") {
    CHECK_THROWS_WITH_AS(ConfigFile::parse_string("just a line\n", "bad.ini"),
                         "bad.ini:1: expected key = value", std::runtime_error);

    ConfigFile config = ConfigFile::parse_string("[sweep]\nstep = fast\n", "cfg.ini");
    try {
        config.get_double("sweep", "step");
        FAIL("expected throw");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("cfg.ini:2") != std::string::npos);
    }
}

TEST_CASE("complex list and matrix parsing") {
    std::vector<Complex> values = parse_complex_list("(1,0) (0,-1)");
    REQUIRE(values.size() == 2);
    CHECK(values[0] == Complex(1.0, 0.0));
    CHECK(values[1] == Complex(0.0, -1.0));

    OperatorMatrix m = parse_matrix("(0,0) (1,0) (1,0) (0,0)", 2);
    CHECK(m.entry(0, 1) == Complex(1.0, 0.0));
    CHECK_THROWS(parse_matrix("(1,0)", 2));
    CHECK_THROWS(parse_complex_list("nonsense"));
}

TEST_CASE("train parsing matches the built-in builder") {
    ConfigFile config = ConfigFile::parse_string(
        "[train_a]\n"
        "element1 = HWP 22.5 a\n"
        "element2 = BD\n"
        "element3 = HWP 45 a\n"
        "element4 = HWP 45 b\n"
        "element5 = HWP 60 b\n"
        "element6 = BD\n"
        "element7 = HWP 45 b\n"
        "entry = a\n"
        "surviving = b\n"
        "lost = a c\n"
        "paths = a b c\n");
    OpticalTrain parsed = parse_train(config, "train_a");
    CHECK(max_abs_diff(train_operator(parsed).mat(),
                       train_operator(real_train_a(22.5, 60.0)).mat()) < 1e-12);

    CHECK_THROWS(parse_train(config, "train_b"));
}

TEST_CASE("custom trains override the angle-built operators") {
    ConfigFile config = ConfigFile::parse_string(
        "[angles]\n"
        "theta1 = 0\n"
        "theta3 = 0\n"
        "[train_a]\n"
        "element1 = HWP 22.5 a\n"
        "element2 = BD\n"
        "element3 = HWP 45 a\n"
        "element4 = HWP 45 b\n"
        "element5 = HWP 60 b\n"
        "element6 = BD\n"
        "element7 = HWP 45 b\n");
    ExperimentConfig experiment = load_experiment_config(config);
    REQUIRE(experiment.custom_a.has_value());
    CHECK(max_abs_diff(experiment.make_a().mat(), operator_real(22.5, 60.0).mat()) < 1e-12);
    // B stays angle-built.
    CHECK(max_abs_diff(experiment.make_b().mat(), operator_real_b(22.5, 75.0).mat()) < 1e-12);
}

TEST_CASE("experiment config validation") {
    ConfigFile real_with_qwp = ConfigFile::parse_string(
        "[main]\nmode = real\n[angles]\ntheta_a = 0\n", "r.ini");
    CHECK_THROWS_WITH_AS(load_experiment_config(real_with_qwp),
                         "r.ini:4: [angles] theta_a: not allowed in real mode",
                         std::runtime_error);

    ConfigFile complex_bad_qwp = ConfigFile::parse_string(
        "[main]\nmode = complex\n[angles]\ntheta_a = 10\n", "c.ini");
    CHECK_THROWS_AS(load_experiment_config(complex_bad_qwp), std::runtime_error);

    ConfigFile bad_step = ConfigFile::parse_string("[sweep]\nstep = 0\n", "s.ini");
    CHECK_THROWS_AS(load_experiment_config(bad_step), std::runtime_error);

    ConfigFile reversed = ConfigFile::parse_string("[sweep]\nstart = 10\nstop = -10\n", "v.ini");
    CHECK_THROWS_AS(load_experiment_config(reversed), std::runtime_error);

    ConfigFile bad_arm = ConfigFile::parse_string("[fringe]\narm_reflect = Q\n", "a.ini");
    CHECK_THROWS_AS(load_experiment_config(bad_arm), std::runtime_error);

    ConfigFile good = ConfigFile::parse_string(
        "[main]\nmode = complex\n[noise]\nenabled = on\nrate_scale = 100\nseed = 9\n");
    ExperimentConfig config = load_experiment_config(good);
    CHECK(config.mode == ExperimentMode::Complex);
    CHECK(config.angles.theta5 == doctest::Approx(0.0));  // complex default
    REQUIRE(config.noise.has_value());
    CHECK(config.noise->rate_scale == doctest::Approx(100.0));
    CHECK(config.noise->seed == 9);
}

TEST_CASE("mode-dependent operator construction") {
    ExperimentConfig real = default_experiment_config(ExperimentMode::Real);
    CHECK(real.make_a().is_real());
    CHECK(real.make_b().is_real());
    CHECK(real.arm_operator("I").is_unitary());
    CHECK_THROWS(real.arm_operator("X"));

    ExperimentConfig complex_mode = default_experiment_config(ExperimentMode::Complex);
    CHECK_FALSE(complex_mode.make_a().is_real());
    CHECK(std::abs(complex_mode.make_state(0.0).amplitude(0) - Complex(1.0)) < 1e-15);
}

TEST_CASE("fixed-width float formatting") {
    CHECK(format_g12(0.546875) == "0.546875");
    CHECK(format_g12(0.7165063509461096) == "0.716506350946");
    CHECK(format_g12(-45.0) == "-45");

    CsvWriter csv({"a", "b"});
    csv.add_row({"1", "2"});
    CHECK(csv.str() == "a,b\n1,2\n");
    CHECK_THROWS(csv.add_row({"1"}));
}
