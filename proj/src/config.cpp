#include "nhlab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace nhlab {

namespace {

std::string trim(const std::string& s) {
    size_t begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    size_t end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

ConfigFile ConfigFile::parse_string(const std::string& text, const std::string& name) {
    ConfigFile config;
    config.name_ = name;
    std::istringstream stream(text);
    std::string line;
    std::string section = "main";
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        std::string body = trim(line);
        size_t comment = body.find_first_of("#;");
        if (comment != std::string::npos) body = trim(body.substr(0, comment));
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']')
                throw std::runtime_error(name + ":" + std::to_string(line_no) +
                                         ": unterminated section header");
            section = trim(body.substr(1, body.size() - 2));
            continue;
        }
        size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(name + ":" + std::to_string(line_no) +
                                     ": expected key = value");
        std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error(name + ":" + std::to_string(line_no) + ": empty key");
        config.sections_[section][key] = {value, line_no};
    }
    return config;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << file.rdbuf();
    return parse_string(buffer.str(), path);
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    auto it = sections_.find(section);
    return it != sections_.end() && it->second.count(key) > 0;
}

bool ConfigFile::has_section(const std::string& section) const {
    return sections_.count(section) > 0;
}

std::vector<std::string> ConfigFile::keys(const std::string& section) const {
    std::vector<std::string> out;
    auto it = sections_.find(section);
    if (it == sections_.end()) return out;
    for (const auto& [key, entry] : it->second) out.push_back(key);
    return out;
}

std::string ConfigFile::get(const std::string& section, const std::string& key) const {
    if (!has(section, key))
        throw std::runtime_error(name_ + ": missing [" + section + "] " + key);
    return sections_.at(section).at(key).value;
}

std::string ConfigFile::get_or(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
    return has(section, key) ? get(section, key) : fallback;
}

double ConfigFile::get_double(const std::string& section, const std::string& key) const {
    const std::string& text = get(section, key);
    try {
        size_t used = 0;
        double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return value;
    } catch (const std::exception&) {
        fail(section, key, "expected a number, got '" + text + "'");
    }
}

double ConfigFile::get_double_or(const std::string& section, const std::string& key,
                                 double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

long long ConfigFile::get_int_or(const std::string& section, const std::string& key,
                                 long long fallback) const {
    if (!has(section, key)) return fallback;
    const std::string& text = get(section, key);
    try {
        size_t used = 0;
        long long value = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return value;
    } catch (const std::exception&) {
        fail(section, key, "expected an integer, got '" + text + "'");
    }
}

bool ConfigFile::get_bool_or(const std::string& section, const std::string& key,
                             bool fallback) const {
    if (!has(section, key)) return fallback;
    std::string text = get(section, key);
    if (text == "true" || text == "on" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "off" || text == "0" || text == "no") return false;
    fail(section, key, "expected a boolean, got '" + text + "'");
}

void ConfigFile::fail(const std::string& section, const std::string& key,
                      const std::string& message) const {
    int line = 0;
    auto sec = sections_.find(section);
    if (sec != sections_.end()) {
        auto entry = sec->second.find(key);
        if (entry != sec->second.end()) line = entry->second.line;
    }
    std::string where = line > 0 ? name_ + ":" + std::to_string(line) : name_;
    throw std::runtime_error(where + ": [" + section + "] " + key + ": " + message);
}

std::vector<Complex> parse_complex_list(const std::string& text) {
    std::vector<Complex> values;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t open = text.find('(', pos);
        if (open == std::string::npos) {
            if (trim(text.substr(pos)).empty()) break;
            throw std::runtime_error("complex list: expected '(re,im)' near '" +
                                     text.substr(pos) + "'");
        }
        size_t close = text.find(')', open);
        if (close == std::string::npos)
            throw std::runtime_error("complex list: unterminated '(' entry");
        std::string pair = text.substr(open + 1, close - open - 1);
        size_t comma = pair.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("complex list: expected '(re,im)', got '(" + pair + ")'");
        try {
            double re = std::stod(trim(pair.substr(0, comma)));
            double im = std::stod(trim(pair.substr(comma + 1)));
            values.emplace_back(re, im);
        } catch (const std::exception&) {
            throw std::runtime_error("complex list: bad number in '(" + pair + ")'");
        }
        pos = close + 1;
    }
    if (values.empty()) throw std::runtime_error("complex list: no entries");
    return values;
}

OperatorMatrix parse_matrix(const std::string& text, int dim) {
    std::vector<Complex> values = parse_complex_list(text);
    if (static_cast<int>(values.size()) != dim * dim)
        throw std::runtime_error("matrix: expected " + std::to_string(dim * dim) +
                                 " entries, got " + std::to_string(values.size()));
    Eigen::MatrixXcd m(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m(r, c) = values[static_cast<size_t>(r * dim + c)];
    return OperatorMatrix(std::move(m));
}

namespace {

std::vector<std::string> split_words(const std::string& text) {
    std::istringstream stream(text);
    std::vector<std::string> words;
    std::string word;
    while (stream >> word) words.push_back(word);
    return words;
}

}  // namespace

OpticalTrain parse_train(const ConfigFile& config, const std::string& section) {
    if (!config.has_section(section))
        throw std::runtime_error(config.name() + ": missing [" + section + "] section");

    OpticalTrain train;
    train.entry_path = config.get_or(section, "entry", "a");
    train.surviving_path = config.get_or(section, "surviving", "b");
    train.lost_paths = split_words(config.get_or(section, "lost", "a c"));
    train.path_order = split_words(config.get_or(section, "paths", "a b c"));
    train.elements.clear();

    for (int i = 1;; ++i) {
        std::string key = "element" + std::to_string(i);
        if (!config.has(section, key)) break;
        std::vector<std::string> words = split_words(config.get(section, key));
        if (words.empty()) config.fail(section, key, "empty element record");
        JonesElement el;
        el.kind = element_kind_from_string(words[0]);
        if (words.size() > 1) {
            try {
                el.angle_deg = std::stod(words[1]);
            } catch (const std::exception&) {
                config.fail(section, key, "bad angle '" + words[1] + "'");
            }
        }
        if (words.size() > 2) el.path = words[2];
        if (words.size() > 3) el.path_b = words[3];
        train.elements.push_back(el);
    }
    if (train.elements.empty())
        throw std::runtime_error(config.name() + ": [" + section + "] has no element records");
    return train;
}

OperatorMatrix ExperimentConfig::make_a() const {
    if (custom_a) return *custom_a;
    return mode == ExperimentMode::Real
               ? operator_real(angles.theta1, angles.theta3)
               : operator_complex(angles.theta1, angles.theta3, angles.theta_a);
}

OperatorMatrix ExperimentConfig::make_b() const {
    if (custom_b) return *custom_b;
    return mode == ExperimentMode::Real
               ? operator_real_b(angles.theta5, angles.theta7)
               : operator_complex_b(angles.theta5, angles.theta7, angles.theta_b);
}

StateVector ExperimentConfig::make_state(double theta0_deg) const {
    double a = 2.0 * deg_to_rad(theta0_deg);
    return StateVector{Complex(std::cos(a)), Complex(std::sin(a))};
}

OperatorMatrix ExperimentConfig::arm_operator(const std::string& label) const {
    if (label == "I") return OperatorMatrix::identity(2);
    if (label == "A") return make_a();
    if (label == "B") return make_b();
    throw std::runtime_error("arm operator must be one of I, A, B; got '" + label + "'");
}

ExperimentConfig default_experiment_config(ExperimentMode mode) {
    ExperimentConfig config;
    config.mode = mode;
    if (mode == ExperimentMode::Complex) config.angles.theta5 = 0.0;
    return config;
}

ExperimentConfig load_experiment_config(const ConfigFile& file) {
    std::string mode_text = file.get_or("main", "mode", "real");
    ExperimentMode mode;
    if (mode_text == "real") {
        mode = ExperimentMode::Real;
    } else if (mode_text == "complex") {
        mode = ExperimentMode::Complex;
    } else {
        file.fail("main", "mode", "must be 'real' or 'complex', got '" + mode_text + "'");
    }

    ExperimentConfig config = default_experiment_config(mode);

    config.sweep.start_deg = file.get_double_or("sweep", "start", config.sweep.start_deg);
    config.sweep.stop_deg = file.get_double_or("sweep", "stop", config.sweep.stop_deg);
    config.sweep.step_deg = file.get_double_or("sweep", "step", config.sweep.step_deg);
    if (config.sweep.step_deg <= 0.0) file.fail("sweep", "step", "sweep step must be > 0");
    if (config.sweep.start_deg > config.sweep.stop_deg)
        file.fail("sweep", "start", "sweep start must be <= stop");

    if (mode == ExperimentMode::Real) {
        for (const char* key : {"theta_a", "theta_b"})
            if (file.has("angles", key))
                file.fail("angles", key, "not allowed in real mode");
    }
    config.angles.theta1 = file.get_double_or("angles", "theta1", config.angles.theta1);
    config.angles.theta3 = file.get_double_or("angles", "theta3", config.angles.theta3);
    config.angles.theta5 = file.get_double_or("angles", "theta5", config.angles.theta5);
    config.angles.theta7 = file.get_double_or("angles", "theta7", config.angles.theta7);
    if (mode == ExperimentMode::Complex) {
        config.angles.theta_a = file.get_double_or("angles", "theta_a", 0.0);
        config.angles.theta_b = file.get_double_or("angles", "theta_b", 0.0);
        if (config.angles.theta_a != 0.0)
            file.fail("angles", "theta_a", "only 0 deg is supported in v1");
        if (config.angles.theta_b != 0.0)
            file.fail("angles", "theta_b", "only 0 deg is supported in v1");
    }

    if (file.get_bool_or("noise", "enabled", false)) {
        CountingModel model;
        model.rate_scale = file.get_double_or("noise", "rate_scale", model.rate_scale);
        model.visibility_factor =
            file.get_double_or("noise", "visibility_factor", model.visibility_factor);
        model.seed = static_cast<std::uint64_t>(file.get_int_or("noise", "seed", 0));
        try {
            validate(model);
        } catch (const std::exception& e) {
            file.fail("noise", "rate_scale", e.what());
        }
        config.noise = model;
    }

    config.arm_reflect = file.get_or("fringe", "arm_reflect", config.arm_reflect);
    config.arm_transmit = file.get_or("fringe", "arm_transmit", config.arm_transmit);
    config.fringe_theta0_deg =
        file.get_double_or("fringe", "theta0", config.fringe_theta0_deg);
    for (const std::string& arm : {config.arm_reflect, config.arm_transmit})
        if (arm != "I" && arm != "A" && arm != "B")
            file.fail("fringe", "arm_reflect", "arms must be one of I, A, B; got '" + arm + "'");

    if (file.has_section("train_a"))
        config.custom_a = train_operator(parse_train(file, "train_a"));
    if (file.has_section("train_b"))
        config.custom_b = train_operator(parse_train(file, "train_b"));

    return config;
}

}  // namespace nhlab
