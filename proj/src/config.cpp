#include <fstream>
#include <sstream>

#include "afg/experiment.hpp"

namespace afg {
namespace {

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

long to_long(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long parsed = std::stol(value, &used);
        if (used != value.size())
            throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        raise(ErrorCode::Parse, "expected an integer for " + key + ": " + value);
    }
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size())
            throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        raise(ErrorCode::Parse, "expected a number for " + key + ": " + value);
    }
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const std::uint64_t parsed = std::stoull(value, &used);
        if (used != value.size())
            throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        raise(ErrorCode::Parse, "expected an unsigned integer for " + key + ": " + value);
    }
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1")
        return true;
    if (value == "false" || value == "0")
        return false;
    raise(ErrorCode::Parse, "expected true/false for " + key + ": " + value);
}

std::map<int, int> to_result_map(const std::string& value) {
    std::map<int, int> out;
    std::istringstream stream(value);
    std::string entry;
    while (std::getline(stream, entry, ',')) {
        const auto colon = entry.find(':');
        if (colon == std::string::npos)
            raise(ErrorCode::Parse, "result_map entries look like factor:result");
        out[static_cast<int>(to_long("result_map", trim(entry.substr(0, colon))))] =
            static_cast<int>(to_long("result_map", trim(entry.substr(colon + 1))));
    }
    return out;
}

} // namespace

void set_config_field(ExperimentConfig& config, const std::string& key,
                      const std::string& value) {
    if (key == "num_effective")
        config.env_spec.num_effective = static_cast<int>(to_long(key, value));
    else if (key == "num_disturbing")
        config.env_spec.num_disturbing = static_cast<int>(to_long(key, value));
    else if (key == "result_map")
        config.env_spec.result_map = to_result_map(value);
    else if (key == "drift_interval")
        config.env_spec.drift_interval = static_cast<int>(to_long(key, value));
    else if (key == "drift_toggle_count")
        config.env_spec.drift_toggle_count = static_cast<int>(to_long(key, value));
    else if (key == "causation_delay")
        config.env_spec.causation_delay = static_cast<int>(to_long(key, value));
    else if (key == "max_steps")
        config.env_spec.max_steps = static_cast<int>(to_long(key, value));
    else if (key == "target_result")
        config.target_result = static_cast<int>(to_long(key, value));
    else if (key == "num_trials")
        config.num_trials = static_cast<int>(to_long(key, value));
    else if (key == "master_seed")
        config.master_seed = to_u64(key, value);
    else if (key == "run_active")
        config.run_active = to_bool(key, value);
    else if (key == "run_observer")
        config.run_observer = to_bool(key, value);
    else if (key == "max_queries_per_trial")
        config.max_queries_per_trial = static_cast<int>(to_long(key, value));
    else if (key == "backend")
        config.backend = parse_backend(value);
    else if (key == "alpha")
        config.utility.alpha = to_double(key, value);
    else if (key == "beta")
        config.utility.beta = to_double(key, value);
    else if (key == "gamma")
        config.utility.gamma = to_double(key, value);
    else if (key == "w_magnitude")
        config.degree.w_magnitude = to_double(key, value);
    else if (key == "w_frequency")
        config.degree.w_frequency = to_double(key, value);
    else if (key == "w_persistence")
        config.degree.w_persistence = to_double(key, value);
    else if (key == "theta_significant")
        config.degree.theta_significant = to_double(key, value);
    else if (key == "theta_abnormal")
        config.degree.theta_abnormal = to_double(key, value);
    else if (key == "screen_threshold")
        config.screen_threshold = to_double(key, value);
    else if (key == "repeat_threshold")
        config.repeat_threshold = to_long(key, value);
    else if (key == "epsilon")
        config.epsilon = to_double(key, value);
    else if (key == "min_support")
        config.min_support = to_long(key, value);
    else if (key == "movability_threshold")
        config.movability_threshold = to_long(key, value);
    else if (key == "samples_per_plan")
        config.samples_per_plan = static_cast<int>(to_long(key, value));
    else if (key == "intervention_budget")
        config.intervention_budget = static_cast<int>(to_long(key, value));
    else if (key == "jobs")
        config.jobs = static_cast<int>(to_long(key, value));
    else
        raise(ErrorCode::Config, "unknown config key: " + key);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        raise(ErrorCode::Io, "cannot read config " + path.string());
    ExperimentConfig config;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto comment = line.find('#');
        if (comment != std::string::npos)
            line.resize(comment);
        const auto text = trim(line);
        if (text.empty())
            continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            raise(ErrorCode::Parse, path.string() + ":" + std::to_string(line_number) +
                                        ": expected key=value");
        set_config_field(config, trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
    }
    return config;
}

} // namespace afg
