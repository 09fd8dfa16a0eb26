#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "afg/difference.hpp"
#include "afg/env.hpp"
#include "afg/intervention.hpp"
#include "afg/reasoner.hpp"
#include "afg/stats.hpp"

namespace afg {

enum class Strategy : unsigned char { Active, Observer };
enum class Backend : unsigned char { Oracle, Remote };

const char* strategy_name(Strategy s);
const char* backend_name(Backend b);
Backend parse_backend(const std::string& text);

struct ExperimentConfig {
    EnvSpec env_spec;
    int target_result = 2;
    int num_trials = 100;
    std::uint64_t master_seed = 2024;
    bool run_active = true;
    bool run_observer = true;
    int max_queries_per_trial = 64;
    Backend backend = Backend::Oracle;
    UtilityWeights utility;
    DegreeWeights degree;
    double screen_threshold = 0.5;
    long repeat_threshold = 2;
    double epsilon = 0.05;
    long min_support = 10;
    long movability_threshold = 2;
    int samples_per_plan = 1;
    int intervention_budget = 5;
    int jobs = 0;  // 0 = all logical processors

    void validate() const;
};

struct TrialOutcome {
    Strategy strategy{Strategy::Active};
    int trial_index = 0;
    std::uint64_t seed = 0;
    long queries = 0;
    bool success = false;
    long steps_taken = 0;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<TrialOutcome> outcomes;  // active block first, observer second
    SampleSummary active;
    SampleSummary observer;
    WelchResult welch;
};

/// splitmix64 of the master seed and trial index; both strategies share the
/// per-index seed so they face identical environments.
std::uint64_t trial_seed(std::uint64_t master_seed, int trial_index);

std::unique_ptr<Reasoner> make_backend(const ExperimentConfig& config);

TrialOutcome run_trial(const ExperimentConfig& config, Strategy strategy,
                       int trial_index, Reasoner& backend);

ExperimentReport run_experiment(const ExperimentConfig& config);
ExperimentReport run_experiment(const ExperimentConfig& config, Reasoner& backend);

std::string render_csv(const ExperimentReport& report);
void export_csv(const ExperimentReport& report, const std::filesystem::path& path);
std::string render_summary(const ExperimentReport& report);

/// Flat key=value files; '#' starts a comment. Keys mirror the config field
/// names; unknown keys are configuration errors.
ExperimentConfig load_config(const std::filesystem::path& path);
void set_config_field(ExperimentConfig& config, const std::string& key,
                      const std::string& value);

} // namespace afg
