#include "afg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

#include "afg/memory.hpp"
#include "afg/screening.hpp"

namespace afg {
namespace {

std::string fmt(const char* format, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, value);
    return buf;
}

DiffSignature expected_feedback(const ActionPlan& plan, int target_result) {
    const bool enable = plan.toggles.front().enable;
    return {Dimension::Spatial, result_id(target_result),
            enable ? Direction::Appeared : Direction::Disappeared};
}

TrialOutcome observer_trial(const ExperimentConfig& config, int trial_index,
                            Reasoner& backend) {
    Environment env(config.env_spec, trial_seed(config.master_seed, trial_index));
    DedupReasoner dedup(backend);
    std::vector<EnvState> states{env.observe_full()};
    bool success = false;
    while (true) {
        const auto res = dedup.query({states, config.target_result});
        if (res.answer.status == AnswerStatus::Identified &&
            res.answer.identified_factor() == env.ground_truth(config.target_result)) {
            success = true;
            break;
        }
        if (dedup.fresh_queries() >= config.max_queries_per_trial)
            break;
        if (env.time() >= config.env_spec.max_steps)
            break;
        states.push_back(env.drift_step());
    }
    return {Strategy::Observer, trial_index, env.seed(), dedup.fresh_queries(),
            success, env.time()};
}

TrialOutcome active_trial(const ExperimentConfig& config, int trial_index,
                          Reasoner& backend) {
    Environment env(config.env_spec, trial_seed(config.master_seed, trial_index));
    DedupReasoner dedup(backend);
    CooccurrenceStats stats;
    MixedMemory memory(config.epsilon, config.min_support, config.movability_threshold);
    Scope scope = env.full_scope();
    std::vector<EnvState> states{env.observe(scope)};
    TriggerState triggers{1.0, false, false};
    bool last_delta_empty = false;
    bool success = false;

    while (true) {
        const auto res = dedup.query({states, config.target_result});
        if (res.answer.status == AnswerStatus::Identified &&
            res.answer.identified_factor() == env.ground_truth(config.target_result)) {
            success = true;
            break;
        }
        if (dedup.fresh_queries() >= config.max_queries_per_trial)
            break;
        if (env.time() >= config.env_spec.max_steps)
            break;
        if (evaluate_triggers(triggers).empty())
            break;  // nothing compels an intervention this step
        triggers.abnormal_seen = false;

        const auto& answer = res.answer;
        const auto plans = propose_plans(answer.hypotheses, states.back(), scope,
                                         config.env_spec, config.intervention_budget,
                                         last_delta_empty);
        const auto assessor = [&](const ActionPlan& plan) {
            PlanEvidence evidence;
            evidence.budget = config.intervention_budget;
            evidence.hypotheses_before = static_cast<long>(answer.hypotheses.size());
            if (plan.toggles.empty()) {
                evidence.hypotheses_after = evidence.hypotheses_before;
            } else {
                // Worst-case surviving hypotheses over the two possible target
                // outcomes of the hypothetical post-toggle state.
                auto factors = states.back().factors;
                for (const auto& toggle : plan.toggles)
                    factors[toggle.factor] = toggle.enable ? Tri::On : Tri::Off;
                long on_members = 0;
                for (const int f : answer.hypotheses)
                    if (factors[f] == Tri::On)
                        ++on_members;
                const long off_members = evidence.hypotheses_before - on_members;
                evidence.hypotheses_after =
                    std::max<long>(1, std::max(on_members, off_members));
                if (stats.trials_with_action(plan.label) >= 1)
                    evidence.cooccurrence = stats.cooccurrence_score(
                        plan.label, expected_feedback(plan, config.target_result));
            }
            return assess_plan(plan, evidence, config.utility);
        };
        const auto plan = select_plan(plans, assessor, config.samples_per_plan);

        for (const auto& op : plan.scope_ops) {
            if (op.kind == ScopeOpKind::ReduceSpatial)
                scope = reduce_scope(scope, op.ids);
            else
                scope = expand_scope(scope, config.env_spec);
        }
        const EnvState before = states.back();
        env.apply_intervention(plan.toggles);
        const EnvState after = env.observe(scope);
        states.push_back(after);

        const auto delta = diff(before, after, scope);
        last_delta_empty = delta.empty();
        stats.record_observation(plan.label, delta, !plan.toggles.empty());

        std::vector<ExpectationTemplate> templates;
        if (!plan.toggles.empty())
            templates.push_back({result_id(config.target_result), std::nullopt,
                                 TemplateSource::Reasoner});
        auto candidates = screen_by_action(stats, plan.label, delta,
                                           config.screen_threshold, config.degree,
                                           scope.temporal_window);
        candidates = screen_by_expectation(std::move(candidates), templates);
        if (!candidates.empty()) {
            const auto& top = candidates.front();
            const long evidence_seen =
                memory.pair_count(plan.label, top.difference.signature());
            const auto verdict =
                judge_correctness(top.difference, memory, evidence_seen,
                                  config.repeat_threshold, config.degree,
                                  scope.temporal_window);
            triggers.abnormal_seen = verdict.rationale == VerdictReason::AbnormalNovel;
            if (verdict.status != VerdictStatus::Suspect) {
                const Scenario scenario{
                    "sim" + std::to_string(config.env_spec.num_factors()),
                    std::to_string(scope.spatial_set.size()) + "v",
                    env.time() / 10};
                memory.record(plan.label, top.difference.signature(), scenario,
                              delta, config.degree, scope.temporal_window);
            }
        } else if (last_delta_empty && !templates.empty()) {
            (void)analyze_absence(plan.label, templates, scope, delta);
        }
    }
    return {Strategy::Active, trial_index, env.seed(), dedup.fresh_queries(), success,
            env.time()};
}

} // namespace

const char* strategy_name(Strategy s) {
    return s == Strategy::Active ? "active" : "observer";
}

const char* backend_name(Backend b) {
    return b == Backend::Oracle ? "oracle" : "remote";
}

Backend parse_backend(const std::string& text) {
    if (text == "oracle")
        return Backend::Oracle;
    if (text == "remote")
        return Backend::Remote;
    raise(ErrorCode::Config, "unknown backend: " + text);
}

void ExperimentConfig::validate() const {
    env_spec.validate();
    utility.validate();
    degree.validate();
    if (target_result < 0 || target_result >= env_spec.num_results())
        raise(ErrorCode::Config, "target_result out of range");
    if (num_trials < 2)
        raise(ErrorCode::Statistics, "num_trials must be >= 2 for statistics");
    if (max_queries_per_trial < 1)
        raise(ErrorCode::Config, "max_queries_per_trial must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        raise(ErrorCode::Config, "epsilon must lie in (0,1)");
    if (min_support < 1)
        raise(ErrorCode::Config, "min_support must be >= 1");
    if (movability_threshold < 2)
        raise(ErrorCode::Config, "movability_threshold must be >= 2");
    if (screen_threshold < -1.0 || screen_threshold > 1.0)
        raise(ErrorCode::Config, "screen_threshold must lie in [-1,1]");
    if (repeat_threshold < 1)
        raise(ErrorCode::Config, "repeat_threshold must be >= 1");
    if (samples_per_plan < 1)
        raise(ErrorCode::Config, "samples_per_plan must be >= 1");
    if (intervention_budget < 1)
        raise(ErrorCode::Config, "intervention_budget must be >= 1");
    if (jobs < 0)
        raise(ErrorCode::Config, "jobs cannot be negative");
}

std::uint64_t trial_seed(std::uint64_t master_seed, int trial_index) {
    std::uint64_t z = master_seed +
                      0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(trial_index) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::unique_ptr<Reasoner> make_backend(const ExperimentConfig& config) {
    if (config.backend == Backend::Remote)
        return std::make_unique<RemoteReasoner>(remote_config_from_env());
    return std::make_unique<OracleReasoner>();
}

TrialOutcome run_trial(const ExperimentConfig& config, Strategy strategy,
                       int trial_index, Reasoner& backend) {
    return strategy == Strategy::Active ? active_trial(config, trial_index, backend)
                                        : observer_trial(config, trial_index, backend);
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    const auto backend = make_backend(config);
    return run_experiment(config, *backend);
}

ExperimentReport run_experiment(const ExperimentConfig& config, Reasoner& backend) {
    config.validate();
    if (!config.run_active || !config.run_observer)
        raise(ErrorCode::Config, "the comparison needs both strategies enabled");

    struct Task {
        Strategy strategy;
        int trial_index;
    };
    std::vector<Task> tasks;
    tasks.reserve(2 * static_cast<std::size_t>(config.num_trials));
    for (int i = 0; i < config.num_trials; ++i)
        tasks.push_back({Strategy::Active, i});
    for (int i = 0; i < config.num_trials; ++i)
        tasks.push_back({Strategy::Observer, i});

    std::vector<TrialOutcome> outcomes(tasks.size());
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = std::min<unsigned>(
        config.jobs > 0 ? static_cast<unsigned>(config.jobs) : hw,
        static_cast<unsigned>(tasks.size()));

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    const auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size())
                return;
            try {
                outcomes[i] =
                    run_trial(config, tasks[i].strategy, tasks[i].trial_index, backend);
            } catch (...) {
                const std::lock_guard lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
                return;
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    if (first_error)
        std::rethrow_exception(first_error);

    ExperimentReport report;
    report.config = config;
    report.outcomes = std::move(outcomes);
    std::vector<double> active_queries, observer_queries;
    for (const auto& outcome : report.outcomes) {
        (outcome.strategy == Strategy::Active ? active_queries : observer_queries)
            .push_back(static_cast<double>(outcome.queries));
    }
    report.active = summarize(active_queries);
    report.observer = summarize(observer_queries);
    report.welch = welch_t(active_queries, observer_queries);
    return report;
}

std::string render_csv(const ExperimentReport& report) {
    std::string out = "strategy,trial,seed,queries,success,steps\n";
    for (const auto& o : report.outcomes) {
        out += strategy_name(o.strategy);
        out += ',' + std::to_string(o.trial_index);
        out += ',' + std::to_string(o.seed);
        out += ',' + std::to_string(o.queries);
        out += ',';
        out += o.success ? '1' : '0';
        out += ',' + std::to_string(o.steps_taken);
        out += '\n';
    }
    const auto summary_line = [](const char* name, const SampleSummary& s) {
        return std::string("# strategy=") + name + " mean=" + fmt("%.6f", s.mean) +
               " sd=" + fmt("%.6f", s.sd) + " max=" + fmt("%.6f", s.max) +
               " n=" + std::to_string(s.n) + "\n";
    };
    out += summary_line("active", report.active);
    out += summary_line("observer", report.observer);
    out += "# welch t=" + fmt("%.6f", report.welch.t) +
           " df=" + fmt("%.6f", report.welch.df) +
           " p=" + fmt("%.6f", report.welch.p_two_tailed) + "\n";
    return out;
}

void export_csv(const ExperimentReport& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);  // keep LF endings everywhere
    if (!out)
        raise(ErrorCode::Io, "cannot write " + path.string());
    out << render_csv(report);
    out.flush();
    if (!out)
        raise(ErrorCode::Io, "write failed for " + path.string());
}

std::string render_summary(const ExperimentReport& report) {
    const auto line = [](const char* name, const SampleSummary& s) {
        return std::string(name) + ": n=" + std::to_string(s.n) +
               " mean=" + fmt("%.6g", s.mean) + " sd=" + fmt("%.6g", s.sd) +
               " max=" + fmt("%.6g", s.max) + "\n";
    };
    std::string out;
    out += line("active  ", report.active);
    out += line("observer", report.observer);
    out += "welch: t=" + fmt("%.6g", report.welch.t) +
           " df=" + fmt("%.6g", report.welch.df) +
           " p=" + fmt("%.6g", report.welch.p_two_tailed) + "\n";
    return out;
}

} // namespace afg
