#include "afg/afg.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "afg/env.hpp"
#include "afg/experiment.hpp"
#include "afg/stats.hpp"

struct afg_config {
    afg::ExperimentConfig value;
};

struct afg_report {
    afg::ExperimentReport value;
};

struct afg_env {
    afg::Environment value;

    afg_env(afg::EnvSpec spec, std::uint64_t seed) : value(std::move(spec), seed) {}
};

namespace {

thread_local std::string g_last_error;

afg_status to_status(afg::ErrorCode code) {
    using afg::ErrorCode;
    switch (code) {
    case ErrorCode::Config: return AFG_ERR_CONFIG;
    case ErrorCode::Scope: return AFG_ERR_SCOPE;
    case ErrorCode::Intervention: return AFG_ERR_INTERVENTION;
    case ErrorCode::Lookup: return AFG_ERR_LOOKUP;
    case ErrorCode::Comparison: return AFG_ERR_COMPARISON;
    case ErrorCode::InsufficientData: return AFG_ERR_INSUFFICIENT_DATA;
    case ErrorCode::NoPlan: return AFG_ERR_NO_PLAN;
    case ErrorCode::Selection: return AFG_ERR_SELECTION;
    case ErrorCode::NoKey: return AFG_ERR_NO_KEY;
    case ErrorCode::Misuse: return AFG_ERR_MISUSE;
    case ErrorCode::Statistics: return AFG_ERR_STATISTICS;
    case ErrorCode::DegenerateTest: return AFG_ERR_DEGENERATE_TEST;
    case ErrorCode::Inconsistent: return AFG_ERR_INCONSISTENT;
    case ErrorCode::Remote: return AFG_ERR_REMOTE;
    case ErrorCode::Io: return AFG_ERR_IO;
    case ErrorCode::Parse: return AFG_ERR_PARSE;
    }
    return AFG_ERR_UNKNOWN;
}

template <typename Fn>
afg_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return AFG_OK;
    } catch (const afg::Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return AFG_ERR_UNKNOWN;
    }
}

afg_status fail_misuse(const char* message) {
    g_last_error = message;
    return AFG_ERR_MISUSE;
}

char* dup_string(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (out)
        std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

} // namespace

extern "C" {

const char* afg_version(void) { return "1.0.0"; }

const char* afg_last_error(void) { return g_last_error.c_str(); }

void afg_string_free(char* text) { std::free(text); }

afg_config* afg_config_new(void) { return new afg_config{}; }

afg_status afg_config_load(const char* path, afg_config** out) {
    if (!path || !out)
        return fail_misuse("afg_config_load: null argument");
    return guarded([&] {
        auto loaded = std::make_unique<afg_config>();
        loaded->value = afg::load_config(path);
        *out = loaded.release();
    });
}

afg_status afg_config_set(afg_config* config, const char* key, const char* value) {
    if (!config || !key || !value)
        return fail_misuse("afg_config_set: null argument");
    return guarded([&] { afg::set_config_field(config->value, key, value); });
}

void afg_config_free(afg_config* config) { delete config; }

afg_status afg_run_experiment(const afg_config* config, afg_report** out) {
    if (!config || !out)
        return fail_misuse("afg_run_experiment: null argument");
    return guarded([&] {
        auto report = std::make_unique<afg_report>();
        report->value = afg::run_experiment(config->value);
        *out = report.release();
    });
}

afg_status afg_report_csv(const afg_report* report, char** out) {
    if (!report || !out)
        return fail_misuse("afg_report_csv: null argument");
    return guarded([&] { *out = dup_string(afg::render_csv(report->value)); });
}

afg_status afg_report_summary(const afg_report* report, char** out) {
    if (!report || !out)
        return fail_misuse("afg_report_summary: null argument");
    return guarded([&] { *out = dup_string(afg::render_summary(report->value)); });
}

afg_status afg_report_write_csv(const afg_report* report, const char* path) {
    if (!report || !path)
        return fail_misuse("afg_report_write_csv: null argument");
    return guarded([&] { afg::export_csv(report->value, path); });
}

afg_status afg_report_stat(const afg_report* report, const char* name, double* out) {
    if (!report || !name || !out)
        return fail_misuse("afg_report_stat: null argument");
    return guarded([&] {
        const std::string key = name;
        const auto& r = report->value;
        const auto pick = [&](const afg::SampleSummary& s,
                              const std::string& suffix) -> double {
            if (suffix == "mean")
                return s.mean;
            if (suffix == "sd")
                return s.sd;
            if (suffix == "max")
                return s.max;
            if (suffix == "n")
                return static_cast<double>(s.n);
            afg::raise(afg::ErrorCode::Lookup, "unknown report stat: " + key);
        };
        if (key == "t")
            *out = r.welch.t;
        else if (key == "df")
            *out = r.welch.df;
        else if (key == "p")
            *out = r.welch.p_two_tailed;
        else if (key.rfind("active_", 0) == 0)
            *out = pick(r.active, key.substr(7));
        else if (key.rfind("observer_", 0) == 0)
            *out = pick(r.observer, key.substr(9));
        else
            afg::raise(afg::ErrorCode::Lookup, "unknown report stat: " + key);
    });
}

void afg_report_free(afg_report* report) { delete report; }

afg_status afg_env_new(const afg_config* config, uint64_t seed, afg_env** out) {
    if (!config || !out)
        return fail_misuse("afg_env_new: null argument");
    return guarded([&] {
        auto env = std::make_unique<afg_env>(config->value.env_spec, seed);
        *out = env.release();
    });
}

afg_status afg_env_apply(afg_env* env, int factor, int enable) {
    if (!env)
        return fail_misuse("afg_env_apply: null environment");
    return guarded([&] {
        env->value.apply_intervention({{factor, enable != 0}});
    });
}

afg_status afg_env_drift(afg_env* env) {
    if (!env)
        return fail_misuse("afg_env_drift: null environment");
    return guarded([&] { env->value.drift_step(); });
}

afg_status afg_env_state(const afg_env* env, char** out) {
    if (!env || !out)
        return fail_misuse("afg_env_state: null argument");
    return guarded([&] {
        const auto state = env->value.observe_full();
        std::string line = "t=" + std::to_string(state.time) +
                           " drift=" + (env->value.last_step_drifted() ? "1" : "0") +
                           " | f ";
        for (const auto t : state.factors)
            line += t == afg::Tri::On ? '1' : '0';
        line += " | r ";
        for (const auto t : state.results)
            line += t == afg::Tri::On ? '1' : '0';
        *out = dup_string(line);
    });
}

afg_status afg_env_ground_truth(const afg_env* env, int result_id, int* out_factor) {
    if (!env || !out_factor)
        return fail_misuse("afg_env_ground_truth: null argument");
    return guarded([&] { *out_factor = env->value.ground_truth(result_id); });
}

int afg_env_time(const afg_env* env) { return env ? env->value.time() : -1; }

void afg_env_free(afg_env* env) { delete env; }

afg_status afg_welch_t(const double* a, size_t n_a, const double* b, size_t n_b,
                       double* t, double* df, double* p) {
    if (!a || !b || !t || !df || !p)
        return fail_misuse("afg_welch_t: null argument");
    return guarded([&] {
        const std::vector<double> sample_a(a, a + n_a);
        const std::vector<double> sample_b(b, b + n_b);
        const auto result = afg::welch_t(sample_a, sample_b);
        *t = result.t;
        *df = result.df;
        *p = result.p_two_tailed;
    });
}

} // extern "C"
