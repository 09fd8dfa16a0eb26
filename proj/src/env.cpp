#include "afg/env.hpp"

#include <algorithm>
#include <numeric>

namespace afg {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::Config: return "config";
    case ErrorCode::Scope: return "scope";
    case ErrorCode::Intervention: return "intervention";
    case ErrorCode::Lookup: return "lookup";
    case ErrorCode::Comparison: return "comparison";
    case ErrorCode::InsufficientData: return "insufficient-data";
    case ErrorCode::NoPlan: return "no-plan";
    case ErrorCode::Selection: return "selection";
    case ErrorCode::NoKey: return "no-key";
    case ErrorCode::Misuse: return "misuse";
    case ErrorCode::Statistics: return "statistics";
    case ErrorCode::DegenerateTest: return "degenerate-test";
    case ErrorCode::Inconsistent: return "inconsistent";
    case ErrorCode::Remote: return "remote";
    case ErrorCode::Io: return "io";
    case ErrorCode::Parse: return "parse";
    }
    return "unknown";
}

std::string entity_label(const EntityId& id) {
    return (id.kind == EntityKind::Factor ? "f" : "r") + std::to_string(id.index);
}

EntityId parse_entity_label(const std::string& text) {
    if (text.size() < 2 || (text[0] != 'f' && text[0] != 'r'))
        raise(ErrorCode::Parse, "bad entity label: " + text);
    for (std::size_t i = 1; i < text.size(); ++i)
        if (text[i] < '0' || text[i] > '9')
            raise(ErrorCode::Parse, "bad entity label: " + text);
    EntityKind kind = text[0] == 'f' ? EntityKind::Factor : EntityKind::Result;
    return {kind, std::stoi(text.substr(1))};
}

std::map<int, int> EnvSpec::effective_map() const {
    if (!result_map.empty())
        return result_map;
    std::map<int, int> identity;
    for (int i = 0; i < num_effective; ++i)
        identity[i] = i;
    return identity;
}

void EnvSpec::validate() const {
    if (num_effective < 1)
        raise(ErrorCode::Config, "num_effective must be >= 1");
    if (num_disturbing < 0)
        raise(ErrorCode::Config, "num_disturbing must be >= 0");
    if (drift_interval < 1)
        raise(ErrorCode::Config, "drift_interval must be >= 1");
    if (drift_toggle_count < 1 || drift_toggle_count > num_factors())
        raise(ErrorCode::Config, "drift_toggle_count must be in [1, num_factors]");
    if (causation_delay < 0)
        raise(ErrorCode::Config, "causation_delay must be >= 0");
    if (max_steps < 1)
        raise(ErrorCode::Config, "max_steps must be >= 1");

    const auto map = effective_map();
    if (static_cast<int>(map.size()) != num_effective)
        raise(ErrorCode::Config, "result_map must cover every effective factor");
    std::set<int> seen_results;
    for (const auto& [factor, result] : map) {
        if (factor < 0 || factor >= num_effective)
            raise(ErrorCode::Config, "result_map key " + std::to_string(factor) +
                                         " is not an effective factor");
        if (result < 0 || result >= num_results())
            raise(ErrorCode::Config, "result_map value " + std::to_string(result) +
                                         " is not a result");
        if (!seen_results.insert(result).second)
            raise(ErrorCode::Config, "result_map maps two factors to result " +
                                         std::to_string(result));
    }
}

Environment::Environment(EnvSpec spec, std::uint64_t seed)
    : spec_(std::move(spec)), seed_(seed), rng_(seed) {
    spec_.validate();
    result_source_.assign(spec_.num_results(), -1);
    for (const auto& [factor, result] : spec_.effective_map())
        result_source_[result] = factor;
    factors_.assign(spec_.num_factors(), 0);
    results_.assign(spec_.num_results(), 0);
    history_.push_back(factors_);
}

Scope Environment::full_scope() const {
    Scope scope;
    scope.temporal_window = spec_.max_steps;
    for (int f = 0; f < num_factors(); ++f)
        scope.spatial_set.insert(factor_id(f));
    for (int r = 0; r < num_results(); ++r)
        scope.spatial_set.insert(result_id(r));
    return scope;
}

void Environment::validate_scope(const Scope& scope) const {
    if (scope.temporal_window < 1)
        raise(ErrorCode::Scope, "temporal_window must be >= 1");
    if (scope.spatial_set.empty())
        raise(ErrorCode::Scope, "spatial_set must be nonempty");
    for (const auto& id : scope.spatial_set) {
        const int limit = id.kind == EntityKind::Factor ? num_factors() : num_results();
        if (id.index < 0 || id.index >= limit)
            raise(ErrorCode::Scope, "scope names unknown entity " + entity_label(id));
    }
}

EnvState Environment::observe(const Scope& scope) const {
    validate_scope(scope);
    EnvState state;
    state.time = time_;
    state.factors.assign(factors_.size(), Tri::Unobserved);
    state.results.assign(results_.size(), Tri::Unobserved);
    for (const auto& id : scope.spatial_set) {
        if (id.kind == EntityKind::Factor)
            state.factors[id.index] = factors_[id.index] ? Tri::On : Tri::Off;
        else
            state.results[id.index] = results_[id.index] ? Tri::On : Tri::Off;
    }
    return state;
}

EnvState Environment::observe_full() const {
    return observe(full_scope());
}

void Environment::advance_time_and_apply_causation() {
    ++time_;
    history_.push_back(factors_);
    const std::size_t keep = static_cast<std::size_t>(spec_.causation_delay) + 1;
    while (history_.size() > keep)
        history_.pop_front();
    // Result presence follows the factor snapshot causation_delay steps back;
    // before that snapshot exists the result is absent.
    const int lag = static_cast<int>(history_.size()) - 1 - spec_.causation_delay;
    for (int r = 0; r < num_results(); ++r) {
        if (lag < 0)
            results_[r] = 0;
        else
            results_[r] = history_[static_cast<std::size_t>(lag)][result_source_[r]];
    }
}

EnvState Environment::apply_intervention(const std::vector<FactorToggle>& toggles) {
    std::set<int> touched;
    for (const auto& toggle : toggles) {
        if (toggle.factor < 0 || toggle.factor >= num_factors())
            raise(ErrorCode::Intervention,
                  "toggle names unknown factor f" + std::to_string(toggle.factor));
        if (!touched.insert(toggle.factor).second)
            raise(ErrorCode::Intervention,
                  "factor f" + std::to_string(toggle.factor) + " toggled twice in one plan");
    }
    for (const auto& toggle : toggles)
        factors_[toggle.factor] = toggle.enable ? 1 : 0;
    last_step_drifted_ = false;
    advance_time_and_apply_causation();
    return observe_full();
}

std::uint64_t Environment::next_uniform(std::uint64_t bound) {
    return rng_() % bound;
}

EnvState Environment::drift_step() {
    last_step_drifted_ = (time_ + 1) % spec_.drift_interval == 0;
    if (last_step_drifted_) {
        // Partial Fisher-Yates: pick drift_toggle_count distinct factors.
        std::vector<int> pool(factors_.size());
        std::iota(pool.begin(), pool.end(), 0);
        for (int k = 0; k < spec_.drift_toggle_count; ++k) {
            const std::size_t pick =
                k + static_cast<std::size_t>(next_uniform(pool.size() - k));
            std::swap(pool[k], pool[pick]);
            factors_[pool[k]] ^= 1;
        }
    }
    advance_time_and_apply_causation();
    return observe_full();
}

int Environment::ground_truth(int result_id) const {
    if (result_id < 0 || result_id >= num_results())
        raise(ErrorCode::Lookup, "unknown result r" + std::to_string(result_id));
    return result_source_[result_id];
}

} // namespace afg
