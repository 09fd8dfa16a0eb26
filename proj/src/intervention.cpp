#include "afg/intervention.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace afg {

void ActionPlan::validate() const {
    std::set<int> seen;
    for (const auto& toggle : toggles)
        if (!seen.insert(toggle.factor).second)
            raise(ErrorCode::Intervention,
                  "factor toggled twice in one plan: f" + std::to_string(toggle.factor));
    for (const auto& op : scope_ops)
        if (op.kind == ScopeOpKind::ReduceSpatial && op.ids.empty())
            raise(ErrorCode::Scope, "reduce op keeps nothing visible");
}

void UtilityWeights::validate() const {
    if (!(alpha > 0.0) || !(beta > 0.0) || !(gamma > 0.0))
        raise(ErrorCode::Config, "utility weights must be strictly positive");
}

std::vector<ActionPlan> propose_plans(const std::set<int>& hypotheses,
                                      const EnvState& current, const Scope& scope,
                                      const EnvSpec& spec, int budget,
                                      bool last_delta_empty) {
    if (budget < 1)
        raise(ErrorCode::Misuse, "toggle budget must be >= 1");

    std::vector<ActionPlan> plans;
    for (const int f : hypotheses) {
        if (f < 0 || f >= static_cast<int>(current.factors.size()))
            raise(ErrorCode::Intervention, "hypothesis names unknown factor f" +
                                               std::to_string(f));
        const bool enable = current.factors[f] != Tri::On;
        ActionPlan plan;
        plan.toggles.push_back({f, enable});
        plan.label = "toggle:" + entity_label(factor_id(f)) + ":" +
                     (enable ? "on" : "off");
        plans.push_back(std::move(plan));
    }

    const bool window_maxed = scope.temporal_window >= spec.max_steps;
    std::set<EntityId> hidden;
    for (int f = 0; f < spec.num_factors(); ++f)
        if (!scope.contains(factor_id(f)))
            hidden.insert(factor_id(f));
    for (int r = 0; r < spec.num_results(); ++r)
        if (!scope.contains(result_id(r)))
            hidden.insert(result_id(r));

    if (last_delta_empty || hypotheses.empty()) {
        if (!hidden.empty()) {
            ActionPlan plan;
            plan.scope_ops.push_back({ScopeOpKind::ExpandSpatial, hidden});
            plan.label = "scope:expand-spatial";
            plans.push_back(std::move(plan));
        }
        if (!window_maxed) {
            ActionPlan plan;
            plan.scope_ops.push_back({ScopeOpKind::ExpandTemporal, {}});
            plan.label = "scope:expand-temporal";
            plans.push_back(std::move(plan));
        }
    }

    if (plans.empty())
        raise(ErrorCode::NoPlan, "no hypotheses left and scope is already maximal");
    return plans;
}

PlanAssessment assess_plan(const ActionPlan& plan, const PlanEvidence& predicted,
                           const UtilityWeights& weights) {
    weights.validate();
    plan.validate();
    if (predicted.budget < 1)
        raise(ErrorCode::Misuse, "evidence budget must be >= 1");

    PlanAssessment out;
    out.rel = predicted.cooccurrence
                  ? std::clamp((*predicted.cooccurrence + 1.0) / 2.0, 0.0, 1.0)
                  : 0.5;
    out.cost = static_cast<double>(plan.toggles.size() + plan.scope_ops.size()) /
               static_cast<double>(predicted.budget);
    const double before = static_cast<double>(std::max<long>(1, predicted.hypotheses_before - 1));
    out.amb = std::clamp(static_cast<double>(predicted.hypotheses_after - 1) / before, 0.0, 1.0);
    out.utility = weights.alpha * out.rel - weights.beta * out.cost - weights.gamma * out.amb;
    return out;
}

ActionPlan select_plan(const std::vector<ActionPlan>& plans,
                       const std::function<PlanAssessment(const ActionPlan&)>& assessor,
                       int samples_per_plan) {
    if (plans.empty())
        raise(ErrorCode::Selection, "no plans to select from");
    if (samples_per_plan < 1)
        raise(ErrorCode::Misuse, "samples_per_plan must be >= 1");

    const auto lowest_factor = [](const ActionPlan& plan) {
        int lowest = std::numeric_limits<int>::max();
        for (const auto& toggle : plan.toggles)
            lowest = std::min(lowest, toggle.factor);
        return lowest;
    };

    const ActionPlan* best = nullptr;
    double best_utility = 0.0;
    double best_cost = 0.0;
    for (const auto& plan : plans) {
        double utility_sum = 0.0;
        double cost_sum = 0.0;
        for (int s = 0; s < samples_per_plan; ++s) {
            const auto assessment = assessor(plan);
            utility_sum += assessment.utility;
            cost_sum += assessment.cost;
        }
        const double mean_utility = utility_sum / samples_per_plan;
        const double mean_cost = cost_sum / samples_per_plan;
        const bool wins =
            !best || mean_utility > best_utility ||
            (mean_utility == best_utility &&
             (mean_cost < best_cost ||
              (mean_cost == best_cost && lowest_factor(plan) < lowest_factor(*best))));
        if (wins) {
            best = &plan;
            best_utility = mean_utility;
            best_cost = mean_cost;
        }
    }
    return *best;
}

FactorEffect compare_factor(ComparisonSession& session, int factor_id, bool level_one,
                            bool level_two) {
    if (!session.env)
        raise(ErrorCode::Misuse, "comparison session has no environment");
    if (level_one == level_two)
        raise(ErrorCode::Misuse, "comparison levels must differ");

    Environment& env = *session.env;
    const auto first = env.apply_intervention({{factor_id, level_one}});
    const auto second = env.apply_intervention({{factor_id, level_two}});
    session.interventions_used += 2;

    if (session.target_result < 0 ||
        session.target_result >= static_cast<int>(first.results.size()))
        raise(ErrorCode::Lookup, "unknown target result r" +
                                     std::to_string(session.target_result));
    const bool first_present = first.results[session.target_result] == Tri::On;
    const bool second_present = second.results[session.target_result] == Tri::On;
    const bool tracks = first_present == level_one && second_present == level_two;
    return tracks ? FactorEffect::Associated : FactorEffect::NotAssociated;
}

Scope expand_scope(const Scope& scope, const EnvSpec& spec) {
    Scope out = scope;
    out.temporal_window = std::min(spec.max_steps, scope.temporal_window * 2);
    for (int f = 0; f < spec.num_factors(); ++f)
        out.spatial_set.insert(factor_id(f));
    for (int r = 0; r < spec.num_results(); ++r)
        out.spatial_set.insert(result_id(r));
    return out;
}

Scope reduce_scope(const Scope& scope, const std::set<EntityId>& keep) {
    if (keep.empty())
        raise(ErrorCode::Scope, "scope reduction must keep at least one entity");
    for (const auto& id : keep)
        if (!scope.contains(id))
            raise(ErrorCode::Scope, "cannot keep " + entity_label(id) +
                                        ": not currently in scope");
    Scope out = scope;
    out.spatial_set = keep;
    return out;
}

std::set<Trigger> evaluate_triggers(const TriggerState& state) {
    if (state.goal_gap < 0.0)
        raise(ErrorCode::Misuse, "goal_gap cannot be negative");
    std::set<Trigger> fired;
    if (state.goal_gap > 0.0)
        fired.insert(Trigger::Goal);
    if (state.abnormal_seen)
        fired.insert(Trigger::AbnormalFeedback);
    if (state.self_cost_exceeded)
        fired.insert(Trigger::SelfImpact);
    return fired;
}

} // namespace afg
