#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "afg/env.hpp"

namespace afg {

enum class ScopeOpKind : unsigned char { ExpandTemporal, ExpandSpatial, ReduceSpatial };

struct ScopeOp {
    ScopeOpKind kind;
    std::set<EntityId> ids;  // targets for the spatial ops, unused for temporal
};

/// One candidate action: factor toggles plus scope adjustments, with an
/// opaque label used as the action signature in stats and memory.
struct ActionPlan {
    std::vector<FactorToggle> toggles;
    std::vector<ScopeOp> scope_ops;
    std::string label;

    void validate() const;
};

struct UtilityWeights {
    double alpha = 1.0;
    double beta = 0.1;
    double gamma = 0.5;

    void validate() const;
};

struct PlanAssessment {
    double rel = 0.0;
    double cost = 0.0;
    double amb = 0.0;
    double utility = 0.0;
};

/// Evidence feeding one assessment: the plan's expected feedback score (when
/// screening has one), the toggle budget, and hypothesis counts around the
/// hypothetical outcome.
struct PlanEvidence {
    std::optional<double> cooccurrence;  // in [-1,1]; nullopt = unknown
    int budget = 1;
    long hypotheses_before = 1;
    long hypotheses_after = 1;
};

struct TriggerState {
    double goal_gap = 0.0;
    bool abnormal_seen = false;
    bool self_cost_exceeded = false;
};

enum class Trigger : unsigned char { Goal, AbnormalFeedback, SelfImpact };

enum class FactorEffect : unsigned char { Associated, NotAssociated };

/// Owns nothing; counts the interventions spent by comparison probes on the
/// environment it points at.
struct ComparisonSession {
    Environment* env = nullptr;
    int target_result = 0;
    long interventions_used = 0;
};

std::vector<ActionPlan> propose_plans(const std::set<int>& hypotheses,
                                      const EnvState& current, const Scope& scope,
                                      const EnvSpec& spec, int budget,
                                      bool last_delta_empty);

PlanAssessment assess_plan(const ActionPlan& plan, const PlanEvidence& predicted,
                           const UtilityWeights& weights);

/// Argmax of the sample-mean utility; ties go to the cheaper plan, then the
/// lowest toggled factor id.
ActionPlan select_plan(const std::vector<ActionPlan>& plans,
                       const std::function<PlanAssessment(const ActionPlan&)>& assessor,
                       int samples_per_plan);

/// Two-point probe: set the factor to each level in turn and check whether
/// the target result tracks it both ways.
FactorEffect compare_factor(ComparisonSession& session, int factor_id, bool level_one,
                            bool level_two);

Scope expand_scope(const Scope& scope, const EnvSpec& spec);
Scope reduce_scope(const Scope& scope, const std::set<EntityId>& keep);

std::set<Trigger> evaluate_triggers(const TriggerState& state);

} // namespace afg
