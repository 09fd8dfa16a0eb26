#include "afg/screening.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace afg {

void CooccurrenceStats::record_observation(const std::string& action_sig,
                                           const DifferenceSet& delta,
                                           bool action_performed) {
    auto& trial = trials_[action_sig];
    if (action_performed)
        ++trial.with_action;
    else
        ++trial.without_action;

    std::set<DiffSignature> seen;
    for (const auto& item : delta.items) {
        if (!seen.insert(item.signature()).second)
            continue;  // one count per signature per trial
        auto& split = counts_[{action_sig, item.signature()}];
        if (action_performed)
            ++split.with_action;
        else
            ++split.without_action;
    }
}

long CooccurrenceStats::trials_with_action(const std::string& action_sig) const {
    const auto it = trials_.find(action_sig);
    return it == trials_.end() ? 0 : it->second.with_action;
}

long CooccurrenceStats::trials_without_action(const std::string& action_sig) const {
    const auto it = trials_.find(action_sig);
    return it == trials_.end() ? 0 : it->second.without_action;
}

long CooccurrenceStats::count_with_action(const std::string& action_sig,
                                          const DiffSignature& sig) const {
    const auto it = counts_.find({action_sig, sig});
    return it == counts_.end() ? 0 : it->second.with_action;
}

long CooccurrenceStats::count_without_action(const std::string& action_sig,
                                             const DiffSignature& sig) const {
    const auto it = counts_.find({action_sig, sig});
    return it == counts_.end() ? 0 : it->second.without_action;
}

double CooccurrenceStats::cooccurrence_score(const std::string& action_sig,
                                             const DiffSignature& sig) const {
    const long with_trials = trials_with_action(action_sig);
    if (with_trials < 1)
        raise(ErrorCode::InsufficientData,
              "no action trials recorded for " + action_sig);
    const long without_trials = trials_without_action(action_sig);
    const double p_given_action =
        static_cast<double>(count_with_action(action_sig, sig)) /
        static_cast<double>(with_trials);
    const double p_without_action =
        without_trials == 0
            ? 0.0
            : static_cast<double>(count_without_action(action_sig, sig)) /
                  static_cast<double>(without_trials);
    return p_given_action - p_without_action;
}

bool ExpectationTemplate::matches(const DiffSignature& sig) const {
    if (expected_location && *expected_location != sig.location)
        return false;
    if (expected_direction && *expected_direction != sig.direction)
        return false;
    return true;
}

void ExpectationTemplate::validate() const {
    if (!expected_location && !expected_direction)
        raise(ErrorCode::Config, "expectation template is all wildcards");
}

const char* verdict_status_name(VerdictStatus s) {
    switch (s) {
    case VerdictStatus::Reliable: return "reliable";
    case VerdictStatus::Suspect: return "suspect";
    case VerdictStatus::Unknown: return "unknown";
    }
    return "?";
}

const char* verdict_reason_name(VerdictReason r) {
    switch (r) {
    case VerdictReason::PriorMatchRepeated: return "prior-match-repeated";
    case VerdictReason::MemoryContradicts: return "memory-contradicts";
    case VerdictReason::AbnormalNovel: return "abnormal-novel";
    case VerdictReason::NoPrior: return "no-prior";
    case VerdictReason::BelowRepeatThreshold: return "below-repeat-threshold";
    }
    return "?";
}

const char* absence_hypothesis_name(AbsenceHypothesis h) {
    switch (h) {
    case AbsenceHypothesis::InsufficientStrength: return "insufficient-strength";
    case AbsenceHypothesis::LimitedScope: return "limited-scope";
    case AbsenceHypothesis::Interference: return "interference";
    case AbsenceHypothesis::DelayedEffect: return "delayed-effect";
    }
    return "?";
}

std::vector<Candidate> screen_by_action(const CooccurrenceStats& stats,
                                        const std::string& action_sig,
                                        const DifferenceSet& delta, double threshold,
                                        const DegreeWeights& weights, int window) {
    if (threshold < -1.0 || threshold > 1.0)
        raise(ErrorCode::Misuse, "screen threshold must lie in [-1,1]");
    std::vector<Candidate> kept;
    for (const auto& item : delta.items) {
        const double score = stats.cooccurrence_score(action_sig, item.signature());
        if (score >= threshold)
            kept.push_back({item, score, degree(item, weights, window)});
    }
    std::sort(kept.begin(), kept.end(), [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score)
            return a.score > b.score;
        if (a.degree_score != b.degree_score)
            return a.degree_score > b.degree_score;
        return std::tuple(a.difference.location, a.difference.dimension,
                          a.difference.direction) <
               std::tuple(b.difference.location, b.difference.dimension,
                          b.difference.direction);
    });
    return kept;
}

std::vector<Candidate> screen_by_expectation(std::vector<Candidate> candidates,
                                             const std::vector<ExpectationTemplate>& templates) {
    for (const auto& t : templates)
        t.validate();
    if (templates.empty())
        return candidates;
    std::stable_partition(candidates.begin(), candidates.end(), [&](const Candidate& c) {
        return std::any_of(templates.begin(), templates.end(),
                           [&](const ExpectationTemplate& t) {
                               return t.matches(c.difference.signature());
                           });
    });
    return candidates;
}

Verdict judge_correctness(const Difference& candidate, const MixedMemory& memory,
                          long repeat_evidence, long repeat_threshold,
                          const DegreeWeights& weights, int window) {
    if (repeat_threshold < 1)
        raise(ErrorCode::Misuse, "repeat_threshold must be >= 1");
    const auto sig = candidate.signature();
    if (memory.has_conflicting_record(sig))
        return {VerdictStatus::Suspect, VerdictReason::MemoryContradicts};
    const bool known = memory.has_exact_record(sig);
    if (known && repeat_evidence >= repeat_threshold)
        return {VerdictStatus::Reliable, VerdictReason::PriorMatchRepeated};
    if (classify(degree(candidate, weights, window), weights) == DegreeClass::Abnormal)
        return {VerdictStatus::Suspect, VerdictReason::AbnormalNovel};
    return {VerdictStatus::Unknown,
            known ? VerdictReason::BelowRepeatThreshold : VerdictReason::NoPrior};
}

std::vector<AbsenceHypothesis> analyze_absence(const std::string& action_sig,
                                               const std::vector<ExpectationTemplate>& templates,
                                               const Scope& scope,
                                               const DifferenceSet& observed) {
    (void)action_sig;
    if (templates.empty())
        raise(ErrorCode::Misuse, "absence analysis needs at least one expectation");
    for (const auto& t : templates) {
        t.validate();
        for (const auto& item : observed.items)
            if (t.matches(item.signature()))
                raise(ErrorCode::Misuse, "expected difference was in fact observed");
    }
    const bool location_out_of_scope =
        std::any_of(templates.begin(), templates.end(), [&](const ExpectationTemplate& t) {
            return t.expected_location && !scope.contains(*t.expected_location);
        });
    if (location_out_of_scope)
        return {AbsenceHypothesis::LimitedScope, AbsenceHypothesis::DelayedEffect,
                AbsenceHypothesis::InsufficientStrength, AbsenceHypothesis::Interference};
    return {AbsenceHypothesis::DelayedEffect, AbsenceHypothesis::InsufficientStrength,
            AbsenceHypothesis::Interference, AbsenceHypothesis::LimitedScope};
}

} // namespace afg
