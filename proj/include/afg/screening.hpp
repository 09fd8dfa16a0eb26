#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "afg/difference.hpp"
#include "afg/env.hpp"
#include "afg/memory.hpp"

namespace afg {

inline constexpr double kDefaultScreenThreshold = 0.5;
inline constexpr long kDefaultRepeatThreshold = 2;

/// Action/difference co-occurrence counters, one trial column per observation.
class CooccurrenceStats {
public:
    void record_observation(const std::string& action_sig, const DifferenceSet& delta,
                            bool action_performed);

    /// P(sig | action) - P(sig | no action); the latter is 0 with no
    /// non-action trials on record.
    double cooccurrence_score(const std::string& action_sig, const DiffSignature& sig) const;

    long trials_with_action(const std::string& action_sig) const;
    long trials_without_action(const std::string& action_sig) const;
    long count_with_action(const std::string& action_sig, const DiffSignature& sig) const;
    long count_without_action(const std::string& action_sig, const DiffSignature& sig) const;

private:
    struct Split {
        long with_action = 0;
        long without_action = 0;
    };
    std::map<std::string, Split> trials_;
    std::map<std::pair<std::string, DiffSignature>, Split> counts_;
};

struct Candidate {
    Difference difference;
    double score = 0.0;
    double degree_score = 0.0;
};

enum class TemplateSource : unsigned char { Reasoner, Memory };

/// Soft screening template; wildcards are nullopt, at least one field set.
struct ExpectationTemplate {
    std::optional<EntityId> expected_location;
    std::optional<Direction> expected_direction;
    TemplateSource source = TemplateSource::Reasoner;

    bool matches(const DiffSignature& sig) const;
    void validate() const;
};

enum class VerdictStatus : unsigned char { Reliable, Suspect, Unknown };

enum class VerdictReason : unsigned char {
    PriorMatchRepeated,
    MemoryContradicts,
    AbnormalNovel,
    NoPrior,
    BelowRepeatThreshold,
};

struct Verdict {
    VerdictStatus status;
    VerdictReason rationale;
};

const char* verdict_status_name(VerdictStatus s);
const char* verdict_reason_name(VerdictReason r);

enum class AbsenceHypothesis : unsigned char {
    InsufficientStrength,
    LimitedScope,
    Interference,
    DelayedEffect,
};

const char* absence_hypothesis_name(AbsenceHypothesis h);

/// Keep candidates whose co-occurrence with the action clears the threshold,
/// strongest first.
std::vector<Candidate> screen_by_action(const CooccurrenceStats& stats,
                                        const std::string& action_sig,
                                        const DifferenceSet& delta, double threshold,
                                        const DegreeWeights& weights, int window);

/// Stable partition: template matches float to the front, nothing is dropped.
std::vector<Candidate> screen_by_expectation(std::vector<Candidate> candidates,
                                             const std::vector<ExpectationTemplate>& templates);

Verdict judge_correctness(const Difference& candidate, const MixedMemory& memory,
                          long repeat_evidence, long repeat_threshold,
                          const DegreeWeights& weights, int window);

/// Rank explanations for expected feedback that never showed up.
std::vector<AbsenceHypothesis> analyze_absence(const std::string& action_sig,
                                               const std::vector<ExpectationTemplate>& templates,
                                               const Scope& scope,
                                               const DifferenceSet& observed);

} // namespace afg
