#include "doctest.h"

#include "afg/screening.hpp"
#include "support.hpp"

using namespace afg;
using support::scope_over;

namespace {

Difference make_diff(EntityId where, Direction dir = Direction::Appeared,
                     double magnitude = 1.0, int occurrences = 1, int held = 1) {
    Difference d;
    d.dimension = Dimension::Spatial;
    d.location = where;
    d.direction = dir;
    d.delta_magnitude = magnitude;
    d.occurrence_count = occurrences;
    d.held_steps = held;
    return d;
}

DifferenceSet set_of(std::vector<Difference> items) {
    DifferenceSet set;
    set.items = std::move(items);
    return set;
}

const DiffSignature kR0{Dimension::Spatial, result_id(0), Direction::Appeared};
const DiffSignature kR1{Dimension::Spatial, result_id(1), Direction::Appeared};
const DiffSignature kF0{Dimension::Spatial, factor_id(0), Direction::Appeared};

} // namespace

TEST_CASE("cooccurrence counts one trial column per observation") {
    CooccurrenceStats stats;
    stats.record_observation("act", set_of({make_diff(result_id(0)), make_diff(result_id(1))}), true);
    // duplicated signature still counts once for the trial
    stats.record_observation(
        "act", set_of({make_diff(result_id(0)), make_diff(result_id(0), Direction::Appeared)}),
        true);
    stats.record_observation("act", set_of({}), false);

    CHECK(stats.trials_with_action("act") == 2);
    CHECK(stats.trials_without_action("act") == 1);
    CHECK(stats.count_with_action("act", kR0) == 2);
    CHECK(stats.count_with_action("act", kR1) == 1);
    CHECK(stats.count_without_action("act", kR0) == 0);
    CHECK(stats.trials_with_action("other") == 0);
}

TEST_CASE("cooccurrence score spans the full range") {
    CooccurrenceStats stats;
    CHECK_THROWS_AS(stats.cooccurrence_score("act", kR0), Error);

    stats.record_observation("act", set_of({make_diff(result_id(0))}), true);
    stats.record_observation("act", set_of({make_diff(result_id(0))}), true);
    // no non-action trials yet: baseline probability is zero
    CHECK(stats.cooccurrence_score("act", kR0) == doctest::Approx(1.0));
    CHECK(stats.cooccurrence_score("act", kR1) == doctest::Approx(0.0));

    stats.record_observation("act", set_of({make_diff(result_id(1))}), false);
    stats.record_observation("act", set_of({make_diff(result_id(1))}), false);
    CHECK(stats.cooccurrence_score("act", kR0) == doctest::Approx(1.0));
    CHECK(stats.cooccurrence_score("act", kR1) == doctest::Approx(-1.0));

    stats.record_observation("act", set_of({make_diff(result_id(1))}), true);
    stats.record_observation("act", set_of({}), true);
    // 1/4 with the action, 2/2 without
    CHECK(stats.cooccurrence_score("act", kR1) == doctest::Approx(0.25 - 1.0));
}

TEST_CASE("action screening keeps strong candidates, strongest first") {
    CooccurrenceStats stats;
    stats.record_observation("act", set_of({make_diff(result_id(0)), make_diff(result_id(1))}), true);
    stats.record_observation("act", set_of({make_diff(result_id(0)), make_diff(result_id(1))}), true);
    stats.record_observation("act", set_of({make_diff(result_id(0))}), true);
    stats.record_observation("act", set_of({make_diff(result_id(0))}), true);
    // r0 scores 1.0, r1 scores 0.5, f0 scores 0.0

    const auto delta =
        set_of({make_diff(factor_id(0)), make_diff(result_id(1)), make_diff(result_id(0))});
    const DegreeWeights w;

    auto kept = screen_by_action(stats, "act", delta, 0.5, w, 4);
    REQUIRE(kept.size() == 2);  // threshold is inclusive: 0.5 stays
    CHECK(kept[0].difference.location == result_id(0));
    CHECK(kept[0].score == doctest::Approx(1.0));
    CHECK(kept[1].difference.location == result_id(1));
    CHECK(kept[1].score == doctest::Approx(0.5));

    kept = screen_by_action(stats, "act", delta, -1.0, w, 4);
    CHECK(kept.size() == 3);
    CHECK(kept[2].difference.location == factor_id(0));

    CHECK(screen_by_action(stats, "act", set_of({}), 0.5, w, 4).empty());
    CHECK_THROWS_AS(screen_by_action(stats, "act", delta, 1.5, w, 4), Error);
    CHECK_THROWS_AS(screen_by_action(stats, "act", delta, -1.01, w, 4), Error);
}

TEST_CASE("equal scores fall back to degree, then identity order") {
    CooccurrenceStats stats;
    stats.record_observation("act", set_of({}), true);  // every signature scores 0

    // same score, higher degree first
    auto kept = screen_by_action(
        stats, "act",
        set_of({make_diff(result_id(2), Direction::Appeared, 1.0, 1, 1),
                make_diff(result_id(1), Direction::Appeared, 1.0, 3, 1)}),
        -1.0, DegreeWeights{}, 4);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].difference.location == result_id(1));

    // full tie: factor location sorts before result location
    kept = screen_by_action(
        stats, "act", set_of({make_diff(result_id(0)), make_diff(factor_id(3))}), -1.0,
        DegreeWeights{}, 4);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].difference.location == factor_id(3));
}

TEST_CASE("expectation screening reorders without dropping") {
    std::vector<Candidate> candidates;
    for (int i = 0; i < 4; ++i)
        candidates.push_back({make_diff(result_id(i)), 0.0, 0.0});

    ExpectationTemplate want_r2;
    want_r2.expected_location = result_id(2);
    ExpectationTemplate want_r1;
    want_r1.expected_location = result_id(1);

    const auto ranked = screen_by_expectation(candidates, {want_r2, want_r1});
    REQUIRE(ranked.size() == 4);
    // matches float up in their original relative order; the rest keep theirs
    CHECK(ranked[0].difference.location == result_id(1));
    CHECK(ranked[1].difference.location == result_id(2));
    CHECK(ranked[2].difference.location == result_id(0));
    CHECK(ranked[3].difference.location == result_id(3));

    const auto untouched = screen_by_expectation(candidates, {});
    for (std::size_t i = 0; i < candidates.size(); ++i)
        CHECK(untouched[i].difference.location == candidates[i].difference.location);
}

TEST_CASE("templates match on any present field and reject all-wildcards") {
    ExpectationTemplate by_direction;
    by_direction.expected_direction = Direction::Disappeared;
    CHECK(by_direction.matches({Dimension::Spatial, result_id(0), Direction::Disappeared}));
    CHECK(by_direction.matches({Dimension::Temporal, factor_id(5), Direction::Disappeared}));
    CHECK_FALSE(by_direction.matches(kR0));

    ExpectationTemplate both;
    both.expected_location = result_id(2);
    both.expected_direction = Direction::Appeared;
    CHECK(both.matches({Dimension::Spatial, result_id(2), Direction::Appeared}));
    CHECK_FALSE(both.matches({Dimension::Spatial, result_id(2), Direction::Disappeared}));

    const ExpectationTemplate wildcards;
    CHECK_THROWS_AS(wildcards.validate(), Error);
    CHECK_THROWS_AS(screen_by_expectation({}, {wildcards}), Error);
}

TEST_CASE("correctness verdicts follow the precedence ladder") {
    const DegreeWeights w;
    MixedMemory memory;
    const Scenario here{"sim", "full", 0};

    // candidate scoring 0.7 with window 4: significant, not abnormal
    const auto mild = make_diff(result_id(2), Direction::Appeared, 0.2);
    // candidate scoring exactly 1.5: abnormal
    const auto wild = make_diff(result_id(2), Direction::Appeared, 1.0);

    auto verdict = judge_correctness(mild, memory, 0, 2, w, 4);
    CHECK(verdict.status == VerdictStatus::Unknown);
    CHECK(verdict.rationale == VerdictReason::NoPrior);

    verdict = judge_correctness(wild, memory, 0, 2, w, 4);
    CHECK(verdict.status == VerdictStatus::Suspect);
    CHECK(verdict.rationale == VerdictReason::AbnormalNovel);

    memory.record("act", mild.signature(), here, set_of({mild}), w, 4);
    verdict = judge_correctness(mild, memory, 1, 2, w, 4);
    CHECK(verdict.status == VerdictStatus::Unknown);
    CHECK(verdict.rationale == VerdictReason::BelowRepeatThreshold);

    verdict = judge_correctness(mild, memory, 2, 2, w, 4);
    CHECK(verdict.status == VerdictStatus::Reliable);
    CHECK(verdict.rationale == VerdictReason::PriorMatchRepeated);

    // a known-but-underrepeated abnormal candidate is still suspect
    memory.record("act", wild.signature(), here, set_of({wild}), w, 4);
    verdict = judge_correctness(wild, memory, 1, 2, w, 4);
    CHECK(verdict.rationale == VerdictReason::AbnormalNovel);
    // ...and repetition rehabilitates it
    verdict = judge_correctness(wild, memory, 2, 2, w, 4);
    CHECK(verdict.status == VerdictStatus::Reliable);

    CHECK_THROWS_AS(judge_correctness(mild, memory, 5, 0, w, 4), Error);
}

TEST_CASE("a remembered opposite direction overrides everything") {
    const DegreeWeights w;
    MixedMemory memory;
    const auto gone = make_diff(result_id(2), Direction::Disappeared, 0.2);
    memory.record("act", gone.signature(), Scenario{"sim", "full", 0}, set_of({gone}), w, 4);

    const auto came = make_diff(result_id(2), Direction::Appeared, 0.2);
    const auto verdict = judge_correctness(came, memory, 100, 2, w, 4);
    CHECK(verdict.status == VerdictStatus::Suspect);
    CHECK(verdict.rationale == VerdictReason::MemoryContradicts);

    // matching direction at a different location is not a conflict
    const auto elsewhere = make_diff(result_id(1), Direction::Appeared, 0.2);
    CHECK(judge_correctness(elsewhere, memory, 0, 2, w, 4).rationale == VerdictReason::NoPrior);
}

TEST_CASE("high evidence alone never yields reliable without a prior") {
    const DegreeWeights w;
    const MixedMemory memory;
    const auto mild = make_diff(result_id(0), Direction::Appeared, 0.2);
    const auto verdict = judge_correctness(mild, memory, 1000, 2, w, 4);
    CHECK(verdict.status == VerdictStatus::Unknown);
}

TEST_CASE("absence analysis ranks explanations by scope coverage") {
    ExpectationTemplate in_scope;
    in_scope.expected_location = result_id(2);
    ExpectationTemplate out_of_scope;
    out_of_scope.expected_location = result_id(5);

    const auto scope = scope_over(3, 3);
    const DifferenceSet nothing;

    auto ranked = analyze_absence("act", {in_scope}, scope, nothing);
    REQUIRE(ranked.size() == 4);
    CHECK(ranked[0] == AbsenceHypothesis::DelayedEffect);
    CHECK(ranked[1] == AbsenceHypothesis::InsufficientStrength);
    CHECK(ranked[2] == AbsenceHypothesis::Interference);
    CHECK(ranked[3] == AbsenceHypothesis::LimitedScope);

    ranked = analyze_absence("act", {out_of_scope}, scope, nothing);
    CHECK(ranked[0] == AbsenceHypothesis::LimitedScope);
    CHECK(ranked[1] == AbsenceHypothesis::DelayedEffect);
    CHECK(ranked[2] == AbsenceHypothesis::InsufficientStrength);
    CHECK(ranked[3] == AbsenceHypothesis::Interference);

    // direction-only expectations have no location to fall out of scope
    ExpectationTemplate by_direction;
    by_direction.expected_direction = Direction::Appeared;
    ranked = analyze_absence("act", {by_direction}, scope, nothing);
    CHECK(ranked[0] == AbsenceHypothesis::DelayedEffect);
}

TEST_CASE("absence analysis rejects bad inputs") {
    const auto scope = scope_over(3, 3);
    CHECK_THROWS_AS(analyze_absence("act", {}, scope, DifferenceSet{}), Error);

    ExpectationTemplate want;
    want.expected_location = result_id(0);
    const auto observed = set_of({make_diff(result_id(0))});
    CHECK_THROWS_AS(analyze_absence("act", {want}, scope, observed), Error);
}
