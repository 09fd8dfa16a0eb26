#include "doctest.h"

#include "afg/difference.hpp"
#include "support.hpp"

using namespace afg;
using support::make_state;
using support::scope_over;

TEST_CASE("identical states produce no differences") {
    const auto state = make_state("1010101", "010");
    const auto set = diff(state, state, scope_over(7, 3));
    CHECK(set.empty());
    CHECK(set.from_time == 0);
    CHECK(set.to_time == 0);
}

TEST_CASE("flips are reported with the right direction") {
    const auto before = make_state("000", "10", 3);
    const auto after = make_state("010", "00", 4);
    const auto set = diff(before, after, scope_over(3, 2));
    REQUIRE(set.items.size() == 2);

    const auto& f1 = set.items[0];
    CHECK(f1.location == factor_id(1));
    CHECK(f1.direction == Direction::Appeared);
    CHECK(f1.delta_magnitude == 1.0);
    CHECK(f1.first_seen == 4);

    const auto& r0 = set.items[1];
    CHECK(r0.location == result_id(0));
    CHECK(r0.direction == Direction::Disappeared);
}

TEST_CASE("unobserved entries on either side are skipped") {
    const auto before = make_state("0?1", "?", 0);
    const auto after = make_state("1?0", "1", 1);
    auto set = diff(before, after, scope_over(3, 1));
    REQUIRE(set.items.size() == 2);
    CHECK(set.items[0].location == factor_id(0));
    CHECK(set.items[1].location == factor_id(2));

    // unobserved only afterwards is skipped too
    set = diff(make_state("1", "0"), make_state("?", "0", 1), scope_over(1, 1));
    CHECK(set.empty());
}

TEST_CASE("scope restricts which entities are compared") {
    const auto before = make_state("00", "0", 0);
    const auto after = make_state("11", "1", 1);

    Scope narrow;
    narrow.temporal_window = 1;
    narrow.spatial_set = {factor_id(1)};
    const auto set = diff(before, after, narrow);
    REQUIRE(set.items.size() == 1);
    CHECK(set.items[0].location == factor_id(1));

    const Scope empty_scope;  // nothing in scope, nothing compared
    CHECK(diff(before, after, empty_scope).empty());

    Scope bad;
    bad.spatial_set = {result_id(4)};
    CHECK_THROWS_AS(diff(before, after, bad), Error);
}

TEST_CASE("mismatched layouts and reversed time are comparison errors") {
    const auto a = make_state("000", "0");
    CHECK_THROWS_AS(diff(a, make_state("0000", "0", 1), scope_over(3, 1)), Error);
    CHECK_THROWS_AS(diff(a, make_state("000", "00", 1), scope_over(3, 1)), Error);

    try {
        diff(make_state("0", "0", 5), make_state("1", "0", 2), scope_over(1, 1));
        FAIL("expected comparison error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Comparison);
    }
}

TEST_CASE("differences more than one step apart are temporal") {
    const auto before = make_state("0", "0", 0);
    const auto same_step = diff(before, make_state("1", "0", 0), scope_over(1, 1));
    const auto one_step = diff(before, make_state("1", "0", 1), scope_over(1, 1));
    const auto two_steps = diff(before, make_state("1", "0", 2), scope_over(1, 1));
    CHECK(same_step.items[0].dimension == Dimension::Spatial);
    CHECK(one_step.items[0].dimension == Dimension::Spatial);
    CHECK(two_steps.items[0].dimension == Dimension::Temporal);
}

TEST_CASE("degree combines magnitude, frequency, and persistence") {
    Difference d;
    d.delta_magnitude = 0.7;
    d.occurrence_count = 2;
    d.held_steps = 6;

    const DegreeWeights w;
    // 0.7 + 2/4 + min(6,4)/4
    CHECK(degree(d, w, 4) == doctest::Approx(2.2).epsilon(1e-12));

    d.delta_magnitude = 3.0;  // clamped to 1
    d.occurrence_count = 1;
    d.held_steps = 1;
    CHECK(degree(d, w, 1) == doctest::Approx(3.0).epsilon(1e-12));

    DegreeWeights scaled;
    scaled.w_magnitude = 2.0;
    scaled.w_frequency = 0.0;
    scaled.w_persistence = 0.5;
    d.held_steps = 2;
    CHECK(degree(d, scaled, 4) == doctest::Approx(2.0 + 0.5 * 0.5).epsilon(1e-12));

    CHECK_THROWS_AS(degree(d, w, 0), Error);
}

TEST_CASE("degree weights are validated") {
    DegreeWeights w;
    w.w_magnitude = -0.1;
    CHECK_THROWS_AS(w.validate(), Error);

    w = DegreeWeights{};
    w.w_magnitude = w.w_frequency = w.w_persistence = 0.0;
    CHECK_THROWS_AS(w.validate(), Error);

    w = DegreeWeights{};
    w.theta_significant = 1.5;  // == theta_abnormal
    CHECK_THROWS_AS(w.validate(), Error);
}

TEST_CASE("classification thresholds include their lower bound") {
    const DegreeWeights w;
    CHECK(classify(0.0, w) == DegreeClass::Minor);
    CHECK(classify(0.4999, w) == DegreeClass::Minor);
    CHECK(classify(0.5, w) == DegreeClass::Significant);
    CHECK(classify(1.4999, w) == DegreeClass::Significant);
    CHECK(classify(1.5, w) == DegreeClass::Abnormal);
    CHECK(classify(9.0, w) == DegreeClass::Abnormal);
}

TEST_CASE("most informative picks the highest degree") {
    DifferenceSet set;

    CHECK_FALSE(most_informative(set, DegreeWeights{}, 4).has_value());

    Difference weak;
    weak.location = result_id(0);
    weak.occurrence_count = 1;
    weak.held_steps = 1;
    Difference strong = weak;
    strong.location = result_id(1);
    strong.occurrence_count = 4;
    set.items = {weak, strong};

    const auto best = most_informative(set, DegreeWeights{}, 4);
    REQUIRE(best.has_value());
    CHECK(best->location == result_id(1));
}

TEST_CASE("equal degrees break ties on location, dimension, direction") {
    Difference a;
    a.location = result_id(2);
    Difference b = a;
    b.location = factor_id(5);  // factors order before results

    DifferenceSet set;
    set.items = {a, b};
    auto best = most_informative(set, DegreeWeights{}, 1);
    CHECK(best->location == factor_id(5));

    // same location: temporal beats spatial
    Difference c = a;
    c.dimension = Dimension::Temporal;
    a.dimension = Dimension::Spatial;
    set.items = {a, c};
    best = most_informative(set, DegreeWeights{}, 1);
    CHECK(best->dimension == Dimension::Temporal);

    // same location and dimension: appeared beats disappeared
    Difference d = a;
    d.direction = Direction::Disappeared;
    a.direction = Direction::Appeared;
    set.items = {d, a};
    best = most_informative(set, DegreeWeights{}, 1);
    CHECK(best->direction == Direction::Appeared);
}

TEST_CASE("signature labels round-trip") {
    DiffSignature sig{Dimension::Temporal, result_id(2), Direction::Disappeared};
    const auto label = signature_label(sig);
    CHECK(label == "temporal:r2:disappeared");
    CHECK(parse_signature_label(label) == sig);

    CHECK_THROWS_AS(parse_signature_label("spatial:r2"), Error);
    CHECK_THROWS_AS(parse_signature_label("sideways:r2:appeared"), Error);
    CHECK_THROWS_AS(parse_signature_label("spatial:q2:appeared"), Error);
    CHECK_THROWS_AS(parse_signature_label("spatial:r2:vanished"), Error);
}
