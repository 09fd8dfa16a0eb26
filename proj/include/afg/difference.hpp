#pragma once

#include <optional>
#include <string>
#include <vector>

#include "afg/env.hpp"

namespace afg {

// Tie-break order for equal-degree differences: Temporal < Spatial <
// Magnitude < Frequency.
enum class Dimension : unsigned char { Temporal = 0, Spatial = 1, Magnitude = 2, Frequency = 3 };
enum class Direction : unsigned char { Appeared, Disappeared, Changed };

const char* dimension_name(Dimension d);
const char* direction_name(Direction d);
Dimension parse_dimension(const std::string& text);
Direction parse_direction(const std::string& text);

// Identity of a difference for co-occurrence stats and memory keys.
struct DiffSignature {
    Dimension dimension{Dimension::Spatial};
    EntityId location;
    Direction direction{Direction::Appeared};

    friend auto operator<=>(const DiffSignature&, const DiffSignature&) = default;
};

std::string signature_label(const DiffSignature& sig);   // "Spatial:r2:appeared"
DiffSignature parse_signature_label(const std::string& text);

// One detected change between two environment states.
struct Difference {
    Dimension dimension{Dimension::Spatial};
    EntityId location;
    Direction direction{Direction::Appeared};
    double delta_magnitude{1.0};  // 1.0 for boolean flips
    int first_seen{0};            // step index the change was first seen at
    int occurrence_count{1};      // occurrences within the observation window
    int held_steps{1};            // steps within the window the change held

    DiffSignature signature() const { return {dimension, location, direction}; }
};

struct DifferenceSet {
    std::vector<Difference> items;
    Scope scope;
    int from_time{0};
    int to_time{0};

    bool empty() const { return items.empty(); }
};

// Parameters of the degree-of-difference score and its class thresholds.
struct DegreeWeights {
    double w_magnitude{1.0};
    double w_frequency{1.0};
    double w_persistence{1.0};
    double theta_significant{0.5};
    double theta_abnormal{1.5};

    void validate() const;  // at least one positive weight, ordered thresholds
};

enum class DegreeClass : unsigned char { Minor, Significant, Abnormal };

const char* degree_class_name(DegreeClass c);

// Compares two snapshots entry by entry within scope. Entries unobserved in
// either snapshot are skipped. A change is Temporal when the snapshots are
// more than one step apart (it cannot be pinned to the immediate action
// step), Spatial otherwise.
//
// Throws ErrorCode::Comparison for mismatched layouts or reversed times.
DifferenceSet diff(const EnvState& before, const EnvState& after, const Scope& scope);

// score = w_m * min(|delta|, 1) + w_f * occurrences/window + w_p * held/window
double degree(const Difference& d, const DegreeWeights& weights, int window);

DegreeClass classify(double score, const DegreeWeights& weights);

// Argmax of degree over the set; ties broken by location then dimension then
// direction so repeated recordings key identically. Empty set gives nullopt.
std::optional<Difference> most_informative(const DifferenceSet& set,
                                           const DegreeWeights& weights, int window);

} // namespace afg
