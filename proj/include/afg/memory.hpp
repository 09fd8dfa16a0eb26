#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "afg/difference.hpp"

namespace afg {

// Context attributes an experience was recorded under.
struct Scenario {
    std::string env_tag;
    std::string scope_summary;
    long time_bucket{0};

    friend auto operator<=>(const Scenario&, const Scenario&) = default;
};

std::string scenario_label(const Scenario& s);
Scenario parse_scenario_label(const std::string& text);

enum class Generality : unsigned char { Specific, General };
enum class StoreKind : unsigned char { Obvious, Parametric };

const char* store_kind_name(StoreKind k);

// Memory key: the most informative difference of the recording event, plus
// optional distinguishing extras added by refine_key.
struct RecordKey {
    DiffSignature primary;
    std::vector<DiffSignature> extras;  // kept sorted

    int specificity() const { return static_cast<int>(extras.size()); }

    friend auto operator<=>(const RecordKey&, const RecordKey&) = default;
};

std::string record_key_label(const RecordKey& key);
RecordKey parse_record_key_label(const std::string& text);

struct RelationshipRecord {
    RecordKey key;
    std::string action_sig;
    DiffSignature feedback;
    std::vector<Scenario> scenarios;  // distinct, in first-seen order
    Generality generality{Generality::Specific};
    long evidence_count{1};
    StoreKind store{StoreKind::Obvious};
    long seq{0};  // insertion order, retrieval tie-break

    long distinct_scenarios() const { return static_cast<long>(scenarios.size()); }
};

// General iff the record's evidence spans at least movability_threshold
// distinct scenarios. Threshold below 2 is a contract violation.
Generality assess_movability(const RelationshipRecord& record, long distinct_scenarios,
                             long movability_threshold);

// Action -> feedback store with two sides: a frequency model for pairs with
// enough statistical support and an explicit keyed store for rare ones.
// Every pair carries exactly one store tag; tags are re-derived after each
// recording, so pairs migrate as their empirical probability crosses epsilon.
class MixedMemory {
public:
    MixedMemory(double epsilon = 0.05, long min_support = 10, long movability_threshold = 2);

    // Keys the event by the most informative difference of delta. Empty delta
    // cannot be keyed and raises ErrorCode::NoKey.
    void record(const std::string& action_sig, const DiffSignature& feedback,
                const Scenario& scenario, const DifferenceSet& delta,
                const DegreeWeights& weights, int window);

    // Pair count over total recorded events; unseen pairs give 0. Raises
    // ErrorCode::InsufficientData before the first event.
    double occurrence_prob(const std::string& action_sig, const DiffSignature& feedback) const;

    // Obvious iff occurrence_prob < epsilon or total events < min_support.
    StoreKind route(const std::string& action_sig, const DiffSignature& feedback) const;

    // Records whose key matches the most informative difference of observed,
    // with every extra key signature also present in observed. Most specific
    // first, then highest evidence, then insertion order.
    std::vector<const RelationshipRecord*> retrieve(const DifferenceSet& observed,
                                                    const DegreeWeights& weights,
                                                    int window) const;

    // Clones every record under base_key with (base_key + extra) as a more
    // specific sibling; the base records remain. Unknown key raises
    // ErrorCode::Lookup.
    void refine_key(const RecordKey& base_key, const DiffSignature& extra);

    bool has_exact_record(const DiffSignature& primary) const;
    bool has_conflicting_record(const DiffSignature& primary) const;
    long pair_count(const std::string& action_sig, const DiffSignature& feedback) const;
    long total_events() const { return total_events_; }
    double epsilon() const { return epsilon_; }
    long min_support() const { return min_support_; }
    const std::vector<RelationshipRecord>& records() const { return records_; }

    // One record per line; counts are rebuilt from base-record evidence on load.
    void save(const std::filesystem::path& path) const;
    static MixedMemory load(const std::filesystem::path& path);

private:
    void reroute_all();
    RelationshipRecord* find(const RecordKey& key, const std::string& action_sig,
                             const DiffSignature& feedback);

    double epsilon_;
    long min_support_;
    long movability_threshold_;
    long total_events_{0};
    std::map<std::pair<std::string, DiffSignature>, long> pair_counts_;
    std::vector<RelationshipRecord> records_;
    long next_seq_{0};
};

} // namespace afg
