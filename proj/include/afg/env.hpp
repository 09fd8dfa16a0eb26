#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "afg/errors.hpp"

namespace afg {

enum class EntityKind : unsigned char { Factor, Result };

// Identifier of one observable entity. Factors and results are indexed
// densely from 0; effective factors occupy the lowest factor indices and
// result k is produced by the factor result_map maps onto it.
struct EntityId {
    EntityKind kind{EntityKind::Factor};
    int index{0};

    friend auto operator<=>(const EntityId&, const EntityId&) = default;
};

inline EntityId factor_id(int index) { return {EntityKind::Factor, index}; }
inline EntityId result_id(int index) { return {EntityKind::Result, index}; }

std::string entity_label(const EntityId& id);   // "f3", "r1"
EntityId parse_entity_label(const std::string& text);

// Observation value. Unobserved means the entity was outside the scope the
// observation was taken under, which carries no evidence either way.
enum class Tri : unsigned char { Off = 0, On = 1, Unobserved = 2 };

// Observation boundary: how many past steps are visible and which entities.
struct Scope {
    int temporal_window{1};
    std::set<EntityId> spatial_set;

    bool contains(const EntityId& id) const { return spatial_set.count(id) != 0; }
};

// Snapshot of factor enablement and result presence at one time step.
struct EnvState {
    int time{0};
    std::vector<Tri> factors;
    std::vector<Tri> results;
};

struct FactorToggle {
    int factor{0};
    bool enable{true};

    friend auto operator<=>(const FactorToggle&, const FactorToggle&) = default;
};

struct EnvSpec {
    int num_effective{3};
    int num_disturbing{4};
    // effective factor index -> result index; empty means the identity map.
    std::map<int, int> result_map;
    int drift_interval{1};      // steps between random toggles in observer mode
    int drift_toggle_count{1};  // distinct factors flipped per drift event
    int causation_delay{0};     // steps between factor enablement and result
    int max_steps{200};         // trial step budget

    int num_factors() const { return num_effective + num_disturbing; }
    int num_results() const { return num_effective; }

    // Throws ErrorCode::Config on a non-bijective map or out-of-range counts.
    void validate() const;
    std::map<int, int> effective_map() const;  // resolved map (identity default)
};

// Deterministic seeded simulation of the factor -> result world. Factors are
// boolean switches; each effective factor produces exactly one result after
// causation_delay steps. Disturbing factors never produce results.
//
// Identical (spec, seed) gives bit-identical trajectories for the same call
// sequence: the drift sampler uses raw engine output, never library
// distributions.
class Environment {
public:
    Environment(EnvSpec spec, std::uint64_t seed);

    // Read-only snapshot restricted to scope; out-of-scope entries are
    // reported Unobserved. Never advances time.
    EnvState observe(const Scope& scope) const;
    EnvState observe_full() const;

    // Applies the toggles, advances one step, then applies causation.
    // Returns the post-step full state.
    EnvState apply_intervention(const std::vector<FactorToggle>& toggles);

    // Advances one step; on every drift_interval-th step flips
    // drift_toggle_count distinct uniformly chosen factors.
    EnvState drift_step();

    // Harness-only oracle: the effective factor mapped to result_id.
    int ground_truth(int result_id) const;

    int time() const { return time_; }
    int num_factors() const { return spec_.num_factors(); }
    int num_results() const { return spec_.num_results(); }
    const EnvSpec& spec() const { return spec_; }
    std::uint64_t seed() const { return seed_; }
    bool last_step_drifted() const { return last_step_drifted_; }

    Scope full_scope() const;

private:
    void validate_scope(const Scope& scope) const;
    void advance_time_and_apply_causation();
    std::uint64_t next_uniform(std::uint64_t bound);  // in [0, bound)

    EnvSpec spec_;
    std::uint64_t seed_;
    std::mt19937_64 rng_;
    std::vector<int> result_source_;           // result index -> factor index
    std::vector<char> factors_;                // current enablement
    std::vector<char> results_;                // current presence
    std::deque<std::vector<char>> history_;    // factor snapshots, newest last
    int time_{0};
    bool last_step_drifted_{false};
};

} // namespace afg
