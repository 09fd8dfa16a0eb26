#include "afg/difference.hpp"

#include <algorithm>

namespace afg {

const char* dimension_name(Dimension d) {
    switch (d) {
    case Dimension::Temporal: return "temporal";
    case Dimension::Spatial: return "spatial";
    case Dimension::Magnitude: return "magnitude";
    case Dimension::Frequency: return "frequency";
    }
    return "?";
}

const char* direction_name(Direction d) {
    switch (d) {
    case Direction::Appeared: return "appeared";
    case Direction::Disappeared: return "disappeared";
    case Direction::Changed: return "changed";
    }
    return "?";
}

Dimension parse_dimension(const std::string& text) {
    if (text == "temporal") return Dimension::Temporal;
    if (text == "spatial") return Dimension::Spatial;
    if (text == "magnitude") return Dimension::Magnitude;
    if (text == "frequency") return Dimension::Frequency;
    raise(ErrorCode::Parse, "bad dimension: " + text);
}

Direction parse_direction(const std::string& text) {
    if (text == "appeared") return Direction::Appeared;
    if (text == "disappeared") return Direction::Disappeared;
    if (text == "changed") return Direction::Changed;
    raise(ErrorCode::Parse, "bad direction: " + text);
}

std::string signature_label(const DiffSignature& sig) {
    return std::string(dimension_name(sig.dimension)) + ":" + entity_label(sig.location) +
           ":" + direction_name(sig.direction);
}

DiffSignature parse_signature_label(const std::string& text) {
    const auto first = text.find(':');
    const auto second = text.find(':', first + 1);
    if (first == std::string::npos || second == std::string::npos)
        raise(ErrorCode::Parse, "bad difference signature: " + text);
    DiffSignature sig;
    sig.dimension = parse_dimension(text.substr(0, first));
    sig.location = parse_entity_label(text.substr(first + 1, second - first - 1));
    sig.direction = parse_direction(text.substr(second + 1));
    return sig;
}

void DegreeWeights::validate() const {
    if (w_magnitude < 0 || w_frequency < 0 || w_persistence < 0)
        raise(ErrorCode::Config, "degree weights must be nonnegative");
    if (w_magnitude == 0 && w_frequency == 0 && w_persistence == 0)
        raise(ErrorCode::Config, "at least one degree weight must be positive");
    if (!(theta_significant < theta_abnormal))
        raise(ErrorCode::Config, "theta_significant must be below theta_abnormal");
}

const char* degree_class_name(DegreeClass c) {
    switch (c) {
    case DegreeClass::Minor: return "minor";
    case DegreeClass::Significant: return "significant";
    case DegreeClass::Abnormal: return "abnormal";
    }
    return "?";
}

namespace {

void diff_entries(const std::vector<Tri>& before, const std::vector<Tri>& after,
                  EntityKind kind, const Scope& scope, Dimension dimension, int seen_at,
                  std::vector<Difference>& out) {
    for (std::size_t i = 0; i < before.size(); ++i) {
        const EntityId id{kind, static_cast<int>(i)};
        if (!scope.contains(id))
            continue;
        if (before[i] == Tri::Unobserved || after[i] == Tri::Unobserved)
            continue;
        if (before[i] == after[i])
            continue;
        Difference d;
        d.dimension = dimension;
        d.location = id;
        d.direction = after[i] == Tri::On ? Direction::Appeared : Direction::Disappeared;
        d.delta_magnitude = 1.0;
        d.first_seen = seen_at;
        d.occurrence_count = 1;
        d.held_steps = 1;
        out.push_back(d);
    }
}

} // namespace

DifferenceSet diff(const EnvState& before, const EnvState& after, const Scope& scope) {
    if (before.factors.size() != after.factors.size() ||
        before.results.size() != after.results.size())
        raise(ErrorCode::Comparison, "states have different layouts");
    if (before.time > after.time)
        raise(ErrorCode::Comparison, "before.time exceeds after.time");
    for (const auto& id : scope.spatial_set) {
        const auto limit =
            id.kind == EntityKind::Factor ? before.factors.size() : before.results.size();
        if (id.index < 0 || static_cast<std::size_t>(id.index) >= limit)
            raise(ErrorCode::Scope, "scope names unknown entity " + entity_label(id));
    }

    DifferenceSet set;
    set.scope = scope;
    set.from_time = before.time;
    set.to_time = after.time;
    const Dimension dimension =
        after.time - before.time > 1 ? Dimension::Temporal : Dimension::Spatial;
    diff_entries(before.factors, after.factors, EntityKind::Factor, scope, dimension,
                 after.time, set.items);
    diff_entries(before.results, after.results, EntityKind::Result, scope, dimension,
                 after.time, set.items);
    return set;
}

double degree(const Difference& d, const DegreeWeights& weights, int window) {
    weights.validate();
    if (window < 1)
        raise(ErrorCode::Misuse, "degree window must be >= 1");
    const double magnitude = std::min(d.delta_magnitude, 1.0);
    const double frequency = static_cast<double>(d.occurrence_count) / window;
    const double persistence =
        static_cast<double>(std::min(d.held_steps, window)) / window;
    return weights.w_magnitude * magnitude + weights.w_frequency * frequency +
           weights.w_persistence * persistence;
}

DegreeClass classify(double score, const DegreeWeights& weights) {
    weights.validate();
    if (score < weights.theta_significant)
        return DegreeClass::Minor;
    if (score < weights.theta_abnormal)
        return DegreeClass::Significant;
    return DegreeClass::Abnormal;
}

std::optional<Difference> most_informative(const DifferenceSet& set,
                                           const DegreeWeights& weights, int window) {
    if (set.items.empty())
        return std::nullopt;
    const Difference* best = nullptr;
    double best_score = 0.0;
    for (const auto& item : set.items) {
        const double score = degree(item, weights, window);
        if (best == nullptr || score > best_score) {
            best = &item;
            best_score = score;
            continue;
        }
        if (score == best_score) {
            const auto lhs = std::tuple(item.location, item.dimension, item.direction);
            const auto rhs = std::tuple(best->location, best->dimension, best->direction);
            if (lhs < rhs)
                best = &item;
        }
    }
    return *best;
}

} // namespace afg
