#include "afg/memory.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace afg {

std::string scenario_label(const Scenario& s) {
    return s.env_tag + "|" + s.scope_summary + "|" + std::to_string(s.time_bucket);
}

Scenario parse_scenario_label(const std::string& text) {
    const auto first = text.find('|');
    const auto second = text.rfind('|');
    if (first == std::string::npos || second == first)
        raise(ErrorCode::Parse, "bad scenario: " + text);
    Scenario s;
    s.env_tag = text.substr(0, first);
    s.scope_summary = text.substr(first + 1, second - first - 1);
    s.time_bucket = std::stol(text.substr(second + 1));
    return s;
}

const char* store_kind_name(StoreKind k) {
    return k == StoreKind::Obvious ? "obvious" : "parametric";
}

std::string record_key_label(const RecordKey& key) {
    std::string out = signature_label(key.primary);
    for (const auto& extra : key.extras)
        out += "+" + signature_label(extra);
    return out;
}

RecordKey parse_record_key_label(const std::string& text) {
    RecordKey key;
    std::size_t start = 0;
    bool first = true;
    while (start <= text.size()) {
        auto end = text.find('+', start);
        if (end == std::string::npos)
            end = text.size();
        const auto part = text.substr(start, end - start);
        if (first) {
            key.primary = parse_signature_label(part);
            first = false;
        } else {
            key.extras.push_back(parse_signature_label(part));
        }
        start = end + 1;
        if (end == text.size())
            break;
    }
    std::sort(key.extras.begin(), key.extras.end());
    return key;
}

Generality assess_movability(const RelationshipRecord&, long distinct_scenarios,
                             long movability_threshold) {
    if (movability_threshold < 2)
        raise(ErrorCode::Misuse, "movability_threshold must be >= 2");
    return distinct_scenarios >= movability_threshold ? Generality::General
                                                      : Generality::Specific;
}

MixedMemory::MixedMemory(double epsilon, long min_support, long movability_threshold)
    : epsilon_(epsilon), min_support_(min_support),
      movability_threshold_(movability_threshold) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        raise(ErrorCode::Config, "epsilon must lie in (0,1)");
    if (min_support < 1)
        raise(ErrorCode::Config, "min_support must be >= 1");
    if (movability_threshold < 2)
        raise(ErrorCode::Config, "movability_threshold must be >= 2");
}

RelationshipRecord* MixedMemory::find(const RecordKey& key, const std::string& action_sig,
                                      const DiffSignature& feedback) {
    for (auto& record : records_)
        if (record.key == key && record.action_sig == action_sig &&
            record.feedback == feedback)
            return &record;
    return nullptr;
}

void MixedMemory::reroute_all() {
    for (auto& record : records_)
        record.store = route(record.action_sig, record.feedback);
}

void MixedMemory::record(const std::string& action_sig, const DiffSignature& feedback,
                         const Scenario& scenario, const DifferenceSet& delta,
                         const DegreeWeights& weights, int window) {
    const auto star = most_informative(delta, weights, window);
    if (!star)
        raise(ErrorCode::NoKey, "empty difference set has no key");
    ++total_events_;
    ++pair_counts_[{action_sig, feedback}];

    RecordKey key{star->signature(), {}};
    if (auto* existing = find(key, action_sig, feedback)) {
        ++existing->evidence_count;
        if (std::find(existing->scenarios.begin(), existing->scenarios.end(), scenario) ==
            existing->scenarios.end())
            existing->scenarios.push_back(scenario);
        existing->generality = assess_movability(*existing, existing->distinct_scenarios(),
                                                 movability_threshold_);
    } else {
        RelationshipRecord record;
        record.key = key;
        record.action_sig = action_sig;
        record.feedback = feedback;
        record.scenarios.push_back(scenario);
        record.evidence_count = 1;
        record.generality = Generality::Specific;
        record.seq = next_seq_++;
        records_.push_back(std::move(record));
    }
    reroute_all();
}

double MixedMemory::occurrence_prob(const std::string& action_sig,
                                    const DiffSignature& feedback) const {
    if (total_events_ == 0)
        raise(ErrorCode::InsufficientData, "no events recorded yet");
    return static_cast<double>(pair_count(action_sig, feedback)) /
           static_cast<double>(total_events_);
}

long MixedMemory::pair_count(const std::string& action_sig,
                             const DiffSignature& feedback) const {
    const auto it = pair_counts_.find({action_sig, feedback});
    return it == pair_counts_.end() ? 0 : it->second;
}

StoreKind MixedMemory::route(const std::string& action_sig,
                             const DiffSignature& feedback) const {
    if (total_events_ < min_support_)
        return StoreKind::Obvious;
    return occurrence_prob(action_sig, feedback) < epsilon_ ? StoreKind::Obvious
                                                            : StoreKind::Parametric;
}

std::vector<const RelationshipRecord*> MixedMemory::retrieve(const DifferenceSet& observed,
                                                             const DegreeWeights& weights,
                                                             int window) const {
    const auto star = most_informative(observed, weights, window);
    if (!star)
        return {};
    std::vector<DiffSignature> present;
    present.reserve(observed.items.size());
    for (const auto& item : observed.items)
        present.push_back(item.signature());
    std::sort(present.begin(), present.end());

    const auto star_sig = star->signature();
    std::vector<const RelationshipRecord*> matches;
    for (const auto& record : records_) {
        if (record.key.primary != star_sig)
            continue;
        const bool extras_present = std::all_of(
            record.key.extras.begin(), record.key.extras.end(), [&](const DiffSignature& e) {
                return std::binary_search(present.begin(), present.end(), e);
            });
        if (extras_present)
            matches.push_back(&record);
    }
    std::sort(matches.begin(), matches.end(),
              [](const RelationshipRecord* a, const RelationshipRecord* b) {
                  if (a->key.specificity() != b->key.specificity())
                      return a->key.specificity() > b->key.specificity();
                  if (a->evidence_count != b->evidence_count)
                      return a->evidence_count > b->evidence_count;
                  return a->seq < b->seq;
              });
    return matches;
}

void MixedMemory::refine_key(const RecordKey& base_key, const DiffSignature& extra) {
    std::vector<RelationshipRecord> clones;
    bool found = false;
    for (const auto& record : records_) {
        if (record.key != base_key)
            continue;
        found = true;
        RecordKey refined = base_key;
        refined.extras.push_back(extra);
        std::sort(refined.extras.begin(), refined.extras.end());
        if (find(refined, record.action_sig, record.feedback) != nullptr)
            continue;  // already refined with this extra
        RelationshipRecord clone = record;
        clone.key = refined;
        clone.seq = next_seq_++;
        clones.push_back(std::move(clone));
    }
    if (!found)
        raise(ErrorCode::Lookup, "no record under key " + record_key_label(base_key));
    for (auto& clone : clones)
        records_.push_back(std::move(clone));
}

bool MixedMemory::has_exact_record(const DiffSignature& primary) const {
    return std::any_of(records_.begin(), records_.end(), [&](const RelationshipRecord& r) {
        return r.key.primary == primary;
    });
}

bool MixedMemory::has_conflicting_record(const DiffSignature& primary) const {
    return std::any_of(records_.begin(), records_.end(), [&](const RelationshipRecord& r) {
        return r.key.primary.dimension == primary.dimension &&
               r.key.primary.location == primary.location &&
               r.key.primary.direction != primary.direction;
    });
}

void MixedMemory::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out)
        raise(ErrorCode::Io, "cannot write " + path.string());
    out << "# afg-memory v1 epsilon=" << epsilon_ << " min_support=" << min_support_
        << " movability_threshold=" << movability_threshold_ << "\n";
    for (const auto& record : records_) {
        out << "key=" << record_key_label(record.key) << "\taction=" << record.action_sig
            << "\tfeedback=" << signature_label(record.feedback) << "\tscenario=";
        for (std::size_t i = 0; i < record.scenarios.size(); ++i) {
            if (i)
                out << ";";
            out << scenario_label(record.scenarios[i]);
        }
        out << "\tevidence=" << record.evidence_count
            << "\tstore=" << store_kind_name(record.store) << "\n";
    }
    if (!out)
        raise(ErrorCode::Io, "write failed for " + path.string());
}

MixedMemory MixedMemory::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        raise(ErrorCode::Io, "cannot read " + path.string());
    double epsilon = 0.05;
    long min_support = 10;
    long movability = 2;
    std::string line;
    std::vector<RelationshipRecord> records;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line[0] == '#') {
            if (first) {
                std::istringstream header(line);
                std::string token;
                while (header >> token) {
                    const auto eq = token.find('=');
                    if (eq == std::string::npos)
                        continue;
                    const auto name = token.substr(0, eq);
                    const auto value = token.substr(eq + 1);
                    if (name == "epsilon")
                        epsilon = std::stod(value);
                    else if (name == "min_support")
                        min_support = std::stol(value);
                    else if (name == "movability_threshold")
                        movability = std::stol(value);
                }
            }
            first = false;
            continue;
        }
        first = false;
        RelationshipRecord record;
        std::istringstream fields(line);
        std::string field;
        while (std::getline(fields, field, '\t')) {
            const auto eq = field.find('=');
            if (eq == std::string::npos)
                raise(ErrorCode::Parse, "bad memory line: " + line);
            const auto name = field.substr(0, eq);
            const auto value = field.substr(eq + 1);
            if (name == "key")
                record.key = parse_record_key_label(value);
            else if (name == "action")
                record.action_sig = value;
            else if (name == "feedback")
                record.feedback = parse_signature_label(value);
            else if (name == "scenario") {
                std::istringstream scenarios(value);
                std::string one;
                while (std::getline(scenarios, one, ';'))
                    record.scenarios.push_back(parse_scenario_label(one));
            } else if (name == "evidence")
                record.evidence_count = std::stol(value);
            else if (name == "store")
                record.store = value == "parametric" ? StoreKind::Parametric
                                                     : StoreKind::Obvious;
            else
                raise(ErrorCode::Parse, "unknown memory field: " + name);
        }
        records.push_back(std::move(record));
    }

    MixedMemory mem(epsilon, min_support, movability);
    for (auto& record : records) {
        record.seq = mem.next_seq_++;
        record.generality =
            assess_movability(record, record.distinct_scenarios(), movability);
        if (record.key.extras.empty()) {
            // Base records carry the event counts; refined clones share them.
            mem.pair_counts_[{record.action_sig, record.feedback}] += record.evidence_count;
            mem.total_events_ += record.evidence_count;
        }
        mem.records_.push_back(std::move(record));
    }
    mem.reroute_all();
    return mem;
}

} // namespace afg
