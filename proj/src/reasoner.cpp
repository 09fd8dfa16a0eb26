#include "afg/reasoner.hpp"

#include <bit>

namespace afg {
namespace {

char tri_char(Tri t) {
    switch (t) {
    case Tri::Off: return '0';
    case Tri::On: return '1';
    case Tri::Unobserved: return '?';
    }
    return '?';
}

void check_query(const ReasonerQuery& query) {
    if (query.observed_states.empty())
        raise(ErrorCode::Misuse, "reasoner query carries no observations");
    const auto& first = query.observed_states.front();
    for (const auto& state : query.observed_states)
        if (state.factors.size() != first.factors.size() ||
            state.results.size() != first.results.size())
            raise(ErrorCode::Comparison, "observation layouts differ within one query");
    if (query.target_result < 0 ||
        query.target_result >= static_cast<int>(first.results.size()))
        raise(ErrorCode::Lookup,
              "unknown target result r" + std::to_string(query.target_result));
}

} // namespace

int ReasonerAnswer::identified_factor() const {
    if (status != AnswerStatus::Identified || hypotheses.size() != 1)
        raise(ErrorCode::Misuse, "answer does not identify a single factor");
    return *hypotheses.begin();
}

std::string canonical_key(const EnvState& state) {
    std::string key;
    key.reserve(state.factors.size() + state.results.size() + 2);
    key.push_back('F');
    for (const Tri t : state.factors)
        key.push_back(tri_char(t));
    key.push_back('R');
    for (const Tri t : state.results)
        key.push_back(tri_char(t));
    return key;
}

HypothesisTracker::HypothesisTracker(int num_factors) : num_factors_(num_factors) {
    if (num_factors < 1 || num_factors > 64)
        raise(ErrorCode::Config, "tracker supports 1..64 factors");
    mask_ = num_factors == 64 ? ~std::uint64_t{0}
                              : (std::uint64_t{1} << num_factors) - 1;
}

void HypothesisTracker::observe(const EnvState& state, int target_result) {
    if (static_cast<int>(state.factors.size()) != num_factors_)
        raise(ErrorCode::Comparison, "observation has a different factor layout");
    if (target_result < 0 || target_result >= static_cast<int>(state.results.size()))
        raise(ErrorCode::Lookup,
              "unknown target result r" + std::to_string(target_result));
    const Tri target = state.results[target_result];
    if (target == Tri::Unobserved)
        return;
    const bool present = target == Tri::On;
    for (int f = 0; f < num_factors_; ++f) {
        if (state.factors[f] == Tri::Unobserved)
            continue;
        const bool enabled = state.factors[f] == Tri::On;
        if (enabled != present)
            mask_ &= ~(std::uint64_t{1} << f);
    }
}

int HypothesisTracker::count() const { return std::popcount(mask_); }

std::set<int> HypothesisTracker::hypotheses() const {
    std::set<int> out;
    for (int f = 0; f < num_factors_; ++f)
        if (mask_ & (std::uint64_t{1} << f))
            out.insert(f);
    return out;
}

ReasonerAnswer OracleReasoner::infer(const ReasonerQuery& query) {
    check_query(query);
    HypothesisTracker tracker(static_cast<int>(query.observed_states.front().factors.size()));
    for (const auto& state : query.observed_states)
        tracker.observe(state, query.target_result);

    ReasonerAnswer answer;
    answer.hypotheses = tracker.hypotheses();
    if (answer.hypotheses.empty())
        raise(ErrorCode::Inconsistent,
              "no factor is consistent with the observations");
    answer.status = answer.hypotheses.size() == 1 ? AnswerStatus::Identified
                                                  : AnswerStatus::Undetermined;

    const int probe = *answer.hypotheses.begin();
    const auto& latest = query.observed_states.back();
    const bool enable = latest.factors[probe] != Tri::On;
    answer.suggested_toggle = FactorToggle{probe, enable};
    return answer;
}

DedupReasoner::Result DedupReasoner::query(const ReasonerQuery& query) {
    check_query(query);
    const auto key = canonical_key(query.observed_states.back());
    if (const auto it = cache_.find(key); it != cache_.end())
        return {it->second, false};
    const auto answer = backend_->infer(query);  // errors stay uncached
    cache_.emplace(key, answer);
    ++fresh_;
    return {answer, true};
}

} // namespace afg
