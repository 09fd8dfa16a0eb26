#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "afg/env.hpp"

namespace afg {

struct ReasonerQuery {
    std::vector<EnvState> observed_states;
    int target_result = 0;
};

enum class AnswerStatus : unsigned char { Identified, Undetermined };

struct ReasonerAnswer {
    AnswerStatus status = AnswerStatus::Undetermined;
    std::set<int> hypotheses;
    std::optional<FactorToggle> suggested_toggle;

    int identified_factor() const;
};

/// Stable key over observable content only; the time index never enters.
std::string canonical_key(const EnvState& state);

/// Incremental consistency mask: factor f survives while every observation
/// satisfies enabled(f) == present(target). Unobserved entries are skipped,
/// not treated as evidence.
class HypothesisTracker {
public:
    explicit HypothesisTracker(int num_factors);

    void observe(const EnvState& state, int target_result);
    std::uint64_t mask() const { return mask_; }
    int count() const;
    std::set<int> hypotheses() const;

private:
    int num_factors_;
    std::uint64_t mask_;
};

class Reasoner {
public:
    virtual ~Reasoner() = default;
    virtual ReasonerAnswer infer(const ReasonerQuery& query) = 0;
    virtual const char* name() const = 0;
};

/// Deterministic hypothesis elimination; never wrong, never networked.
class OracleReasoner final : public Reasoner {
public:
    ReasonerAnswer infer(const ReasonerQuery& query) override;
    const char* name() const override { return "oracle"; }
};

struct RemoteConfig {
    std::string endpoint;
    std::string api_key;
    std::string model = "deepseek-70b";
    int max_retries = 2;
    int timeout_seconds = 30;
};

/// Reads AFG_LLM_ENDPOINT (required) and AFG_LLM_API_KEY (optional).
RemoteConfig remote_config_from_env();

std::string render_states(const ReasonerQuery& query);
ReasonerAnswer parse_remote_reply(const std::string& reply, int num_factors);

/// Chat-completions client; one request per query, temperature 0.
class RemoteReasoner final : public Reasoner {
public:
    explicit RemoteReasoner(RemoteConfig config);
    ReasonerAnswer infer(const ReasonerQuery& query) override;
    const char* name() const override { return "remote"; }

private:
    RemoteConfig config_;
};

/// Skips the backend when the latest state was already asked about.
class DedupReasoner {
public:
    explicit DedupReasoner(Reasoner& backend) : backend_(&backend) {}

    struct Result {
        ReasonerAnswer answer;
        bool was_fresh;
    };

    Result query(const ReasonerQuery& query);
    long fresh_queries() const { return fresh_; }

private:
    Reasoner* backend_;
    std::map<std::string, ReasonerAnswer> cache_;
    long fresh_ = 0;
};

} // namespace afg
