#include <cstdlib>
#include <regex>
#include <utility>

#include "httplib.h"
#include "json.hpp"

#include "afg/reasoner.hpp"

namespace afg {
namespace {

constexpr const char* kSystemPrompt =
    "You are a causal analyst. Exactly one factor controls the target result: "
    "the result is present exactly when that factor is enabled. Observations "
    "list factor and result states per step ('?' means unobserved). Reply with "
    "the causal factor token alone, e.g. 'f2'. If the evidence is still "
    "ambiguous, reply 'undetermined' and optionally suggest one probe as "
    "'enable fK' or 'disable fK'.";

const char* tri_word(Tri t) {
    switch (t) {
    case Tri::Off: return "0";
    case Tri::On: return "1";
    case Tri::Unobserved: return "?";
    }
    return "?";
}

std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
    const auto scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos)
        raise(ErrorCode::Config, "endpoint needs a scheme: " + endpoint);
    const auto path_start = endpoint.find('/', scheme_end + 3);
    if (path_start == std::string::npos)
        return {endpoint, "/v1/chat/completions"};
    return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

} // namespace

RemoteConfig remote_config_from_env() {
    RemoteConfig config;
    const char* endpoint = std::getenv("AFG_LLM_ENDPOINT");
    if (!endpoint || !*endpoint)
        raise(ErrorCode::Config, "AFG_LLM_ENDPOINT is not set");
    config.endpoint = endpoint;
    if (const char* key = std::getenv("AFG_LLM_API_KEY"))
        config.api_key = key;
    return config;
}

std::string render_states(const ReasonerQuery& query) {
    std::string out = "target: r" + std::to_string(query.target_result) + "\n";
    for (const auto& state : query.observed_states) {
        out += "step " + std::to_string(state.time) + ":";
        for (std::size_t f = 0; f < state.factors.size(); ++f)
            out += " f" + std::to_string(f) + "=" + tri_word(state.factors[f]);
        out += " |";
        for (std::size_t r = 0; r < state.results.size(); ++r)
            out += " r" + std::to_string(r) + "=" + tri_word(state.results[r]);
        out += "\n";
    }
    return out;
}

ReasonerAnswer parse_remote_reply(const std::string& reply, int num_factors) {
    ReasonerAnswer answer;
    static const std::regex factor_re(R"(\bf(\d+)\b)", std::regex::icase);
    static const std::regex toggle_re(R"(\b(enable|disable)\s+f(\d+)\b)",
                                      std::regex::icase);

    std::smatch toggle_match;
    if (std::regex_search(reply, toggle_match, toggle_re)) {
        const int f = std::stoi(toggle_match[2].str());
        if (f >= 0 && f < num_factors) {
            const bool enable =
                toggle_match[1].str()[0] == 'e' || toggle_match[1].str()[0] == 'E';
            answer.suggested_toggle = FactorToggle{f, enable};
        }
    }

    // First factor token outside a toggle phrase names the verdict.
    std::string verdict_text = reply;
    if (answer.suggested_toggle)
        verdict_text = std::regex_replace(reply, toggle_re, "");
    std::smatch factor_match;
    if (std::regex_search(verdict_text, factor_match, factor_re)) {
        const int f = std::stoi(factor_match[1].str());
        if (f >= 0 && f < num_factors) {
            answer.status = AnswerStatus::Identified;
            answer.hypotheses = {f};
            return answer;
        }
    }

    answer.status = AnswerStatus::Undetermined;
    for (int f = 0; f < num_factors; ++f)
        answer.hypotheses.insert(f);
    return answer;
}

RemoteReasoner::RemoteReasoner(RemoteConfig config) : config_(std::move(config)) {
    if (config_.endpoint.empty())
        raise(ErrorCode::Config, "remote reasoner needs an endpoint");
}

ReasonerAnswer RemoteReasoner::infer(const ReasonerQuery& query) {
    if (query.observed_states.empty())
        raise(ErrorCode::Misuse, "reasoner query carries no observations");
    const int num_factors =
        static_cast<int>(query.observed_states.front().factors.size());

    const auto [base, path] = split_endpoint(config_.endpoint);
    httplib::Client client(base);
    client.set_connection_timeout(config_.timeout_seconds);
    client.set_read_timeout(config_.timeout_seconds);

    nlohmann::json body{
        {"model", config_.model},
        {"messages",
         {{{"role", "system"}, {"content", kSystemPrompt}},
          {{"role", "user"}, {"content", render_states(query)}}}},
        {"temperature", 0},
    };
    httplib::Headers headers;
    if (!config_.api_key.empty())
        headers.emplace("Authorization", "Bearer " + config_.api_key);

    const int attempts = config_.max_retries + 1;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        auto res = client.Post(path, headers, body.dump(), "application/json");
        if (!res || res->status < 200 || res->status >= 300)
            continue;
        const auto parsed = nlohmann::json::parse(res->body, nullptr, false);
        if (parsed.is_discarded() || !parsed.contains("choices") ||
            parsed["choices"].empty())
            return parse_remote_reply("", num_factors);
        const auto& choice = parsed["choices"][0];
        const std::string reply =
            choice.contains("message") && choice["message"].contains("content")
                ? choice["message"]["content"].get<std::string>()
                : "";
        return parse_remote_reply(reply, num_factors);
    }
    raise(ErrorCode::Remote, "endpoint unreachable after " +
                                 std::to_string(attempts) + " attempts: " +
                                 config_.endpoint);
}

} // namespace afg
