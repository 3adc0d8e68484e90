#include <chrono>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "biofab/judge/judge.hpp"

namespace biofab::judge {

namespace {

std::string attempt_with_retry(const JudgeConfig& config, ChatTransport& transport,
                               const std::vector<ChatMessage>& messages) {
    std::string last_error;
    for (std::size_t attempt = 0; attempt <= config.retries_per_repeat; ++attempt) {
        if (attempt > 0 && config.backoff_ms > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(
                static_cast<long>(config.backoff_ms * static_cast<double>(attempt))));
        try {
            return transport.complete(config, messages);
        } catch (const std::exception& e) {
            last_error = e.what();
        }
    }
    throw std::runtime_error(last_error);
}

}  // namespace

PreferenceResult judge_preference(const std::string& item_id, const std::string& question,
                                  const std::string& response_a, const std::string& response_b,
                                  const JudgeConfig& config, ChatTransport& transport) {
    if (config.repeats < 1) throw std::invalid_argument("judge_preference: repeats must be >= 1");

    PreferenceResult result;
    result.item_id = item_id;

    for (std::size_t k = 0; k < config.repeats; ++k) {
        const bool swapped = k % 2 == 1;  // alternate which side sits in slot 1
        result.swapped.push_back(swapped);
        const auto messages = swapped
                                  ? build_preference_prompt(question, response_b, response_a)
                                  : build_preference_prompt(question, response_a, response_b);
        // one retry covers transport and parse failures alike
        bool recorded = false;
        for (std::size_t attempt = 0; attempt <= config.retries_per_repeat && !recorded;
             ++attempt) {
            if (attempt > 0 && config.backoff_ms > 0)
                std::this_thread::sleep_for(std::chrono::milliseconds(
                    static_cast<long>(config.backoff_ms * static_cast<double>(attempt))));
            try {
                int rating = parse_rating(transport.complete(config, messages));
                if (swapped) rating = -rating;  // back to the canonical orientation
                result.ratings.push_back(rating);
                recorded = true;
            } catch (const std::exception&) {
            }
        }
        if (!recorded) ++result.failures;  // missing; mean is over successes
    }
    if (result.ratings.empty())
        throw std::runtime_error("judge_preference: every repeat failed for item " + item_id);

    double sum = 0;
    for (int r : result.ratings) sum += r;
    result.mean = sum / static_cast<double>(result.ratings.size());
    result.preferred = result.mean > 0 ? "A" : result.mean < 0 ? "B" : "tie";
    return result;
}

ConsistencyResult judge_consistency(const qa::QaItem& item, const std::string& reasoning,
                                    const std::string& actual_answer,
                                    const JudgeConfig& config, ChatTransport& transport) {
    if (reasoning.empty())
        throw std::invalid_argument("judge_consistency: reasoning must be non-empty");

    // prompt is built from (question, options, reasoning) only
    const auto messages = build_consistency_prompt(item.question, item.options, reasoning);
    const std::string reply = attempt_with_retry(config, transport, messages);

    ConsistencyResult result;
    result.item_id = item.id;
    result.predicted = parse_letter(reply, item.options);
    result.actual = actual_answer;
    result.consistent = result.predicted == result.actual;
    return result;
}

std::string preference_to_jsonl(const PreferenceResult& r) {
    nlohmann::ordered_json j;
    j["item_id"] = r.item_id;
    j["type"] = "preference";
    j["ratings"] = r.ratings;
    j["swapped"] = r.swapped;
    j["failures"] = r.failures;
    j["mean"] = r.mean;
    j["preferred"] = r.preferred;
    return j.dump();
}

std::string consistency_to_jsonl(const ConsistencyResult& r) {
    nlohmann::ordered_json j;
    j["item_id"] = r.item_id;
    j["type"] = "consistency";
    j["predicted"] = r.predicted;
    j["actual"] = r.actual;
    j["consistent"] = r.consistent;
    return j.dump();
}

}  // namespace biofab::judge
