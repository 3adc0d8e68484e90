#include <stdexcept>

#include "biofab/judge/judge.hpp"

namespace biofab::judge {

namespace {

// Slot substitution that leaves every byte outside the slots untouched.
std::string fill(std::string text, const std::string& slot, const std::string& value) {
    const std::size_t pos = text.find(slot);
    if (pos == std::string::npos)
        throw std::logic_error("prompt template is missing slot " + slot);
    text.replace(pos, slot.size(), value);
    return text;
}

}  // namespace

const std::string& preference_system_template() {
    static const std::string text =
        "You are evaluating two responses to a biology question. Your task is to assess "
        "which response demonstrates better biological reasoning.\n"
        "\n"
        "\n"
        "Evaluate the responses based on these specific criteria:\n"
        "1. Scientific accuracy\n"
        "2. Logical coherence and depth of reasoning\n"
        "3. Relevance and completeness of explanation\n"
        "4. Clarity and precision of language\n"
        "\n"
        "\n"
        "Then provide your final rating:\n"
        "- If Response 1 is better: +1\n"
        "- If Response 2 is better: -1\n"
        "\n"
        "\n"
        "You MUST respond by first justifying your rating, then a JSON object in this exact "
        "format:\n"
        "<json>\n"
        "{\"rating\": <rating>}\n"
        "</json>\n"
        "\n"
        "\n"
        "Where <rating> is -1 or 1.";
    return text;
}

const std::string& preference_user_template() {
    static const std::string text =
        "Question: \"{question}\"\n"
        "\n"
        "\n"
        "<Response 1>\n"
        "{response1}\n"
        "</Response 1>\n"
        "\n"
        "\n"
        "<Response 2>\n"
        "{response2}\n"
        "</Response 2>";
    return text;
}

std::vector<ChatMessage> build_preference_prompt(const std::string& question,
                                                 const std::string& response1,
                                                 const std::string& response2) {
    if (response1.empty() || response2.empty())
        throw std::invalid_argument("build_preference_prompt: responses must be non-empty");
    std::string user = preference_user_template();
    user = fill(std::move(user), "{question}", question);
    user = fill(std::move(user), "{response1}", response1);
    user = fill(std::move(user), "{response2}", response2);
    return {{"system", preference_system_template()}, {"user", std::move(user)}};
}

std::vector<ChatMessage> build_consistency_prompt(const std::string& question,
                                                  std::span<const qa::QaOption> options,
                                                  const std::string& reasoning) {
    if (reasoning.empty())
        throw std::invalid_argument("build_consistency_prompt: reasoning must be non-empty");

    static const std::string system_text =
        "You are given a question, its answer options, and a reasoning trace. Based only on "
        "the reasoning, decide which option the reasoning points to.\n"
        "\n"
        "Respond with the single letter of that option and nothing else.";

    std::string user = "Question: \"" + question + "\"\n\nOptions:\n";
    for (const auto& o : options) user += o.label + ") " + o.text + "\n";
    user += "\nReasoning:\n" + reasoning;
    return {{"system", system_text}, {"user", std::move(user)}};
}

}  // namespace biofab::judge
