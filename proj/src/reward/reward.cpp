#include "biofab/reward/reward.hpp"

#include "biofab/text.hpp"

namespace biofab::reward {

namespace {

constexpr std::string_view kThinkOpen = "<think>";
constexpr std::string_view kThinkClose = "</think>";
constexpr std::string_view kAnswerOpen = "<answer>";
constexpr std::string_view kAnswerClose = "</answer>";

int count_occurrences(std::string_view text, std::string_view literal) {
    int count = 0;
    std::size_t pos = 0;
    while ((pos = text.find(literal, pos)) != std::string_view::npos) {
        ++count;
        pos += literal.size();
    }
    return count;
}

std::optional<std::string> first_pair_body(std::string_view text, std::string_view open,
                                           std::string_view close) {
    const std::size_t o = text.find(open);
    if (o == std::string_view::npos) return std::nullopt;
    const std::size_t c = text.find(close, o + open.size());
    if (c == std::string_view::npos) return std::nullopt;
    return trim(text.substr(o + open.size(), c - o - open.size()));
}

bool whitespace_only(std::string_view s) {
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

CompletionParse parse_completion(std::string_view text) {
    CompletionParse p;
    p.raw = std::string(text);
    p.think_open = count_occurrences(text, kThinkOpen);
    p.think_close = count_occurrences(text, kThinkClose);
    p.answer_open = count_occurrences(text, kAnswerOpen);
    p.answer_close = count_occurrences(text, kAnswerClose);
    p.think_body = first_pair_body(text, kThinkOpen, kThinkClose);
    p.answer_body = first_pair_body(text, kAnswerOpen, kAnswerClose);
    return p;
}

int reward_format(const CompletionParse& parse) {
    if (parse.think_open != 1 || parse.think_close != 1 || parse.answer_open != 1 ||
        parse.answer_close != 1)
        return 0;
    const std::string_view text = parse.raw;
    const std::size_t to = text.find(kThinkOpen);
    const std::size_t tc = text.find(kThinkClose);
    const std::size_t ao = text.find(kAnswerOpen);
    const std::size_t ac = text.find(kAnswerClose);
    if (!(to < tc && tc < ao && ao < ac)) return 0;
    if (!whitespace_only(text.substr(0, to))) return 0;
    if (!whitespace_only(text.substr(tc + kThinkClose.size(),
                                     ao - tc - kThinkClose.size())))
        return 0;
    if (!whitespace_only(text.substr(ac + kAnswerClose.size()))) return 0;
    return 1;
}

double reward_tag_count(const CompletionParse& parse) {
    double r = 0;
    if (parse.think_open == 1) r += 0.25;
    if (parse.think_close == 1) r += 0.25;
    if (parse.answer_open == 1) r += 0.25;
    if (parse.answer_close == 1) r += 0.25;
    return r;
}

int reward_valid_choice(const std::optional<std::string>& answer_body,
                        std::span<const qa::QaOption> options, const VerifierConfig& config) {
    if (!answer_body) return 0;
    const std::string body = trim(*answer_body);
    for (const auto& o : options) {
        if (body == o.label) return 1;
        if (config.match_option_text && body == o.text) return 1;
    }
    return 0;
}

int reward_correct(const std::optional<std::string>& answer_body, const std::string& key) {
    if (!answer_body) return 0;
    return trim(*answer_body) == key ? 1 : 0;
}

int reward_correct(const std::optional<std::string>& answer_body, const qa::QaItem& item,
                   const VerifierConfig& config) {
    if (!answer_body) return 0;
    const std::string body = trim(*answer_body);
    if (body == item.answer) return 1;
    if (config.match_option_text && body == item.keyed_option().text) return 1;
    return 0;
}

RewardVector total_reward(std::string_view text, const qa::QaItem& item,
                          const VerifierConfig& config) {
    const CompletionParse parse = parse_completion(text);
    RewardVector r;
    r.format = reward_format(parse);
    r.tag_count = reward_tag_count(parse);
    r.valid_choice = reward_valid_choice(parse.answer_body, item.options, config);
    r.correct = reward_correct(parse.answer_body, item, config);
    r.total = static_cast<double>(r.format) + r.tag_count +
              static_cast<double>(r.valid_choice) + static_cast<double>(r.correct);
    return r;
}

}  // namespace biofab::reward
