#include <doctest.h>

#include "biofab/qa/item.hpp"
#include "biofab/reward/reward.hpp"
#include "biofab/rng.hpp"

using namespace biofab;

namespace {

qa::QaItem make_item(const std::string& key = "A") {
    qa::QaItem item;
    item.id = "item-1";
    item.family = "TOY";
    item.question_type = "t";
    item.question = "q alpha";
    item.options = {{"A", "first"}, {"B", "second"}};
    item.answer = key;
    item.subjects = {{"token", "alpha"}};
    return item;
}

}  // namespace

TEST_CASE("parse counts tags and extracts first-pair bodies") {
    const auto p = reward::parse_completion("<think>t</think>\n<answer>A</answer>");
    CHECK(p.think_open == 1);
    CHECK(p.think_close == 1);
    CHECK(p.answer_open == 1);
    CHECK(p.answer_close == 1);
    REQUIRE(p.think_body.has_value());
    CHECK(*p.think_body == "t");
    REQUIRE(p.answer_body.has_value());
    CHECK(*p.answer_body == "A");

    const auto dbl = reward::parse_completion("<answer>x<answer>y</answer>");
    CHECK(dbl.answer_open == 2);
    CHECK(dbl.answer_close == 1);
    REQUIRE(dbl.answer_body.has_value());
    CHECK(*dbl.answer_body == "x<answer>y");  // first opener, first closer after it

    const auto none = reward::parse_completion("no tags here");
    CHECK(none.think_open == 0);
    CHECK(none.answer_close == 0);
    CHECK_FALSE(none.think_body.has_value());
    CHECK_FALSE(none.answer_body.has_value());
}

TEST_CASE("format reward") {
    CHECK(reward::reward_format(reward::parse_completion(
              "<think>reasoning</think>\n<answer>A</answer>")) == 1);
    CHECK(reward::reward_format(reward::parse_completion("<answer>A</answer>")) == 0);
    CHECK(reward::reward_format(reward::parse_completion(
              "<think><think>x</think></think><answer>A</answer>")) == 0);  // nested
    CHECK(reward::reward_format(reward::parse_completion("<think>x</think><answer>A")) == 0);
    CHECK(reward::reward_format(reward::parse_completion(
              "<answer>A</answer><think>x</think>")) == 0);  // wrong order
    CHECK(reward::reward_format(reward::parse_completion(
              "junk<think>x</think><answer>A</answer>")) == 0);  // prose outside blocks
    CHECK(reward::reward_format(reward::parse_completion(
              "  <think>x</think> \n <answer>A</answer>\n")) == 1);  // whitespace ok
}

TEST_CASE("tag count reward") {
    CHECK(reward::reward_tag_count(reward::parse_completion(
              "<think>a</think><answer>b</answer>")) == doctest::Approx(1.0));
    CHECK(reward::reward_tag_count(reward::parse_completion(
              "<think>a</think><answer>b")) == doctest::Approx(0.75));
    CHECK(reward::reward_tag_count(reward::parse_completion(
              "<think><think>a</think><answer>b</answer>")) == doctest::Approx(0.75));
    CHECK(reward::reward_tag_count(reward::parse_completion("")) == doctest::Approx(0.0));
}

TEST_CASE("valid choice and correctness") {
    const auto item = make_item("B");
    reward::VerifierConfig cfg;

    CHECK(reward::reward_valid_choice(std::optional<std::string>("A"), item.options) == 1);
    CHECK(reward::reward_valid_choice(std::optional<std::string>("C"), item.options) == 0);
    CHECK(reward::reward_valid_choice(std::optional<std::string>(" A "), item.options) == 1);
    CHECK(reward::reward_valid_choice(std::nullopt, item.options) == 0);

    CHECK(reward::reward_correct(std::optional<std::string>("B"), std::string("B")) == 1);
    CHECK(reward::reward_correct(std::optional<std::string>("A"), std::string("B")) == 0);
    CHECK(reward::reward_correct(std::optional<std::string>("b"), std::string("B")) == 0);
    CHECK(reward::reward_correct(std::nullopt, std::string("B")) == 0);

    // option-text fallback stays behind the config flag
    CHECK(reward::reward_valid_choice(std::optional<std::string>("second"), item.options,
                                      cfg) == 0);
    cfg.match_option_text = true;
    CHECK(reward::reward_valid_choice(std::optional<std::string>("second"), item.options,
                                      cfg) == 1);
    CHECK(reward::reward_correct(std::optional<std::string>("second"), item, cfg) == 1);
    CHECK(reward::reward_correct(std::optional<std::string>("first"), item, cfg) == 0);
}

TEST_CASE("total reward worked examples") {
    const auto item = make_item("A");

    const auto perfect = reward::total_reward("<think>t</think>\n<answer>A</answer>", item);
    CHECK(perfect.total == doctest::Approx(4.0));

    const auto answer_only = reward::total_reward("<answer>A</answer>", item);
    CHECK(answer_only.format == 0);
    CHECK(answer_only.tag_count == doctest::Approx(0.5));
    CHECK(answer_only.valid_choice == 1);
    CHECK(answer_only.correct == 1);
    CHECK(answer_only.total == doctest::Approx(2.5));

    const auto empty = reward::total_reward("", item);
    CHECK(empty.total == doctest::Approx(0.0));
}

TEST_CASE("reward properties on fuzzed inputs") {
    const auto item = make_item("A");
    Rng rng(1234);
    const std::string pieces[] = {"<think>", "</think>", "<answer>", "</answer>", "A", "B",
                                  "C",       " ",        "\n",       "x",         "<", ">"};
    for (int round = 0; round < 2000; ++round) {
        std::string text;
        const std::size_t n = rng.below(12);
        for (std::size_t i = 0; i < n; ++i) text += pieces[rng.below(12)];

        const auto r = reward::total_reward(text, item);
        CHECK(r.total == doctest::Approx(r.format + r.tag_count + r.valid_choice + r.correct));
        CHECK(r.correct <= r.valid_choice);  // a correct answer is always a valid choice
        CHECK(r.total >= 0.0);
        CHECK(r.total <= 4.0);

        // determinism: identical text, identical vector
        const auto r2 = reward::total_reward(text, item);
        CHECK(r.format == r2.format);
        CHECK(r.tag_count == r2.tag_count);
        CHECK(r.valid_choice == r2.valid_choice);
        CHECK(r.correct == r2.correct);
        CHECK(r.total == r2.total);
    }
}
