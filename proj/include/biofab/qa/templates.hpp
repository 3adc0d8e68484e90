#pragma once

#include <map>
#include <string>
#include <vector>

namespace biofab::qa {

struct QaTemplate {
    std::string id;
    std::string pattern;  // "{SLOT}" placeholders
    bool alt = false;
    bool negative = false;
};

/// Fixed phrasing bank standing in for LLM rewording: synonym slots plus
/// grammatical-form templates, chosen deterministically per item.
struct TemplateBank {
    std::string family;
    std::map<std::string, std::vector<std::string>> slots;
    std::vector<QaTemplate> templates;
};

/// Fills every "{SLOT}" in the pattern; throws if a slot has no value.
std::string instantiate(const std::string& pattern,
                        const std::map<std::string, std::string>& values);

TemplateBank tvhe_default_bank();

/// GI question catalog: per feature type a plain form and technical
/// rephrasings with {GENE}/{INDICATION} slots.
struct GiQuestionType {
    std::string key;
    std::string base_pattern;
    std::vector<std::string> technical_patterns;
};
const std::vector<GiQuestionType>& gi_question_catalog();

/// TTP catalog: 28 question types over the per-target decision table.
/// Negative phrasings flip the expected answer.
struct TtpQuestionType {
    std::string type;     // question_type value, e.g. "druggability_alt"
    std::string field;    // annotation field consulted
    std::string pattern;  // "{GENE}" slot
    bool alt = false;
    bool negative = false;
};
const std::vector<TtpQuestionType>& ttp_question_catalog();

}  // namespace biofab::qa
