#include <stdexcept>

#include <json.hpp>

#include "biofab/judge/judge.hpp"
#include "biofab/text.hpp"

namespace biofab::judge {

int parse_rating(const std::string& judge_text) {
    const std::size_t open = judge_text.find("<json>");
    if (open == std::string::npos)
        throw std::runtime_error("parse_rating: no <json> block");
    const std::size_t close = judge_text.find("</json>", open + 6);
    if (close == std::string::npos)
        throw std::runtime_error("parse_rating: unterminated <json> block");
    const std::string body = trim(judge_text.substr(open + 6, close - open - 6));

    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("parse_rating: malformed JSON: ") + e.what());
    }
    if (!j.contains("rating") || !j.at("rating").is_number())
        throw std::runtime_error("parse_rating: missing numeric rating field");
    const double rating = j.at("rating").get<double>();
    if (rating == 1.0) return 1;
    if (rating == -1.0) return -1;
    throw std::runtime_error("parse_rating: rating outside {-1, +1}");
}

std::string parse_letter(const std::string& judge_text,
                         std::span<const qa::QaOption> options) {
    std::string token;
    auto check = [&](const std::string& t) -> const std::string* {
        for (const auto& o : options)
            if (t == o.label) return &o.label;
        return nullptr;
    };
    for (char c : judge_text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            while (!token.empty() && (token.back() == '.' || token.back() == ',' ||
                                      token.back() == ';' || token.back() == ':' ||
                                      token.back() == ')'))
                token.pop_back();
            if (const auto* label = check(token)) return *label;
            token.clear();
        } else {
            token += c;
        }
    }
    while (!token.empty() && (token.back() == '.' || token.back() == ',' ||
                              token.back() == ';' || token.back() == ':' ||
                              token.back() == ')'))
        token.pop_back();
    if (const auto* label = check(token)) return *label;
    throw std::runtime_error("parse_letter: no option letter in judge reply");
}

}  // namespace biofab::judge
