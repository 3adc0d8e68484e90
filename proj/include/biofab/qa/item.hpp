#pragma once

#include <map>
#include <string>
#include <vector>

namespace biofab::qa {

struct QaOption {
    std::string label;  // "A", "B", ...
    std::string text;
};

/// One multiple-choice question. `family` is one of the eight benchmark
/// families (SPDE, TvHE, GI, TCGA-SA, DSeqDE, DPP, TTP, SD); the trainer's
/// planted-rule fixtures use the extra family "TOY". Entity lists used by the
/// leakage checks live in metadata under "entities.<role>" (';'-joined).
struct QaItem {
    std::string id;
    std::string family;
    std::string question_type;
    std::string question;
    std::vector<QaOption> options;
    std::string answer;  // option label
    std::map<std::string, std::string> subjects;
    std::map<std::string, std::string> metadata;
    std::string split;  // "", "train" or "test"

    const QaOption& keyed_option() const;  // throws if answer is not a label
    void validate() const;
};

const std::vector<std::string>& benchmark_families();
bool is_benchmark_family(const std::string& family);

void set_entities(QaItem& item, const std::string& role,
                  const std::vector<std::string>& entities);
std::vector<std::string> get_entities(const QaItem& item, const std::string& role);

std::string to_jsonl(const QaItem& item);
QaItem item_from_jsonl(const std::string& line);

std::vector<QaItem> read_items(const std::string& path);
/// Canonical output: items sorted by id, one JSON object per line.
void write_items(const std::string& path, std::vector<QaItem> items);

}  // namespace biofab::qa
