#include "biofab/qa/item.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "biofab/io/table.hpp"
#include "biofab/text.hpp"

namespace biofab::qa {

using ordered_json = nlohmann::ordered_json;

const std::vector<std::string>& benchmark_families() {
    static const std::vector<std::string> families = {"SPDE",   "TvHE", "GI",  "TCGA-SA",
                                                      "DSeqDE", "DPP",  "TTP", "SD"};
    return families;
}

bool is_benchmark_family(const std::string& family) {
    const auto& f = benchmark_families();
    return std::find(f.begin(), f.end(), family) != f.end();
}

const QaOption& QaItem::keyed_option() const {
    for (const auto& o : options)
        if (o.label == answer) return o;
    throw std::logic_error("item " + id + ": answer '" + answer + "' is not an option label");
}

void QaItem::validate() const {
    if (id.empty()) throw std::invalid_argument("item with empty id");
    if (!is_benchmark_family(family) && family != "TOY")
        throw std::invalid_argument("item " + id + ": unknown family '" + family + "'");
    if (options.size() < 2) throw std::invalid_argument("item " + id + ": needs two options");
    keyed_option();
    std::set<std::string> texts;
    for (const auto& o : options)
        if (!texts.insert(o.text).second)
            throw std::invalid_argument("item " + id + ": duplicate option text '" + o.text + "'");
    if (subjects.empty()) throw std::invalid_argument("item " + id + ": subjects empty");
    if (question.empty()) throw std::invalid_argument("item " + id + ": empty question");
}

void set_entities(QaItem& item, const std::string& role,
                  const std::vector<std::string>& entities) {
    for (const auto& e : entities)
        if (e.find(';') != std::string::npos)
            throw std::invalid_argument("entity contains ';': " + e);
    item.metadata["entities." + role] = join(entities, ";");
}

std::vector<std::string> get_entities(const QaItem& item, const std::string& role) {
    std::vector<std::string> out;
    const auto it = item.metadata.find("entities." + role);
    if (it != item.metadata.end() && !it->second.empty()) {
        for (auto& e : split_text(it->second, ';'))
            if (!e.empty()) out.push_back(std::move(e));
    }
    return out;
}

std::string to_jsonl(const QaItem& item) {
    ordered_json j;
    j["id"] = item.id;
    j["family"] = item.family;
    j["question_type"] = item.question_type;
    j["question"] = item.question;
    ordered_json opts = ordered_json::array();
    for (const auto& o : item.options) {
        ordered_json oj;
        oj["label"] = o.label;
        oj["text"] = o.text;
        opts.push_back(std::move(oj));
    }
    j["options"] = std::move(opts);
    j["answer"] = item.answer;
    j["subjects"] = item.subjects;
    j["metadata"] = item.metadata;
    j["split"] = item.split;
    return j.dump();
}

QaItem item_from_jsonl(const std::string& line) {
    const auto j = nlohmann::json::parse(line);
    QaItem item;
    item.id = j.at("id").get<std::string>();
    item.family = j.at("family").get<std::string>();
    item.question_type = j.at("question_type").get<std::string>();
    item.question = j.at("question").get<std::string>();
    for (const auto& oj : j.at("options"))
        item.options.push_back({oj.at("label").get<std::string>(), oj.at("text").get<std::string>()});
    item.answer = j.at("answer").get<std::string>();
    if (j.contains("subjects"))
        item.subjects = j.at("subjects").get<std::map<std::string, std::string>>();
    if (j.contains("metadata"))
        item.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    if (j.contains("split")) item.split = j.at("split").get<std::string>();
    return item;
}

std::vector<QaItem> read_items(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset: " + path);
    std::vector<QaItem> items;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        items.push_back(item_from_jsonl(line));
    }
    return items;
}

void write_items(const std::string& path, std::vector<QaItem> items) {
    std::sort(items.begin(), items.end(),
              [](const QaItem& a, const QaItem& b) { return a.id < b.id; });
    std::string out;
    for (const auto& item : items) {
        out += to_jsonl(item);
        out += '\n';
    }
    io::atomic_write_text(path, out);
}

}  // namespace biofab::qa
