#include "biofab/reward/batch.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "biofab/io/jsonl.hpp"
#include "biofab/io/table.hpp"
#include "biofab/text.hpp"

namespace biofab::reward {

ScoreStats score_completions_file(const std::string& dataset_path,
                                  const std::string& completions_path,
                                  const std::string& out_path, const VerifierConfig& config) {
    std::map<std::string, qa::QaItem> by_id;
    for (auto& item : qa::read_items(dataset_path)) by_id[item.id] = std::move(item);

    struct Row {
        std::string id;
        std::string line;
        double total = 0;
        int correct = 0;
    };
    std::vector<Row> rows;
    std::vector<std::string> orphans;

    io::for_each_jsonl_line(completions_path, [&](const std::string& line) {
        const auto j = nlohmann::json::parse(line);
        const std::string id = j.at("item_id").get<std::string>();
        const std::string text = j.at("text").get<std::string>();
        const auto it = by_id.find(id);
        if (it == by_id.end()) {
            orphans.push_back(id);
            return;
        }
        const RewardVector r = total_reward(text, it->second, config);
        nlohmann::ordered_json out;
        out["item_id"] = id;
        out["family"] = it->second.family;
        out["question_type"] = it->second.question_type;
        out["format"] = r.format;
        out["tag_count"] = r.tag_count;
        out["valid_choice"] = r.valid_choice;
        out["correct"] = r.correct;
        out["total"] = r.total;
        rows.push_back({id, out.dump(), r.total, r.correct});
    });

    if (!orphans.empty()) {
        std::string msg = "score: completions without dataset entries:";
        for (std::size_t i = 0; i < orphans.size() && i < 10; ++i) msg += " " + orphans[i];
        if (orphans.size() > 10) msg += " (+" + std::to_string(orphans.size() - 10) + " more)";
        throw std::runtime_error(msg);
    }

    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.id < b.id; });
    std::string out;
    ScoreStats stats;
    for (const auto& row : rows) {
        out += row.line;
        out += '\n';
        stats.mean_total += row.total;
        stats.accuracy += row.correct;
    }
    stats.scored = rows.size();
    if (!rows.empty()) {
        stats.mean_total /= static_cast<double>(rows.size());
        stats.accuracy /= static_cast<double>(rows.size());
    }
    io::atomic_write_text(out_path, out);
    return stats;
}

}  // namespace biofab::reward
