#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "biofab/rng.hpp"
#include "biofab/split/split.hpp"

namespace biofab::split {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::vector<std::string> stratum_values(const qa::QaItem& item,
                                        const std::vector<std::string>& keys) {
    std::vector<std::string> out;
    for (const auto& key : keys) {
        std::string value;
        if (key == "question_type") value = item.question_type;
        else if (key == "family") value = item.family;
        else if (item.metadata.count(key)) value = item.metadata.at(key);
        else if (item.subjects.count(key)) value = item.subjects.at(key);
        out.push_back(key + "=" + value);
    }
    return out;
}

}  // namespace

std::vector<std::string> item_entities(const qa::QaItem& item, const RoleSpec& role) {
    std::set<std::string> uniq;
    const auto it = item.subjects.find(role.role);
    if (it != item.subjects.end()) uniq.insert(it->second);
    if (role.include_entity_list)
        for (auto& e : qa::get_entities(item, role.role)) uniq.insert(std::move(e));
    return {uniq.begin(), uniq.end()};
}

SplitResult entity_disjoint_split(std::span<const qa::QaItem> items, const SplitConfig& config) {
    if (config.subject_roles.empty())
        throw std::invalid_argument("entity_disjoint_split: subject_roles must be non-empty");
    if (config.holdout_subjects.empty() &&
        !(config.holdout_ratio > 0.0 && config.holdout_ratio < 1.0))
        throw std::invalid_argument("entity_disjoint_split: ratio must lie in (0,1)");
    if (items.empty()) throw std::invalid_argument("entity_disjoint_split: no items");

    // infeasibility: an entity occurring in every item can never be split
    for (const auto& role : config.subject_roles) {
        std::unordered_map<std::string, std::size_t> counts;
        for (const auto& item : items)
            for (const auto& e : item_entities(item, role)) ++counts[e];
        for (const auto& [entity, count] : counts)
            if (count == items.size() && items.size() > 1)
                throw std::runtime_error("entity_disjoint_split: entity '" + entity +
                                         "' (role " + role.role + ") spans all items");
    }

    SplitResult result;

    if (!config.holdout_subjects.empty()) {
        // explicit holdout: test = items touching the listed entities; train
        // items colliding with the test entity pool on any role are dropped
        if (config.holdout_role.empty())
            throw std::invalid_argument("entity_disjoint_split: holdout_role required");
        RoleSpec holdout_spec{config.holdout_role, true};
        for (const auto& r : config.subject_roles)
            if (r.role == config.holdout_role) holdout_spec = r;

        const std::set<std::string> holdout(config.holdout_subjects.begin(),
                                            config.holdout_subjects.end());
        std::vector<bool> in_test(items.size(), false);
        for (std::size_t i = 0; i < items.size(); ++i)
            for (const auto& e : item_entities(items[i], holdout_spec))
                if (holdout.count(e)) in_test[i] = true;

        std::map<std::string, std::set<std::string>> test_pool;
        for (std::size_t i = 0; i < items.size(); ++i)
            if (in_test[i])
                for (const auto& role : config.subject_roles)
                    for (const auto& e : item_entities(items[i], role))
                        test_pool[role.role].insert(e);

        for (std::size_t i = 0; i < items.size(); ++i) {
            if (in_test[i]) {
                result.test.push_back(items[i]);
                result.test.back().split = "test";
                continue;
            }
            bool collides = false;
            for (const auto& role : config.subject_roles) {
                for (const auto& e : item_entities(items[i], role))
                    if (test_pool[role.role].count(e)) {
                        collides = true;
                        break;
                    }
                if (collides) break;
            }
            if (collides) {
                ++result.report.n_dropped;
            } else {
                result.train.push_back(items[i]);
                result.train.back().split = "train";
            }
        }
    } else {
        // ratio holdout over entity-connected components
        UnionFind uf(items.size());
        for (const auto& role : config.subject_roles) {
            std::unordered_map<std::string, std::size_t> first_seen;
            for (std::size_t i = 0; i < items.size(); ++i)
                for (const auto& e : item_entities(items[i], role)) {
                    const auto [it, inserted] = first_seen.try_emplace(e, i);
                    if (!inserted) uf.unite(i, it->second);
                }
        }
        std::unordered_map<std::size_t, std::vector<std::size_t>> comps;
        for (std::size_t i = 0; i < items.size(); ++i) comps[uf.find(i)].push_back(i);
        if (comps.size() < 2)
            throw std::runtime_error(
                "entity_disjoint_split: all items form one entangled component; "
                "disjoint split infeasible");

        struct Comp {
            std::vector<std::size_t> members;
            std::string key;  // smallest item id, tie-break
        };
        std::vector<Comp> components;
        components.reserve(comps.size());
        for (auto& [root, members] : comps) {
            std::string key = items[members.front()].id;
            for (std::size_t i : members) key = std::min(key, items[i].id);
            components.push_back({std::move(members), std::move(key)});
        }
        std::sort(components.begin(), components.end(), [](const Comp& a, const Comp& b) {
            if (a.members.size() != b.members.size())
                return a.members.size() > b.members.size();
            return a.key < b.key;
        });
        // seeded tiebreak shuffle within equal-size runs
        Rng rng(derive_seed(config.seed, "entity-split"));
        for (std::size_t i = 0; i < components.size();) {
            std::size_t j = i;
            while (j < components.size() &&
                   components[j].members.size() == components[i].members.size())
                ++j;
            for (std::size_t k = j - i; k > 1; --k)
                std::swap(components[i + k - 1], components[i + rng.below(k)]);
            i = j;
        }

        // stratified greedy: each side holds per-stratum targets; a component
        // goes to the side it overfills least, ties to the side with the
        // larger remaining total deficit
        std::map<std::string, std::size_t> corpus_strata;
        for (const auto& item : items)
            for (const auto& sv : stratum_values(item, config.stratify_keys))
                ++corpus_strata[sv];

        const double ratio = config.holdout_ratio;
        const double total = static_cast<double>(items.size());
        std::size_t n_test = 0, n_train = 0;
        std::map<std::string, double> test_got, train_got;
        std::vector<bool> to_test_flags;
        to_test_flags.reserve(components.size());

        for (const auto& comp : components) {
            std::map<std::string, std::size_t> comp_strata;
            for (std::size_t i : comp.members)
                for (const auto& sv : stratum_values(items[i], config.stratify_keys))
                    ++comp_strata[sv];

            auto overfill = [&](bool to_test) {
                double over = 0;
                for (const auto& [sv, count] : comp_strata) {
                    const double target = (to_test ? ratio : 1.0 - ratio) *
                                          static_cast<double>(corpus_strata.at(sv));
                    const double got = to_test ? (test_got.count(sv) ? test_got.at(sv) : 0.0)
                                               : (train_got.count(sv) ? train_got.at(sv) : 0.0);
                    over += std::max(0.0, got + static_cast<double>(count) - target);
                }
                // a component without strata is steered by the ratio alone
                const double side_target = (to_test ? ratio : 1.0 - ratio) * total;
                const double side_count =
                    static_cast<double>(to_test ? n_test : n_train) +
                    static_cast<double>(comp.members.size());
                over += std::max(0.0, side_count - side_target);
                return over;
            };

            const double over_test = overfill(true), over_train = overfill(false);
            bool to_test;
            if (over_test != over_train) {
                to_test = over_test < over_train;
            } else {
                const double test_deficit = ratio * total - static_cast<double>(n_test);
                const double train_deficit =
                    (1.0 - ratio) * total - static_cast<double>(n_train);
                to_test = test_deficit > train_deficit;
            }
            to_test_flags.push_back(to_test);
            auto& got = to_test ? test_got : train_got;
            for (const auto& [sv, count] : comp_strata) got[sv] += static_cast<double>(count);
            (to_test ? n_test : n_train) += comp.members.size();
        }

        for (std::size_t ci = 0; ci < components.size(); ++ci) {
            for (std::size_t i : components[ci].members) {
                auto item = items[i];
                item.split = to_test_flags[ci] ? "test" : "train";
                (to_test_flags[ci] ? result.test : result.train).push_back(std::move(item));
            }
        }
    }

    std::sort(result.train.begin(), result.train.end(),
              [](const qa::QaItem& a, const qa::QaItem& b) { return a.id < b.id; });
    std::sort(result.test.begin(), result.test.end(),
              [](const qa::QaItem& a, const qa::QaItem& b) { return a.id < b.id; });

    const std::size_t dropped = result.report.n_dropped;
    result.report = verify_split(result.train, result.test, config);
    result.report.n_dropped = dropped;
    return result;
}

SplitReport verify_split(std::span<const qa::QaItem> train, std::span<const qa::QaItem> test,
                         const SplitConfig& config) {
    SplitReport report;
    report.n_train = train.size();
    report.n_test = test.size();

    for (const auto& role : config.subject_roles) {
        std::set<std::string> train_pool, test_pool;
        for (const auto& item : train)
            for (const auto& e : item_entities(item, role)) train_pool.insert(e);
        for (const auto& item : test)
            for (const auto& e : item_entities(item, role)) test_pool.insert(e);
        std::size_t overlap = 0;
        for (const auto& e : test_pool)
            if (train_pool.count(e)) {
                ++overlap;
                if (report.violations.size() < 50)
                    report.violations.push_back("role " + role.role + ": entity '" + e +
                                                "' appears in both splits");
            }
        report.overlap_counts[role.role] = overlap;
    }

    // stratification balance
    std::map<std::string, std::array<std::size_t, 3>> strata;  // corpus, train, test
    auto tally = [&](std::span<const qa::QaItem> side, std::size_t slot) {
        for (const auto& item : side)
            for (const auto& sv : stratum_values(item, config.stratify_keys)) {
                auto& row = strata[sv];
                row[0] += 1;
                row[slot] += 1;
            }
    };
    tally(train, 1);
    tally(test, 2);
    const double n_total = static_cast<double>(train.size() + test.size());
    for (const auto& [sv, counts] : strata) {
        StratumRow row;
        const auto eq = sv.find('=');
        row.key = sv.substr(0, eq);
        row.value = eq == std::string::npos ? "" : sv.substr(eq + 1);
        row.corpus_share = static_cast<double>(counts[0]) / std::max(1.0, n_total);
        row.train_share =
            static_cast<double>(counts[1]) / std::max<std::size_t>(1, train.size());
        row.test_share = static_cast<double>(counts[2]) / std::max<std::size_t>(1, test.size());
        row.within_tolerance =
            std::abs(row.train_share - row.corpus_share) <= config.stratum_tolerance &&
            std::abs(row.test_share - row.corpus_share) <= config.stratum_tolerance;
        if (!row.within_tolerance && report.violations.size() < 50 && !test.empty() &&
            !train.empty())
            report.violations.push_back("stratum " + sv + " outside tolerance");
        report.strata.push_back(std::move(row));
    }

    // answer-letter balance
    auto letter_share = [](std::span<const qa::QaItem> side) {
        std::map<std::string, double> share;
        for (const auto& item : side) share[item.answer] += 1.0;
        for (auto& [letter, count] : share) count /= std::max<std::size_t>(1, side.size());
        return share;
    };
    report.letter_share_train = letter_share(train);
    report.letter_share_test = letter_share(test);
    auto check_letters = [&](const std::map<std::string, double>& share, std::size_t n,
                             const char* side) {
        if (n < config.letter_min_items) return;
        const double expected = 1.0 / 2.0;  // binary items throughout
        for (const auto& [letter, s] : share)
            if (std::abs(s - expected) > config.letter_tolerance)
                report.violations.push_back(std::string("letter balance off on ") + side +
                                            ": " + letter + " share " + std::to_string(s));
    };
    check_letters(report.letter_share_train, train.size(), "train");
    check_letters(report.letter_share_test, test.size(), "test");

    return report;
}

bool SplitReport::passing() const {
    for (const auto& [role, overlap] : overlap_counts)
        if (overlap != 0) return false;
    return violations.empty();
}

std::string SplitReport::to_text() const {
    std::ostringstream out;
    out << "split report\n";
    out << "  train=" << n_train << " test=" << n_test << " dropped=" << n_dropped << "\n";
    out << "  role overlaps:\n";
    for (const auto& [role, overlap] : overlap_counts)
        out << "    " << role << ": " << overlap << "\n";
    if (!strata.empty()) {
        out << "  strata (corpus/train/test share):\n";
        for (const auto& row : strata)
            out << "    " << row.key << "=" << row.value << ": " << row.corpus_share << "/"
                << row.train_share << "/" << row.test_share
                << (row.within_tolerance ? "" : "  [off]") << "\n";
    }
    out << "  letters train:";
    for (const auto& [letter, share] : letter_share_train) out << " " << letter << "=" << share;
    out << "\n  letters test:";
    for (const auto& [letter, share] : letter_share_test) out << " " << letter << "=" << share;
    out << "\n  violations: " << violations.size() << "\n";
    for (const auto& v : violations) out << "    " << v << "\n";
    out << "  status: " << (passing() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

}  // namespace biofab::split
