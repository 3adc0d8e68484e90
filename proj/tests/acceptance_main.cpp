// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here, not configurable.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

#include <httplib.h>
#include <json.hpp>

#include "biofab/io/table.hpp"
#include "biofab/judge/judge.hpp"
#include "biofab/pipeline/commands.hpp"
#include "biofab/pipeline/synthetic.hpp"
#include "biofab/qa/audit.hpp"
#include "biofab/qa/generators.hpp"
#include "biofab/reward/reward.hpp"
#include "biofab/rng.hpp"
#include "biofab/split/jaccard.hpp"
#include "biofab/split/ontology.hpp"
#include "biofab/split/split.hpp"
#include "biofab/stats/fdr.hpp"
#include "biofab/stats/ssgsea.hpp"
#include "biofab/stats/wilcoxon.hpp"
#include "biofab/text.hpp"
#include "biofab/train/trainer.hpp"

using namespace biofab;

namespace {

struct Criterion {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << (detail.str().empty() ? "" : "; ") << what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// --------------------------------------------------------------------------
// criterion 1: statistics oracle suite
// --------------------------------------------------------------------------

std::vector<double> oracle_midranks(const std::vector<double>& values) {
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> ranks(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        double sum = 0;
        std::size_t count = 0;
        for (std::size_t j = 0; j < sorted.size(); ++j)
            if (sorted[j] == values[i]) {
                sum += static_cast<double>(j + 1);
                ++count;
            }
        ranks[i] = sum / static_cast<double>(count);
    }
    return ranks;
}

double oracle_exact_wilcoxon_p(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> pooled = a;
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::vector<double> ranks = oracle_midranks(pooled);
    const std::size_t n = pooled.size(), n1 = a.size();
    const double mu = static_cast<double>(n1 * b.size()) / 2.0;
    const double offset = static_cast<double>(n1 * (n1 + 1)) / 2.0;
    double w_obs = 0;
    for (std::size_t i = 0; i < n1; ++i) w_obs += ranks[i];
    const double target = std::abs(w_obs - offset - mu);
    std::size_t total = 0, extreme = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) != n1) continue;
        double w = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) w += ranks[i];
        ++total;
        if (std::abs(w - offset - mu) >= target) ++extreme;
    }
    return static_cast<double>(extreme) / static_cast<double>(total);
}

Criterion criterion_statistics() {
    Criterion c;

    // exhaustive-permutation equality over 500 random instances, all sizes
    // with n1+n2 <= 12, tied and untied values
    Rng rng(2024);
    std::size_t mismatches = 0;
    for (int round = 0; round < 500; ++round) {
        const std::size_t n1 = 1 + rng.below(11);
        const std::size_t n2 = 1 + rng.below(12 - n1);
        std::vector<double> a(n1), b(n2);
        const bool tie_heavy = rng.coin();
        for (auto& v : a)
            v = tie_heavy ? static_cast<double>(rng.below(5)) : rng.normal();
        for (auto& v : b)
            v = tie_heavy ? static_cast<double>(rng.below(5)) : rng.normal();
        if (stats::wilcoxon_rank_sum(a, b).p_two_sided != oracle_exact_wilcoxon_p(a, b))
            ++mismatches;
    }
    c.require(mismatches == 0,
              "wilcoxon vs oracle: " + std::to_string(mismatches) + "/500 mismatches");

    // BH step-up against the hand-computed spec values
    auto near_eq = [](double x, double y) { return std::abs(x - y) <= 1e-12; };
    const auto q1 = stats::bh_fdr(std::vector<double>{0.04});
    c.require(near_eq(q1[0], 0.04), "bh [0.04]");
    const auto q2 = stats::bh_fdr(std::vector<double>{0.01, 0.02, 0.03, 0.04});
    for (double q : q2) c.require(near_eq(q, 0.04), "bh quadruple");
    const auto q3 = stats::bh_fdr(std::vector<double>{0.005, 0.04, 0.04});
    c.require(near_eq(q3[0], 0.015) && near_eq(q3[1], 0.04) && near_eq(q3[2], 0.04),
              "bh triple");

    // exact anti-symmetry over 1000 random set/complement pairs
    std::size_t asym = 0;
    for (int round = 0; round < 1000; ++round) {
        const std::size_t g = 4 + rng.below(300);
        std::vector<std::string> ranking(g);
        for (std::size_t i = 0; i < g; ++i) ranking[i] = "g" + std::to_string(i);
        const std::size_t m = 1 + rng.below(g - 1);
        auto members = rng.sample(ranking, m);
        std::unordered_set<std::string> member_set(members.begin(), members.end());
        std::vector<std::string> complement;
        for (const auto& gene : ranking)
            if (!member_set.count(gene)) complement.push_back(gene);
        if (stats::ssgsea_score(ranking, {"m", members, ""}) !=
            -stats::ssgsea_score(ranking, {"c", complement, ""}))
            ++asym;
    }
    c.require(asym == 0, "ssgsea anti-symmetry: " + std::to_string(asym) + "/1000 broken");
    return c;
}

// --------------------------------------------------------------------------
// criterion 2: corpus key-audit over >= 50,000 items
// --------------------------------------------------------------------------

Criterion criterion_corpus_audit() {
    Criterion c;
    const std::uint64_t seed = 42;

    const auto spatial = synth::spatial_scores(derive_seed(seed, "gen:spde"));
    const auto tvhe_de = synth::tvhe_de_tables(derive_seed(seed, "gen:tvhe"));
    const auto gi = synth::gi_features(derive_seed(seed, "gen:gi"));
    const auto activities = synth::activity_table(derive_seed(seed, "gen:tcgasa"));
    const auto degs = synth::deg_sets(derive_seed(seed, "gen:dseqde"));
    const auto pmap = synth::dseq_pathway_map(derive_seed(seed, "gen:dseqde"));
    const auto dpp = synth::dpp_fixture(derive_seed(seed, "gen:dpp"));
    const auto ttp = synth::ttp_annotations(derive_seed(seed, "gen:ttp"));
    const auto proteins = synth::protein_pockets(derive_seed(seed, "gen:sd"));

    std::vector<qa::QaItem> corpus;
    auto absorb = [&](qa::GenResult r) {
        corpus.insert(corpus.end(), std::make_move_iterator(r.items.begin()),
                      std::make_move_iterator(r.items.end()));
    };
    absorb(qa::gen_spde(spatial, 400, derive_seed(seed, "gen:spde")));
    absorb(qa::gen_tvhe(tvhe_de, qa::tvhe_default_bank(), derive_seed(seed, "gen:tvhe")));
    absorb(qa::gen_gi(gi, derive_seed(seed, "gen:gi")));
    for (const auto& [subtype, count] : std::vector<std::pair<std::string, std::size_t>>{
             {"signature_expression", 3000},
             {"signature_similarity", 1500},
             {"cancer_similarity", 3000},
             {"cancer_signature_comparison", 2500}}) {
        qa::TcgasaConfig cfg;
        cfg.subtype = subtype;
        cfg.count = count;
        absorb(qa::gen_tcgasa(activities, cfg, derive_seed(seed, "gen:tcgasa")));
    }
    absorb(qa::gen_dseqde(degs, pmap, "all", derive_seed(seed, "gen:dseqde")));
    absorb(qa::gen_dpp(dpp.contexts, "easy", derive_seed(seed, "gen:dpp")));
    absorb(qa::gen_ttp(ttp, derive_seed(seed, "gen:ttp")));
    absorb(qa::gen_sd(proteins, derive_seed(seed, "gen:sd")));

    c.require(corpus.size() >= 50000,
              "corpus too small: " + std::to_string(corpus.size()) + " items");

    qa::AuditSources sources;
    sources.spatial = spatial;
    sources.tvhe_de = &tvhe_de;
    sources.gi = gi;
    sources.activities = &activities;
    sources.deg_sets = degs;
    sources.pathway_map = &pmap;
    sources.dpp = dpp.contexts;
    sources.ttp = ttp;
    sources.proteins = proteins;

    const auto audit = qa::audit_corpus(corpus, sources);
    c.require(audit.checked == corpus.size(), "audit skipped items");
    c.require(audit.mismatches == 0,
              std::to_string(audit.mismatches) + " key mismatches" +
                  (audit.failures.empty() ? "" : " e.g. " + audit.failures.front()));
    c.detail << corpus.size() << " items audited";

    std::string balance_detail;
    c.require(qa::audit_dseqde_balance(corpus, &balance_detail),
              "per-target yes/no imbalance: " + balance_detail);
    return c;
}

// --------------------------------------------------------------------------
// criterion 3: split safety
// --------------------------------------------------------------------------

Criterion criterion_split_safety() {
    Criterion c;
    const std::string dir = "/tmp/biofab_acceptance_splits";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);

    pipeline::PipelineOptions opt;
    opt.out_dir = dir;
    opt.master_seed = 42;
    opt.synthetic = true;

    // role sets re-derived here, independent of the split engine's config
    const std::map<std::string, std::vector<std::string>> roles_by_family = {
        {"spde", {"gene", "indication"}},
        {"tvhe", {"gene", "indication"}},
        {"gi", {"gene"}},
        {"tcgasa", {}},  // per-subtype roles handled below
        {"dseqde", {"target", "gene", "pathway"}},
        {"dpp", {"drug", "cell_line", "pathway"}},
        {"ttp", {"target"}},
        {"sd", {"protein"}},
    };

    auto role_entities = [](const qa::QaItem& item, const std::string& role) {
        std::set<std::string> out;
        const auto it = item.subjects.find(role);
        if (it != item.subjects.end()) out.insert(it->second);
        for (const auto& e : qa::get_entities(item, role)) out.insert(e);
        return out;
    };
    auto independent_overlap = [&](const std::vector<qa::QaItem>& items,
                                   const std::string& role) {
        std::set<std::string> train_pool, test_pool;
        for (const auto& item : items) {
            auto& pool = item.split == "test" ? test_pool : train_pool;
            for (const auto& e : role_entities(item, role)) pool.insert(e);
        }
        std::size_t overlap = 0;
        for (const auto& e : test_pool)
            if (train_pool.count(e)) ++overlap;
        return overlap;
    };

    for (const auto& [family, roles] : roles_by_family) {
        pipeline::cmd_gen(opt, family);
        pipeline::cmd_split(opt, family);
        const auto items = qa::read_items(dir + "/" + family + ".split.jsonl");
        std::size_t n_test = 0;
        for (const auto& item : items) n_test += item.split == "test";
        c.require(n_test > 0 && n_test < items.size(), family + ": degenerate split");

        if (family == "tcgasa") {
            // per-subtype subjects: signatures for SE/SS, cancers for CS,
            // both for CSC
            std::map<std::string, std::vector<qa::QaItem>> by_subtype;
            for (const auto& item : items) by_subtype[item.question_type].push_back(item);
            const std::map<std::string, std::vector<std::string>> subtype_roles = {
                {"signature_expression_binary", {"signature"}},
                {"signature_similarity_binary", {"signature"}},
                {"cancer_similarity_binary", {"cancer"}},
                {"cancer_signatures_comparison", {"cancer", "signature"}},
            };
            for (const auto& [subtype, subset] : by_subtype)
                for (const auto& role : subtype_roles.at(subtype))
                    c.require(independent_overlap(subset, role) == 0,
                              "tcgasa/" + subtype + " leaks role " + role);
        } else {
            for (const auto& role : roles)
                c.require(independent_overlap(items, role) == 0,
                          family + " leaks role " + role);
        }
    }

    // TTP defaults to disjoint targets; the paper-faithful mode reproduces
    // the published random split instead and is exempt from the check.

    // planted leak: move one test item's entity into train and re-verify
    {
        auto items = qa::read_items(dir + "/gi.split.jsonl");
        std::vector<qa::QaItem> train, test;
        for (auto& item : items) (item.split == "test" ? test : train).push_back(item);
        split::SplitConfig cfg;
        cfg.subject_roles = {{"gene", true}};
        c.require(split::verify_split(train, test, cfg).passing(), "gi split not clean");
        test.front().subjects["gene"] = train.front().subjects.at("gene");
        qa::set_entities(test.front(), "gene", {train.front().subjects.at("gene")});
        const auto report = split::verify_split(train, test, cfg);
        c.require(!report.passing() && report.overlap_counts.at("gene") == 1,
                  "planted gi leak not detected");
    }

    // ontology: alternate-subtree coverage and independent Jaccard audit
    {
        const auto fx = synth::dpp_fixture(derive_seed(42, "gen:dpp"));
        std::vector<split::SubtreeAssignment> detail;
        const auto sides = split::partition_ontology(fx.ontology, &detail);
        c.require(sides.size() == fx.ontology.node_ids.size(),
                  "ontology nodes not all assigned");
        std::set<std::string> seen;
        for (const auto& st : detail)
            for (const auto& node : st.nodes)
                c.require(seen.insert(node).second, "node assigned twice: " + node);
        c.require(seen.size() == fx.ontology.node_ids.size(), "ontology coverage incomplete");

        std::vector<stats::GeneSet> train_sets, test_sets;
        for (const auto& [node, side] : sides)
            (side == split::Side::train ? train_sets : test_sets)
                .push_back(fx.ontology.members.at(node));
        // the filter must fire on a handcrafted boundary case (J = 1/3 > 0.3)
        {
            const std::vector<stats::GeneSet> probe_test = {{"probe", {"a", "b"}, ""}};
            const std::vector<stats::GeneSet> probe_train = {{"anchor", {"b", "c"}, ""}};
            c.require(split::max_jaccard_filter(probe_test, probe_train, 0.3).empty(),
                      "jaccard filter kept an overlapping set");
        }
        const auto retained = split::max_jaccard_filter(test_sets, train_sets, 0.3);
        // independent recomputation of the max overlap of every retained set
        for (const auto& t : retained) {
            const std::set<std::string> ts(t.genes.begin(), t.genes.end());
            double max_j = 0;
            for (const auto& s : train_sets) {
                std::size_t inter = 0;
                for (const auto& gene : s.genes) inter += ts.count(gene);
                const double j = static_cast<double>(inter) /
                                 static_cast<double>(ts.size() + s.genes.size() - inter);
                max_j = std::max(max_j, j);
            }
            c.require(max_j <= 0.3, "retained test set " + t.name + " overlaps " +
                                        std::to_string(max_j));
        }
    }
    return c;
}

// --------------------------------------------------------------------------
// criterion 4: reward exactness
// --------------------------------------------------------------------------

Criterion criterion_rewards() {
    Criterion c;
    qa::QaItem item;
    item.id = "r1";
    item.family = "TOY";
    item.question_type = "t";
    item.question = "q alpha";
    item.options = {{"A", "first"}, {"B", "second"}};
    item.answer = "A";
    item.subjects = {{"token", "alpha"}};

    auto serialize = [](const reward::RewardVector& r) {
        nlohmann::ordered_json j;
        j["format"] = r.format;
        j["tag_count"] = r.tag_count;
        j["valid_choice"] = r.valid_choice;
        j["correct"] = r.correct;
        j["total"] = r.total;
        return j.dump();
    };

    const auto perfect = reward::total_reward("<think>t</think>\n<answer>A</answer>", item);
    c.require(perfect.total == 4.0 && perfect.format == 1 && perfect.tag_count == 1.0,
              "perfect completion != 4.0");

    const auto answer_only = reward::total_reward("<answer>A</answer>", item);
    c.require(answer_only.format == 0 && answer_only.tag_count == 0.5 &&
                  answer_only.valid_choice == 1 && answer_only.correct == 1 &&
                  answer_only.total == 2.5,
              "answer-only completion != 2.5");

    const auto missing_close =
        reward::parse_completion("<think>t</think><answer>A");  // no </answer>
    c.require(reward::reward_tag_count(missing_close) == 0.75,
              "missing closing tag != 0.75");

    // byte determinism across repeated evaluations
    const std::string first = serialize(reward::total_reward("<answer>A</answer>", item));
    bool stable = true;
    for (int i = 0; i < 100; ++i)
        stable = stable &&
                 serialize(reward::total_reward("<answer>A</answer>", item)) == first;
    c.require(stable, "serialization not byte-stable");
    return c;
}

// --------------------------------------------------------------------------
// criterion 5: optimizer correctness
// --------------------------------------------------------------------------

Criterion criterion_optimizer() {
    Criterion c;

    auto random_policy = [](std::uint64_t seed) {
        train::Vocabulary vocab;
        vocab.tokens = {"<answer>", "</answer>", "A", "B", ""};
        vocab.eos = 4;
        train::ToyPolicy policy(vocab, 2, 4, {"alpha", "beta"});
        Rng rng(seed);
        for (auto& v : policy.parameters()) v = rng.uniform(-1.0, 1.0);
        return policy;
    };
    auto random_batch = [](const train::ToyPolicy& policy, std::uint64_t seed,
                           std::size_t groups, std::size_t g) {
        train::GroupBatch batch;
        Rng rng(seed);
        for (std::size_t n = 0; n < groups; ++n) {
            train::PromptGroup group;
            group.prompt_id = "p" + std::to_string(n);
            group.cue = rng.below(policy.n_cues());
            group.rollouts = train::sample_group(policy, group.cue, g, policy.max_len(),
                                                 derive_seed(seed, group.prompt_id));
            for (auto& r : group.rollouts)
                r.reward = 0.25 * static_cast<double>(rng.below(17));
            batch.groups.push_back(std::move(group));
        }
        train::assign_advantages(batch, 1e-4);
        return batch;
    };

    // analytic gradient vs central finite differences over 100 random batches
    double worst = 0;
    for (int round = 0; round < 100; ++round) {
        auto policy = random_policy(9000 + round);
        const auto batch = random_batch(policy, 11000 + round, 3, 4);
        const auto lg = train::bnpo_loss(policy, batch, 0.2);
        auto& params = policy.parameters();
        const double h = 1e-6;
        for (std::size_t i = 0; i < params.size(); ++i) {
            const double saved = params[i];
            params[i] = saved + h;
            const double up = train::bnpo_loss_value(policy, batch, 0.2);
            params[i] = saved - h;
            const double down = train::bnpo_loss_value(policy, batch, 0.2);
            params[i] = saved;
            const double fd = (up - down) / (2.0 * h);
            const double denom = std::max({std::abs(lg.gradient[i]), std::abs(fd), 1e-3});
            worst = std::max(worst, std::abs(lg.gradient[i] - fd) / denom);
        }
    }
    c.require(worst <= 1e-5, "gradient check worst relative error " + format_double(worst));
    c.detail << "max fd error " << format_compact(worst);

    // bnpo == dapo exactly on single-group batches
    for (int round = 0; round < 100; ++round) {
        const auto policy = random_policy(13000 + round);
        const auto batch = random_batch(policy, 15000 + round, 1, 6);
        if (train::dapo_loss(policy, batch, 0.2) !=
            train::bnpo_loss_value(policy, batch, 0.2)) {
            c.require(false, "dapo != bnpo on a single-group batch");
            break;
        }
    }

    // zero-sum and affine invariance, bit-exact on exact-arithmetic instances
    Rng rng(31337);
    for (int round = 0; round < 500; ++round) {
        const std::size_t g = std::size_t{1} << (1 + rng.below(4));
        std::vector<double> rewards(g);
        for (auto& r : rewards) r = static_cast<double>(rng.below(17));
        bool constant = true;
        for (double r : rewards) constant = constant && r == rewards[0];
        if (constant) rewards[0] += 1.0;
        const double a = std::pow(2.0, static_cast<double>(rng.below(7)) - 3.0);
        const double b = static_cast<double>(rng.below(17)) - 8.0;
        std::vector<double> transformed(g);
        for (std::size_t i = 0; i < g; ++i) transformed[i] = a * rewards[i] + b;
        const auto adv = train::group_advantages(rewards, 0.0);
        const auto adv_t = train::group_advantages(transformed, 0.0);
        for (std::size_t i = 0; i < g; ++i)
            if (adv[i] != adv_t[i]) {
                c.require(false, "affine invariance broken");
                break;
            }
    }
    for (int round = 0; round < 500; ++round) {
        const std::size_t pairs = 1 + rng.below(8);
        const double centre = static_cast<double>(rng.below(9));
        const double spreads[] = {0.25, 0.5, 1.0, 1.5, 2.0};
        const double spread = spreads[rng.below(5)];
        std::vector<double> rewards;
        for (std::size_t k = 0; k < pairs; ++k) {
            rewards.push_back(centre + spread);
            rewards.push_back(centre - spread);
        }
        Rng(round).shuffle(rewards);
        const auto adv = train::group_advantages(rewards, 0.0);
        double sum = 0;
        for (double v : adv) sum += v;
        if (sum != 0.0) {
            c.require(false, "zero-sum broken: residual " + format_double(sum));
            break;
        }
    }
    return c;
}

// --------------------------------------------------------------------------
// criterion 6: desk-scale RLVR analogue
// --------------------------------------------------------------------------

Criterion criterion_rlvr_experiment() {
    Criterion c;
    const auto items = synth::toyrule_items(21, 2500);
    const std::vector<qa::QaItem> heldout(items.begin(), items.begin() + 500);
    const std::vector<qa::QaItem> train_items(items.begin() + 500, items.end());

    train::TrainerConfig cfg;  // G=10, N=10, single epoch
    cfg.seed = 7;

    const auto initial = train::ToyPolicy::scaffold_initialized(
        train::Vocabulary::toy_default(), train::toy_cue_markers().size(), cfg.max_len,
        train::toy_cue_markers(), cfg.scaffold_bias);
    const double acc0 = train::evaluate_accuracy(initial, heldout, 123);
    c.require(acc0 >= 0.47 && acc0 <= 0.53,
              "initial held-out accuracy " + format_compact(acc0) + " outside 0.50 +- 0.03");

    const auto outcome = train::train(train_items, cfg);
    const double acc1 = train::evaluate_accuracy(outcome.policy, heldout, 456);
    c.require(acc1 >= 0.95, "final held-out accuracy " + format_compact(acc1) + " < 0.95");
    c.detail << "accuracy " << format_compact(acc0) << " -> " << format_compact(acc1)
             << " over " << outcome.metrics.size() << " steps";
    return c;
}

// --------------------------------------------------------------------------
// criterion 7: judge harness offline suite
// --------------------------------------------------------------------------

class MockJudge {
public:
    MockJudge() {
        server_.Post("/v1/chat/completions",
                     [this](const httplib::Request& req, httplib::Response& res) {
                         const auto body = nlohmann::json::parse(req.body);
                         const std::string model = body.at("model").get<std::string>();
                         std::string content;
                         if (model == "always-slot1") {
                             content = "slot one wins\n<json>\n{\"rating\": 1}\n</json>";
                         } else {
                             static const int script[] = {1, -1, 1, 1, 1};
                             const int n = scripted_counter_.fetch_add(1);
                             content = "<json>{\"rating\": " +
                                       std::to_string(script[n % 5]) + "}</json>";
                         }
                         nlohmann::json out;
                         out["choices"] = {
                             {{"message", {{"role", "assistant"}, {"content", content}}}}};
                         res.set_content(out.dump(), "application/json");
                     });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~MockJudge() {
        server_.stop();
        thread_.join();
    }
    std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }

private:
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::atomic<int> scripted_counter_{0};
};

Criterion criterion_judge() {
    Criterion c;

    // template bytes outside the slots match the fixture
    const std::string fixture_text =
        io::read_text(std::string(BIOFAB_FIXTURE_DIR) + "/preference_prompt_template.txt");
    const std::string sys_open = "<|im_start|>system\n";
    const std::string user_open = "<|im_start|>user\n";
    const std::string close = "\n<|im_end|>";
    const std::size_t s0 = fixture_text.find(sys_open) + sys_open.size();
    const std::string fixture_system =
        fixture_text.substr(s0, fixture_text.find(close, s0) - s0);
    const std::size_t u0 = fixture_text.find(user_open) + user_open.size();
    std::string fixture_user = fixture_text.substr(u0, fixture_text.find(close, u0) - u0);

    const auto messages = judge::build_preference_prompt("QQ", "R1R1", "R2R2");
    c.require(messages[0].content == fixture_system, "system template drifted");
    auto fill = [&](std::string text, const std::string& slot, const std::string& value) {
        text.replace(text.find(slot), slot.size(), value);
        return text;
    };
    fixture_user = fill(fixture_user, "{question}", "QQ");
    fixture_user = fill(fixture_user, "{response1}", "R1R1");
    fixture_user = fill(fixture_user, "{response2}", "R2R2");
    c.require(messages[1].content == fixture_user, "user template drifted");
    c.require(contains(messages[0].content,
                       "You MUST respond by first justifying your rating"),
              "rating instruction line missing");

    // rating domain
    bool domain_ok = judge::parse_rating("<json>{\"rating\": 1}</json>") == 1 &&
                     judge::parse_rating("<json>{\"rating\": -1}</json>") == -1;
    for (const char* bad : {"<json>{\"rating\": 0}</json>", "<json>{\"rating\": 2}</json>",
                            "no block at all", "<json>{\"rating\": \"1\"}</json>"}) {
        try {
            judge::parse_rating(bad);
            domain_ok = false;
        } catch (const std::exception&) {
        }
    }
    c.require(domain_ok, "parse_rating domain violated");

    // position-bias cancellation and the five-repeat mean, offline
    MockJudge mock;
    auto transport = judge::make_http_transport();
    judge::JudgeConfig cfg;
    cfg.endpoint = mock.endpoint();
    cfg.backoff_ms = 0;

    cfg.model = "always-slot1";
    cfg.repeats = 4;  // even repeats: alternation cancels a pure position bias
    const auto biased =
        judge::judge_preference("it", "q", "ra", "rb", cfg, *transport);
    c.require(biased.mean == 0.0, "position bias not cancelled (mean " +
                                      format_compact(biased.mean) + ")");

    cfg.model = "scripted";
    cfg.repeats = 5;  // the protocol's five judgments per item
    const auto scripted =
        judge::judge_preference("it", "q", "ra", "rb", cfg, *transport);
    c.require(std::abs(scripted.mean - 0.6) < 1e-12 && scripted.preferred == "A",
              "five-repeat mean " + format_compact(scripted.mean) + " != 0.6");
    c.detail << "mock endpoint on " << mock.endpoint();
    return c;
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        Criterion (*fn)();
    };
    const Entry entries[] = {
        {"1 statistics oracle suite", criterion_statistics},
        {"2 corpus key-audit", criterion_corpus_audit},
        {"3 split safety", criterion_split_safety},
        {"4 reward exactness", criterion_rewards},
        {"5 optimizer correctness", criterion_optimizer},
        {"6 desk-scale RLVR analogue", criterion_rlvr_experiment},
        {"7 judge harness offline suite", criterion_judge},
    };

    bool all_pass = true;
    for (const auto& entry : entries) {
        const auto start = std::chrono::steady_clock::now();
        Criterion result;
        try {
            result = entry.fn();
        } catch (const std::exception& e) {
            result.pass = false;
            result.detail << "exception: " << e.what();
        }
        const double elapsed = seconds_since(start);
        std::printf("[%s] criterion %s (%.1fs)%s%s\n", result.pass ? "PASS" : "FAIL",
                    entry.name, elapsed, result.detail.str().empty() ? "" : " — ",
                    result.detail.str().c_str());
        std::fflush(stdout);
        all_pass = all_pass && result.pass;
    }
    return all_pass ? 0 : 1;
}
