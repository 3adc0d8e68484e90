#include "biofab/pipeline/commands.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>
#include <filesystem>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "biofab/io/jsonl.hpp"
#include "biofab/io/table.hpp"
#include "biofab/pipeline/manifest.hpp"
#include "biofab/pipeline/synthetic.hpp"
#include "biofab/qa/audit.hpp"
#include "biofab/qa/generators.hpp"
#include "biofab/reward/batch.hpp"
#include "biofab/rng.hpp"
#include "biofab/split/jaccard.hpp"
#include "biofab/split/ontology.hpp"
#include "biofab/split/split.hpp"
#include "biofab/text.hpp"
#include "biofab/train/trainer.hpp"
#include "biofab/judge/judge.hpp"

namespace biofab::pipeline {

namespace fs = std::filesystem;

namespace {

std::string path_of(const PipelineOptions& opt, const std::string& name) {
    return (fs::path(opt.out_dir) / name).string();
}

std::uint64_t family_seed(const PipelineOptions& opt, const std::string& stage,
                          const std::string& family) {
    return derive_seed(opt.master_seed, stage + ":" + family);
}

void write_warnings(const PipelineOptions& opt, const std::string& family,
                    const qa::GenResult& result) {
    if (result.warnings.empty() && result.conflicts.empty()) return;
    std::string text;
    for (const auto& w : result.warnings)
        text += w.family + " | " + w.context + " | " + w.message + "\n";
    for (const auto& c : result.conflicts) text += "conflict | " + c + "\n";
    io::atomic_write_text(path_of(opt, family + ".warnings.txt"), text);
}

void write_dataset(const PipelineOptions& opt, const std::string& family,
                   qa::GenResult result, std::uint64_t seed) {
    for (const auto& item : result.items) item.validate();
    qa::write_items(path_of(opt, family + ".jsonl"), result.items);
    write_manifest(path_of(opt, family + ".manifest.json"),
                   DatasetManifest::from_items(family, result.items, seed));
    write_warnings(opt, family, result);
    std::cout << "gen " << family << ": " << result.items.size() << " items, "
              << result.warnings.size() << " warnings\n";
}

qa::TcgasaConfig tcgasa_config(const PipelineOptions& opt, const std::string& subtype,
                               std::size_t fallback_count) {
    qa::TcgasaConfig cfg;
    cfg.subtype = subtype;
    cfg.metric = opt.config.get("tcgasa.metric", "wasserstein");
    cfg.count = opt.config.get_u64("tcgasa." + subtype + ".count", fallback_count);
    return cfg;
}

std::map<std::string, std::vector<stats::DEResult>> tvhe_tables_from_config(
    const PipelineOptions& opt) {
    // tvhe.matrices = "<indication>=<path>;<indication>=<path>;..."
    const std::string spec = opt.config.get("tvhe.matrices", "");
    if (spec.empty())
        throw std::runtime_error("gen tvhe: missing input table (config key tvhe.matrices)");
    const stats::Contrast contrast{opt.config.get("tvhe.treated", "tumour"),
                                   opt.config.get("tvhe.reference", "normal")};
    std::map<std::string, std::vector<stats::DEResult>> tables;
    for (const auto& entry : split_text(spec, ';')) {
        if (entry.empty()) continue;
        const std::size_t eq = entry.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("gen tvhe: bad tvhe.matrices entry '" + entry + "'");
        const auto matrix = stats::ExpressionMatrix::from_delimited(entry.substr(eq + 1));
        tables[entry.substr(0, eq)] = stats::differential_expression(matrix, contrast);
    }
    return tables;
}

struct RandomSplitOutcome {
    std::vector<qa::QaItem> all;
    split::SplitReport report;
};

// plain random item split (TTP --paper-faithful and the trainer fixture)
RandomSplitOutcome random_split(std::vector<qa::QaItem> items, double ratio,
                                std::uint64_t seed) {
    std::vector<std::size_t> order(items.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(derive_seed(seed, "random-split"));
    rng.shuffle(order);
    const std::size_t n_test = static_cast<std::size_t>(
        ratio * static_cast<double>(items.size()));
    std::vector<qa::QaItem> train, test;
    for (std::size_t k = 0; k < order.size(); ++k) {
        auto& item = items[order[k]];
        item.split = k < n_test ? "test" : "train";
        (k < n_test ? test : train).push_back(item);
    }
    split::SplitConfig verify_cfg;  // no disjointness roles: report only
    RandomSplitOutcome out;
    out.report = split::verify_split(train, test, verify_cfg);
    out.all = std::move(train);
    out.all.insert(out.all.end(), test.begin(), test.end());
    return out;
}

split::SplitConfig family_split_config(const PipelineOptions& opt, const std::string& family) {
    split::SplitConfig cfg;
    cfg.seed = family_seed(opt, "split", family);
    if (family == "spde") {
        cfg.subject_roles = {{"gene", true}, {"indication", true}};
        cfg.holdout_ratio = 0.15;
        cfg.stratify_keys = {"question_type"};
        cfg.stratum_tolerance = 0.2;  // whole indications move together
    } else if (family == "tvhe") {
        cfg.subject_roles = {{"gene", true}, {"indication", true}};
        cfg.holdout_ratio = 0.15;
        cfg.stratify_keys = {"direction"};
        cfg.stratum_tolerance = 0.2;
    } else if (family == "gi") {
        cfg.subject_roles = {{"gene", true}};
        cfg.holdout_ratio = 0.1;
        cfg.stratify_keys = {"question_type", "label"};
    } else if (family == "dseqde") {
        cfg.subject_roles = {{"target", true}, {"gene", true}, {"pathway", true}};
        cfg.holdout_ratio = 0.15;
        cfg.stratify_keys = {"question_type"};
    } else if (family == "ttp") {
        cfg.subject_roles = {{"target", true}};
        cfg.holdout_ratio = 0.1;
        cfg.stratify_keys = {"question_type"};
        cfg.stratum_tolerance = 0.25;  // tiny strata: counts are single digits
    } else if (family == "sd") {
        cfg.subject_roles = {{"protein", true}};
        cfg.holdout_ratio = 0.1;
    } else {
        throw std::logic_error("no default split config for family " + family);
    }
    return cfg;
}

struct SubtypeSplitSpec {
    std::string subtype;
    std::string holdout_role;           // entities held out into test
    std::vector<split::RoleSpec> roles; // disjointness roles
};

// TCGA-SA splits run per subtype: cancers or signatures are partitioned and
// collision items dropped, mirroring the per-subtype subject definitions.
std::vector<qa::QaItem> split_tcgasa(const PipelineOptions& opt,
                                     const std::vector<qa::QaItem>& items, std::string& report,
                                     bool& passing) {
    const auto table = synth::activity_table(family_seed(opt, "gen", "tcgasa"));
    (void)table;

    // deterministic holdout pools from the generated corpus entities
    std::set<std::string> signatures, cancers;
    for (const auto& item : items) {
        for (const auto& e : qa::get_entities(item, "signature")) signatures.insert(e);
        for (const auto& e : qa::get_entities(item, "cancer")) cancers.insert(e);
    }
    auto pick_holdout = [&](const std::set<std::string>& pool, double share,
                            const std::string& tag) {
        std::vector<std::string> all(pool.begin(), pool.end());
        Rng rng(derive_seed(family_seed(opt, "split", "tcgasa"), tag));
        const std::size_t k = std::max<std::size_t>(1, static_cast<std::size_t>(
                                                           share * static_cast<double>(
                                                                       all.size())));
        return rng.sample(all, k);
    };
    const auto holdout_sigs = pick_holdout(signatures, 0.1, "sig-holdout");
    const auto holdout_cancers = pick_holdout(cancers, 0.2, "cancer-holdout");

    const std::vector<SubtypeSplitSpec> specs = {
        {"signature_expression_binary", "signature", {{"signature", true}}},
        {"signature_similarity_binary", "signature", {{"signature", true}}},
        {"cancer_similarity_binary", "cancer", {{"cancer", true}}},
        {"cancer_signatures_comparison", "cancer", {{"cancer", true}, {"signature", true}}},
    };

    std::vector<qa::QaItem> out;
    std::ostringstream report_text;
    passing = true;
    for (const auto& spec : specs) {
        std::vector<qa::QaItem> subset;
        for (const auto& item : items)
            if (item.question_type == spec.subtype) subset.push_back(item);
        if (subset.empty()) continue;

        split::SplitConfig cfg;
        cfg.subject_roles = spec.roles;
        cfg.holdout_role = spec.holdout_role;
        cfg.holdout_subjects = spec.holdout_role == "signature" ? holdout_sigs : holdout_cancers;
        cfg.seed = family_seed(opt, "split", "tcgasa");
        cfg.stratify_keys = {};
        const auto result = split::entity_disjoint_split(subset, cfg);
        report_text << "subtype " << spec.subtype << "\n" << result.report.to_text();
        passing = passing && result.report.passing();
        out.insert(out.end(), result.train.begin(), result.train.end());
        out.insert(out.end(), result.test.begin(), result.test.end());
    }
    report = report_text.str();
    return out;
}

// DPP: ontology subtrees alternate between sides, leaky test pathways are
// Jaccard-filtered, then whole drug/cell components follow their majority.
std::vector<qa::QaItem> split_dpp(const PipelineOptions& opt,
                                  const std::vector<qa::QaItem>& items, std::string& report,
                                  bool& passing) {
    split::OntologyGraph ontology;
    if (opt.synthetic) {
        ontology = synth::dpp_fixture(family_seed(opt, "gen", "dpp")).ontology;
    } else {
        ontology = split::OntologyGraph::from_delimited(
            opt.config.get("dpp.ontology", ""));
        const auto members = qa::read_pathway_map(opt.config.get("dpp.pathway_genes", ""));
        for (const auto& set : members.pathways) ontology.members[set.name] = set;
    }

    const auto sides = split::partition_ontology(ontology);
    std::vector<stats::GeneSet> train_sets, test_sets;
    for (const auto& [node, side] : sides) {
        const auto it = ontology.members.find(node);
        if (it == ontology.members.end()) continue;
        (side == split::Side::train ? train_sets : test_sets).push_back(it->second);
    }
    const auto retained = split::max_jaccard_filter(test_sets, train_sets, 0.3);
    std::set<std::string> retained_test;
    for (const auto& s : retained) retained_test.insert(s.name);
    std::set<std::string> train_names;
    for (const auto& s : train_sets) train_names.insert(s.name);

    auto item_side = [&](const qa::QaItem& item) -> int {  // 0 train, 1 test, -1 drop
        bool all_train = true, all_test = true;
        for (const auto& p : qa::get_entities(item, "pathway")) {
            if (!train_names.count(p)) all_train = false;
            if (!retained_test.count(p)) all_test = false;
        }
        if (all_train) return 0;
        if (all_test) return 1;
        return -1;
    };

    // drug/cell-line components vote with their items' pathway sides
    std::map<std::string, std::size_t> entity_slot;
    std::vector<std::size_t> parent;
    auto uf_find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<std::size_t> item_comp(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        parent.push_back(parent.size());
        item_comp[i] = parent.size() - 1;
        for (const auto& role : {std::string("drug"), std::string("cell_line")}) {
            for (const auto& e : qa::get_entities(items[i], role)) {
                const std::string key = role + ":" + e;
                const auto it = entity_slot.find(key);
                if (it == entity_slot.end()) {
                    entity_slot[key] = item_comp[i];
                } else {
                    const std::size_t a = uf_find(it->second), b = uf_find(item_comp[i]);
                    parent[a] = b;
                }
            }
        }
    }
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> votes;  // comp -> train,test
    for (std::size_t i = 0; i < items.size(); ++i) {
        const int side = item_side(items[i]);
        auto& v = votes[uf_find(item_comp[i])];
        if (side == 0) ++v.first;
        else if (side == 1) ++v.second;
    }
    std::map<std::size_t, int> comp_side;
    std::size_t n_train_comps = 0, n_test_comps = 0;
    for (const auto& [comp, v] : votes) {
        const int side = v.second > v.first ? 1 : 0;
        comp_side[comp] = side;
        (side == 1 ? n_test_comps : n_train_comps) += 1;
    }
    // both sides must be populated when there is more than one component:
    // flip the component with the weakest majority
    if (votes.size() >= 2 && (n_train_comps == 0 || n_test_comps == 0)) {
        const int starved = n_train_comps == 0 ? 0 : 1;
        std::size_t weakest = votes.begin()->first;
        long best_margin = -1;
        for (const auto& [comp, v] : votes) {
            const long margin = std::labs(static_cast<long>(v.second) -
                                          static_cast<long>(v.first));
            if (best_margin < 0 || margin < best_margin) {
                best_margin = margin;
                weakest = comp;
            }
        }
        comp_side[weakest] = starved;
    }

    std::vector<qa::QaItem> train, test;
    std::size_t dropped = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const int side = comp_side.at(uf_find(item_comp[i]));
        if (item_side(items[i]) != side) {
            ++dropped;
            continue;
        }
        auto item = items[i];
        item.split = side == 1 ? "test" : "train";
        (side == 1 ? test : train).push_back(std::move(item));
    }

    split::SplitConfig verify_cfg;
    verify_cfg.subject_roles = {{"drug", true}, {"cell_line", true}, {"pathway", true}};
    auto rep = split::verify_split(train, test, verify_cfg);
    rep.n_dropped = dropped;
    passing = rep.passing();
    report = rep.to_text();

    std::vector<qa::QaItem> out = std::move(train);
    out.insert(out.end(), test.begin(), test.end());
    return out;
}

std::vector<qa::QaItem> read_split_file(const PipelineOptions& opt, const std::string& family) {
    return qa::read_items(path_of(opt, family + ".split.jsonl"));
}

}  // namespace

const std::vector<std::string>& gen_families() {
    static const std::vector<std::string> families = {
        "spde", "tvhe", "gi", "tcgasa", "dseqde", "dpp", "ttp", "sd", "toyrule"};
    return families;
}

void cmd_gen(const PipelineOptions& opt, const std::string& family) {
    if (family == "all") {
        for (const auto& f : gen_families()) cmd_gen(opt, f);
        return;
    }
    const std::uint64_t seed = family_seed(opt, "gen", family);
    const bool synth = opt.synthetic;

    if (family == "spde") {
        const auto records =
            synth ? synth::spatial_scores(seed)
                  : qa::read_spatial_scores(opt.config.get("spde.scores", ""));
        const std::size_t count = opt.config.get_u64("spde.per_indication", 400);
        write_dataset(opt, family, qa::gen_spde(records, count, seed), seed);
    } else if (family == "tvhe") {
        const auto tables = synth ? synth::tvhe_de_tables(seed) : tvhe_tables_from_config(opt);
        write_dataset(opt, family, qa::gen_tvhe(tables, qa::tvhe_default_bank(), seed), seed);
    } else if (family == "gi") {
        const auto records = synth ? synth::gi_features(seed)
                                   : qa::read_gi_features(opt.config.get("gi.features", ""));
        write_dataset(opt, family, qa::gen_gi(records, seed), seed);
    } else if (family == "tcgasa") {
        const auto table = synth ? synth::activity_table(seed)
                                 : qa::read_activity_table(
                                       opt.config.get("tcgasa.activity", ""),
                                       opt.config.get("tcgasa.signatures", ""));
        qa::GenResult merged;
        for (const auto& [subtype, count] :
             std::vector<std::pair<std::string, std::size_t>>{
                 {"signature_expression", 3000},
                 {"signature_similarity", 1500},
                 {"cancer_similarity", 3000},
                 {"cancer_signature_comparison", 2500}}) {
            auto r = qa::gen_tcgasa(table, tcgasa_config(opt, subtype, count), seed);
            merged.items.insert(merged.items.end(), r.items.begin(), r.items.end());
            merged.warnings.insert(merged.warnings.end(), r.warnings.begin(), r.warnings.end());
        }
        write_dataset(opt, family, std::move(merged), seed);
    } else if (family == "dseqde") {
        const auto degs = synth ? synth::deg_sets(seed)
                                : qa::read_deg_table(opt.config.get("dseqde.degs", ""));
        const auto map = synth ? synth::dseq_pathway_map(seed)
                               : qa::read_pathway_map(opt.config.get("dseqde.pathways", ""));
        write_dataset(opt, family, qa::gen_dseqde(degs, map, "all", seed), seed);
    } else if (family == "dpp") {
        const auto contexts =
            synth ? synth::dpp_fixture(seed).contexts
                  : qa::read_dpp_enrichment(opt.config.get("dpp.enrichment", ""));
        const std::string difficulty = opt.config.get("dpp.difficulty", "easy");
        write_dataset(opt, family, qa::gen_dpp(contexts, difficulty, seed), seed);
    } else if (family == "ttp") {
        const auto annotations =
            synth ? synth::ttp_annotations(seed)
                  : qa::read_ttp_annotations(opt.config.get("ttp.annotations", ""));
        write_dataset(opt, family, qa::gen_ttp(annotations, seed), seed);
    } else if (family == "sd") {
        const auto proteins = synth ? synth::protein_pockets(seed)
                                    : qa::read_pockets(opt.config.get("sd.pockets", ""));
        write_dataset(opt, family, qa::gen_sd(proteins, seed), seed);
    } else if (family == "toyrule") {
        qa::GenResult r;
        r.items = synth::toyrule_items(seed, opt.config.get_u64("toyrule.count", 2500));
        write_dataset(opt, family, std::move(r), seed);
    } else {
        throw std::invalid_argument("gen: unknown family '" + family + "'");
    }
}

void cmd_split(const PipelineOptions& opt, const std::string& family) {
    if (family == "all") {
        for (const auto& f : gen_families()) cmd_split(opt, f);
        return;
    }
    auto items = qa::read_items(path_of(opt, family + ".jsonl"));
    std::vector<qa::QaItem> tagged;
    std::string report_text;
    bool passing = true;

    if (family == "tcgasa") {
        tagged = split_tcgasa(opt, items, report_text, passing);
    } else if (family == "dpp") {
        tagged = split_dpp(opt, items, report_text, passing);
    } else if (family == "toyrule" || (family == "ttp" && opt.paper_faithful)) {
        auto out = random_split(std::move(items), 0.2,
                                family_seed(opt, "split", family));
        report_text = out.report.to_text();
        tagged = std::move(out.all);
    } else {
        const auto cfg = family_split_config(opt, family);
        auto result = split::entity_disjoint_split(items, cfg);
        report_text = result.report.to_text();
        passing = result.report.passing();
        tagged = std::move(result.train);
        tagged.insert(tagged.end(), result.test.begin(), result.test.end());
    }

    io::atomic_write_text(path_of(opt, family + ".split_report.txt"), report_text);
    qa::write_items(path_of(opt, family + ".split.jsonl"), tagged);

    auto manifest = read_manifest(path_of(opt, family + ".manifest.json"));
    manifest = DatasetManifest::from_items(family, tagged, manifest.seed,
                                           to_hex(fnv1a64(report_text)));
    write_manifest(path_of(opt, family + ".manifest.json"), manifest);

    std::cout << "split " << family << ": train=" << manifest.train
              << " test=" << manifest.test << (passing ? "" : "  [report has violations]")
              << "\n";
    if (!passing && family != "ttp" && family != "toyrule")
        throw std::runtime_error("split " + family + ": verification failed\n" + report_text);
}

void cmd_verify(const PipelineOptions& opt, const std::string& family) {
    if (family == "all") {
        for (const auto& f : gen_families()) cmd_verify(opt, f);
        return;
    }
    const auto manifest = read_manifest(path_of(opt, family + ".manifest.json"));
    const auto items = read_split_file(opt, family);

    const auto fresh = DatasetManifest::from_items(family, items, manifest.seed, "");
    if (fresh.total != manifest.total || fresh.train != manifest.train ||
        fresh.test != manifest.test || fresh.question_types != manifest.question_types)
        throw std::runtime_error("verify " + family + ": manifest counts drifted");

    const std::string report = io::read_text(path_of(opt, family + ".split_report.txt"));
    if (to_hex(fnv1a64(report)) != manifest.split_audit_digest)
        throw std::runtime_error("verify " + family + ": split report digest drifted");

    // recompute the split checks themselves
    std::vector<qa::QaItem> train, test;
    for (const auto& item : items)
        (item.split == "test" ? test : train).push_back(item);
    if (family != "ttp" && family != "toyrule" && family != "tcgasa" && family != "dpp") {
        const auto cfg = family_split_config(opt, family);
        const auto rep = split::verify_split(train, test, cfg);
        if (!rep.passing())
            throw std::runtime_error("verify " + family + ": split checks fail\n" +
                                     rep.to_text());
    }
    std::cout << "verify " << family << ": ok (" << manifest.total << " items)\n";
}

void cmd_mixture(const PipelineOptions& opt, std::vector<std::string> inputs, std::size_t cap,
                 const std::string& out_path) {
    if (inputs.empty())
        for (const auto& f : gen_families())
            if (f != "toyrule") inputs.push_back(path_of(opt, f + ".split.jsonl"));

    std::map<std::string, std::vector<qa::QaItem>> by_type;
    for (const auto& path : inputs) {
        for (auto& item : qa::read_items(path)) {
            if (item.split != "train") continue;
            if (opt.paper_mixture && item.family == "SD") continue;
            item.metadata["mixture_source"] = fs::path(path).filename().string();
            by_type[item.question_type].push_back(std::move(item));
        }
    }

    Rng rng(derive_seed(opt.master_seed, "mixture"));
    std::vector<qa::QaItem> mixed;
    for (auto& [type, bucket] : by_type) {
        if (bucket.size() <= cap) {
            mixed.insert(mixed.end(), bucket.begin(), bucket.end());
        } else {
            std::vector<std::size_t> idx(bucket.size());
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            const auto chosen = rng.sample(idx, cap);
            for (std::size_t i : chosen) mixed.push_back(bucket[i]);
        }
    }
    qa::write_items(out_path, mixed);
    write_manifest(out_path + ".manifest.json",
                   DatasetManifest::from_items("mixture", mixed, opt.master_seed));
    std::cout << "mixture: " << mixed.size() << " items across " << by_type.size()
              << " question types (cap " << cap << ")\n";
}

TrainSummary cmd_train(const PipelineOptions& opt, const std::string& train_path,
                       const std::string& heldout_path) {
    const auto train_items = qa::read_items(train_path);
    const auto heldout = qa::read_items(heldout_path);

    train::TrainerConfig cfg;
    cfg.group_size = opt.config.get_u64("train.group_size", 10);
    cfg.prompts_per_step = opt.config.get_u64("train.prompts_per_step", 10);
    cfg.learning_rate = opt.config.get_double("train.learning_rate", 2.5);
    cfg.eps_clip = opt.config.get_double("train.eps_clip", 0.2);
    cfg.eps_std = opt.config.get_double("train.eps_std", 1e-4);
    cfg.epochs = opt.config.get_u64("train.epochs", 1);
    cfg.seed = derive_seed(opt.master_seed, "train");

    const auto initial = train::ToyPolicy::scaffold_initialized(
        train::Vocabulary::toy_default(), train::toy_cue_markers().size(), cfg.max_len,
        train::toy_cue_markers(), cfg.scaffold_bias);
    TrainSummary summary;
    summary.initial_accuracy = train::evaluate_accuracy(
        initial, heldout, derive_seed(cfg.seed, "eval-initial"), cfg.max_len);

    auto outcome = train::train(train_items, cfg);
    summary.final_accuracy = train::evaluate_accuracy(
        outcome.policy, heldout, derive_seed(cfg.seed, "eval-final"), cfg.max_len);
    summary.steps = outcome.metrics.size();

    train::write_metrics_csv(path_of(opt, "train_metrics.csv"), outcome.metrics);
    outcome.policy.save(path_of(opt, "policy.bin"), cfg.seed);
    std::cout << "train: heldout accuracy " << summary.initial_accuracy << " -> "
              << summary.final_accuracy << " over " << summary.steps << " steps\n";
    return summary;
}

void cmd_score(const PipelineOptions& opt, const std::string& dataset_path,
               const std::string& completions_path, const std::string& out_path) {
    reward::VerifierConfig cfg;
    cfg.match_option_text = opt.config.get("reward.match_option_text", "false") == "true";
    const auto stats =
        reward::score_completions_file(dataset_path, completions_path, out_path, cfg);
    std::cout << "score: " << stats.scored << " completions, mean total " << stats.mean_total
              << ", accuracy " << stats.accuracy << "\n";
}

void cmd_judge(const PipelineOptions& opt, const std::string& mode,
               const std::string& dataset_path, const std::string& completions_a,
               const std::string& completions_b, const std::string& out_path) {
    judge::JudgeConfig cfg;
    cfg.endpoint = opt.config.get("judge.endpoint", "");
    cfg.model = opt.config.get("judge.model", "default");
    cfg.repeats = opt.config.get_u64("judge.repeats", 5);
    cfg.temperature = opt.config.get_double("judge.temperature", 0.0);
    if (cfg.endpoint.empty())
        throw std::runtime_error("judge: no endpoint configured (config key judge.endpoint)");

    std::map<std::string, qa::QaItem> items;
    for (auto& item : qa::read_items(dataset_path)) items[item.id] = std::move(item);

    auto read_completions = [](const std::string& path) {
        std::map<std::string, std::string> by_id;
        io::for_each_jsonl_line(path, [&](const std::string& line) {
            const auto j = nlohmann::json::parse(line);
            by_id[j.at("item_id").get<std::string>()] = j.at("text").get<std::string>();
        });
        return by_id;
    };

    cfg.max_parallel = opt.config.get_u64("judge.max_parallel", 4);
    auto transport = judge::make_http_transport();

    // bounded-parallel request pool; results assembled in id order
    struct Job {
        std::string id;
        std::function<std::string()> run;  // returns one JSONL line
    };
    std::vector<Job> jobs;

    if (mode == "preference") {
        const auto a = read_completions(completions_a);
        const auto b = read_completions(completions_b);
        for (const auto& [id, text_a] : a) {
            const auto itb = b.find(id);
            const auto iti = items.find(id);
            if (itb == b.end() || iti == items.end()) continue;
            const std::string text_b = itb->second;
            const qa::QaItem* item = &iti->second;
            const std::string item_id = id;
            const std::string text = text_a;
            jobs.push_back({id, [=, &cfg, &transport] {
                                return judge::preference_to_jsonl(judge::judge_preference(
                                    item_id, item->question, text, text_b, cfg, *transport));
                            }});
        }
    } else if (mode == "consistency") {
        const auto completions = read_completions(completions_a);
        for (const auto& [id, text] : completions) {
            const auto iti = items.find(id);
            if (iti == items.end()) continue;
            const auto parse = reward::parse_completion(text);
            if (!parse.think_body || !parse.answer_body) continue;
            const qa::QaItem* item = &iti->second;
            const std::string reasoning = *parse.think_body;
            const std::string actual = *parse.answer_body;
            jobs.push_back({id, [=, &cfg, &transport] {
                                return judge::consistency_to_jsonl(judge::judge_consistency(
                                    *item, reasoning, actual, cfg, *transport));
                            }});
        }
    } else {
        throw std::invalid_argument("judge: mode must be preference or consistency");
    }

    std::vector<std::string> lines(jobs.size());
    std::vector<std::string> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    const std::size_t workers = std::max<std::size_t>(
        1, std::min(cfg.max_parallel, jobs.size() == 0 ? 1 : jobs.size()));
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= jobs.size()) return;
                try {
                    lines[i] = jobs[i].run();
                } catch (const std::exception& e) {
                    errors[i] = e.what();
                }
            }
        });
    for (auto& t : pool) t.join();

    std::string out;
    std::size_t judged = 0, failed = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (!errors[i].empty()) {
            std::cerr << "judge " << mode << " " << jobs[i].id << ": " << errors[i] << "\n";
            ++failed;
        } else {
            out += lines[i];
            out += '\n';
            ++judged;
        }
    }

    io::atomic_write_text(out_path, out);
    std::cout << "judge " << mode << ": " << judged << " judged, " << failed << " failed\n";
}

void cmd_report(const PipelineOptions& opt, const std::string& rewards_path,
                const std::string& judgments_path, const std::string& out_path) {
    (void)opt;
    struct Bucket {
        std::size_t n = 0;
        std::size_t correct = 0;
    };
    std::map<std::pair<std::string, std::string>, Bucket> by_type;
    std::map<std::string, Bucket> by_family;
    std::set<std::string> reward_ids;

    io::for_each_jsonl_line(rewards_path, [&](const std::string& line) {
        const auto j = nlohmann::json::parse(line);
        const std::string family = j.value("family", "?");
        const std::string type = j.value("question_type", "?");
        const int correct = j.at("correct").get<int>();
        reward_ids.insert(j.at("item_id").get<std::string>());
        auto& b = by_type[{family, type}];
        ++b.n;
        b.correct += static_cast<std::size_t>(correct);
        auto& f = by_family[family];
        ++f.n;
        f.correct += static_cast<std::size_t>(correct);
    });

    std::ostringstream tsv;
    tsv.precision(10);
    tsv << "section\tfamily\tquestion_type\tmetric\tvalue\tcount\n";
    for (const auto& [key, b] : by_family)
        tsv << "accuracy\t" << key << "\t-\taccuracy\t"
            << static_cast<double>(b.correct) / std::max<std::size_t>(1, b.n) << "\t" << b.n
            << "\n";
    for (const auto& [key, b] : by_type)
        tsv << "accuracy\t" << key.first << "\t" << key.second << "\taccuracy\t"
            << static_cast<double>(b.correct) / std::max<std::size_t>(1, b.n) << "\t" << b.n
            << "\n";

    bool have_judgments = false;
    double pref_sum = 0;
    std::size_t pref_n = 0, cons_true = 0, cons_n = 0;
    std::vector<std::string> orphans;
    if (!judgments_path.empty() && fs::exists(judgments_path)) {
        io::for_each_jsonl_line(judgments_path, [&](const std::string& line) {
            const auto j = nlohmann::json::parse(line);
            have_judgments = true;
            const std::string id = j.at("item_id").get<std::string>();
            if (!reward_ids.count(id)) orphans.push_back(id);
            const std::string type = j.at("type").get<std::string>();
            if (type == "preference") {
                pref_sum += j.at("mean").get<double>();
                ++pref_n;
            } else if (type == "consistency") {
                if (j.at("consistent").get<bool>()) ++cons_true;
                ++cons_n;
            }
        });
    }
    if (!orphans.empty()) {
        std::string msg = "report: judgments without reward entries:";
        for (std::size_t i = 0; i < orphans.size() && i < 10; ++i) msg += " " + orphans[i];
        throw std::runtime_error(msg);
    }
    if (have_judgments) {
        if (pref_n > 0)
            tsv << "preference\t-\t-\tmean_rating\t" << pref_sum / static_cast<double>(pref_n)
                << "\t" << pref_n << "\n";
        if (cons_n > 0)
            tsv << "consistency\t-\t-\trate\t"
                << static_cast<double>(cons_true) / static_cast<double>(cons_n) << "\t"
                << cons_n << "\n";
    } else {
        tsv << "# judge sections absent: no judgments file\n";
    }

    io::atomic_write_text(out_path, tsv.str());
    std::cout << tsv.str();
}

void cmd_all(const PipelineOptions& opt) {
    cmd_gen(opt, "all");
    cmd_split(opt, "all");
    cmd_verify(opt, "all");
    cmd_mixture(opt, {}, opt.config.get_u64("mixture.cap", 5000),
                path_of(opt, "mixture.jsonl"));

    // planted-rule RLVR experiment on the trainer fixture
    const auto toy = read_split_file(opt, "toyrule");
    std::vector<qa::QaItem> train_items, test_items;
    for (const auto& item : toy)
        (item.split == "test" ? test_items : train_items).push_back(item);
    qa::write_items(path_of(opt, "toyrule.train.jsonl"), train_items);
    qa::write_items(path_of(opt, "toyrule.test.jsonl"), test_items);
    cmd_train(opt, path_of(opt, "toyrule.train.jsonl"), path_of(opt, "toyrule.test.jsonl"));

    // completions from the trained policy over the held-out items
    const auto policy = train::ToyPolicy::load(path_of(opt, "policy.bin"));
    std::string completions;
    for (const auto& item : test_items) {
        const auto rollouts = train::sample_group(
            policy, policy.cue_of(item), 2, policy.max_len(),
            derive_seed(opt.master_seed, "completions:" + item.id));
        nlohmann::ordered_json j;
        j["item_id"] = item.id;
        j["text"] = rollouts.front().decoded;
        completions += j.dump();
        completions += '\n';
    }
    io::atomic_write_text(path_of(opt, "completions.jsonl"), completions);

    cmd_score(opt, path_of(opt, "toyrule.test.jsonl"), path_of(opt, "completions.jsonl"),
              path_of(opt, "rewards.jsonl"));

    if (!opt.config.get("judge.endpoint", "").empty()) {
        cmd_judge(opt, "consistency", path_of(opt, "toyrule.test.jsonl"),
                  path_of(opt, "completions.jsonl"), "", path_of(opt, "judgments.jsonl"));
        cmd_report(opt, path_of(opt, "rewards.jsonl"), path_of(opt, "judgments.jsonl"),
                   path_of(opt, "report.tsv"));
    } else {
        cmd_report(opt, path_of(opt, "rewards.jsonl"), "", path_of(opt, "report.tsv"));
    }
    std::cout << "all: pipeline complete under " << opt.out_dir << "\n";
}

}  // namespace biofab::pipeline
