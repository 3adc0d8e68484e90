#include "biofab/pipeline/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "biofab/qa/templates.hpp"
#include "biofab/rng.hpp"
#include "biofab/stats/enrichment.hpp"
#include "biofab/text.hpp"

namespace biofab::synth {

namespace {

const std::vector<std::string>& cancer_name_pool() {
    static const std::vector<std::string> names = {
        "Bladder urothelial carcinoma",   "Lung adenocarcinoma",
        "Ovarian serous cystadenocarcinoma", "Mesothelioma",
        "Invasive breast carcinoma",      "Colon adenocarcinoma",
        "Stomach adenocarcinoma",         "Pancreatic adenocarcinoma",
        "Prostate adenocarcinoma",        "Cholangiocarcinoma",
        "Kidney renal clear cell carcinoma", "Esophageal carcinoma",
        "Hepatocellular carcinoma",       "Glioblastoma multiforme",
        "Thyroid carcinoma",              "Skin cutaneous melanoma",
    };
    return names;
}

std::string gene_name(const char* prefix, std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%04zu", prefix, i);
    return buf;
}

std::string ensembl_id(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "ENSG%011zu", i);
    return buf;
}

}  // namespace

std::vector<qa::SpatialScoreRecord> spatial_scores(std::uint64_t seed, const SynthConfig& cfg) {
    Rng rng(derive_seed(seed, "synth:spde"));
    std::vector<qa::SpatialScoreRecord> records;
    records.reserve(cfg.spde_indications * cfg.spde_genes_per_indication);
    for (std::size_t i = 0; i < cfg.spde_indications; ++i) {
        const std::string indication = cancer_name_pool()[i % cancer_name_pool().size()];
        for (std::size_t g = 0; g < cfg.spde_genes_per_indication; ++g) {
            qa::SpatialScoreRecord r;
            r.indication = indication;
            // per-indication gene pools are disjoint so splits stay feasible
            const std::size_t gid = i * cfg.spde_genes_per_indication + g;
            r.gene_symbol = gene_name("SPG", gid);
            r.ensembl_id = ensembl_id(gid);
            r.score = rng.normal();
            // plant a few extreme genes per tail
            if (g < 6) r.score = 4.0 + rng.uniform();
            else if (g < 12) r.score = -4.0 - rng.uniform();
            records.push_back(std::move(r));
        }
    }
    return records;
}

std::map<std::string, std::vector<stats::DEResult>> tvhe_de_tables(std::uint64_t seed,
                                                                   const SynthConfig& cfg) {
    std::map<std::string, std::vector<stats::DEResult>> tables;
    for (std::size_t i = 0; i < cfg.tvhe_indications; ++i) {
        const std::string indication =
            cancer_name_pool()[i % cancer_name_pool().size()] +
            (i >= cancer_name_pool().size() ? " " + std::to_string(i) : "");
        Rng rng(derive_seed(seed, "synth:tvhe:" + indication));

        stats::ExpressionMatrix m;
        const std::size_t n_samples = cfg.tvhe_tumour_samples + cfg.tvhe_normal_samples;
        for (std::size_t s = 0; s < n_samples; ++s) {
            m.sample_ids.push_back("S" + std::to_string(s));
            m.group_labels.push_back(s < cfg.tvhe_tumour_samples ? "tumour" : "normal");
        }
        for (std::size_t g = 0; g < cfg.tvhe_genes; ++g)
            m.gene_ids.push_back(gene_name("TVG", i * cfg.tvhe_genes + g));

        // first quarter planted up in tumour, second quarter down
        const std::size_t quarter = cfg.tvhe_genes / 4;
        m.values.resize(n_samples * cfg.tvhe_genes);
        for (std::size_t g = 0; g < cfg.tvhe_genes; ++g) {
            double tumour_scale = 1.0;
            if (g < quarter) tumour_scale = 4.5;
            else if (g < 2 * quarter) tumour_scale = 1.0 / 4.5;
            for (std::size_t s = 0; s < n_samples; ++s) {
                const bool tumour = s < cfg.tvhe_tumour_samples;
                const double base = 4.0 + 0.4 * rng.normal();
                m.values[s * cfg.tvhe_genes + g] =
                    std::max(0.01, base * (tumour ? tumour_scale : 1.0) *
                                       (1.0 + 0.05 * rng.normal()));
            }
        }
        tables[indication] =
            stats::differential_expression(m, {"tumour", "normal"});
    }
    return tables;
}

std::vector<qa::GiFeatureRecord> gi_features(std::uint64_t seed, const SynthConfig& cfg) {
    Rng rng(derive_seed(seed, "synth:gi"));
    const auto& catalog = qa::gi_question_catalog();
    std::vector<qa::GiFeatureRecord> records;
    records.reserve(cfg.gi_records);
    std::size_t gene_counter = 0;
    while (records.size() < cfg.gi_records) {
        // a handful of feature records per gene; (indication, type) pairs are
        // kept distinct so each record is a unique triple
        const std::string gene = gene_name("GIG", gene_counter++);
        const std::size_t per_gene = 2 + rng.below(4);
        std::vector<std::pair<std::size_t, std::size_t>> combos;
        for (std::size_t i = 0; i < cancer_name_pool().size(); ++i)
            for (std::size_t t = 0; t < catalog.size(); ++t) combos.emplace_back(i, t);
        const auto chosen = rng.sample(combos, per_gene);
        for (std::size_t k = 0; k < chosen.size() && records.size() < cfg.gi_records; ++k) {
            qa::GiFeatureRecord r;
            r.gene = gene;
            r.indication = cancer_name_pool()[chosen[k].first];
            r.feature_type = catalog[chosen[k].second].key;
            r.has_score = rng.uniform() > 0.02;  // a few unscored rows to skip
            r.truth = rng.coin();
            records.push_back(std::move(r));
        }
    }
    return records;
}

qa::SignatureActivityTable activity_table(std::uint64_t seed, const SynthConfig& cfg) {
    Rng rng(derive_seed(seed, "synth:tcgasa"));
    qa::SignatureActivityTable table;

    std::vector<std::string> universe;
    universe.reserve(cfg.tcgasa_universe);
    for (std::size_t g = 0; g < cfg.tcgasa_universe; ++g)
        universe.push_back(gene_name("SAG", g));

    for (std::size_t c = 0; c < cfg.tcgasa_cancers; ++c)
        table.cancers.push_back(cancer_name_pool()[c % cancer_name_pool().size()]);

    static const char* drug_words[] = {
        "thyroxine",  "estradiol",  "apomorphine", "entacapone", "maleate",
        "nalbuphine", "saquinavir", "bimatoprost", "metformin",  "rapamycin",
        "dasatinib",  "erlotinib",  "vorinostat",  "tamoxifen"};
    for (std::size_t s = 0; s < cfg.tcgasa_signatures; ++s) {
        stats::GeneSet set;
        set.name = std::string(drug_words[s % 14]) + "_" + std::to_string(s);
        const std::size_t size = 6 + rng.below(30);
        set.genes = rng.sample(universe, size);
        set.provenance = "synthetic perturbagen signature";
        table.signatures.push_back(std::move(set));
    }

    // per-cancer expression with planted per-(cancer, signature) shifts,
    // then real rank-difference activities per sample
    std::vector<std::vector<double>> shift(cfg.tcgasa_cancers,
                                           std::vector<double>(cfg.tcgasa_signatures, 0.0));
    for (std::size_t c = 0; c < cfg.tcgasa_cancers; ++c)
        for (std::size_t s = 0; s < cfg.tcgasa_signatures; ++s)
            if (rng.uniform() < 0.5) shift[c][s] = rng.uniform(-2.5, 2.5);

    table.activity.assign(cfg.tcgasa_cancers,
                          std::vector<std::vector<double>>(cfg.tcgasa_signatures));

    std::vector<std::size_t> member_of(cfg.tcgasa_universe);  // scratch
    for (std::size_t c = 0; c < cfg.tcgasa_cancers; ++c) {
        for (std::size_t sample = 0; sample < cfg.tcgasa_samples_per_cancer; ++sample) {
            std::vector<double> expr(cfg.tcgasa_universe);
            for (std::size_t g = 0; g < cfg.tcgasa_universe; ++g) expr[g] = rng.normal();
            for (std::size_t s = 0; s < cfg.tcgasa_signatures; ++s) {
                if (shift[c][s] == 0.0) continue;
                for (const auto& gene : table.signatures[s].genes) {
                    const std::size_t g = static_cast<std::size_t>(
                        std::stoul(gene.substr(3)));
                    expr[g] += shift[c][s] + 0.3 * rng.normal();
                }
            }
            // ranking: ascending expression, rank 1 = weakest
            std::vector<std::size_t> order(cfg.tcgasa_universe);
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::sort(order.begin(), order.end(),
                      [&](std::size_t a, std::size_t b) { return expr[a] < expr[b]; });
            for (std::size_t pos = 0; pos < order.size(); ++pos)
                member_of[order[pos]] = pos + 1;  // gene -> rank

            for (std::size_t s = 0; s < cfg.tcgasa_signatures; ++s) {
                std::int64_t rank_sum = 0;
                for (const auto& gene : table.signatures[s].genes)
                    rank_sum += static_cast<std::int64_t>(
                        member_of[std::stoul(gene.substr(3))]);
                table.activity[c][s].push_back(stats::rank_difference_score(
                    cfg.tcgasa_universe, rank_sum, table.signatures[s].genes.size()));
            }
        }
    }
    return table;
}

std::vector<qa::TargetContextDegs> deg_sets(std::uint64_t seed, const SynthConfig& cfg) {
    Rng rng(derive_seed(seed, "synth:dseqde"));
    static const char* contexts[] = {"muscle invasive bladder cancer",
                                     "lung adenocarcinoma", "colorectal cancer"};
    std::vector<qa::TargetContextDegs> out;
    for (std::size_t t = 0; t < cfg.dseq_targets; ++t) {
        const std::string target = gene_name("TGT", t);
        std::vector<std::string> pool;
        pool.reserve(cfg.dseq_genes_per_target);
        for (std::size_t g = 0; g < cfg.dseq_genes_per_target; ++g)
            pool.push_back(gene_name("DSG", t * cfg.dseq_genes_per_target + g));

        for (std::size_t c = 0; c < cfg.dseq_contexts_per_target; ++c) {
            qa::TargetContextDegs tc;
            tc.target = target;
            tc.context = contexts[(t + c) % 3];
            tc.universe = pool;
            tc.degs = rng.sample(pool, cfg.dseq_degs_per_context);
            std::sort(tc.degs.begin(), tc.degs.end());
            out.push_back(std::move(tc));
        }
    }
    return out;
}

qa::PathwayMap dseq_pathway_map(std::uint64_t seed, const SynthConfig& cfg) {
    Rng rng(derive_seed(seed, "synth:dseqde-pathways"));
    qa::PathwayMap map;
    for (std::size_t t = 0; t < cfg.dseq_targets; ++t) {
        std::vector<std::string> pool;
        for (std::size_t g = 0; g < cfg.dseq_genes_per_target; ++g)
            pool.push_back(gene_name("DSG", t * cfg.dseq_genes_per_target + g));
        for (std::size_t p = 0; p < cfg.dseq_pathways_per_target; ++p) {
            stats::GeneSet set;
            set.name = "Pathway module " + std::to_string(t) + "." + std::to_string(p);
            set.genes = rng.sample(pool, 4 + rng.below(10));
            set.provenance = "synthetic pathway map";
            map.pathways.push_back(std::move(set));
        }
    }
    return map;
}

DppFixture dpp_fixture(std::uint64_t seed, const SynthConfig& cfg) {
    Rng rng(derive_seed(seed, "synth:dpp"));
    DppFixture fx;

    std::vector<std::string> universe;
    for (std::size_t g = 0; g < cfg.dpp_universe; ++g)
        universe.push_back(gene_name("DPG", g));

    // pathway hierarchy: a few roots, children refine their parent's genes
    const std::size_t n_roots = 6;
    std::vector<std::vector<std::string>> root_pools(n_roots);
    for (std::size_t r = 0; r < n_roots; ++r)
        root_pools[r] = rng.sample(universe, cfg.dpp_universe / 5 + rng.below(40));

    for (std::size_t p = 0; p < cfg.dpp_pathways; ++p) {
        const std::size_t root = p % n_roots;
        stats::GeneSet set;
        set.name = "R-SYN-" + std::to_string(1000 + p);
        const auto& pool = root_pools[root];
        const std::size_t size = std::min<std::size_t>(pool.size(), 8 + rng.below(18));
        set.genes = rng.sample(pool, size);
        set.provenance = "synthetic reactome-like module";
        fx.ontology.node_ids.push_back(set.name);
        fx.ontology.members[set.name] = std::move(set);
        if (p >= n_roots) {
            // parent is an earlier node from the same root lineage
            const std::size_t parent = root + n_roots * ((p - n_roots) / n_roots / 2);
            fx.ontology.edges.emplace_back(fx.ontology.node_ids[parent],
                                           fx.ontology.node_ids[p]);
        }
    }
    fx.ontology.validate();

    std::vector<stats::GeneSet> library;
    for (const auto& id : fx.ontology.node_ids) library.push_back(fx.ontology.members.at(id));
    std::vector<std::string> pathway_space;
    for (const auto& s : library) pathway_space.push_back(s.name);

    static const char* drug_pool[] = {
        "Saquinavir", "Bimatoprost", "Metformin",  "Rapamycin", "Dasatinib", "Erlotinib",
        "Vorinostat", "Tamoxifen",   "Ontenacept", "Velbarent", "Quorestat", "Mithrazol",
        "Ardeximab",  "Coltrexene",  "Nuvistarin", "Pelligrane", "Sorvandib", "Tralokast",
        "Umbrastine", "Vexoprazan",  "Wilfortide", "Xanthorol", "Yellostat", "Zubrafenib"};
    static const char* cell_pool[] = {"A549", "SW1417", "HCT116", "MCF7", "PC3", "HEPG2"};
    static const double concentrations[] = {0.05, 0.5, 5.0};

    // drugs pair only with cells from their block, keeping the drug/cell
    // graph splittable into several components
    const std::size_t blocks = 3;
    const std::size_t cells_per_block = std::max<std::size_t>(1, cfg.dpp_cell_lines / blocks);
    for (std::size_t d = 0; d < cfg.dpp_drugs; ++d) {
        const std::string drug = drug_pool[d % 24];
        const std::size_t block = d % blocks;
        // distinct (cell line, concentration) combos within the drug's block
        std::vector<std::pair<std::size_t, std::size_t>> combos;
        for (std::size_t c = 0; c < cells_per_block; ++c)
            for (std::size_t k = 0; k < 3; ++k)
                combos.emplace_back((block * cells_per_block + c) % cfg.dpp_cell_lines, k);
        const auto chosen = rng.sample(combos, 2 + rng.below(2));
        for (const auto& [cell_idx, conc_idx] : chosen) {
            qa::DppContext ctx;
            ctx.drug = drug;
            ctx.cell_line = cell_pool[cell_idx];
            ctx.concentration_um = concentrations[conc_idx];

            // planted perturbation: one pathway's genes pushed to one end
            const std::size_t hit = rng.below(library.size());
            const bool up = rng.coin();
            std::vector<double> score(cfg.dpp_universe);
            for (std::size_t g = 0; g < cfg.dpp_universe; ++g) score[g] = rng.normal();
            for (const auto& gene : library[hit].genes)
                score[std::stoul(gene.substr(3))] += up ? 5.0 : -5.0;

            std::vector<std::size_t> order(cfg.dpp_universe);
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::sort(order.begin(), order.end(),
                      [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
            std::vector<std::string> ranked(cfg.dpp_universe);
            for (std::size_t pos = 0; pos < order.size(); ++pos)
                ranked[pos] = universe[order[pos]];

            ctx.results = stats::enrichment_with_significance(
                ranked, library, cfg.dpp_n_perm,
                derive_seed(seed, "dpp-perm:" + drug + ":" + ctx.cell_line + ":" +
                                      std::to_string(ctx.concentration_um)));
            ctx.pathway_space = pathway_space;
            fx.contexts.push_back(std::move(ctx));
        }
    }
    return fx;
}

std::vector<qa::TtpAnnotation> ttp_annotations(std::uint64_t seed, const SynthConfig& cfg) {
    Rng rng(derive_seed(seed, "synth:ttp"));
    static const char* fields[] = {"druggability", "small_molecule", "antibody",
                                   "structure",    "ligand",         "toxicity",
                                   "inflammatory_immunological", "cancer_biology", "general"};
    std::vector<qa::TtpAnnotation> out;
    for (std::size_t t = 0; t < cfg.ttp_targets; ++t) {
        qa::TtpAnnotation a;
        a.target = gene_name("TP", t);
        for (const char* f : fields)
            if (rng.uniform() < 0.85) a.fields[f] = rng.coin();
        out.push_back(std::move(a));
    }
    return out;
}

std::vector<qa::ProteinPockets> protein_pockets(std::uint64_t seed, const SynthConfig& cfg) {
    Rng rng(derive_seed(seed, "synth:sd"));
    static const char* amino = "ACDEFGHIKLMNPQRSTVWY";
    std::vector<qa::ProteinPockets> out;
    for (std::size_t p = 0; p < cfg.sd_proteins; ++p) {
        qa::ProteinPockets protein;
        protein.protein_id = "prot-" + std::to_string(p);
        const std::size_t len = 60 + rng.below(100);
        for (std::size_t i = 0; i < len; ++i) protein.sequence += amino[rng.below(20)];

        const std::size_t n_pockets = 2 + rng.below(4);
        for (std::size_t k = 0; k < n_pockets; ++k) {
            qa::PocketRecord pocket;
            std::vector<std::size_t> all(len);
            std::iota(all.begin(), all.end(), std::size_t{1});
            pocket.residue_positions = rng.sample(all, 4 + rng.below(14));
            pocket.druggability = rng.uniform();
            protein.pockets.push_back(std::move(pocket));
        }
        out.push_back(std::move(protein));
    }
    return out;
}

std::vector<qa::QaItem> toyrule_items(std::uint64_t seed, std::size_t count) {
    Rng rng(derive_seed(seed, "synth:toyrule"));
    std::vector<qa::QaItem> items;
    items.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const bool key_a = rng.coin();
        const std::string cue = key_a ? "alpha" : "beta";
        char idbuf[32];
        std::snprintf(idbuf, sizeof(idbuf), "toy-%06zu", i);
        qa::QaItem item;
        item.id = idbuf;
        item.family = "TOY";
        item.question_type = "planted_rule";
        item.question = "A control token set during curation determines this item's key. "
                        "Which option does the control token select? Control token: " +
                        cue + ".";
        item.options = {{"A", "alpha"}, {"B", "beta"}};
        item.answer = key_a ? "A" : "B";
        item.subjects = {{"token", cue}};
        item.metadata["cue"] = cue;
        items.push_back(std::move(item));
    }
    return items;
}

}  // namespace biofab::synth
