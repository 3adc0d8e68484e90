#include "biofab/qa/audit.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "biofab/stats/descriptive.hpp"
#include "biofab/stats/distance.hpp"
#include "biofab/text.hpp"

namespace biofab::qa {

namespace {

std::string before_suffix(const std::string& text, const std::string& marker) {
    const auto pos = text.find(marker);
    return pos == std::string::npos ? text : text.substr(0, pos);
}

struct Lookup {
    // SPDE
    std::unordered_map<std::string, std::unordered_map<std::string, double>> spde_scores;
    std::unordered_map<std::string, std::pair<double, double>> spde_quantiles;  // q01, q99
    // TvHE
    std::unordered_map<std::string, stats::DeClass> tvhe_class;  // ind|gene
    // GI
    std::unordered_map<std::string, bool> gi_truth;  // gene|ind|type
    // DSeqDE
    std::unordered_map<std::string, const TargetContextDegs*> degs;  // target|context
    // DPP
    std::unordered_map<std::string, const DppContext*> dpp;  // drug|cell|conc
    // TTP
    std::unordered_map<std::string, const TtpAnnotation*> ttp;
    // SD
    std::unordered_map<std::string, const ProteinPockets*> proteins;

    const SignatureActivityTable* activities = nullptr;
    const PathwayMap* pathway_map = nullptr;
};

Lookup build_lookup(const AuditSources& s) {
    Lookup lk;
    for (const auto& r : s.spatial) lk.spde_scores[r.indication][r.gene_symbol] = r.score;
    for (auto& [ind, genes] : lk.spde_scores) {
        std::vector<double> scores;
        scores.reserve(genes.size());
        for (const auto& [g, v] : genes) scores.push_back(v);
        lk.spde_quantiles[ind] = {stats::quantile(scores, 0.01), stats::quantile(scores, 0.99)};
    }
    if (s.tvhe_de)
        for (const auto& [ind, results] : *s.tvhe_de)
            for (const auto& r : results) lk.tvhe_class[ind + "|" + r.gene_id] = r.de_class;
    for (const auto& r : s.gi)
        if (r.has_score) lk.gi_truth[r.gene + "|" + r.indication + "|" + r.feature_type] = r.truth;
    for (const auto& tc : s.deg_sets) lk.degs[tc.target + "|" + tc.context] = &tc;
    for (const auto& ctx : s.dpp)
        lk.dpp[ctx.drug + "|" + ctx.cell_line + "|" + format_compact(ctx.concentration_um)] =
            &ctx;
    for (const auto& a : s.ttp) lk.ttp[a.target] = &a;
    for (const auto& p : s.proteins) lk.proteins[p.protein_id] = &p;
    lk.activities = s.activities;
    lk.pathway_map = s.pathway_map;
    return lk;
}

std::string audit_spde(const QaItem& item, const Lookup& lk) {
    const bool up = contains(item.question, "Which gene is upregulated");
    const bool down = contains(item.question, "Which gene is downregulated");
    if (up == down) return "question matches neither direction schema";
    const std::string& indication = item.subjects.at("indication");
    const auto scores_it = lk.spde_scores.find(indication);
    if (scores_it == lk.spde_scores.end()) return "indication absent from source table";
    const auto [q_lo, q_hi] = lk.spde_quantiles.at(indication);

    const std::string keyed_gene = before_suffix(item.keyed_option().text, " (ensembl");
    std::string other_gene;
    for (const auto& o : item.options)
        if (o.label != item.answer) other_gene = before_suffix(o.text, " (ensembl");

    const auto keyed_it = scores_it->second.find(keyed_gene);
    const auto other_it = scores_it->second.find(other_gene);
    if (keyed_it == scores_it->second.end() || other_it == scores_it->second.end())
        return "option gene absent from source table";
    const double ks = keyed_it->second, os = other_it->second;

    if (up) {
        if (!(ks >= q_hi)) return "keyed gene not in the upper tail";
        if (!(os <= 0.5 && os < q_hi)) return "distractor violates the up rule";
    } else {
        if (!(ks <= q_lo)) return "keyed gene not in the lower tail";
        if (!(os >= -0.5 && os > q_lo)) return "distractor violates the down rule";
    }
    return {};
}

std::string audit_tvhe(const QaItem& item, const Lookup& lk) {
    static const std::unordered_set<std::string> tumour_terms = {
        "tumour tissue", "neoplastic tissue", "neoplastic cells"};
    static const std::unordered_set<std::string> normal_terms = {"adjacent normal tissue",
                                                                 "non-neoplastic tissue"};
    const std::string& keyed = item.keyed_option().text;
    const bool keyed_tumour = tumour_terms.count(keyed) > 0;
    if (!keyed_tumour && !normal_terms.count(keyed)) return "keyed option is not a tissue term";

    const auto it = lk.tvhe_class.find(item.subjects.at("indication") + "|" +
                                       item.subjects.at("gene"));
    if (it == lk.tvhe_class.end()) return "gene/indication absent from DE table";
    if (it->second == stats::DeClass::excluded) return "excluded gene emitted an item";
    const bool should_be_tumour = it->second == stats::DeClass::tumour_up;
    if (keyed_tumour != should_be_tumour) return "keyed tissue contradicts DE class";
    return {};
}

std::string audit_gi(const QaItem& item, const Lookup& lk) {
    const auto it = lk.gi_truth.find(item.subjects.at("gene") + "|" +
                                     item.subjects.at("indication") + "|" + item.question_type);
    if (it == lk.gi_truth.end()) return "record absent from GI table";
    const std::string& keyed = item.keyed_option().text;
    if (keyed != "True" && keyed != "False") return "keyed option is not True/False";
    if ((keyed == "True") != it->second) return "keyed label contradicts truth";
    return {};
}

std::string audit_tcgasa(const QaItem& item, const Lookup& lk) {
    if (!lk.activities) return "activity table missing";
    const auto& t = *lk.activities;
    const std::string subtype = item.metadata.at("subtype");
    const std::string metric =
        item.metadata.count("metric") ? item.metadata.at("metric") : std::string("wasserstein");

    auto cancer_mean = [&](const std::string& cancer, const std::string& sig) {
        const auto& v = t.activity[t.cancer_index(cancer)][t.signature_index(sig)];
        return stats::mean(v);
    };
    auto dist = [&](std::span<const double> a, std::span<const double> b) {
        return metric == "mmd" ? stats::mmd_rbf(a, b) : stats::wasserstein_1d(a, b);
    };

    const std::string& keyed = item.keyed_option().text;
    std::string other;
    for (const auto& o : item.options)
        if (o.label != item.answer) other = o.text;

    if (subtype == "signature_expression") {
        const std::string& sig = item.subjects.at("signature");
        if (!(cancer_mean(keyed, sig) > cancer_mean(other, sig)))
            return "keyed cancer does not have the higher mean activity";
        return {};
    }
    if (subtype == "signature_similarity") {
        const std::string ref = item.subjects.at("signature");
        const std::string ka = before_suffix(keyed, " (computed");
        const std::string kb = before_suffix(other, " (computed");
        const std::size_t r = t.signature_index(ref);
        auto avg_dist = [&](std::size_t x) {
            double sum = 0;
            std::size_t n = 0;
            for (std::size_t c = 0; c < t.cancers.size(); ++c) {
                if (t.activity[c][r].empty() || t.activity[c][x].empty()) continue;
                sum += dist(t.activity[c][r], t.activity[c][x]);
                ++n;
            }
            return sum / static_cast<double>(n);
        };
        if (!(avg_dist(t.signature_index(ka)) < avg_dist(t.signature_index(kb))))
            return "keyed signature is not the closer one";
        return {};
    }
    if (subtype == "cancer_similarity") {
        const std::string& ref = item.subjects.at("cancer");
        const std::string& sig = item.subjects.at("signature");
        const std::size_t s = t.signature_index(sig);
        const auto& rv = t.activity[t.cancer_index(ref)][s];
        const double d_keyed = dist(rv, t.activity[t.cancer_index(keyed)][s]);
        const double d_other = dist(rv, t.activity[t.cancer_index(other)][s]);
        if (!(d_keyed < d_other)) return "keyed cancer is not the closer one";
        return {};
    }
    if (subtype == "cancer_signature_comparison") {
        const std::string& cancer = item.subjects.at("cancer");
        const std::string ka = before_suffix(keyed, " (computed");
        const std::string kb = before_suffix(other, " (computed");
        if (!(cancer_mean(cancer, ka) > cancer_mean(cancer, kb)))
            return "keyed signature does not have the higher mean activity";
        return {};
    }
    return "unknown TCGA-SA subtype";
}

std::string audit_dseqde(const QaItem& item, const Lookup& lk) {
    const auto it = lk.degs.find(item.subjects.at("target") + "|" + item.subjects.at("context"));
    if (it == lk.degs.end()) return "target/context absent from DEG table";
    const auto& tc = *it->second;
    const std::unordered_set<std::string> degs(tc.degs.begin(), tc.degs.end());

    const std::string& keyed = item.keyed_option().text;
    if (item.question_type == "yes_no_gene") {
        const bool is_deg = degs.count(item.subjects.at("gene")) > 0;
        if (keyed != (is_deg ? "Yes" : "No")) return "yes/no key contradicts DEG membership";
        return {};
    }
    if (item.question_type == "pairwise_gene") {
        std::string other;
        for (const auto& o : item.options)
            if (o.label != item.answer) other = o.text;
        if (!degs.count(keyed)) return "keyed gene is not deregulated";
        if (degs.count(other)) return "distractor gene is deregulated";
        return {};
    }
    if (item.question_type == "pairwise_pathway") {
        if (!lk.pathway_map) return "pathway map missing";
        auto hit = [&](const std::string& name) {
            for (const auto& pw : lk.pathway_map->pathways)
                if (pw.name == name) {
                    for (const auto& g : pw.genes)
                        if (degs.count(g)) return 1;
                    return 0;
                }
            return -1;
        };
        std::string other;
        for (const auto& o : item.options)
            if (o.label != item.answer) other = o.text;
        if (hit(keyed) != 1) return "keyed pathway has no deregulated member";
        if (hit(other) != 0) return "distractor pathway is deregulated or unknown";
        return {};
    }
    return "unknown DSeqDE question type";
}

std::string audit_dpp(const QaItem& item, const Lookup& lk) {
    const auto it = lk.dpp.find(item.subjects.at("drug") + "|" + item.subjects.at("cell_line") +
                                "|" + item.metadata.at("concentration_um"));
    if (it == lk.dpp.end()) return "context absent from enrichment table";
    const auto& ctx = *it->second;

    const stats::EnrichmentResult* best = nullptr;
    for (const auto& r : ctx.results) {
        if (r.fdr >= 0.05) continue;
        if (!best || std::abs(r.nes) > std::abs(best->nes) ||
            (std::abs(r.nes) == std::abs(best->nes) && r.set_name < best->set_name))
            best = &r;
    }
    if (!best) return "no significant pathway in source for this context";
    const std::string expected = best->set_name + " - " + stats::to_string(best->direction);
    if (item.keyed_option().text != expected)
        return "keyed option is not the argmax |NES| pathway";
    return {};
}

std::string audit_ttp(const QaItem& item, const Lookup& lk) {
    const auto it = lk.ttp.find(item.subjects.at("target"));
    if (it == lk.ttp.end()) return "target absent from annotation table";
    const auto& ann = *it->second;

    // field and polarity re-derived from the question type catalog
    std::string field;
    bool negative = false;
    if (item.question_type == "multiple_choice") {
        field = contains(item.question, "small molecule") ? "small_molecule" : "antibody";
    } else {
        for (const auto& qt : ttp_question_catalog())
            if (qt.type == item.question_type) {
                field = qt.field;
                negative = qt.negative;
                break;
            }
    }
    if (field.empty()) return "unknown TTP question type";
    const auto fit = ann.fields.find(field);
    if (fit == ann.fields.end()) return "annotation field missing for emitted item";
    const bool yes = negative ? !fit->second : fit->second;
    if (item.keyed_option().text != (yes ? "Yes" : "No"))
        return "keyed option contradicts the annotation flag";
    return {};
}

std::string audit_sd(const QaItem& item, const Lookup& lk) {
    const auto it = lk.proteins.find(item.subjects.at("protein"));
    if (it == lk.proteins.end()) return "protein absent from pocket table";
    const auto& protein = *it->second;

    std::size_t best = 0;
    for (std::size_t i = 1; i < protein.pockets.size(); ++i)
        if (protein.pockets[i].druggability > protein.pockets[best].druggability) best = i;

    std::vector<std::string> tokens;
    for (std::size_t pos : protein.pockets[best].residue_positions)
        tokens.push_back(std::string(1, protein.sequence[pos - 1]) + std::to_string(pos));
    if (item.keyed_option().text != join(tokens, " "))
        return "keyed option is not the top-scoring pocket";
    return {};
}

std::string audit_one(const QaItem& item, const Lookup& lk) {
    try {
        if (item.family == "SPDE") return audit_spde(item, lk);
        if (item.family == "TvHE") return audit_tvhe(item, lk);
        if (item.family == "GI") return audit_gi(item, lk);
        if (item.family == "TCGA-SA") return audit_tcgasa(item, lk);
        if (item.family == "DSeqDE") return audit_dseqde(item, lk);
        if (item.family == "DPP") return audit_dpp(item, lk);
        if (item.family == "TTP") return audit_ttp(item, lk);
        if (item.family == "SD") return audit_sd(item, lk);
        if (item.family == "TOY") {
            // planted rule: keyed option text equals the control token
            const auto pos = item.question.rfind(": ");
            if (pos == std::string::npos) return "toy item without control token";
            std::string cue = item.question.substr(pos + 2);
            if (!cue.empty() && cue.back() == '.') cue.pop_back();
            return item.keyed_option().text == cue ? std::string{}
                                                   : "keyed option is not the control token";
        }
        return "unknown family";
    } catch (const std::exception& e) {
        return std::string("audit error: ") + e.what();
    }
}

}  // namespace

AuditReport audit_corpus(std::span<const QaItem> items, const AuditSources& sources,
                         Exec exec) {
    const Lookup lk = build_lookup(sources);
    std::vector<std::string> errors(items.size());
    const std::int64_t n = static_cast<std::int64_t>(items.size());
    const bool parallel = exec == Exec::parallel;

#pragma omp parallel for schedule(dynamic, 64) if (parallel)
    for (std::int64_t i = 0; i < n; ++i)
        errors[static_cast<std::size_t>(i)] = audit_one(items[static_cast<std::size_t>(i)], lk);

    AuditReport report;
    for (std::size_t i = 0; i < items.size(); ++i) {
        ++report.checked;
        ++report.checked_by_family[items[i].family];
        if (!errors[i].empty()) {
            ++report.mismatches;
            if (report.failures.size() < 20)
                report.failures.push_back(items[i].id + ": " + errors[i]);
        }
    }
    return report;
}

bool audit_dseqde_balance(std::span<const QaItem> items, std::string* detail) {
    std::map<std::string, std::pair<std::size_t, std::size_t>> counts;  // target -> yes,no
    for (const auto& item : items) {
        if (item.family != "DSeqDE" || item.question_type != "yes_no_gene") continue;
        auto& c = counts[item.subjects.at("target")];
        if (item.keyed_option().text == "Yes") ++c.first;
        else ++c.second;
    }
    for (const auto& [target, c] : counts) {
        if (c.first != c.second) {
            if (detail)
                *detail = target + ": yes=" + std::to_string(c.first) +
                          " no=" + std::to_string(c.second);
            return false;
        }
    }
    return true;
}

}  // namespace biofab::qa
