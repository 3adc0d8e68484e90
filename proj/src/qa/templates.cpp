#include "biofab/qa/templates.hpp"

#include <stdexcept>

namespace biofab::qa {

std::string instantiate(const std::string& pattern,
                        const std::map<std::string, std::string>& values) {
    std::string out;
    out.reserve(pattern.size());
    std::size_t i = 0;
    while (i < pattern.size()) {
        if (pattern[i] == '{') {
            const std::size_t close = pattern.find('}', i);
            if (close == std::string::npos)
                throw std::invalid_argument("template: unterminated slot in '" + pattern + "'");
            const std::string slot = pattern.substr(i + 1, close - i - 1);
            const auto it = values.find(slot);
            if (it == values.end())
                throw std::invalid_argument("template: no value for slot '" + slot + "'");
            out += it->second;
            i = close + 1;
        } else {
            out += pattern[i++];
        }
    }
    return out;
}

TemplateBank tvhe_default_bank() {
    TemplateBank bank;
    bank.family = "TvHE";
    bank.slots["EXPR"] = {"transcript abundance", "mRNA levels", "transcriptional abundance",
                          "expression levels"};
    bank.slots["TUMOUR_TERM"] = {"tumour tissue", "neoplastic tissue", "neoplastic cells"};
    bank.slots["NORMAL_TERM"] = {"adjacent normal tissue", "non-neoplastic tissue"};
    bank.templates = {
        {"direct",
         "Is {GENE} more expressed in {INDICATION} {TUMOUR_TERM} or in {INDICATION} "
         "{NORMAL_TERM}?",
         false, false},
        {"descriptive",
         "Does {GENE} exhibit higher {EXPR} in {INDICATION} {TUMOUR_TERM} compared to the "
         "corresponding {NORMAL_TERM}?",
         true, false},
        {"selection",
         "In {INDICATION}, which tissue type exhibits higher {EXPR} of {GENE}?",
         true, false},
    };
    return bank;
}

const std::vector<GiQuestionType>& gi_question_catalog() {
    static const std::vector<GiQuestionType> catalog = {
        {"high_expression",
         "Does {GENE} in {INDICATION} have a high expression?",
         {"Is the transcript abundance of {GENE} significantly elevated in {INDICATION} "
          "samples?"}},
        {"high_expression_cancer_cells",
         "Does {GENE} in {INDICATION} have a high expression in cancer cells?",
         {"Is the mRNA abundance of {GENE} significantly elevated in {INDICATION} malignant "
          "cells?"}},
        {"high_expression_endocytosis",
         "Does {GENE} in {INDICATION} have a high expression in cancer cells that also have a "
         "high endocytosis signature?",
         {"Is {GENE} expression significantly elevated in {INDICATION} malignant cells "
          "displaying strong endocytosis signature activity?"}},
        {"high_expression_cathepsin_malignant",
         "Does {GENE} in {INDICATION} have a high expression in malignant cells from tumours "
         "that also have a high cathepsin signature?",
         {"Is the transcript abundance of {GENE} significantly elevated in malignant cells of "
          "{INDICATION} tumours enriched for the cathepsin signature?"}},
        {"high_expression_cathepsin_tumour",
         "Does {GENE} in {INDICATION} have a high expression in tumours that also have a high "
         "cathepsin signature?",
         {"Is {GENE} expression significantly elevated in {INDICATION} tumours enriched for "
          "the cathepsin signature?"}},
        {"pseudobulk_high_expression",
         "Does {GENE} in {INDICATION} have a high proportion of malignant cell pseudobulks "
         "with high expression?",
         {"Do a significant fraction of malignant cell pseudobulks in {INDICATION} show "
          "elevated {GENE} expression?"}},
        {"malignant_cells_expressing",
         "Does {GENE} in {INDICATION} have a high proportion of malignant cells expressing "
         "it?",
         {"Is {GENE} expressed in a significantly elevated proportion of {INDICATION} "
          "malignant cells?"}},
        {"cnv_frequency",
         "Does {GENE} in {INDICATION} have a high proportion of patients with copy number "
         "alterations for this gene?",
         {"Is the frequency of copy number variations (CNVs) affecting the {GENE} gene "
          "significantly elevated in {INDICATION} patients?"}},
        {"tumours_high_expression_any_indication",
         "Does {GENE} in {INDICATION} have a high proportion of tumours with high expression "
         "within at least one cancer indication?",
         {"Do a significantly elevated proportion of {INDICATION} tumours exhibit high {GENE} "
          "expression in at least one indication?"}},
        {"quasi_h_pseudobulk",
         "Does {GENE} in {INDICATION} have a high Quasi H score in the pseudobulk of "
         "malignant cells?",
         {"Is the malignant pseudobulk Quasi H score of {GENE} significantly elevated in "
          "{INDICATION}?"}},
        {"spatial_autocorrelation",
         "Does {GENE} in {INDICATION} have a high spatial autocorrelation of expression?",
         {"Does the expression of {GENE} display significant spatial autocorrelation in "
          "{INDICATION} tissue sections?"}},
        {"tumour_quasi_h",
         "Does {GENE} in {INDICATION} have a high tumour quasi H score?",
         {"Is the tumour Quasi H score of {GENE} significantly elevated in {INDICATION}?"}},
        {"cancer_vs_other_cells",
         "Does {GENE} in {INDICATION} have a higher expression in cancer cells versus all "
         "other cells in the tumour?",
         {"Is {GENE} transcript abundance significantly elevated in {INDICATION} malignant "
          "cells relative to all other tumour-resident cells?"}},
        {"tumour_vs_adjacent_normal",
         "Does {GENE} in {INDICATION} have a higher expression in tumour versus tumour "
         "adjacent normal tissue?",
         {"Is the transcript abundance of {GENE} significantly elevated in {INDICATION} "
          "tumour tissue compared to adjacent non-neoplastic tissue?"}},
        {"core_vs_edge",
         "Does {GENE} in {INDICATION} have a higher expression in tumour core versus tumour "
         "edge in spatial data?",
         {"Does {GENE} show significantly elevated expression in the {INDICATION} tumour core "
          "relative to the tumour edge in spatial profiling?"}},
        {"tumour_vs_blood",
         "Does {GENE} in {INDICATION} have a higher expression in tumour versus blood?",
         {"Is the gene expression level of {GENE} significantly elevated in {INDICATION} "
          "tumour tissue compared to normal blood?"}},
        {"tumour_vs_bone_marrow",
         "Does {GENE} in {INDICATION} have a higher expression in tumour versus bone marrow?",
         {"Is the gene expression level of {GENE} significantly elevated in {INDICATION} "
          "tumour tissue compared to normal bone marrow tissue?"}},
        {"tumour_vs_healthy",
         "Does {GENE} in {INDICATION} have a higher expression in tumour versus healthy "
         "tissues?",
         {"Is the transcript abundance of {GENE} significantly elevated in {INDICATION} "
          "tumour tissue compared to healthy reference tissues?"}},
        {"tumour_vs_heart",
         "Does {GENE} in {INDICATION} have a higher expression in tumour versus heart?",
         {"Is the gene expression level of {GENE} significantly elevated in {INDICATION} "
          "tumour tissue compared to normal heart tissue?"}},
        {"tumour_vs_kidney",
         "Does {GENE} in {INDICATION} have a higher expression in tumour versus kidney?",
         {"Is the gene expression level of {GENE} significantly elevated in {INDICATION} "
          "tumour tissue compared to normal kidney tissue?"}},
        {"tumour_vs_liver",
         "Does {GENE} in {INDICATION} have a higher expression in tumour versus liver?",
         {"Is the gene expression level of {GENE} significantly elevated in {INDICATION} "
          "tumour tissue compared to normal liver tissue?"}},
        {"tumour_vs_spleen",
         "Does {GENE} in {INDICATION} have a higher expression in tumour versus spleen?",
         {"Is the gene expression level of {GENE} significantly elevated in {INDICATION} "
          "tumour tissue compared to normal spleen tissue?"}},
        {"tumour_vs_stroma_spatial",
         "Does {GENE} in {INDICATION} have a higher expression in tumour versus stroma in "
         "spatial data?",
         {"Is {GENE} transcript abundance significantly elevated in {INDICATION} tumour "
          "compartments relative to stromal compartments in spatial data?"}},
        {"malignant_vs_immune",
         "Does {GENE} in {INDICATION} have a higher proportion of malignant cells than of "
         "immune cells expressing it?",
         {"Is the proportion of {INDICATION} malignant cells expressing {GENE} significantly "
          "higher than the proportion of immune cells expressing it?"}},
        {"malignant_vs_stromal",
         "Does {GENE} in {INDICATION} have a higher proportion of malignant cells than of "
         "stromal cells expressing it?",
         {"Is the proportion of {INDICATION} malignant cells expressing {GENE} significantly "
          "higher than the proportion of stromal cells expressing it?"}},
        {"low_heterogeneity",
         "Does {GENE} in {INDICATION} have a low level of heterogeneity in expression levels "
         "between malignant cell subclusters?",
         {"Does {GENE} display minimal expression variability across malignant cell "
          "subpopulations in {INDICATION}?"}},
        {"cathepsin_spatial_association",
         "Does {GENE} in {INDICATION} have a positive spatial association with cathepsin "
         "signature?",
         {"Is the spatial expression of {GENE} positively associated with cathepsin signature "
          "activity in {INDICATION}?"}},
        {"endocytosis_spatial_association",
         "Does {GENE} in {INDICATION} have a positive spatial association with endocytosis "
         "signature?",
         {"Is the spatial expression of {GENE} positively associated with endocytosis "
          "signature activity in {INDICATION}?"}},
        {"expression_neighbourhood",
         "Does {GENE} in {INDICATION} have a spatial expression distribution so that "
         "malignant spots not expressing the gene are close neighbors of malignant spots "
         "expressing the gene (rather than far away)?",
         {"In {INDICATION} spatial data, are malignant spots lacking {GENE} expression "
          "located significantly closer to {GENE}-expressing malignant spots than expected?"}},
        {"stable_spatial_expression",
         "Does {GENE} in {INDICATION} have a homogeneous and stable spatial expression?",
         {"Does {GENE} display a homogeneous, spatially stable expression profile across "
          "{INDICATION} tissue sections?"}},
    };
    return catalog;
}

const std::vector<TtpQuestionType>& ttp_question_catalog() {
    static const std::vector<TtpQuestionType> catalog = {
        {"druggability", "druggability", "Is {GENE} druggable?", false, false},
        {"druggability_alt", "druggability", "Is it true that {GENE} is druggable?", true, false},
        {"druggability_negative", "druggability", "Is {GENE} undruggable?", false, true},

        {"small_molecule", "small_molecule",
         "Is {GENE} suitable for small molecule development?", false, false},
        {"small_molecule_alt", "small_molecule",
         "Could a small-molecule discovery program be pursued against {GENE}?", true, false},
        {"small_molecule_negative", "small_molecule",
         "Is {GENE} unsuitable for small molecule development?", false, true},

        {"antibody", "antibody", "Can {GENE} be targeted by antibodies?", false, false},
        {"antibody_alt", "antibody",
         "Is it true that {GENE} is druggable with monoclonal antibodies?", true, false},
        {"antibody_negative", "antibody",
         "Is {GENE} beyond the reach of antibody therapeutics?", false, true},

        {"structure", "structure", "Has {GENE} been structurally characterized?", false, false},
        {"structure_alt", "structure",
         "Is an experimentally solved structure available for {GENE}?", true, false},
        {"structure_negative", "structure",
         "Does {GENE} lack structural characterization?", false, true},

        {"ligand", "ligand", "Does {GENE} have a known ligand?", false, false},
        {"ligand_alt", "ligand", "Have any ligands been reported for {GENE}?", true, false},
        {"ligand_negative", "ligand", "Is {GENE} without any known ligand?", false, true},

        {"toxicity", "toxicity", "Is {GENE} linked to toxicity issues?", false, false},
        {"toxicity_alt", "toxicity", "Have safety concerns been raised for {GENE}?", true,
         false},
        {"toxicity_negative", "toxicity", "Is {GENE} free of known toxicity concerns?", false,
         true},

        {"inflammatory_immunological", "inflammatory_immunological",
         "Is {GENE} involved in inflammatory diseases?", false, false},
        {"inflammatory_immunological_alt", "inflammatory_immunological",
         "Does {GENE} play a role in immunological conditions?", true, false},
        {"inflammatory_immunological_negative", "inflammatory_immunological",
         "Is {GENE} uninvolved in inflammatory disease biology?", false, true},

        {"cancer_biology", "cancer_biology", "Is {GENE} associated with cancer pathways?",
         false, false},
        {"cancer_biology_alt", "cancer_biology",
         "Does {GENE} participate in cancer-related signalling?", true, false},
        {"cancer_biology_negative", "cancer_biology", "Is {GENE} unrelated to cancer pathways?",
         false, true},

        {"general", "general", "Is {GENE} a viable therapeutic target?", false, false},
        {"general_alt", "general", "Does {GENE} hold promise as a therapeutic target?", true,
         false},
        {"general_negative", "general", "Is {GENE} a poor therapeutic target?", false, true},

        // the bulk modality type: one item per available modality decision
        {"multiple_choice", "small_molecule", "Can {GENE} be targeted by a small molecule?",
         false, false},
    };
    return catalog;
}

}  // namespace biofab::qa
