#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "biofab/parallel.hpp"

namespace biofab::stats {

/// Sample-by-gene expression matrix with one group tag per sample.
/// Values are assumed normalized upstream; no missing entries.
struct ExpressionMatrix {
    std::vector<std::string> sample_ids;
    std::vector<std::string> group_labels;  // one per sample
    std::vector<std::string> gene_ids;      // unique
    std::vector<double> values;             // row-major, samples x genes

    std::size_t n_samples() const { return sample_ids.size(); }
    std::size_t n_genes() const { return gene_ids.size(); }
    double at(std::size_t sample, std::size_t gene) const {
        return values[sample * gene_ids.size() + gene];
    }

    void validate() const;

    /// Delimited text: header = sample id column, group column, then gene
    /// ids; one row per sample.
    static ExpressionMatrix from_delimited(const std::string& path);
};

enum class DeClass { tumour_up, normal_up, excluded };

std::string to_string(DeClass c);
DeClass de_class_from_string(const std::string& s);

struct DEResult {
    std::string gene_id;
    double log2_fc = 0;
    double p_value = 1;
    double fdr = 1;
    DeClass de_class = DeClass::excluded;
};

struct DeThresholds {
    double max_fdr = 0.05;
    double min_abs_log2fc = 1.0;
};

struct Contrast {
    std::string treated;    // tumour-like group
    std::string reference;  // needs >= 2 samples
};

DeClass classify_de(double fdr, double log2_fc, const DeThresholds& thr = {});

/// Per-gene Wilcoxon rank-sum + BH across genes + log2 fold change; class
/// assigned by thresholds. OpenMP over genes.
std::vector<DEResult> differential_expression(const ExpressionMatrix& matrix,
                                              const Contrast& contrast,
                                              const DeThresholds& thresholds = {},
                                              Exec exec = Exec::parallel);

/// Serial reference; must match the parallel kernel exactly.
std::vector<DEResult> differential_expression_serial(const ExpressionMatrix& matrix,
                                                     const Contrast& contrast,
                                                     const DeThresholds& thresholds = {});

}  // namespace biofab::stats
