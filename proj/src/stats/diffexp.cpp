#include "biofab/stats/diffexp.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "biofab/io/table.hpp"
#include "biofab/stats/descriptive.hpp"
#include "biofab/stats/fdr.hpp"
#include "biofab/stats/wilcoxon.hpp"

namespace biofab::stats {

void ExpressionMatrix::validate() const {
    if (group_labels.size() != sample_ids.size())
        throw std::invalid_argument("expression matrix: one group tag per sample required");
    if (values.size() != sample_ids.size() * gene_ids.size())
        throw std::invalid_argument("expression matrix: value count mismatch");
    std::unordered_set<std::string> seen;
    for (const auto& g : gene_ids)
        if (!seen.insert(g).second)
            throw std::invalid_argument("expression matrix: duplicate gene id " + g);
    for (double v : values)
        if (std::isnan(v))
            throw std::invalid_argument("expression matrix: missing value after ingestion");
}

ExpressionMatrix ExpressionMatrix::from_delimited(const std::string& path) {
    const io::Table t = io::read_table(path);
    if (t.header.size() < 3)
        throw std::runtime_error("expression matrix: need sample, group and gene columns");

    ExpressionMatrix m;
    m.gene_ids.assign(t.header.begin() + 2, t.header.end());
    for (const auto& row : t.rows) {
        m.sample_ids.push_back(row[0]);
        m.group_labels.push_back(row[1]);
        for (std::size_t g = 2; g < row.size(); ++g)
            m.values.push_back(io::parse_double(row[g], path + ":" + row[0]));
    }
    m.validate();
    return m;
}

std::string to_string(DeClass c) {
    switch (c) {
        case DeClass::tumour_up: return "tumour_up";
        case DeClass::normal_up: return "normal_up";
        default: return "excluded";
    }
}

DeClass de_class_from_string(const std::string& s) {
    if (s == "tumour_up") return DeClass::tumour_up;
    if (s == "normal_up") return DeClass::normal_up;
    if (s == "excluded") return DeClass::excluded;
    throw std::invalid_argument("unknown DE class: " + s);
}

DeClass classify_de(double fdr, double log2_fc, const DeThresholds& thr) {
    if (fdr < thr.max_fdr && log2_fc > thr.min_abs_log2fc) return DeClass::tumour_up;
    if (fdr < thr.max_fdr && log2_fc < -thr.min_abs_log2fc) return DeClass::normal_up;
    return DeClass::excluded;
}

namespace {

std::vector<DEResult> de_scan(const ExpressionMatrix& matrix, const Contrast& contrast,
                              const DeThresholds& thresholds, bool parallel) {
    matrix.validate();
    std::vector<std::size_t> treated, reference;
    for (std::size_t s = 0; s < matrix.n_samples(); ++s) {
        if (matrix.group_labels[s] == contrast.treated) treated.push_back(s);
        else if (matrix.group_labels[s] == contrast.reference) reference.push_back(s);
    }
    if (treated.empty())
        throw std::invalid_argument("differential_expression: group '" + contrast.treated +
                                    "' absent");
    if (reference.empty())
        throw std::invalid_argument("differential_expression: group '" + contrast.reference +
                                    "' absent");
    if (reference.size() < 2)
        throw std::invalid_argument("differential_expression: reference group '" +
                                    contrast.reference + "' needs at least two samples");

    const std::size_t n_genes = matrix.n_genes();
    std::vector<DEResult> results(n_genes);
    const std::int64_t n = static_cast<std::int64_t>(n_genes);

#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t gi = 0; gi < n; ++gi) {
        const std::size_t g = static_cast<std::size_t>(gi);
        std::vector<double> a, b;
        a.reserve(treated.size());
        b.reserve(reference.size());
        for (std::size_t s : treated) a.push_back(matrix.at(s, g));
        for (std::size_t s : reference) b.push_back(matrix.at(s, g));

        DEResult& r = results[g];
        r.gene_id = matrix.gene_ids[g];
        r.p_value = wilcoxon_rank_sum(a, b).p_two_sided;
        r.log2_fc = log2_fold_change(a, b);
    }

    std::vector<double> pvals(n_genes);
    for (std::size_t g = 0; g < n_genes; ++g) pvals[g] = results[g].p_value;
    const std::vector<double> fdr = bh_fdr(pvals);
    for (std::size_t g = 0; g < n_genes; ++g) {
        results[g].fdr = fdr[g];
        results[g].de_class = classify_de(results[g].fdr, results[g].log2_fc, thresholds);
    }
    return results;
}

}  // namespace

std::vector<DEResult> differential_expression(const ExpressionMatrix& matrix,
                                              const Contrast& contrast,
                                              const DeThresholds& thresholds, Exec exec) {
    return de_scan(matrix, contrast, thresholds, exec == Exec::parallel);
}

std::vector<DEResult> differential_expression_serial(const ExpressionMatrix& matrix,
                                                     const Contrast& contrast,
                                                     const DeThresholds& thresholds) {
    return de_scan(matrix, contrast, thresholds, false);
}

}  // namespace biofab::stats
