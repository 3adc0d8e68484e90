#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "biofab/qa/generators.hpp"
#include "biofab/qa/shuffle.hpp"
#include "biofab/rng.hpp"
#include "biofab/stats/descriptive.hpp"
#include "biofab/stats/distance.hpp"
#include "biofab/text.hpp"

namespace biofab::qa {

namespace {

double metric_distance(const std::string& metric, std::span<const double> a,
                       std::span<const double> b) {
    if (metric == "wasserstein") return stats::wasserstein_1d(a, b);
    if (metric == "mmd") return stats::mmd_rbf(a, b);
    throw std::invalid_argument("gen_tcgasa: unknown metric '" + metric + "'");
}

/// Signature rendered with a deterministic sample of up to max_genes member
/// genes and the remainder count.
std::string gene_snippet(const stats::GeneSet& set, std::uint64_t seed,
                         std::size_t max_genes) {
    Rng rng(derive_seed(seed, "snippet:" + set.name));
    std::vector<std::string> genes = set.genes;
    if (genes.size() > max_genes) genes = rng.sample(genes, max_genes);
    std::string out = join(genes, ", ");
    if (set.genes.size() > genes.size())
        out += ", and " + std::to_string(set.genes.size() - genes.size()) + " more genes";
    return out;
}

std::string item_id(const char* sub, std::size_t i) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "tcgasa-%s-%06zu", sub, i);
    return buf;
}

// Indication-averaged distance between two signatures' activity
// distributions; cancers lacking samples for either signature are skipped.
double signature_distance(const SignatureActivityTable& t, const std::string& metric,
                          std::size_t sig_a, std::size_t sig_b) {
    double sum = 0;
    std::size_t n = 0;
    for (std::size_t c = 0; c < t.cancers.size(); ++c) {
        const auto& a = t.activity[c][sig_a];
        const auto& b = t.activity[c][sig_b];
        if (a.empty() || b.empty()) continue;
        sum += metric_distance(metric, a, b);
        ++n;
    }
    if (n == 0) throw std::runtime_error("gen_tcgasa: no shared indications for signatures");
    return sum / static_cast<double>(n);
}

}  // namespace

GenResult gen_tcgasa(const SignatureActivityTable& table, const TcgasaConfig& config,
                     std::uint64_t seed) {
    GenResult result;
    const std::size_t n_cancers = table.cancers.size();
    const std::size_t n_sigs = table.signatures.size();
    if (n_cancers < 2 || n_sigs < 2)
        throw std::invalid_argument("gen_tcgasa: need at least two cancers and signatures");

    Rng rng(derive_seed(seed, "tcgasa:" + config.subtype));

    // per-(cancer, signature) mean activity, NaN when no samples
    std::vector<std::vector<double>> means(n_cancers, std::vector<double>(n_sigs));
    for (std::size_t c = 0; c < n_cancers; ++c)
        for (std::size_t s = 0; s < n_sigs; ++s)
            means[c][s] = table.activity[c][s].empty()
                              ? std::nan("")
                              : stats::mean(table.activity[c][s]);

    const std::size_t max_attempts = config.count * 20 + 100;

    if (config.subtype == "signature_expression") {
        std::size_t emitted = 0;
        for (std::size_t attempt = 0; attempt < max_attempts && emitted < config.count;
             ++attempt) {
            const std::size_t s = rng.below(n_sigs);
            std::vector<double> sig_means;
            std::vector<std::size_t> with_data;
            for (std::size_t c = 0; c < n_cancers; ++c)
                if (!std::isnan(means[c][s])) {
                    sig_means.push_back(means[c][s]);
                    with_data.push_back(c);
                }
            if (with_data.size() < 2) continue;
            double mu = stats::mean(sig_means), sq = 0;
            for (double v : sig_means) sq += (v - mu) * (v - mu);
            const double sd = std::sqrt(sq / static_cast<double>(sig_means.size()));
            const double gap = config.min_mean_gap_sd * sd;

            const std::size_t ca = with_data[rng.below(with_data.size())];
            const std::size_t cb = with_data[rng.below(with_data.size())];
            if (ca == cb) continue;
            if (std::abs(means[ca][s] - means[cb][s]) < gap || means[ca][s] == means[cb][s])
                continue;
            const std::size_t hi = means[ca][s] > means[cb][s] ? ca : cb;
            const std::size_t lo = hi == ca ? cb : ca;

            const auto& sig = table.signatures[s];
            QaItem item;
            item.id = item_id("se", emitted);
            item.family = "TCGA-SA";
            item.question_type = "signature_expression_binary";
            item.question = "Which cancer type has higher expression of the " + sig.name +
                            " (computed as the average activity of: " +
                            gene_snippet(sig, seed, config.max_genes) + ") signature?";
            item.options = {{"A", table.cancers[hi]}, {"B", table.cancers[lo]}};
            item.answer = "A";
            item.subjects = {{"signature", sig.name}, {"cancer", table.cancers[hi]}};
            item.metadata["subtype"] = config.subtype;
            set_entities(item, "signature", {sig.name});
            set_entities(item, "cancer", {table.cancers[hi], table.cancers[lo]});
            result.items.push_back(shuffle_options(std::move(item), seed));
            ++emitted;
        }
        if (emitted < config.count)
            result.warnings.push_back({"TCGA-SA", config.subtype,
                                       "pool exhausted at " + std::to_string(emitted) +
                                           " items"});
    } else if (config.subtype == "signature_similarity") {
        std::map<std::pair<std::size_t, std::size_t>, double> cache;
        auto dist = [&](std::size_t x, std::size_t y) {
            const auto key = std::minmax(x, y);
            auto it = cache.find(key);
            if (it != cache.end()) return it->second;
            const double d = signature_distance(table, config.metric, key.first, key.second);
            cache[key] = d;
            return d;
        };

        std::size_t emitted = 0;
        for (std::size_t attempt = 0; attempt < max_attempts && emitted < config.count;
             ++attempt) {
            const std::size_t ref = rng.below(n_sigs);
            const std::size_t a = rng.below(n_sigs);
            const std::size_t b = rng.below(n_sigs);
            if (ref == a || ref == b || a == b) continue;
            const double da = dist(ref, a), db = dist(ref, b);
            if (std::abs(da - db) < 1e-9) continue;  // tie: key would be ambiguous
            const std::size_t close = da < db ? a : b;
            const std::size_t far = close == a ? b : a;

            const auto& rsig = table.signatures[ref];
            auto render = [&](std::size_t s) {
                return table.signatures[s].name + " (computed as the average activity of: " +
                       gene_snippet(table.signatures[s], seed, config.max_genes) + ")";
            };
            QaItem item;
            item.id = item_id("ss", emitted);
            item.family = "TCGA-SA";
            item.question_type = "signature_similarity_binary";
            item.question = "Which signature has a more similar distribution to " + rsig.name +
                            " (computed as the average activity of: " +
                            gene_snippet(rsig, seed, config.max_genes) +
                            ") across all cancer types?";
            item.options = {{"A", render(close)}, {"B", render(far)}};
            item.answer = "A";
            item.subjects = {{"signature", rsig.name}};
            item.metadata["subtype"] = config.subtype;
            item.metadata["metric"] = config.metric;
            item.metadata["candidate_a"] = table.signatures[close].name;
            item.metadata["candidate_b"] = table.signatures[far].name;
            set_entities(item, "signature",
                         {rsig.name, table.signatures[close].name, table.signatures[far].name});
            result.items.push_back(shuffle_options(std::move(item), seed));
            ++emitted;
        }
        if (emitted < config.count)
            result.warnings.push_back({"TCGA-SA", config.subtype,
                                       "pool exhausted at " + std::to_string(emitted) +
                                           " items"});
    } else if (config.subtype == "cancer_similarity") {
        std::size_t emitted = 0;
        for (std::size_t attempt = 0; attempt < max_attempts && emitted < config.count;
             ++attempt) {
            const std::size_t s = rng.below(n_sigs);
            const std::size_t ref = rng.below(n_cancers);
            const std::size_t a = rng.below(n_cancers);
            const std::size_t b = rng.below(n_cancers);
            if (ref == a || ref == b || a == b) continue;
            if (table.activity[ref][s].empty() || table.activity[a][s].empty() ||
                table.activity[b][s].empty())
                continue;
            const double da =
                metric_distance(config.metric, table.activity[ref][s], table.activity[a][s]);
            const double db =
                metric_distance(config.metric, table.activity[ref][s], table.activity[b][s]);
            if (std::abs(da - db) < 1e-9) continue;
            const std::size_t close = da < db ? a : b;
            const std::size_t far = close == a ? b : a;

            const auto& sig = table.signatures[s];
            QaItem item;
            item.id = item_id("cs", emitted);
            item.family = "TCGA-SA";
            item.question_type = "cancer_similarity_binary";
            item.question = "Based on " + sig.name +
                            " (computed as the average activity of: " +
                            gene_snippet(sig, seed, config.max_genes) +
                            ") signature activity patterns from bulk RNA-seq data, which "
                            "cancer type is more similar to " +
                            table.cancers[ref] + "?";
            item.options = {{"A", table.cancers[close]}, {"B", table.cancers[far]}};
            item.answer = "A";
            item.subjects = {{"cancer", table.cancers[ref]}, {"signature", sig.name}};
            item.metadata["subtype"] = config.subtype;
            item.metadata["metric"] = config.metric;
            set_entities(item, "cancer",
                         {table.cancers[ref], table.cancers[close], table.cancers[far]});
            set_entities(item, "signature", {sig.name});
            result.items.push_back(shuffle_options(std::move(item), seed));
            ++emitted;
        }
        if (emitted < config.count)
            result.warnings.push_back({"TCGA-SA", config.subtype,
                                       "pool exhausted at " + std::to_string(emitted) +
                                           " items"});
    } else if (config.subtype == "cancer_signature_comparison") {
        std::size_t emitted = 0;
        for (std::size_t attempt = 0; attempt < max_attempts && emitted < config.count;
             ++attempt) {
            const std::size_t c = rng.below(n_cancers);
            std::vector<std::size_t> with_data;
            for (std::size_t s = 0; s < n_sigs; ++s)
                if (!std::isnan(means[c][s])) with_data.push_back(s);
            if (with_data.size() < 4) continue;
            std::sort(with_data.begin(), with_data.end(), [&](std::size_t x, std::size_t y) {
                return means[c][x] < means[c][y];
            });
            const std::size_t tail =
                std::max<std::size_t>(1, static_cast<std::size_t>(
                                             config.tail_fraction *
                                             static_cast<double>(with_data.size())));
            const std::size_t lo = with_data[rng.below(tail)];
            const std::size_t hi = with_data[with_data.size() - 1 - rng.below(tail)];
            if (lo == hi || means[c][hi] <= means[c][lo]) continue;

            auto render = [&](std::size_t s) {
                return table.signatures[s].name + " (computed as the average activity of: " +
                       gene_snippet(table.signatures[s], seed, config.max_genes) + ")";
            };
            QaItem item;
            item.id = item_id("csc", emitted);
            item.family = "TCGA-SA";
            item.question_type = "cancer_signatures_comparison";
            item.question = "In " + table.cancers[c] + ", which signature has higher expression?";
            item.options = {{"A", render(hi)}, {"B", render(lo)}};
            item.answer = "A";
            item.subjects = {{"cancer", table.cancers[c]},
                             {"signature", table.signatures[hi].name}};
            item.metadata["subtype"] = config.subtype;
            item.metadata["candidate_a"] = table.signatures[hi].name;
            item.metadata["candidate_b"] = table.signatures[lo].name;
            set_entities(item, "cancer", {table.cancers[c]});
            set_entities(item, "signature",
                         {table.signatures[hi].name, table.signatures[lo].name});
            result.items.push_back(shuffle_options(std::move(item), seed));
            ++emitted;
        }
        if (emitted < config.count)
            result.warnings.push_back({"TCGA-SA", config.subtype,
                                       "pool exhausted at " + std::to_string(emitted) +
                                           " items"});
    } else {
        throw std::invalid_argument("gen_tcgasa: unknown subtype '" + config.subtype + "'");
    }

    return result;
}

}  // namespace biofab::qa
