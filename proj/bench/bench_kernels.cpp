// Times the OpenMP kernels against their serial reference implementations:
// the per-gene differential-expression scan, the permutation enrichment
// kernel, the Jaccard filter and the corpus key-audit.

#include <chrono>
#include <cstdio>

#include <omp.h>

#include "biofab/pipeline/synthetic.hpp"
#include "biofab/qa/audit.hpp"
#include "biofab/qa/generators.hpp"
#include "biofab/rng.hpp"
#include "biofab/split/jaccard.hpp"
#include "biofab/stats/diffexp.hpp"
#include "biofab/stats/enrichment.hpp"

using namespace biofab;
using Clock = std::chrono::steady_clock;

namespace {

double time_of(const char* label, double serial_s, double parallel_s) {
    std::printf("%-28s serial %8.3fs   openmp %8.3fs   speedup %.2fx\n", label, serial_s,
                parallel_s, serial_s / parallel_s);
    return serial_s / parallel_s;
}

template <typename F>
double timed(F&& fn) {
    const auto start = Clock::now();
    fn();
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

int main() {
    std::printf("threads: %d\n\n", omp_get_max_threads());
    Rng rng(1);

    // differential expression: 4000 genes, 24 vs 12 samples
    {
        stats::ExpressionMatrix m;
        const std::size_t tumour = 24, normal = 12, genes = 4000;
        for (std::size_t s = 0; s < tumour + normal; ++s) {
            m.sample_ids.push_back("S" + std::to_string(s));
            m.group_labels.push_back(s < tumour ? "tumour" : "normal");
        }
        for (std::size_t g = 0; g < genes; ++g) m.gene_ids.push_back("G" + std::to_string(g));
        m.values.resize((tumour + normal) * genes);
        for (auto& v : m.values) v = std::abs(rng.normal()) * 5.0;

        std::vector<stats::DEResult> serial_out, parallel_out;
        const double ts = timed([&] {
            serial_out = stats::differential_expression_serial(m, {"tumour", "normal"});
        });
        const double tp = timed([&] {
            parallel_out = stats::differential_expression(m, {"tumour", "normal"});
        });
        bool equal = serial_out.size() == parallel_out.size();
        for (std::size_t i = 0; equal && i < serial_out.size(); ++i)
            equal = serial_out[i].p_value == parallel_out[i].p_value &&
                    serial_out[i].fdr == parallel_out[i].fdr;
        time_of("differential expression", ts, tp);
        if (!equal) {
            std::printf("MISMATCH between serial and parallel DE results\n");
            return 1;
        }
    }

    // permutation enrichment: 400 sets x 2000 permutations over 1200 genes
    {
        const std::size_t universe = 1200;
        std::vector<std::string> ranking(universe);
        for (std::size_t i = 0; i < universe; ++i) ranking[i] = "g" + std::to_string(i);
        std::vector<stats::GeneSet> library;
        for (int s = 0; s < 400; ++s)
            library.push_back(
                {"s" + std::to_string(s), rng.sample(ranking, 10 + rng.below(40)), ""});

        std::vector<stats::EnrichmentResult> serial_out, parallel_out;
        const double ts = timed([&] {
            serial_out = stats::enrichment_with_significance_serial(ranking, library, 2000, 7);
        });
        const double tp = timed([&] {
            parallel_out = stats::enrichment_with_significance(ranking, library, 2000, 7);
        });
        bool equal = serial_out.size() == parallel_out.size();
        for (std::size_t i = 0; equal && i < serial_out.size(); ++i)
            equal = serial_out[i].nes == parallel_out[i].nes &&
                    serial_out[i].p_value == parallel_out[i].p_value;
        time_of("permutation enrichment", ts, tp);
        if (!equal) {
            std::printf("MISMATCH between serial and parallel enrichment results\n");
            return 1;
        }
    }

    // jaccard filter: 4000 x 4000 gene sets
    {
        std::vector<std::string> pool;
        for (int i = 0; i < 600; ++i) pool.push_back("g" + std::to_string(i));
        std::vector<stats::GeneSet> tests, trains;
        for (int i = 0; i < 4000; ++i)
            tests.push_back({"T" + std::to_string(i), rng.sample(pool, 8 + rng.below(30)), ""});
        for (int i = 0; i < 4000; ++i)
            trains.push_back({"S" + std::to_string(i), rng.sample(pool, 8 + rng.below(30)), ""});

        std::vector<stats::GeneSet> serial_out, parallel_out;
        const double ts = timed(
            [&] { serial_out = split::max_jaccard_filter(tests, trains, 0.3, Exec::serial); });
        const double tp = timed([&] {
            parallel_out = split::max_jaccard_filter(tests, trains, 0.3, Exec::parallel);
        });
        time_of("jaccard filter", ts, tp);
        if (serial_out.size() != parallel_out.size()) {
            std::printf("MISMATCH between serial and parallel jaccard results\n");
            return 1;
        }
    }

    // corpus key-audit over the synthetic GI family
    {
        synth::SynthConfig cfg;
        cfg.gi_records = 40000;
        const auto records = synth::gi_features(3, cfg);
        const auto corpus = qa::gen_gi(records, 3);
        qa::AuditSources sources;
        sources.gi = records;

        qa::AuditReport serial_out, parallel_out;
        const double ts =
            timed([&] { serial_out = qa::audit_corpus(corpus.items, sources, Exec::serial); });
        const double tp = timed(
            [&] { parallel_out = qa::audit_corpus(corpus.items, sources, Exec::parallel); });
        time_of("corpus key-audit", ts, tp);
        if (serial_out.mismatches != parallel_out.mismatches ||
            serial_out.checked != parallel_out.checked) {
            std::printf("MISMATCH between serial and parallel audit results\n");
            return 1;
        }
    }

    std::printf("\nall kernels match their serial references\n");
    return 0;
}
