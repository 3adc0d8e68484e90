#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "biofab/rng.hpp"
#include "biofab/stats/descriptive.hpp"
#include "biofab/stats/diffexp.hpp"
#include "biofab/stats/distance.hpp"
#include "biofab/stats/enrichment.hpp"
#include "biofab/stats/fdr.hpp"
#include "biofab/stats/ranks.hpp"
#include "biofab/stats/ssgsea.hpp"
#include "biofab/stats/wilcoxon.hpp"

using namespace biofab;

namespace {

// ---------------------------------------------------------------------------
// independent oracles (kept free of the implementation paths they check)
// ---------------------------------------------------------------------------

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

// bitmask enumeration over every group assignment, midranks recomputed here
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

}  // namespace

TEST_CASE("wilcoxon worked examples") {
    const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
    CHECK(stats::wilcoxon_rank_sum(a, b).p_two_sided == doctest::Approx(0.1).epsilon(1e-12));

    const std::vector<double> t1{5, 5}, t2{5, 5};
    CHECK(stats::wilcoxon_rank_sum(t1, t2).p_two_sided == doctest::Approx(1.0));

    const std::vector<double> c{1, 3}, d{2, 4};
    CHECK(stats::wilcoxon_rank_sum(c, d).p_two_sided ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("wilcoxon exact regime equals the permutation oracle") {
    Rng rng(101);
    for (int round = 0; round < 120; ++round) {
        const std::size_t n1 = 1 + rng.below(6), n2 = 1 + rng.below(6);
        std::vector<double> a(n1), b(n2);
        // small integer grid forces ties
        for (auto& v : a) v = static_cast<double>(rng.below(6));
        for (auto& v : b) v = static_cast<double>(rng.below(6));
        const double p = stats::wilcoxon_rank_sum(a, b).p_two_sided;
        CHECK(p == oracle_exact_wilcoxon_p(a, b));
    }
}

TEST_CASE("wilcoxon symmetry and approximation sanity") {
    Rng rng(202);
    for (int round = 0; round < 60; ++round) {
        const std::size_t n1 = 1 + rng.below(12), n2 = 1 + rng.below(12);
        std::vector<double> a(n1), b(n2);
        for (auto& v : a) v = rng.normal();
        for (auto& v : b) v = rng.normal();
        const double pab = stats::wilcoxon_rank_sum(a, b).p_two_sided;
        const double pba = stats::wilcoxon_rank_sum(b, a).p_two_sided;
        CHECK(pab == pba);
        CHECK(pab >= 0.0);
        CHECK(pab <= 1.0);
    }
    // the approximation should broadly agree with the exact value near the cutoff
    Rng rng2(203);
    for (int round = 0; round < 30; ++round) {
        std::vector<double> a(6), b(6);
        for (auto& v : a) v = rng2.normal();
        for (auto& v : b) v = rng2.normal() + 0.5;
        const double exact = stats::wilcoxon_rank_sum(a, b, 12).p_two_sided;
        const double approx = stats::wilcoxon_rank_sum(a, b, 0).p_two_sided;
        CHECK(std::abs(exact - approx) < 0.12);
    }
    CHECK_THROWS(stats::wilcoxon_rank_sum({}, std::vector<double>{1.0}));
}

TEST_CASE("bh step-up matches hand-computed values") {
    const auto q1 = stats::bh_fdr(std::vector<double>{0.04});
    CHECK(q1[0] == doctest::Approx(0.04).epsilon(1e-12));

    const auto q2 = stats::bh_fdr(std::vector<double>{0.01, 0.02, 0.03, 0.04});
    for (double q : q2) CHECK(q == doctest::Approx(0.04).epsilon(1e-12));

    const auto q3 = stats::bh_fdr(std::vector<double>{0.005, 0.04, 0.04});
    CHECK(q3[0] == doctest::Approx(0.015).epsilon(1e-12));
    CHECK(q3[1] == doctest::Approx(0.04).epsilon(1e-12));
    CHECK(q3[2] == doctest::Approx(0.04).epsilon(1e-12));

    CHECK_THROWS(stats::bh_fdr(std::vector<double>{1.2}));
    CHECK_THROWS(stats::bh_fdr(std::vector<double>{-0.1}));
}

TEST_CASE("bh output is monotone in raw-p order and clamped") {
    Rng rng(77);
    for (int round = 0; round < 40; ++round) {
        std::vector<double> p(1 + rng.below(60));
        for (auto& v : p) v = rng.uniform();
        const auto q = stats::bh_fdr(p);
        std::vector<std::size_t> order(p.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t i, std::size_t j) { return p[i] < p[j]; });
        for (std::size_t i = 1; i < order.size(); ++i)
            CHECK(q[order[i]] >= q[order[i - 1]]);
        for (std::size_t i = 0; i < q.size(); ++i) {
            CHECK(q[i] <= 1.0);
            CHECK(q[i] >= p[i] - 1e-12);  // p*m/i rounding can dip one ulp
        }
    }
}

TEST_CASE("log2 fold change") {
    const std::vector<double> four{4, 4}, one{1, 1};
    CHECK(stats::log2_fold_change(four, one) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(stats::log2_fold_change(one, one) == doctest::Approx(0.0));
    const std::vector<double> zero{0, 0};
    // direct evaluation: log2(1e-9 / (1 + 1e-9)), inside the clamp range
    CHECK(stats::log2_fold_change(zero, one) ==
          doctest::Approx(std::log2(1e-9 / (1.0 + 1e-9))).epsilon(1e-12));
    // a smaller pseudocount pushes past the bound and clamps
    CHECK(stats::log2_fold_change(zero, one, 1e-10) == -30.0);
    CHECK(stats::log2_fold_change(one, zero, 1e-10) == 30.0);
    CHECK_THROWS(stats::log2_fold_change({}, one));
    CHECK_THROWS(stats::log2_fold_change(one, one, 0.0));
}

TEST_CASE("type-7 quantile") {
    CHECK(stats::quantile(std::vector<double>{1, 2, 3}, 0.5) == doctest::Approx(2.0));
    std::vector<double> v(100);
    std::iota(v.begin(), v.end(), 0.0);
    CHECK(stats::quantile(v, 0.99) == doctest::Approx(98.01).epsilon(1e-12));
    CHECK(stats::quantile(v, 0.01) == doctest::Approx(0.99).epsilon(1e-12));
    CHECK_THROWS(stats::quantile(std::vector<double>{}, 0.5));
    CHECK_THROWS(stats::quantile(v, 1.5));
}

TEST_CASE("rank-difference enrichment score") {
    const std::vector<std::string> ranking{"g1", "g2", "g3", "g4"};
    CHECK(stats::ssgsea_score(ranking, {"s", {"g3", "g4"}, ""}) == doctest::Approx(2.0));
    CHECK(stats::ssgsea_score(ranking, {"s", {"g1", "g4"}, ""}) == doctest::Approx(0.0));
    const std::vector<std::string> five{"g1", "g2", "g3", "g4", "g5"};
    CHECK(stats::ssgsea_score(five, {"s", {"g5"}, ""}) == doctest::Approx(2.5));

    CHECK_THROWS(stats::ssgsea_score(ranking, {"all", {"g1", "g2", "g3", "g4"}, ""}));
    CHECK_THROWS(stats::ssgsea_score(ranking, {"none", {"zz"}, ""}));
}

TEST_CASE("enrichment anti-symmetry is exact") {
    Rng rng(404);
    for (int round = 0; round < 300; ++round) {
        const std::size_t g = 5 + rng.below(200);
        std::vector<std::string> ranking(g);
        for (std::size_t i = 0; i < g; ++i) ranking[i] = "g" + std::to_string(i);
        const std::size_t m = 1 + rng.below(g - 1);
        auto members = rng.sample(ranking, m);
        std::unordered_set<std::string> member_set(members.begin(), members.end());
        std::vector<std::string> complement;
        for (const auto& gene : ranking)
            if (!member_set.count(gene)) complement.push_back(gene);

        const double s = stats::ssgsea_score(ranking, {"m", members, ""});
        const double sc = stats::ssgsea_score(ranking, {"c", complement, ""});
        CHECK(s == -sc);  // bit-exact
    }
}

TEST_CASE("wasserstein closed forms") {
    const std::vector<double> a{0.5, 1.5, -2.0, 3.0};
    CHECK(stats::wasserstein_1d(a, a) == doctest::Approx(0.0));

    std::vector<double> shifted = a;
    for (auto& v : shifted) v += 0.75;
    CHECK(stats::wasserstein_1d(a, shifted) == doctest::Approx(0.75).epsilon(1e-12));

    CHECK(stats::wasserstein_1d(std::vector<double>{0, 1}, std::vector<double>{1, 3}) ==
          doctest::Approx(1.5).epsilon(1e-12));
    CHECK_THROWS(stats::wasserstein_1d({}, a));
}

TEST_CASE("wasserstein unequal sizes equals the replication oracle") {
    // the empirical distribution is invariant under sample replication, so
    // W1(a, b) must equal the equal-size sorted-coupling value after
    // replicating each sample to the common size
    Rng rng(505);
    for (int round = 0; round < 50; ++round) {
        const std::size_t n = 1 + rng.below(12), m = 1 + rng.below(12);
        std::vector<double> a(n), b(m);
        for (auto& v : a) v = rng.normal();
        for (auto& v : b) v = rng.normal();
        std::vector<double> ra, rb;
        for (double v : a)
            for (std::size_t k = 0; k < m; ++k) ra.push_back(v);
        for (double v : b)
            for (std::size_t k = 0; k < n; ++k) rb.push_back(v);
        CHECK(stats::wasserstein_1d(a, b) ==
              doctest::Approx(stats::wasserstein_1d(ra, rb)).epsilon(1e-12));
    }
}

TEST_CASE("wasserstein triangle inequality") {
    Rng rng(606);
    for (int round = 0; round < 100; ++round) {
        std::vector<double> a(3 + rng.below(10)), b(3 + rng.below(10)), c(3 + rng.below(10));
        for (auto& v : a) v = rng.normal();
        for (auto& v : b) v = rng.normal() + rng.uniform(-2, 2);
        for (auto& v : c) v = rng.normal() * 2.0;
        const double ab = stats::wasserstein_1d(a, b);
        const double bc = stats::wasserstein_1d(b, c);
        const double ac = stats::wasserstein_1d(a, c);
        CHECK(ac <= ab + bc + 1e-9);
    }
}

TEST_CASE("mmd matches the naive double-sum oracle") {
    const std::vector<double> a{0.1, -1.3, 2.2}, b{0.9, 0.4, -0.5};

    // oracle: median-bandwidth RBF V-statistic computed from scratch
    std::vector<double> pooled = a;
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::vector<double> dists;
    for (std::size_t i = 0; i < pooled.size(); ++i)
        for (std::size_t j = i + 1; j < pooled.size(); ++j)
            dists.push_back(std::abs(pooled[i] - pooled[j]));
    std::sort(dists.begin(), dists.end());
    const double h = dists[dists.size() / 2];
    auto k = [&](double x, double y) { return std::exp(-(x - y) * (x - y) / (2 * h * h)); };
    double aa = 0, bb = 0, ab = 0;
    for (double x : a)
        for (double y : a) aa += k(x, y);
    for (double x : b)
        for (double y : b) bb += k(x, y);
    for (double x : a)
        for (double y : b) ab += k(x, y);
    const double expected = std::sqrt(std::max(0.0, aa / 9.0 + bb / 9.0 - 2.0 * ab / 9.0));

    CHECK(stats::mmd_rbf(a, b) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(stats::mmd_rbf(a, a) == 0.0);

    Rng rng(707);
    for (int round = 0; round < 30; ++round) {
        std::vector<double> x(2 + rng.below(10)), y(2 + rng.below(10));
        for (auto& v : x) v = rng.normal();
        for (auto& v : y) v = rng.normal();
        CHECK(stats::mmd_rbf(x, y) >= 0.0);
    }
}

TEST_CASE("permutation enrichment: add-one estimator, m=1 fdr, seed replay") {
    const std::size_t g = 60;
    std::vector<std::string> ranking(g);
    for (std::size_t i = 0; i < g; ++i) ranking[i] = "g" + std::to_string(i);

    // a set pinned to the very top of the ranking beats every permuted draw
    stats::GeneSet top{"top", {ranking[g - 1], ranking[g - 2], ranking[g - 3]}, ""};
    const auto results =
        stats::enrichment_with_significance(ranking, std::vector<stats::GeneSet>{top}, 1000, 9);
    REQUIRE(results.size() == 1);
    CHECK(results[0].p_value == doctest::Approx(1.0 / 1001.0).epsilon(1e-12));
    CHECK(results[0].fdr == results[0].p_value);  // single-set library: BH is identity
    CHECK(results[0].direction == stats::Direction::upregulated);
    CHECK(results[0].nes > 0);

    // nes replay: same per-set seed derivation, null resampled here
    {
        Rng rng(derive_seed(9, top.name));
        const std::size_t m = top.genes.size();
        double sum = 0, sq = 0;
        for (int rep = 0; rep < 1000; ++rep) {
            std::unordered_set<std::uint64_t> chosen;
            std::int64_t rank_sum = 0;
            for (std::uint64_t j = g - m + 1; j <= g; ++j) {
                const std::uint64_t t = 1 + rng.below(j);
                if (chosen.insert(t).second) {
                    rank_sum += static_cast<std::int64_t>(t);
                } else {
                    chosen.insert(j);
                    rank_sum += static_cast<std::int64_t>(j);
                }
            }
            const double s = stats::rank_difference_score(g, rank_sum, m);
            sum += s;
            sq += s * s;
        }
        const double mean = sum / 1000.0;
        const double sd = std::sqrt(std::max(0.0, sq / 1000.0 - mean * mean));
        CHECK(results[0].nes ==
              doctest::Approx((results[0].score - mean) / sd).epsilon(1e-12));
    }

    CHECK_THROWS(stats::enrichment_with_significance(ranking,
                                                     std::vector<stats::GeneSet>{top}, 50, 9));

    // order independence: a permuted library yields identical per-set results
    stats::GeneSet mid{"mid", {ranking[10], ranking[20], ranking[30], ranking[40]}, ""};
    const auto ab = stats::enrichment_with_significance(
        ranking, std::vector<stats::GeneSet>{top, mid}, 200, 9);
    const auto ba = stats::enrichment_with_significance(
        ranking, std::vector<stats::GeneSet>{mid, top}, 200, 9);
    CHECK(ab[0].score == ba[1].score);
    CHECK(ab[0].nes == ba[1].nes);
    CHECK(ab[0].p_value == ba[1].p_value);
}

TEST_CASE("enrichment p-values are near uniform under a null ranking") {
    const std::size_t g = 150;
    std::vector<std::string> ranking(g);
    for (std::size_t i = 0; i < g; ++i) ranking[i] = "g" + std::to_string(i);

    Rng rng(88);
    std::vector<std::string> shuffled = ranking;
    rng.shuffle(shuffled);  // null: random order

    std::vector<stats::GeneSet> library;
    for (int s = 0; s < 200; ++s)
        library.push_back({"s" + std::to_string(s), rng.sample(ranking, 3 + rng.below(20)), ""});

    const auto results = stats::enrichment_with_significance(shuffled, library, 500, 13);
    std::vector<double> pvals;
    for (const auto& r : results) pvals.push_back(r.p_value);
    std::sort(pvals.begin(), pvals.end());
    double ks = 0;
    for (std::size_t i = 0; i < pvals.size(); ++i) {
        const double ecdf_hi = static_cast<double>(i + 1) / static_cast<double>(pvals.size());
        const double ecdf_lo = static_cast<double>(i) / static_cast<double>(pvals.size());
        ks = std::max(ks, std::max(std::abs(ecdf_hi - pvals[i]), std::abs(pvals[i] - ecdf_lo)));
    }
    CHECK(ks < 0.1);
}

TEST_CASE("enrichment parallel kernel equals the serial reference") {
    const std::size_t g = 80;
    std::vector<std::string> ranking(g);
    for (std::size_t i = 0; i < g; ++i) ranking[i] = "g" + std::to_string(i);
    Rng rng(99);
    std::vector<stats::GeneSet> library;
    for (int s = 0; s < 24; ++s)
        library.push_back({"s" + std::to_string(s), rng.sample(ranking, 2 + rng.below(20)), ""});

    const auto par = stats::enrichment_with_significance(ranking, library, 200, 7);
    const auto ser = stats::enrichment_with_significance_serial(ranking, library, 200, 7);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].score == ser[i].score);
        CHECK(par[i].nes == ser[i].nes);
        CHECK(par[i].p_value == ser[i].p_value);
        CHECK(par[i].fdr == ser[i].fdr);
    }
}

TEST_CASE("differential expression classification and kernel") {
    CHECK(stats::classify_de(0.01, 1.5) == stats::DeClass::tumour_up);
    CHECK(stats::classify_de(0.20, 3.0) == stats::DeClass::excluded);
    CHECK(stats::classify_de(0.01, -1.2) == stats::DeClass::normal_up);
    CHECK(stats::classify_de(0.01, 0.5) == stats::DeClass::excluded);

    // planted matrix: gene0 up, gene1 down, gene2 null
    stats::ExpressionMatrix m;
    const std::size_t tumour_n = 9, normal_n = 7;
    Rng rng(31);
    for (std::size_t s = 0; s < tumour_n + normal_n; ++s) {
        m.sample_ids.push_back("S" + std::to_string(s));
        m.group_labels.push_back(s < tumour_n ? "tumour" : "normal");
    }
    m.gene_ids = {"up_gene", "down_gene", "flat_gene"};
    for (std::size_t s = 0; s < tumour_n + normal_n; ++s) {
        const bool tumour = s < tumour_n;
        m.values.push_back((tumour ? 8.0 : 2.0) + 0.1 * rng.normal());
        m.values.push_back((tumour ? 2.0 : 8.0) + 0.1 * rng.normal());
        m.values.push_back(5.0 + 0.1 * rng.normal());
    }
    const auto de = stats::differential_expression(m, {"tumour", "normal"});
    REQUIRE(de.size() == 3);
    CHECK(de[0].de_class == stats::DeClass::tumour_up);
    CHECK(de[1].de_class == stats::DeClass::normal_up);
    CHECK(de[2].de_class == stats::DeClass::excluded);

    const auto serial = stats::differential_expression_serial(m, {"tumour", "normal"});
    for (std::size_t i = 0; i < de.size(); ++i) {
        CHECK(de[i].p_value == serial[i].p_value);
        CHECK(de[i].fdr == serial[i].fdr);
        CHECK(de[i].log2_fc == serial[i].log2_fc);
    }

    CHECK_THROWS(stats::differential_expression(m, {"tumour", "missing_group"}));
    stats::ExpressionMatrix tiny = m;
    tiny.group_labels.assign(tiny.group_labels.size(), "tumour");
    tiny.group_labels.back() = "normal";  // single reference sample
    CHECK_THROWS(stats::differential_expression(tiny, {"tumour", "normal"}));
}
