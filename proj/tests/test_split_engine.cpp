#include <doctest.h>

#include <algorithm>
#include <set>

#include "biofab/pipeline/synthetic.hpp"
#include "biofab/qa/generators.hpp"
#include "biofab/rng.hpp"
#include "biofab/split/jaccard.hpp"
#include "biofab/split/ontology.hpp"
#include "biofab/split/split.hpp"

using namespace biofab;

namespace {

qa::QaItem make_item(const std::string& id, const std::string& gene,
                     const std::string& indication, const std::string& direction) {
    qa::QaItem item;
    item.id = id;
    item.family = "SPDE";
    item.question_type = "upregulated_in_tumour_islets";
    item.question = "Which gene is upregulated in tumour islets versus stroma in " +
                    indication + "?";
    item.options = {{"A", gene + " (ensembl E1)"}, {"B", "other (ensembl E2)"}};
    item.answer = "A";
    item.subjects = {{"gene", gene}, {"indication", indication}};
    item.metadata["direction"] = direction;
    qa::set_entities(item, "gene", {gene});
    qa::set_entities(item, "indication", {indication});
    return item;
}

}  // namespace

TEST_CASE("explicit holdout: test owns the indication and shares no gene") {
    // one gene pool per indication, with one deliberately shared gene
    std::vector<qa::QaItem> items;
    const std::vector<std::string> indications = {"Invasive breast carcinoma",
                                                  "Lung adenocarcinoma", "Mesothelioma"};
    std::size_t id = 0;
    for (const auto& ind : indications)
        for (int g = 0; g < 8; ++g)
            items.push_back(make_item("it-" + std::to_string(id++),
                                      "G_" + ind.substr(0, 3) + "_" + std::to_string(g), ind,
                                      g % 2 ? "up" : "down"));
    // planted cross-indication gene: appears in the holdout and in train
    items.push_back(make_item("it-shared-a", "G_SHARED", "Invasive breast carcinoma", "up"));
    items.push_back(make_item("it-shared-b", "G_SHARED", "Lung adenocarcinoma", "up"));

    split::SplitConfig cfg;
    cfg.subject_roles = {{"gene", true}, {"indication", true}};
    cfg.holdout_role = "indication";
    cfg.holdout_subjects = {"Invasive breast carcinoma"};

    const auto result = split::entity_disjoint_split(items, cfg);
    CHECK(result.report.passing());
    CHECK(result.report.n_dropped == 1);  // the train item carrying the shared gene

    std::set<std::string> test_indications, train_genes, test_genes;
    for (const auto& item : result.test) {
        test_indications.insert(item.subjects.at("indication"));
        test_genes.insert(item.subjects.at("gene"));
    }
    for (const auto& item : result.train) train_genes.insert(item.subjects.at("gene"));
    CHECK(test_indications == std::set<std::string>{"Invasive breast carcinoma"});
    for (const auto& g : test_genes) CHECK(train_genes.count(g) == 0);
}

TEST_CASE("verify_split detects a planted leak") {
    std::vector<qa::QaItem> items;
    for (int g = 0; g < 20; ++g)
        items.push_back(make_item("it-" + std::to_string(g), "G" + std::to_string(g),
                                  g < 10 ? "IndA" : "IndB", g % 2 ? "up" : "down"));

    split::SplitConfig cfg;
    cfg.subject_roles = {{"gene", true}};
    std::vector<qa::QaItem> train(items.begin(), items.begin() + 10);
    std::vector<qa::QaItem> test(items.begin() + 10, items.end());
    CHECK(split::verify_split(train, test, cfg).passing());

    // plant the leak: a train gene reappears in test
    test.front().subjects["gene"] = "G0";
    qa::set_entities(test.front(), "gene", {"G0"});
    const auto report = split::verify_split(train, test, cfg);
    CHECK_FALSE(report.passing());
    CHECK(report.overlap_counts.at("gene") == 1);
    REQUIRE(!report.violations.empty());
}

TEST_CASE("ratio split: disjoint roles, strata within tolerance, determinism") {
    Rng rng(4);
    std::vector<qa::QaItem> items;
    for (int g = 0; g < 400; ++g)
        items.push_back(make_item("it-" + std::to_string(g), "G" + std::to_string(g),
                                  "Ind" + std::to_string(g % 7),
                                  rng.coin() ? "up" : "down"));

    split::SplitConfig cfg;
    cfg.subject_roles = {{"gene", true}};  // genes are unique: one item per component
    cfg.holdout_ratio = 0.2;
    cfg.stratify_keys = {"direction"};
    cfg.seed = 11;

    const auto result = split::entity_disjoint_split(items, cfg);
    CHECK(result.report.passing());
    const double test_share = static_cast<double>(result.test.size()) /
                              static_cast<double>(items.size());
    CHECK(test_share == doctest::Approx(0.2).epsilon(0.25));
    for (const auto& row : result.report.strata) CHECK(row.within_tolerance);

    const auto rerun = split::entity_disjoint_split(items, cfg);
    REQUIRE(rerun.test.size() == result.test.size());
    for (std::size_t i = 0; i < rerun.test.size(); ++i)
        CHECK(rerun.test[i].id == result.test[i].id);
}

TEST_CASE("infeasible disjointness names the spanning entity") {
    std::vector<qa::QaItem> items;
    for (int g = 0; g < 6; ++g) {
        auto item = make_item("it-" + std::to_string(g), "G" + std::to_string(g), "OnlyInd",
                              "up");
        items.push_back(std::move(item));
    }
    split::SplitConfig cfg;
    cfg.subject_roles = {{"indication", true}};
    cfg.holdout_ratio = 0.3;
    CHECK_THROWS_WITH_AS(split::entity_disjoint_split(items, cfg),
                         doctest::Contains("OnlyInd"), std::runtime_error);
}

TEST_CASE("ontology partition: alternation, coverage, determinism") {
    // two roots with subtree sizes 3 and 2: larger one goes to train
    split::OntologyGraph g;
    g.node_ids = {"r1", "a", "b", "r2", "c"};
    for (const auto& id : g.node_ids) g.members[id] = {id, {id + "_gene"}, ""};
    g.edges = {{"r1", "a"}, {"r1", "b"}, {"r2", "c"}};

    std::vector<split::SubtreeAssignment> detail;
    const auto sides = split::partition_ontology(g, &detail);
    CHECK(sides.at("r1") == split::Side::train);
    CHECK(sides.at("a") == split::Side::train);
    CHECK(sides.at("b") == split::Side::train);
    CHECK(sides.at("r2") == split::Side::test);
    CHECK(sides.at("c") == split::Side::test);
    REQUIRE(detail.size() == 2);
    CHECK(detail[0].root == "r1");

    // isolated node forms its own subtree and joins the alternation
    split::OntologyGraph iso = g;
    iso.node_ids.push_back("lonely");
    iso.members["lonely"] = {"lonely", {"lg"}, ""};
    const auto sides2 = split::partition_ontology(iso);
    CHECK(sides2.count("lonely") == 1);

    // cycles are rejected
    split::OntologyGraph cyc = g;
    cyc.edges.emplace_back("a", "r1");
    CHECK_THROWS(split::partition_ontology(cyc));
}

TEST_CASE("ontology partition covers a random DAG exactly once") {
    Rng rng(9);
    split::OntologyGraph g;
    for (int i = 0; i < 50; ++i) {
        const std::string id = "n" + std::to_string(i);
        g.node_ids.push_back(id);
        g.members[id] = {id, {id + "_gene"}, ""};
    }
    // edges only from lower to higher index: acyclic by construction,
    // occasional second parent produces shared descendants
    for (int i = 5; i < 50; ++i) {
        g.edges.emplace_back("n" + std::to_string(rng.below(i)), "n" + std::to_string(i));
        if (rng.uniform() < 0.15)
            g.edges.emplace_back("n" + std::to_string(rng.below(i)), "n" + std::to_string(i));
    }

    std::vector<split::SubtreeAssignment> detail;
    const auto sides = split::partition_ontology(g, &detail);
    CHECK(sides.size() == 50);  // every node assigned exactly once

    std::set<std::string> seen;
    for (const auto& st : detail)
        for (const auto& node : st.nodes) CHECK(seen.insert(node).second);
    CHECK(seen.size() == 50);

    // subtree co-membership: every claimed node is reachable from its root
    std::map<std::string, std::vector<std::string>> children;
    for (const auto& [p, c] : g.edges) children[p].push_back(c);
    for (const auto& st : detail) {
        std::set<std::string> reachable{st.root};
        std::vector<std::string> stack{st.root};
        while (!stack.empty()) {
            const auto node = stack.back();
            stack.pop_back();
            for (const auto& c : children[node])
                if (reachable.insert(c).second) stack.push_back(c);
        }
        for (const auto& node : st.nodes) CHECK(reachable.count(node) == 1);
    }
}

TEST_CASE("jaccard filter thresholds and monotonicity") {
    const stats::GeneSet t1{"t1", {"a", "b"}, ""};
    const stats::GeneSet t2{"t2", {"x", "y", "z"}, ""};
    const stats::GeneSet t3{"t3", {"b", "c"}, ""};
    const std::vector<stats::GeneSet> train = {{"s1", {"b", "c"}, ""}};

    CHECK(split::jaccard(t1, train[0]) == doctest::Approx(1.0 / 3.0));
    // J = 1/3 > 0.3: removed
    const auto kept =
        split::max_jaccard_filter(std::vector<stats::GeneSet>{t1, t2, t3}, train, 0.3);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].name == "t2");  // disjoint set retained; identical set removed

    CHECK_THROWS(split::jaccard({"e", {}, ""}, t1));

    // monotonicity: lowering the threshold never recovers a removed set
    Rng rng(17);
    std::vector<std::string> pool;
    for (int i = 0; i < 30; ++i) pool.push_back("g" + std::to_string(i));
    std::vector<stats::GeneSet> tests, trains;
    for (int i = 0; i < 25; ++i)
        tests.push_back({"T" + std::to_string(i), rng.sample(pool, 2 + rng.below(8)), ""});
    for (int i = 0; i < 25; ++i)
        trains.push_back({"S" + std::to_string(i), rng.sample(pool, 2 + rng.below(8)), ""});
    for (double low : {0.1, 0.2, 0.25}) {
        const auto at_low = split::max_jaccard_filter(tests, trains, low);
        const auto at_high = split::max_jaccard_filter(tests, trains, 0.3);
        std::set<std::string> high_names;
        for (const auto& s : at_high) high_names.insert(s.name);
        for (const auto& s : at_low) CHECK(high_names.count(s.name) == 1);
    }

    // parallel kernel equals the serial path
    const auto par = split::max_jaccard_filter(tests, trains, 0.3, Exec::parallel);
    const auto ser = split::max_jaccard_filter(tests, trains, 0.3, Exec::serial);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) CHECK(par[i].name == ser[i].name);
}

TEST_CASE("letter balance audited on large corpora") {
    Rng rng(23);
    std::vector<qa::QaItem> train, test;
    for (int i = 0; i < 12000; ++i) {
        auto item = make_item("it-" + std::to_string(i), "G" + std::to_string(i), "Ind", "up");
        item.answer = rng.coin() ? "A" : "B";
        if (item.answer == "B") std::swap(item.options[0].text, item.options[1].text);
        train.push_back(std::move(item));
    }
    split::SplitConfig cfg;
    cfg.subject_roles = {{"gene", true}};
    const auto balanced = split::verify_split(train, test, cfg);
    bool letter_violation = false;
    for (const auto& v : balanced.violations)
        if (v.find("letter balance") != std::string::npos) letter_violation = true;
    CHECK_FALSE(letter_violation);

    // force every answer to A: the audit must flag it
    for (auto& item : train) {
        if (item.answer == "B") std::swap(item.options[0].text, item.options[1].text);
        item.answer = "A";
    }
    const auto skewed = split::verify_split(train, test, cfg);
    letter_violation = false;
    for (const auto& v : skewed.violations)
        if (v.find("letter balance") != std::string::npos) letter_violation = true;
    CHECK(letter_violation);
}

TEST_CASE("split then verify passes across seeds") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 44ull, 999ull}) {
        Rng rng(seed);
        std::vector<qa::QaItem> items;
        for (int g = 0; g < 120; ++g)
            items.push_back(make_item("it-" + std::to_string(g), "G" + std::to_string(g),
                                      "Ind" + std::to_string(g % 5),
                                      rng.coin() ? "up" : "down"));
        split::SplitConfig cfg;
        cfg.subject_roles = {{"gene", true}};
        cfg.holdout_ratio = 0.25;
        cfg.stratify_keys = {"direction"};
        cfg.seed = seed;
        const auto result = split::entity_disjoint_split(items, cfg);
        CHECK(split::verify_split(result.train, result.test, cfg).passing());
    }
}
