// biofab: benchmark factory and desk-scale RLVR lab.
//
//   gen      generate one family (or all) from real tables or --synthetic
//   split    leakage-safe train/test split with audit report
//   verify   recompute manifest counts and split digests
//   mixture  per-question-type capped training mixture
//   train    planted-rule RLVR experiment (toy policy, BNPO)
//   score    verifiable rewards for a completions file
//   judge    LLM-judge preference / consistency over an HTTP endpoint
//   report   accuracy / preference / consistency summary tables
//   all      synthetic end-to-end pipeline

#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "biofab/pipeline/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"verifiable biology QA benchmark factory and RLVR lab"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    biofab::pipeline::PipelineOptions opt;
    std::string config_path;
    app.add_option("--config", config_path, "key=value config file")->envname("BIOFAB_CONFIG");
    app.add_option("--seed", opt.master_seed, "master seed (all module seeds derive from it)");
    app.add_flag("--synthetic", opt.synthetic, "use the bundled synthetic fixtures");
    app.add_option("--out", opt.out_dir, "output directory (default: out)");

    std::string family = "all";
    auto* gen = app.add_subcommand("gen", "generate a QA dataset");
    gen->add_option("--family", family, "spde|tvhe|gi|tcgasa|dseqde|dpp|ttp|sd|toyrule|all");

    auto* split = app.add_subcommand("split", "entity-disjoint train/test split");
    split->add_option("--family", family);
    split->add_flag("--paper-faithful", opt.paper_faithful,
                    "TTP: plain random split (reproduces the published defect)");

    auto* verify = app.add_subcommand("verify", "re-verify manifests and split reports");
    verify->add_option("--family", family);

    std::vector<std::string> mixture_inputs;
    std::size_t mixture_cap = 5000;
    std::string mixture_out;
    auto* mixture = app.add_subcommand("mixture", "capped per-question-type training mixture");
    mixture->add_option("--inputs", mixture_inputs, "split JSONL files (default: all families)");
    mixture->add_option("--cap", mixture_cap, "per-question-type cap");
    mixture->add_option("--output", mixture_out, "output JSONL path");
    mixture->add_flag("--paper-mixture", opt.paper_mixture, "exclude SD from the mixture");

    std::string train_path, heldout_path;
    auto* train = app.add_subcommand("train", "BNPO training on the planted-rule task");
    train->add_option("--dataset", train_path, "training items JSONL");
    train->add_option("--heldout", heldout_path, "held-out items JSONL");

    std::string dataset_path, completions_path, completions_b, out_path;
    auto* score = app.add_subcommand("score", "verifiable rewards for completions");
    score->add_option("--dataset", dataset_path)->required();
    score->add_option("--completions", completions_path)->required();
    score->add_option("--output", out_path, "rewards JSONL path");

    std::string judge_mode = "preference";
    auto* judge = app.add_subcommand("judge", "LLM-judge evaluation");
    judge->add_option("--mode", judge_mode, "preference|consistency");
    judge->add_option("--dataset", dataset_path);
    judge->add_option("--completions-a", completions_path);
    judge->add_option("--completions-b", completions_b);
    judge->add_option("--output", out_path);

    std::string rewards_path, judgments_path;
    auto* report = app.add_subcommand("report", "summary tables from rewards and judgments");
    report->add_option("--rewards", rewards_path)->required();
    report->add_option("--judgments", judgments_path);
    report->add_option("--output", out_path);

    auto* all = app.add_subcommand("all", "synthetic end-to-end pipeline");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty())
            opt.config = biofab::pipeline::KvConfig::from_file(config_path);

        namespace cmds = biofab::pipeline;
        if (gen->parsed()) cmds::cmd_gen(opt, family);
        else if (split->parsed()) cmds::cmd_split(opt, family);
        else if (verify->parsed()) cmds::cmd_verify(opt, family);
        else if (mixture->parsed())
            cmds::cmd_mixture(opt, mixture_inputs, mixture_cap,
                              mixture_out.empty() ? opt.out_dir + "/mixture.jsonl"
                                                  : mixture_out);
        else if (train->parsed())
            cmds::cmd_train(opt,
                            train_path.empty() ? opt.out_dir + "/toyrule.train.jsonl"
                                               : train_path,
                            heldout_path.empty() ? opt.out_dir + "/toyrule.test.jsonl"
                                                 : heldout_path);
        else if (score->parsed())
            cmds::cmd_score(opt, dataset_path, completions_path,
                            out_path.empty() ? opt.out_dir + "/rewards.jsonl" : out_path);
        else if (judge->parsed())
            cmds::cmd_judge(opt, judge_mode, dataset_path, completions_path, completions_b,
                            out_path.empty() ? opt.out_dir + "/judgments.jsonl" : out_path);
        else if (report->parsed())
            cmds::cmd_report(opt, rewards_path, judgments_path,
                             out_path.empty() ? opt.out_dir + "/report.tsv" : out_path);
        else if (all->parsed()) cmds::cmd_all(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
