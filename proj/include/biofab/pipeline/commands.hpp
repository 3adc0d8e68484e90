#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "biofab/pipeline/config.hpp"

namespace biofab::pipeline {

struct PipelineOptions {
    std::string out_dir = "out";
    std::uint64_t master_seed = 42;
    bool synthetic = false;
    bool paper_faithful = false;  // TTP: reproduce the plain random split
    bool paper_mixture = false;   // mixture: cap per question type, exclude SD
    KvConfig config;
};

const std::vector<std::string>& gen_families();  // the eight + "toyrule"

void cmd_gen(const PipelineOptions& opt, const std::string& family);
void cmd_split(const PipelineOptions& opt, const std::string& family);
void cmd_verify(const PipelineOptions& opt, const std::string& family);

void cmd_mixture(const PipelineOptions& opt, std::vector<std::string> inputs, std::size_t cap,
                 const std::string& out_path);

struct TrainSummary {
    double initial_accuracy = 0;
    double final_accuracy = 0;
    std::size_t steps = 0;
};

TrainSummary cmd_train(const PipelineOptions& opt, const std::string& train_path,
                       const std::string& heldout_path);

void cmd_score(const PipelineOptions& opt, const std::string& dataset_path,
               const std::string& completions_path, const std::string& out_path);

void cmd_judge(const PipelineOptions& opt, const std::string& mode,
               const std::string& dataset_path, const std::string& completions_a,
               const std::string& completions_b, const std::string& out_path);

void cmd_report(const PipelineOptions& opt, const std::string& rewards_path,
                const std::string& judgments_path, const std::string& out_path);

void cmd_all(const PipelineOptions& opt);

}  // namespace biofab::pipeline
