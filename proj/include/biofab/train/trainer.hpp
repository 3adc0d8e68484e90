#pragma once

#include <span>
#include <string>
#include <vector>

#include "biofab/reward/reward.hpp"
#include "biofab/train/loss.hpp"

namespace biofab::train {

struct TrainerConfig {
    std::size_t group_size = 10;       // G
    std::size_t prompts_per_step = 10; // N
    double eps_clip = 0.2;
    double eps_std = 1e-4;
    double beta = 0.0;  // KL coefficient; only 0 is supported
    double learning_rate = 2.5;
    std::size_t max_len = 8;
    std::size_t epochs = 1;
    std::uint64_t seed = 0;
    double scaffold_bias = 9.0;
};

struct StepMetrics {
    std::size_t step = 0;
    double mean_reward = 0;
    double accuracy = 0;  // share of rollouts with correct == 1
    double loss = 0;
};

struct TrainOutcome {
    ToyPolicy policy;
    std::vector<StepMetrics> metrics;
};

/// One pass over the dataset (single epoch by default): each step samples N
/// prompt groups of G rollouts from the current policy, scores them with the
/// reward verifier, normalizes rewards within groups and takes one ascent
/// step on the BNPO surrogate. Deterministic given (dataset, config).
TrainOutcome train(std::span<const qa::QaItem> dataset, const TrainerConfig& config,
                   const reward::VerifierConfig& verifier = {});

/// Samples one completion per item (temperature 1, fixed seed) and returns
/// the share whose answer matches the key.
double evaluate_accuracy(const ToyPolicy& policy, std::span<const qa::QaItem> items,
                         std::uint64_t seed, std::size_t max_len = 8,
                         const reward::VerifierConfig& verifier = {});

void write_metrics_csv(const std::string& path, std::span<const StepMetrics> metrics);

/// Cue markers shared by the planted-rule fixtures and the toy policy.
const std::vector<std::string>& toy_cue_markers();

}  // namespace biofab::train
