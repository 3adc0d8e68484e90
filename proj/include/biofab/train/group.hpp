#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "biofab/train/policy.hpp"

namespace biofab::train {

/// One sampled response with per-token log-probability tracks under the
/// sampling policy and the frozen reference snapshot.
struct Rollout {
    std::size_t cue = 0;
    std::vector<std::size_t> tokens;     // includes the end token when reached
    std::vector<double> logp_current;    // under the policy that sampled it
    std::vector<double> logp_ref;        // under the frozen reference
    std::string decoded;
    double reward = 0;
    double advantage = 0;
};

struct PromptGroup {
    std::string prompt_id;
    std::size_t cue = 0;
    std::vector<Rollout> rollouts;
    double reward_mean = 0;
    double reward_sd = 0;  // population standard deviation
};

struct GroupBatch {
    std::vector<PromptGroup> groups;

    std::size_t total_tokens() const;
    /// G >= 2 everywhere and cached group stats match the stored rewards.
    void validate() const;
};

/// G independent autoregressive samples for one prompt cue. Both
/// log-probability tracks are filled from the same policy (the sampling-time
/// snapshot is the reference).
std::vector<Rollout> sample_group(const ToyPolicy& policy, std::size_t cue, std::size_t G,
                                  std::size_t max_len, std::uint64_t seed);

/// (R_i - mean) / (population sd + eps_std); all-equal rewards yield zeros.
std::vector<double> group_advantages(std::span<const double> rewards, double eps_std);

/// exp(logp_current - logp_ref) per token.
std::vector<double> importance_ratios(const Rollout& rollout);

/// Fills rewards into advantages group by group and caches the group stats.
void assign_advantages(GroupBatch& batch, double eps_std);

}  // namespace biofab::train
