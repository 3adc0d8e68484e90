#include "biofab/train/group.hpp"

#include <cmath>
#include <stdexcept>

#include "biofab/rng.hpp"

namespace biofab::train {

std::size_t GroupBatch::total_tokens() const {
    std::size_t n = 0;
    for (const auto& g : groups)
        for (const auto& r : g.rollouts) n += r.tokens.size();
    return n;
}

void GroupBatch::validate() const {
    for (const auto& g : groups) {
        if (g.rollouts.size() < 2)
            throw std::invalid_argument("GroupBatch: G must be >= 2 (prompt " + g.prompt_id +
                                        ")");
        double sum = 0;
        for (const auto& r : g.rollouts) {
            if (r.tokens.empty())
                throw std::invalid_argument("GroupBatch: empty rollout in " + g.prompt_id);
            if (r.tokens.size() != r.logp_current.size() ||
                r.tokens.size() != r.logp_ref.size())
                throw std::invalid_argument("GroupBatch: log-prob track length mismatch");
            sum += r.reward;
        }
        const double mean = sum / static_cast<double>(g.rollouts.size());
        double sq = 0;
        for (const auto& r : g.rollouts) sq += (r.reward - mean) * (r.reward - mean);
        const double sd = std::sqrt(sq / static_cast<double>(g.rollouts.size()));
        if (std::abs(mean - g.reward_mean) > 1e-12 || std::abs(sd - g.reward_sd) > 1e-12)
            throw std::invalid_argument("GroupBatch: cached group stats are stale");
    }
}

std::vector<Rollout> sample_group(const ToyPolicy& policy, std::size_t cue, std::size_t G,
                                  std::size_t max_len, std::uint64_t seed) {
    if (G < 2) throw std::invalid_argument("sample_group: G must be >= 2");

    std::vector<Rollout> rollouts(G);
    for (std::size_t i = 0; i < G; ++i) {
        Rng rng(derive_seed(seed, "rollout:" + std::to_string(i)));
        Rollout& r = rollouts[i];
        r.cue = cue;
        std::int64_t prev = -1;
        for (std::size_t pos = 0; pos < max_len; ++pos) {
            const std::size_t state = policy.state_index(cue, pos, prev);
            const std::vector<double> logp = policy.log_probs(state);

            // inverse-CDF draw over the categorical distribution
            const double u = rng.uniform();
            double cum = 0;
            std::size_t token = logp.size() - 1;
            for (std::size_t v = 0; v < logp.size(); ++v) {
                cum += std::exp(logp[v]);
                if (u < cum) {
                    token = v;
                    break;
                }
            }
            r.tokens.push_back(token);
            r.logp_current.push_back(logp[token]);
            r.logp_ref.push_back(logp[token]);
            if (token == policy.vocab().eos) break;
            prev = static_cast<std::int64_t>(token);
        }
        r.decoded = policy.decode(r.tokens);
    }
    return rollouts;
}

std::vector<double> group_advantages(std::span<const double> rewards, double eps_std) {
    if (rewards.size() < 2)
        throw std::invalid_argument("group_advantages: need at least two rewards");
    if (eps_std < 0) throw std::invalid_argument("group_advantages: eps_std must be >= 0");

    const std::size_t g = rewards.size();
    double sum = 0;
    for (double r : rewards) sum += r;
    const double mean = sum / static_cast<double>(g);

    double sq = 0;
    for (double r : rewards) sq += (r - mean) * (r - mean);
    const double sd = std::sqrt(sq / static_cast<double>(g));

    const double denom = sd + eps_std;
    std::vector<double> adv(g);
    if (denom == 0.0) return adv;  // all rewards equal: zero numerators too
    for (std::size_t i = 0; i < g; ++i) adv[i] = (rewards[i] - mean) / denom;
    return adv;
}

std::vector<double> importance_ratios(const Rollout& rollout) {
    if (rollout.logp_current.size() != rollout.logp_ref.size())
        throw std::invalid_argument("importance_ratios: track length mismatch");
    std::vector<double> ratios(rollout.logp_current.size());
    for (std::size_t t = 0; t < ratios.size(); ++t)
        ratios[t] = std::exp(rollout.logp_current[t] - rollout.logp_ref[t]);
    return ratios;
}

void assign_advantages(GroupBatch& batch, double eps_std) {
    for (auto& g : batch.groups) {
        std::vector<double> rewards;
        rewards.reserve(g.rollouts.size());
        for (const auto& r : g.rollouts) rewards.push_back(r.reward);
        const std::vector<double> adv = group_advantages(rewards, eps_std);
        double sum = 0;
        for (double r : rewards) sum += r;
        g.reward_mean = sum / static_cast<double>(rewards.size());
        double sq = 0;
        for (double r : rewards) sq += (r - g.reward_mean) * (r - g.reward_mean);
        g.reward_sd = std::sqrt(sq / static_cast<double>(rewards.size()));
        for (std::size_t i = 0; i < g.rollouts.size(); ++i)
            g.rollouts[i].advantage = adv[i];
    }
}

}  // namespace biofab::train
