#include "biofab/train/loss.hpp"

#include <cmath>
#include <stdexcept>

namespace biofab::train {

namespace {

// Per-token surrogate min(r*A, clip(r)*A) plus the clip mask. The gradient
// flows through r unless the clipped arm is strictly active, i.e. unless
// (r > 1+eps and A > 0) or (r < 1-eps and A < 0).
inline double token_surrogate(double ratio, double advantage, double eps_clip,
                              bool* grad_flows) {
    const double clipped = std::min(std::max(ratio, 1.0 - eps_clip), 1.0 + eps_clip);
    const double unclipped_arm = ratio * advantage;
    const double clipped_arm = clipped * advantage;
    if (grad_flows)
        *grad_flows = !((ratio > 1.0 + eps_clip && advantage > 0.0) ||
                        (ratio < 1.0 - eps_clip && advantage < 0.0));
    return std::min(unclipped_arm, clipped_arm);
}

void check_batch(const GroupBatch& batch) {
    if (batch.groups.empty()) throw std::invalid_argument("bnpo_loss: empty batch");
    for (const auto& g : batch.groups)
        if (g.rollouts.empty()) throw std::invalid_argument("bnpo_loss: empty group");
}

}  // namespace

LossGrad bnpo_loss(const ToyPolicy& policy, const GroupBatch& batch, double eps_clip) {
    check_batch(batch);
    const std::size_t total = batch.total_tokens();
    const double norm = static_cast<double>(total);
    const std::size_t vocab = policy.vocab().size();

    LossGrad out;
    out.gradient.assign(policy.n_params(), 0.0);

    double acc = 0;
    for (const auto& g : batch.groups) {
        for (const auto& r : g.rollouts) {
            std::int64_t prev = -1;
            for (std::size_t t = 0; t < r.tokens.size(); ++t) {
                const std::size_t state = policy.state_index(r.cue, t, prev);
                const std::vector<double> logp = policy.log_probs(state);
                const std::size_t token = r.tokens[t];
                const double ratio = std::exp(logp[token] - r.logp_ref[t]);

                bool flows = false;
                acc += token_surrogate(ratio, r.advantage, eps_clip, &flows);

                if (flows && r.advantage != 0.0) {
                    // d/dlogit_v [r*A] = A * r * (1{v==token} - softmax_v)
                    const double scale = r.advantage * ratio / norm;
                    double* grad_row = out.gradient.data() + state * vocab;
                    for (std::size_t v = 0; v < vocab; ++v)
                        grad_row[v] -= scale * std::exp(logp[v]);
                    grad_row[token] += scale;
                }
                prev = static_cast<std::int64_t>(token);
            }
        }
    }
    out.value = acc / norm;
    return out;
}

double bnpo_loss_value(const ToyPolicy& policy, const GroupBatch& batch, double eps_clip) {
    check_batch(batch);
    double acc = 0;
    for (const auto& g : batch.groups) {
        for (const auto& r : g.rollouts) {
            std::int64_t prev = -1;
            for (std::size_t t = 0; t < r.tokens.size(); ++t) {
                const std::size_t state = policy.state_index(r.cue, t, prev);
                const std::vector<double> logp = policy.log_probs(state);
                const double ratio = std::exp(logp[r.tokens[t]] - r.logp_ref[t]);
                acc += token_surrogate(ratio, r.advantage, eps_clip, nullptr);
                prev = static_cast<std::int64_t>(r.tokens[t]);
            }
        }
    }
    return acc / static_cast<double>(batch.total_tokens());
}

double surrogate_value_from_stored(const GroupBatch& batch, double eps_clip) {
    check_batch(batch);
    double acc = 0;
    for (const auto& g : batch.groups) {
        for (const auto& r : g.rollouts) {
            for (std::size_t t = 0; t < r.tokens.size(); ++t) {
                const double ratio = std::exp(r.logp_current[t] - r.logp_ref[t]);
                acc += token_surrogate(ratio, r.advantage, eps_clip, nullptr);
            }
        }
    }
    return acc / static_cast<double>(batch.total_tokens());
}

double dapo_loss(const ToyPolicy& policy, const GroupBatch& batch, double eps_clip) {
    if (batch.groups.size() != 1)
        throw std::invalid_argument("dapo_loss: exactly one prompt group required");
    const auto& g = batch.groups.front();
    if (g.rollouts.empty()) throw std::invalid_argument("dapo_loss: empty group");

    std::size_t group_tokens = 0;
    for (const auto& r : g.rollouts) group_tokens += r.tokens.size();

    double acc = 0;
    for (const auto& r : g.rollouts) {
        std::int64_t prev = -1;
        for (std::size_t t = 0; t < r.tokens.size(); ++t) {
            const std::size_t state = policy.state_index(r.cue, t, prev);
            const std::vector<double> logp = policy.log_probs(state);
            const double ratio = std::exp(logp[r.tokens[t]] - r.logp_ref[t]);
            acc += token_surrogate(ratio, r.advantage, eps_clip, nullptr);
            prev = static_cast<std::int64_t>(r.tokens[t]);
        }
    }
    return acc / static_cast<double>(group_tokens);
}

}  // namespace biofab::train
