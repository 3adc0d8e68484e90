#include "biofab/train/trainer.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "biofab/io/table.hpp"
#include "biofab/rng.hpp"
#include "biofab/text.hpp"

namespace biofab::train {

const std::vector<std::string>& toy_cue_markers() {
    static const std::vector<std::string> markers = {"alpha", "beta"};
    return markers;
}

TrainOutcome train(std::span<const qa::QaItem> dataset, const TrainerConfig& config,
                   const reward::VerifierConfig& verifier) {
    if (dataset.empty()) throw std::invalid_argument("train: empty dataset");
    if (config.group_size < 2) throw std::invalid_argument("train: G must be >= 2");
    if (config.beta != 0.0)
        throw std::invalid_argument("train: KL penalty is disabled; beta must stay 0");

    ToyPolicy policy = ToyPolicy::scaffold_initialized(
        Vocabulary::toy_default(), toy_cue_markers().size(), config.max_len,
        toy_cue_markers(), config.scaffold_bias);

    TrainOutcome outcome{policy, {}};
    ToyPolicy& theta = outcome.policy;

    std::vector<std::size_t> order(dataset.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng shuffle_rng(derive_seed(config.seed, "train-order"));

    std::size_t step = 0;
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        const std::size_t steps_per_epoch = dataset.size() / config.prompts_per_step;
        for (std::size_t s = 0; s < steps_per_epoch; ++s, ++step) {
            GroupBatch batch;
            batch.groups.resize(config.prompts_per_step);

            const std::int64_t n_groups = static_cast<std::int64_t>(config.prompts_per_step);
#pragma omp parallel for schedule(static)
            for (std::int64_t gi = 0; gi < n_groups; ++gi) {
                const auto& item =
                    dataset[order[s * config.prompts_per_step + static_cast<std::size_t>(gi)]];
                PromptGroup& group = batch.groups[static_cast<std::size_t>(gi)];
                group.prompt_id = item.id;
                group.cue = theta.cue_of(item);
                group.rollouts = sample_group(
                    theta, group.cue, config.group_size, config.max_len,
                    derive_seed(config.seed, "step:" + std::to_string(step) + ":" + item.id));
                for (auto& r : group.rollouts)
                    r.reward = reward::total_reward(r.decoded, item, verifier).total;
            }

            assign_advantages(batch, config.eps_std);
            const LossGrad lg = bnpo_loss(theta, batch, config.eps_clip);

            auto& params = theta.parameters();
            for (std::size_t i = 0; i < params.size(); ++i)
                params[i] += config.learning_rate * lg.gradient[i];

            StepMetrics m;
            m.step = step;
            m.loss = lg.value;
            std::size_t n_rollouts = 0;
            for (std::size_t gi = 0; gi < batch.groups.size(); ++gi) {
                const auto& item = dataset[order[s * config.prompts_per_step + gi]];
                for (const auto& r : batch.groups[gi].rollouts) {
                    m.mean_reward += r.reward;
                    const auto parse = reward::parse_completion(r.decoded);
                    m.accuracy += reward::reward_correct(parse.answer_body, item, verifier);
                    ++n_rollouts;
                }
            }
            m.mean_reward /= static_cast<double>(n_rollouts);
            m.accuracy /= static_cast<double>(n_rollouts);
            outcome.metrics.push_back(m);
        }
    }
    return outcome;
}

double evaluate_accuracy(const ToyPolicy& policy, std::span<const qa::QaItem> items,
                         std::uint64_t seed, std::size_t max_len,
                         const reward::VerifierConfig& verifier) {
    if (items.empty()) throw std::invalid_argument("evaluate_accuracy: no items");
    std::size_t correct = 0;
    for (const auto& item : items) {
        const std::size_t cue = policy.cue_of(item);
        // sample_group needs G >= 2; score the first rollout only
        const auto rollouts =
            sample_group(policy, cue, 2, max_len, derive_seed(seed, "eval:" + item.id));
        const auto parse = reward::parse_completion(rollouts.front().decoded);
        correct += reward::reward_correct(parse.answer_body, item, verifier);
    }
    return static_cast<double>(correct) / static_cast<double>(items.size());
}

void write_metrics_csv(const std::string& path, std::span<const StepMetrics> metrics) {
    std::string out = "step,mean_reward,accuracy,loss\n";
    for (const auto& m : metrics) {
        out += std::to_string(m.step);
        out += ',';
        out += format_compact(m.mean_reward);
        out += ',';
        out += format_compact(m.accuracy);
        out += ',';
        out += format_compact(m.loss);
        out += '\n';
    }
    io::atomic_write_text(path, out);
}

}  // namespace biofab::train
