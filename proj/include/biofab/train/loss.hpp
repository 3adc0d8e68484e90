#pragma once

#include <vector>

#include "biofab/train/group.hpp"

namespace biofab::train {

struct LossGrad {
    double value = 0;
    std::vector<double> gradient;  // shaped like the policy parameters
};

/// Clipped token-level surrogate normalized by the total token count of the
/// whole batch. Current log-probabilities are recomputed from `policy`; the
/// reference track is the one stored in the rollouts. The gradient is the
/// exact derivative through the softmax rows (no KL term; beta is 0 by
/// construction). Throws on an empty batch.
LossGrad bnpo_loss(const ToyPolicy& policy, const GroupBatch& batch, double eps_clip);

/// Value-only evaluation (used by the finite-difference oracle).
double bnpo_loss_value(const ToyPolicy& policy, const GroupBatch& batch, double eps_clip);

/// Same surrogate evaluated from the stored log-probability tracks alone;
/// equals bnpo_loss_value whenever the policy still matches the sampling
/// snapshot. Demonstrates that the reference enters only through the ratios.
double surrogate_value_from_stored(const GroupBatch& batch, double eps_clip);

/// Token-level clipped surrogate normalized by the single group's token
/// count. Throws unless the batch holds exactly one prompt group.
double dapo_loss(const ToyPolicy& policy, const GroupBatch& batch, double eps_clip);

}  // namespace biofab::train
