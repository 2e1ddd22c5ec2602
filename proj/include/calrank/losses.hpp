#pragma once

#include <string_view>

#include "calrank/model.hpp"

namespace calrank {

enum class LossKind { zero_one, kendall_tau, spearman_footrule };

std::string_view to_string(LossKind kind);
LossKind parse_loss_kind(std::string_view name);

double loss(LossKind kind, const Ranking& truth, const Ranking& estimate);

// (baseline - candidate) / baseline * 100, a signed percentage. Throws
// undefined_improvement_error when the baseline loss is not positive.
double relative_improvement(double candidate_loss, double baseline_loss);

}  // namespace calrank
