#include "calrank/losses.hpp"

#include <string>

#include "calrank/error.hpp"
#include "calrank/metric_ranking.hpp"

namespace calrank {

std::string_view to_string(LossKind kind) {
  switch (kind) {
    case LossKind::zero_one: return "zero-one";
    case LossKind::kendall_tau: return "kendall-tau";
    case LossKind::spearman_footrule: return "spearman-footrule";
  }
  return "?";
}

LossKind parse_loss_kind(std::string_view name) {
  for (LossKind k : {LossKind::zero_one, LossKind::kendall_tau, LossKind::spearman_footrule}) {
    if (to_string(k) == name) return k;
  }
  throw argument_error("unknown loss: " + std::string(name));
}

double loss(LossKind kind, const Ranking& truth, const Ranking& estimate) {
  if (truth.size() != estimate.size()) {
    throw argument_error("loss: rankings must cover the same number of items");
  }
  switch (kind) {
    case LossKind::zero_one: return truth == estimate ? 0.0 : 1.0;
    case LossKind::kendall_tau: return static_cast<double>(kendall_tau(truth, estimate));
    case LossKind::spearman_footrule: return static_cast<double>(spearman_footrule(truth, estimate));
  }
  throw argument_error("loss: unknown loss kind");
}

double relative_improvement(double candidate_loss, double baseline_loss) {
  if (!(baseline_loss > 0.0)) {
    throw undefined_improvement_error("relative_improvement: baseline loss must be positive");
  }
  return (baseline_loss - candidate_loss) / baseline_loss * 100.0;
}

}  // namespace calrank
