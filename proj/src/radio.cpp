#include "nwb/radio.hpp"

#include <stdexcept>

namespace nwb {

Radio::Radio(LossModelConfig config, RngStream loss_stream)
    : config_(config), loss_(loss_stream) {}

bool Radio::delivered(NodeId sender, NodeId receiver, bool in_range, const TxKey& key) const {
  if (sender == receiver) throw std::invalid_argument("delivered: sender == receiver");
  if (!in_range) return false;
  if (config_.kind == LossKind::kPerfect) return true;
  if (key.hello && !config_.drop_applies_to_hellos) return true;
  const double p = config_.drop_probability;
  if (p <= 0.0) return true;
  if (p >= 1.0) return false;
  const double u = loss_.uniform({key.hello ? 1u : 0u, key.id, sender, key.ordinal, receiver});
  return u >= p;
}

}  // namespace nwb
