#include "nwb/mobility.hpp"

#include <algorithm>
#include <cmath>

namespace nwb {

MobilityModel::MobilityModel(const Scenario& scenario, std::vector<Position> initial,
                             RngStream stream)
    : config_(scenario.mobility),
      width_(scenario.area_width),
      height_(scenario.area_height),
      initial_(std::move(initial)),
      stream_(stream),
      legs_(initial_.size()) {
  phases_.reserve(initial_.size());
  for (NodeId i = 0; i < initial_.size(); ++i) {
    phases_.push_back(stream_.uniform({0, i}) * config_.hello_period);
  }
}

bool MobilityModel::moving() const {
  return config_.kind == MobilityKind::kRandomWaypoint && config_.mean_speed > 0;
}

void MobilityModel::extend(NodeId node, SimTime until) const {
  auto& legs = legs_.at(node);
  while (legs.empty() || legs.back().resume < until) {
    const std::uint64_t index = legs.size();
    const Position from = legs.empty() ? initial_[node] : legs.back().to;
    const SimTime depart = legs.empty() ? 0.0 : legs.back().resume;
    auto gen = stream_.sub({1, node, index});
    Position to{gen.uniform(0.0, width_), gen.uniform(0.0, height_)};
    const double speed = gen.uniform(0.5 * config_.mean_speed, 1.5 * config_.mean_speed);
    const SimTime arrive = depart + distance(from, to) / speed;
    legs.push_back(Leg{depart, arrive, arrive + config_.pause_time, from, to, speed});
  }
}

const std::vector<MobilityModel::Leg>& MobilityModel::legs(NodeId node, SimTime until) const {
  if (moving()) extend(node, until);
  return legs_.at(node);
}

Position MobilityModel::position_at(NodeId node, SimTime time) const {
  if (!moving() || time <= 0.0) return initial_.at(node);
  const auto& legs = this->legs(node, time);
  auto it = std::lower_bound(legs.begin(), legs.end(), time,
                             [](const Leg& leg, SimTime t) { return leg.resume < t; });
  const Leg& leg = *it;
  if (time <= leg.depart) return leg.from;
  if (time >= leg.arrive) return leg.to;
  const double f = (time - leg.depart) / (leg.arrive - leg.depart);
  Position p{leg.from.x + f * (leg.to.x - leg.from.x), leg.from.y + f * (leg.to.y - leg.from.y)};
  p.x = std::clamp(p.x, 0.0, width_);
  p.y = std::clamp(p.y, 0.0, height_);
  return p;
}

void NeighborTable::on_hello(const HelloPacket& hello, SimTime now) {
  if (hello.sender == self_) return;
  one_hop_[hello.sender] = now;
  two_hop_[hello.sender] = hello.neighbors;
}

void NeighborTable::expire(SimTime now, SimTime expiry) {
  for (auto it = one_hop_.begin(); it != one_hop_.end();) {
    if (it->second < now - expiry) {
      two_hop_.erase(it->first);
      it = one_hop_.erase(it);
    } else {
      ++it;
    }
  }
}

std::vector<NodeId> NeighborTable::one_hop() const {
  std::vector<NodeId> out;
  out.reserve(one_hop_.size());
  for (const auto& [id, _] : one_hop_) out.push_back(id);
  return out;
}

std::vector<NodeId> NeighborTable::within_two_hops() const {
  std::vector<NodeId> out = one_hop();
  for (const auto& [_, list] : two_hop_) out.insert(out.end(), list.begin(), list.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::erase(out, self_);
  return out;
}

std::vector<NodeId> NeighborTable::strict_two_hop() const {
  std::vector<NodeId> out;
  for (NodeId v : within_two_hops()) {
    if (!one_hop_.contains(v)) out.push_back(v);
  }
  return out;
}

const std::vector<NodeId>* NeighborTable::neighbors_of(NodeId node) const {
  auto it = two_hop_.find(node);
  return it == two_hop_.end() ? nullptr : &it->second;
}

NeighborTable expire_neighbors(NeighborTable table, SimTime now, SimTime expiry) {
  table.expire(now, expiry);
  return table;
}

HelloPacket emit_hello(NeighborTable& own, SimTime time, SimTime expiry) {
  own.expire(time, expiry);
  return HelloPacket{own.self(), time, own.one_hop()};
}

}  // namespace nwb
