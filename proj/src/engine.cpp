#include "nwb/engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nwb {

TimerHandle Scheduler::schedule(SimTime time, EventKind kind, Handler handler, NodeId node) {
  if (!(time >= now_)) {
    throw std::logic_error("schedule: event time " + std::to_string(time) +
                           " is before the current clock " + std::to_string(now_));
  }
  const std::uint64_t seq = next_seq_++;
  heap_.push_back(Entry{time, seq, kind, node, std::move(handler)});
  std::push_heap(heap_.begin(), heap_.end(), Later{});
  state_.push_back(SlotState::kPending);
  ++live_;
  return TimerHandle{seq};
}

bool Scheduler::cancel(TimerHandle handle) {
  if (!pending(handle)) return false;
  state_[handle.seq] = SlotState::kDone;
  --live_;
  return true;
}

bool Scheduler::pending(TimerHandle handle) const {
  return handle.valid() && handle.seq < state_.size() &&
         state_[handle.seq] == SlotState::kPending;
}

bool Scheduler::step(SimTime limit) {
  while (!heap_.empty()) {
    const Entry& top = heap_.front();
    if (state_[top.seq] != SlotState::kPending) {
      // cancelled
      std::pop_heap(heap_.begin(), heap_.end(), Later{});
      heap_.pop_back();
      continue;
    }
    if (top.time > limit) return false;
    std::pop_heap(heap_.begin(), heap_.end(), Later{});
    Entry entry = std::move(heap_.back());
    heap_.pop_back();
    state_[entry.seq] = SlotState::kDone;
    --live_;
    now_ = entry.time;
    ++dispatched_;
    if (tracing_) trace_.push_back(TraceEntry{entry.time, entry.seq, entry.kind, entry.node});
    entry.handler();
    return true;
  }
  return false;
}

bool Scheduler::run_until_quiescent(SimTime max_time) {
  while (step(max_time)) {
  }
  return live_ == 0;
}

void Scheduler::run_until(SimTime until) {
  while (step(until)) {
  }
  if (until > now_) now_ = until;
}

}  // namespace nwb
