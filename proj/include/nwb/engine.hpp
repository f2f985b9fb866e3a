#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "nwb/types.hpp"

namespace nwb {

enum class EventKind : std::uint8_t {
  kTransmitStart,
  kReceive,
  kTimerFire,
  kHelloTick,
  kMobilityUpdate,
  kNwbOriginate,
};

/// Handle for a scheduled event; doubles as the event's unique sequence
/// number within a run.
struct TimerHandle {
  std::uint64_t seq = std::numeric_limits<std::uint64_t>::max();

  bool valid() const { return seq != std::numeric_limits<std::uint64_t>::max(); }
  friend bool operator==(const TimerHandle&, const TimerHandle&) = default;
};

struct TraceEntry {
  SimTime time;
  std::uint64_t seq;
  EventKind kind;
  NodeId node;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Single-threaded discrete-event scheduler. Events dispatch in
/// lexicographic (time, seq) order; seq increases with every schedule call.
class Scheduler {
 public:
  using Handler = std::function<void()>;

  SimTime now() const { return now_; }

  /// Throws std::logic_error if `time` < now().
  TimerHandle schedule(SimTime time, EventKind kind, Handler handler, NodeId node = kNoNode);
  TimerHandle schedule_in(SimTime delay, EventKind kind, Handler handler, NodeId node = kNoNode) {
    return schedule(now_ + delay, kind, std::move(handler), node);
  }

  /// True iff the event was pending; it will then never run.
  bool cancel(TimerHandle handle);
  bool pending(TimerHandle handle) const;

  /// Dispatch events until the queue drains or the next event lies beyond
  /// `max_time`. Returns true iff the queue drained.
  bool run_until_quiescent(SimTime max_time);
  /// Dispatch every event with time <= `until`, then advance the clock to it.
  void run_until(SimTime until);

  std::size_t queued() const { return live_; }
  std::uint64_t dispatched() const { return dispatched_; }

  void enable_trace(bool on) { tracing_ = on; }
  const std::vector<TraceEntry>& trace() const { return trace_; }

 private:
  struct Entry {
    SimTime time;
    std::uint64_t seq;
    EventKind kind;
    NodeId node;
    Handler handler;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };
  enum class SlotState : std::uint8_t { kPending, kDone };

  bool step(SimTime limit);

  std::vector<Entry> heap_;
  std::vector<SlotState> state_;
  SimTime now_ = 0.0;
  std::uint64_t next_seq_ = 0;
  std::size_t live_ = 0;
  std::uint64_t dispatched_ = 0;
  bool tracing_ = false;
  std::vector<TraceEntry> trace_;
};

}  // namespace nwb
