#pragma once

#include <array>
#include <cstdint>
#include <queue>
#include <string>
#include <vector>

#include "stratus/events.hpp"

namespace stratus {

class Engine;

/// Anything that can receive events. Handlers run to completion on the
/// single simulation thread; reentrancy never happens.
class Entity {
public:
    virtual ~Entity() = default;
    virtual void on_event(Engine& engine, const Event& event) = 0;
    virtual std::string_view name() const = 0;
};

/// Deterministic discrete-event executor.
///
/// Events are totally ordered by (fire_at, seq); seq is a global insertion
/// counter, so simultaneous events dispatch in FIFO scheduling order. The
/// clock never moves backwards, and a given input always produces the same
/// event trace byte for byte.
class Engine {
public:
    /// Registers an entity and returns its dense id. Only allowed before
    /// run() starts.
    EntityId register_entity(Entity& entity);

    /// Enqueues an event at an absolute time >= now. The event's seq field
    /// is assigned here; any caller-provided value is ignored.
    void schedule(Event event);

    /// Enqueues a message from source to target after a non-negative delay.
    void send(EntityId source, EntityId target, SimTime delay, EventTag tag,
              EventPayload payload = {});

    /// Dispatches queued events in order until the queue drains. Returns the
    /// final clock value (0 when no event ever fired).
    SimTime run();

    SimTime now() const { return clock_; }
    bool started() const { return started_; }
    std::size_t entity_count() const { return entities_.size(); }
    Entity& entity(EntityId id) const;
    std::string_view entity_name(EntityId id) const;

    /// When enabled, every dispatched event is kept as a formatted line.
    void set_trace_enabled(bool enabled) { trace_enabled_ = enabled; }
    const std::vector<std::string>& trace() const { return trace_; }

    /// FNV-1a digest over the full dispatch trace, tracked whether or not
    /// line retention is on. Equal digests mean byte-identical traces.
    std::uint64_t trace_hash() const { return trace_hash_; }

    std::uint64_t dispatched_count() const { return dispatched_; }
    const std::array<std::uint64_t, kEventTagCount>& tag_counts() const { return tag_counts_; }

    std::string format_event(const Event& event) const;

private:
    struct EventAfter {
        bool operator()(const Event& a, const Event& b) const {
            if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
            return a.seq > b.seq;
        }
    };

    void validate_entity(EntityId id, const char* role) const;
    void record_dispatch(const Event& event);

    std::vector<Entity*> entities_;
    std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;
    SimTime clock_ = 0.0;
    std::uint64_t next_seq_ = 0;
    bool started_ = false;
    bool trace_enabled_ = false;
    std::vector<std::string> trace_;
    std::uint64_t trace_hash_ = 14695981039346656037ULL;  // FNV-1a offset basis
    std::uint64_t dispatched_ = 0;
    std::array<std::uint64_t, kEventTagCount> tag_counts_{};
};

}  // namespace stratus
