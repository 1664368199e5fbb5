#include "stratus/engine.hpp"

#include <cmath>
#include <cstdio>

#include "stratus/errors.hpp"

namespace stratus {
namespace {

void fnv1a_append(std::uint64_t& hash, std::string_view bytes) {
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
}

}  // namespace

EntityId Engine::register_entity(Entity& entity) {
    if (started_) throw RunAlreadyStarted("register_entity called after run() started");
    entities_.push_back(&entity);
    return static_cast<EntityId>(entities_.size() - 1);
}

void Engine::validate_entity(EntityId id, const char* role) const {
    if (id < 0 || static_cast<std::size_t>(id) >= entities_.size())
        throw UnknownEntity(std::string("unknown ") + role + " entity id " + std::to_string(id));
}

void Engine::schedule(Event event) {
    if (!std::isfinite(event.fire_at))
        throw CausalityViolation("event time must be finite");
    if (event.fire_at < clock_)
        throw CausalityViolation("event at t=" + std::to_string(event.fire_at) +
                                 " is before current clock t=" + std::to_string(clock_));
    validate_entity(event.source, "source");
    validate_entity(event.target, "target");
    event.seq = next_seq_++;
    queue_.push(std::move(event));
}

void Engine::send(EntityId source, EntityId target, SimTime delay, EventTag tag,
                  EventPayload payload) {
    if (!(delay >= 0.0))
        throw CausalityViolation("send delay must be >= 0, got " + std::to_string(delay));
    Event event;
    event.fire_at = clock_ + delay;
    event.source = source;
    event.target = target;
    event.tag = tag;
    event.payload = std::move(payload);
    schedule(std::move(event));
}

Entity& Engine::entity(EntityId id) const {
    validate_entity(id, "requested");
    return *entities_[static_cast<std::size_t>(id)];
}

std::string_view Engine::entity_name(EntityId id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= entities_.size()) return "?";
    return entities_[static_cast<std::size_t>(id)]->name();
}

std::string Engine::format_event(const Event& event) const {
    char head[80];
    std::snprintf(head, sizeof(head), "[%.9f] #%llu ", event.fire_at,
                  static_cast<unsigned long long>(event.seq));
    std::string line = head;
    line += entity_name(event.source);
    line += '#';
    line += std::to_string(event.source);
    line += " -> ";
    line += entity_name(event.target);
    line += '#';
    line += std::to_string(event.target);
    line += ' ';
    line += to_string(event.tag);
    std::string payload = describe_payload(event);
    if (!payload.empty()) {
        line += ' ';
        line += payload;
    }
    return line;
}

void Engine::record_dispatch(const Event& event) {
    std::string line = format_event(event);
    fnv1a_append(trace_hash_, line);
    fnv1a_append(trace_hash_, "\n");
    ++dispatched_;
    ++tag_counts_[static_cast<std::size_t>(event.tag)];
    if (trace_enabled_) trace_.push_back(std::move(line));
}

SimTime Engine::run() {
    if (entities_.empty())
        throw ContractViolation("run() requires at least one registered entity");
    started_ = true;
    while (!queue_.empty()) {
        Event event = queue_.top();
        queue_.pop();
        // Queue ordering guarantees monotone timestamps.
        clock_ = event.fire_at;
        record_dispatch(event);
        try {
            entities_[static_cast<std::size_t>(event.target)]->on_event(*this, event);
        } catch (...) {
            std::throw_with_nested(
                EntityFault("entity fault while dispatching " + format_event(event)));
        }
    }
    return clock_;
}

}  // namespace stratus
