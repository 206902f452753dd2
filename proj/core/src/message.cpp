#include "fsf/message.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fsf {

MessageGenerator::MessageGenerator(const MessageGenConfig& config, std::uint32_t node_count, std::uint64_t seed)
    : config_(config), node_count_(node_count), rng_(seed) {
  if (!(config.interval > 0.0)) throw std::invalid_argument("message interval must be positive");
  if (node_count < 2) throw std::invalid_argument("message generation needs at least 2 nodes");
  if (std::isnan(config.stop)) throw std::invalid_argument("message stop time must be a number");
  if (config.min_size == 0 || config.min_size > config.max_size) {
    throw std::invalid_argument("message size range must satisfy 0 < min <= max");
  }
}

std::vector<Message> MessageGenerator::generate(SimTime now) {
  std::vector<Message> out;
  std::uniform_int_distribution<NodeId> pick_source(0, node_count_ - 1);
  std::uniform_int_distribution<NodeId> pick_other(0, node_count_ - 2);
  std::uniform_int_distribution<Bytes> pick_size(config_.min_size, config_.max_size);
  while (next_boundary() <= now && next_boundary() <= config_.stop) {
    Message m;
    m.id = next_id_++;
    m.source = pick_source(rng_);
    // Uniform over the remaining nodes: without replacement.
    const NodeId d = pick_other(rng_);
    m.destination = d >= m.source ? d + 1 : d;
    m.created_at = next_boundary();
    m.size = pick_size(rng_);
    m.ttl = config_.ttl;
    out.push_back(m);
    ++next_index_;
  }
  return out;
}

TransferResult transfer_message(const Message& msg, double link_speed_bps, SimTime remaining_contact) {
  if (!(link_speed_bps > 0.0)) throw std::invalid_argument("link speed must be positive");
  if (remaining_contact < 0.0) throw std::invalid_argument("remaining contact time must be non-negative");
  const SimTime duration = static_cast<double>(msg.size) * 8.0 / link_speed_bps;
  return {duration <= remaining_contact, duration};
}

const char* to_string(BufferPolicy policy) {
  switch (policy) {
    case BufferPolicy::drop_oldest: return "drop_oldest";
    case BufferPolicy::drop_less_known: return "drop_less_known";
    case BufferPolicy::fifo: return "fifo";
  }
  return "?";
}

BufferPolicy parse_buffer_policy(std::string_view text) {
  if (text == "drop_oldest") return BufferPolicy::drop_oldest;
  if (text == "drop_less_known" || text == "dlk") return BufferPolicy::drop_less_known;
  if (text == "fifo") return BufferPolicy::fifo;
  throw std::invalid_argument("unknown buffer policy '" + std::string(text) + "'");
}

double Buffer::used_fraction() const {
  if (capacity_ == 0) return 1.0;
  return static_cast<double>(used_) / static_cast<double>(capacity_);
}

const Message* Buffer::find(MessageId id) const {
  if (!ids_.contains(id)) return nullptr;
  auto it = std::find_if(messages_.begin(), messages_.end(), [id](const Message& m) { return m.id == id; });
  return it == messages_.end() ? nullptr : &*it;
}

bool Buffer::erase(MessageId id) {
  if (!ids_.erase(id)) return false;
  auto it = std::find_if(messages_.begin(), messages_.end(), [id](const Message& m) { return m.id == id; });
  used_ -= it->size;
  messages_.erase(it);
  return true;
}

void Buffer::push_back(const Message& msg) {
  if (msg.size > free()) throw std::logic_error("buffer overflow on push_back");
  if (!ids_.insert(msg.id).second) throw std::logic_error("duplicate message in buffer");
  messages_.push_back(msg);
  used_ += msg.size;
  earliest_expiry_ = std::min(earliest_expiry_, msg.expires_at());
}

std::vector<Message> Buffer::expire(SimTime now) {
  std::vector<Message> out;
  if (!(earliest_expiry_ < now)) return out;
  auto keep = std::stable_partition(messages_.begin(), messages_.end(),
                                    [now](const Message& m) { return !m.expired(now); });
  out.assign(keep, messages_.end());
  messages_.erase(keep, messages_.end());
  earliest_expiry_ = std::numeric_limits<SimTime>::infinity();
  for (const auto& m : messages_) earliest_expiry_ = std::min(earliest_expiry_, m.expires_at());
  for (const auto& m : out) {
    ids_.erase(m.id);
    used_ -= m.size;
  }
  return out;
}

InsertResult buffer_insert(Buffer& buffer, const Message& msg, BufferPolicy policy, const SocialOracle& oracle) {
  InsertResult result;
  if (msg.size > buffer.capacity()) return result;
  if (policy == BufferPolicy::drop_less_known && !oracle) {
    throw std::invalid_argument("drop_less_known needs a social oracle");
  }

  // Victim order: lower key evicted first.
  auto victim = [&]() -> MessageId {
    const auto& msgs = buffer.messages();
    switch (policy) {
      case BufferPolicy::fifo: return msgs.front().id;
      case BufferPolicy::drop_oldest:
        return std::min_element(msgs.begin(), msgs.end(),
                                [](const Message& l, const Message& r) { return l.created_at < r.created_at; })
            ->id;
      case BufferPolicy::drop_less_known: {
        const Message* best = nullptr;
        bool best_weak = false;
        for (const auto& m : msgs) {
          const bool weak = oracle(m.destination) == Friendship::weak;
          if (!best || (weak && !best_weak) || (weak == best_weak && m.created_at < best->created_at)) {
            best = &m;
            best_weak = weak;
          }
        }
        return best->id;
      }
    }
    return msgs.front().id;
  };

  while (buffer.free() < msg.size) {
    const MessageId id = victim();
    result.dropped.push_back(*buffer.find(id));
    buffer.erase(id);
  }
  buffer.push_back(msg);
  result.inserted = true;
  return result;
}

}  // namespace fsf
