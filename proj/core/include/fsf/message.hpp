#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "fsf/friendship.hpp"
#include "fsf/types.hpp"

namespace fsf {

struct Message {
  MessageId id = 0;
  NodeId source = 0;
  NodeId destination = 0;
  SimTime created_at = 0.0;
  Bytes size = 0;
  SimTime ttl = 0.0;
  std::uint32_t hop_count = 0;

  SimTime expires_at() const { return created_at + ttl; }
  /// Strict: a message is still alive at exactly created_at + ttl.
  bool expired(SimTime now) const { return created_at + ttl < now; }

  friend bool operator==(const Message&, const Message&) = default;
};

struct MessageGenConfig {
  SimTime interval = 2.0;
  Bytes min_size = 500'000;
  Bytes max_size = 1'000'000;
  SimTime ttl = 5.0 * 3600.0;
  SimTime stop = std::numeric_limits<SimTime>::infinity();  // no boundaries after this
};

/// Emits one message per interval boundary (interval, 2*interval, ...), with
/// a uniformly drawn source/destination pair and uniform size.
class MessageGenerator {
 public:
  MessageGenerator(const MessageGenConfig& config, std::uint32_t node_count, std::uint64_t seed);

  /// All messages whose boundary falls in (last call, now].
  std::vector<Message> generate(SimTime now);
  SimTime next_boundary() const { return static_cast<double>(next_index_) * config_.interval; }

 private:
  MessageGenConfig config_;
  std::uint32_t node_count_;
  std::mt19937_64 rng_;
  std::uint64_t next_index_ = 1;
  MessageId next_id_ = 1;
};

/// Transfer time at link_speed (bit/s): completed iff size*8/speed <= remaining.
struct TransferResult {
  bool completed = false;
  SimTime duration = 0.0;
};
TransferResult transfer_message(const Message& msg, double link_speed_bps, SimTime remaining_contact);

enum class BufferPolicy : std::uint8_t { drop_oldest, drop_less_known, fifo };

const char* to_string(BufferPolicy policy);
BufferPolicy parse_buffer_policy(std::string_view text);

/// Message store with byte accounting, kept in insertion order.
class Buffer {
 public:
  explicit Buffer(Bytes capacity = kUnlimitedBytes) : capacity_(capacity) {}

  Bytes capacity() const { return capacity_; }
  Bytes used() const { return used_; }
  Bytes free() const { return capacity_ - used_; }
  double used_fraction() const;
  std::size_t size() const { return messages_.size(); }
  bool empty() const { return messages_.empty(); }
  const std::vector<Message>& messages() const { return messages_; }

  bool contains(MessageId id) const { return ids_.contains(id); }
  const Message* find(MessageId id) const;
  bool erase(MessageId id);
  void push_back(const Message& msg);

  /// Removes and returns every message with expires_at() < now.
  std::vector<Message> expire(SimTime now);
  /// Lower bound on the earliest expiry among buffered messages.
  SimTime earliest_expiry() const { return earliest_expiry_; }

 private:
  Bytes capacity_;
  Bytes used_ = 0;
  std::vector<Message> messages_;
  std::unordered_set<MessageId> ids_;
  SimTime earliest_expiry_ = std::numeric_limits<SimTime>::infinity();
};

/// Friendship between the carrier and a destination, for drop_less_known.
using SocialOracle = std::function<Friendship(NodeId destination)>;

struct InsertResult {
  bool inserted = false;  // false only when msg.size > capacity
  std::vector<Message> dropped;
};

InsertResult buffer_insert(Buffer& buffer, const Message& msg, BufferPolicy policy, const SocialOracle& oracle = {});

}  // namespace fsf
