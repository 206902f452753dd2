#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fsf/types.hpp"

namespace fsf {

enum class RecordType : std::uint8_t {
  created,
  forwarded,  // every completed transfer, including the one reaching the destination
  delivered,  // first arrival at the destination
  dropped,
  expired,
  refused,
  aborted,
  scan,
  recharge,
};

enum class Reason : std::uint8_t {
  none,
  oversize,
  overflow,
  selfish_individual,
  selfish_social,
  resources,
  contact_ended,
  sender_lost,
  no_energy,
};

const char* to_string(RecordType type);
const char* to_string(Reason reason);
RecordType parse_record_type(std::string_view text);
Reason parse_reason(std::string_view text);

struct LogRecord {
  SimTime time = 0.0;
  RecordType type = RecordType::created;
  MessageId msg_id = 0;  // 0 for scan and recharge
  NodeId from = 0;
  NodeId to = 0;
  Reason reason = Reason::none;

  friend bool operator==(const LogRecord&, const LogRecord&) = default;
};

class LogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Time-ordered run record. A log is complete once finish() has been called;
/// metrics refuse incomplete logs.
class EventLog {
 public:
  void append(const LogRecord& record);
  void finish(SimTime end_time);

  const std::vector<LogRecord>& records() const { return records_; }
  bool complete() const { return complete_; }
  SimTime end_time() const { return end_time_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  std::size_t count(RecordType type) const;

  friend bool operator==(const EventLog&, const EventLog&) = default;

 private:
  std::vector<LogRecord> records_;
  bool complete_ = false;
  SimTime end_time_ = 0.0;
};

/// CSV `time,type,msg_id,from,to,reason`; a trailing `end` row marks completion.
void write_event_log_csv(const EventLog& log, std::ostream& out);
std::string event_log_csv(const EventLog& log);
EventLog read_event_log_csv(std::istream& in);

}  // namespace fsf
