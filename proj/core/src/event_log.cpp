#include "fsf/event_log.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace fsf {

namespace {

constexpr const char* kHeader = "time,type,msg_id,from,to,reason";

template <typename T>
T parse_number(std::string_view text, std::size_t line) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw LogError("event log line " + std::to_string(line) + ": bad number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

const char* to_string(RecordType type) {
  switch (type) {
    case RecordType::created: return "created";
    case RecordType::forwarded: return "forwarded";
    case RecordType::delivered: return "delivered";
    case RecordType::dropped: return "dropped";
    case RecordType::expired: return "expired";
    case RecordType::refused: return "refused";
    case RecordType::aborted: return "aborted";
    case RecordType::scan: return "scan";
    case RecordType::recharge: return "recharge";
  }
  return "?";
}

const char* to_string(Reason reason) {
  switch (reason) {
    case Reason::none: return "";
    case Reason::oversize: return "oversize";
    case Reason::overflow: return "overflow";
    case Reason::selfish_individual: return "selfish_individual";
    case Reason::selfish_social: return "selfish_social";
    case Reason::resources: return "resources";
    case Reason::contact_ended: return "contact_ended";
    case Reason::sender_lost: return "sender_lost";
    case Reason::no_energy: return "no_energy";
  }
  return "?";
}

RecordType parse_record_type(std::string_view text) {
  for (int i = 0; i <= static_cast<int>(RecordType::recharge); ++i) {
    const auto t = static_cast<RecordType>(i);
    if (text == to_string(t)) return t;
  }
  throw LogError("unknown record type '" + std::string(text) + "'");
}

Reason parse_reason(std::string_view text) {
  for (int i = 0; i <= static_cast<int>(Reason::no_energy); ++i) {
    const auto r = static_cast<Reason>(i);
    if (text == to_string(r)) return r;
  }
  throw LogError("unknown reason '" + std::string(text) + "'");
}

void EventLog::append(const LogRecord& record) {
  if (complete_) throw LogError("append to a finished event log");
  if (!records_.empty() && record.time < records_.back().time) {
    throw LogError("event log timestamps must be non-decreasing");
  }
  records_.push_back(record);
}

void EventLog::finish(SimTime end_time) {
  if (!records_.empty() && end_time < records_.back().time) throw LogError("end time precedes the last record");
  complete_ = true;
  end_time_ = end_time;
}

std::size_t EventLog::count(RecordType type) const {
  return static_cast<std::size_t>(
      std::count_if(records_.begin(), records_.end(), [type](const LogRecord& r) { return r.type == type; }));
}

void write_event_log_csv(const EventLog& log, std::ostream& out) {
  out << kHeader << '\n';
  char buf[160];
  for (const auto& r : log.records()) {
    std::snprintf(buf, sizeof buf, "%.6f,%s,%llu,%u,%u,%s\n", r.time, to_string(r.type),
                  static_cast<unsigned long long>(r.msg_id), r.from, r.to, to_string(r.reason));
    out << buf;
  }
  if (log.complete()) {
    std::snprintf(buf, sizeof buf, "%.6f,end,0,0,0,\n", log.end_time());
    out << buf;
  }
}

std::string event_log_csv(const EventLog& log) {
  std::ostringstream out;
  write_event_log_csv(log, out);
  return out.str();
}

EventLog read_event_log_csv(std::istream& in) {
  EventLog log;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || line != kHeader) throw LogError("event log: missing header");
  ++line_no;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (log.complete()) throw LogError("event log line " + std::to_string(line_no) + ": data after end");
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 6) throw LogError("event log line " + std::to_string(line_no) + ": expected 6 fields");
    const auto time = parse_number<double>(fields[0], line_no);
    if (fields[1] == "end") {
      log.finish(time);
      continue;
    }
    LogRecord r;
    r.time = time;
    r.type = parse_record_type(fields[1]);
    r.msg_id = parse_number<MessageId>(fields[2], line_no);
    r.from = parse_number<NodeId>(fields[3], line_no);
    r.to = parse_number<NodeId>(fields[4], line_no);
    r.reason = parse_reason(fields[5]);
    log.append(r);
  }
  return log;
}

}  // namespace fsf
