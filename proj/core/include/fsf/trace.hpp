#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fsf/types.hpp"

namespace fsf {

enum class LinkEdge : std::uint8_t { down = 0, up = 1 };  // down sorts first
enum class SocialKind : std::uint8_t { call, text };

struct ContactEvent {
  std::int64_t time = 0;
  NodeId node_a = 0;
  NodeId node_b = 0;
  LinkEdge kind = LinkEdge::up;

  friend bool operator==(const ContactEvent&, const ContactEvent&) = default;
};

struct SocialEvent {
  std::int64_t time = 0;
  NodeId from = 0;
  NodeId to = 0;
  SocialKind kind = SocialKind::call;

  friend bool operator==(const SocialEvent&, const SocialEvent&) = default;
};

/// Contacts are symmetric links; node_a < node_b after normalization.
struct ContactTrace {
  std::int64_t duration = 0;
  std::uint32_t node_count = 0;
  std::vector<ContactEvent> contacts;
  std::vector<SocialEvent> social;

  friend bool operator==(const ContactTrace&, const ContactTrace&) = default;
};

/// Raised for malformed trace input. line() is 1-based, 0 when not tied to a line.
class TraceError : public std::runtime_error {
 public:
  TraceError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

enum class IssueKind {
  double_up,       // up while the pair is already up
  orphan_down,     // down without a preceding up
  node_out_of_range,
  self_contact,
  unordered_time,
  beyond_duration,
  unclosed_up,     // informational: closed by the trace end
};

const char* to_string(IssueKind kind);

struct TraceIssue {
  IssueKind kind;
  std::int64_t time = 0;
  NodeId node_a = 0;
  NodeId node_b = 0;
  std::string detail;
};

struct ParseOptions {
  /// Repair alternation faults instead of passing them through.
  bool repair = true;
};

struct ParsedTrace {
  ContactTrace trace;
  std::vector<TraceIssue> repairs;
};

ParsedTrace parse_contact_trace(std::istream& in, const ParseOptions& options = {});
ParsedTrace parse_contact_trace_file(const std::string& path, const ParseOptions& options = {});

/// Event-format rendering; parse(render(t)) == t for well-formed traces.
void render_trace(const ContactTrace& trace, std::ostream& out);
std::string render_trace(const ContactTrace& trace);

/// Sorts contacts by (time, a, b, down-before-up) and social events by time.
void sort_trace(ContactTrace& trace);

struct PairSummary {
  std::uint64_t contacts = 0;
  double total_seconds = 0.0;
  double mean_seconds() const { return contacts ? total_seconds / contacts : 0.0; }
};

struct ValidationReport {
  std::uint32_t node_count = 0;
  std::int64_t duration = 0;
  std::uint64_t contact_count = 0;
  std::uint64_t social_count = 0;
  std::vector<TraceIssue> issues;
  std::map<std::pair<NodeId, NodeId>, PairSummary> pairs;

  std::size_t count(IssueKind kind) const;
  /// Violations only; unclosed ups are informational.
  std::size_t violations() const;
  bool ok() const { return violations() == 0; }
  double mean_contact_seconds() const;
};

ValidationReport validate_trace(const ContactTrace& trace);
void print_report(const ValidationReport& report, std::ostream& out);

// ---------------------------------------------------------------------------
// Synthetic traces

struct SyntheticScenarioConfig {
  std::uint32_t node_count = 40;
  /// Community size per community; nodes are assigned contiguously.
  std::vector<std::uint32_t> community_sizes = {10, 10, 10, 10};
  std::int64_t duration = 86'400;
  // Per-pair rates are events per day.
  double intra_contact_rate = 6.0;
  double inter_contact_rate = 0.4;
  double intra_contact_mean_s = 600.0;
  double inter_contact_mean_s = 120.0;
  double intra_call_rate = 1.5;
  double inter_call_rate = 0.02;
  double intra_text_rate = 0.3;
  double inter_text_rate = 0.02;
  /// Contact boundaries are rounded to this many seconds.
  std::int64_t granularity = 1;

  /// Splits node_count into `communities` contiguous, near-equal groups.
  static std::vector<std::uint32_t> even_split(std::uint32_t node_count, std::uint32_t communities);
};

struct SyntheticTrace {
  ContactTrace trace;
  std::vector<CommunityId> community;  // per node
};

SyntheticTrace generate_synthetic_trace(const SyntheticScenarioConfig& scenario, std::uint64_t seed);

/// Pairs each up with its down. Unclosed ups end at trace.duration.
struct ContactInterval {
  NodeId node_a = 0;
  NodeId node_b = 0;
  std::int64_t start = 0;
  std::int64_t end = 0;
};
std::vector<ContactInterval> contact_intervals(const ContactTrace& trace);

}  // namespace fsf
