#include "fsf/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string_view>

namespace fsf {

TraceError::TraceError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

const char* to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::double_up: return "double_up";
    case IssueKind::orphan_down: return "orphan_down";
    case IssueKind::node_out_of_range: return "node_out_of_range";
    case IssueKind::self_contact: return "self_contact";
    case IssueKind::unordered_time: return "unordered_time";
    case IssueKind::beyond_duration: return "beyond_duration";
    case IssueKind::unclosed_up: return "unclosed_up";
  }
  return "unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view token, std::size_t line, const char* what) {
  T value{};
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw TraceError(line, std::string("expected ") + what + ", got '" + std::string(token) + "'");
  }
  return value;
}

auto contact_key(const ContactEvent& e) { return std::tuple(e.time, e.node_a, e.node_b, e.kind); }
auto social_key(const SocialEvent& e) { return std::tuple(e.time, e.from, e.to, e.kind); }

using PairKey = std::pair<NodeId, NodeId>;

std::vector<ContactEvent> repair_alternation(const std::vector<ContactEvent>& events,
                                             std::vector<TraceIssue>& repairs) {
  std::vector<ContactEvent> out;
  out.reserve(events.size());
  std::map<PairKey, std::int64_t> open;  // pair -> up time
  for (const auto& e : events) {
    const PairKey key{e.node_a, e.node_b};
    auto it = open.find(key);
    if (e.kind == LinkEdge::up) {
      if (it == open.end()) {
        open.emplace(key, e.time);
        out.push_back(e);
        continue;
      }
      if (it->second == e.time) {
        repairs.push_back({IssueKind::double_up, e.time, e.node_a, e.node_b, "duplicate up dropped"});
        continue;
      }
      repairs.push_back({IssueKind::double_up, e.time, e.node_a, e.node_b, "down synthesized at next up"});
      out.push_back({e.time, e.node_a, e.node_b, LinkEdge::down});
      out.push_back(e);
      it->second = e.time;
    } else {
      if (it == open.end()) {
        repairs.push_back({IssueKind::orphan_down, e.time, e.node_a, e.node_b, "orphan down dropped"});
        continue;
      }
      open.erase(it);
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace

void sort_trace(ContactTrace& trace) {
  std::stable_sort(trace.contacts.begin(), trace.contacts.end(),
                   [](const auto& l, const auto& r) { return contact_key(l) < contact_key(r); });
  std::stable_sort(trace.social.begin(), trace.social.end(),
                   [](const auto& l, const auto& r) { return social_key(l) < social_key(r); });
}

ParsedTrace parse_contact_trace(std::istream& in, const ParseOptions& options) {
  ParsedTrace result;
  ContactTrace& trace = result.trace;
  bool have_header = false;
  std::int64_t last_c = 0;
  std::int64_t last_s = 0;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto tok = split_ws(line);

    if (!have_header) {
      if (tok.size() != 4 || tok[0] != "nodes" || tok[2] != "duration") {
        throw TraceError(line_no, "expected header 'nodes <N> duration <T>'");
      }
      trace.node_count = parse_number<std::uint32_t>(tok[1], line_no, "node count");
      trace.duration = parse_number<std::int64_t>(tok[3], line_no, "duration");
      if (trace.duration < 0) throw TraceError(line_no, "negative duration");
      have_header = true;
      continue;
    }

    auto node = [&](std::string_view t) {
      const auto id = parse_number<NodeId>(t, line_no, "node id");
      if (id >= trace.node_count) {
        throw TraceError(line_no, "node id " + std::to_string(id) + " out of range (nodes " +
                                      std::to_string(trace.node_count) + ")");
      }
      return id;
    };
    auto timestamp = [&](std::string_view t) {
      const auto v = parse_number<std::int64_t>(t, line_no, "timestamp");
      if (v < 0 || v > trace.duration) {
        throw TraceError(line_no, "timestamp " + std::to_string(v) + " outside [0, duration]");
      }
      return v;
    };
    auto ordered_pair = [&](NodeId a, NodeId b) {
      if (a == b) throw TraceError(line_no, "contact of a node with itself");
      return a < b ? PairKey{a, b} : PairKey{b, a};
    };

    if (tok[0] == "C") {
      if (tok.size() != 5) throw TraceError(line_no, "expected 'C <t> <a> <b> up|down'");
      const auto t = timestamp(tok[1]);
      const auto [a, b] = ordered_pair(node(tok[2]), node(tok[3]));
      LinkEdge kind;
      if (tok[4] == "up") {
        kind = LinkEdge::up;
      } else if (tok[4] == "down") {
        kind = LinkEdge::down;
      } else {
        throw TraceError(line_no, "expected up|down, got '" + std::string(tok[4]) + "'");
      }
      if (t < last_c) throw TraceError(line_no, "non-monotone timestamp");
      last_c = t;
      trace.contacts.push_back({t, a, b, kind});
    } else if (tok[0] == "I") {
      if (tok.size() != 5) throw TraceError(line_no, "expected 'I <a> <b> <t_start> <t_end>'");
      const auto [a, b] = ordered_pair(node(tok[1]), node(tok[2]));
      const auto start = timestamp(tok[3]);
      const auto end = timestamp(tok[4]);
      if (end <= start) throw TraceError(line_no, "non-monotone timestamps: interval end <= start");
      trace.contacts.push_back({start, a, b, LinkEdge::up});
      trace.contacts.push_back({end, a, b, LinkEdge::down});
    } else if (tok[0] == "S") {
      if (tok.size() != 5) throw TraceError(line_no, "expected 'S <t> <from> <to> call|text'");
      const auto t = timestamp(tok[1]);
      const auto from = node(tok[2]);
      const auto to = node(tok[3]);
      if (from == to) throw TraceError(line_no, "social event of a node with itself");
      SocialKind kind;
      if (tok[4] == "call") {
        kind = SocialKind::call;
      } else if (tok[4] == "text") {
        kind = SocialKind::text;
      } else {
        throw TraceError(line_no, "expected call|text, got '" + std::string(tok[4]) + "'");
      }
      if (t < last_s) throw TraceError(line_no, "non-monotone timestamp");
      last_s = t;
      trace.social.push_back({t, from, to, kind});
    } else {
      throw TraceError(line_no, "unknown record type '" + std::string(tok[0]) + "'");
    }
  }
  if (!have_header) throw TraceError(0, "missing header 'nodes <N> duration <T>'");

  sort_trace(trace);
  if (options.repair) trace.contacts = repair_alternation(trace.contacts, result.repairs);
  return result;
}

ParsedTrace parse_contact_trace_file(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw TraceError(0, "cannot open trace file '" + path + "'");
  return parse_contact_trace(in, options);
}

void render_trace(const ContactTrace& trace, std::ostream& out) {
  out << "nodes " << trace.node_count << " duration " << trace.duration << '\n';
  for (const auto& e : trace.contacts) {
    out << "C " << e.time << ' ' << e.node_a << ' ' << e.node_b << ' '
        << (e.kind == LinkEdge::up ? "up" : "down") << '\n';
  }
  for (const auto& s : trace.social) {
    out << "S " << s.time << ' ' << s.from << ' ' << s.to << ' '
        << (s.kind == SocialKind::call ? "call" : "text") << '\n';
  }
}

std::string render_trace(const ContactTrace& trace) {
  std::ostringstream out;
  render_trace(trace, out);
  return out.str();
}

std::size_t ValidationReport::count(IssueKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(issues.begin(), issues.end(), [&](const auto& i) { return i.kind == kind; }));
}

std::size_t ValidationReport::violations() const { return issues.size() - count(IssueKind::unclosed_up); }

double ValidationReport::mean_contact_seconds() const {
  double total = 0.0;
  std::uint64_t n = 0;
  for (const auto& [_, s] : pairs) {
    total += s.total_seconds;
    n += s.contacts;
  }
  return n ? total / static_cast<double>(n) : 0.0;
}

ValidationReport validate_trace(const ContactTrace& trace) {
  ValidationReport report;
  report.node_count = trace.node_count;
  report.duration = trace.duration;
  report.social_count = trace.social.size();

  std::map<PairKey, std::int64_t> open;
  std::int64_t last = 0;
  for (const auto& e : trace.contacts) {
    if (e.time < last) report.issues.push_back({IssueKind::unordered_time, e.time, e.node_a, e.node_b, {}});
    last = std::max(last, e.time);
    if (e.time > trace.duration) report.issues.push_back({IssueKind::beyond_duration, e.time, e.node_a, e.node_b, {}});
    if (e.node_a >= trace.node_count || e.node_b >= trace.node_count) {
      report.issues.push_back({IssueKind::node_out_of_range, e.time, e.node_a, e.node_b, {}});
      continue;
    }
    if (e.node_a == e.node_b) {
      report.issues.push_back({IssueKind::self_contact, e.time, e.node_a, e.node_b, {}});
      continue;
    }
    const PairKey key = std::minmax(e.node_a, e.node_b);
    auto it = open.find(key);
    if (e.kind == LinkEdge::up) {
      if (it != open.end()) {
        report.issues.push_back({IssueKind::double_up, e.time, key.first, key.second, {}});
        continue;
      }
      open.emplace(key, e.time);
      ++report.contact_count;
    } else {
      if (it == open.end()) {
        report.issues.push_back({IssueKind::orphan_down, e.time, key.first, key.second, {}});
        continue;
      }
      auto& summary = report.pairs[key];
      ++summary.contacts;
      summary.total_seconds += static_cast<double>(e.time - it->second);
      open.erase(it);
    }
  }
  for (const auto& [key, since] : open) {
    report.issues.push_back({IssueKind::unclosed_up, since, key.first, key.second, "closed by trace end"});
    auto& summary = report.pairs[key];
    ++summary.contacts;
    summary.total_seconds += static_cast<double>(std::max<std::int64_t>(trace.duration - since, 0));
  }
  for (const auto& s : trace.social) {
    if (s.from >= trace.node_count || s.to >= trace.node_count) {
      report.issues.push_back({IssueKind::node_out_of_range, s.time, s.from, s.to, "social event"});
    } else if (s.from == s.to) {
      report.issues.push_back({IssueKind::self_contact, s.time, s.from, s.to, "social event"});
    }
    if (s.time > trace.duration || s.time < 0) {
      report.issues.push_back({IssueKind::beyond_duration, s.time, s.from, s.to, "social event"});
    }
  }
  return report;
}

void print_report(const ValidationReport& report, std::ostream& out) {
  out << "nodes " << report.node_count << '\n'
      << "duration " << report.duration << '\n'
      << "contacts " << report.contact_count << '\n'
      << "social_events " << report.social_count << '\n'
      << "pairs " << report.pairs.size() << '\n'
      << "mean_contact_s " << report.mean_contact_seconds() << '\n'
      << "violations " << report.violations() << '\n';
  for (const auto& issue : report.issues) {
    out << "  " << to_string(issue.kind) << " t=" << issue.time << ' ' << issue.node_a << '-' << issue.node_b;
    if (!issue.detail.empty()) out << " (" << issue.detail << ')';
    out << '\n';
  }
}

std::vector<std::uint32_t> SyntheticScenarioConfig::even_split(std::uint32_t node_count, std::uint32_t communities) {
  if (communities == 0) throw std::invalid_argument("community count must be positive");
  std::vector<std::uint32_t> sizes(communities, node_count / communities);
  for (std::uint32_t i = 0; i < node_count % communities; ++i) ++sizes[i];
  return sizes;
}

SyntheticTrace generate_synthetic_trace(const SyntheticScenarioConfig& scenario, std::uint64_t seed) {
  if (scenario.duration <= 0) throw std::invalid_argument("synthetic trace duration must be positive");
  if (scenario.granularity <= 0) throw std::invalid_argument("granularity must be positive");
  std::uint64_t members = 0;
  for (auto size : scenario.community_sizes) {
    if (size == 0) throw std::invalid_argument("empty community in synthetic scenario");
    members += size;
  }
  if (scenario.community_sizes.empty() || members != scenario.node_count) {
    throw std::invalid_argument("community sizes must partition the node set");
  }

  SyntheticTrace out;
  out.trace.node_count = scenario.node_count;
  out.trace.duration = scenario.duration;
  out.community.reserve(scenario.node_count);
  for (CommunityId c = 0; c < scenario.community_sizes.size(); ++c) {
    out.community.insert(out.community.end(), scenario.community_sizes[c], c);
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto exponential = [&](double mean) { return -mean * std::log1p(-unit(rng)); };

  const double horizon = static_cast<double>(scenario.duration);
  const std::int64_t g = scenario.granularity;

  // Poisson arrivals over [0, duration), one stream per (pair, kind).
  auto arrivals = [&](double per_day, auto&& emit) {
    if (per_day <= 0.0) return;
    const double mean_gap = kSecondsPerDay / per_day;
    for (double t = exponential(mean_gap); t < horizon; t += exponential(mean_gap)) emit(t);
  };

  for (NodeId a = 0; a < scenario.node_count; ++a) {
    for (NodeId b = a + 1; b < scenario.node_count; ++b) {
      const bool intra = out.community[a] == out.community[b];
      const double rate = intra ? scenario.intra_contact_rate : scenario.inter_contact_rate;
      const double mean_len = intra ? scenario.intra_contact_mean_s : scenario.inter_contact_mean_s;

      // Alternating renewal: exponential off-time at `rate`, exponential on-time.
      if (rate > 0.0) {
        const double mean_gap = kSecondsPerDay / rate;
        double t = 0.0;
        std::int64_t prev_end = 0;
        while (true) {
          const double start = t + exponential(mean_gap);
          if (start >= horizon) break;
          const double end = start + exponential(mean_len);
          std::int64_t s = std::max(static_cast<std::int64_t>(start) / g * g, prev_end);
          std::int64_t e = std::max(static_cast<std::int64_t>(std::llround(end / static_cast<double>(g))) * g, s + g);
          e = std::min(e, scenario.duration);
          t = end;
          if (s >= scenario.duration || e <= s) {
            if (s >= scenario.duration) break;
            continue;
          }
          out.trace.contacts.push_back({s, a, b, LinkEdge::up});
          out.trace.contacts.push_back({e, a, b, LinkEdge::down});
          prev_end = e;
        }
      }

      auto social = [&](SocialKind kind) {
        return [&, kind](double t) {
          const bool forward = unit(rng) < 0.5;
          out.trace.social.push_back({static_cast<std::int64_t>(t), forward ? a : b, forward ? b : a, kind});
        };
      };
      arrivals(intra ? scenario.intra_call_rate : scenario.inter_call_rate, social(SocialKind::call));
      arrivals(intra ? scenario.intra_text_rate : scenario.inter_text_rate, social(SocialKind::text));
    }
  }
  sort_trace(out.trace);
  return out;
}

std::vector<ContactInterval> contact_intervals(const ContactTrace& trace) {
  std::vector<ContactInterval> out;
  std::map<PairKey, std::size_t> open;
  for (const auto& e : trace.contacts) {
    const PairKey key = std::minmax(e.node_a, e.node_b);
    auto it = open.find(key);
    if (e.kind == LinkEdge::up) {
      if (it != open.end()) continue;
      open.emplace(key, out.size());
      out.push_back({key.first, key.second, e.time, trace.duration});
    } else if (it != open.end()) {
      out[it->second].end = e.time;
      open.erase(it);
    }
  }
  // Zero-length intervals carry no contact opportunity.
  std::erase_if(out, [](const ContactInterval& c) { return c.end <= c.start; });
  return out;
}

}  // namespace fsf
