#include "fsf/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <random>
#include <string>

namespace fsf {

const char* to_string(ScanMode mode) {
  return mode == ScanMode::per_contact ? "per_contact" : "periodic";
}

ScanMode parse_scan_mode(std::string_view text) {
  if (text == "per_contact") return ScanMode::per_contact;
  if (text == "periodic") return ScanMode::periodic;
  throw std::invalid_argument("unknown scan mode '" + std::string(text) + "'");
}

std::uint64_t derive_seed(std::uint64_t seed, RngStream stream) {
  // splitmix64 finalizer over the seed and stream tag
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(stream) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<SelfishClass> assign_selfishness(std::uint32_t node_count, double individual_fraction,
                                             double social_fraction, std::uint64_t seed) {
  if (individual_fraction < 0.0 || social_fraction < 0.0 || individual_fraction + social_fraction > 1.0) {
    throw SimulationError("selfish fractions must be non-negative and sum to at most 1");
  }
  std::vector<NodeId> order(node_count);
  for (NodeId i = 0; i < node_count; ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  const auto individual = static_cast<std::size_t>(std::llround(individual_fraction * node_count));
  const auto social =
      std::min<std::size_t>(node_count - individual, static_cast<std::size_t>(std::llround(social_fraction * node_count)));
  std::vector<SelfishClass> out(node_count, SelfishClass::not_selfish);
  for (std::size_t i = 0; i < individual; ++i) out[order[i]] = SelfishClass::individually_selfish;
  for (std::size_t i = individual; i < individual + social; ++i) out[order[i]] = SelfishClass::socially_selfish;
  return out;
}

std::vector<ExpiredCopy> expire_messages(std::vector<NodeState>& nodes, SimTime now) {
  std::vector<ExpiredCopy> out;
  for (auto& node : nodes) {
    for (auto& m : node.buffer.expire(now)) out.push_back({node.id, std::move(m)});
  }
  return out;
}

namespace {

enum class EventKind : std::uint8_t {
  recharge = 0,
  transfer_complete = 1,
  contact_down = 2,
  social = 3,
  generate = 4,
  periodic_scan = 5,
  contact_up = 6,
  snapshot = 7,
};

struct Event {
  SimTime time = 0.0;
  EventKind kind = EventKind::recharge;
  std::uint64_t seq = 0;
  std::uint64_t index = 0;
};

struct Later {
  bool operator()(const Event& l, const Event& r) const {
    if (l.time != r.time) return l.time > r.time;
    if (l.kind != r.kind) return l.kind > r.kind;
    return l.seq > r.seq;
  }
};

using PairKey = std::pair<NodeId, NodeId>;

struct Link {
  NodeId a = 0;
  NodeId b = 0;
  SimTime start = 0.0;
  SimTime end = 0.0;
  std::uint64_t serial = 0;
  bool busy = false;
  bool dead = false;  // an aborted transfer ends all exchange on this contact
  int next_relay_dir = 0;
  // Direction 0 is a -> b.
  std::unordered_set<MessageId> considered[2];
  bool offered[2] = {false, false};
  bool selfish_refusal[2] = {false, false};
  Message in_flight;
  int in_flight_dir = 0;

  NodeId carrier(int dir) const { return dir == 0 ? a : b; }
  NodeId receiver(int dir) const { return dir == 0 ? b : a; }
};

Reason reason_of(RouteOutcome outcome) {
  switch (outcome) {
    case RouteOutcome::refused_individual: return Reason::selfish_individual;
    case RouteOutcome::refused_social: return Reason::selfish_social;
    case RouteOutcome::refused_resources: return Reason::resources;
    default: return Reason::none;
  }
}

class Simulation {
 public:
  Simulation(const ContactTrace& trace, const ScenarioConfig& scenario, const RouterConfig& router_config,
             std::uint64_t seed, const SimulationOptions& options)
      : trace_(trace),
        scenario_(scenario),
        router_config_(router_config),
        options_(options),
        router_(make_router(router_config)),
        detection_rng_(derive_seed(seed, RngStream::detection)) {
    const std::uint32_t n = trace.node_count;
    if (scenario.node_count != 0 && scenario.node_count != n) {
      throw SimulationError("scenario expects " + std::to_string(scenario.node_count) + " nodes, trace has " +
                            std::to_string(n));
    }
    if (!scenario.community.empty() && scenario.community.size() != n) {
      throw SimulationError("community assignment covers " + std::to_string(scenario.community.size()) +
                            " nodes, trace has " + std::to_string(n));
    }
    if (!(scenario.link_speed_bps > 0.0)) throw SimulationError("link speed must be positive");
    if (scenario.buffer_capacity == 0) throw SimulationError("buffer capacity must be positive");
    scenario.detection.check();

    community_ = scenario.community.empty() ? std::vector<CommunityId>(n, 0) : scenario.community;
    const auto truth = assign_selfishness(n, scenario.individually_selfish_fraction,
                                          scenario.socially_selfish_fraction,
                                          derive_seed(seed, RngStream::assignment));
    const BufferPolicy policy = scenario.buffer_policy.value_or(router_->default_buffer_policy());
    nodes_.reserve(n);
    for (NodeId i = 0; i < n; ++i) {
      nodes_.emplace_back(i, n, scenario.buffer_capacity, scenario.reputation.initial, scenario.energy.capacity);
      nodes_.back().policy = policy;
      nodes_.back().ground_truth = truth[i];
      nodes_.back().community = community_[i];
    }
    radio_on_.assign(n, true);
    friendship_cache_.assign(n, std::vector<std::int8_t>(n, -1));
    ledger_.consumed.assign(n, std::vector<double>(1, 0.0));
    ctx_.community = &community_;
    ctx_.energy = scenario.energy;

    if (scenario.messages.interval > 0.0 && std::isfinite(scenario.messages.interval)) {
      generator_.emplace(scenario.messages, n, derive_seed(seed, RngStream::messages));
    }
  }

  SimulationResult run() {
    const SimTime duration = static_cast<SimTime>(trace_.duration);
    intervals_ = contact_intervals(trace_);
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
      push(static_cast<SimTime>(intervals_[i].start), EventKind::contact_up, i);
      push(static_cast<SimTime>(intervals_[i].end), EventKind::contact_down, i);
    }
    for (std::size_t i = 0; i < trace_.social.size(); ++i) {
      push(static_cast<SimTime>(trace_.social[i].time), EventKind::social, i);
    }
    if (generator_ && generator_->next_boundary() <= generation_end(duration)) {
      push(generator_->next_boundary(), EventKind::generate, 0);
    }
    if (scenario_.energy.recharge_period > 0.0 && scenario_.energy.recharge_period <= duration) {
      push(scenario_.energy.recharge_period, EventKind::recharge, 1);
    }
    if (scenario_.scan_mode == ScanMode::periodic) {
      if (!(scenario_.scan_period > 0.0)) throw SimulationError("scan period must be positive");
      push(0.0, EventKind::periodic_scan, 0);
    }
    const SimTime snap = options_.reputation_snapshot_interval;
    if (snap > 0.0 && snap <= duration) push(snap, EventKind::snapshot, 1);

    while (!queue_.empty()) {
      const Event ev = queue_.top();
      queue_.pop();
      now_ = ev.time;
      run_expiry();
      dispatch(ev, duration);
      if (options_.check_invariants) check_invariants();
    }
    now_ = duration;
    run_expiry();
    log_.finish(duration);

    SimulationResult result;
    result.log = std::move(log_);
    result.nodes = std::move(nodes_);
    result.energy = std::move(ledger_);
    result.snapshots = std::move(snapshots_);
    return result;
  }

 private:
  SimTime generation_end(SimTime duration) const { return std::min(duration, scenario_.messages.stop); }

  void push(SimTime time, EventKind kind, std::uint64_t index) { queue_.push({time, kind, seq_++, index}); }

  void record(RecordType type, MessageId id, NodeId from, NodeId to, Reason reason = Reason::none) {
    log_.append({now_, type, id, from, to, reason});
  }

  bool charge(NodeId node, EnergyOp op) {
    auto out = consume_energy(nodes_[node].energy, op, scenario_.energy);
    if (!out.completed) return false;
    nodes_[node].energy = out.state;
    ledger_.consumed[node].back() += out.consumed;
    return true;
  }

  void run_expiry() {
    bool due = false;
    for (const auto& node : nodes_) due = due || node.buffer.earliest_expiry() < now_;
    if (!due) return;
    for (const auto& copy : expire_messages(nodes_, now_)) {
      record(RecordType::expired, copy.message.id, copy.holder, copy.message.destination);
    }
  }

  void dispatch(const Event& ev, SimTime duration) {
    switch (ev.kind) {
      case EventKind::recharge: on_recharge(duration); break;
      case EventKind::transfer_complete: on_transfer_complete(ev.index); break;
      case EventKind::contact_down: on_contact_down(intervals_[ev.index]); break;
      case EventKind::social: on_social(trace_.social[ev.index]); break;
      case EventKind::generate: on_generate(duration); break;
      case EventKind::periodic_scan: on_periodic_scan(duration); break;
      case EventKind::contact_up: on_contact_up(intervals_[ev.index]); break;
      case EventKind::snapshot: on_snapshot(ev.index, duration); break;
    }
  }

  void on_recharge(SimTime duration) {
    for (auto& node : nodes_) {
      node.energy = recharge(node.energy, scenario_.energy);
      ledger_.consumed[node.id].push_back(0.0);
      radio_on_[node.id] = true;
      record(RecordType::recharge, 0, node.id, node.id);
    }
    const SimTime next = now_ + scenario_.energy.recharge_period;
    if (next <= duration) push(next, EventKind::recharge, 0);
    for (auto& [key, link] : links_) pump(link);
  }

  void on_periodic_scan(SimTime duration) {
    for (auto& node : nodes_) {
      radio_on_[node.id] = charge(node.id, EnergyOp::scan);
      if (radio_on_[node.id]) record(RecordType::scan, 0, node.id, node.id);
    }
    const SimTime next = now_ + scenario_.scan_period;
    if (next <= duration) push(next, EventKind::periodic_scan, 0);
  }

  void on_social(const SocialEvent& ev) {
    auto bump = [&](NodeId self, NodeId peer) {
      auto& s = nodes_[self].contact_stats[peer];
      (ev.kind == SocialKind::call ? s.calls : s.texts) += 1;
    };
    bump(ev.from, ev.to);
    bump(ev.to, ev.from);
    stats_changed(ev.from, ev.to);
  }

  // Memoized per (node, peer); entries are reset whenever the pair's statistics change.
  Friendship friendship(NodeId self, NodeId peer) {
    auto& c = friendship_cache_[self][peer];
    if (c < 0) {
      c = static_cast<std::int8_t>(
          local_friendship(nodes_[self], peer, router_config_.model, router_config_.fsf.discretization));
    }
    return static_cast<Friendship>(c);
  }

  void stats_changed(NodeId x, NodeId y) {
    friendship_cache_[x][y] = -1;
    friendship_cache_[y][x] = -1;
  }

  // Inserts a copy at `holder`, logging evictions. Returns false if it did not fit.
  bool store(NodeId holder, const Message& msg) {
    auto& node = nodes_[holder];
    SocialOracle oracle;
    if (node.policy == BufferPolicy::drop_less_known) {
      oracle = [this, holder](NodeId dest) { return friendship(holder, dest); };
    }
    const auto result = buffer_insert(node.buffer, msg, node.policy, oracle);
    for (const auto& victim : result.dropped) {
      record(RecordType::dropped, victim.id, holder, victim.destination, Reason::overflow);
    }
    if (!result.inserted) record(RecordType::dropped, msg.id, holder, msg.destination, Reason::oversize);
    return result.inserted;
  }

  void on_generate(SimTime duration) {
    for (const auto& msg : generator_->generate(now_)) {
      record(RecordType::created, msg.id, msg.source, msg.destination);
      if (store(msg.source, msg)) wake(msg.source);
    }
    if (generator_->next_boundary() <= generation_end(duration)) {
      push(generator_->next_boundary(), EventKind::generate, 0);
    }
  }

  void on_contact_up(const ContactInterval& c) {
    bool established = true;
    if (scenario_.scan_mode == ScanMode::per_contact) {
      for (const auto& [self, peer] : {PairKey{c.node_a, c.node_b}, PairKey{c.node_b, c.node_a}}) {
        if (charge(self, EnergyOp::scan)) {
          record(RecordType::scan, 0, self, peer);
        } else {
          established = false;
        }
      }
    } else {
      established = radio_on_[c.node_a] && radio_on_[c.node_b];
    }
    if (!established) return;

    auto& na = nodes_[c.node_a];
    auto& nb = nodes_[c.node_b];
    na.contact_stats[nb.id].meetings += 1;
    nb.contact_stats[na.id].meetings += 1;
    stats_changed(na.id, nb.id);
    na.reputation.ensure(nb.id);
    nb.reputation.ensure(na.id);
    if (scenario_.merge_reputation && na.ground_truth == SelfishClass::not_selfish &&
        nb.ground_truth == SelfishClass::not_selfish) {
      const ReputationTable snap_a = na.reputation;
      merge_tables(na.reputation, nb.reputation);
      merge_tables(nb.reputation, snap_a);
    }
    router_->on_contact_up(na, nb, now_);

    Link link;
    link.a = c.node_a;
    link.b = c.node_b;
    link.start = static_cast<SimTime>(c.start);
    link.end = static_cast<SimTime>(c.end);
    link.serial = ++link_serial_;
    auto [it, inserted] = links_.insert_or_assign(PairKey{c.node_a, c.node_b}, std::move(link));
    pump(it->second);
  }

  void on_contact_down(const ContactInterval& c) {
    auto it = links_.find(PairKey{c.node_a, c.node_b});
    if (it == links_.end() || it->second.start != static_cast<SimTime>(c.start)) return;  // never established
    Link& link = it->second;
    const double seconds = link.end - link.start;
    for (const auto& [self, peer] : {PairKey{link.a, link.b}, PairKey{link.b, link.a}}) {
      auto& s = nodes_[self].contact_stats[peer];
      s.completed_contacts += 1;
      s.contact_seconds += seconds;
    }
    stats_changed(link.a, link.b);
    for (int dir = 0; dir < 2; ++dir) observe(link, dir);
    links_.erase(it);
  }

  // The carrier of `dir` judges the receiver once per contact.
  void observe(const Link& link, int dir) {
    auto& observer = nodes_[link.carrier(dir)];
    const auto& subject = nodes_[link.receiver(dir)];
    bool refusal = link.selfish_refusal[dir];
    if (!link.offered[dir]) {
      const Verdict v = relay_behavior(subject.profile(scenario_.energy), observer.community);
      refusal = v == Verdict::refused_individual || v == Verdict::refused_social;
    }
    const int detected = observe_contact(refusal, scenario_.detection, detection_rng_);
    update_reputation(observer.reputation, subject.id, detected, scenario_.reputation);
  }

  void wake(NodeId node) {
    for (auto& [key, link] : links_) {
      if (key.first == node || key.second == node) pump(link);
    }
  }

  bool both_can_afford(const Link& link) const {
    return can_afford(nodes_[link.a].energy, scenario_.energy) && can_afford(nodes_[link.b].energy, scenario_.energy);
  }

  // Starts the next transfer on an idle link, if any.
  void pump(Link& link) {
    if (link.busy || link.dead || !both_can_afford(link)) return;

    // Messages for the peer itself go first, a -> b then b -> a.
    for (int dir = 0; dir < 2; ++dir) {
      const auto& carrier = nodes_[link.carrier(dir)];
      const auto& receiver = nodes_[link.receiver(dir)];
      for (const auto& msg : carrier.buffer.messages()) {
        if (msg.destination != receiver.id || link.considered[dir].contains(msg.id)) continue;
        link.considered[dir].insert(msg.id);
        if (receiver.consumed.contains(msg.id)) continue;
        start(link, dir, msg);
        return;
      }
    }

    for (int step = 0; step < 2; ++step) {
      const int dir = step == 0 ? link.next_relay_dir : 1 - link.next_relay_dir;
      const auto& carrier = nodes_[link.carrier(dir)];
      const auto& receiver = nodes_[link.receiver(dir)];
      for (const auto& msg : carrier.buffer.messages()) {
        if (link.considered[dir].contains(msg.id)) continue;
        link.considered[dir].insert(msg.id);
        const RouteOutcome outcome = router_->decide(carrier, receiver, msg, ctx_);
        if (outcome == RouteOutcome::forward || is_refusal(outcome)) link.offered[dir] = true;
        if (is_refusal(outcome)) {
          if (is_selfish_refusal(outcome)) link.selfish_refusal[dir] = true;
          record(RecordType::refused, msg.id, carrier.id, receiver.id, reason_of(outcome));
          continue;
        }
        if (outcome != RouteOutcome::forward) continue;
        link.next_relay_dir = 1 - dir;
        start(link, dir, msg);
        return;
      }
    }
  }

  void start(Link& link, int dir, const Message& msg) {
    const auto t = transfer_message(msg, scenario_.link_speed_bps, link.end - now_);
    if (!t.completed) {
      record(RecordType::aborted, msg.id, link.carrier(dir), link.receiver(dir), Reason::contact_ended);
      link.dead = true;
      return;
    }
    link.busy = true;
    link.in_flight = msg;
    link.in_flight_dir = dir;
    push(now_ + t.duration, EventKind::transfer_complete, link.serial);
  }

  void on_transfer_complete(std::uint64_t serial) {
    auto it = std::find_if(links_.begin(), links_.end(), [serial](const auto& kv) { return kv.second.serial == serial; });
    if (it == links_.end()) return;
    Link& link = it->second;
    link.busy = false;
    const int dir = link.in_flight_dir;
    const NodeId from = link.carrier(dir);
    const NodeId to = link.receiver(dir);
    Message msg = link.in_flight;

    if (!nodes_[from].buffer.contains(msg.id)) {
      record(RecordType::aborted, msg.id, from, to, Reason::sender_lost);
    } else if (!both_can_afford(link)) {
      record(RecordType::aborted, msg.id, from, to, Reason::no_energy);
    } else {
      charge(from, EnergyOp::send);
      charge(to, EnergyOp::receive);
      msg.hop_count += 1;
      record(RecordType::forwarded, msg.id, from, to);
      if (msg.destination == to) {
        nodes_[to].consumed.insert(msg.id);
        record(RecordType::delivered, msg.id, from, to);
      } else if (store(to, msg)) {
        pump(link);
        wake(to);
        return;
      }
    }
    pump(link);
  }

  void on_snapshot(std::uint64_t k, SimTime duration) {
    for (const auto& node : nodes_) {
      for (const auto& [id, e] : node.reputation.entries()) {
        snapshots_.push_back({now_, node.id, id, e.value, e.observations});
      }
    }
    const SimTime next = static_cast<SimTime>(k + 1) * options_.reputation_snapshot_interval;
    if (next <= duration) push(next, EventKind::snapshot, k + 1);
  }

  void check_invariants() const {
    for (const auto& node : nodes_) {
      Bytes sum = 0;
      for (const auto& m : node.buffer.messages()) {
        sum += m.size;
        if (m.expired(now_)) throw std::logic_error("expired message still buffered at node " + std::to_string(node.id));
      }
      if (sum != node.buffer.used() || node.buffer.used() > node.buffer.capacity()) {
        throw std::logic_error("buffer accounting broken at node " + std::to_string(node.id));
      }
      if (node.energy.level < 0.0 || node.energy.level > scenario_.energy.capacity) {
        throw std::logic_error("energy out of range at node " + std::to_string(node.id));
      }
    }
  }

  const ContactTrace& trace_;
  const ScenarioConfig& scenario_;
  const RouterConfig& router_config_;
  SimulationOptions options_;
  std::unique_ptr<Router> router_;
  std::mt19937_64 detection_rng_;
  std::optional<MessageGenerator> generator_;

  std::vector<CommunityId> community_;
  std::vector<NodeState> nodes_;
  std::vector<bool> radio_on_;
  std::vector<std::vector<std::int8_t>> friendship_cache_;
  RoutingContext ctx_;
  std::vector<ContactInterval> intervals_;
  std::map<PairKey, Link> links_;
  std::uint64_t link_serial_ = 0;

  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::uint64_t seq_ = 0;
  SimTime now_ = 0.0;

  EventLog log_;
  EnergyLedger ledger_;
  std::vector<ReputationSnapshot> snapshots_;
};

}  // namespace

SimulationResult run_simulation(const ContactTrace& trace, const ScenarioConfig& scenario, const RouterConfig& router,
                                std::uint64_t seed, const SimulationOptions& options) {
  return Simulation(trace, scenario, router, seed, options).run();
}

}  // namespace fsf
