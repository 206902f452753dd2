#pragma once

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "fsf/friendship.hpp"
#include "fsf/message.hpp"
#include "fsf/node.hpp"
#include "fsf/prophet.hpp"
#include "fsf/selfishness.hpp"

namespace fsf {

enum class RouterKind : std::uint8_t { fsf, epidemic, prophet };

const char* to_string(RouterKind kind);
RouterKind parse_router_kind(std::string_view text);

enum class RouteOutcome : std::uint8_t {
  forward,
  skip_has_copy,
  skip_weak_friendship,
  skip_reputed_selfish,
  skip_predictability,
  refused_individual,  // relay-side refusals from here on
  refused_social,
  refused_resources,
};

const char* to_string(RouteOutcome outcome);
inline bool is_refusal(RouteOutcome o) { return o >= RouteOutcome::refused_individual; }
inline bool is_selfish_refusal(RouteOutcome o) {
  return o == RouteOutcome::refused_individual || o == RouteOutcome::refused_social;
}

/// What every decision may consult besides the two nodes and the message.
struct RoutingContext {
  const std::vector<CommunityId>* community = nullptr;
  EnergyConfig energy;
  SimTime now = 0.0;

  CommunityId community_of(NodeId id) const { return community ? community->at(id) : 0; }
};

struct FsfParams {
  DiscretizationConfig discretization;
  AssessmentParams assessment;
};

/// Epidemic: forward iff the relay lacks a copy.
RouteOutcome epidemic_decision(const NodeState& carrier, const NodeState& relay, const Message& msg);

/// PRoPHET: forward iff P(relay, dest) > P(carrier, dest).
RouteOutcome prophet_decision(const NodeState& carrier, const NodeState& relay, const Message& msg);

/// FSF: friendship between the relay and the destination (relay's advertised
/// statistics), then the selfishness assessment of the relay.
RouteOutcome fsf_decision(const NodeState& carrier, const NodeState& relay, const Message& msg, const NBModel& model,
                          const FsfParams& params, const RoutingContext& ctx);

RouteOutcome from_verdict(Verdict v);

class Router {
 public:
  virtual ~Router() = default;

  virtual RouterKind kind() const = 0;
  virtual BufferPolicy default_buffer_policy() const { return BufferPolicy::drop_oldest; }
  virtual void on_contact_up(NodeState& /*a*/, NodeState& /*b*/, SimTime /*now*/) {}

  /// Relay decision for a message the carrier holds; relay is not the destination.
  virtual RouteOutcome decide(const NodeState& carrier, const NodeState& relay, const Message& msg,
                              const RoutingContext& ctx) const = 0;
};

class EpidemicRouter final : public Router {
 public:
  RouterKind kind() const override { return RouterKind::epidemic; }
  RouteOutcome decide(const NodeState& carrier, const NodeState& relay, const Message& msg,
                      const RoutingContext& ctx) const override;
};

class ProphetRouter final : public Router {
 public:
  explicit ProphetRouter(ProphetParams params = {});
  RouterKind kind() const override { return RouterKind::prophet; }
  void on_contact_up(NodeState& a, NodeState& b, SimTime now) override;
  RouteOutcome decide(const NodeState& carrier, const NodeState& relay, const Message& msg,
                      const RoutingContext& ctx) const override;
  const ProphetParams& params() const { return params_; }

 private:
  ProphetParams params_;
};

class FsfRouter final : public Router {
 public:
  FsfRouter(NBModel model, FsfParams params);
  RouterKind kind() const override { return RouterKind::fsf; }
  BufferPolicy default_buffer_policy() const override { return BufferPolicy::drop_less_known; }
  RouteOutcome decide(const NodeState& carrier, const NodeState& relay, const Message& msg,
                      const RoutingContext& ctx) const override;
  const NBModel& model() const { return model_; }
  const FsfParams& params() const { return params_; }

 private:
  NBModel model_;
  FsfParams params_;
};

struct RouterConfig {
  RouterKind kind = RouterKind::fsf;
  ProphetParams prophet;
  FsfParams fsf;
  NBModel model;  // used by FSF and by drop_less_known buffers
};

std::unique_ptr<Router> make_router(const RouterConfig& config);

}  // namespace fsf
