#include "fsf/router.hpp"

#include <stdexcept>
#include <string>

namespace fsf {

const char* to_string(RouterKind kind) {
  switch (kind) {
    case RouterKind::fsf: return "fsf";
    case RouterKind::epidemic: return "epidemic";
    case RouterKind::prophet: return "prophet";
  }
  return "?";
}

RouterKind parse_router_kind(std::string_view text) {
  if (text == "fsf") return RouterKind::fsf;
  if (text == "epidemic") return RouterKind::epidemic;
  if (text == "prophet") return RouterKind::prophet;
  throw std::invalid_argument("unknown router '" + std::string(text) + "'");
}

const char* to_string(RouteOutcome outcome) {
  switch (outcome) {
    case RouteOutcome::forward: return "forward";
    case RouteOutcome::skip_has_copy: return "has_copy";
    case RouteOutcome::skip_weak_friendship: return "weak_friendship";
    case RouteOutcome::skip_reputed_selfish: return "reputed_selfish";
    case RouteOutcome::skip_predictability: return "predictability";
    case RouteOutcome::refused_individual: return "selfish_individual";
    case RouteOutcome::refused_social: return "selfish_social";
    case RouteOutcome::refused_resources: return "resources";
  }
  return "?";
}

RouteOutcome from_verdict(Verdict v) {
  switch (v) {
    case Verdict::accept: return RouteOutcome::forward;
    case Verdict::reputed_selfish: return RouteOutcome::skip_reputed_selfish;
    case Verdict::refused_individual: return RouteOutcome::refused_individual;
    case Verdict::refused_social: return RouteOutcome::refused_social;
    case Verdict::refused_resources: return RouteOutcome::refused_resources;
  }
  return RouteOutcome::forward;
}

RouteOutcome epidemic_decision(const NodeState& /*carrier*/, const NodeState& relay, const Message& msg) {
  return relay.holds(msg.id) ? RouteOutcome::skip_has_copy : RouteOutcome::forward;
}

RouteOutcome prophet_decision(const NodeState& carrier, const NodeState& relay, const Message& msg) {
  if (relay.holds(msg.id)) return RouteOutcome::skip_has_copy;
  return relay.prophet.get(msg.destination) > carrier.prophet.get(msg.destination) ? RouteOutcome::forward
                                                                                    : RouteOutcome::skip_predictability;
}

RouteOutcome fsf_decision(const NodeState& carrier, const NodeState& relay, const Message& msg, const NBModel& model,
                          const FsfParams& params, const RoutingContext& ctx) {
  if (relay.holds(msg.id)) return RouteOutcome::skip_has_copy;
  // Step (i): the relay's record of the destination, as advertised at the contact.
  if (local_friendship(relay, msg.destination, model, params.discretization) != Friendship::strong) {
    return RouteOutcome::skip_weak_friendship;
  }
  // Step (ii)
  return from_verdict(selfishness_assessment(carrier.reputation, relay.profile(ctx.energy),
                                             ctx.community_of(msg.destination), params.assessment));
}

RouteOutcome EpidemicRouter::decide(const NodeState& carrier, const NodeState& relay, const Message& msg,
                                    const RoutingContext& ctx) const {
  const auto outcome = epidemic_decision(carrier, relay, msg);
  if (outcome != RouteOutcome::forward) return outcome;
  return from_verdict(relay_behavior(relay.profile(ctx.energy), ctx.community_of(msg.destination)));
}

ProphetRouter::ProphetRouter(ProphetParams params) : params_(params) { params_.check(); }

void ProphetRouter::on_contact_up(NodeState& a, NodeState& b, SimTime now) {
  prophet_update(a.prophet, b.prophet, now, params_);
}

RouteOutcome ProphetRouter::decide(const NodeState& carrier, const NodeState& relay, const Message& msg,
                                   const RoutingContext& ctx) const {
  const auto outcome = prophet_decision(carrier, relay, msg);
  if (outcome != RouteOutcome::forward) return outcome;
  return from_verdict(relay_behavior(relay.profile(ctx.energy), ctx.community_of(msg.destination)));
}

FsfRouter::FsfRouter(NBModel model, FsfParams params) : model_(std::move(model)), params_(params) {
  params_.assessment.resources.check();
}

RouteOutcome FsfRouter::decide(const NodeState& carrier, const NodeState& relay, const Message& msg,
                               const RoutingContext& ctx) const {
  return fsf_decision(carrier, relay, msg, model_, params_, ctx);
}

std::unique_ptr<Router> make_router(const RouterConfig& config) {
  switch (config.kind) {
    case RouterKind::fsf: return std::make_unique<FsfRouter>(config.model, config.fsf);
    case RouterKind::epidemic: return std::make_unique<EpidemicRouter>();
    case RouterKind::prophet: return std::make_unique<ProphetRouter>(config.prophet);
  }
  throw std::invalid_argument("unknown router kind");
}

}  // namespace fsf
