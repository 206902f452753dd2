#include "fsf/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <set>
#include <sstream>

namespace fsf {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <typename T>
std::string fmt_int(T v) {
  return std::to_string(v);
}

template <typename T>
T number(const std::string& text, const std::string& key) {
  T value{};
  const auto t = trim(text);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("'" + key + "': not a number: '" + text + "'");
  }
  return value;
}

bool boolean(const std::string& text, const std::string& key) {
  const auto t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError("'" + key + "': expected true or false, got '" + text + "'");
}

std::vector<std::string> items(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
std::vector<T> number_list(const std::string& text, const std::string& key) {
  std::vector<T> out;
  for (const auto& item : items(text)) out.push_back(number<T>(item, key));
  return out;
}

template <typename T, typename F>
std::string join(const std::vector<T>& values, F f) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += f(values[i]);
  }
  return out;
}

Bytes megabytes(double mb, const std::string& key) {
  if (!(mb >= 0.0) || !std::isfinite(mb)) throw ConfigError("'" + key + "' must be a non-negative size");
  return static_cast<Bytes>(std::llround(mb * static_cast<double>(kBytesPerMB)));
}

double to_mb(Bytes b) { return static_cast<double>(b) / static_cast<double>(kBytesPerMB); }

struct Field {
  const char* section;
  const char* key;
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, const std::string&, const std::string&)> set;
};

#define FSF_DOUBLE(SEC, KEY, EXPR)                                                                    \
  Field {                                                                                             \
    SEC, KEY, [](const ExperimentConfig& c) { return fmt(c.EXPR); },                                  \
        [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.EXPR = number<double>(v, k); } \
  }
#define FSF_INT(SEC, KEY, TYPE, EXPR)                                                                \
  Field {                                                                                            \
    SEC, KEY, [](const ExperimentConfig& c) { return fmt_int(c.EXPR); },                             \
        [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.EXPR = number<TYPE>(v, k); } \
  }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"trace", "file", [](const ExperimentConfig& c) { return c.base.trace_file.value_or(""); },
       [](ExperimentConfig& c, const std::string& v, const std::string&) {
         const auto t = trim(v);
         c.base.trace_file = t.empty() ? std::nullopt : std::optional<std::string>(t);
       }},
      {"trace", "community",
       [](const ExperimentConfig& c) { return join(c.base.trace_community, [](CommunityId x) { return fmt_int(x); }); },
       [](ExperimentConfig& c, const std::string& v, const std::string& k) {
         c.base.trace_community = number_list<CommunityId>(v, k);
       }},

      FSF_INT("synthetic", "nodes", std::uint32_t, base.synthetic.node_count),
      {"synthetic", "community_sizes",
       [](const ExperimentConfig& c) {
         return join(c.base.synthetic.community_sizes, [](std::uint32_t x) { return fmt_int(x); });
       },
       [](ExperimentConfig& c, const std::string& v, const std::string& k) {
         c.base.synthetic.community_sizes = number_list<std::uint32_t>(v, k);
       }},
      FSF_INT("synthetic", "duration_s", std::int64_t, base.synthetic.duration),
      FSF_DOUBLE("synthetic", "intra_contact_rate", base.synthetic.intra_contact_rate),
      FSF_DOUBLE("synthetic", "inter_contact_rate", base.synthetic.inter_contact_rate),
      FSF_DOUBLE("synthetic", "intra_contact_mean_s", base.synthetic.intra_contact_mean_s),
      FSF_DOUBLE("synthetic", "inter_contact_mean_s", base.synthetic.inter_contact_mean_s),
      FSF_DOUBLE("synthetic", "intra_call_rate", base.synthetic.intra_call_rate),
      FSF_DOUBLE("synthetic", "inter_call_rate", base.synthetic.inter_call_rate),
      FSF_DOUBLE("synthetic", "intra_text_rate", base.synthetic.intra_text_rate),
      FSF_DOUBLE("synthetic", "inter_text_rate", base.synthetic.inter_text_rate),
      FSF_INT("synthetic", "granularity_s", std::int64_t, base.synthetic.granularity),

      {"scenario", "link_speed_kbps",
       [](const ExperimentConfig& c) { return fmt(c.base.scenario.link_speed_bps / kBitsPerKbit); },
       [](ExperimentConfig& c, const std::string& v, const std::string& k) {
         c.base.scenario.link_speed_bps = number<double>(v, k) * kBitsPerKbit;
       }},
      FSF_DOUBLE("scenario", "message_interval_s", base.scenario.messages.interval),
      {"scenario", "message_min_mb", [](const ExperimentConfig& c) { return fmt(to_mb(c.base.scenario.messages.min_size)); },
       [](ExperimentConfig& c, const std::string& v, const std::string& k) {
         c.base.scenario.messages.min_size = megabytes(number<double>(v, k), k);
       }},
      {"scenario", "message_max_mb", [](const ExperimentConfig& c) { return fmt(to_mb(c.base.scenario.messages.max_size)); },
       [](ExperimentConfig& c, const std::string& v, const std::string& k) {
         c.base.scenario.messages.max_size = megabytes(number<double>(v, k), k);
       }},
      FSF_DOUBLE("scenario", "ttl_s", base.scenario.messages.ttl),
      FSF_DOUBLE("scenario", "message_stop_s", base.scenario.messages.stop),
      FSF_DOUBLE("scenario", "individually_selfish", base.scenario.individually_selfish_fraction),
      FSF_DOUBLE("scenario", "socially_selfish", base.scenario.socially_selfish_fraction),
      {"scenario", "buffer_policy",
       [](const ExperimentConfig& c) {
         return c.base.scenario.buffer_policy ? std::string(to_string(*c.base.scenario.buffer_policy)) : "auto";
       },
       [](ExperimentConfig& c, const std::string& v, const std::string&) {
         const auto t = trim(v);
         c.base.scenario.buffer_policy = t == "auto" ? std::nullopt : std::optional(parse_buffer_policy(t));
       }},
      {"scenario", "scan_mode", [](const ExperimentConfig& c) { return std::string(to_string(c.base.scenario.scan_mode)); },
       [](ExperimentConfig& c, const std::string& v, const std::string&) {
         c.base.scenario.scan_mode = parse_scan_mode(trim(v));
       }},
      FSF_DOUBLE("scenario", "scan_period_s", base.scenario.scan_period),

      FSF_DOUBLE("energy", "capacity", base.scenario.energy.capacity),
      FSF_DOUBLE("energy", "cost_per_op", base.scenario.energy.cost_per_op),
      FSF_DOUBLE("energy", "recharge_period_s", base.scenario.energy.recharge_period),

      {"router", "training_csv", [](const ExperimentConfig& c) { return c.base.training_csv.value_or(""); },
       [](ExperimentConfig& c, const std::string& v, const std::string&) {
         const auto t = trim(v);
         c.base.training_csv = t.empty() ? std::nullopt : std::optional<std::string>(t);
       }},
      FSF_DOUBLE("router", "smoothing", base.smoothing),

      FSF_DOUBLE("fsf", "theta", base.router.fsf.assessment.theta),
      {"fsf", "estimate", [](const ExperimentConfig& c) { return std::string(to_string(c.base.router.fsf.assessment.estimate)); },
       [](ExperimentConfig& c, const std::string& v, const std::string&) {
         c.base.router.fsf.assessment.estimate = parse_estimate_mode(trim(v));
       }},
      FSF_INT("fsf", "fm_weak_max", std::int64_t, base.router.fsf.discretization.fm_weak_max),
      FSF_INT("fsf", "fm_average_max", std::int64_t, base.router.fsf.discretization.fm_average_max),
      FSF_DOUBLE("fsf", "cd_average_min_s", base.router.fsf.discretization.cd_average_min),
      FSF_DOUBLE("fsf", "cd_high_above_s", base.router.fsf.discretization.cd_high_above),
      FSF_INT("fsf", "ac_high_min", std::int64_t, base.router.fsf.discretization.ac_high_min),
      FSF_INT("fsf", "atm_high_min", std::int64_t, base.router.fsf.discretization.atm_high_min),

      FSF_DOUBLE("reputation", "initial", base.scenario.reputation.initial),
      FSF_DOUBLE("reputation", "delta", base.scenario.reputation.delta),
      {"reputation", "f_d", [](const ExperimentConfig& c) { return fmt(c.base.scenario.reputation.f_d); },
       [](ExperimentConfig& c, const std::string& v, const std::string& k) {
         c.base.scenario.reputation.f_d = number<double>(v, k);
         c.base.router.fsf.assessment.f_d = c.base.scenario.reputation.f_d;
       }},
      {"reputation", "neighbor_update",
       [](const ExperimentConfig& c) { return std::string(to_string(c.base.scenario.reputation.neighbor_update)); },
       [](ExperimentConfig& c, const std::string& v, const std::string&) {
         c.base.scenario.reputation.neighbor_update = parse_neighbor_update(trim(v));
       }},
      FSF_DOUBLE("reputation", "false_positive", base.scenario.detection.false_positive),
      FSF_DOUBLE("reputation", "false_negative", base.scenario.detection.false_negative),
      {"reputation", "merge", [](const ExperimentConfig& c) { return std::string(c.base.scenario.merge_reputation ? "true" : "false"); },
       [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.base.scenario.merge_reputation = boolean(v, k); }},
      FSF_INT("reputation", "min_observations", std::uint64_t, base.maturity.min_observations),
      FSF_DOUBLE("reputation", "separation", base.maturity.separation),
      {"reputation", "cluster_feature", [](const ExperimentConfig& c) { return std::string(to_string(c.base.maturity.feature)); },
       [](ExperimentConfig& c, const std::string& v, const std::string&) {
         c.base.maturity.feature = parse_cluster_feature(trim(v));
       }},

      FSF_DOUBLE("prophet", "p_init", base.router.prophet.p_init),
      FSF_DOUBLE("prophet", "gamma", base.router.prophet.gamma),
      FSF_DOUBLE("prophet", "beta", base.router.prophet.beta),
      FSF_DOUBLE("prophet", "time_unit_s", base.router.prophet.time_unit),

      {"experiment", "routers",
       [](const ExperimentConfig& c) { return join(c.routers, [](RouterKind r) { return std::string(to_string(r)); }); },
       [](ExperimentConfig& c, const std::string& v, const std::string&) {
         c.routers.clear();
         for (const auto& item : items(v)) c.routers.push_back(parse_router_kind(item));
       }},
      {"experiment", "buffers_mb", [](const ExperimentConfig& c) { return join(c.buffers_mb, fmt); },
       [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.buffers_mb = number_list<double>(v, k); }},
      {"experiment", "alphas", [](const ExperimentConfig& c) { return join(c.alphas, fmt); },
       [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.alphas = number_list<double>(v, k); }},
      {"experiment", "betas", [](const ExperimentConfig& c) { return join(c.betas, fmt); },
       [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.betas = number_list<double>(v, k); }},
      {"experiment", "seeds",
       [](const ExperimentConfig& c) { return join(c.seeds, [](std::uint64_t s) { return fmt_int(s); }); },
       [](ExperimentConfig& c, const std::string& v, const std::string& k) {
         c.seeds = number_list<std::uint64_t>(v, k);
       }},
      FSF_INT("experiment", "threads", unsigned, threads),
  };
  return table;
}

#undef FSF_DOUBLE
#undef FSF_INT

}  // namespace

void ExperimentConfig::check() const {
  if (seeds.empty()) throw ConfigError("experiment needs at least one seed");
  if (routers.empty()) throw ConfigError("experiment needs at least one router");
  if (buffers_mb.empty()) throw ConfigError("experiment needs at least one buffer size");
  for (double b : buffers_mb) {
    if (!(b > 0.0)) throw ConfigError("buffer sizes must be positive");
  }
  if (alphas.empty() || betas.empty()) throw ConfigError("experiment needs alpha and beta values");
  for (double a : alphas) ResourceThresholds{a, 0.5}.check();
  for (double b : betas) ResourceThresholds{0.5, b}.check();
  if (base.scenario.messages.min_size > base.scenario.messages.max_size) {
    throw ConfigError("message_min_mb exceeds message_max_mb");
  }
}

ExperimentConfig parse_config(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(e.what());
  }

  ExperimentConfig config;
  std::set<std::pair<std::string, std::string>> known;
  for (const auto& f : fields()) known.emplace(f.section, f.key);

  for (const auto& [section, body] : tree) {
    if (!body.data().empty()) throw ConfigError("key '" + section + "' outside a section");
    for (const auto& [key, value] : body) {
      if (!known.contains({section, key})) throw ConfigError("unknown key [" + section + "] " + key);
    }
  }
  for (const auto& f : fields()) {
    const auto value = tree.get_optional<std::string>(pt::ptree::path_type(std::string(f.section) + "/" + f.key, '/'));
    if (!value) continue;
    try {
      f.set(config, *value, std::string(f.section) + "." + f.key);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(std::string("[") + f.section + "] " + f.key + ": " + e.what());
    }
  }
  config.check();
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse_config(in);
}

void write_config(const ExperimentConfig& config, std::ostream& out) {
  std::string section;
  for (const auto& f : fields()) {
    if (section != f.section) {
      if (!section.empty()) out << '\n';
      section = f.section;
      out << '[' << section << "]\n";
    }
    out << f.key << " = " << f.get(config) << '\n';
  }
}

void prepare_model(RunConfig& config) {
  const FriendshipDataset data =
      config.training_csv ? read_training_csv_file(*config.training_csv) : builtin_training_set();
  config.router.model = train_naive_bayes(data, config.smoothing);
}

}  // namespace fsf
