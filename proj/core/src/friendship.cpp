#include "fsf/friendship.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace fsf {

const char* to_string(Level level) {
  switch (level) {
    case Level::weak: return "weak";
    case Level::average: return "average";
    case Level::high: return "high";
  }
  return "?";
}

const char* to_string(Attribute attribute) {
  switch (attribute) {
    case Attribute::fm: return "fm";
    case Attribute::cd: return "cd";
    case Attribute::ac: return "ac";
    case Attribute::atm: return "atm";
  }
  return "?";
}

const char* to_string(Friendship label) { return label == Friendship::strong ? "strong" : "weak"; }

Level parse_level(std::string_view text) {
  if (text == "weak") return Level::weak;
  if (text == "average") return Level::average;
  if (text == "high") return Level::high;
  throw FriendshipError("unknown attribute value '" + std::string(text) + "'");
}

Attribute parse_attribute(std::string_view text) {
  if (text == "fm") return Attribute::fm;
  if (text == "cd") return Attribute::cd;
  if (text == "ac") return Attribute::ac;
  if (text == "atm") return Attribute::atm;
  throw FriendshipError("unknown attribute '" + std::string(text) + "'");
}

Friendship parse_friendship(std::string_view text) {
  if (text == "weak") return Friendship::weak;
  if (text == "strong") return Friendship::strong;
  throw FriendshipError("unknown friendship label '" + std::string(text) + "'");
}

std::vector<Level> domain(Attribute attribute) {
  switch (attribute) {
    case Attribute::fm:
    case Attribute::cd: return {Level::weak, Level::average, Level::high};
    case Attribute::ac:
    case Attribute::atm: return {Level::weak, Level::high};
  }
  throw FriendshipError("unknown attribute");
}

bool in_domain(Attribute attribute, Level level) {
  if (static_cast<std::size_t>(attribute) >= kAttributeCount) return false;
  if (static_cast<std::size_t>(level) >= kLevelCount) return false;
  return !(level == Level::average && (attribute == Attribute::ac || attribute == Attribute::atm));
}

Level FriendshipInstance::operator[](Attribute attribute) const {
  switch (attribute) {
    case Attribute::fm: return fm;
    case Attribute::cd: return cd;
    case Attribute::ac: return ac;
    case Attribute::atm: return atm;
  }
  throw FriendshipError("unknown attribute");
}

void FriendshipInstance::check() const {
  for (auto a : kAttributes) {
    if (!in_domain(a, (*this)[a])) {
      throw FriendshipError(std::string("value '") + to_string((*this)[a]) + "' outside the domain of " + to_string(a));
    }
  }
}

std::vector<FriendshipInstance> all_instances() {
  std::vector<FriendshipInstance> out;
  for (auto fm : domain(Attribute::fm))
    for (auto cd : domain(Attribute::cd))
      for (auto ac : domain(Attribute::ac))
        for (auto atm : domain(Attribute::atm)) out.push_back({fm, cd, ac, atm});
  return out;
}

FriendshipInstance discretize_features(const PairObservation& stats, const DiscretizationConfig& t) {
  if (stats.meetings < 0 || stats.calls < 0 || stats.texts < 0 || stats.mean_contact_seconds < 0.0) {
    throw FriendshipError("negative contact statistics");
  }
  FriendshipInstance out;
  out.fm = stats.meetings <= t.fm_weak_max      ? Level::weak
           : stats.meetings <= t.fm_average_max ? Level::average
                                                : Level::high;
  out.cd = stats.mean_contact_seconds < t.cd_average_min  ? Level::weak
           : stats.mean_contact_seconds <= t.cd_high_above ? Level::average
                                                          : Level::high;
  out.ac = stats.calls >= t.ac_high_min ? Level::high : Level::weak;
  out.atm = stats.texts >= t.atm_high_min ? Level::high : Level::weak;
  return out;
}

std::uint64_t NBModel::cond_count(Attribute attribute, Level value, Friendship label) const {
  if (!in_domain(attribute, value)) {
    throw FriendshipError(std::string("value '") + to_string(value) + "' outside the domain of " + to_string(attribute));
  }
  return cond_counts_[static_cast<std::size_t>(attribute)][static_cast<std::size_t>(value)][index(label)];
}

void NBModel::add(const FriendshipInstance& instance, Friendship label) {
  instance.check();
  ++class_counts_[index(label)];
  for (auto a : kAttributes) {
    ++cond_counts_[static_cast<std::size_t>(a)][static_cast<std::size_t>(instance[a])][index(label)];
  }
  ++total_;
}

void NBModel::set_smoothing(double smoothing) {
  if (!(smoothing >= 0.0)) throw FriendshipError("smoothing must be >= 0");
  smoothing_ = smoothing;
}

NBModel train_naive_bayes(const FriendshipDataset& dataset, double smoothing) {
  if (dataset.empty()) throw FriendshipError("empty training dataset");
  NBModel model;
  model.set_smoothing(smoothing);
  for (const auto& row : dataset) model.add(row.instance, row.label);
  return model;
}

Ratio nb_prior_ratio(const NBModel& model, Friendship label) {
  const double k = model.smoothing();
  return {static_cast<double>(model.class_count(label)) + k,
          static_cast<double>(model.total()) + k * static_cast<double>(kLabelCount)};
}

double nb_prior(const NBModel& model, Friendship label) { return nb_prior_ratio(model, label).value(); }

Ratio nb_conditional_ratio(const NBModel& model, Attribute attribute, Level value, Friendship label) {
  const double k = model.smoothing();
  const auto domain_size = static_cast<double>(domain(attribute).size());
  return {static_cast<double>(model.cond_count(attribute, value, label)) + k,
          static_cast<double>(model.class_count(label)) + k * domain_size};
}

double nb_conditional(const NBModel& model, Attribute attribute, Level value, Friendship label) {
  return nb_conditional_ratio(model, attribute, value, label).value();
}

double nb_score(const NBModel& model, const FriendshipInstance& instance, Friendship label) {
  double score = nb_prior(model, label);
  for (auto a : kAttributes) score *= nb_conditional(model, a, instance[a], label);
  return score;
}

Friendship classify_friendship(const NBModel& model, const FriendshipInstance& instance) {
  return nb_score(model, instance, Friendship::strong) > nb_score(model, instance, Friendship::weak)
             ? Friendship::strong
             : Friendship::weak;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    out.push_back(first == std::string::npos ? std::string{} : cell.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

FriendshipDataset read_training_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  FriendshipDataset out;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv(line);
    if (!header) {
      if (cells != std::vector<std::string>{"fm", "cd", "ac", "atm", "strength"}) {
        throw FriendshipError("line " + std::to_string(line_no) + ": expected header fm,cd,ac,atm,strength");
      }
      header = true;
      continue;
    }
    if (cells.size() != 5) {
      throw FriendshipError("line " + std::to_string(line_no) + ": expected 5 columns");
    }
    try {
      LabeledInstance row{{parse_level(cells[0]), parse_level(cells[1]), parse_level(cells[2]), parse_level(cells[3])},
                          parse_friendship(cells[4])};
      row.instance.check();
      out.push_back(row);
    } catch (const FriendshipError& e) {
      throw FriendshipError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!header) throw FriendshipError("missing header fm,cd,ac,atm,strength");
  return out;
}

FriendshipDataset read_training_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FriendshipError("cannot open training file '" + path + "'");
  return read_training_csv(in);
}

void write_training_csv(const FriendshipDataset& dataset, std::ostream& out) {
  out << "fm,cd,ac,atm,strength\n";
  for (const auto& row : dataset) {
    const auto& i = row.instance;
    out << to_string(i.fm) << ',' << to_string(i.cd) << ',' << to_string(i.ac) << ',' << to_string(i.atm) << ','
        << to_string(row.label) << '\n';
  }
}

void write_model(const NBModel& model, std::ostream& out) {
  out << "kind,attribute,value,label,count\n";
  for (auto label : {Friendship::weak, Friendship::strong}) {
    out << "class,,," << to_string(label) << ',' << model.class_count(label) << '\n';
  }
  for (auto a : kAttributes) {
    for (auto v : domain(a)) {
      for (auto label : {Friendship::weak, Friendship::strong}) {
        out << "cond," << to_string(a) << ',' << to_string(v) << ',' << to_string(label) << ','
            << model.cond_count(a, v, label) << '\n';
      }
    }
  }
  out << "total,,,," << model.total() << '\n';
  out << "smoothing,,,," << model.smoothing() << '\n';
}

const FriendshipDataset& builtin_training_set() {
  using L = Level;
  using F = Friendship;
  static const FriendshipDataset rows = {
      {{L::weak, L::weak, L::weak, L::high}, F::weak},
      {{L::weak, L::weak, L::weak, L::weak}, F::weak},
      {{L::average, L::weak, L::weak, L::high}, F::weak},
      {{L::high, L::high, L::high, L::high}, F::weak},
      {{L::high, L::high, L::high, L::weak}, F::strong},
      {{L::high, L::high, L::high, L::weak}, F::strong},
      {{L::average, L::high, L::weak, L::high}, F::weak},
      {{L::weak, L::weak, L::high, L::high}, F::weak},
      {{L::high, L::high, L::high, L::weak}, F::strong},
      {{L::average, L::weak, L::weak, L::weak}, F::weak},
      {{L::average, L::weak, L::weak, L::high}, F::strong},
      {{L::high, L::high, L::high, L::high}, F::weak},
      {{L::weak, L::high, L::high, L::high}, F::strong},
      {{L::average, L::high, L::weak, L::weak}, F::weak},
      {{L::weak, L::high, L::high, L::high}, F::weak},
  };
  return rows;
}

}  // namespace fsf
