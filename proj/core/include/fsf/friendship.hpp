#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fsf {

// Categorical levels shared by all four attributes. FM and CD use all three;
// AC and ATM only {weak, high}.
enum class Level : std::uint8_t { weak = 0, average = 1, high = 2 };
enum class Attribute : std::uint8_t { fm = 0, cd = 1, ac = 2, atm = 3 };
enum class Friendship : std::uint8_t { weak = 0, strong = 1 };

inline constexpr std::size_t kAttributeCount = 4;
inline constexpr std::size_t kLevelCount = 3;
inline constexpr std::size_t kLabelCount = 2;
inline constexpr std::array<Attribute, kAttributeCount> kAttributes = {Attribute::fm, Attribute::cd, Attribute::ac,
                                                                       Attribute::atm};

const char* to_string(Level level);
const char* to_string(Attribute attribute);
const char* to_string(Friendship label);

Level parse_level(std::string_view text);
Attribute parse_attribute(std::string_view text);
Friendship parse_friendship(std::string_view text);

/// The values an attribute may take.
std::vector<Level> domain(Attribute attribute);
bool in_domain(Attribute attribute, Level level);

class FriendshipError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FriendshipInstance {
  Level fm = Level::weak;
  Level cd = Level::weak;
  Level ac = Level::weak;
  Level atm = Level::weak;

  Level operator[](Attribute attribute) const;
  /// Throws FriendshipError if a value is outside its attribute's domain.
  void check() const;

  friend bool operator==(const FriendshipInstance&, const FriendshipInstance&) = default;
};

/// All 3x3x2x2 instances in lexicographic order.
std::vector<FriendshipInstance> all_instances();

struct LabeledInstance {
  FriendshipInstance instance;
  Friendship label = Friendship::weak;
};
using FriendshipDataset = std::vector<LabeledInstance>;

// ---------------------------------------------------------------------------
// Feature discretization

struct PairObservation {
  std::int64_t meetings = 0;
  double mean_contact_seconds = 0.0;
  std::int64_t calls = 0;
  std::int64_t texts = 0;
};

/// Cut points. FM: <= fm_weak_max weak, <= fm_average_max average, above high.
/// CD: < cd_average_min weak, <= cd_high_above average, above high.
/// AC/ATM: >= *_high_min is high.
struct DiscretizationConfig {
  std::int64_t fm_weak_max = 4;
  std::int64_t fm_average_max = 15;
  double cd_average_min = 60.0;
  double cd_high_above = 300.0;
  std::int64_t ac_high_min = 1;
  std::int64_t atm_high_min = 1;
};

FriendshipInstance discretize_features(const PairObservation& stats, const DiscretizationConfig& thresholds = {});

// ---------------------------------------------------------------------------
// Categorical Naive Bayes

/// Exact count ratio, kept alongside the double for golden checks.
struct Ratio {
  double numerator = 0.0;
  double denominator = 0.0;
  double value() const { return denominator > 0.0 ? numerator / denominator : 0.0; }
};

class NBModel {
 public:
  NBModel() = default;

  std::uint64_t total() const { return total_; }
  std::uint64_t class_count(Friendship label) const { return class_counts_[index(label)]; }
  std::uint64_t cond_count(Attribute attribute, Level value, Friendship label) const;
  double smoothing() const { return smoothing_; }

  /// Adds one labeled tuple to the tallies.
  void add(const FriendshipInstance& instance, Friendship label);
  void set_smoothing(double smoothing);

  friend bool operator==(const NBModel&, const NBModel&) = default;

 private:
  static std::size_t index(Friendship l) { return static_cast<std::size_t>(l); }

  std::array<std::uint64_t, kLabelCount> class_counts_{};
  // [attribute][level][label]
  std::array<std::array<std::array<std::uint64_t, kLabelCount>, kLevelCount>, kAttributeCount> cond_counts_{};
  std::uint64_t total_ = 0;
  double smoothing_ = 0.0;
};

NBModel train_naive_bayes(const FriendshipDataset& dataset, double smoothing = 0.0);

Ratio nb_prior_ratio(const NBModel& model, Friendship label);
double nb_prior(const NBModel& model, Friendship label);
Ratio nb_conditional_ratio(const NBModel& model, Attribute attribute, Level value, Friendship label);
double nb_conditional(const NBModel& model, Attribute attribute, Level value, Friendship label);
/// Unnormalized: prior times the product of per-attribute conditionals.
double nb_score(const NBModel& model, const FriendshipInstance& instance, Friendship label);
/// strong iff score(strong) > score(weak); ties go to weak.
Friendship classify_friendship(const NBModel& model, const FriendshipInstance& instance);

// ---------------------------------------------------------------------------
// Training data I/O

/// CSV with header `fm,cd,ac,atm,strength`.
FriendshipDataset read_training_csv(std::istream& in);
FriendshipDataset read_training_csv_file(const std::string& path);
void write_training_csv(const FriendshipDataset& dataset, std::ostream& out);

/// Dumps model counts as `attribute,value,label,count` rows plus class rows.
void write_model(const NBModel& model, std::ostream& out);

/// The bundled 15-tuple training sample, CD/AC normalized no->weak, yes->high.
const FriendshipDataset& builtin_training_set();

}  // namespace fsf
