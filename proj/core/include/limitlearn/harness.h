#ifndef LIMITLEARN_HARNESS_H_
#define LIMITLEARN_HARNESS_H_

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "limitlearn/classes.h"
#include "limitlearn/criteria.h"
#include "limitlearn/learner.h"
#include "limitlearn/numbering.h"

namespace limitlearn {

/// Malformed configuration or an unknown name.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ReportFormat { kTsv, kJsonl };

/// Flat key=value experiment description. Unset keys keep these defaults.
struct ExperimentConfig {
  std::string experiment = "experiment";
  /// finite_sets, smon_separator, mon_separator or caut_inf_demo.
  std::string family = "finite_sets";
  Nat k_max = 3;
  Nat finite_max = 8;        // finite_sets: elements drawn from {0,…,finite_max}
  std::size_t finite_size = 4;  // finite_sets: largest member size
  /// Transform stages applied left to right.
  std::vector<std::string> pipeline;
  std::vector<Restriction> restrictions;
  /// Restrictions whose violations do not count as failures.
  std::vector<Restriction> expected_violations;
  Interaction interaction = Interaction::kG;
  std::size_t texts = 5;
  std::size_t prefix_len = 20;
  Nat seed = 1;
  Nat universe = 64;
  Nat depth = 200;
  Nat t_max = 4;
  std::string variant = "dec";  // priority: dec or sdec
  std::vector<std::string> pool;  // priority adversaries
  std::size_t sequences = 1000;  // implications
  bool negative_control = false;  // implications: add SMon => Conv
  bool wall_time = false;
  std::size_t threads = 1;
  ReportFormat format = ReportFormat::kTsv;
};

/// Applies one key=value pair; throws ConfigError for unknown keys or values.
void set_config_value(ExperimentConfig& config, const std::string& key,
                      const std::string& value);
/// Lines of key=value; '#' starts a comment.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

struct ReportRecord {
  std::string experiment;
  std::string phase;  // "before"/"after" for transforms, else empty
  std::string language;
  std::string text;
  std::string restriction;
  std::string verdict;
  std::string witness;
  std::size_t depth = 0;
  std::optional<double> wall_ms;
  bool expected = false;  // a violation listed as expected
};

void write_record(std::ostream& out, const ReportRecord& r, ReportFormat format);

struct RunSummary {
  std::vector<ReportRecord> records;
  /// 0 = everything Holds or is expected, 1 = unexpected violation.
  int exit_code = 0;
};

/// Languages, texts and a learner for one experiment.
struct Workload {
  std::string name;
  std::vector<std::pair<std::string, LanguageDescr>> languages;
  Learner learner;
  FamilyDescr family;
};

Workload make_workload(Registry& registry, const ExperimentConfig& config);

/// Applies one named stage; throws ConfigError for unknown names.
Learner apply_stage(Registry& registry, const Learner& h, const std::string& stage,
                    const std::vector<SetShape>& class_members);

RunSummary cmd_check(const ExperimentConfig& config);
RunSummary cmd_transform(const ExperimentConfig& config);
RunSummary cmd_implications(const ExperimentConfig& config);

struct PriorityOutput {
  std::string trace;  // tab-separated trace
  std::string table;  // learner table dump
  std::vector<std::string> violations;
  int exit_code = 0;
};

PriorityOutput cmd_priority(const ExperimentConfig& config);

/// Adversary programs by name: ind_empty, ind01, grow.
ProgramCode pool_program(Registry& registry, const std::string& name);

/// The learner that conjectures ℕ on data with an odd element or fewer than
/// two elements, and 2ℕ otherwise.
Learner caut_inf_demo_learner(Registry& registry);

}  // namespace limitlearn

#endif  // LIMITLEARN_HARNESS_H_
