#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "limitlearn/harness.h"

namespace limitlearn {
namespace {

std::string serialize(const RunSummary& s, ReportFormat f = ReportFormat::kTsv) {
  std::ostringstream out;
  for (const ReportRecord& r : s.records) write_record(out, r, f);
  return out.str();
}

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

TEST(Config, ParsesKeysAndComments) {
  const ExperimentConfig c = parse(
      "# smon run\n"
      "experiment = smon\n"
      "family=smon_separator\n"
      "k_max=4  # members\n"
      "restrictions=Mon,SMon\n"
      "interaction=Sd\n"
      "pipeline=syndec,memoize\n"
      "format=jsonl\n");
  EXPECT_EQ(c.experiment, "smon");
  EXPECT_EQ(c.family, "smon_separator");
  EXPECT_EQ(c.k_max, 4u);
  EXPECT_EQ(c.restrictions, (std::vector<Restriction>{Restriction::kMon, Restriction::kSMon}));
  EXPECT_EQ(c.interaction, Interaction::kSd);
  EXPECT_EQ(c.pipeline, (std::vector<std::string>{"syndec", "memoize"}));
  EXPECT_EQ(c.format, ReportFormat::kJsonl);
  EXPECT_EQ(c.texts, ExperimentConfig{}.texts);
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(parse("colour=blue\n"), ConfigError);
  EXPECT_THROW(parse("k_max=three\n"), ConfigError);
  EXPECT_THROW(parse("restrictions=Mon,Nope\n"), ConfigError);
  EXPECT_THROW(parse("variant=fast\n"), ConfigError);
  EXPECT_THROW(parse("just a line\n"), ConfigError);
  EXPECT_THROW(parse("negative_control=maybe\n"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/config.cfg"), ConfigError);
}

TEST(Config, UnknownNamesFailAtUse) {
  ExperimentConfig c;
  c.family = "primes";
  EXPECT_THROW(cmd_check(c), ConfigError);
  Registry reg;
  EXPECT_THROW(pool_program(reg, "oracle"), ConfigError);
  EXPECT_THROW(apply_stage(reg, caut_inf_demo_learner(reg), "teleport", {}), ConfigError);
}

TEST(CmdCheck, SmonSeparator) {
  ExperimentConfig c;
  c.family = "smon_separator";
  c.k_max = 3;
  c.interaction = Interaction::kSd;
  c.restrictions = {Restriction::kMon, Restriction::kSMon};
  c.texts = 2;
  c.universe = 16;
  const RunSummary run = cmd_check(c);
  ASSERT_EQ(run.records.size(), 5u * 2 * 2);
  std::size_t smon_violations = 0;
  for (const ReportRecord& r : run.records) {
    if (r.restriction == "Mon") EXPECT_EQ(r.verdict, "Holds") << r.language;
    if (r.restriction == "SMon" && r.verdict == "ViolatedAt") ++smon_violations;
    EXPECT_EQ(r.depth, c.prefix_len);
  }
  EXPECT_GT(smon_violations, 0u);
  EXPECT_EQ(run.exit_code, 1);
  c.expected_violations = {Restriction::kSMon};
  EXPECT_EQ(cmd_check(c).exit_code, 0);
}

TEST(CmdCheck, NoRestrictionsNoRecords) {
  ExperimentConfig c;
  c.finite_max = 3;
  const RunSummary run = cmd_check(c);
  EXPECT_TRUE(run.records.empty());
  EXPECT_EQ(run.exit_code, 0);
}

TEST(CmdTransform, EmptyPipelineKeepsVerdicts) {
  ExperimentConfig c;
  c.finite_max = 3;
  c.finite_size = 2;
  c.texts = 1;
  c.restrictions = {Restriction::kConv, Restriction::kEx};
  const RunSummary run = cmd_transform(c);
  std::vector<std::string> before, after;
  for (const ReportRecord& r : run.records) {
    (r.phase == "before" ? before : after).push_back(r.language + r.text + r.restriction + r.verdict);
  }
  EXPECT_FALSE(before.empty());
  EXPECT_EQ(before, after);
  EXPECT_EQ(run.exit_code, 0);
}

TEST(CmdTransform, PipelineFixesCautInf) {
  ExperimentConfig c;
  c.family = "caut_inf_demo";
  c.universe = 16;
  c.texts = 2;
  c.pipeline = {"drop_caut_inf"};
  c.restrictions = {Restriction::kCautInf};
  c.expected_violations = {Restriction::kCautInf};
  bool violated_before = false;
  for (const ReportRecord& r : cmd_transform(c).records) {
    if (r.phase == "after") EXPECT_NE(r.verdict, "ViolatedAt") << r.language << r.text;
    if (r.phase == "before") violated_before = violated_before || r.verdict == "ViolatedAt";
  }
  EXPECT_TRUE(violated_before);
}

TEST(CmdPriority, ZeroStagesIsEmpty) {
  ExperimentConfig c;
  c.t_max = 0;
  const PriorityOutput out = cmd_priority(c);
  EXPECT_TRUE(out.trace.empty());
  EXPECT_TRUE(out.table.empty());
  EXPECT_EQ(out.exit_code, 0);
}

TEST(CmdPriority, SdecRunIsClean) {
  ExperimentConfig c;
  c.variant = "sdec";
  c.pool = {"ind_empty", "ind01", "grow"};
  c.t_max = 4;
  const PriorityOutput out = cmd_priority(c);
  EXPECT_TRUE(out.violations.empty());
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_FALSE(out.trace.empty());
}

TEST(CmdImplications, EmptyAndControl) {
  ExperimentConfig c;
  c.sequences = 0;
  EXPECT_TRUE(cmd_implications(c).records.empty());
  c.negative_control = true;
  bool found = false;
  for (const ReportRecord& r : cmd_implications(c).records) {
    found = found || (r.expected && r.verdict == "Counterexample");
  }
  EXPECT_TRUE(found);
}

TEST(CmdImplications, NoCounterexamples) {
  ExperimentConfig c;
  c.sequences = 200;
  c.seed = 9;
  const RunSummary run = cmd_implications(c);
  for (const ReportRecord& r : run.records) EXPECT_NE(r.verdict, "Counterexample") << r.restriction;
  EXPECT_EQ(run.exit_code, 0);
}

TEST(Determinism, SameConfigSameOutput) {
  ExperimentConfig c;
  c.family = "mon_separator";
  c.interaction = Interaction::kSd;
  c.restrictions = {Restriction::kMon, Restriction::kWMon};
  c.universe = 16;
  c.texts = 3;
  const std::string a = serialize(cmd_check(c));
  c.threads = 4;
  EXPECT_EQ(serialize(cmd_check(c)), a);
  c.seed = 2;
  EXPECT_NE(serialize(cmd_check(c)), a);
}

TEST(Report, JsonlRecords) {
  ReportRecord r;
  r.experiment = "e";
  r.language = "{0}";
  r.text = "t0";
  r.restriction = "Caut";
  r.verdict = "ViolatedAt";
  r.witness = "0,1";
  r.depth = 3;
  std::ostringstream out;
  write_record(out, r, ReportFormat::kJsonl);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["restriction"], "Caut");
  EXPECT_EQ(j["depth"], 3);
  EXPECT_FALSE(j.contains("wall_ms"));
  std::ostringstream tsv;
  write_record(tsv, r, ReportFormat::kTsv);
  EXPECT_EQ(tsv.str(), "e\t\t{0}\tt0\tCaut\tViolatedAt\t0,1\t3\n");
}

}  // namespace
}  // namespace limitlearn
