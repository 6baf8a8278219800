// Batch driver: check / transform / priority / implications.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "limitlearn/harness.h"

namespace {

using limitlearn::ConfigError;
using limitlearn::ExperimentConfig;

struct Flags {
  std::string config;
  std::optional<std::string> seed, universe, depth, texts, prefix_len, tmax, format, out;
  std::vector<std::string> sets;  // extra key=value pairs
};

ExperimentConfig resolve(const Flags& f) {
  ExperimentConfig c;
  if (!f.config.empty()) c = limitlearn::load_config(f.config);
  auto apply = [&](const char* key, const std::optional<std::string>& v) {
    if (v) limitlearn::set_config_value(c, key, *v);
  };
  apply("seed", f.seed);
  apply("universe", f.universe);
  apply("depth", f.depth);
  apply("texts", f.texts);
  apply("prefix_len", f.prefix_len);
  apply("t_max", f.tmax);
  apply("format", f.format);
  for (const std::string& kv : f.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    limitlearn::set_config_value(c, kv.substr(0, eq), kv.substr(eq + 1));
  }
  return c;
}

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "key=value config file");
  cmd->add_option("--seed", f.seed);
  cmd->add_option("--universe", f.universe);
  cmd->add_option("--depth", f.depth);
  cmd->add_option("--texts", f.texts);
  cmd->add_option("--prefix-len", f.prefix_len);
  cmd->add_option("--tmax", f.tmax);
  cmd->add_option("--format", f.format, "tsv or jsonl");
  cmd->add_option("--out", f.out, "write the report here instead of stdout");
  cmd->add_option("--set", f.sets, "extra key=value overrides");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"limitlearn: learning restrictions, combinators and priority constructions"};
  app.require_subcommand(1);
  Flags flags;
  auto* check = app.add_subcommand("check", "run learners on texts and check restrictions");
  auto* transform = app.add_subcommand("transform", "apply a pipeline, report before/after");
  auto* priority = app.add_subcommand("priority", "run a priority construction");
  auto* implications = app.add_subcommand("implications", "per-sequence implication lattice");
  for (auto* cmd : {check, transform, priority, implications}) add_flags(cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    const ExperimentConfig config = resolve(flags);
    std::ofstream file;
    if (flags.out) {
      file.open(*flags.out);
      if (!file) throw ConfigError("cannot write '" + *flags.out + "'");
    }
    std::ostream& out = flags.out ? file : std::cout;

    if (priority->parsed()) {
      const limitlearn::PriorityOutput run = limitlearn::cmd_priority(config);
      out << run.trace;
      if (!run.table.empty()) out << "# table\n" << run.table;
      for (const std::string& v : run.violations) std::cerr << "invariant: " << v << '\n';
      return run.exit_code;
    }
    limitlearn::RunSummary summary;
    if (check->parsed()) {
      summary = limitlearn::cmd_check(config);
    } else if (transform->parsed()) {
      summary = limitlearn::cmd_transform(config);
    } else {
      summary = limitlearn::cmd_implications(config);
    }
    for (const auto& r : summary.records) limitlearn::write_record(out, r, config.format);
    return summary.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
