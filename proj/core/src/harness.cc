#include "limitlearn/harness.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "limitlearn/combinators.h"
#include "limitlearn/oracle.h"
#include "limitlearn/priority.h"

namespace limitlearn {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Nat parse_nat(const std::string& key, const std::string& value) {
  Nat out = 0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("'" + key + "' needs a natural number, got '" + value + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("'" + key + "' needs true or false, got '" + value + "'");
}

std::vector<Restriction> parse_restrictions(const std::string& value) {
  std::vector<Restriction> out;
  for (const std::string& name : split_list(value)) {
    auto r = parse_restriction(name);
    if (!r) throw ConfigError("unknown restriction '" + name + "'");
    out.push_back(*r);
  }
  return out;
}

}  // namespace

void set_config_value(ExperimentConfig& c, const std::string& raw_key,
                      const std::string& raw_value) {
  std::string key = trim(raw_key);
  std::replace(key.begin(), key.end(), '-', '_');
  const std::string value = trim(raw_value);
  if (key == "experiment") {
    c.experiment = value;
  } else if (key == "family") {
    c.family = value;
  } else if (key == "k_max") {
    c.k_max = parse_nat(key, value);
  } else if (key == "finite_max") {
    c.finite_max = parse_nat(key, value);
  } else if (key == "finite_size") {
    c.finite_size = parse_nat(key, value);
  } else if (key == "pipeline") {
    c.pipeline = split_list(value);
  } else if (key == "restrictions") {
    c.restrictions = parse_restrictions(value);
  } else if (key == "expected_violations") {
    c.expected_violations = parse_restrictions(value);
  } else if (key == "interaction") {
    auto op = parse_interaction(value);
    if (!op) throw ConfigError("unknown interaction '" + value + "'");
    c.interaction = *op;
  } else if (key == "texts") {
    c.texts = parse_nat(key, value);
  } else if (key == "prefix_len") {
    c.prefix_len = parse_nat(key, value);
  } else if (key == "seed") {
    c.seed = parse_nat(key, value);
  } else if (key == "universe") {
    c.universe = parse_nat(key, value);
  } else if (key == "depth") {
    c.depth = parse_nat(key, value);
  } else if (key == "t_max" || key == "tmax") {
    c.t_max = parse_nat(key, value);
  } else if (key == "variant") {
    if (value != "dec" && value != "sdec") {
      throw ConfigError("variant must be dec or sdec, got '" + value + "'");
    }
    c.variant = value;
  } else if (key == "pool") {
    c.pool = split_list(value);
  } else if (key == "sequences") {
    c.sequences = parse_nat(key, value);
  } else if (key == "negative_control") {
    c.negative_control = parse_bool(key, value);
  } else if (key == "wall_time") {
    c.wall_time = parse_bool(key, value);
  } else if (key == "threads") {
    c.threads = std::max<Nat>(1, parse_nat(key, value));
  } else if (key == "format") {
    if (value == "tsv") {
      c.format = ReportFormat::kTsv;
    } else if (value == "jsonl") {
      c.format = ReportFormat::kJsonl;
    } else {
      throw ConfigError("format must be tsv or jsonl, got '" + value + "'");
    }
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected key=value");
    }
    set_config_value(base, line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse_config(in, std::move(base));
}

void write_record(std::ostream& out, const ReportRecord& r, ReportFormat format) {
  if (format == ReportFormat::kJsonl) {
    nlohmann::ordered_json j;
    j["experiment"] = r.experiment;
    j["phase"] = r.phase;
    j["language"] = r.language;
    j["text"] = r.text;
    j["restriction"] = r.restriction;
    j["verdict"] = r.verdict;
    j["witness"] = r.witness;
    j["depth"] = r.depth;
    if (r.wall_ms) j["wall_ms"] = *r.wall_ms;
    out << j.dump() << '\n';
    return;
  }
  out << r.experiment << '\t' << r.phase << '\t' << r.language << '\t' << r.text << '\t'
      << r.restriction << '\t' << r.verdict << '\t' << r.witness << '\t' << r.depth;
  if (r.wall_ms) out << '\t' << *r.wall_ms;
  out << '\n';
}

Learner caut_inf_demo_learner(Registry& registry) {
  const ProgramCode all = registry.naturals();
  const ProgramCode evens = registry.evens();
  return Learner::set_driven("caut_inf_demo", [all, evens](const NatSet& d) -> Conjecture {
    if (d.size() < 2) return all;
    for (Nat x : d) {
      if (x % 2 == 1) return all;
    }
    return evens;
  });
}

Workload make_workload(Registry& registry, const ExperimentConfig& config) {
  Workload w{config.family, {}, finite_sets_learner(registry), {}};
  if (config.family == "finite_sets") {
    NatSet universe;
    for (Nat x = 0; x <= config.finite_max; ++x) universe.insert(x);
    if (universe.size() > 16) throw ConfigError("finite_max above 15 is too large");
    w.family.name = "finite_sets";
    for (const NatSet& d : subsets_of(universe)) {
      if (d.size() > config.finite_size) continue;
      const LanguageDescr descr = LanguageDescr::finite(d, config.universe);
      w.languages.emplace_back(to_string(d), descr);
      w.family.members.push_back({to_string(d), descr, registry.ind(d)});
    }
    return w;
  }
  if (config.family == "smon_separator" || config.family == "mon_separator") {
    SeparatedFamily s = config.family == "smon_separator"
                            ? smon_separator(registry, config.k_max)
                            : mon_separator(registry, config.k_max);
    for (FamilyMember& m : s.family.members) {
      m.language.universe = config.universe;
      w.languages.emplace_back(m.name, m.language);
    }
    w.learner = s.learner;
    w.family = s.family;
    return w;
  }
  if (config.family == "caut_inf_demo") {
    w.learner = caut_inf_demo_learner(registry);
    w.family.name = "caut_inf_demo";
    w.family.members = {{"2N", LanguageDescr::evens(config.universe), registry.evens()},
                        {"N", LanguageDescr::all_naturals(config.universe), registry.naturals()}};
    for (const FamilyMember& m : w.family.members) w.languages.emplace_back(m.name, m.language);
    return w;
  }
  throw ConfigError("unknown family '" + config.family + "'");
}

Learner apply_stage(Registry& registry, const Learner& h, const std::string& stage,
                    const std::vector<SetShape>& class_members) {
  try {
    if (stage == "memoize") return memoize(h);
    if (stage == "syndec") return syndec(registry, h).learner;
    if (stage == "locking") return strongly_locking(h).learner;
    if (stage == "conv_sdec_caut") return conv_to_sdec_caut(registry, h).learner;
    if (stage == "cautvar_conv") return cautvar_to_conv(registry, h, CautVariant::kCaut).learner;
    if (stage == "cautvar_conv_tar") {
      return cautvar_to_conv(registry, h, CautVariant::kCautTar).learner;
    }
    if (stage == "cautvar_conv_fin") {
      return cautvar_to_conv(registry, h, CautVariant::kCautFin).learner;
    }
    if (stage == "drop_caut_inf") return drop_caut_inf(registry, h).learner;
    if (stage == "sd_syndec") return sd_syndec(registry, h);
    if (stage == "sd_conv_sdec_caut") return sd_to_conv_sdec_caut(registry, h);
    if (stage == "poison") {
      return poison_with_N(registry, h, PoisonFamily::residues(), class_members).learner;
    }
    if (stage == "totalize") {
      const ProgramCode e =
          registry.learner_program(h.name(), [h](const Sequence& s) { return h(s); });
      return totalize(registry, e).learner;
    }
  } catch (const PreconditionError& err) {
    throw ConfigError("stage '" + stage + "' on " + h.name() + ": " + err.what());
  }
  throw ConfigError("unknown transform stage '" + stage + "'");
}

namespace {

std::string witness_of(const Verdict& v) {
  std::string out;
  for (std::size_t i = 0; i < v.indices.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v.indices[i]);
  }
  if (v.converged_by) out += "converged_by=" + std::to_string(*v.converged_by);
  if (v.datum) out += (out.empty() ? "" : ";") + std::string("datum=") + std::to_string(*v.datum);
  return out;
}

struct TextJob {
  std::size_t language;
  std::string language_name;
  std::size_t text_index;
  TextSource text;
};

std::vector<TextJob> make_jobs(const Workload& w, const ExperimentConfig& config) {
  std::vector<TextJob> jobs;
  for (std::size_t i = 0; i < w.languages.size(); ++i) {
    const auto& [name, descr] = w.languages[i];
    const SetShape shape = *descr.shape();
    const std::size_t required =
        shape.is_finite() ? shape.finite_elements().size() : shape.elements_upto(descr.universe).size();
    const std::size_t window = std::max(config.prefix_len, required);
    const Nat seed = config.seed * 1000003u + i;
    std::vector<TextSource> texts = sample_texts(descr, config.texts, window, seed);
    for (std::size_t k = 0; k < texts.size(); ++k) {
      jobs.push_back({i, name, k, std::move(texts[k])});
    }
  }
  return jobs;
}

/// Runs `task` on every index, filling per-index slots, on `threads` workers.
template <typename Task>
void run_parallel(std::size_t count, std::size_t threads, Task task) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  std::exception_ptr failure;
  std::mutex failure_mu;
  for (std::size_t t = 0; t < std::min(threads, count); ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

bool is_expected(const ExperimentConfig& config, Restriction r) {
  return std::find(config.expected_violations.begin(), config.expected_violations.end(), r) !=
         config.expected_violations.end();
}

std::vector<ReportRecord> check_learner(const Learner& h, const std::string& phase,
                                        const std::vector<TextJob>& jobs,
                                        const LanguageOracle& oracle,
                                        const ExperimentConfig& config) {
  std::vector<std::vector<ReportRecord>> slots(jobs.size());
  run_parallel(jobs.size(), config.threads, [&](std::size_t i) {
    const TextJob& job = jobs[i];
    const HypothesisSequence p =
        run_interaction(config.interaction, h, job.text, config.prefix_len);
    for (Restriction r : config.restrictions) {
      const auto start = std::chrono::steady_clock::now();
      ReportRecord rec;
      rec.experiment = config.experiment;
      rec.phase = phase;
      rec.language = job.language_name;
      rec.text = "t" + std::to_string(job.text_index);
      rec.restriction = restriction_name(r);
      rec.depth = p.size();
      try {
        const Verdict v = check(r, p, job.text, oracle);
        rec.verdict = outcome_name(v.outcome);
        rec.witness = witness_of(v);
        rec.expected = v.violated() && is_expected(config, r);
      } catch (const PreconditionError& err) {
        rec.verdict = "Error";
        rec.witness = err.what();
      }
      if (config.wall_time) {
        rec.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
      }
      slots[i].push_back(std::move(rec));
    }
  });
  std::vector<ReportRecord> out;
  for (auto& s : slots) {
    for (auto& r : s) out.push_back(std::move(r));
  }
  return out;
}

int exit_code_of(const std::vector<ReportRecord>& records) {
  for (const ReportRecord& r : records) {
    if ((r.verdict == "ViolatedAt" && !r.expected) || r.verdict == "Error") return 1;
  }
  return 0;
}

}  // namespace

RunSummary cmd_check(const ExperimentConfig& config) {
  Registry registry;
  Workload w = make_workload(registry, config);
  LanguageOracle oracle(registry, config.universe, config.depth);
  w.family.declare(oracle);
  Learner h = w.learner;
  for (const std::string& stage : config.pipeline) {
    h = apply_stage(registry, h, stage, w.family.shapes());
  }
  RunSummary out;
  if (config.restrictions.empty()) return out;
  out.records = check_learner(h, "", make_jobs(w, config), oracle, config);
  out.exit_code = exit_code_of(out.records);
  return out;
}

RunSummary cmd_transform(const ExperimentConfig& config) {
  Registry registry;
  Workload w = make_workload(registry, config);
  LanguageOracle oracle(registry, config.universe, config.depth);
  w.family.declare(oracle);
  Learner after = w.learner;
  for (const std::string& stage : config.pipeline) {
    after = apply_stage(registry, after, stage, w.family.shapes());
  }
  RunSummary out;
  if (config.restrictions.empty()) return out;
  const std::vector<TextJob> jobs = make_jobs(w, config);
  std::vector<ReportRecord> before = check_learner(w.learner, "before", jobs, oracle, config);
  std::vector<ReportRecord> post = check_learner(after, "after", jobs, oracle, config);
  out.exit_code = exit_code_of(post);
  // Interleave so each (text, restriction) shows its before/after pair.
  for (std::size_t i = 0; i < before.size(); ++i) {
    before[i].expected = true;
    out.records.push_back(std::move(before[i]));
    out.records.push_back(std::move(post[i]));
  }
  return out;
}

namespace {

struct Implication {
  std::string name;
  std::vector<Restriction> premise;
  std::vector<Restriction> conclusion;
  bool both_ways = false;
  bool control = false;
};

std::vector<Implication> lattice() {
  using R = Restriction;
  return {
      {"SDec=>Dec", {R::kSDec}, {R::kDec}},
      {"SDec=>SNU", {R::kSDec}, {R::kSNU}},
      {"SNU=>NU", {R::kSNU}, {R::kNU}},
      {"Dec=>NU", {R::kDec}, {R::kNU}},
      {"SDec=>SynDec", {R::kSDec}, {R::kSynDec}},
      {"SMon=>Mon", {R::kSMon}, {R::kMon}},
      {"SMon=>WMon", {R::kSMon}, {R::kWMon}},
      {"Conv=>WMon", {R::kConv}, {R::kWMon}},
      {"Caut<=>Caut_Fin&Caut_Inf", {R::kCaut}, {R::kCautFin, R::kCautInf}, true},
  };
}

/// Tri-valued conjunction of the verdicts.
Tri all_hold(const std::vector<Restriction>& rs, const HypothesisSequence& p,
             const TextSource& text, const LanguageOracle& oracle) {
  Tri out = Tri::kTrue;
  for (Restriction r : rs) {
    const Verdict v = check(r, p, text, oracle);
    out = tri_and(out, v.holds() ? Tri::kTrue : v.violated() ? Tri::kFalse : Tri::kUnknown);
  }
  return out;
}

/// "Holds", "Vacuous", "Unknown" or "Counterexample".
std::string evaluate(const Implication& imp, const HypothesisSequence& p,
                     const TextSource& text, const LanguageOracle& oracle) {
  const Tri a = all_hold(imp.premise, p, text, oracle);
  const Tri b = all_hold(imp.conclusion, p, text, oracle);
  if (imp.both_ways) {
    if (a == Tri::kUnknown || b == Tri::kUnknown) return "Unknown";
    return a == b ? "Holds" : "Counterexample";
  }
  if (a == Tri::kFalse) return "Vacuous";
  if (a == Tri::kUnknown) return "Unknown";
  if (b == Tri::kFalse) return "Counterexample";
  return b == Tri::kTrue ? "Holds" : "Unknown";
}

struct RandomCase {
  LanguageDescr target;
  TextSource text;
  HypothesisSequence p;
};

RandomCase random_case(Registry& registry, DeterministicRng& rng, Nat universe,
                       std::size_t index) {
  auto random_set = [&](Nat max_elem, std::size_t max_size) {
    NatSet d;
    const std::size_t size = rng.below(max_size + 1);
    while (d.size() < size) d.insert(rng.below(max_elem + 1));
    return d;
  };
  LanguageDescr target = rng.below(5) == 0 ? LanguageDescr::evens(universe)
                                          : LanguageDescr::finite(random_set(5, 4), universe);
  const SetShape shape = *target.shape();
  const std::size_t required =
      shape.is_finite() ? shape.finite_elements().size() : shape.elements_upto(universe).size();
  const std::size_t len = 1 + rng.below(7);
  TextSource text = sample_texts(target, 1, std::max(len, required), rng.next())[0];

  // A small palette so that conjectures repeat, both syntactically and
  // semantically (padded copies).
  std::vector<ProgramCode> palette;
  const std::size_t colours = 2 + rng.below(4);
  for (std::size_t i = 0; i < colours; ++i) {
    switch (rng.below(6)) {
      case 0:
        palette.push_back(registry.evens());
        break;
      case 1:
        palette.push_back(registry.naturals());
        break;
      case 2:
        palette.push_back(registry.pad(registry.ind(random_set(5, 4)), BigNat(1 + index % 3)));
        break;
      default:
        palette.push_back(registry.ind(random_set(5, 4)));
        break;
    }
  }
  HypothesisSequence p(len);
  for (auto& c : p) c = palette[rng.below(palette.size())];
  return {std::move(target), std::move(text), std::move(p)};
}

}  // namespace

RunSummary cmd_implications(const ExperimentConfig& config) {
  Registry registry;
  LanguageOracle oracle(registry, config.universe, config.depth);
  DeterministicRng rng(config.seed);
  std::vector<RandomCase> cases;
  for (std::size_t i = 0; i < config.sequences; ++i) {
    cases.push_back(random_case(registry, rng, config.universe, i));
  }
  std::vector<Implication> imps = lattice();
  if (config.negative_control) {
    imps.push_back({"SMon=>Conv", {Restriction::kSMon}, {Restriction::kConv}, false, true});
    // Known counterexample: ind{0,1} then ind{0,1,2} on 0,1,2.
    const NatSet small{0, 1}, big{0, 1, 2};
    cases.push_back({LanguageDescr::finite(big, config.universe),
                     TextSource::scripted(make_sequence({0, 1, 2}), "control"),
                     {registry.ind(small), registry.ind(big)}});
  }
  RunSummary out;
  std::vector<std::vector<ReportRecord>> slots(cases.size());
  run_parallel(cases.size(), config.threads, [&](std::size_t i) {
    const RandomCase& c = cases[i];
    for (const Implication& imp : imps) {
      ReportRecord rec;
      rec.experiment = config.experiment;
      rec.language = c.target.to_string();
      rec.text = "s" + std::to_string(i);
      rec.restriction = imp.name;
      rec.verdict = evaluate(imp, c.p, c.text, oracle);
      rec.witness = to_string(c.p);
      rec.depth = c.p.size();
      rec.expected = imp.control;
      slots[i].push_back(std::move(rec));
    }
  });
  bool control_hit = false;
  for (auto& s : slots) {
    for (auto& r : s) {
      if (r.verdict == "Counterexample") {
        if (r.expected) {
          control_hit = true;
        } else {
          out.exit_code = 1;
        }
      }
      out.records.push_back(std::move(r));
    }
  }
  if (config.negative_control && !control_hit) out.exit_code = 1;
  return out;
}

ProgramCode pool_program(Registry& registry, const std::string& name) {
  Registry* reg = &registry;
  if (name == "ind_empty") {
    return registry.learner_program(name, [reg](const Sequence&) { return reg->ind({}); });
  }
  if (name == "ind01") {
    return registry.learner_program(name, [reg](const Sequence&) { return reg->ind({0, 1}); });
  }
  if (name == "grow") {
    return registry.learner_program(name, [reg](const Sequence& s) {
      NatSet c = content(s);
      c.insert(c.empty() ? 0 : *c.rbegin() + 1);
      return reg->ind(c);
    });
  }
  throw ConfigError("unknown pool learner '" + name + "'");
}

PriorityOutput cmd_priority(const ExperimentConfig& config) {
  constexpr Nat kSameIdDepth = 30;
  Registry registry;
  std::vector<ProgramCode> pool;
  for (const std::string& name : config.pool.empty() ? std::vector<std::string>{"ind_empty"}
                                                     : config.pool) {
    pool.push_back(pool_program(registry, name));
  }
  PriorityOutput out;
  PriorityRun run;
  try {
    run = config.variant == "sdec" ? build_sdec(registry, pool, config.t_max)
                                   : build_dec(registry, pool, config.t_max);
  } catch (const std::logic_error& err) {
    out.violations.push_back(err.what());
    out.exit_code = 1;
    return out;
  }
  out.violations = blocked_overlaps(run.trace);
  if (config.variant == "sdec") {
    for (std::string& v : same_id_violations(registry, run.table, kSameIdDepth)) {
      out.violations.push_back(std::move(v));
    }
  }
  std::ostringstream trace, table;
  if (config.format == ReportFormat::kJsonl) {
    for (const TraceRecord& r : run.trace.records) {
      nlohmann::ordered_json j;
      j["t"] = r.t;
      j["e"] = r.e;
      j["x"] = r.witness.x;
      j["y"] = r.witness.y;
      j["sigma"] = to_string(r.witness.sigma);
      j["branch"] = branch_name(r.branch);
      j["blocked"] = std::vector<Nat>(r.blocked.begin(), r.blocked.end());
      j["kept"] = r.kept;
      trace << j.dump() << '\n';
    }
  } else {
    run.trace.write_tsv(trace);
  }
  if (config.t_max > 0) run.table.dump(table);
  out.trace = trace.str();
  out.table = table.str();
  if (!out.violations.empty()) out.exit_code = 1;
  return out;
}

}  // namespace limitlearn
