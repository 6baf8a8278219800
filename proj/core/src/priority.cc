#include "limitlearn/priority.h"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace limitlearn {

Nat id_of(const NatSet& set) {
  Nat n = 0;
  for (Nat x : set) {
    if (x != n) break;
    ++n;
  }
  return n;
}

Nat id_of(const Sequence& seq) { return id_of(content(seq)); }

Nat id_prime(const Sequence& seq) {
  const NatSet c = content(seq);
  return c.empty() ? 0 : *c.rbegin() + 1;
}

std::string to_string(const WitnessTriple& w) {
  return "(" + std::to_string(w.x) + "," + std::to_string(w.y) + "," + to_string(w.sigma) +
         ")";
}

namespace {

bool proper_subset(const NatSet& a, const NatSet& b) {
  return a.size() < b.size() && is_subset(a, b);
}

NatSet initial_segment(Nat n) {
  NatSet out;
  for (Nat i = 0; i < n; ++i) out.insert(i);
  return out;
}

}  // namespace

struct WitnessScanner::Scan {
  std::map<Nat, Sequence> least;  // id ↦ least generalizing σ
};

WitnessScanner::WitnessScanner(const Registry& registry, bool include_pause)
    : registry_(registry), include_pause_(include_pause) {}

const std::vector<Sequence>& WitnessScanner::seq_leq(Nat t) const {
  std::lock_guard lock(mu_);
  auto& slot = seqs_[t];
  if (!slot) {
    slot = std::make_shared<const std::vector<Sequence>>(enumerate_seq_leq(t, include_pause_));
  }
  return *slot;
}

std::optional<ProgramCode> WitnessScanner::conjecture(ProgramCode e, const Sequence& sigma,
                                                      Nat t) const {
  const EvalOutcome r = registry_.eval(e, Value::of_sequence(sigma), t);
  if (!r.converged) return std::nullopt;
  auto n = r.value.to_nat();
  if (!n) return std::nullopt;
  return ProgramCode{*n};
}

NatSet WitnessScanner::w(ProgramCode code, Nat t) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = w_cache_.find({code.id, t}); it != w_cache_.end()) return it->second;
  }
  NatSet out = registry_.w_bounded(code, t);
  std::lock_guard lock(mu_);
  return w_cache_.emplace(std::pair{code.id, t}, std::move(out)).first->second;
}

NatSet WitnessScanner::d_set(ProgramCode e, Nat t, const Sequence& sigma) const {
  const auto c = conjecture(e, sigma, t);
  if (!c) {
    throw PreconditionError("d_set: " + to_string(e) + " does not converge on " +
                            to_string(sigma) + " within " + std::to_string(t) + " steps");
  }
  const Nat id_w = id_of(w(*c, t));
  if (id_w <= id_prime(sigma)) return content(sigma);
  return initial_segment(id_w - 1);
}

const WitnessScanner::Scan& WitnessScanner::scan(ProgramCode e, Nat t) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = scans_.find({e.id, t}); it != scans_.end()) return *it->second;
  }
  auto out = std::make_shared<Scan>();
  for (const Sequence& sigma : seq_leq(t)) {
    const Nat s = id_of(sigma);
    if (out->least.count(s)) continue;
    const auto c = conjecture(e, sigma, t);
    if (c && proper_subset(content(sigma), w(*c, t))) out->least.emplace(s, sigma);
  }
  std::lock_guard lock(mu_);
  return *scans_.emplace(std::pair{e.id, t}, std::move(out)).first->second;
}

bool WitnessScanner::p_pred(ProgramCode e, Nat t, Nat s) const {
  return !least_generalizing(e, t, s);
}

std::optional<Sequence> WitnessScanner::least_generalizing(ProgramCode e, Nat t,
                                                           Nat s) const {
  const Scan& sc = scan(e, t);
  if (auto it = sc.least.find(s); it != sc.least.end()) return it->second;
  return std::nullopt;
}

bool WitnessScanner::is_t_witness(const WitnessTriple& wt, ProgramCode e, Nat t) const {
  if (p_pred(e, t, wt.x)) return true;
  const auto c = conjecture(e, wt.sigma, t);
  if (!c) return false;
  const NatSet wc = w(*c, t);
  if (!proper_subset(content(wt.sigma), wc)) return false;
  return id_of(d_set(e, t, wt.sigma)) == wt.x && id_of(wc) == wt.y;
}

WitnessTriple WitnessScanner::find_witness(const NatSet& blocked, ProgramCode e,
                                           Nat t) const {
  const Nat last = blocked.empty() ? 0 : *blocked.rbegin() + 1;
  for (Nat s = 0; s <= last; ++s) {
    const auto sigma = least_generalizing(e, t, s);
    if (!sigma) {
      if (!blocked.count(s)) return {s, s, {}};
      continue;
    }
    const auto c = conjecture(e, *sigma, t);
    const Nat x = id_of(d_set(e, t, *sigma));
    const Nat y = id_of(w(*c, t));
    if (!blocked.count(x) && !blocked.count(y)) return {x, y, *sigma};
  }
  throw std::logic_error("find_witness exhausted s ≤ max(B)+1 for " + to_string(e) +
                         " at t=" + std::to_string(t) + " with B=" + to_string(blocked));
}

std::string branch_name(Branch b) {
  switch (b) {
    case Branch::kP:
      return "P";
    case Branch::kD:
      return "D";
    case Branch::kFollow:
      return "G";
  }
  return "?";
}

void RequirementTrace::write_tsv(std::ostream& out) const {
  for (const TraceRecord& r : records) {
    out << r.t << '\t' << r.e << '\t' << r.witness.x << '\t' << r.witness.y << '\t'
        << encode_seq(r.witness.sigma) << '\t' << branch_name(r.branch) << '\t'
        << to_string(r.blocked) << '\t' << (r.kept ? "kept" : "new") << '\n';
  }
}

std::vector<WitnessTriple> RequirementTrace::witnesses(std::size_t e) const {
  std::vector<WitnessTriple> out;
  for (const TraceRecord& r : records) {
    if (r.e == e) out.push_back(r.witness);
  }
  return out;
}

bool LearnerTable::assign(const Sequence& sigma, ProgramCode code) {
  return entries_.emplace(sigma, code).second;
}

std::optional<ProgramCode> LearnerTable::lookup(const Sequence& sigma) const {
  if (auto it = entries_.find(sigma); it != entries_.end()) return it->second;
  return std::nullopt;
}

void LearnerTable::dump(std::ostream& out) const {
  out << "t_max\t" << t_max_ << '\n';
  for (const auto& [seq, code] : entries_) out << to_string(seq) << '\t' << code.id << '\n';
}

LearnerTable LearnerTable::parse(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("t_max\t", 0) != 0) {
    throw std::invalid_argument("learner table: missing t_max header");
  }
  LearnerTable table(std::stoull(line.substr(6)));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw std::invalid_argument("learner table: malformed line '" + line + "'");
    }
    table.assign(parse_sequence(line.substr(0, tab)),
                 ProgramCode{std::stoull(line.substr(tab + 1))});
  }
  return table;
}

Learner LearnerTable::as_learner(const std::string& name) const {
  auto entries = std::make_shared<const std::map<Sequence, ProgramCode, CodeLess>>(entries_);
  return Learner::sequential(
      name,
      [entries](const Sequence& seq) -> Conjecture {
        if (auto it = entries->find(seq); it != entries->end()) return it->second;
        return std::nullopt;
      },
      0);
}

namespace {

enum class Variant { kDec, kSDec };

/// W = D ∪ (W_{φ_e(σ)} once some τ over D gives φ_e(σ⋄τ) ≠ φ_e(σ)). Candidates
/// τ are dovetailed in code order: stage s tries the first s+1 with fuel s.
ProgramCode register_p_prime(Registry& registry, ProgramCode e, Nat t, const Sequence& sigma,
                             const NatSet& d, ProgramCode conj) {
  struct State {
    std::mutex mu;
    CodeOrderSearch search;
    std::vector<Sequence> taus;
    std::vector<bool> found;  // found[s]: a change was seen by stage s

    State(const NatSet& d) : search({}, alphabet_of(d, false), 64) {}
  };
  auto state = std::make_shared<State>(d);
  Registry* reg = &registry;
  auto found_by = [state, reg, e, sigma, conj](Nat s) {
    std::lock_guard lock(state->mu);
    while (state->found.size() <= s) {
      const Nat stage = state->found.size();
      bool hit = stage > 0 && state->found.back();
      if (auto next = state->search.next()) state->taus.push_back(std::move(*next));
      for (std::size_t i = 0; !hit && i < state->taus.size(); ++i) {
        const EvalOutcome r = reg->eval(e, Value::of_sequence(concat(sigma, state->taus[i])), stage);
        if (r.converged && r.value.to_nat() != std::optional<Nat>(conj.id)) hit = true;
      }
      state->found.push_back(hit);
    }
    return static_cast<bool>(state->found[s]);
  };
  return registry.accumulate(
      "pprime(" + to_string(e) + "," + std::to_string(t) + "," + to_string(sigma) + ")",
      [reg, d, conj, found_by](Nat s) {
        StageResult r;
        r.members = d;
        if (found_by(s)) {
          const NatSet w = reg->w_bounded(conj, s);
          r.members.insert(w.begin(), w.end());
        }
        return r;
      },
      [reg, d, conj, found_by](Nat horizon) -> std::optional<SetShape> {
        if (!found_by(horizon)) return SetShape::finite(d);
        auto inner = reg->describe(conj, horizon);
        if (!inner) return std::nullopt;
        return inner->unite(SetShape::finite(d));
      });
}

/// Some τ ∈ Seq_{≤t}(D) with φ_e(σ⋄τ)↓_t ≠ φ_e(σ).
bool changes_on(const WitnessScanner& scanner, ProgramCode e, Nat t, const Sequence& sigma,
                const NatSet& d, ProgramCode conj) {
  NatSet letters;
  for (Nat x : d) {
    if (x <= t) letters.insert(x);
  }
  for (const Sequence& tau :
       enumerate_sequences(alphabet_of(letters, scanner.include_pause()), t)) {
    const auto c = scanner.conjecture(e, concat(sigma, tau), t);
    if (c && *c != conj) return true;
  }
  return false;
}

void check_disjoint_stage(const std::vector<TraceRecord>& stage) {
  for (std::size_t i = 0; i < stage.size(); ++i) {
    for (std::size_t j = i + 1; j < stage.size(); ++j) {
      const WitnessTriple& a = stage[i].witness;
      const WitnessTriple& b = stage[j].witness;
      if (a.x == b.x || a.x == b.y || a.y == b.x || a.y == b.y) {
        throw std::logic_error("requirements " + std::to_string(stage[i].e) + " and " +
                               std::to_string(stage[j].e) + " block a common ID at t=" +
                               std::to_string(stage[i].t));
      }
    }
  }
}

PriorityRun run(Registry& registry, const std::vector<ProgramCode>& pool, Nat t_max,
                bool include_pause, Variant variant) {
  PriorityRun out{LearnerTable(t_max), {}, std::nullopt};
  WitnessScanner scanner(registry, include_pause);
  std::vector<std::optional<WitnessTriple>> current(pool.size());

  for (Nat t = 0; t < t_max; ++t) {
    std::vector<TraceRecord> stage;
    for (std::size_t e = 0; e < pool.size() && e <= t; ++e) {
      const ProgramCode prog = pool[e];
      NatSet blocked;
      for (std::size_t k = 0; k < e; ++k) {
        blocked.insert(current[k]->x);
        blocked.insert(current[k]->y);
      }
      TraceRecord rec;
      rec.t = t;
      rec.e = e;
      rec.program = prog;
      rec.blocked = blocked;
      const auto& prev = current[e];
      if (prev && scanner.is_t_witness(*prev, prog, t) && !blocked.count(prev->x) &&
          !blocked.count(prev->y)) {
        rec.witness = *prev;
        rec.kept = true;
      } else {
        rec.witness = scanner.find_witness(blocked, prog, t);
      }
      current[e] = rec.witness;
      const WitnessTriple& w = rec.witness;
      const std::vector<Sequence>& seqs = scanner.seq_leq(t);

      if (scanner.p_pred(prog, t, w.x)) {
        rec.branch = Branch::kP;
        const ProgramCode q = registry.cofinite(w.x);
        for (const Sequence& tau : seqs) {
          if (id_of(tau) == w.x) out.table.assign(tau, q);
        }
      } else if (auto conj = scanner.conjecture(prog, w.sigma, t)) {
        const NatSet d = scanner.d_set(prog, t, w.sigma);
        const bool follow =
            variant == Variant::kSDec && changes_on(scanner, prog, t, w.sigma, d, *conj);
        if (follow) {
          rec.branch = Branch::kFollow;
          const ProgramCode g = registry.remove_element(*conj, w.y);
          for (const Sequence& tau : seqs) {
            if (id_of(tau) == w.y) out.table.assign(tau, g);
          }
        } else {
          rec.branch = Branch::kD;
          const ProgramCode p = variant == Variant::kDec
                                    ? registry.ind(d)
                                    : register_p_prime(registry, prog, t, w.sigma, d, *conj);
          for (const Sequence& tau : seqs) {
            if (content(tau) == d) out.table.assign(tau, p);
          }
          if (variant == Variant::kDec) {
            for (const Sequence& tau : seqs) {
              if (id_of(tau) == w.y) out.table.assign(tau, *conj);
            }
          }
        }
      }
      stage.push_back(rec);
    }
    check_disjoint_stage(stage);
    out.trace.records.insert(out.trace.records.end(), stage.begin(), stage.end());
  }
  return out;
}

/// f(σ): enumerates W_{h(σ)}, switching to ℕ ∖ {id(σ)} once a table entry
/// σ⋄τ with id(σ) ∉ content(τ) disagrees with h(σ).
ProgramCode register_poison(Registry& registry, const std::shared_ptr<const LearnerTable>& table,
                            const Sequence& sigma, ProgramCode conj) {
  const Nat id = id_of(sigma);
  std::vector<Nat> hits;  // positions of disagreeing entries in code order
  std::size_t pos = 0;
  for (const auto& [key, code] : table->entries()) {
    if (key.size() > sigma.size() && is_prefix(sigma, key)) {
      const Sequence tau(key.begin() + static_cast<std::ptrdiff_t>(sigma.size()), key.end());
      if (!content(tau).count(id) && code != conj) hits.push_back(pos);
      ++pos;
    }
  }
  const std::optional<Nat> found_at =
      hits.empty() ? std::nullopt : std::optional<Nat>(hits.front());
  Registry* reg = &registry;
  return registry.accumulate(
      "poison" + to_string(sigma) + "->" + to_string(conj),
      [reg, conj, id, found_at](Nat s) {
        StageResult r;
        r.members = reg->w_bounded(conj, s);
        if (found_at && *found_at <= s) {
          for (Nat x = 0; x <= s; ++x) {
            if (x != id) r.members.insert(x);
          }
        }
        return r;
      },
      [reg, conj, id, found_at](Nat horizon) -> std::optional<SetShape> {
        if (found_at) return SetShape::cofinite({id});
        return reg->describe(conj, horizon);
      });
}

}  // namespace

PriorityRun build_dec(Registry& registry, const std::vector<ProgramCode>& pool, Nat t_max,
                      bool include_pause) {
  return run(registry, pool, t_max, include_pause, Variant::kDec);
}

PriorityRun build_sdec(Registry& registry, const std::vector<ProgramCode>& pool, Nat t_max,
                       bool include_pause) {
  PriorityRun out = run(registry, pool, t_max, include_pause, Variant::kSDec);
  auto table = std::make_shared<const LearnerTable>(out.table);
  auto poison = std::make_shared<std::map<Sequence, ProgramCode, CodeLess>>();
  auto mu = std::make_shared<std::mutex>();
  Registry* reg = &registry;
  out.learner = Learner::sequential(
      "sdec_priority",
      [table, poison, mu, reg](const Sequence& seq) -> Conjecture {
        std::size_t k = seq.size();
        auto at = [&](std::size_t n) {
          return table->lookup(Sequence(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(n)));
        };
        const Conjecture last = at(k);
        while (k > 0 && at(k - 1) == last) --k;
        if (!last) return std::nullopt;
        const Sequence anchor(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(k));
        {
          std::lock_guard lock(*mu);
          if (auto it = poison->find(anchor); it != poison->end()) return it->second;
        }
        const ProgramCode f = register_poison(*reg, table, anchor, *last);
        std::lock_guard lock(*mu);
        return poison->emplace(anchor, f).first->second;
      },
      0);
  return out;
}

std::vector<std::string> blocked_overlaps(const RequirementTrace& trace) {
  std::vector<std::string> out;
  std::map<Nat, std::vector<TraceRecord>> by_stage;
  for (const TraceRecord& r : trace.records) by_stage[r.t].push_back(r);
  for (const auto& [t, stage] : by_stage) {
    try {
      check_disjoint_stage(stage);
    } catch (const std::logic_error& err) {
      out.push_back(err.what());
    }
  }
  return out;
}

std::vector<std::string> same_id_violations(const Registry& registry,
                                            const LearnerTable& table, Nat depth) {
  std::vector<std::string> out;
  for (const auto& [key, code] : table.entries()) {
    const Nat want = id_of(key);
    const Nat got = id_of(registry.w_bounded(code, depth));
    if (want != got) {
      out.push_back(to_string(key) + " -> " + to_string(code) + ": id " + std::to_string(got) +
                    " at depth " + std::to_string(depth) + ", key id " + std::to_string(want));
    }
  }
  return out;
}

}  // namespace limitlearn
