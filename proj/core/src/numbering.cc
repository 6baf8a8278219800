#include "limitlearn/numbering.h"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace limitlearn {
namespace {

constexpr std::array<const char*, 14> kOpNames = {
    "diverge", "const",  "arg",    "succ",   "pred",      "pair", "first",
    "second",  "ifzero", "compose", "search", "universal", "pad",  "host"};

constexpr std::size_t kMaxDepth = 1u << 16;
constexpr std::size_t kMaxPadBits = 1024;

std::string node_key(const ProgramNode& node) {
  std::string key = op_name(node.op);
  for (Nat c : node.children) key += "," + std::to_string(c);
  key += "|";
  key += node.payload;
  return key;
}

}  // namespace

std::string op_name(Op op) { return kOpNames[static_cast<std::size_t>(op)]; }

std::optional<Op> parse_op(const std::string& name) {
  for (std::size_t i = 0; i < kOpNames.size(); ++i) {
    if (name == kOpNames[i]) return static_cast<Op>(i);
  }
  return std::nullopt;
}

struct Registry::Entry {
  ProgramNode node;
  BigNat constant;
  HostFn fn;
  Describer describer;
  struct Cache {
    std::mutex mu;
    std::map<Nat, std::optional<SetShape>> shapes;
  };
  std::unique_ptr<Cache> cache = std::make_unique<Cache>();
};

class Registry::Machine {
 public:
  Machine(const Registry& registry, Nat fuel) : registry_(registry), fuel_(fuel) {}

  std::optional<Value> run(Nat id, Value x) {
    if (++depth_ > kMaxDepth) return fail();
    struct Guard {
      std::size_t& d;
      ~Guard() { --d; }
    } guard{depth_};

    for (;;) {
      const Entry* entry = registry_.lookup(id);
      if (entry == nullptr || entry->node.op == Op::kDiverge) return fail();
      const ProgramNode& node = entry->node;
      if (node.op == Op::kHost) {
        if (!entry->fn) return fail();
        HostResult r = entry->fn(x, fuel_ - steps_);
        if (!r.value || !charge(std::max<Nat>(1, r.cost))) return fail();
        return std::move(*r.value);
      }
      if (!charge(1)) return fail();
      const auto& c = node.children;
      switch (node.op) {
        case Op::kConst:
          return Value(entry->constant);
        case Op::kArg:
          return x;
        case Op::kSucc:
        case Op::kPred:
        case Op::kFirst:
        case Op::kSecond: {
          auto v = run(c[0], x);
          if (!v) return std::nullopt;
          if (node.op == Op::kSucc) return v->succ();
          if (node.op == Op::kPred) return v->pred();
          if (node.op == Op::kFirst) return v->first();
          return v->second();
        }
        case Op::kPair: {
          auto a = run(c[0], x);
          if (!a) return std::nullopt;
          auto b = run(c[1], x);
          if (!b) return std::nullopt;
          return Value::pair(*a, *b);
        }
        case Op::kIfZero: {
          auto v = run(c[0], x);
          if (!v) return std::nullopt;
          id = v->is_zero() ? c[1] : c[2];
          continue;
        }
        case Op::kCompose: {
          auto v = run(c[1], x);
          if (!v) return std::nullopt;
          x = std::move(*v);
          id = c[0];
          continue;
        }
        case Op::kSearch:
          for (Nat n = 0;; ++n) {
            auto r = run(c[0], Value::pair(x, Value(n)));
            if (!r) return std::nullopt;
            if (r->is_zero()) return Value(n);
            if (!charge(1)) return fail();
          }
        case Op::kUniversal: {
          auto code = run(c[0], x);
          if (!code) return std::nullopt;
          auto input = run(c[1], x);
          if (!input) return std::nullopt;
          auto target = code->to_nat();
          if (!target) return fail();
          id = *target;
          x = std::move(*input);
          continue;
        }
        case Op::kPad:
          id = c[0];
          continue;
        default:
          return fail();
      }
    }
  }

  Nat steps() const { return steps_; }

 private:
  bool charge(Nat cost) {
    if (cost > fuel_ - steps_) return false;
    steps_ += cost;
    return true;
  }
  std::optional<Value> fail() {
    steps_ = fuel_;
    return std::nullopt;
  }

  const Registry& registry_;
  Nat fuel_;
  Nat steps_ = 0;
  std::size_t depth_ = 0;
};

Registry::Registry() { intern(ProgramNode{Op::kDiverge, {}, ""}); }

Registry::~Registry() = default;

const Registry::Entry* Registry::lookup(Nat id) const {
  std::shared_lock lock(mu_);
  if (id >= entries_.size()) return nullptr;
  return &entries_[id];
}

ProgramCode Registry::intern(ProgramNode node, HostFn fn, Describer describer) {
  const std::string key = node_key(node);
  std::unique_lock lock(mu_);
  if (auto it = index_.find(key); it != index_.end()) return ProgramCode{it->second};
  for (Nat c : node.children) {
    if (c >= entries_.size()) {
      throw PreconditionError("child code " + std::to_string(c) +
                              " is not registered");
    }
  }
  Entry& entry = entries_.emplace_back();
  if (node.op == Op::kConst) entry.constant = BigNat(node.payload);
  entry.node = std::move(node);
  entry.fn = std::move(fn);
  entry.describer = std::move(describer);
  const Nat id = entries_.size() - 1;
  index_.emplace(key, id);
  return ProgramCode{id};
}

EvalOutcome Registry::eval(ProgramCode e, const Value& x, Nat fuel) const {
  Machine machine(*this, fuel);
  try {
    auto v = machine.run(e.id, x);
    if (!v) return EvalOutcome::exhausted(fuel);
    return EvalOutcome::done(std::move(*v), machine.steps());
  } catch (const std::length_error&) {
    return EvalOutcome::exhausted(fuel);
  }
}

NatSet Registry::w_bounded(ProgramCode e, Nat t) const {
  NatSet out;
  for (Nat x = 0; x <= t; ++x) {
    if (eval(e, Value(x), t).converged) out.insert(x);
  }
  return out;
}

std::optional<SetShape> Registry::describe(ProgramCode e, Nat horizon) const {
  const Entry* entry = lookup(e.id);
  for (;;) {
    if (entry == nullptr || entry->node.op == Op::kDiverge) return SetShape::empty();
    if (entry->node.op != Op::kPad) break;
    entry = lookup(entry->node.children[0]);
  }
  if (entry->node.op == Op::kArg) return SetShape::naturals();
  if (entry->node.op == Op::kConst) return SetShape::naturals();
  if (entry->node.op == Op::kHost && !entry->fn) return SetShape::empty();
  if (!entry->describer) return std::nullopt;
  {
    std::lock_guard lock(entry->cache->mu);
    if (auto it = entry->cache->shapes.find(horizon); it != entry->cache->shapes.end()) {
      return it->second;
    }
  }
  auto shape = entry->describer(horizon);
  std::lock_guard lock(entry->cache->mu);
  entry->cache->shapes.emplace(horizon, shape);
  return shape;
}

ProgramCode Registry::constant(const BigNat& value) {
  return intern(ProgramNode{Op::kConst, {}, value.str()});
}
ProgramCode Registry::argument() { return intern(ProgramNode{Op::kArg, {}, ""}); }
ProgramCode Registry::succ(ProgramCode e) {
  return intern(ProgramNode{Op::kSucc, {e.id}, ""});
}
ProgramCode Registry::pred(ProgramCode e) {
  return intern(ProgramNode{Op::kPred, {e.id}, ""});
}
ProgramCode Registry::pair(ProgramCode a, ProgramCode b) {
  return intern(ProgramNode{Op::kPair, {a.id, b.id}, ""});
}
ProgramCode Registry::first(ProgramCode e) {
  return intern(ProgramNode{Op::kFirst, {e.id}, ""});
}
ProgramCode Registry::second(ProgramCode e) {
  return intern(ProgramNode{Op::kSecond, {e.id}, ""});
}
ProgramCode Registry::if_zero(ProgramCode test, ProgramCode then_branch,
                              ProgramCode else_branch) {
  return intern(
      ProgramNode{Op::kIfZero, {test.id, then_branch.id, else_branch.id}, ""});
}
ProgramCode Registry::compose(ProgramCode f, ProgramCode g) {
  return intern(ProgramNode{Op::kCompose, {f.id, g.id}, ""});
}
ProgramCode Registry::search(ProgramCode body) {
  return intern(ProgramNode{Op::kSearch, {body.id}, ""});
}
ProgramCode Registry::universal(ProgramCode code, ProgramCode input) {
  return intern(ProgramNode{Op::kUniversal, {code.id, input.id}, ""});
}

ProgramCode Registry::smn(ProgramCode e, Nat a) {
  return compose(e, pair(constant(a), argument()));
}

ProgramCode Registry::pad(ProgramCode e, const BigNat& n) {
  if (!registered(e)) e = diverge();
  return intern(ProgramNode{Op::kPad, {e.id}, n.str()});
}

ProgramCode Registry::pad(ProgramCode e, const Sequence& seq) {
  if (auto code = encode_seq_bounded(seq, kMaxPadBits)) return pad(e, *code);
  if (!registered(e)) e = diverge();
  return intern(ProgramNode{Op::kPad, {e.id}, "seq" + to_string(seq)});
}

ProgramCode Registry::host(const std::string& key, HostFn fn, Describer describer) {
  return intern(ProgramNode{Op::kHost, {}, key}, std::move(fn), std::move(describer));
}

ProgramCode Registry::ind(const NatSet& d) {
  const std::vector<Nat> members(d.begin(), d.end());
  return host(
      "ind" + to_string(d),
      [members](const Value& x, Nat) -> HostResult {
        auto n = x.to_nat();
        if (!n) return {std::nullopt, 1};
        auto it = std::lower_bound(members.begin(), members.end(), *n);
        if (it == members.end() || *it != *n) return {std::nullopt, 1};
        return {Value(Nat{0}), 1 + static_cast<Nat>(it - members.begin())};
      },
      [d](Nat) { return std::optional<SetShape>(SetShape::finite(d)); });
}

ProgramCode Registry::cofinite(Nat n) {
  return host(
      "cofinite(" + std::to_string(n) + ")",
      [n](const Value& x, Nat) -> HostResult {
        auto v = x.to_nat();
        if (v && *v == n) return {std::nullopt, 1};
        return {Value(Nat{0}), 1};
      },
      [n](Nat) { return std::optional<SetShape>(SetShape::cofinite({n})); });
}

ProgramCode Registry::naturals() {
  return host(
      "naturals", [](const Value&, Nat) { return HostResult{Value(Nat{0}), 1}; },
      [](Nat) { return std::optional<SetShape>(SetShape::naturals()); });
}

ProgramCode Registry::evens() {
  return accumulate(
      "evens",
      [](Nat t) {
        StageResult r;
        for (Nat x = 0; x <= t; x += 2) r.members.insert(x);
        return r;
      },
      [](Nat) { return std::optional<SetShape>(SetShape::evens()); });
}

ProgramCode Registry::language(const std::string& key, const SetShape& shape) {
  return host(
      "lang:" + key,
      [shape](const Value& x, Nat) -> HostResult {
        auto v = x.to_nat();
        if (!v || !shape.contains(*v)) return {std::nullopt, 1};
        return {Value(Nat{0}), 1};
      },
      [shape](Nat) { return std::optional<SetShape>(shape); });
}

ProgramCode Registry::accumulate(const std::string& key, StageFn stage,
                                 Describer describer) {
  struct Stages {
    StageFn fn;
    std::mutex mu;
    std::deque<StageResult> done;

    const StageResult& at(Nat t) {
      std::lock_guard lock(mu);
      while (done.size() <= t) done.push_back(fn(done.size()));
      return done[t];
    }
  };
  auto stages = std::make_shared<Stages>();
  stages->fn = std::move(stage);
  return host(
      "acc:" + key,
      [stages](const Value& x, Nat fuel) -> HostResult {
        auto v = x.to_nat();
        if (!v) return {std::nullopt, fuel};
        Nat cost = 0;
        for (Nat t = 0;; ++t) {
          // Copy out the membership bit; the stage vector may grow meanwhile.
          Nat stage_cost;
          bool hit;
          {
            const StageResult& r = stages->at(t);
            stage_cost = std::max<Nat>(1, r.cost);
            hit = r.members.count(*v) > 0;
          }
          if (stage_cost > fuel - cost) return {std::nullopt, fuel};
          cost += stage_cost;
          if (hit) return {Value(Nat{0}), cost};
        }
      },
      std::move(describer));
}

ProgramCode Registry::remove_element(ProgramCode e, Nat y) {
  return host(
      "remove(" + to_string(e) + "," + std::to_string(y) + ")",
      [this, e, y](const Value& x, Nat fuel) -> HostResult {
        auto v = x.to_nat();
        if (!v || *v == y || fuel == 0) return {std::nullopt, fuel};
        const EvalOutcome r = eval(e, x, fuel - 1);
        if (!r.converged) return {std::nullopt, fuel};
        return {r.value, r.steps + 1};
      },
      [this, e, y](Nat horizon) -> std::optional<SetShape> {
        auto inner = describe(e, horizon);
        if (!inner) return std::nullopt;
        return inner->minus(SetShape::finite({y}));
      });
}

ProgramCode Registry::learner_program(
    const std::string& key,
    std::function<std::optional<ProgramCode>(const Sequence&)> fn, Nat cost) {
  return host("learner:" + key,
              [fn = std::move(fn), cost](const Value& x, Nat) -> HostResult {
                auto seq = x.as_sequence();
                if (!seq) return {std::nullopt, cost};
                auto out = fn(*seq);
                if (!out) return {std::nullopt, cost};
                return {Value(out->id), cost};
              });
}

bool Registry::registered(ProgramCode e) const { return lookup(e.id) != nullptr; }

Nat Registry::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

std::optional<ProgramNode> Registry::node(ProgramCode e) const {
  const Entry* entry = lookup(e.id);
  if (entry == nullptr) return std::nullopt;
  return entry->node;
}

std::vector<ProgramCode> Registry::codes() const {
  const Nat n = size();
  std::vector<ProgramCode> out;
  out.reserve(n);
  for (Nat i = 0; i < n; ++i) out.push_back(ProgramCode{i});
  return out;
}

void Registry::dump(std::ostream& out) const {
  const Nat n = size();
  for (Nat i = 0; i < n; ++i) {
    const ProgramNode& node = lookup(i)->node;
    out << i << '\t' << op_name(node.op) << '\t';
    for (std::size_t k = 0; k < node.children.size(); ++k) {
      if (k > 0) out << ',';
      out << node.children[k];
    }
    out << '\t' << node.payload << '\n';
  }
}

std::vector<DumpRecord> Registry::parse_dump(std::istream& in) {
  std::vector<DumpRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (int i = 0; i < 3; ++i) {
      const auto tab = line.find('\t', start);
      if (tab == std::string::npos) {
        throw PreconditionError("malformed dump line: " + line);
      }
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    fields.push_back(line.substr(start));
    DumpRecord rec;
    rec.id = std::stoull(fields[0]);
    auto op = parse_op(fields[1]);
    if (!op) throw PreconditionError("unknown constructor: " + fields[1]);
    rec.node.op = *op;
    std::stringstream children(fields[2]);
    std::string child;
    while (std::getline(children, child, ',')) {
      if (!child.empty()) rec.node.children.push_back(std::stoull(child));
    }
    rec.node.payload = fields[3];
    out.push_back(std::move(rec));
  }
  return out;
}

void Registry::replay(const std::vector<DumpRecord>& records,
                      const HostResolver& resolve) {
  for (const DumpRecord& rec : records) {
    HostFn fn;
    Describer describer;
    if (rec.node.op == Op::kHost && resolve) {
      if (auto found = resolve(rec.node.payload)) {
        fn = std::move(found->first);
        describer = std::move(found->second);
      }
    }
    const ProgramCode got = intern(rec.node, std::move(fn), std::move(describer));
    if (got.id != rec.id) {
      throw PreconditionError("replay produced code " + std::to_string(got.id) +
                              " for dump record " + std::to_string(rec.id));
    }
  }
}

}  // namespace limitlearn
