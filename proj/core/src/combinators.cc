#include "limitlearn/combinators.h"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace limitlearn {
namespace {

Sequence prefix_of(const Sequence& seq, std::size_t n) {
  return Sequence(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(n));
}

template <typename K, typename V>
class Memo {
 public:
  template <typename F>
  V get(const K& key, F compute) {
    {
      std::lock_guard lock(mu_);
      if (auto it = map_.find(key); it != map_.end()) return it->second;
    }
    V value = compute();
    std::lock_guard lock(mu_);
    return map_.emplace(key, std::move(value)).first->second;
  }

  std::optional<V> find(const K& key) {
    std::lock_guard lock(mu_);
    if (auto it = map_.find(key); it != map_.end()) return it->second;
    return std::nullopt;
  }

 private:
  std::mutex mu_;
  std::map<K, V> map_;
};

/// Last prefix of σ on which h changed its mind (λ if none).
Sequence last_change(const Learner& h, const Sequence& seq) {
  std::size_t k = seq.size();
  Conjecture current = h(seq);
  while (k > 0) {
    Conjecture before = h(prefix_of(seq, k - 1));
    if (before != current) break;
    --k;
  }
  return prefix_of(seq, k);
}

/// Bounded enumerations W_e^t, cached per t.
class Enumeration {
 public:
  Enumeration(const Registry& registry, ProgramCode e) : registry_(registry), e_(e) {}

  NatSet at(Nat t) {
    return memo_.get(t, [&] { return registry_.w_bounded(e_, t); });
  }
  ProgramCode code() const { return e_; }

 private:
  const Registry& registry_;
  ProgramCode e_;
  Memo<Nat, NatSet> memo_;
};

NatSet cut(const NatSet& s, Nat bound) {
  return NatSet(s.begin(), s.upper_bound(bound));
}

/// Largest t < horizon with cond(t), for a condition that holds at 0 and is
/// antitone in t; nullopt if cond(0) fails.
template <typename Cond>
std::optional<Nat> last_true(Nat horizon, Cond cond) {
  if (!cond(0)) return std::nullopt;
  Nat lo = 0, hi = horizon;  // cond(lo) holds; cond(hi) assumed false
  while (hi - lo > 1) {
    const Nat mid = lo + (hi - lo) / 2;
    if (cond(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

/// Enumerates nonempty ρ over `alphabet` with |ρ| ≤ max_len until `stop`
/// returns true; returns whether it did.
template <typename Stop>
bool any_extension(const std::vector<Elem>& alphabet, std::size_t max_len, Stop stop) {
  if (max_len == 0 || alphabet.empty()) return false;
  CodeOrderSearch search({}, alphabet, max_len);
  while (auto rho = search.next()) {
    if (rho->empty()) continue;
    if (stop(*rho)) return true;
  }
  return false;
}

}  // namespace

Learner memoize(const Learner& h) {
  auto memo = std::make_shared<Memo<Sequence, Conjecture>>();
  return Learner::sequential(
      h.name(),
      [h, memo](const Sequence& seq) { return memo->get(seq, [&] { return h(seq); }); },
      h.properties());
}

Transformed totalize(const Registry& registry, ProgramCode e, Nat lambda_fuel) {
  const EvalOutcome base = registry.eval(e, Value::of_sequence({}), lambda_fuel);
  std::optional<Nat> at_lambda = base.converged ? base.value.to_nat() : std::nullopt;
  if (!at_lambda) {
    throw PreconditionError("totalize: " + to_string(e) +
                            " does not converge on the empty sequence");
  }
  const Registry* reg = &registry;
  // Longest prefix σ′ with Φ_e(σ′) ≤ |σ|, with its conjecture.
  auto best = [reg, e, lambda = ProgramCode{*at_lambda}](const Sequence& seq)
      -> std::pair<Sequence, ProgramCode> {
    for (std::size_t k = seq.size(); k > 0; --k) {
      Sequence candidate = prefix_of(seq, k);
      const EvalOutcome r = reg->eval(e, Value::of_sequence(candidate), seq.size());
      if (!r.converged) continue;
      if (auto n = r.value.to_nat()) return {std::move(candidate), ProgramCode{*n}};
    }
    return {Sequence{}, lambda};
  };
  Transformed out{
      Learner::sequential(
          "totalize(" + to_string(e) + ")",
          [best](const Sequence& seq) -> Conjecture { return best(seq).second; },
          Learner::kTotal),
      [best](const Sequence& seq) { return best(seq).first; }};
  return out;
}

Transformed strongly_locking(const Learner& h, SearchLimits limits) {
  const Learner hm = memoize(h);
  auto memo = std::make_shared<Memo<Sequence, Sequence>>();
  // f(σ⋄x) from ρ = f(σ).
  auto step = [hm, limits](const Sequence& rho, const Sequence& seq) -> Sequence {
    const Conjecture base = hm(rho);
    const std::vector<Elem> alphabet = alphabet_of(content(seq), true);
    Sequence found;
    const bool hit = any_extension(
        alphabet, std::min(seq.size(), limits.probe_len), [&](const Sequence& tau) {
          if (hm(concat(rho, tau)) == base) return false;
          found = tau;
          return true;
        });
    if (!hit) return rho;
    return concat(concat(rho, found), prefix_of(seq, seq.size() - 1));
  };
  auto f = [memo, step](const Sequence& seq) -> Sequence {
    std::size_t k = seq.size();
    std::optional<Sequence> known;
    for (; k > 0; --k) {
      known = memo->find(prefix_of(seq, k));
      if (known) break;
    }
    Sequence current = known ? *known : Sequence{};
    for (std::size_t i = k; i < seq.size(); ++i) {
      const Sequence next_prefix = prefix_of(seq, i + 1);
      current = memo->get(next_prefix, [&] { return step(current, next_prefix); });
    }
    return current;
  };
  return {Learner::sequential(
              "locking(" + h.name() + ")",
              [hm, f](const Sequence& seq) { return hm(f(seq)); },
              h.properties() & Learner::kTotal),
          f};
}

Transformed syndec(Registry& registry, const Learner& h) {
  const Learner hm = memoize(h);
  Registry* reg = &registry;
  auto anchor = [hm](const Sequence& seq) { return last_change(hm, seq); };
  return {Learner::sequential(
              "syndec(" + h.name() + ")",
              [hm, reg, anchor](const Sequence& seq) -> Conjecture {
                const Conjecture c = hm(seq);
                if (!c) return std::nullopt;
                return reg->pad(*c, anchor(seq));
              },
              (h.properties() & Learner::kTotal) | Learner::kSynDec),
          anchor};
}

Transformed conv_to_sdec_caut(const Registry& registry, const Learner& h) {
  const Learner hm = memoize(h);
  const Registry* reg = &registry;
  auto anchor = [hm, reg](const Sequence& seq) -> Sequence {
    for (std::size_t k = seq.size(); k > 0; --k) {
      Sequence tau = prefix_of(seq, k);
      const Conjecture c = hm(tau);
      if (!c) continue;
      bool fast = true;
      for (Nat x : content(tau)) {
        if (!reg->eval(*c, Value(x), seq.size()).converged) {
          fast = false;
          break;
        }
      }
      if (fast) return tau;
    }
    return {};
  };
  return {Learner::sequential(
              "conv_sdec_caut(" + h.name() + ")",
              [hm, anchor](const Sequence& seq) { return hm(anchor(seq)); },
              h.properties() & Learner::kTotal),
          anchor};
}

namespace {

/// Shared bookkeeping for programs p(σ) whose stages follow W_{h(σ)} while an
/// antitone condition holds.
struct GuardedProgram {
  ProgramCode e;
  std::shared_ptr<Enumeration> w;
  Memo<Nat, bool> cond_memo;
  std::function<bool(Nat)> cond_fn;

  bool cond(Nat t) {
    return cond_memo.get(t, [&] { return cond_fn(t); });
  }
};

NatSet probe_alphabet_data(const NatSet& w, Nat max_datum) { return cut(w, max_datum); }

}  // namespace

Transformed cautvar_to_conv(Registry& registry, const Learner& h, CautVariant variant,
                            SearchLimits limits) {
  if (!h.has(Learner::kSynDec)) {
    throw PreconditionError("cautvar_to_conv needs a syntactically decisive learner; " +
                            h.name() + " is not marked SynDec");
  }
  const Learner hm = memoize(h);
  Registry* reg = &registry;
  const std::string tag = variant == CautVariant::kCaut      ? "Caut"
                          : variant == CautVariant::kCautTar ? "Caut_Tar"
                                                             : "Caut_Fin";
  const std::string name = "cautvar_conv[" + tag + "](" + h.name() + ")";

  struct State {
    Memo<Sequence, std::shared_ptr<GuardedProgram>> programs;
    Memo<Sequence, ProgramCode> codes;
    Memo<Sequence, Sequence> anchors;
  };
  auto state = std::make_shared<State>();

  auto program = [state, hm, reg, limits](const Sequence& hat) {
    return state->programs.get(hat, [&] {
      auto g = std::make_shared<GuardedProgram>();
      const Conjecture c = hm(hat);
      g->e = c.value_or(reg->diverge());
      g->w = std::make_shared<Enumeration>(*reg, g->e);
      GuardedProgram* raw = g.get();
      g->cond_fn = [raw, hat, hm, limits, c](Nat t) {
        if (t < hat.size()) return true;
        const NatSet data = probe_alphabet_data(raw->w->at(t), limits.probe_max_datum);
        const std::size_t len = std::min<std::size_t>(t - hat.size(), limits.probe_len);
        return !any_extension(alphabet_of(data, false), len, [&](const Sequence& rho) {
          return hm(concat(hat, rho)) != c;
        });
      };
      return g;
    });
  };

  auto p = [state, reg, program, name](const Sequence& hat) {
    return state->codes.get(hat, [&] {
      std::shared_ptr<GuardedProgram> g = program(hat);
      return reg->accumulate(
          name + ".p" + to_string(hat),
          [g](Nat t) {
            StageResult r;
            if (g->cond(t)) r.members = g->w->at(t);
            return r;
          },
          [g, reg](Nat horizon) -> std::optional<SetShape> {
            if (g->cond(horizon)) return reg->describe(g->e, horizon);
            auto last = last_true(horizon, [&](Nat t) { return g->cond(t); });
            if (!last) return SetShape::empty();
            return SetShape::finite(g->w->at(*last));
          });
    });
  };

  // Q(σ̂, τ): h(σ̂) ≠ h(τ) and content(τ) ⊄ W^{|τ|−1}_{h(σ̂)}.
  auto q = [hm, program](const Sequence& hat, const Sequence& tau) {
    if (hm(hat) == hm(tau)) return false;
    const NatSet w = program(hat)->w->at(tau.size() - 1);
    return !is_subset(content(tau), w);
  };

  std::function<Sequence(const Sequence&)> anchor;
  auto anchor_step = [q, limits](const Sequence& hat, const Sequence& seq) -> Sequence {
    if (seq.size() <= hat.size()) return hat;
    const std::size_t room = std::min(seq.size() - hat.size(), limits.probe_len);
    CodeOrderSearch search(hat, alphabet_of(content(seq), true), room);
    while (auto tau = search.next()) {
      if (tau->size() == hat.size()) continue;
      if (q(hat, *tau)) return concat(*tau, seq);
    }
    return hat;
  };
  anchor = [state, anchor_step](const Sequence& seq) -> Sequence {
    std::size_t k = seq.size();
    std::optional<Sequence> known;
    for (; k > 0; --k) {
      known = state->anchors.find(prefix_of(seq, k));
      if (known) break;
    }
    Sequence current = known ? *known : Sequence{};
    for (std::size_t i = k; i < seq.size(); ++i) {
      const Sequence next_prefix = prefix_of(seq, i + 1);
      current = state->anchors.get(next_prefix,
                                   [&] { return anchor_step(current, next_prefix); });
    }
    return current;
  };

  return {Learner::sequential(
              name, [p, anchor](const Sequence& seq) -> Conjecture { return p(anchor(seq)); },
              Learner::kTotal),
          anchor};
}

Transformed drop_caut_inf(Registry& registry, const Learner& h, SearchLimits limits) {
  const Learner hm = memoize(h);
  Registry* reg = &registry;
  const std::string name = "drop_caut_inf(" + h.name() + ")";
  auto guards = std::make_shared<Memo<Sequence, std::shared_ptr<GuardedProgram>>>();
  auto codes = std::make_shared<Memo<Sequence, ProgramCode>>();

  auto guard = [guards, hm, reg, limits](const Sequence& sigma) {
    return guards->get(sigma, [&] {
      auto g = std::make_shared<GuardedProgram>();
      const Conjecture c = hm(sigma);
      g->e = c.value_or(reg->diverge());
      g->w = std::make_shared<Enumeration>(*reg, g->e);
      const NatSet data = content(sigma);
      GuardedProgram* raw = g.get();
      g->cond_fn = [raw, sigma, data, hm, limits, c](Nat t) {
        if (t < sigma.size()) return true;
        NatSet letters = probe_alphabet_data(raw->w->at(t), limits.probe_max_datum);
        letters.insert(data.begin(), data.end());
        const std::size_t len = std::min<std::size_t>(t - sigma.size(), limits.probe_len);
        return !any_extension(alphabet_of(letters, true), len, [&](const Sequence& rho) {
          return hm(concat(sigma, rho)) != c;
        });
      };
      return g;
    });
  };

  auto p = [codes, guard, reg, name](const Sequence& sigma) {
    return codes->get(sigma, [&] {
      std::shared_ptr<GuardedProgram> g = guard(sigma);
      const NatSet data = content(sigma);
      return reg->accumulate(
          name + ".p" + to_string(sigma),
          [g, data](Nat t) {
            StageResult r;
            r.members = data;
            if (g->cond(t)) {
              const NatSet w = g->w->at(t);
              r.members.insert(w.begin(), w.end());
            }
            return r;
          },
          [g, reg, data](Nat horizon) -> std::optional<SetShape> {
            const SetShape base = SetShape::finite(data);
            if (g->cond(horizon)) {
              auto inner = reg->describe(g->e, horizon);
              if (!inner) return std::nullopt;
              return base.unite(*inner);
            }
            auto last = last_true(horizon, [&](Nat t) { return g->cond(t); });
            if (!last) return base;
            return base.unite(SetShape::finite(g->w->at(*last)));
          });
    });
  };

  // A new anchor is taken when h changes its mind or when the current
  // anchor's guard has already failed by stage |σ|.
  auto anchors = std::make_shared<Memo<Sequence, Sequence>>();
  auto anchor = std::make_shared<std::function<Sequence(const Sequence&)>>();
  std::weak_ptr<std::function<Sequence(const Sequence&)>> self = anchor;
  *anchor = [anchors, hm, guard, self](const Sequence& seq) -> Sequence {
    if (seq.empty()) return seq;
    return anchors->get(seq, [&] {
      const Sequence before = prefix_of(seq, seq.size() - 1);
      if (hm(seq) != hm(before)) return seq;
      const Sequence a = (*self.lock())(before);
      return guard(a)->cond(seq.size()) ? a : seq;
    });
  };
  auto anchor_fn = [anchor](const Sequence& seq) { return (*anchor)(seq); };
  return {Learner::sequential(
              name, [p, anchor_fn](const Sequence& seq) -> Conjecture { return p(anchor_fn(seq)); },
              h.properties() & Learner::kTotal),
          anchor_fn};
}

namespace {

/// Set-driven learner with answers cached per set.
Learner::SdFn memo_sd(const Learner& h) {
  if (h.kind() != Learner::Kind::kSetDriven) {
    throw PreconditionError("learner " + h.name() + " is not set-driven");
  }
  auto memo = std::make_shared<Memo<NatSet, Conjecture>>();
  return [h, memo](const NatSet& d) { return memo->get(d, [&] { return h(d); }); };
}

}  // namespace

Learner sd_syndec(Registry& registry, const Learner& h) {
  const Learner::SdFn hs = memo_sd(h);
  Registry* reg = &registry;
  return Learner::set_driven(
      "sd_syndec(" + h.name() + ")",
      [hs, reg](const NatSet& c) -> Conjecture {
        if (c.size() > kMaxSdSyndecSet) {
          throw PreconditionError("sd_syndec scans all subsets; set of size " +
                                  std::to_string(c.size()) + " exceeds " +
                                  std::to_string(kMaxSdSyndecSet));
        }
        const std::vector<Nat> elems(c.begin(), c.end());
        const std::size_t n = elems.size();
        std::vector<Conjecture> at(std::size_t{1} << n);
        for (std::size_t mask = 0; mask < at.size(); ++mask) {
          NatSet d;
          for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) d.insert(elems[i]);
          }
          at[mask] = hs(d);
        }
        const Conjecture target = at.back();
        if (!target) return std::nullopt;
        // {D ⊆ C : h(D) = h(C)} upward closed within C.
        bool closed = true;
        for (std::size_t mask = 0; mask < at.size() && closed; ++mask) {
          if (at[mask] != target) continue;
          for (std::size_t i = 0; i < n; ++i) {
            const std::size_t up = mask | (std::size_t{1} << i);
            if (at[up] != target) {
              closed = false;
              break;
            }
          }
        }
        return reg->pad(*target, BigNat(closed ? 0 : n + 1));
      },
      (h.properties() & Learner::kTotal) | Learner::kSynDec);
}

std::vector<NatSet> same_conjecture_subsets(const Learner& h, const NatSet& d) {
  std::vector<NatSet> out;
  const Conjecture target = h(d);
  for (NatSet& sub : subsets_of(d)) {
    if (h(sub) == target) out.push_back(std::move(sub));
  }
  return out;
}

Learner sd_to_conv_sdec_caut(Registry& registry, const Learner& h) {
  const Learner::SdFn hs = memo_sd(h);
  Registry* reg = &registry;
  const std::string name = "sd_conv_sdec_caut(" + h.name() + ")";
  auto codes = std::make_shared<Memo<std::pair<NatSet, ProgramCode>, ProgramCode>>();

  // W_{p(D,e)} = D ∪ ⋃_t (W_e^t if h(D ∪ W_e^t) = e).
  auto p = [codes, hs, reg, name](const NatSet& d, ProgramCode e) {
    return codes->get({d, e}, [&] {
      auto w = std::make_shared<Enumeration>(*reg, e);
      auto fits = std::make_shared<Memo<NatSet, bool>>();
      auto cond = [hs, d, e, fits](const NatSet& wt) {
        return fits->get(wt, [&] {
          NatSet u = d;
          u.insert(wt.begin(), wt.end());
          return hs(u) == Conjecture(e);
        });
      };
      return reg->accumulate(
          name + ".p" + to_string(d) + to_string(e),
          [w, d, cond](Nat t) {
            StageResult r;
            r.members = d;
            const NatSet wt = w->at(t);
            if (cond(wt)) r.members.insert(wt.begin(), wt.end());
            return r;
          },
          [w, d, e, cond, reg](Nat horizon) -> std::optional<SetShape> {
            auto shape = reg->describe(e, horizon);
            SetShape out = SetShape::finite(d);
            if (shape && shape->is_finite()) {
              const NatSet limit = shape->finite_elements();
              for (Nat t = 0; t <= horizon; ++t) {
                const NatSet wt = w->at(t);
                if (cond(wt)) out = out.unite(SetShape::finite(wt));
                if (wt == limit) return out;
              }
              return std::nullopt;
            }
            for (Nat t = 0; t <= horizon; ++t) {
              const NatSet wt = w->at(t);
              if (cond(wt)) out = out.unite(SetShape::finite(wt));
            }
            if (shape && cond(w->at(horizon))) out = out.unite(*shape);
            return out;
          });
    });
  };
  return Learner::set_driven(
      name,
      [hs, p](const NatSet& d) -> Conjecture {
        const Conjecture e = hs(d);
        if (!e) return std::nullopt;
        for (const NatSet& sub : subsets_of(d)) {
          if (hs(sub) == e) return p(sub, *e);
        }
        return p(d, *e);
      },
      h.properties() & Learner::kTotal);
}

PoisonFamily PoisonFamily::residues() {
  return {"residues", [](Nat i) { return SetShape::residue_class(1, i + 2); }};
}

std::optional<std::string> check_poison_family(const PoisonFamily& family,
                                               const std::vector<SetShape>& members,
                                               Nat up_to) {
  for (Nat i = 0; i <= up_to; ++i) {
    const SetShape li = family.member(i);
    for (Nat j = i + 1; j <= up_to; ++j) {
      if (li.finite_variant_of(family.member(j))) {
        return "L_" + std::to_string(i) + " and L_" + std::to_string(j) +
               " are finite variants";
      }
    }
    for (const SetShape& m : members) {
      if (li.subset_of(m) && m.finite_variant_of(li)) {
        return "class member " + m.to_string() + " is a finite-variant superset of L_" +
               std::to_string(i);
      }
    }
  }
  return std::nullopt;
}

Transformed poison_with_N(Registry& registry, const Learner& h,
                          const PoisonFamily& family,
                          const std::vector<SetShape>& class_members, Nat check_up_to) {
  if (auto failure = check_poison_family(family, class_members, check_up_to)) {
    throw PreconditionError("poison family check failed: " + *failure);
  }
  const Learner hm = memoize(h);
  Registry* reg = &registry;
  const std::string name = "poison[" + family.name + "](" + h.name() + ")";
  auto codes = std::make_shared<Memo<Sequence, ProgramCode>>();

  auto p = [codes, hm, reg, family, name](const Sequence& sigma) {
    return codes->get(sigma, [&] {
      auto g = std::make_shared<GuardedProgram>();
      const Conjecture c = hm(sigma);
      g->e = c.value_or(reg->diverge());
      g->w = std::make_shared<Enumeration>(*reg, g->e);
      GuardedProgram* raw = g.get();
      // ρ ranges over single elements of W^t.
      g->cond_fn = [raw, sigma, hm, c](Nat t) {
        for (Nat x : raw->w->at(t)) {
          if (hm(append(sigma, Elem::datum(x))) != c) return false;
        }
        return true;
      };
      const SetShape poison = family.member(sigma.size()).unite(SetShape::finite(content(sigma)));
      return reg->accumulate(
          name + ".p" + to_string(sigma),
          [g, poison](Nat t) {
            StageResult r;
            r.members = g->cond(t) ? g->w->at(t) : poison.elements_upto(t);
            return r;
          },
          [g, reg, poison](Nat horizon) -> std::optional<SetShape> {
            if (g->cond(horizon)) return reg->describe(g->e, horizon);
            auto last = last_true(horizon, [&](Nat t) { return g->cond(t); });
            if (!last) return poison;
            return poison.unite(SetShape::finite(g->w->at(*last)));
          });
    });
  };

  auto anchor = [hm, reg](const Sequence& seq) -> Sequence {
    for (std::size_t k = seq.size(); k > 0; --k) {
      Sequence tau = prefix_of(seq, k);
      const Conjecture c = hm(tau);
      if (!c || c == hm(prefix_of(seq, k - 1))) continue;
      bool fast = true;
      for (Nat x : content(tau)) {
        if (!reg->eval(*c, Value(x), seq.size()).converged) {
          fast = false;
          break;
        }
      }
      if (fast) return tau;
    }
    return {};
  };
  return {Learner::sequential(
              name, [p, anchor](const Sequence& seq) -> Conjecture { return p(anchor(seq)); },
              h.properties() & Learner::kTotal),
          anchor};
}

Transformed mon_to_sdec(Registry& registry, const Learner& h, const Density& density,
                        const PoisonFamily& family,
                        const std::vector<SetShape>& class_members) {
  if (density.dense) {
    return {h, [](const Sequence& seq) { return seq; }};
  }
  const ProgramCode everything = registry.naturals();
  const NatSet f = density.witness;
  const Learner hm = memoize(h);
  const Learner adjoined = Learner::sequential(
      "adjoin_N" + to_string(f) + "(" + h.name() + ")",
      [hm, f, everything](const Sequence& seq) -> Conjecture {
        if (is_subset(f, content(seq))) return everything;
        return hm(seq);
      },
      h.properties() & Learner::kTotal);
  std::vector<SetShape> members = class_members;
  members.push_back(SetShape::naturals());
  return poison_with_N(registry, adjoined, family, members);
}

}  // namespace limitlearn
