#include "limitlearn/criteria.h"

#include <array>

namespace limitlearn {
namespace {

constexpr std::array<const char*, 15> kRestrictionNames = {
    "T",   "Ex",   "Conv", "Caut",   "NU",       "Dec",      "SNU",     "SDec",
    "SMon", "Mon", "WMon", "SynDec", "Caut_Fin", "Caut_Inf", "Caut_Tar"};

enum class Shape { kSingle, kPair, kTriple };

Shape clause_shape(Restriction r) {
  switch (r) {
    case Restriction::kConv:
    case Restriction::kCautTar:
      return Shape::kSingle;
    case Restriction::kNU:
    case Restriction::kDec:
    case Restriction::kSNU:
    case Restriction::kSDec:
    case Restriction::kSynDec:
      return Shape::kTriple;
    default:
      return Shape::kPair;
  }
}

std::string w(std::size_t i) { return "W(p(" + std::to_string(i) + "))"; }

/// The window (p, T[n]) with relations between conjectured languages cached
/// per pair of distinct codes.
class Window {
 public:
  Window(const HypothesisSequence& p, const TextSource& text,
         const LanguageOracle& oracle, CheckOptions options)
      : oracle_(oracle), target_(text.target()) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!p[i]) {
        if (options.allow_partial) break;
        throw PreconditionError("learning sequence diverges at index " +
                                std::to_string(i));
      }
      codes_.push_back(*p[i]);
    }
    const Sequence prefix = text.prefix(codes_.size());
    contents_.resize(codes_.size() + 1);
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      contents_[i + 1] = contents_[i];
      if (!prefix[i].is_pause()) contents_[i + 1].insert(prefix[i].value());
    }
    for (ProgramCode c : codes_) {
      if (oracle_.resolve(c).bounded) bounded_ = true;
    }
  }

  std::size_t size() const { return codes_.size(); }
  ProgramCode at(std::size_t i) const { return codes_[i]; }
  const NatSet& content(std::size_t n) const { return contents_[n]; }
  const SetShape& target() const { return target_; }
  bool bounded() const { return bounded_; }
  const LanguageOracle& oracle() const { return oracle_; }

  Tri eq(std::size_t i, std::size_t j) { return lookup(eq_, i, j, Rel::kEq); }
  Tri sub(std::size_t i, std::size_t j) { return lookup(sub_, i, j, Rel::kSub); }
  Tri proper(std::size_t i, std::size_t j) {
    return lookup(proper_, i, j, Rel::kProper);
  }
  Tri correct(std::size_t i) {
    auto [it, fresh] = correct_.try_emplace(codes_[i], Tri::kUnknown);
    if (fresh) it->second = oracle_.equals_target(codes_[i], target_);
    return it->second;
  }
  Tri finite(std::size_t i) {
    auto [it, fresh] = finite_.try_emplace(codes_[i], Tri::kUnknown);
    if (fresh) it->second = oracle_.is_finite(codes_[i]);
    return it->second;
  }

 private:
  enum class Rel { kEq, kSub, kProper };
  using Key = std::pair<ProgramCode, ProgramCode>;

  Tri lookup(std::map<Key, Tri>& cache, std::size_t i, std::size_t j, Rel rel) {
    const Key key{codes_[i], codes_[j]};
    auto [it, fresh] = cache.try_emplace(key, Tri::kUnknown);
    if (fresh) {
      switch (rel) {
        case Rel::kEq:
          it->second = oracle_.equal(key.first, key.second);
          break;
        case Rel::kSub:
          it->second = oracle_.subset(key.first, key.second);
          break;
        case Rel::kProper:
          it->second = oracle_.proper_subset(key.first, key.second);
          break;
      }
    }
    return it->second;
  }

  const LanguageOracle& oracle_;
  SetShape target_;
  std::vector<ProgramCode> codes_;
  std::vector<NatSet> contents_;
  bool bounded_ = false;
  std::map<Key, Tri> eq_, sub_, proper_;
  std::map<ProgramCode, Tri> correct_, finite_;
};

struct Finding {
  Tri violated = Tri::kFalse;
  std::string explanation;
  std::optional<Nat> datum;
};

Tri syntactic(bool b) { return tri(b); }

/// Is the clause violated at the given indices?
Finding clause(Restriction r, Window& win, const std::vector<std::size_t>& ix) {
  Finding f;
  switch (r) {
    case Restriction::kConv: {
      const std::size_t i = ix[0];
      if (win.at(i) == win.at(i + 1)) return f;
      f.violated = win.oracle().contains_all(win.at(i), win.content(i + 1));
      f.explanation = "content(T[" + std::to_string(i + 1) + "]) within " + w(i) +
                      " but p(" + std::to_string(i) + ") != p(" +
                      std::to_string(i + 1) + ")";
      return f;
    }
    case Restriction::kCautTar:
      f.violated =
          win.oracle().properly_contains_target(win.at(ix[0]), win.target());
      f.explanation = w(ix[0]) + " is a proper superset of the target";
      return f;
    case Restriction::kCaut:
      f.violated = win.proper(ix[1], ix[0]);
      f.explanation = w(ix[1]) + " is a proper subset of " + w(ix[0]);
      return f;
    case Restriction::kCautFin:
      f.violated = tri_and(win.proper(ix[1], ix[0]), win.finite(ix[1]));
      f.explanation = "finite " + w(ix[1]) + " is a proper subset of " + w(ix[0]);
      return f;
    case Restriction::kCautInf:
      f.violated =
          tri_and(win.proper(ix[1], ix[0]), tri_not(win.finite(ix[1])));
      f.explanation = "infinite " + w(ix[1]) + " is a proper subset of " + w(ix[0]);
      return f;
    case Restriction::kSMon:
      f.violated = tri_not(win.sub(ix[0], ix[1]));
      f.explanation = w(ix[0]) + " is not a subset of " + w(ix[1]);
      return f;
    case Restriction::kMon: {
      std::optional<Nat> lost;
      f.violated = tri_not(
          win.oracle().subset_on(win.at(ix[0]), win.at(ix[1]), win.target(), &lost));
      f.datum = lost;
      f.explanation = "target datum " + (lost ? std::to_string(*lost) : "?") +
                      " is in " + w(ix[0]) + " but not in " + w(ix[1]);
      return f;
    }
    case Restriction::kWMon: {
      const Tri premise = win.oracle().contains_all(win.at(ix[0]), win.content(ix[1]));
      f.violated = tri_and(premise, tri_not(win.sub(ix[0], ix[1])));
      f.explanation = "content(T[" + std::to_string(ix[1]) + "]) within " +
                      w(ix[0]) + " but " + w(ix[0]) + " is not a subset of " +
                      w(ix[1]);
      return f;
    }
    case Restriction::kNU:
    case Restriction::kDec: {
      const std::size_t i = ix[0], j = ix[1], k = ix[2];
      Tri premise = win.eq(i, k);
      if (r == Restriction::kNU) premise = tri_and(premise, win.correct(i));
      f.violated = tri_and(premise, tri_not(win.eq(j, i)));
      f.explanation = w(i) + " = " + w(k) +
                      (r == Restriction::kNU ? " = target" : "") + " but " + w(j) +
                      " differs";
      return f;
    }
    case Restriction::kSNU:
    case Restriction::kSDec: {
      const std::size_t i = ix[0], j = ix[1], k = ix[2];
      if (win.at(j) == win.at(i)) return f;
      Tri premise = win.eq(i, k);
      if (r == Restriction::kSNU) premise = tri_and(premise, win.correct(i));
      f.violated = premise;
      f.explanation = w(i) + " = " + w(k) +
                      (r == Restriction::kSNU ? " = target" : "") + " but p(" +
                      std::to_string(j) + ") != p(" + std::to_string(i) + ")";
      return f;
    }
    case Restriction::kSynDec: {
      const std::size_t i = ix[0], j = ix[1], k = ix[2];
      f.violated = syntactic(win.at(i) == win.at(k) && win.at(j) != win.at(i));
      f.explanation = "p(" + std::to_string(i) + ") = p(" + std::to_string(k) +
                      ") but p(" + std::to_string(j) + ") differs";
      return f;
    }
    default:
      return f;
  }
}

Verdict check_ex(Window& win, Verdict v) {
  const std::size_t n = win.size();
  if (n == 0) {
    v.outcome = Outcome::kUnknown;
    v.explanation = "empty window";
    return v;
  }
  std::size_t n0 = n - 1;
  while (n0 > 0 && win.at(n0 - 1) == win.at(n - 1)) --n0;
  v.converged_by = n0;
  const Tri ok = win.correct(n - 1);
  if (ok == Tri::kTrue) {
    v.explanation = "converged by " + std::to_string(n0) + " to a correct conjecture";
  } else if (ok == Tri::kFalse) {
    v.outcome = Outcome::kViolated;
    v.indices = {n - 1};
    v.explanation = "final conjecture " + to_string(win.at(n - 1)) +
                    " is not correct within the window";
  } else {
    v.outcome = Outcome::kUnknown;
    v.explanation = "correctness of the final conjecture is undecided";
  }
  return v;
}

Verdict scan(Restriction r, Window& win, Verdict v) {
  const std::size_t n = win.size();
  bool unknown = false;
  auto visit = [&](const std::vector<std::size_t>& ix) {
    Finding f = clause(r, win, ix);
    if (f.violated == Tri::kTrue) {
      v.outcome = Outcome::kViolated;
      v.indices = ix;
      v.explanation = std::move(f.explanation);
      v.datum = f.datum;
      return true;
    }
    if (f.violated == Tri::kUnknown) unknown = true;
    return false;
  };
  switch (clause_shape(r)) {
    case Shape::kSingle: {
      const std::size_t limit = r == Restriction::kConv ? (n == 0 ? 0 : n - 1) : n;
      for (std::size_t i = 0; i < limit; ++i) {
        if (visit({i})) return v;
      }
      break;
    }
    case Shape::kPair:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (win.at(i) == win.at(j)) continue;
          if (visit({i, j})) return v;
        }
      }
      break;
    case Shape::kTriple:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (win.at(j) == win.at(i)) continue;
          for (std::size_t k = j; k < n; ++k) {
            if (visit({i, j, k})) return v;
          }
        }
      }
      break;
  }
  if (unknown) {
    v.outcome = Outcome::kUnknown;
    v.explanation = "some relation is undecided at depth " +
                    std::to_string(win.oracle().depth());
  }
  return v;
}

}  // namespace

std::string restriction_name(Restriction r) {
  return kRestrictionNames[static_cast<std::size_t>(r)];
}

std::optional<Restriction> parse_restriction(const std::string& name) {
  for (std::size_t i = 0; i < kRestrictionNames.size(); ++i) {
    if (name == kRestrictionNames[i]) return static_cast<Restriction>(i);
  }
  if (name == "Caut_inf" || name == "Caut_Infinite") return Restriction::kCautInf;
  return std::nullopt;
}

std::vector<Restriction> all_restrictions() {
  std::vector<Restriction> out;
  for (std::size_t i = 0; i < kRestrictionNames.size(); ++i) {
    out.push_back(static_cast<Restriction>(i));
  }
  return out;
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kHolds:
      return "Holds";
    case Outcome::kViolated:
      return "ViolatedAt";
    case Outcome::kUnknown:
      return "Unknown";
  }
  return "?";
}

Verdict check(Restriction r, const HypothesisSequence& p, const TextSource& text,
              const LanguageOracle& oracle, CheckOptions options) {
  Window win(p, text, oracle, options);
  Verdict v;
  v.restriction = r;
  v.depth = win.size();
  v.bounded = win.bounded();
  if (r == Restriction::kT) return v;
  if (r == Restriction::kEx) return check_ex(win, v);
  return scan(r, win, v);
}

bool reverify(const Verdict& v, const HypothesisSequence& p, const TextSource& text,
              const LanguageOracle& oracle) {
  if (!v.violated()) return false;
  Window win(p, text, oracle, CheckOptions{true});
  for (std::size_t i : v.indices) {
    if (i >= win.size()) return false;
  }
  if (v.restriction == Restriction::kEx) {
    return v.indices.size() == 1 && v.indices[0] + 1 == win.size() &&
           win.correct(v.indices[0]) == Tri::kFalse;
  }
  const std::size_t arity = clause_shape(v.restriction) == Shape::kSingle ? 1
                            : clause_shape(v.restriction) == Shape::kPair ? 2
                                                                          : 3;
  if (v.indices.size() != arity) return false;
  // Pairs and triples need i < j; triples allow j = k.
  if (arity > 1 && v.indices[0] >= v.indices[1]) return false;
  if (arity == 3 && v.indices[1] > v.indices[2]) return false;
  if (v.restriction == Restriction::kConv && v.indices[0] + 1 >= win.size()) {
    return false;
  }
  return clause(v.restriction, win, v.indices).violated == Tri::kTrue;
}

std::string to_tsv(const Verdict& v) {
  std::string indices;
  for (std::size_t k = 0; k < v.indices.size(); ++k) {
    if (k > 0) indices += ",";
    indices += std::to_string(v.indices[k]);
  }
  if (indices.empty()) indices = "-";
  return restriction_name(v.restriction) + "\t" + outcome_name(v.outcome) + "\t" +
         indices + "\t" + std::to_string(v.depth);
}

std::optional<Sequence> find_locking(const Learner& h, const SetShape& language,
                                     const LanguageOracle& oracle,
                                     LockingSearch limits) {
  const NatSet data = language.elements_upto(oracle.universe());
  const std::vector<Elem> alphabet = alphabet_of(data, true);
  std::vector<Sequence> probes = enumerate_sequences(alphabet, limits.probe_len);
  CodeOrderSearch candidates({}, alphabet, limits.max_len);
  for (std::size_t seen = 0; seen < limits.max_candidates; ++seen) {
    auto sigma = candidates.next();
    if (!sigma) break;
    const Conjecture c = h(*sigma);
    if (!c || oracle.equals_target(*c, language) != Tri::kTrue) continue;
    bool locked = true;
    for (const Sequence& tau : probes) {
      if (tau.empty()) continue;
      if (h(concat(*sigma, tau)) != c) {
        locked = false;
        break;
      }
    }
    if (locked) return sigma;
  }
  return std::nullopt;
}

}  // namespace limitlearn
