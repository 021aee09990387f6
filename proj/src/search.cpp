#include "cutr/search.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>

#include "cutr/errors.hpp"
#include "cutr/parse.hpp"
#include "cutr/proof_io.hpp"

namespace cutr {

std::string_view to_string(CutPolicy p) {
  switch (p) {
    case CutPolicy::None:
      return "none";
    case CutPolicy::Analytic:
      return "analytic";
    case CutPolicy::Pool:
      return "pool";
  }
  return "?";
}

std::optional<CutPolicy> cut_policy_from_string(std::string_view s) {
  for (auto p : {CutPolicy::None, CutPolicy::Analytic, CutPolicy::Pool})
    if (to_string(p) == s) return p;
  return std::nullopt;
}

namespace {

Formulas remove_at(Formulas xs, std::size_t i) {
  xs.erase(xs.begin() + static_cast<long>(i));
  return xs;
}

Formulas plus(Formulas xs, std::initializer_list<Formula> fs) {
  xs.insert(xs.end(), fs.begin(), fs.end());
  return xs;
}

bool contains(const Formulas& xs, const Formula& f) { return std::find(xs.begin(), xs.end(), f) != xs.end(); }

std::string key_of(const Sequent& s) {
  Sequent k = s;
  std::sort(k.ante.begin(), k.ante.end());
  std::sort(k.succ.begin(), k.succ.end());
  return print_sequent(k);
}

class Searcher {
 public:
  Searcher(CalculusId c, const SearchPolicy& pol) : c_(c), pol_(pol) {}

  Proof prove(const Sequent& s, std::size_t d) {
    ++explored;
    if (d == 0) return nullptr;
    if (Proof ax = axiom(s)) return ax;
    const std::string key = key_of(s);
    if (auto it = failed_.find(key); it != failed_.end() && it->second >= d) return nullptr;
    Proof r = step(s, d);
    if (!r) failed_[key] = std::max(failed_[key], d);
    return r;
  }

  std::size_t explored = 0;

 private:
  CalculusId c_;
  const SearchPolicy& pol_;
  std::unordered_map<std::string, std::size_t> failed_;

  Proof axiom(const Sequent& s) {
    for (std::size_t i = 0; i < s.ante.size(); ++i) {
      if (s.ante[i].is(Connective::Bot)) return make_node(c_, RuleId::BotL, s, {{Side::Ante, i}}, {});
      if (!s.ante[i].is_atom()) continue;
      for (std::size_t j = 0; j < s.succ.size(); ++j)
        if (s.succ[j] == s.ante[i]) return make_node(c_, RuleId::Init, s, {{Side::Ante, i}, {Side::Succ, j}}, {});
    }
    for (std::size_t j = 0; j < s.succ.size(); ++j)
      if (s.succ[j].is(Connective::Top)) return make_node(c_, RuleId::TopR, s, {{Side::Succ, j}}, {});
    return nullptr;
  }

  /// Applies r at o over the given premises; null if a premise fails.
  Proof branch(const Sequent& s, RuleId r, Occ o, const std::vector<Sequent>& prems, std::size_t d) {
    std::vector<NodePtr> kids;
    for (const auto& p : prems) {
      Proof k = prove(p, d - 1);
      if (!k) return nullptr;
      kids.push_back(std::move(k));
    }
    return make_node(c_, r, s, {o}, std::move(kids));
  }

  Proof step(const Sequent& s, std::size_t d) {
    const bool s5 = c_ == CalculusId::S5;
    // Invertible rules: the first applicable one is committed to.
    for (std::size_t i = 0; i < s.ante.size(); ++i) {
      const Formula& f = s.ante[i];
      const Formulas rest = remove_at(s.ante, i);
      const Occ o{Side::Ante, i};
      switch (f.kind()) {
        case Connective::Top:
          return branch(s, RuleId::TopL, o, {{rest, s.succ}}, d);
        case Connective::And:
          return branch(s, RuleId::AndL, o, {{plus(rest, {f.left(), f.right()}), s.succ}}, d);
        case Connective::Or:
          return branch(s, RuleId::OrL, o, {{plus(rest, {f.left()}), s.succ}, {plus(rest, {f.right()}), s.succ}}, d);
        case Connective::Neg:
          if (s5) return branch(s, RuleId::NegL, o, {{rest, plus(s.succ, {f.operand()})}}, d);
          break;
        default:
          break;
      }
    }
    for (std::size_t i = 0; i < s.succ.size(); ++i) {
      const Formula& f = s.succ[i];
      const Formulas rest = remove_at(s.succ, i);
      const Occ o{Side::Succ, i};
      switch (f.kind()) {
        case Connective::Bot:
          return branch(s, RuleId::BotR, o, {{s.ante, rest}}, d);
        case Connective::Or:
          return branch(s, RuleId::OrR, o, {{s.ante, plus(rest, {f.left(), f.right()})}}, d);
        case Connective::And:
          return branch(s, RuleId::AndR, o, {{s.ante, plus(rest, {f.left()})}, {s.ante, plus(rest, {f.right()})}}, d);
        case Connective::Neg:
          if (s5) return branch(s, RuleId::NegR, o, {{plus(s.ante, {f.operand()}), rest}}, d);
          break;
        default:
          break;
      }
    }
    if (Proof p = s5 ? modal(s, d) : intuitionistic(s, d)) return p;
    return cuts(s, d);
  }

  Proof intuitionistic(const Sequent& s, std::size_t d) {
    for (std::size_t i = 0; i < s.succ.size(); ++i) {
      const Formula& f = s.succ[i];
      if (f.is(Connective::Imp)) {
        if (Proof p = branch(s, RuleId::ImpR, {Side::Succ, i}, {{plus(s.ante, {f.left()}), {f.right()}}}, d)) return p;
      }
    }
    for (std::size_t i = 0; i < s.ante.size(); ++i) {
      const Formula& f = s.ante[i];
      if (f.is(Connective::Coimp)) {
        const Sequent prem{{f.left()}, plus(s.succ, {f.right()})};
        if (Proof p = branch(s, RuleId::CoimpL, {Side::Ante, i}, {prem}, d)) return p;
      }
    }
    for (std::size_t i = 0; i < s.ante.size(); ++i) {
      const Formula& f = s.ante[i];
      if (!f.is(Connective::Imp) || (contains(s.succ, f.left()) && contains(s.ante, f.right()))) continue;
      const std::vector<Sequent> prems{{s.ante, plus(s.succ, {f.left()})}, {plus(s.ante, {f.right()}), s.succ}};
      if (Proof p = branch(s, RuleId::ImpL, {Side::Ante, i}, prems, d)) return p;
    }
    for (std::size_t i = 0; i < s.succ.size(); ++i) {
      const Formula& f = s.succ[i];
      if (!f.is(Connective::Coimp) || (contains(s.succ, f.left()) && contains(s.ante, f.right()))) continue;
      const std::vector<Sequent> prems{{s.ante, plus(s.succ, {f.left()})}, {plus(s.ante, {f.right()}), s.succ}};
      if (Proof p = branch(s, RuleId::CoimpR, {Side::Succ, i}, prems, d)) return p;
    }
    return nullptr;
  }

  Proof modal(const Sequent& s, std::size_t d) {
    // T keeps a copy of its principal formula through a contraction.
    for (std::size_t i = 0; i < s.ante.size(); ++i) {
      const Formula& f = s.ante[i];
      if (!f.is(Connective::Box) || contains(s.ante, f.operand()) || count(s.ante, f) > 1) continue;
      if (Proof k = prove({plus(s.ante, {f.operand()}), s.succ}, d - 1)) {
        Sequent two{plus(s.ante, {f}), s.succ};
        Proof t = make_node(c_, RuleId::T, two, {{Side::Ante, two.ante.size() - 1}}, {k});
        return contract(c_, t, Side::Ante, f);
      }
    }
    // Five after weakening away the unboxed context.
    Formulas boxed_ante, loose_ante;
    for (const auto& f : s.ante) (is_boxed(f) ? boxed_ante : loose_ante).push_back(f);
    for (std::size_t i = 0; i < s.succ.size(); ++i) {
      const Formula& f = s.succ[i];
      if (!f.is(Connective::Box)) continue;
      Formulas boxed_succ, loose_succ;
      for (std::size_t j = 0; j < s.succ.size(); ++j)
        if (j != i) (is_boxed(s.succ[j]) ? boxed_succ : loose_succ).push_back(s.succ[j]);
      const Sequent prem{boxed_ante, plus(boxed_succ, {f.operand()})};
      if (Proof k = prove(prem, d - 1)) {
        const Sequent concl{boxed_ante, plus(boxed_succ, {f})};
        Proof five = make_node(c_, RuleId::Five, concl, {{Side::Succ, concl.succ.size() - 1}}, {k});
        return weaken(c_, five, loose_ante, loose_succ);
      }
    }
    return nullptr;
  }

  Proof cuts(const Sequent& s, std::size_t d) {
    if (pol_.cut == CutPolicy::None) return nullptr;
    Formulas cands;
    if (pol_.cut == CutPolicy::Pool) {
      cands = dedup(pol_.pool);
    } else {
      for (const auto& f : members(s))
        for (const auto& g : subformulas(f)) cands.push_back(g);
      cands = dedup(cands);
    }
    for (const auto& f : cands) {
      if (contains(s.ante, f) || contains(s.succ, f)) continue;
      Proof l = prove({s.ante, plus(s.succ, {f})}, d - 1);
      if (!l) continue;
      Proof r = prove({plus(s.ante, {f}), s.succ}, d - 1);
      if (!r) continue;
      return cut(c_, l, r, f);
    }
    return nullptr;
  }
};

}  // namespace

SearchResult prove_bounded(CalculusId c, const Sequent& goal, const SearchPolicy& pol) {
  if (!in_signature(goal, c)) throw SignatureError("goal " + print_sequent(goal) + " is outside " + std::string(to_string(c)));
  for (const auto& f : pol.pool)
    if (!in_signature(f, c)) throw SignatureError("pool formula " + print_formula(f) + " is outside the signature");
  Searcher s(c, pol);
  SearchResult out;
  out.proof = s.prove(goal, pol.depth_bound);
  out.explored = s.explored;
  return out;
}

Sequent s5_witness() { return parse_sequent("p |- []~[]~p"); }

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

class Gen {
 public:
  Gen(CalculusId c, std::uint64_t seed) : c_(c), rng_(seed) {}

  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  Formula formula(std::size_t size, std::size_t atoms) {
    static const char* names[] = {"p", "q", "r", "s"};
    if (size <= 1) {
      const std::size_t k = pick(atoms + 2);
      if (k < atoms) return Formula::atom(names[k]);
      return k == atoms ? Formula::top() : Formula::bot();
    }
    if (c_ == CalculusId::S5 && pick(3) == 0)
      return pick(2) ? Formula::neg(formula(size - 1, atoms)) : Formula::box(formula(size - 1, atoms));
    const std::size_t l = 1 + pick(size - 1);
    const Connective bin[] = {Connective::And, Connective::Or, Connective::Imp, Connective::Coimp};
    const std::size_t nbin = c_ == CalculusId::S5 ? 2 : 4;
    return Formula::binary(bin[pick(nbin)], formula(l, atoms), formula(size - l, atoms));
  }

  /// Fresh cut formula: not a subformula of the goal, not an atom.
  Formula cut_formula_for(const Sequent& goal) {
    while (true) {
      Formula f = c_ == CalculusId::S5 ? Formula::box(formula(1 + pick(3), 3)) : formula(2 + pick(3), 4);
      if (!f.is_atom() && !f.is_constant() && !is_subformula(f, members(goal))) return f;
    }
  }

  Sequent goal() {
    Sequent s;
    const std::size_t na = pick(3);
    for (std::size_t i = 0; i < na; ++i) {
      Formula f = formula(1 + pick(4), 3);
      if (c_ == CalculusId::S5 && pick(2) == 0) f = Formula::box(f);
      s.ante.push_back(f);
    }
    s.succ.push_back(formula(1 + pick(5), 3));
    return s;
  }

 private:
  CalculusId c_;
  std::mt19937_64 rng_;
};

Proof search(CalculusId c, const Sequent& s, std::size_t depth) {
  SearchPolicy pol;
  pol.depth_bound = depth;
  return prove_bounded(c, s, pol).proof;
}

/// S5: Γ ⇒ □X, Δ through Five on □X where possible, so that the cut
/// formula has a critical inference.
Proof five_on(const Sequent& s, const Formula& D, std::size_t depth) {
  Formulas ba, la, bs, ls;
  for (const auto& f : s.ante) (is_boxed(f) ? ba : la).push_back(f);
  for (const auto& f : s.succ) (is_boxed(f) ? bs : ls).push_back(f);
  Proof k = search(CalculusId::S5, {ba, concat(bs, {D.operand()})}, depth);
  if (!k) return search(CalculusId::S5, {s.ante, concat(s.succ, {D})}, depth);
  const Sequent concl{ba, concat(bs, {D})};
  Proof five = make_node(CalculusId::S5, RuleId::Five, concl, {{Side::Succ, concl.succ.size() - 1}}, {k});
  return weaken(CalculusId::S5, five, la, ls);
}

/// S5: Γ, □X ⇒ Δ through T on □X where possible.
Proof t_on(const Sequent& s, const Formula& D, std::size_t depth) {
  Proof k = search(CalculusId::S5, {concat(s.ante, {D.operand()}), s.succ}, depth);
  if (!k) return search(CalculusId::S5, {concat(s.ante, {D}), s.succ}, depth);
  const Sequent concl{concat(s.ante, {D}), s.succ};
  return make_node(CalculusId::S5, RuleId::T, concl, {{Side::Ante, concl.ante.size() - 1}}, {k});
}

}  // namespace

std::vector<CorpusItem> generate_corpus(CalculusId c, std::uint64_t seed, std::size_t count) {
  constexpr std::size_t kDepth = 5;
  constexpr std::size_t kMaxHeight = 12;
  Gen g(c, seed);
  std::vector<CorpusItem> out;
  while (out.size() < count) {
    const Sequent goal = g.goal();
    if (!search(c, goal, kDepth)) continue;
    const Formula D = g.cut_formula_for(goal);
    const bool s5 = c == CalculusId::S5;
    Proof left = s5 ? five_on(goal, D, kDepth) : search(c, {goal.ante, concat(goal.succ, {D})}, kDepth);
    Proof right = s5 ? t_on(goal, D, kDepth) : search(c, {concat(goal.ante, {D}), goal.succ}, kDepth);
    if (!left || !right) continue;
    if (g.pick(2) == 0) {
      // A second non-analytic cut above the first one.
      const Sequent lg = left->sequent();
      const Formula E = g.cut_formula_for(lg);
      Proof l1 = s5 ? five_on(lg, E, kDepth) : search(c, {lg.ante, concat(lg.succ, {E})}, kDepth);
      Proof l2 = s5 ? t_on(lg, E, kDepth) : search(c, {concat(lg.ante, {E}), lg.succ}, kDepth);
      if (l1 && l2) left = cut(c, l1, l2, E);
    }
    Proof p = cut(c, left, right, D);
    if (height(p) > kMaxHeight) continue;
    const AnalyticityAudit a = check_proof(c, p);
    if (a.nonanalytic_formulas.empty()) continue;
    std::ostringstream name;
    name << to_string(c) << "_" << seed << "_" << out.size();
    out.push_back({name.str(), goal, p});
  }
  return out;
}

std::string corpus_manifest(CalculusId c, std::uint64_t seed, const std::vector<CorpusItem>& items) {
  std::ostringstream os;
  os << "calculus=" << to_string(c) << "\n"
     << "seed=" << seed << "\n"
     << "count=" << items.size() << "\n"
     << "max_height=12\n";
  for (const auto& it : items) {
    os << it.name << ".prf height=" << height(it.proof) << " cuts=" << cut_count(it.proof) << " fnv1a=" << std::hex
       << fnv1a(write_proof_text(c, it.proof)) << std::dec << "\n";
  }
  return os.str();
}

}  // namespace cutr
