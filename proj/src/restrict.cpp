#include "cutr/restrict.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "cutr/errors.hpp"
#include "cutr/parse.hpp"

namespace cutr {

std::string RestrictionReport::to_kv() const {
  std::ostringstream os;
  os << "cuts_before=" << cuts_before << "\n"
     << "cuts_after=" << cuts_after << "\n"
     << "max_cut_size_before=" << max_cut_size_before << "\n"
     << "max_cut_size_after=" << max_cut_size_after << "\n"
     << "recursive_invocations=" << recursive_invocations << "\n"
     << "tuples_expanded=" << tuples_expanded << "\n"
     << "criticals_delta1=" << criticals_delta1 << "\n"
     << "criticals_delta2=" << criticals_delta2 << "\n"
     << "assertions_checked=" << assertions_checked << "\n"
     << "max_depth=" << max_depth << "\n"
     << "broken_repaired=" << broken_repaired << "\n";
  return os.str();
}

void tameness_assert(const Trace& t, const Sequent& endsequent, const Formula& C) {
  const Formulas end = members(endsequent);
  for (std::size_t r = 0; r < t.criticals.size(); ++r) {
    const auto& cr = t.criticals[r];
    for (const auto& f : concat(cr.sigma, cr.pi)) {
      if (is_subformula(f, end)) continue;
      if (f != C && is_subformula_of(f, C)) continue;
      throw InternalError("tameness violated: critical r=" + std::to_string(r + 1) + " (node " +
                          std::to_string(cr.node) + ") has " + print_formula(f) +
                          ", neither a subformula of the endsequent nor a proper subformula of " + print_formula(C));
    }
  }
}

namespace {

NodePtr find_walk(const NodePtr& n, long& next, long target) {
  const long id = next++;
  if (id == target) return n;
  for (const auto& k : n->children)
    if (auto r = find_walk(k, next, target)) return r;
  return nullptr;
}

NodePtr subproof(const Proof& p, long id) {
  long next = 0;
  if (auto r = find_walk(p, next, id)) return r;
  throw InternalError("no node " + std::to_string(id));
}

std::size_t sizes_walk(const NodePtr& n, std::vector<std::size_t>& out) {
  const std::size_t me = out.size();
  out.push_back(1);
  std::size_t total = 1;
  for (const auto& k : n->children) total += sizes_walk(k, out);
  out[me] = total;
  return total;
}

/// Subtree size per preorder id.
std::vector<std::size_t> subtree_sizes(const Proof& p) {
  std::vector<std::size_t> out;
  sizes_walk(p, out);
  return out;
}

bool above(const std::vector<std::size_t>& sizes, long low, long high) {
  return high > low && high < low + static_cast<long>(sizes[static_cast<std::size_t>(low)]);
}

/// First non-analytic cut in postorder: nothing above it is a non-analytic cut.
long uppermost_walk(const NodePtr& n, long& next) {
  const long id = next++;
  for (const auto& k : n->children) {
    const long r = uppermost_walk(k, next);
    if (r >= 0) return r;
  }
  if (n->rule() == RuleId::Cut && !is_analytic_cut(n->inst)) return id;
  return -1;
}

long uppermost_nonanalytic(const Proof& p) {
  long next = 0;
  return uppermost_walk(p, next);
}

/// A choice D_r together with where it came from: Ante for the critical
/// antecedent Σ_r, Succ for the boxed critical succedent Θ_r (S5).
struct Option {
  Formula f;
  Side from;
};

struct Sides {
  Proof d1, d2;
  OccRef s1, s2;
  Trace t1, t2;
};

struct Engine {
  CalculusId c;
  RestrictionReport& rep;
  std::size_t root_size = 0;

  void check(bool ok, const std::string& what) {
    ++rep.assertions_checked;
    if (!ok) throw InternalError(what);
  }

  /// Restricts every non-analytic cut of p, uppermost first. With C set,
  /// each must be on a proper subformula of C (or on C itself when
  /// same_size, which does not count as a level of recursion).
  Proof below(Proof p, const Formula* C, std::size_t depth, bool same_size = false) {
    while (true) {
      const long id = uppermost_nonanalytic(p);
      if (id < 0) return p;
      const Proof sub = subproof(p, id);
      const Formula D = cut_formula(sub->inst);
      if (C) {
        const bool ok = same_size ? D == *C : D != *C && is_subformula_of(D, *C);
        check(ok, "measure violated: cut on " + print_formula(D) + " under " + print_formula(*C));
      }
      const Proof out = bottom(sub, same_size ? depth : depth + 1);
      p = replace_subproof(c, p, id, out);
    }
  }

  Proof bottom(const Proof& p, std::size_t depth) {
    if (p->rule() != RuleId::Cut) throw PreconditionError("restrict: root is not a cut");
    if (is_analytic_cut(p->inst)) throw PreconditionError("restrict: root cut is analytic");
    if (!is_locally_analytic(p->children[0]) || !is_locally_analytic(p->children[1]))
      throw PreconditionError("restrict: a premise proof has a non-analytic cut");
    const Formula C = cut_formula(p->inst);
    ++rep.recursive_invocations;
    rep.max_depth = std::max(rep.max_depth, depth);
    if (depth == 1) root_size = C.size();
    check(depth <= root_size, "recursion depth " + std::to_string(depth) + " exceeds size " + std::to_string(root_size));

    Proof out = dispatch(p, C, depth);
    check(multiset_equal(out->sequent(), p->sequent()),
          "restrict changed the endsequent: " + out->sequent().str() + " vs " + p->sequent().str());
    check(is_locally_analytic(out), "restrict left a non-analytic cut");
    return out;
  }

  Proof dispatch(const Proof& p, const Formula& C, std::size_t depth) {
    switch (C.kind()) {
      case Connective::Atom:
        return atomic_case(p, C);
      case Connective::Top:
        return constant_case(p, C, 1, RuleId::TopL);
      case Connective::Bot:
        return constant_case(p, C, 0, RuleId::BotR);
      case Connective::And:
      case Connective::Or:
      case Connective::Neg:
        return invertible_case(p, C, depth);
      case Connective::Imp:
        return imp_case(p, C, depth);
      case Connective::Coimp:
        return dualize_proof(imp_case(dualize_proof(p), dualize(C), depth));
      case Connective::Box:
        return box_case(p, C, depth);
    }
    throw InternalError("unknown connective");
  }

  // ---- atomic ----

  static Formula atomic_target(const Sequent& end) {
    std::vector<std::string> names;
    for (const auto& f : members(end))
      for (const auto& a : atoms_of(f)) names.push_back(a);
    if (!names.empty()) return Formula::atom(*std::min_element(names.begin(), names.end()));
    if (is_subformula(Formula::top(), members(end))) return Formula::top();
    return Formula::bot();
  }

  Proof replace_atom_in(const NodePtr& n, const Formula& q, const Formula& x,
                        std::unordered_map<const ProofNode*, Proof>& memo) {
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    std::vector<NodePtr> kids;
    for (const auto& k : n->children) kids.push_back(replace_atom_in(k, q, x, memo));
    Sequent s = n->sequent();
    for (auto& f : s.ante) f = replace_atom(f, q.name(), x);
    for (auto& f : s.succ) f = replace_atom(f, q.name(), x);
    const auto& pr = n->inst.principal;
    Proof out;
    if (n->rule() == RuleId::Init && n->sequent().ante[pr[0].index] == q && !x.is_atom()) {
      out = x.is(Connective::Top) ? make_node(c, RuleId::TopR, std::move(s), {pr[1]}, {})
                                  : make_node(c, RuleId::BotL, std::move(s), {pr[0]}, {});
    } else {
      out = make_node(c, n->rule(), std::move(s), pr, std::move(kids));
    }
    memo.emplace(n.get(), out);
    return out;
  }

  Proof atomic_case(const Proof& p, const Formula& C) {
    check(!is_subformula(C, members(p->sequent())), "atomic cut formula occurs in the endsequent");
    const Formula x = atomic_target(p->sequent());
    std::unordered_map<const ProofNode*, Proof> memo;
    Proof out = replace_atom_in(p, C, x, memo);
    check(out->sequent() == p->sequent(), "atomic replacement changed the endsequent");
    return out;
  }

  // ---- shared machinery ----

  Proof irredundant(const Proof& d, const Formula& C, OccRef seed) {
    Proof out = enforce_irredundance(c, d, C, seed);
    const Trace t = compute_trace(out, seed_of(out, seed.side, C));
    const auto nodes = preorder(out);
    for (std::size_t id = 0; id < nodes.size(); ++id) {
      const ProofNode* n = nodes[id];
      if (n->rule() == RuleId::Cut && cut_formula(n->inst) == C)
        check(t.at(static_cast<long>(id)).empty(), "irredundance: cut on C at node " + std::to_string(id));
    }
    return out;
  }

  /// The cut formula occurs once in a premise of a non-analytic cut, so it
  /// can be found again after rewrites reorder the root.
  static OccRef seed_of(const Proof& d, Side side, const Formula& C) {
    check_once(d->sequent().side(side), C);
    return {0, side, find_occ(d->sequent(), side, C).index};
  }

  static void check_once(const Formulas& xs, const Formula& C) {
    if (count(xs, C) != 1) throw InternalError("cut formula " + print_formula(C) + " is not unique in its premise");
  }

  Sides prepare(const Proof& p, const Formula& C) {
    Sides s;
    s.d1 = irredundant(p->children[0], C, seed_of(p->children[0], Side::Succ, C));
    s.d2 = irredundant(p->children[1], C, seed_of(p->children[1], Side::Ante, C));
    s.s1 = seed_of(s.d1, Side::Succ, C);
    s.s2 = seed_of(s.d2, Side::Ante, C);
    s.t1 = compute_trace(s.d1, s.s1);
    s.t2 = compute_trace(s.d2, s.s2);
    return s;
  }

  SubstResult subst(const Proof& d, const Trace& t, const Replacement& r, const CriticalRepair& fix,
                    const Formula& C) {
    SubstResult res = substitute(c, d, t, r, fix);
    ++rep.assertions_checked;  // broken ⊆ criticals, checked by substitute
    reductivity_audit(res, C);
    ++rep.assertions_checked;
    rep.broken_repaired += res.broken.size();
    return res;
  }

  /// Repair that splices premise k of a broken critical of rule r.
  CriticalRepair take_premise(std::size_t k, RuleId r) {
    return [this, k, r](const ProofNode& orig, long id, const Sequent& concl, const std::vector<Proof>& kids) -> Proof {
      check(orig.rule() == r, "unexpected critical " + std::string(to_string(orig.rule())) + " at node " +
                                  std::to_string(id));
      return fit(c, kids[k], concl);
    };
  }

  Proof finish(Proof out, const Proof& p, const Formula& C, std::size_t depth) {
    out = below(std::move(out), &C, depth);
    return fit(c, out, p->sequent());
  }

  // ---- ⊤ and ⊥ ----

  /// k = 1: ⊤ traced in δ2; k = 0: ⊥ traced in δ1. The only criticals are
  /// top_L (bot_R) nodes, which collapse to their premise.
  Proof constant_case(const Proof& p, const Formula& C, std::size_t k, RuleId critical) {
    const Side side = k == 0 ? Side::Succ : Side::Ante;
    const Proof d = irredundant(p->children[k], C, seed_of(p->children[k], side, C));
    const Trace t = compute_trace(d, seed_of(d, side, C));
    (k == 0 ? rep.criticals_delta1 : rep.criticals_delta2) += t.criticals.size();
    const SubstResult res = subst(d, t, {}, take_premise(0, critical), C);
    return fit(c, res.proof, p->sequent());
  }

  // ---- ∧, ∨, ¬ ----

  Proof invertible_case(const Proof& p, const Formula& C, std::size_t depth) {
    const Sides s = prepare(p, C);
    rep.criticals_delta1 += s.t1.criticals.size();
    rep.criticals_delta2 += s.t2.criticals.size();
    const Formula A = C.left();
    Proof out;
    if (C.is(Connective::And)) {
      const Formula B = C.right();
      const Proof a1 = subst(s.d1, s.t1, {{}, {A}}, take_premise(0, RuleId::AndR), C).proof;
      const Proof b1 = subst(s.d1, s.t1, {{}, {B}}, take_premise(1, RuleId::AndR), C).proof;
      const Proof ab2 = subst(s.d2, s.t2, {{A, B}, {}}, take_premise(0, RuleId::AndL), C).proof;
      out = cut_star(c, a1, cut_star(c, b1, ab2, B), A);
    } else if (C.is(Connective::Or)) {
      const Formula B = C.right();
      const Proof ab1 = subst(s.d1, s.t1, {{}, {A, B}}, take_premise(0, RuleId::OrR), C).proof;
      const Proof a2 = subst(s.d2, s.t2, {{A}, {}}, take_premise(0, RuleId::OrL), C).proof;
      const Proof b2 = subst(s.d2, s.t2, {{B}, {}}, take_premise(1, RuleId::OrL), C).proof;
      out = cut_star(c, cut_star(c, ab1, a2, A), b2, B);
    } else {
      const Proof l = subst(s.d1, s.t1, {{A}, {}}, take_premise(0, RuleId::NegR), C).proof;
      const Proof r = subst(s.d2, s.t2, {{}, {A}}, take_premise(0, RuleId::NegL), C).proof;
      out = cut_star(c, r, l, A);
    }
    return finish(out, p, C, depth);
  }

  // ---- Steps 1-3 (⊃ and □) ----

  /// eps_raw(r): Step 1 proof of Γ, Σ_r ⇒ Δ, Θ_r (Θ_r empty for ⊃).
  Proof three_steps(const Proof& p, const Formula& C, std::size_t depth, const Proof& d1, const Trace& t1,
                    const std::vector<std::vector<Option>>& opts, const std::function<Proof(std::size_t)>& eps_raw) {
    const std::size_t n = opts.size();
    std::vector<std::optional<Proof>> eps(n);
    auto epsilon = [&](std::size_t r) -> Proof {
      if (!eps[r]) eps[r] = below(eps_raw(r), &C, depth);
      return *eps[r];
    };
    for (std::size_t r = 0; r < n; ++r)
      if (opts[r].empty()) return fit(c, epsilon(r), p->sequent());

    std::map<long, std::size_t> crit_index;
    for (std::size_t r = 0; r < n; ++r) crit_index[t1.criticals[r].node] = r;

    // Step 2: δ1[D_1..D_n] per tuple.
    std::map<std::vector<std::size_t>, Proof> phis;
    auto phi = [&](const std::vector<std::size_t>& tuple) -> Proof {
      if (auto it = phis.find(tuple); it != phis.end()) return it->second;
      Replacement rp;
      for (std::size_t r = 0; r < n; ++r) {
        const Option& o = opts[r][tuple[r]];
        (o.from == Side::Ante ? rp.succ : rp.ante).push_back(o.f);
      }
      CriticalRepair fix = [&](const ProofNode&, long id, const Sequent& concl, const std::vector<Proof>&) -> Proof {
        const auto it = crit_index.find(id);
        check(it != crit_index.end(), "broken node " + std::to_string(id) + " is not a δ1 critical");
        const Formula& D = opts[it->second][tuple[it->second]].f;
        Formulas a = concl.ante, s = concl.succ;
        check(remove_one(a, D) && remove_one(s, D), "no axiom on " + print_formula(D) + " in " + concl.str());
        return expand_axiom(c, a, D, s);
      };
      const SubstResult res = subst(d1, t1, rp, fix, C);
      ++rep.tuples_expanded;
      Proof out = below(res.proof, &C, depth);
      phis.emplace(tuple, out);
      return out;
    };

    // Step 3: eliminate the choices of critical 1, then 2, ...; psi(suffix)
    // proves Γ ⇒ Δ plus the choices in suffix.
    const Sequent& end = p->sequent();
    std::map<std::vector<std::size_t>, Proof> psis;
    std::function<Proof(const std::vector<std::size_t>&)> psi = [&](const std::vector<std::size_t>& suf) -> Proof {
      const std::size_t k = n - suf.size();
      if (k == 0) return phi(suf);
      if (auto it = psis.find(suf); it != psis.end()) return it->second;
      const std::size_t r = k - 1;
      Sequent target = end;
      for (const Option& o : opts[r]) target.side(o.from).push_back(o.f);
      Proof cur = fit(c, epsilon(r), target);
      for (std::size_t j = 0; j < opts[r].size(); ++j) {
        std::vector<std::size_t> full{j};
        full.insert(full.end(), suf.begin(), suf.end());
        const Proof ph = psi(full);
        const Option& o = opts[r][j];
        cur = o.from == Side::Ante ? cut_star(c, ph, cur, o.f) : cut_star(c, cur, ph, o.f);
      }
      cur = below(cur, &C, depth);
      psis.emplace(suf, cur);
      return cur;
    };
    return fit(c, psi({}), end);
  }

  void no_shared_branch(const Proof& d1, const Trace& t1) {
    const auto sizes = subtree_sizes(d1);
    for (const auto& a : t1.criticals)
      for (const auto& b : t1.criticals)
        check(!above(sizes, a.node, b.node),
              "criticals " + std::to_string(a.node) + " and " + std::to_string(b.node) + " share a branch");
  }

  Proof imp_case(const Proof& p, const Formula& C, std::size_t depth) {
    Sides s = prepare(p, C);
    const Formula A = C.left(), B = C.right();

    // imp_R criticals with a succedent context become imp_R on Σ ⇒ A⊃B
    // followed by weakenings; the context was dropped by imp_R anyway.
    std::set<long> wide;
    for (const auto& cr : s.t1.criticals)
      if (cr.rule == RuleId::ImpR && (!cr.pi.empty() || cr.predecessor_count_in_conclusion > 1)) wide.insert(cr.node);
    if (!wide.empty()) {
      s.d1 = rebuild(c, s.d1, [&](const ProofNode& orig, long id, std::vector<NodePtr> kids) -> NodePtr {
        if (!wide.count(id)) return nullptr;
        Proof imp = make_node(c, RuleId::ImpR, Sequent{orig.sequent().ante, {C}}, {Occ{Side::Succ, 0}}, kids);
        Formulas rest = orig.sequent().succ;
        remove_one(rest, C);
        return weaken(c, imp, {}, rest);
      });
      s.s1 = seed_of(s.d1, Side::Succ, C);
      s.t1 = compute_trace(s.d1, s.s1);
    }
    rep.criticals_delta1 += s.t1.criticals.size();
    rep.criticals_delta2 += s.t2.criticals.size();
    for (const auto& cr : s.t1.criticals)
      check(cr.rule == RuleId::ImpR && cr.predecessor_count_in_conclusion == 1 && cr.pi.empty(),
            "δ1 critical at node " + std::to_string(cr.node) + " is not a plain imp_R");
    for (const auto& cr : s.t2.criticals)
      check(cr.rule == RuleId::ImpL, "δ2 critical at node " + std::to_string(cr.node) + " is not imp_L");
    no_shared_branch(s.d1, s.t1);
    tameness_assert(s.t1, p->sequent(), C);
    ++rep.assertions_checked;

    std::vector<std::vector<Option>> opts;
    for (const auto& cr : s.t1.criticals) {
      std::vector<Option> o;
      for (const auto& f : dedup(cr.sigma)) o.push_back({f, Side::Ante});
      opts.push_back(std::move(o));
    }
    auto eps_raw = [&](std::size_t r) -> Proof {
      const auto& cr = s.t1.criticals[r];
      const Proof pi = subproof(s.d1, cr.node)->children[0];
      CriticalRepair fix = [&, pi](const ProofNode& orig, long id, const Sequent& concl,
                                   const std::vector<Proof>& kids) -> Proof {
        check(orig.rule() == RuleId::ImpL, "unexpected δ2 critical at node " + std::to_string(id));
        Proof x = cut_star(c, kids[0], pi, A);
        x = cut_star(c, x, kids[1], B);
        return fit(c, x, concl);
      };
      return subst(s.d2, s.t2, {cr.sigma, {}}, fix, C).proof;
    };
    return three_steps(p, C, depth, s.d1, s.t1, opts, eps_raw);
  }

  /// Five criticals whose context holds further copies of □A: their premise
  /// is cut against T over the identity on A, one level below, so the copies
  /// become weakenings.
  Proof single_five(Proof d1, const Formula& C, std::size_t depth) {
    const Formula A = C.operand();
    while (true) {
      const Trace t = compute_trace(d1, seed_of(d1, Side::Succ, C));
      const auto sizes = subtree_sizes(d1);
      long hit = -1;
      for (const auto& cr : t.criticals) {
        if (cr.predecessor_count_in_conclusion < 2) continue;
        const bool top = std::none_of(t.criticals.begin(), t.criticals.end(), [&](const CriticalInference& o) {
          return o.predecessor_count_in_conclusion > 1 && above(sizes, cr.node, o.node);
        });
        if (top) {
          hit = cr.node;
          break;
        }
      }
      if (hit < 0) return d1;
      const Proof n = subproof(d1, hit);
      check(n->rule() == RuleId::Five, "□ critical at node " + std::to_string(hit) + " is not Five");
      Proof prem = n->children[0];
      while (count(prem->sequent().succ, C) > 1) prem = contract(c, prem, Side::Succ, C);
      const Proof tax = apply(c, RuleId::T, Sequent{{C}, {A}}, C, {expand_axiom(c, {}, A, {})});
      const Proof norm = below(cut_star(c, prem, tax, C), &C, depth, true);
      Sequent concl = norm->sequent();
      const Occ at = find_occ(concl, Side::Succ, A);
      concl.succ[at.index] = C;
      const Proof five = make_node(c, RuleId::Five, concl, {at}, {norm});
      const Proof back = weaken(c, five, {}, multiset_minus(n->sequent().succ, concl.succ));
      check(multiset_equal(back->sequent(), n->sequent()), "Five normalization changed " + n->sequent().str());
      d1 = replace_subproof(c, d1, hit, back);
    }
  }

  Proof box_case(const Proof& p, const Formula& C, std::size_t depth) {
    Sides s = prepare(p, C);
    const Formula A = C.operand();
    s.d1 = single_five(s.d1, C, depth);
    s.s1 = seed_of(s.d1, Side::Succ, C);
    s.t1 = compute_trace(s.d1, s.s1);
    rep.criticals_delta1 += s.t1.criticals.size();
    rep.criticals_delta2 += s.t2.criticals.size();
    for (const auto& cr : s.t1.criticals)
      check(cr.rule == RuleId::Five && cr.predecessor_count_in_conclusion == 1,
            "δ1 critical at node " + std::to_string(cr.node) + " is not a single Five");
    for (const auto& cr : s.t2.criticals)
      check(cr.rule == RuleId::T, "δ2 critical at node " + std::to_string(cr.node) + " is not T");
    tameness_assert(s.t1, p->sequent(), C);
    ++rep.assertions_checked;

    std::vector<std::vector<Option>> opts;
    for (const auto& cr : s.t1.criticals) {
      std::vector<Option> o;
      for (const auto& f : dedup(cr.sigma)) o.push_back({f, Side::Ante});
      for (const auto& f : dedup(cr.pi)) o.push_back({f, Side::Succ});
      opts.push_back(std::move(o));
    }
    auto eps_raw = [&](std::size_t r) -> Proof {
      const auto& cr = s.t1.criticals[r];
      const Proof pi = subproof(s.d1, cr.node)->children[0];
      CriticalRepair fix = [&, pi](const ProofNode& orig, long id, const Sequent& concl,
                                   const std::vector<Proof>& kids) -> Proof {
        check(orig.rule() == RuleId::T, "unexpected δ2 critical at node " + std::to_string(id));
        return fit(c, cut_star(c, pi, kids[0], A), concl);
      };
      return subst(s.d2, s.t2, {cr.sigma, cr.pi}, fix, C).proof;
    };
    return three_steps(p, C, depth, s.d1, s.t1, opts, eps_raw);
  }
};

void fill_before(RestrictionReport& r, const Proof& p) {
  r.cuts_before = cut_count(p);
  r.max_cut_size_before = max_cut_size(p);
}

void fill_after(RestrictionReport& r, const Proof& p) {
  r.cuts_after = cut_count(p);
  r.max_cut_size_after = max_cut_size(p);
}

}  // namespace

std::pair<Proof, RestrictionReport> restrict_bottom_cut(CalculusId c, const Proof& p) {
  check_proof(c, p);
  RestrictionReport rep;
  fill_before(rep, p);
  Engine e{c, rep};
  Proof out = e.bottom(p, 1);
  check_proof(c, out);
  ++rep.assertions_checked;
  fill_after(rep, out);
  return {out, rep};
}

std::pair<Proof, RestrictionReport> restrict_all(CalculusId c, const Proof& p) {
  check_proof(c, p);
  RestrictionReport rep;
  fill_before(rep, p);
  Engine e{c, rep};
  Proof out = e.below(p, nullptr, 0);
  const AnalyticityAudit audit = check_proof(c, out);
  e.check(audit.nonanalytic_formulas.empty(), "restrict_all left non-analytic cuts");
  e.check(is_globally_analytic(out), "restrict_all result is not globally analytic");
  e.check(multiset_equal(out->sequent(), p->sequent()), "restrict_all changed the endsequent");
  fill_after(rep, out);
  return {out, rep};
}

Proof principal_reduce(CalculusId c, const Proof& left, const Proof& right, const Formula& C) {
  const auto principal_is = [&](const Proof& q, Side s) {
    const auto& pr = q->inst.principal;
    return is_logical(q->rule()) && pr.size() == 1 && pr[0].side == s && q->sequent().side(s)[pr[0].index] == C;
  };
  if (!principal_is(left, Side::Succ) || !principal_is(right, Side::Ante))
    throw PreconditionError("principal_reduce: " + print_formula(C) + " is not principal on both sides");
  const Sequent target{multiset_union(left->sequent().ante, [&] {
                         Formulas a = right->sequent().ante;
                         remove_one(a, C);
                         return a;
                       }()),
                       multiset_union(
                           [&] {
                             Formulas s = left->sequent().succ;
                             remove_one(s, C);
                             return s;
                           }(),
                           right->sequent().succ)};
  const auto& L = left->children;
  const auto& R = right->children;
  switch (C.kind()) {
    case Connective::And:
      return fit(c, cut_star(c, L[0], cut_star(c, L[1], R[0], C.right()), C.left()), target);
    case Connective::Or:
      return fit(c, cut_star(c, cut_star(c, L[0], R[0], C.left()), R[1], C.right()), target);
    case Connective::Neg:
      return fit(c, cut_star(c, R[0], L[0], C.operand()), target);
    case Connective::Box:
      return fit(c, cut_star(c, L[0], R[0], C.operand()), target);
    case Connective::Imp: {
      // Copies of C in the imp_L premises are traced and replaced by the
      // imp_R antecedent, splicing L[0] at every imp_L on them.
      const OccRef seed{0, Side::Ante, right->inst.principal[0].index};
      const Proof r = enforce_irredundance(c, right, C, seed);
      const Trace t = compute_trace(r, seed);
      const Proof pi = L[0];
      CriticalRepair fix = [&](const ProofNode& orig, long id, const Sequent& concl,
                               const std::vector<Proof>& kids) -> Proof {
        if (orig.rule() != RuleId::ImpL) throw InternalError("unexpected critical at node " + std::to_string(id));
        Proof x = cut_star(c, kids[0], pi, C.left());
        return fit(c, cut_star(c, x, kids[1], C.right()), concl);
      };
      const SubstResult res = substitute(c, r, t, {left->sequent().ante, {}}, fix);
      reductivity_audit(res, C);
      return fit(c, res.proof, target);
    }
    case Connective::Coimp:
      return dualize_proof(principal_reduce(c, dualize_proof(right), dualize_proof(left), dualize(C)));
    default:
      throw PreconditionError("principal_reduce: no principal reduction for " + print_formula(C));
  }
}

}  // namespace cutr
