#include "cutr/proof.hpp"

#include <algorithm>

#include "cutr/errors.hpp"

namespace cutr {

NodePtr try_make_node(CalculusId c, RuleId r, Sequent conclusion, std::vector<Occ> principal,
                      std::vector<NodePtr> kids, Diagnostic* why) {
  RuleInstance inst{r, std::move(conclusion), {}, std::move(principal), {}};
  for (const auto& k : kids) inst.premises.push_back(k->sequent());
  if (auto d = infer_flow(c, inst)) {
    if (why) *why = *d;
    return nullptr;
  }
  return std::make_shared<const ProofNode>(ProofNode{std::move(inst), std::move(kids)});
}

NodePtr make_node(CalculusId c, RuleId r, Sequent conclusion, std::vector<Occ> principal,
                  std::vector<NodePtr> kids) {
  Diagnostic d;
  auto n = try_make_node(c, r, std::move(conclusion), std::move(principal), std::move(kids), &d);
  if (!n) throw ProofError(d);
  return n;
}

NodePtr make_node(CalculusId c, RuleInstance inst, std::vector<NodePtr> kids) {
  if (kids.size() != inst.premises.size())
    throw ProofError(Diagnostic{-1, inst.rule, "arity", {}, "children do not match premises"});
  for (std::size_t i = 0; i < kids.size(); ++i)
    if (kids[i]->sequent() != inst.premises[i])
      throw ProofError(Diagnostic{-1, inst.rule, "premise_mismatch", {}, "premise " + std::to_string(i)});
  if (auto d = validate_instance(c, inst)) throw ProofError(*d);
  return std::make_shared<const ProofNode>(ProofNode{std::move(inst), std::move(kids)});
}

Occ find_occ(const Sequent& s, Side side, const Formula& f) {
  const Formulas& xs = s.side(side);
  auto it = std::find(xs.begin(), xs.end(), f);
  if (it == xs.end()) throw PreconditionError("formula " + f.str() + " not found in " + s.str());
  return Occ{side, static_cast<std::size_t>(it - xs.begin())};
}

NodePtr apply(CalculusId c, RuleId r, const Sequent& conclusion, const Formula& f, std::vector<NodePtr> kids) {
  return make_node(c, r, conclusion, {find_occ(conclusion, principal_side(r), f)}, std::move(kids));
}

NodePtr cut(CalculusId c, NodePtr left, NodePtr right, const Formula& f) {
  Sequent concl = left->sequent();
  if (!remove_one(concl.succ, f)) throw PreconditionError("cut: left premise lacks " + f.str() + " in the succedent");
  return make_node(c, RuleId::Cut, std::move(concl), {}, {std::move(left), std::move(right)});
}

namespace {

void audit_walk(CalculusId c, const NodePtr& n, long& next, AnalyticityAudit& audit) {
  const long id = next++;
  const RuleInstance& inst = n->inst;
  if (n->children.size() != inst.premises.size())
    throw ProofError(Diagnostic{id, inst.rule, "arity", {}, "children do not match premises"});
  for (std::size_t i = 0; i < n->children.size(); ++i)
    if (n->children[i]->sequent() != inst.premises[i])
      throw ProofError(Diagnostic{id, inst.rule, "premise_mismatch", {},
                                  "premise " + std::to_string(i) + " differs from the child's conclusion"});
  if (auto d = validate_instance(c, inst)) {
    d->node = id;
    throw ProofError(*d);
  }
  if (inst.rule == RuleId::Cut) {
    const bool ok = is_analytic_cut(inst);
    audit.cuts.push_back({id, cut_formula(inst), ok});
    if (!ok) audit.nonanalytic_formulas.push_back(cut_formula(inst));
  }
  for (const auto& k : n->children) audit_walk(c, k, next, audit);
}

void preorder_walk(const ProofNode* n, std::vector<const ProofNode*>& out) {
  out.push_back(n);
  for (const auto& k : n->children) preorder_walk(k.get(), out);
}

}  // namespace

AnalyticityAudit check_proof(CalculusId c, const Proof& p) {
  if (!p) throw PreconditionError("check_proof: empty proof");
  AnalyticityAudit audit;
  long next = 0;
  audit_walk(c, p, next, audit);
  audit.height = height(p);
  return audit;
}

std::optional<Diagnostic> find_error(CalculusId c, const Proof& p) {
  try {
    check_proof(c, p);
  } catch (const ProofError& e) {
    return e.diagnostic();
  }
  return std::nullopt;
}

bool is_locally_analytic(const Proof& p) {
  if (p->rule() == RuleId::Cut && !is_analytic_cut(p->inst)) return false;
  return std::all_of(p->children.begin(), p->children.end(), [](const NodePtr& k) { return is_locally_analytic(k); });
}

bool is_globally_analytic(const Proof& p) {
  const Sequent& end = p->sequent();
  for (const ProofNode* n : preorder(p))
    if (n->rule() == RuleId::Cut && !is_subformula(cut_formula(n->inst), end)) return false;
  return true;
}

std::size_t height(const Proof& p) {
  std::size_t h = 0;
  for (const auto& k : p->children) h = std::max(h, height(k));
  return h + 1;
}

std::size_t node_count(const Proof& p) {
  std::size_t n = 1;
  for (const auto& k : p->children) n += node_count(k);
  return n;
}

std::size_t cut_count(const Proof& p) {
  std::size_t n = p->rule() == RuleId::Cut ? 1 : 0;
  for (const auto& k : p->children) n += cut_count(k);
  return n;
}

std::size_t max_cut_size(const Proof& p) {
  std::size_t m = p->rule() == RuleId::Cut ? cut_formula(p->inst).size() : 0;
  for (const auto& k : p->children) m = std::max(m, max_cut_size(k));
  return m;
}

std::vector<const ProofNode*> preorder(const Proof& p) {
  std::vector<const ProofNode*> out;
  preorder_walk(p.get(), out);
  return out;
}

bool same_proof(const Proof& a, const Proof& b) {
  if (a == b) return true;
  if (a->rule() != b->rule() || a->sequent() != b->sequent() || a->inst.principal != b->inst.principal ||
      a->children.size() != b->children.size())
    return false;
  for (std::size_t i = 0; i < a->children.size(); ++i)
    if (!same_proof(a->children[i], b->children[i])) return false;
  return true;
}

Proof weaken(CalculusId c, const Proof& p, const Formulas& x, const Formulas& y) {
  Proof cur = p;
  for (const auto& f : x) {
    Sequent s = cur->sequent();
    s.ante.push_back(f);
    const Occ o{Side::Ante, s.ante.size() - 1};
    cur = make_node(c, RuleId::WeakL, std::move(s), {o}, {cur});
  }
  for (const auto& f : y) {
    Sequent s = cur->sequent();
    s.succ.push_back(f);
    const Occ o{Side::Succ, s.succ.size() - 1};
    cur = make_node(c, RuleId::WeakR, std::move(s), {o}, {cur});
  }
  return cur;
}

Proof contract(CalculusId c, const Proof& p, Side side, const Formula& f) {
  Sequent s = p->sequent();
  Formulas& xs = s.side(side);
  auto last = std::find(xs.rbegin(), xs.rend(), f);
  if (last == xs.rend() || count(xs, f) < 2)
    throw PreconditionError("contract: fewer than two copies of " + f.str());
  xs.erase(std::next(last).base());
  const Occ o = find_occ(s, side, f);
  return make_node(c, side == Side::Ante ? RuleId::ContrL : RuleId::ContrR, std::move(s), {o}, {p});
}

Proof fit(CalculusId c, const Proof& p, const Sequent& target) {
  Proof cur = p;
  for (Side side : {Side::Ante, Side::Succ}) {
    for (const auto& f : dedup(cur->sequent().side(side))) {
      const std::size_t want = count(target.side(side), f);
      if (want == 0)
        throw PreconditionError("fit: " + f.str() + " of " + cur->sequent().str() + " is absent from " + target.str());
      while (count(cur->sequent().side(side), f) > want) cur = contract(c, cur, side, f);
    }
  }
  const Sequent& s = cur->sequent();
  return weaken(c, cur, multiset_minus(target.ante, s.ante), multiset_minus(target.succ, s.succ));
}

Proof cut_star(CalculusId c, const Proof& left, const Proof& right, const Formula& f) {
  const Sequent& l = left->sequent();
  const Sequent& r = right->sequent();
  Formulas lsucc = l.succ;
  Formulas rante = r.ante;
  if (!remove_one(lsucc, f)) throw PreconditionError("cut*: left proof lacks " + f.str() + " in the succedent");
  if (!remove_one(rante, f)) throw PreconditionError("cut*: right proof lacks " + f.str() + " in the antecedent");
  const Formulas ua = multiset_union(l.ante, rante);
  const Formulas us = multiset_union(lsucc, r.succ);
  Proof wl = weaken(c, left, multiset_minus(ua, l.ante), multiset_minus(us, lsucc));
  Proof wr = weaken(c, right, multiset_minus(ua, rante), multiset_minus(us, r.succ));
  return cut(c, wl, wr, f);
}

namespace {

Sequent seq(Formulas a, Formulas s) { return Sequent{std::move(a), std::move(s)}; }

Formulas plus(Formulas xs, const Formula& f) {
  xs.push_back(f);
  return xs;
}

Formulas prepend(const Formula& f, const Formulas& xs) { return concat({f}, xs); }

// Proof of gamma, a ⇒ a, delta with antecedent gamma+[a] and succedent [a]+delta.
Proof axiom(CalculusId c, const Formulas& g, const Formula& a, const Formulas& d) {
  const Sequent concl = seq(plus(g, a), prepend(a, d));
  switch (a.kind()) {
    case Connective::Atom:
      return make_node(c, RuleId::Init, concl, {Occ{Side::Ante, g.size()}, Occ{Side::Succ, 0}}, {});
    case Connective::Top:
      return make_node(c, RuleId::TopR, concl, {Occ{Side::Succ, 0}}, {});
    case Connective::Bot:
      return make_node(c, RuleId::BotL, concl, {Occ{Side::Ante, g.size()}}, {});
    case Connective::And: {
      const Formulas g2 = plus(plus(g, a.left()), a.right());
      Proof l = axiom(c, plus(g, a.right()), a.left(), d);
      Proof r = axiom(c, plus(g, a.left()), a.right(), d);
      Proof and_r = make_node(c, RuleId::AndR, seq(g2, prepend(a, d)), {Occ{Side::Succ, 0}}, {l, r});
      return make_node(c, RuleId::AndL, concl, {Occ{Side::Ante, g.size()}}, {and_r});
    }
    case Connective::Or: {
      Proof l = axiom(c, g, a.left(), plus(d, a.right()));
      Proof r = axiom(c, g, a.right(), prepend(a.left(), d));
      const Sequent mid = seq(plus(g, a), concat({a.left(), a.right()}, d));
      Proof or_l = make_node(c, RuleId::OrL, mid, {Occ{Side::Ante, g.size()}}, {l, r});
      return make_node(c, RuleId::OrR, concl, {Occ{Side::Succ, 0}}, {or_l});
    }
    case Connective::Imp: {
      const Formulas ga = plus(plus(g, a), a.left());
      Proof l = axiom(c, plus(g, a), a.left(), {a.right()});
      Proof r = axiom(c, ga, a.right(), {});
      Proof imp_l = make_node(c, RuleId::ImpL, seq(ga, {a.right()}), {Occ{Side::Ante, g.size()}}, {l, r});
      return make_node(c, RuleId::ImpR, concl, {Occ{Side::Succ, 0}}, {imp_l});
    }
    case Connective::Coimp: {
      const Formulas dd = prepend(a, d);
      Proof l = axiom(c, {}, a.left(), concat({a.right()}, dd));
      Proof r = axiom(c, {a.left()}, a.right(), dd);
      Proof coimp_r = make_node(c, RuleId::CoimpR, seq({a.left()}, concat({a.right()}, dd)),
                                {Occ{Side::Succ, 1}}, {l, r});
      return make_node(c, RuleId::CoimpL, concl, {Occ{Side::Ante, g.size()}}, {coimp_r});
    }
    case Connective::Neg: {
      Proof inner = axiom(c, g, a.operand(), d);
      Proof neg_l = make_node(c, RuleId::NegL, seq(plus(plus(g, a), a.operand()), d), {Occ{Side::Ante, g.size()}},
                              {inner});
      return make_node(c, RuleId::NegR, concl, {Occ{Side::Succ, 0}}, {neg_l});
    }
    case Connective::Box:
      break;
  }
  // Box: only boxed context survives Five; the rest is weakened in below it.
  Formulas gb, gu, db, du;
  for (const auto& f : g) (is_boxed(f) ? gb : gu).push_back(f);
  for (const auto& f : d) (is_boxed(f) ? db : du).push_back(f);
  Proof inner = axiom(c, gb, a.operand(), db);
  Proof t = make_node(c, RuleId::T, seq(plus(gb, a), prepend(a.operand(), db)), {Occ{Side::Ante, gb.size()}}, {inner});
  Proof five = make_node(c, RuleId::Five, seq(plus(gb, a), prepend(a, db)), {Occ{Side::Succ, 0}}, {t});
  return fit(c, five, concl);
}

}  // namespace

Proof expand_axiom(CalculusId c, const Formulas& gamma, const Formula& a, const Formulas& delta) {
  if (!in_signature(a, c) || !in_signature(Sequent{gamma, delta}, c))
    throw SignatureError("expand_axiom: formula outside the signature of " + std::string(to_string(c)));
  return axiom(c, gamma, a, delta);
}

RuleId dual_rule(RuleId r) {
  switch (r) {
    case RuleId::Init:
    case RuleId::Cut:
      return r;
    case RuleId::WeakL:
      return RuleId::WeakR;
    case RuleId::WeakR:
      return RuleId::WeakL;
    case RuleId::ContrL:
      return RuleId::ContrR;
    case RuleId::ContrR:
      return RuleId::ContrL;
    case RuleId::TopL:
      return RuleId::BotR;
    case RuleId::BotR:
      return RuleId::TopL;
    case RuleId::TopR:
      return RuleId::BotL;
    case RuleId::BotL:
      return RuleId::TopR;
    case RuleId::AndL:
      return RuleId::OrR;
    case RuleId::OrR:
      return RuleId::AndL;
    case RuleId::AndR:
      return RuleId::OrL;
    case RuleId::OrL:
      return RuleId::AndR;
    case RuleId::ImpL:
      return RuleId::CoimpR;
    case RuleId::CoimpR:
      return RuleId::ImpL;
    case RuleId::ImpR:
      return RuleId::CoimpL;
    case RuleId::CoimpL:
      return RuleId::ImpR;
    default:
      throw SignatureError("rule " + std::string(to_string(r)) + " has no dual");
  }
}

Proof dualize_proof(const Proof& p) {
  std::vector<NodePtr> kids;
  for (const auto& k : p->children) kids.push_back(dualize_proof(k));
  const RuleId r = p->rule();
  if (r == RuleId::Cut || r == RuleId::ImpL || r == RuleId::CoimpR) std::swap(kids[0], kids[1]);
  std::vector<Occ> principal;
  if (r == RuleId::Init) {
    principal = {Occ{Side::Ante, p->inst.principal[1].index}, Occ{Side::Succ, p->inst.principal[0].index}};
  } else {
    for (const Occ& o : p->inst.principal) principal.push_back({opposite(o.side), o.index});
  }
  return make_node(CalculusId::BiInt, dual_rule(r), dualize(p->sequent()), std::move(principal), std::move(kids));
}

namespace {

NodePtr rebuild_walk(CalculusId c, const NodePtr& n, long& next, const NodeRewriter& f) {
  const long id = next++;
  std::vector<NodePtr> kids;
  bool same = true;
  for (const auto& k : n->children) {
    kids.push_back(rebuild_walk(c, k, next, f));
    same = same && kids.back() == k;
  }
  if (NodePtr out = f(*n, id, kids)) return out;
  if (same) return n;
  return make_node(c, n->rule(), n->sequent(), n->inst.principal, std::move(kids));
}

NodePtr replace_walk(CalculusId c, const NodePtr& n, long& next, long target, const Proof& sub) {
  const long id = next++;
  if (id == target) {
    if (!multiset_equal(sub->sequent(), n->sequent()))
      throw PreconditionError("replace_subproof: " + sub->sequent().str() + " does not match " + n->sequent().str());
    return sub;
  }
  std::vector<NodePtr> kids;
  bool same = true;
  for (const auto& k : n->children) {
    if (next > target) {
      kids.push_back(k);
      continue;
    }
    kids.push_back(replace_walk(c, k, next, target, sub));
    same = same && kids.back() == k;
  }
  if (same) return n;
  return make_node(c, n->rule(), n->sequent(), n->inst.principal, std::move(kids));
}

}  // namespace

Proof rebuild(CalculusId c, const Proof& p, const NodeRewriter& f) {
  long next = 0;
  return rebuild_walk(c, p, next, f);
}

Proof replace_subproof(CalculusId c, const Proof& p, long id, const Proof& sub) {
  long next = 0;
  return replace_walk(c, p, next, id, sub);
}

}  // namespace cutr
