#include "cutr/invert.hpp"

#include <algorithm>

#include "cutr/errors.hpp"

namespace cutr {

namespace {

void require_biint(CalculusId c) {
  if (c != CalculusId::BiInt) throw PreconditionError("height-preserving transformations are BiInt-only");
}

bool invertible(RuleId r) {
  switch (r) {
    case RuleId::TopL:
    case RuleId::BotR:
    case RuleId::AndL:
    case RuleId::AndR:
    case RuleId::OrL:
    case RuleId::OrR:
      return true;
    default:
      return false;
  }
}

/// Active formulas of premise `which` of an invertible rule on f.
Sequent actives(RuleId r, const Formula& f, std::size_t which) {
  switch (r) {
    case RuleId::AndL:
      return {{f.left(), f.right()}, {}};
    case RuleId::OrR:
      return {{}, {f.left(), f.right()}};
    case RuleId::AndR:
      return {{}, {which == 0 ? f.left() : f.right()}};
    case RuleId::OrL:
      return {{which == 0 ? f.left() : f.right()}, {}};
    default:
      return {};
  }
}

Sequent drop(const Sequent& s, Occ o) {
  Sequent out = s;
  auto& xs = out.side(o.side);
  xs.erase(xs.begin() + static_cast<long>(o.index));
  return out;
}

std::vector<Occ> shift_principal(const std::vector<Occ>& pr, Occ removed) {
  std::vector<Occ> out;
  for (Occ o : pr) {
    if (o.side == removed.side && o.index > removed.index) --o.index;
    out.push_back(o);
  }
  return out;
}

/// Image of conclusion occurrence o in premise k (empty if not carried).
const std::vector<std::size_t>& image(const ProofNode& n, std::size_t k, Occ o) {
  return n.inst.flow[k].side(o.side)[o.index];
}

/// Index of a second occurrence of f on side s, other than `not_this`.
std::size_t other_occ(const Sequent& q, Side s, const Formula& f, std::size_t not_this) {
  const auto& xs = q.side(s);
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (i != not_this && xs[i] == f) return i;
  throw InternalError("contract_hp: no second copy of " + f.str());
}

/// Contracts one pair of copies of f on side s.
Proof contract_pair(CalculusId c, const Proof& p, Side s, const Formula& f) {
  const std::size_t a = find_occ(p->sequent(), s, f).index;
  return contract_hp(c, p, s, a, other_occ(p->sequent(), s, f, a));
}

Proof contract_actives(CalculusId c, Proof p, const Sequent& act) {
  for (const auto& f : act.ante) p = contract_pair(c, p, Side::Ante, f);
  for (const auto& f : act.succ) p = contract_pair(c, p, Side::Succ, f);
  return p;
}

}  // namespace

Proof hp_weaken(CalculusId c, const Proof& p, const Formulas& x, const Formulas& y) {
  if (x.empty() && y.empty()) return p;
  const RuleId r = p->rule();
  Sequent concl{concat(p->sequent().ante, x), concat(p->sequent().succ, y)};
  if (r == RuleId::Five) {
    for (const auto& f : concat(x, y))
      if (!is_boxed(f)) throw PreconditionError("hp_weaken: cannot push " + f.str() + " past Five");
  }
  std::vector<NodePtr> kids;
  for (const auto& k : p->children) {
    const Formulas& kx = r == RuleId::CoimpL ? Formulas{} : x;
    const Formulas& ky = r == RuleId::ImpR ? Formulas{} : y;
    kids.push_back(hp_weaken(c, k, kx, ky));
  }
  return make_node(c, r, std::move(concl), p->inst.principal, std::move(kids));
}

Proof contract_hp(CalculusId c, const Proof& p, Side s, std::size_t a, std::size_t b) {
  require_biint(c);
  const Sequent& q = p->sequent();
  if (a == b || q.side(s)[a] != q.side(s)[b]) throw PreconditionError("contract_hp: need two equal occurrences");
  const Formula F = q.side(s)[a];
  const Occ oa{s, a}, ob{s, b};
  const ProofNode& n = *p;
  const RuleId r = n.rule();
  const auto& pr = n.inst.principal;
  const bool a_pr = std::find(pr.begin(), pr.end(), oa) != pr.end();
  const bool b_pr = std::find(pr.begin(), pr.end(), ob) != pr.end();

  if ((r == RuleId::WeakL || r == RuleId::WeakR) && (a_pr || b_pr)) return n.children[0];

  if ((r == RuleId::ContrL || r == RuleId::ContrR) && (a_pr || b_pr)) {
    // Premise holds one copy more than the conclusion; two merges fix it.
    Proof k = contract_pair(c, n.children[0], s, F);
    return contract_pair(c, k, s, F);
  }

  // Keep the principal occurrence, drop the other one.
  const Occ keep = b_pr ? ob : oa;
  const Occ gone = b_pr ? oa : ob;
  const Sequent concl = drop(q, gone);
  const auto principal = shift_principal(pr, gone);

  if (is_logical(r) && (a_pr || b_pr)) {
    std::vector<NodePtr> kids;
    if (invertible(r)) {
      for (std::size_t k = 0; k < n.children.size(); ++k) {
        const auto& img = image(n, k, gone);
        Proof inv = invert_at(c, n.children[k], r, Occ{s, img.at(0)}, k);
        kids.push_back(contract_actives(c, inv, actives(r, F, k)));
      }
    } else {
      // Copying rules keep the principal in every premise; the rules that drop
      // a context side lose `gone` already.
      for (std::size_t k = 0; k < n.children.size(); ++k) {
        const auto& ik = image(n, k, keep);
        const auto& ig = image(n, k, gone);
        if (!ik.empty() && !ig.empty())
          kids.push_back(contract_hp(c, n.children[k], s, ik[0], ig[0]));
        else
          kids.push_back(n.children[k]);
      }
    }
    return make_node(c, r, concl, principal, std::move(kids));
  }

  std::vector<NodePtr> kids;
  for (std::size_t k = 0; k < n.children.size(); ++k) {
    const auto& ia = image(n, k, oa);
    const auto& ib = image(n, k, ob);
    if (!ia.empty() && !ib.empty())
      kids.push_back(contract_hp(c, n.children[k], s, ia[0], ib[0]));
    else if (ia.empty() != ib.empty())
      throw InternalError("contract_hp: occurrences carried unevenly by " + std::string(to_string(r)));
    else
      kids.push_back(n.children[k]);
  }
  return make_node(c, r, concl, principal, std::move(kids));
}

Proof invert_at(CalculusId c, const Proof& p, RuleId rule, Occ o, std::size_t which) {
  require_biint(c);
  if (!invertible(rule)) throw PreconditionError("invert: " + std::string(to_string(rule)) + " is not invertible");
  const Sequent& q = p->sequent();
  if (o.side != principal_side(rule) || o.index >= q.side(o.side).size())
    throw PreconditionError("invert: occurrence does not fit " + std::string(to_string(rule)));
  const Formula F = q.side(o.side)[o.index];
  if (F.kind() != introduced(rule)) throw PreconditionError("invert: " + F.str() + " does not match the rule");
  if (which >= arity(rule)) throw PreconditionError("invert: no such premise");

  const Sequent act = actives(rule, F, which);
  Sequent concl = drop(q, o);
  concl.ante = concat(concl.ante, act.ante);
  concl.succ = concat(concl.succ, act.succ);

  const ProofNode& n = *p;
  const RuleId r = n.rule();
  const auto& pr = n.inst.principal;
  const bool o_pr = std::find(pr.begin(), pr.end(), o) != pr.end();

  if (o_pr && r == rule) {
    const Proof& k = n.children[rule == RuleId::AndR || rule == RuleId::OrL ? which : 0];
    if (!multiset_equal(k->sequent(), concl)) throw InternalError("invert: premise does not match");
    return k;
  }
  if (o_pr && (r == RuleId::WeakL || r == RuleId::WeakR)) return hp_weaken(c, n.children[0], act.ante, act.succ);
  if (o_pr && (r == RuleId::ContrL || r == RuleId::ContrR)) {
    const auto& img = image(n, 0, Occ{o.side, o.index});
    const std::size_t j1 = img.at(0), j2 = img.at(1);
    Proof k = invert_at(c, n.children[0], rule, Occ{o.side, j1}, which);
    k = invert_at(c, k, rule, Occ{o.side, j2 - (j2 > j1 ? 1 : 0)}, which);
    return contract_actives(c, k, act);
  }
  if (o_pr) throw InternalError("invert: unexpected principal rule " + std::string(to_string(r)));

  if (r == RuleId::Cut && cut_formula(n.inst) == F) {
    // Merge o with the cut formula first so the cut does not lose analyticity.
    const std::size_t k = o.side == Side::Ante ? 1 : 0;
    const Proof& prem = n.children[k];
    const std::size_t io = image(n, k, o).at(0);
    const std::size_t icut = other_occ(prem->sequent(), o.side, F, io);
    Proof merged = contract_hp(c, prem, o.side, io, icut);
    return invert_at(c, merged, rule, find_occ(merged->sequent(), o.side, F), which);
  }

  std::vector<NodePtr> kids;
  for (std::size_t k = 0; k < n.children.size(); ++k) {
    const auto& img = image(n, k, o);
    if (img.empty())
      kids.push_back(n.children[k]);
    else
      kids.push_back(invert_at(c, n.children[k], rule, Occ{o.side, img[0]}, which));
  }
  return make_node(c, r, concl, shift_principal(pr, o), std::move(kids));
}

Proof invert(CalculusId c, const Proof& p, RuleId rule, const Formula& principal, std::size_t which) {
  return invert_at(c, p, rule, find_occ(p->sequent(), principal_side(rule), principal), which);
}

}  // namespace cutr
