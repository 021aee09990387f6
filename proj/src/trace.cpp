#include "cutr/trace.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "cutr/errors.hpp"
#include "cutr/parse.hpp"

namespace cutr {

std::vector<std::size_t> Trace::at(long id) const {
  std::vector<std::size_t> out;
  for (auto it = predecessors.lower_bound(OccRef{id, Side::Ante, 0}); it != predecessors.end() && it->node == id; ++it)
    out.push_back(it->index);
  return out;
}

bool Trace::is_critical(long id) const {
  return std::any_of(criticals.begin(), criticals.end(), [id](const CriticalInference& r) { return r.node == id; });
}

namespace {

Formulas without(const Formulas& xs, const std::vector<std::size_t>& drop) {
  Formulas out;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (std::find(drop.begin(), drop.end(), i) == drop.end()) out.push_back(xs[i]);
  return out;
}

struct Tracer {
  Trace& t;

  void walk(const NodePtr& n, long& next, std::vector<std::size_t> traced) {
    const long id = next++;
    if (id == t.seed.node) traced = {t.seed.index};
    const Side s = t.side;
    const RuleInstance& inst = n->inst;
    std::vector<std::vector<std::size_t>> up(n->children.size());
    if (!traced.empty()) {
      for (std::size_t i : traced) t.predecessors.insert({id, s, i});
      std::optional<std::size_t> crit;
      if (is_logical(inst.rule) && inst.principal.size() == 1 && inst.principal[0].side == s &&
          std::find(traced.begin(), traced.end(), inst.principal[0].index) != traced.end()) {
        crit = inst.principal[0].index;
        const Sequent& q = inst.conclusion;
        t.criticals.push_back({id, inst.rule, s == Side::Ante ? without(q.ante, traced) : q.ante,
                               s == Side::Succ ? without(q.succ, traced) : q.succ, traced.size()});
      }
      for (std::size_t i : traced) {
        bool carried = false;
        for (std::size_t k = 0; k < n->children.size(); ++k) {
          for (std::size_t j : inst.flow[k].side(s)[i]) {
            up[k].push_back(j);
            carried = true;
          }
        }
        if (!carried && crit != i) t.weakening_ends.insert({id, s, i});
      }
    }
    for (std::size_t k = 0; k < n->children.size(); ++k) {
      std::sort(up[k].begin(), up[k].end());
      walk(n->children[k], next, up[k]);
    }
  }
};

}  // namespace

Trace compute_trace(const Proof& p, OccRef seed) {
  auto nodes = preorder(p);
  if (seed.node < 0 || static_cast<std::size_t>(seed.node) >= nodes.size())
    throw PreconditionError("compute_trace: no node " + std::to_string(seed.node));
  const Sequent& s = nodes[static_cast<std::size_t>(seed.node)]->sequent();
  if (seed.index >= s.side(seed.side).size()) throw PreconditionError("compute_trace: seed out of bounds");
  Trace t;
  t.cut_formula = s.side(seed.side)[seed.index];
  if (t.cut_formula.is_atom()) throw PreconditionError("compute_trace: atomic formulas are not traced");
  t.seed = seed;
  t.side = seed.side;
  Tracer tr{t};
  long next = 0;
  tr.walk(p, next, {});
  return t;
}

Proof enforce_irredundance(CalculusId c, const Proof& p, const Formula& C, OccRef seed) {
  Proof cur = p;
  while (true) {
    const Trace t = compute_trace(cur, seed);
    const auto nodes = preorder(cur);
    long hit = -1;
    for (std::size_t id = 0; id < nodes.size(); ++id) {
      const ProofNode* n = nodes[id];
      if (n->rule() == RuleId::Cut && cut_formula(n->inst) == C && !t.at(static_cast<long>(id)).empty()) {
        hit = static_cast<long>(id);
        break;
      }
    }
    if (hit < 0) return cur;
    const ProofNode* n = nodes[static_cast<std::size_t>(hit)];
    Proof repl = t.side == Side::Succ ? contract(c, n->children[0], Side::Succ, C)
                                      : contract(c, n->children[1], Side::Ante, C);
    cur = replace_subproof(c, cur, hit, repl);
    // Replacing the seed node may reorder its sequent.
    if (hit == seed.node) seed.index = find_occ(repl->sequent(), seed.side, C).index;
  }
}

namespace {

struct Substituter {
  CalculusId c;
  const Trace& t;
  const Replacement& rep;
  const CriticalRepair& repair;
  SubstResult& out;

  Proof walk(const NodePtr& n, long& next) {
    const long id = next++;
    const auto preds = t.at(id);
    if (preds.empty()) {
      next += static_cast<long>(node_count(n)) - 1;
      return n;
    }
    std::vector<Proof> kids;
    for (const auto& k : n->children) kids.push_back(walk(k, next));

    const Side s = t.side;
    const Sequent& old = n->sequent();
    Sequent concl = old;
    concl.side(s) = without(old.side(s), preds);
    const std::size_t base = concl.side(s).size();
    for (std::size_t k = 0; k < preds.size(); ++k) {
      concl.ante = concat(concl.ante, rep.ante);
      concl.succ = concat(concl.succ, rep.succ);
    }

    const RuleInstance& inst = n->inst;
    const auto is_pred = [&](const Occ& o) {
      return o.side == s && std::find(preds.begin(), preds.end(), o.index) != preds.end();
    };
    const bool principal_pred = std::any_of(inst.principal.begin(), inst.principal.end(), is_pred);

    if (principal_pred && is_structural(inst.rule)) return fit(c, kids[0], concl);

    // Principal occurrences after substitution; a predecessor principal is
    // remapped to the first formula replacing it, if any.
    std::vector<Occ> principal;
    bool mappable = true;
    for (const Occ& o : inst.principal) {
      if (is_pred(o)) {
        if (rep.side(s).empty()) {
          mappable = false;
          continue;
        }
        const auto k = static_cast<std::size_t>(std::find(preds.begin(), preds.end(), o.index) - preds.begin());
        principal.push_back({s, base + k * rep.side(s).size()});
      } else if (o.side == s) {
        const auto shift = static_cast<std::size_t>(
            std::count_if(preds.begin(), preds.end(), [&](std::size_t p) { return p < o.index; }));
        principal.push_back({s, o.index - shift});
      } else {
        principal.push_back(o);
      }
    }

    Diagnostic why;
    Proof node = mappable ? try_make_node(c, inst.rule, concl, principal, kids, &why) : nullptr;
    if (node) {
      if (inst.rule == RuleId::Cut && is_analytic_cut(inst) && !is_analytic_cut(node->inst))
        out.cut_changes.push_back({id, cut_formula(node->inst)});
      return node;
    }
    if (!(principal_pred && is_logical(inst.rule)))
      throw InternalError("pre-soundness violated at node " + std::to_string(id) + ": " + why.str());
    out.broken.insert(id);
    if (repair) {
      if (Proof fixed = repair(*n, id, concl, kids)) {
        if (!multiset_equal(fixed->sequent(), concl))
          throw InternalError("repair at node " + std::to_string(id) + " proves " + fixed->sequent().str() +
                              " instead of " + concl.str());
        return fixed;
      }
    }
    RuleInstance raw{inst.rule, concl, {}, principal, {}};
    for (const auto& k : kids) raw.premises.push_back(k->sequent());
    return std::make_shared<const ProofNode>(ProofNode{std::move(raw), std::move(kids)});
  }
};

}  // namespace

SubstResult substitute(CalculusId c, const Proof& p, const Trace& t, const Replacement& rep,
                       const CriticalRepair& repair) {
  SubstResult out;
  Substituter s{c, t, rep, repair, out};
  long next = 0;
  out.proof = s.walk(p, next);
  for (long b : out.broken)
    if (!t.is_critical(b)) throw InternalError("substitute: broken node " + std::to_string(b) + " is not critical");
  return out;
}

std::set<Formula> reductivity_audit(const SubstResult& r, const Formula& C) {
  std::set<Formula> out;
  for (const auto& ch : r.cut_changes) {
    if (ch.formula == C || !is_subformula_of(ch.formula, C))
      throw InternalError("reductivity violated: cut at node " + std::to_string(ch.node) + " on " +
                          ch.formula.str() + " is not a proper subformula of " + C.str());
    out.insert(ch.formula);
  }
  return out;
}

std::string dump_trace(const Trace& t) {
  std::ostringstream os;
  const char side = t.side == Side::Ante ? 'a' : 's';
  os << "cut_formula=" << print_formula(t.cut_formula) << "\n";
  for (const auto& o : t.predecessors) os << "node=" << o.node << " side=" << side << " ix=" << o.index << "\n";
  for (const auto& o : t.weakening_ends) os << "end node=" << o.node << " side=" << side << " ix=" << o.index << "\n";
  for (const auto& r : t.criticals)
    os << "critical node=" << r.node << " rule=" << to_string(r.rule) << " preds=" << r.predecessor_count_in_conclusion
       << " context=" << print_sequent(Sequent{r.sigma, r.pi}) << "\n";
  return os.str();
}

}  // namespace cutr
