#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cutr/proof.hpp"

namespace cutr {

/// An occurrence inside a proof: node id (preorder) plus position.
struct OccRef {
  long node;
  Side side;
  std::size_t index;
  auto operator<=>(const OccRef&) const = default;
};

struct CriticalInference {
  long node;
  RuleId rule;
  /// Conclusion sides with every predecessor occurrence removed.
  Formulas sigma;
  Formulas pi;
  std::size_t predecessor_count_in_conclusion;
};

/// Parametric ancestors of one occurrence of a cut formula.
struct Trace {
  Formula cut_formula = Formula::top();
  OccRef seed{0, Side::Succ, 0};
  Side side = Side::Succ;
  std::set<OccRef> predecessors;
  std::vector<CriticalInference> criticals;
  /// Where a branch of the trace stops without a critical inference:
  /// weakening, init context, or a context the rule does not carry.
  std::set<OccRef> weakening_ends;

  /// Predecessor indices (on `side`) in the conclusion of node `id`.
  std::vector<std::size_t> at(long id) const;
  bool is_critical(long id) const;
};

/// Follows the flow maps upward from `seed`. Throws PreconditionError on an
/// atomic seed formula.
Trace compute_trace(const Proof& p, OccRef seed);

/// Replaces every cut on C whose conclusion holds a predecessor by a
/// contraction over the premise that keeps the predecessor side, until none
/// is left. The seed must be an ancestor of every replaced cut.
Proof enforce_irredundance(CalculusId c, const Proof& p, const Formula& C, OccRef seed);

/// What every predecessor occurrence is replaced by.
struct Replacement {
  Formulas ante;
  Formulas succ;

  const Formulas& side(Side s) const { return s == Side::Ante ? ante : succ; }
};

/// Repair hook for critical inferences that no longer validate. Receives the
/// original node, its id, the substituted conclusion and the substituted
/// premises; returns a proof of a sequent multiset-equal to the new
/// conclusion, or nullptr to leave the node broken.
using CriticalRepair =
    std::function<Proof(const ProofNode& orig, long id, const Sequent& concl, const std::vector<Proof>& kids)>;

struct CutChange {
  long node;
  Formula formula;
};

struct SubstResult {
  /// Valid unless `broken` holds nodes the repair hook left alone; those
  /// nodes are kept as unchecked raw instances.
  Proof proof;
  std::set<long> broken;
  /// Cuts that were analytic before and are not after substitution.
  std::vector<CutChange> cut_changes;
};

/// δ[Σ]: substitutes every predecessor of t in p. Non-critical inferences
/// must survive (pre-soundness); a failure is an InternalError. Weakenings and
/// contractions whose principal is a predecessor are rebuilt with fit().
SubstResult substitute(CalculusId c, const Proof& p, const Trace& t, const Replacement& rep,
                       const CriticalRepair& repair = nullptr);

/// Formulas of cuts turned non-analytic by the substitution. Throws
/// InternalError unless each is a proper subformula of C.
std::set<Formula> reductivity_audit(const SubstResult& r, const Formula& C);

/// One line per predecessor, then one per critical inference.
std::string dump_trace(const Trace& t);

}  // namespace cutr
