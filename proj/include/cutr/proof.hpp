#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cutr/calculus.hpp"

namespace cutr {

struct ProofNode;
using NodePtr = std::shared_ptr<const ProofNode>;

/// A node of a proof tree. Children are ordered like inst.premises and
/// inst.premises[i] is exactly (index for index) children[i]'s conclusion.
/// Node ids are preorder positions and are computed on demand.
struct ProofNode {
  RuleInstance inst;
  std::vector<NodePtr> children;

  const Sequent& sequent() const { return inst.conclusion; }
  RuleId rule() const { return inst.rule; }
};

using Proof = NodePtr;

/// A proof failed validation; carries the node-local diagnostic.
class ProofError : public std::runtime_error {
 public:
  explicit ProofError(Diagnostic d) : std::runtime_error(d.str()), diag_(std::move(d)) {}
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

/// Builds and validates one inference over existing subproofs; the flow map
/// is inferred. Throws ProofError.
NodePtr make_node(CalculusId c, RuleId r, Sequent conclusion, std::vector<Occ> principal,
                  std::vector<NodePtr> kids);
/// Same, returning the diagnostic instead of throwing.
NodePtr try_make_node(CalculusId c, RuleId r, Sequent conclusion, std::vector<Occ> principal,
                      std::vector<NodePtr> kids, Diagnostic* why = nullptr);
/// Builds a node from a fully specified instance (explicit flow).
NodePtr make_node(CalculusId c, RuleInstance inst, std::vector<NodePtr> kids);

/// First occurrence of f on side s; throws PreconditionError if absent.
Occ find_occ(const Sequent& s, Side side, const Formula& f);

/// Applies a one-principal rule whose principal formula is f, located by
/// find_occ on the rule's principal side of `conclusion`.
NodePtr apply(CalculusId c, RuleId r, const Sequent& conclusion, const Formula& f, std::vector<NodePtr> kids);

/// Additive cut of two proofs whose contexts already agree as multisets.
NodePtr cut(CalculusId c, NodePtr left, NodePtr right, const Formula& f);

struct CutEntry {
  long node;
  Formula formula;
  bool analytic;
};

struct AnalyticityAudit {
  std::vector<CutEntry> cuts;
  Formulas nonanalytic_formulas;
  std::size_t height = 0;
};

/// Validates every node and collects the cuts. Throws ProofError.
AnalyticityAudit check_proof(CalculusId c, const Proof& p);
/// Non-throwing variant of check_proof.
std::optional<Diagnostic> find_error(CalculusId c, const Proof& p);

bool is_locally_analytic(const Proof& p);
/// Every cut formula is a subformula of the endsequent.
bool is_globally_analytic(const Proof& p);

/// Height of the tree; a leaf has height 1.
std::size_t height(const Proof& p);
std::size_t node_count(const Proof& p);
std::size_t cut_count(const Proof& p);
std::size_t max_cut_size(const Proof& p);
/// Nodes in preorder; position = node id.
std::vector<const ProofNode*> preorder(const Proof& p);
/// Structural equality ignoring node identity (rules, sequents, principals, shape).
bool same_proof(const Proof& a, const Proof& b);

/// Appends w_L for every x and w_R for every y below the root.
Proof weaken(CalculusId c, const Proof& p, const Formulas& x, const Formulas& y);
/// One contraction of f on side s (the premise holds at least two copies).
Proof contract(CalculusId c, const Proof& p, Side s, const Formula& f);
/// Weakens and contracts p until its endsequent multiset-equals target.
/// Throws PreconditionError if some formula must disappear altogether.
Proof fit(CalculusId c, const Proof& p, const Sequent& target);
/// Weakening followed by cut: aligns both contexts to their multiset union,
/// then applies one additive cut on f.
Proof cut_star(CalculusId c, const Proof& left, const Proof& right, const Formula& f);

/// Cut-free proof of Γ, a ⇒ a, Δ by induction on a.
Proof expand_axiom(CalculusId c, const Formulas& gamma, const Formula& a, const Formulas& delta);

/// Mirror proof of the dualized endsequent (BiInt only).
Proof dualize_proof(const Proof& p);
RuleId dual_rule(RuleId r);

/// Rebuilds p bottom-up applying `f` to every node after its children have
/// been rebuilt. f receives the original node, its preorder id and the new
/// children; returning nullptr keeps a copy of the node over the new children
/// (re-inferring the flow).
using NodeRewriter = std::function<NodePtr(const ProofNode&, long id, std::vector<NodePtr> kids)>;
Proof rebuild(CalculusId c, const Proof& p, const NodeRewriter& f);

/// Replaces the subproof rooted at node id by `sub`, which must prove a
/// multiset-equal sequent, and revalidates the ancestors.
Proof replace_subproof(CalculusId c, const Proof& p, long id, const Proof& sub);

}  // namespace cutr
