#pragma once

#include <string>
#include <utility>

#include "cutr/trace.hpp"

namespace cutr {

struct RestrictionReport {
  std::size_t cuts_before = 0;
  std::size_t cuts_after = 0;
  std::size_t max_cut_size_before = 0;
  std::size_t max_cut_size_after = 0;
  /// restrict_bottom_cut invocations, the outermost included.
  std::size_t recursive_invocations = 0;
  std::size_t tuples_expanded = 0;
  std::size_t criticals_delta1 = 0;
  std::size_t criticals_delta2 = 0;
  std::size_t assertions_checked = 0;
  /// Deepest nesting of restrict_bottom_cut on strictly smaller cut formulas.
  std::size_t max_depth = 0;
  /// Nodes the repair hooks had to rebuild.
  std::size_t broken_repaired = 0;

  /// key=value lines, fixed key order.
  std::string to_kv() const;
};

/// Every Σ_r (and Θ_r) formula is a subformula of the endsequent or a proper
/// subformula of C. Throws InternalError naming the formula and r otherwise.
void tameness_assert(const Trace& t_delta1, const Sequent& endsequent, const Formula& C);

/// Restricts the non-analytic cut at the root of p; both of its subproofs
/// must be locally analytic. Returns a locally analytic proof of the same
/// endsequent.
std::pair<Proof, RestrictionReport> restrict_bottom_cut(CalculusId c, const Proof& p);

/// Restricts uppermost non-analytic cuts until the proof is analytic.
std::pair<Proof, RestrictionReport> restrict_all(CalculusId c, const Proof& p);

/// Reduces a cut between a right introduction of C (left) and a left
/// introduction of C (right), both with C principal, to cuts on proper
/// subformulas of C. Proves the cut* conclusion of the two proofs.
Proof principal_reduce(CalculusId c, const Proof& left, const Proof& right, const Formula& C);

}  // namespace cutr
