#pragma once

#include "cutr/proof.hpp"

namespace cutr {

// Height-preserving structural transformations. BiInt only: in S5 the T rule
// does not keep a copy of its principal formula, so contraction on boxed
// formulas is not height-preserving in this formulation.

/// Proof of p's endsequent extended by x (antecedent) and y (succedent),
/// of the same height: the extra formulas are pushed into contexts.
Proof hp_weaken(CalculusId c, const Proof& p, const Formulas& x, const Formulas& y);

/// Merges two occurrences (indices a != b on side s, equal formulas) of p's
/// endsequent without increasing height.
Proof contract_hp(CalculusId c, const Proof& p, Side s, std::size_t a, std::size_t b);

/// Proof of premise `which` of `rule` applied to the first occurrence of
/// `principal` in p's endsequent. Rule must be one of top_L, bot_R, and_L,
/// and_R, or_L, or_R. Height does not increase; new non-analytic cuts are on
/// proper subformulas of `principal`.
Proof invert(CalculusId c, const Proof& p, RuleId rule, const Formula& principal, std::size_t which);
/// Same, for a given occurrence.
Proof invert_at(CalculusId c, const Proof& p, RuleId rule, Occ o, std::size_t which);

}  // namespace cutr
