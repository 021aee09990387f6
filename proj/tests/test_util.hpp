#pragma once

#include <random>

#include "cutr/calculus.hpp"
#include "cutr/proof.hpp"
#include "cutr/search.hpp"

namespace testutil {

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

/// Random formula with at most `size` nodes over the first `atoms` of p, q, r, ...
inline cutr::Formula random_formula(std::mt19937_64& rng, cutr::CalculusId c, int size, int atoms = 3) {
  using cutr::Formula;
  if (size <= 1) {
    const std::size_t k = pick(rng, static_cast<std::size_t>(atoms) + 2);
    if (k == static_cast<std::size_t>(atoms)) return Formula::top();
    if (k == static_cast<std::size_t>(atoms) + 1) return Formula::bot();
    return Formula::atom(std::string(1, static_cast<char>('p' + k)));
  }
  const bool unary = c == cutr::CalculusId::S5 && (size == 2 || pick(rng, 3) == 0);
  if (unary) {
    Formula a = random_formula(rng, c, size - 1, atoms);
    return pick(rng, 2) ? Formula::box(a) : Formula::neg(a);
  }
  if (size == 2) return random_formula(rng, c, 1, atoms);
  const int left = 1 + static_cast<int>(pick(rng, static_cast<std::size_t>(size - 2)));
  Formula l = random_formula(rng, c, left, atoms);
  Formula r = random_formula(rng, c, size - 1 - left, atoms);
  const cutr::Connective ops_b[] = {cutr::Connective::And, cutr::Connective::Or, cutr::Connective::Imp,
                                    cutr::Connective::Coimp};
  const cutr::Connective ops_s[] = {cutr::Connective::And, cutr::Connective::Or};
  return c == cutr::CalculusId::BiInt ? Formula::binary(ops_b[pick(rng, 4)], l, r)
                                      : Formula::binary(ops_s[pick(rng, 2)], l, r);
}

inline cutr::Formulas random_formulas(std::mt19937_64& rng, cutr::CalculusId c, std::size_t n, int size) {
  cutr::Formulas out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_formula(rng, c, 1 + static_cast<int>(pick(rng, size)), 2));
  return out;
}

struct InvertCase {
  cutr::Proof proof;
  cutr::RuleId rule;
  cutr::Formula principal;
  std::size_t which;
  cutr::Sequent premise;  ///< expected endsequent of the inverted proof
};

/// Random BiInt proof whose endsequent is the conclusion of an invertible
/// rule. Shapes: plain search result, principal weakened in, analytic cut on
/// the principal, analytic cut on an immediate subformula of it.
inline InvertCase random_invert_case(std::mt19937_64& rng) {
  using namespace cutr;
  const CalculusId c = CalculusId::BiInt;
  const RuleId rules[] = {RuleId::TopL, RuleId::BotR, RuleId::AndL, RuleId::AndR, RuleId::OrL, RuleId::OrR};
  SearchPolicy pol;
  pol.depth_bound = 6;
  const auto find = [&](const Sequent& s) { return prove_bounded(c, s, pol).proof; };
  while (true) {
    const RuleId r = rules[pick(rng, 6)];
    Formula f = r == RuleId::TopL ? Formula::top() : r == RuleId::BotR ? Formula::bot() : Formula::atom("p");
    if (r != RuleId::TopL && r != RuleId::BotR) {
      const Connective k = r == RuleId::AndL || r == RuleId::AndR ? Connective::And : Connective::Or;
      f = Formula::binary(k, random_formula(rng, c, 1 + static_cast<int>(pick(rng, 3)), 2),
                          random_formula(rng, c, 1 + static_cast<int>(pick(rng, 3)), 2));
    }
    const Side side = principal_side(r);
    Sequent rest{random_formulas(rng, c, pick(rng, 3), 3), random_formulas(rng, c, pick(rng, 2), 3)};
    Sequent goal = rest;
    goal.side(side).push_back(f);
    const std::size_t which = r == RuleId::AndR || r == RuleId::OrL ? pick(rng, 2) : 0;
    Sequent premise = rest;
    if (r == RuleId::AndL) premise.ante = concat(premise.ante, {f.left(), f.right()});
    if (r == RuleId::OrR) premise.succ = concat(premise.succ, {f.left(), f.right()});
    if (r == RuleId::AndR) premise.succ.push_back(which == 0 ? f.left() : f.right());
    if (r == RuleId::OrL) premise.ante.push_back(which == 0 ? f.left() : f.right());

    Proof p;
    switch (pick(rng, 4)) {
      case 0:
        p = find(goal);
        break;
      case 1:
        if (Proof q = find(rest)) p = side == Side::Ante ? weaken(c, q, {f}, {}) : weaken(c, q, {}, {f});
        break;
      case 2:
        if (Proof q = find(goal)) {
          const Proof ax = expand_axiom(c, {}, f, {});
          p = side == Side::Ante ? cut_star(c, ax, q, f) : cut_star(c, q, ax, f);
        }
        break;
      default: {
        if (f.is_atom() || f.kind() == Connective::Top || f.kind() == Connective::Bot) break;
        const Formula a = pick(rng, 2) ? f.left() : f.right();
        Sequent l = goal, rr = goal;
        l.succ.push_back(a);
        rr.ante.push_back(a);
        const Proof pl = find(l), pr = pl ? find(rr) : nullptr;
        if (pl && pr) p = cut(c, pl, pr, a);
      }
    }
    if (p) return {p, r, f, which, premise};
  }
}

}  // namespace testutil
