#pragma once

#include <string>

#include "cutr/formula.hpp"

namespace cutr {

enum class Side : unsigned char { Ante, Succ };

inline Side opposite(Side s) { return s == Side::Ante ? Side::Succ : Side::Ante; }

/// A sequent Γ ⇒ Δ. The sides are ordered so that occurrences have stable
/// indices; as multisets, two sequents are equal iff their sides are
/// permutations of each other (see multiset_equal).
struct Sequent {
  Formulas ante;
  Formulas succ;

  const Formulas& side(Side s) const { return s == Side::Ante ? ante : succ; }
  Formulas& side(Side s) { return s == Side::Ante ? ante : succ; }

  bool operator==(const Sequent&) const = default;
  std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const Sequent& s);

// Multiset helpers over formula sequences.
bool multiset_equal(const Formulas& a, const Formulas& b);
bool multiset_equal(const Sequent& a, const Sequent& b);
/// a ⊆ b as multisets.
bool multiset_includes(const Formulas& b, const Formulas& a);
bool multiset_includes(const Sequent& b, const Sequent& a);
std::size_t count(const Formulas& xs, const Formula& f);
/// Removes one occurrence of f; returns false if absent.
bool remove_one(Formulas& xs, const Formula& f);
/// Multiset union: each formula with the larger of its two multiplicities.
/// Keeps the order of `a`, then appends the missing items of `b`.
Formulas multiset_union(const Formulas& a, const Formulas& b);
/// Multiset difference a \ b.
Formulas multiset_minus(const Formulas& a, const Formulas& b);
Formulas concat(Formulas a, const Formulas& b);
/// Order-preserving removal of duplicates.
Formulas dedup(const Formulas& xs);

/// All formulas occurring on either side.
Formulas members(const Sequent& s);
bool is_subformula(const Formula& a, const Sequent& of);

/// Swaps the sides and dualizes every formula.
Sequent dualize(const Sequent& s);

}  // namespace cutr
