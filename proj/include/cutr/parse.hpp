#pragma once

#include <string>
#include <string_view>

#include "cutr/sequent.hpp"

namespace cutr {

// Concrete syntax.
//
//   formula := imp
//   imp     := or ( "->" imp )?  |  or ( "-<" imp )?     right-associative,
//                                                        the two never mix
//   or      := and ( "|" and )*
//   and     := unary ( "&" unary )*
//   unary   := "~" unary | "[]" unary | atom | "T" | "F" | "(" formula ")"
//   atom    := [a-z][a-zA-Z0-9_]*
//   sequent := formulas? "|-" formulas?
//
// The Unicode spellings ⊃ ≺ ∧ ∨ ¬ □ ⊤ ⊥ ⇒ are accepted as synonyms.

Formula parse_formula(std::string_view text);
Sequent parse_sequent(std::string_view text);
/// Comma-separated formula list, possibly empty.
Formulas parse_formulas(std::string_view text);

std::string print_formula(const Formula& f);
std::string print_sequent(const Sequent& s);
std::string print_formulas(const Formulas& fs);

}  // namespace cutr
