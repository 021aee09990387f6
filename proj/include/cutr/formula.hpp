#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cutr {

enum class Connective : unsigned char { Atom, Top, Bot, And, Or, Imp, Coimp, Neg, Box };

/// Immutable propositional formula. Copies share structure; equality and
/// ordering are structural.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula top();
  static Formula bot();
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula imp(Formula l, Formula r);
  static Formula coimp(Formula l, Formula r);
  static Formula neg(Formula a);
  static Formula box(Formula a);
  static Formula binary(Connective c, Formula l, Formula r);

  Connective kind() const;
  bool is(Connective c) const { return kind() == c; }
  bool is_atom() const { return is(Connective::Atom); }
  bool is_constant() const { return is(Connective::Top) || is(Connective::Bot); }
  bool is_binary() const;
  bool is_unary() const { return is(Connective::Neg) || is(Connective::Box); }

  const std::string& name() const;
  /// Left operand of a binary connective, or the operand of a unary one.
  const Formula& left() const;
  const Formula& right() const;
  const Formula& operand() const { return left(); }

  /// Number of connective, constant and atom nodes.
  std::size_t size() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

  std::string str() const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Connective k, std::string name, std::vector<Formula> kids);

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Connective kind;
  std::string name;
  std::vector<Formula> kids;
  std::size_t size;
};

inline Connective Formula::kind() const { return node_->kind; }
inline const std::string& Formula::name() const { return node_->name; }
inline std::size_t Formula::size() const { return node_->size; }

std::ostream& operator<<(std::ostream& os, const Formula& f);

using Formulas = std::vector<Formula>;

/// All subformulas of f, including f, sorted and without duplicates.
Formulas subformulas(const Formula& f);
Formulas proper_subformulas(const Formula& f);
bool is_subformula_of(const Formula& a, const Formula& of);
/// True iff a is a subformula of some member of the multiset.
bool is_subformula(const Formula& a, const Formulas& of);

/// Replace every occurrence of the atom `from` by `to`.
Formula replace_atom(const Formula& f, const std::string& from, const Formula& to);
/// Atom names occurring in f, sorted.
std::vector<std::string> atoms_of(const Formula& f);

/// Bi-intuitionistic duality: swaps top/bot and and/or, and maps
/// A->B to B'-<A' and A-<B to B'->A'. Throws SignatureError on Neg or Box.
Formula dualize(const Formula& f);

/// Canonical boxedness test used by the S5 rules.
inline bool is_boxed(const Formula& f) { return f.is(Connective::Box); }

}  // namespace cutr
