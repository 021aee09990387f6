#include "cutr/formula.hpp"

#include <algorithm>
#include <set>

#include "cutr/errors.hpp"
#include "cutr/parse.hpp"

namespace cutr {

Formula Formula::make(Connective k, std::string name, std::vector<Formula> kids) {
  std::size_t size = 1;
  for (const auto& c : kids) size += c.size();
  return Formula(std::make_shared<const Node>(Node{k, std::move(name), std::move(kids), size}));
}

Formula Formula::atom(std::string name) { return make(Connective::Atom, std::move(name), {}); }

Formula Formula::top() {
  static const Formula t = make(Connective::Top, "", {});
  return t;
}

Formula Formula::bot() {
  static const Formula b = make(Connective::Bot, "", {});
  return b;
}

Formula Formula::conj(Formula l, Formula r) { return make(Connective::And, "", {std::move(l), std::move(r)}); }
Formula Formula::disj(Formula l, Formula r) { return make(Connective::Or, "", {std::move(l), std::move(r)}); }
Formula Formula::imp(Formula l, Formula r) { return make(Connective::Imp, "", {std::move(l), std::move(r)}); }
Formula Formula::coimp(Formula l, Formula r) { return make(Connective::Coimp, "", {std::move(l), std::move(r)}); }
Formula Formula::neg(Formula a) { return make(Connective::Neg, "", {std::move(a)}); }
Formula Formula::box(Formula a) { return make(Connective::Box, "", {std::move(a)}); }

Formula Formula::binary(Connective c, Formula l, Formula r) {
  switch (c) {
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
    case Connective::Coimp:
      return make(c, "", {std::move(l), std::move(r)});
    default:
      throw PreconditionError("Formula::binary: not a binary connective");
  }
}

bool Formula::is_binary() const {
  switch (kind()) {
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
    case Connective::Coimp:
      return true;
    default:
      return false;
  }
}

const Formula& Formula::left() const {
  if (node_->kids.empty()) throw PreconditionError("formula has no operands: " + str());
  return node_->kids[0];
}

const Formula& Formula::right() const {
  if (node_->kids.size() < 2) throw PreconditionError("formula is not binary: " + str());
  return node_->kids[1];
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->size != b.node_->size || a.node_->kind != b.node_->kind || a.node_->name != b.node_->name)
    return false;
  return a.node_->kids == b.node_->kids;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.node_->kind <=> b.node_->kind; c != 0) return c;
  if (auto c = a.node_->name <=> b.node_->name; c != 0) return c;
  const auto& ka = a.node_->kids;
  const auto& kb = b.node_->kids;
  for (std::size_t i = 0; i < ka.size() && i < kb.size(); ++i)
    if (auto c = ka[i] <=> kb[i]; c != 0) return c;
  return ka.size() <=> kb.size();
}

std::string Formula::str() const { return print_formula(*this); }

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << print_formula(f); }

namespace {

void collect(const Formula& f, std::set<Formula>& out) {
  if (!out.insert(f).second) return;
  if (f.is_binary()) {
    collect(f.left(), out);
    collect(f.right(), out);
  } else if (f.is_unary()) {
    collect(f.operand(), out);
  }
}

}  // namespace

Formulas subformulas(const Formula& f) {
  std::set<Formula> out;
  collect(f, out);
  return {out.begin(), out.end()};
}

Formulas proper_subformulas(const Formula& f) {
  Formulas all = subformulas(f);
  std::erase(all, f);
  return all;
}

bool is_subformula_of(const Formula& a, const Formula& of) {
  if (a.size() > of.size()) return false;
  if (a == of) return true;
  if (of.is_binary()) return is_subformula_of(a, of.left()) || is_subformula_of(a, of.right());
  if (of.is_unary()) return is_subformula_of(a, of.operand());
  return false;
}

bool is_subformula(const Formula& a, const Formulas& of) {
  return std::any_of(of.begin(), of.end(), [&](const Formula& f) { return is_subformula_of(a, f); });
}

Formula replace_atom(const Formula& f, const std::string& from, const Formula& to) {
  switch (f.kind()) {
    case Connective::Atom:
      return f.name() == from ? to : f;
    case Connective::Top:
    case Connective::Bot:
      return f;
    case Connective::Neg:
      return Formula::neg(replace_atom(f.operand(), from, to));
    case Connective::Box:
      return Formula::box(replace_atom(f.operand(), from, to));
    default:
      return Formula::binary(f.kind(), replace_atom(f.left(), from, to), replace_atom(f.right(), from, to));
  }
}

std::vector<std::string> atoms_of(const Formula& f) {
  std::vector<std::string> out;
  for (const auto& g : subformulas(f))
    if (g.is_atom()) out.push_back(g.name());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Formula dualize(const Formula& f) {
  switch (f.kind()) {
    case Connective::Atom:
      return f;
    case Connective::Top:
      return Formula::bot();
    case Connective::Bot:
      return Formula::top();
    case Connective::And:
      return Formula::disj(dualize(f.left()), dualize(f.right()));
    case Connective::Or:
      return Formula::conj(dualize(f.left()), dualize(f.right()));
    case Connective::Imp:
      return Formula::coimp(dualize(f.right()), dualize(f.left()));
    case Connective::Coimp:
      return Formula::imp(dualize(f.right()), dualize(f.left()));
    case Connective::Neg:
    case Connective::Box:
      break;
  }
  throw SignatureError("duality is undefined for ~ and []: " + f.str());
}

}  // namespace cutr
