#include "cutr/sequent.hpp"

#include <algorithm>
#include <map>

#include "cutr/parse.hpp"

namespace cutr {

std::string Sequent::str() const { return print_sequent(*this); }

std::ostream& operator<<(std::ostream& os, const Sequent& s) { return os << print_sequent(s); }

namespace {

std::map<Formula, long> tally(const Formulas& xs) {
  std::map<Formula, long> m;
  for (const auto& f : xs) ++m[f];
  return m;
}

}  // namespace

bool multiset_equal(const Formulas& a, const Formulas& b) {
  return a.size() == b.size() && tally(a) == tally(b);
}

bool multiset_equal(const Sequent& a, const Sequent& b) {
  return multiset_equal(a.ante, b.ante) && multiset_equal(a.succ, b.succ);
}

bool multiset_includes(const Formulas& b, const Formulas& a) {
  auto tb = tally(b);
  for (const auto& [f, n] : tally(a)) {
    auto it = tb.find(f);
    if (it == tb.end() || it->second < n) return false;
  }
  return true;
}

bool multiset_includes(const Sequent& b, const Sequent& a) {
  return multiset_includes(b.ante, a.ante) && multiset_includes(b.succ, a.succ);
}

std::size_t count(const Formulas& xs, const Formula& f) {
  return static_cast<std::size_t>(std::count(xs.begin(), xs.end(), f));
}

bool remove_one(Formulas& xs, const Formula& f) {
  auto it = std::find(xs.begin(), xs.end(), f);
  if (it == xs.end()) return false;
  xs.erase(it);
  return true;
}

Formulas multiset_union(const Formulas& a, const Formulas& b) {
  Formulas out = a;
  Formulas rest = a;
  for (const auto& f : b)
    if (!remove_one(rest, f)) out.push_back(f);
  return out;
}

Formulas multiset_minus(const Formulas& a, const Formulas& b) {
  Formulas out = a;
  for (const auto& f : b) remove_one(out, f);
  return out;
}

Formulas concat(Formulas a, const Formulas& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Formulas dedup(const Formulas& xs) {
  Formulas out;
  for (const auto& f : xs)
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  return out;
}

Formulas members(const Sequent& s) { return concat(s.ante, s.succ); }

bool is_subformula(const Formula& a, const Sequent& of) {
  return is_subformula(a, of.ante) || is_subformula(a, of.succ);
}

Sequent dualize(const Sequent& s) {
  Sequent d;
  for (const auto& f : s.succ) d.ante.push_back(dualize(f));
  for (const auto& f : s.ante) d.succ.push_back(dualize(f));
  return d;
}

}  // namespace cutr
