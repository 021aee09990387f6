#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cutr/sequent.hpp"

namespace cutr {

enum class CalculusId : unsigned char { BiInt, S5 };

std::string_view to_string(CalculusId c);
std::optional<CalculusId> calculus_from_string(std::string_view s);

enum class RuleId : unsigned char {
  Init,
  Cut,
  WeakL,
  WeakR,
  ContrL,
  ContrR,
  TopL,
  TopR,
  BotL,
  BotR,
  AndL,
  AndR,
  OrL,
  OrR,
  ImpL,
  ImpR,
  CoimpL,
  CoimpR,
  NegL,
  NegR,
  T,
  Five,
};

std::string_view to_string(RuleId r);
std::optional<RuleId> rule_from_string(std::string_view s);

/// Rules whose conclusion is an initial sequent.
bool is_initial(RuleId r);
bool is_structural(RuleId r);
/// Logical rules: everything except init, cut and the structural rules.
bool is_logical(RuleId r);
bool belongs_to(RuleId r, CalculusId c);
std::size_t arity(RuleId r);
/// Side on which the principal formula of a logical or structural rule sits.
Side principal_side(RuleId r);
/// Main connective introduced by a logical rule.
Connective introduced(RuleId r);
/// The left/right introduction rule of a connective, if the calculus has one.
std::optional<RuleId> intro_rule(Connective c, Side s);

bool in_signature(const Formula& f, CalculusId c);
bool in_signature(const Sequent& s, CalculusId c);

/// A formula occurrence inside one sequent.
struct Occ {
  Side side;
  std::size_t index;
  auto operator<=>(const Occ&) const = default;
};

std::string to_string(const Occ& o);

/// Occurrence correspondence from a conclusion to one premise: for every
/// conclusion occurrence, the premise indices (same side) it continues as.
struct PremiseFlow {
  std::vector<std::vector<std::size_t>> ante;
  std::vector<std::vector<std::size_t>> succ;

  const std::vector<std::vector<std::size_t>>& side(Side s) const { return s == Side::Ante ? ante : succ; }
  std::vector<std::vector<std::size_t>>& side(Side s) { return s == Side::Ante ? ante : succ; }
  bool operator==(const PremiseFlow&) const = default;
};

struct RuleInstance {
  RuleId rule;
  Sequent conclusion;
  std::vector<Sequent> premises;
  /// init: one antecedent and one succedent occurrence; cut: empty;
  /// every other rule: exactly one occurrence.
  std::vector<Occ> principal;
  std::vector<PremiseFlow> flow;
};

/// Node-local failure report.
struct Diagnostic {
  long node = -1;
  RuleId rule = RuleId::Init;
  std::string condition;
  std::vector<Occ> occurrences;
  std::string message;

  std::string str() const;
};

/// Computes the canonical flow map for an instance whose flow field is
/// empty or stale. Fails with the same diagnostics as validate_instance.
std::optional<Diagnostic> infer_flow(CalculusId c, RuleInstance& inst);

/// Checks `inst` against the schema of its rule in calculus c, including
/// side conditions and well-formedness of the supplied flow map.
std::optional<Diagnostic> validate_instance(CalculusId c, const RuleInstance& inst);

/// Cut formula of a cut instance (the formula the left premise adds).
Formula cut_formula(const RuleInstance& inst);

bool is_analytic_cut(const RuleInstance& inst);

/// Appends x to every antecedent and y to every succedent of the instance
/// (extending the flow identically) and re-validates.
bool check_append(CalculusId c, const RuleInstance& inst, const Formulas& x, const Formulas& y);

}  // namespace cutr
