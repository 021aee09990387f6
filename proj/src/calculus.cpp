#include "cutr/calculus.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "cutr/errors.hpp"
#include "cutr/parse.hpp"

namespace cutr {

namespace {

struct RuleInfo {
  RuleId id;
  std::string_view name;
  std::size_t arity;
  bool biint;
  bool s5;
};

constexpr std::array<RuleInfo, 22> kRules{{
    {RuleId::Init, "init", 0, true, true},      {RuleId::Cut, "cut", 2, true, true},
    {RuleId::WeakL, "w_L", 1, true, true},      {RuleId::WeakR, "w_R", 1, true, true},
    {RuleId::ContrL, "contr_L", 1, true, true}, {RuleId::ContrR, "contr_R", 1, true, true},
    {RuleId::TopL, "top_L", 1, true, true},     {RuleId::TopR, "top_R", 0, true, true},
    {RuleId::BotL, "bot_L", 0, true, true},     {RuleId::BotR, "bot_R", 1, true, true},
    {RuleId::AndL, "and_L", 1, true, true},     {RuleId::AndR, "and_R", 2, true, true},
    {RuleId::OrL, "or_L", 2, true, true},       {RuleId::OrR, "or_R", 1, true, true},
    {RuleId::ImpL, "imp_L", 2, true, false},    {RuleId::ImpR, "imp_R", 1, true, false},
    {RuleId::CoimpL, "coimp_L", 1, true, false}, {RuleId::CoimpR, "coimp_R", 2, true, false},
    {RuleId::NegL, "neg_L", 1, false, true},    {RuleId::NegR, "neg_R", 1, false, true},
    {RuleId::T, "T", 1, false, true},           {RuleId::Five, "Five", 1, false, true},
}};

const RuleInfo& info(RuleId r) { return kRules[static_cast<std::size_t>(r)]; }

Diagnostic diag(const RuleInstance& inst, std::string cond, std::string msg, std::vector<Occ> occs = {}) {
  return Diagnostic{-1, inst.rule, std::move(cond), std::move(occs), std::move(msg)};
}

/// What one premise must contain: the conclusion occurrences it carries
/// (an occurrence listed twice is carried twice) plus the active formulas.
struct PremiseSchema {
  std::vector<Occ> carried;
  Sequent active;
};

std::vector<Occ> all_occs(const Sequent& s, std::optional<Occ> skip = std::nullopt, bool ante = true,
                          bool succ = true) {
  std::vector<Occ> out;
  if (ante)
    for (std::size_t i = 0; i < s.ante.size(); ++i)
      if (!skip || *skip != Occ{Side::Ante, i}) out.push_back({Side::Ante, i});
  if (succ)
    for (std::size_t i = 0; i < s.succ.size(); ++i)
      if (!skip || *skip != Occ{Side::Succ, i}) out.push_back({Side::Succ, i});
  return out;
}

const Formula& at(const Sequent& s, Occ o) { return s.side(o.side)[o.index]; }

bool in_bounds(const Sequent& s, Occ o) { return o.index < s.side(o.side).size(); }

// Checks the principal occurrences and computes the premise schemas.
std::optional<Diagnostic> schema(const RuleInstance& inst, std::vector<PremiseSchema>& out) {
  const Sequent& c = inst.conclusion;
  const RuleId r = inst.rule;
  out.clear();

  if (r == RuleId::Cut) {
    if (!inst.principal.empty()) return diag(inst, "principal", "cut has no principal formula");
    if (inst.premises.size() != 2) return diag(inst, "arity", "cut needs two premises");
    Formulas extra_l = multiset_minus(inst.premises[0].succ, c.succ);
    Formulas extra_r = multiset_minus(inst.premises[1].ante, c.ante);
    if (extra_l.size() != 1 || extra_r.size() != 1 || extra_l[0] != extra_r[0])
      return diag(inst, "schema", "cut premises do not share a single cut formula");
    out.push_back({all_occs(c), Sequent{{}, {extra_l[0]}}});
    out.push_back({all_occs(c), Sequent{{extra_r[0]}, {}}});
    return std::nullopt;
  }

  if (r == RuleId::Init) {
    if (inst.principal.size() != 2 || inst.principal[0].side != Side::Ante || inst.principal[1].side != Side::Succ)
      return diag(inst, "principal", "init needs principal occurrences a<i>,s<j>", inst.principal);
    if (!in_bounds(c, inst.principal[0]) || !in_bounds(c, inst.principal[1]))
      return diag(inst, "principal", "principal occurrence out of bounds", inst.principal);
    const Formula& a = at(c, inst.principal[0]);
    if (!a.is_atom() || a != at(c, inst.principal[1]))
      return diag(inst, "principal", "init principal must be the same atom on both sides", inst.principal);
    return std::nullopt;
  }

  if (inst.principal.size() != 1) return diag(inst, "principal", "expected exactly one principal occurrence");
  const Occ p = inst.principal[0];
  if (!in_bounds(c, p)) return diag(inst, "principal", "principal occurrence out of bounds", {p});
  if (p.side != principal_side(r))
    return diag(inst, "principal", "principal formula on the wrong side", {p});
  const Formula& f = at(c, p);

  if (is_structural(r)) {
    if (r == RuleId::WeakL || r == RuleId::WeakR) {
      out.push_back({all_occs(c, p), {}});
    } else {
      auto carried = all_occs(c);
      carried.push_back(p);
      out.push_back({carried, {}});
    }
    return std::nullopt;
  }

  if (f.kind() != introduced(r))
    return diag(inst, "principal", "principal formula " + f.str() + " does not match rule", {p});

  const auto rest = all_occs(c, p);
  switch (r) {
    case RuleId::TopR:
    case RuleId::BotL:
      break;
    case RuleId::TopL:
    case RuleId::BotR:
      out.push_back({rest, {}});
      break;
    case RuleId::AndL:
      out.push_back({rest, Sequent{{f.left(), f.right()}, {}}});
      break;
    case RuleId::AndR:
      out.push_back({rest, Sequent{{}, {f.left()}}});
      out.push_back({rest, Sequent{{}, {f.right()}}});
      break;
    case RuleId::OrL:
      out.push_back({rest, Sequent{{f.left()}, {}}});
      out.push_back({rest, Sequent{{f.right()}, {}}});
      break;
    case RuleId::OrR:
      out.push_back({rest, Sequent{{}, {f.left(), f.right()}}});
      break;
    case RuleId::ImpL:
      out.push_back({all_occs(c), Sequent{{}, {f.left()}}});
      out.push_back({all_occs(c), Sequent{{f.right()}, {}}});
      break;
    case RuleId::ImpR:
      out.push_back({all_occs(c, p, true, false), Sequent{{f.left()}, {f.right()}}});
      break;
    case RuleId::CoimpL:
      out.push_back({all_occs(c, p, false, true), Sequent{{f.left()}, {f.right()}}});
      break;
    case RuleId::CoimpR:
      out.push_back({all_occs(c), Sequent{{}, {f.left()}}});
      out.push_back({all_occs(c), Sequent{{f.right()}, {}}});
      break;
    case RuleId::NegL:
      out.push_back({rest, Sequent{{}, {f.operand()}}});
      break;
    case RuleId::NegR:
      out.push_back({rest, Sequent{{f.operand()}, {}}});
      break;
    case RuleId::T:
      out.push_back({rest, Sequent{{f.operand()}, {}}});
      break;
    case RuleId::Five: {
      std::vector<Occ> unboxed;
      for (const Occ& o : rest)
        if (!is_boxed(at(c, o))) unboxed.push_back(o);
      if (!unboxed.empty()) return diag(inst, "side_condition", "Five requires every context formula boxed", unboxed);
      out.push_back({rest, Sequent{{}, {f.operand()}}});
      break;
    }
    default:
      return diag(inst, "schema", "unhandled rule");
  }
  return std::nullopt;
}

// Side conditions that multiset matching would only report as a generic
// mismatch.
std::optional<Diagnostic> side_conditions(const RuleInstance& inst) {
  if (inst.rule == RuleId::ImpR && !inst.premises.empty() && inst.premises[0].succ.size() != 1)
    return diag(inst, "side_condition", "imp_R premise succedent must be the single formula B");
  if (inst.rule == RuleId::CoimpL && !inst.premises.empty() && inst.premises[0].ante.size() != 1)
    return diag(inst, "side_condition", "coimp_L premise antecedent must be the single formula A");
  return std::nullopt;
}

std::optional<Diagnostic> common_checks(CalculusId calc, const RuleInstance& inst) {
  if (!belongs_to(inst.rule, calc))
    return diag(inst, "rule_not_in_calculus",
                std::string(to_string(inst.rule)) + " is not a rule of " + std::string(to_string(calc)));
  if (!in_signature(inst.conclusion, calc))
    return diag(inst, "signature", "conclusion outside the signature of " + std::string(to_string(calc)));
  for (const auto& p : inst.premises)
    if (!in_signature(p, calc)) return diag(inst, "signature", "premise outside the signature");
  if (inst.premises.size() != arity(inst.rule)) {
    if (inst.premises.empty()) return diag(inst, "non_initial_leaf", "leaf is not an initial sequent");
    return diag(inst, "arity", "rule expects " + std::to_string(arity(inst.rule)) + " premises");
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(CalculusId c) { return c == CalculusId::BiInt ? "biint" : "s5"; }

std::optional<CalculusId> calculus_from_string(std::string_view s) {
  if (s == "biint" || s == "BiInt") return CalculusId::BiInt;
  if (s == "s5" || s == "S5") return CalculusId::S5;
  return std::nullopt;
}

std::string_view to_string(RuleId r) { return info(r).name; }

std::optional<RuleId> rule_from_string(std::string_view s) {
  for (const auto& i : kRules)
    if (i.name == s) return i.id;
  return std::nullopt;
}

bool is_initial(RuleId r) { return r == RuleId::Init || r == RuleId::TopR || r == RuleId::BotL; }

bool is_structural(RuleId r) {
  return r == RuleId::WeakL || r == RuleId::WeakR || r == RuleId::ContrL || r == RuleId::ContrR;
}

bool is_logical(RuleId r) { return r != RuleId::Init && r != RuleId::Cut && !is_structural(r); }

bool belongs_to(RuleId r, CalculusId c) { return c == CalculusId::BiInt ? info(r).biint : info(r).s5; }

std::size_t arity(RuleId r) { return info(r).arity; }

Side principal_side(RuleId r) {
  switch (r) {
    case RuleId::WeakL:
    case RuleId::ContrL:
    case RuleId::TopL:
    case RuleId::BotL:
    case RuleId::AndL:
    case RuleId::OrL:
    case RuleId::ImpL:
    case RuleId::CoimpL:
    case RuleId::NegL:
    case RuleId::T:
    case RuleId::Init:
      return Side::Ante;
    default:
      return Side::Succ;
  }
}

Connective introduced(RuleId r) {
  switch (r) {
    case RuleId::TopL:
    case RuleId::TopR:
      return Connective::Top;
    case RuleId::BotL:
    case RuleId::BotR:
      return Connective::Bot;
    case RuleId::AndL:
    case RuleId::AndR:
      return Connective::And;
    case RuleId::OrL:
    case RuleId::OrR:
      return Connective::Or;
    case RuleId::ImpL:
    case RuleId::ImpR:
      return Connective::Imp;
    case RuleId::CoimpL:
    case RuleId::CoimpR:
      return Connective::Coimp;
    case RuleId::NegL:
    case RuleId::NegR:
      return Connective::Neg;
    case RuleId::T:
    case RuleId::Five:
      return Connective::Box;
    default:
      throw PreconditionError(std::string(to_string(r)) + " introduces no connective");
  }
}

std::optional<RuleId> intro_rule(Connective c, Side s) {
  const bool l = s == Side::Ante;
  switch (c) {
    case Connective::Top:
      return l ? RuleId::TopL : RuleId::TopR;
    case Connective::Bot:
      return l ? RuleId::BotL : RuleId::BotR;
    case Connective::And:
      return l ? RuleId::AndL : RuleId::AndR;
    case Connective::Or:
      return l ? RuleId::OrL : RuleId::OrR;
    case Connective::Imp:
      return l ? RuleId::ImpL : RuleId::ImpR;
    case Connective::Coimp:
      return l ? RuleId::CoimpL : RuleId::CoimpR;
    case Connective::Neg:
      return l ? RuleId::NegL : RuleId::NegR;
    case Connective::Box:
      return l ? RuleId::T : RuleId::Five;
    case Connective::Atom:
      return std::nullopt;
  }
  return std::nullopt;
}

bool in_signature(const Formula& f, CalculusId c) {
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::Top:
    case Connective::Bot:
      return true;
    case Connective::And:
    case Connective::Or:
      return in_signature(f.left(), c) && in_signature(f.right(), c);
    case Connective::Imp:
    case Connective::Coimp:
      return c == CalculusId::BiInt && in_signature(f.left(), c) && in_signature(f.right(), c);
    case Connective::Neg:
    case Connective::Box:
      return c == CalculusId::S5 && in_signature(f.operand(), c);
  }
  return false;
}

bool in_signature(const Sequent& s, CalculusId c) {
  return std::all_of(s.ante.begin(), s.ante.end(), [c](const Formula& f) { return in_signature(f, c); }) &&
         std::all_of(s.succ.begin(), s.succ.end(), [c](const Formula& f) { return in_signature(f, c); });
}

std::string to_string(const Occ& o) { return (o.side == Side::Ante ? "a" : "s") + std::to_string(o.index); }

std::string Diagnostic::str() const {
  std::ostringstream os;
  if (node >= 0) os << "node " << node << ": ";
  os << to_string(rule) << ": " << condition;
  if (!occurrences.empty()) {
    os << " [";
    for (std::size_t i = 0; i < occurrences.size(); ++i) os << (i ? "," : "") << to_string(occurrences[i]);
    os << "]";
  }
  if (!message.empty()) os << ": " << message;
  return os.str();
}

std::optional<Diagnostic> infer_flow(CalculusId calc, RuleInstance& inst) {
  if (auto d = common_checks(calc, inst)) return d;
  std::vector<PremiseSchema> schemas;
  if (auto d = schema(inst, schemas)) return d;
  if (auto d = side_conditions(inst)) return d;
  inst.flow.assign(inst.premises.size(), {});
  for (std::size_t i = 0; i < inst.premises.size(); ++i) {
    const Sequent& prem = inst.premises[i];
    PremiseFlow& fl = inst.flow[i];
    fl.ante.assign(inst.conclusion.ante.size(), {});
    fl.succ.assign(inst.conclusion.succ.size(), {});
    std::vector<bool> used_a(prem.ante.size()), used_s(prem.succ.size());
    for (const Occ& o : schemas[i].carried) {
      const Formulas& side = prem.side(o.side);
      auto& used = o.side == Side::Ante ? used_a : used_s;
      const Formula& f = at(inst.conclusion, o);
      bool found = false;
      for (std::size_t j = 0; j < side.size(); ++j) {
        if (!used[j] && side[j] == f) {
          used[j] = true;
          fl.side(o.side)[o.index].push_back(j);
          found = true;
          break;
        }
      }
      if (!found)
        return diag(inst, "schema", "premise " + std::to_string(i) + " lacks context formula " + f.str(), {o});
    }
  }
  return validate_instance(calc, inst);
}

std::optional<Diagnostic> validate_instance(CalculusId calc, const RuleInstance& inst) {
  if (auto d = common_checks(calc, inst)) return d;
  std::vector<PremiseSchema> schemas;
  if (auto d = schema(inst, schemas)) return d;
  if (auto d = side_conditions(inst)) return d;
  if (inst.flow.size() != inst.premises.size()) return diag(inst, "flow", "one flow map per premise required");

  for (std::size_t i = 0; i < inst.premises.size(); ++i) {
    const Sequent& prem = inst.premises[i];
    const PremiseFlow& fl = inst.flow[i];
    const PremiseSchema& sc = schemas[i];
    if (fl.ante.size() != inst.conclusion.ante.size() || fl.succ.size() != inst.conclusion.succ.size())
      return diag(inst, "flow", "flow map does not cover the conclusion");
    std::vector<bool> hit_a(prem.ante.size()), hit_s(prem.succ.size());
    for (Side s : {Side::Ante, Side::Succ}) {
      const auto& rows = fl.side(s);
      for (std::size_t k = 0; k < rows.size(); ++k) {
        const Occ o{s, k};
        const auto expected = static_cast<std::size_t>(std::count(sc.carried.begin(), sc.carried.end(), o));
        if (rows[k].size() != expected)
          return diag(inst, "flow", "occurrence maps to " + std::to_string(rows[k].size()) + " premise occurrences, expected " +
                                        std::to_string(expected),
                      {o});
        auto& hit = s == Side::Ante ? hit_a : hit_s;
        for (std::size_t j : rows[k]) {
          if (j >= prem.side(s).size()) return diag(inst, "flow", "flow target out of bounds", {o});
          if (hit[j]) return diag(inst, "flow", "flow map is not injective", {o});
          if (prem.side(s)[j] != at(inst.conclusion, o))
            return diag(inst, "flow", "flow relates different formulas", {o});
          hit[j] = true;
        }
      }
    }
    Sequent leftover;
    for (std::size_t j = 0; j < prem.ante.size(); ++j)
      if (!hit_a[j]) leftover.ante.push_back(prem.ante[j]);
    for (std::size_t j = 0; j < prem.succ.size(); ++j)
      if (!hit_s[j]) leftover.succ.push_back(prem.succ[j]);
    if (!multiset_equal(leftover, sc.active))
      return diag(inst, "schema",
                  "premise " + std::to_string(i) + " adds " + print_sequent(leftover) + ", rule requires " +
                      print_sequent(sc.active));
  }
  return std::nullopt;
}

Formula cut_formula(const RuleInstance& inst) {
  if (inst.rule != RuleId::Cut) throw PreconditionError("cut_formula: not a cut instance");
  Formulas extra = multiset_minus(inst.premises.at(0).succ, inst.conclusion.succ);
  if (extra.size() != 1) throw PreconditionError("cut_formula: malformed cut instance");
  return extra[0];
}

bool is_analytic_cut(const RuleInstance& inst) {
  return is_subformula(cut_formula(inst), inst.conclusion);
}

bool check_append(CalculusId c, const RuleInstance& inst, const Formulas& x, const Formulas& y) {
  RuleInstance ext = inst;
  ext.conclusion.ante = concat(ext.conclusion.ante, x);
  ext.conclusion.succ = concat(ext.conclusion.succ, y);
  for (std::size_t i = 0; i < ext.premises.size(); ++i) {
    const std::size_t pa = ext.premises[i].ante.size(), ps = ext.premises[i].succ.size();
    ext.premises[i].ante = concat(ext.premises[i].ante, x);
    ext.premises[i].succ = concat(ext.premises[i].succ, y);
    if (i < ext.flow.size()) {
      for (std::size_t k = 0; k < x.size(); ++k) ext.flow[i].ante.push_back({pa + k});
      for (std::size_t k = 0; k < y.size(); ++k) ext.flow[i].succ.push_back({ps + k});
    }
  }
  return !validate_instance(c, ext).has_value();
}

}  // namespace cutr
