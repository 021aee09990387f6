#include <gtest/gtest.h>

#include "cutr/calculus.hpp"
#include "cutr/parse.hpp"

using namespace cutr;

namespace {

RuleInstance inst(RuleId r, const char* concl, std::vector<const char*> prems, std::vector<Occ> principal) {
  RuleInstance i{r, parse_sequent(concl), {}, std::move(principal), {}};
  for (auto p : prems) i.premises.push_back(parse_sequent(p));
  return i;
}

std::optional<Diagnostic> infer(CalculusId c, RuleInstance& i) { return infer_flow(c, i); }

}  // namespace

TEST(Validate, ImpRight) {
  auto ok = inst(RuleId::ImpR, "p |- p -> q, r", {"p, p |- q"}, {{Side::Succ, 0}});
  EXPECT_FALSE(infer(CalculusId::BiInt, ok));
  EXPECT_FALSE(validate_instance(CalculusId::BiInt, ok));

  auto bad = inst(RuleId::ImpR, "p |- p -> q, r", {"p, p |- q, r"}, {{Side::Succ, 0}});
  auto d = infer(CalculusId::BiInt, bad);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->condition, "side_condition");
}

TEST(Validate, FiveBoxedContext) {
  auto bad = inst(RuleId::Five, "[]p |- []q, r", {"[]p |- q, r"}, {{Side::Succ, 0}});
  auto d = infer(CalculusId::S5, bad);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->condition, "side_condition");
  ASSERT_EQ(d->occurrences.size(), 1u);
  EXPECT_EQ(d->occurrences[0], (Occ{Side::Succ, 1}));

  auto ok = inst(RuleId::Five, "[]p |- []q, []r", {"[]p |- q, []r"}, {{Side::Succ, 0}});
  EXPECT_FALSE(infer(CalculusId::S5, ok));
}

TEST(Validate, InitAndSignature) {
  auto ok = inst(RuleId::Init, "q, p |- p, r", {}, {{Side::Ante, 1}, {Side::Succ, 0}});
  EXPECT_FALSE(infer(CalculusId::BiInt, ok));
  auto nonatomic = inst(RuleId::Init, "p & q |- p & q", {}, {{Side::Ante, 0}, {Side::Succ, 0}});
  EXPECT_EQ(infer(CalculusId::BiInt, nonatomic)->condition, "principal");
  auto sig = inst(RuleId::Init, "[]p, p |- p", {}, {{Side::Ante, 1}, {Side::Succ, 0}});
  EXPECT_EQ(infer(CalculusId::BiInt, sig)->condition, "signature");
  auto wrong_calc = inst(RuleId::T, "[]p |- p", {"p |- p"}, {{Side::Ante, 0}});
  EXPECT_EQ(infer(CalculusId::BiInt, wrong_calc)->condition, "rule_not_in_calculus");
}

TEST(Validate, FlowErrors) {
  auto i = inst(RuleId::AndL, "p & q, r |- r", {"r, p, q |- r"}, {{Side::Ante, 0}});
  ASSERT_FALSE(infer(CalculusId::BiInt, i));
  EXPECT_EQ(i.flow[0].ante[1], std::vector<std::size_t>{0});
  auto broken = i;
  broken.flow[0].ante[1] = {1};
  EXPECT_EQ(validate_instance(CalculusId::BiInt, broken)->condition, "flow");
  broken = i;
  broken.flow[0].ante[0] = {1};
  EXPECT_EQ(validate_instance(CalculusId::BiInt, broken)->condition, "flow");
  broken = i;
  broken.flow.clear();
  EXPECT_EQ(validate_instance(CalculusId::BiInt, broken)->condition, "flow");
}

TEST(Validate, StructuralFlow) {
  auto w = inst(RuleId::WeakL, "q, p |- p", {"p |- p"}, {{Side::Ante, 0}});
  ASSERT_FALSE(infer(CalculusId::BiInt, w));
  EXPECT_TRUE(w.flow[0].ante[0].empty());
  auto c = inst(RuleId::ContrL, "p |- q", {"p, p |- q"}, {{Side::Ante, 0}});
  ASSERT_FALSE(infer(CalculusId::BiInt, c));
  EXPECT_EQ(c.flow[0].ante[0].size(), 2u);
}

TEST(Validate, Deterministic) {
  auto bad = inst(RuleId::OrL, "p | q |- r", {"p |- r", "r |- r"}, {{Side::Ante, 0}});
  auto d1 = infer(CalculusId::BiInt, bad);
  auto d2 = infer(CalculusId::BiInt, bad);
  ASSERT_TRUE(d1 && d2);
  EXPECT_EQ(d1->str(), d2->str());
}

TEST(Analytic, Cut) {
  auto a = inst(RuleId::Cut, "p |- q", {"p |- p, q", "p, p |- q"}, {});
  ASSERT_FALSE(infer(CalculusId::BiInt, a));
  EXPECT_TRUE(is_analytic_cut(a));
  auto b = inst(RuleId::Cut, "p, q |- r", {"p, q |- p & q, r", "p, q, p & q |- r"}, {});
  ASSERT_FALSE(infer(CalculusId::BiInt, b));
  EXPECT_FALSE(is_analytic_cut(b));
  auto c = inst(RuleId::Cut, "p -> q |- r", {"p -> q |- q, r", "p -> q, q |- r"}, {});
  ASSERT_FALSE(infer(CalculusId::BiInt, c));
  EXPECT_EQ(is_analytic_cut(c), is_subformula(cut_formula(c), members(c.conclusion)));
  EXPECT_TRUE(is_analytic_cut(c));
  auto mismatch = inst(RuleId::Cut, "p |- q", {"p |- r, q", "p, s |- q"}, {});
  EXPECT_EQ(infer(CalculusId::BiInt, mismatch)->condition, "schema");
}

TEST(Append, Examples) {
  auto and_r = inst(RuleId::AndR, "p |- p & q", {"p |- p", "p |- q"}, {{Side::Succ, 0}});
  ASSERT_FALSE(infer(CalculusId::BiInt, and_r));
  EXPECT_TRUE(check_append(CalculusId::BiInt, and_r, {parse_formula("r")}, {}));

  auto imp_r = inst(RuleId::ImpR, "|- p -> q", {"p |- q"}, {{Side::Succ, 0}});
  ASSERT_FALSE(infer(CalculusId::BiInt, imp_r));
  EXPECT_FALSE(check_append(CalculusId::BiInt, imp_r, {}, {parse_formula("r")}));
  EXPECT_TRUE(check_append(CalculusId::BiInt, imp_r, {parse_formula("r")}, {}));

  auto coimp_l = inst(RuleId::CoimpL, "p -< q |-", {"p |- q"}, {{Side::Ante, 0}});
  ASSERT_FALSE(infer(CalculusId::BiInt, coimp_l));
  EXPECT_FALSE(check_append(CalculusId::BiInt, coimp_l, {parse_formula("r")}, {}));
  EXPECT_TRUE(check_append(CalculusId::BiInt, coimp_l, {}, {parse_formula("r")}));

  auto t = inst(RuleId::T, "[]p |- p", {"p |- p"}, {{Side::Ante, 0}});
  ASSERT_FALSE(infer(CalculusId::S5, t));
  EXPECT_TRUE(check_append(CalculusId::S5, t, {parse_formula("[]r")}, {parse_formula("[]s")}));
}

TEST(Rules, Names) {
  for (int i = 0; i <= static_cast<int>(RuleId::Five); ++i) {
    auto r = static_cast<RuleId>(i);
    EXPECT_EQ(rule_from_string(to_string(r)), r);
  }
  EXPECT_FALSE(rule_from_string("nope"));
}
