#include <gtest/gtest.h>

#include "cutr/errors.hpp"
#include "cutr/invert.hpp"
#include "cutr/parse.hpp"
#include "test_util.hpp"

using namespace cutr;

namespace {

const CalculusId B = CalculusId::BiInt;

Proof search(const char* s) {
  SearchPolicy pol;
  pol.depth_bound = 6;
  auto r = prove_bounded(B, parse_sequent(s), pol);
  EXPECT_TRUE(r.found()) << s;
  return r.proof;
}

}  // namespace

TEST(Invert, AndLeft) {
  const Proof p = search("p & q |- q & p");
  const Proof out = invert(B, p, RuleId::AndL, parse_formula("p & q"), 0);
  EXPECT_FALSE(find_error(B, out).has_value());
  EXPECT_TRUE(multiset_equal(out->sequent(), parse_sequent("p, q |- q & p")));
  EXPECT_LE(height(out), height(p));
}

TEST(Invert, TopWeakenedIn) {
  const Proof p = weaken(B, search("p |- p"), {Formula::top()}, {});
  const Proof out = invert(B, p, RuleId::TopL, Formula::top(), 0);
  EXPECT_TRUE(multiset_equal(out->sequent(), parse_sequent("p |- p")));
  EXPECT_EQ(out->rule(), RuleId::Init);
}

TEST(Invert, AndRightThroughCutOnConjunct) {
  // Analytic cut on p under p & q; inverting to the right premise may leave
  // a cut on p that is no longer analytic.
  const Formula pq = parse_formula("p & q");
  const Proof l = search("p, q |- p & q, p");
  const Proof r = search("p, q, p |- p & q");
  const Proof p = cut(B, l, r, parse_formula("p"));
  const Proof out = invert(B, p, RuleId::AndR, pq, 1);
  EXPECT_FALSE(find_error(B, out).has_value());
  EXPECT_TRUE(multiset_equal(out->sequent(), parse_sequent("p, q |- q")));
  EXPECT_LE(height(out), height(p));
  for (const auto& f : check_proof(B, out).nonanalytic_formulas) EXPECT_EQ(f, parse_formula("p"));
}

TEST(Invert, Mismatch) {
  const Proof p = search("p |- p");
  EXPECT_THROW(invert(B, p, RuleId::AndL, parse_formula("p & q"), 0), PreconditionError);
  EXPECT_THROW(invert(B, p, RuleId::ImpR, parse_formula("p"), 0), PreconditionError);
  EXPECT_THROW(invert(CalculusId::S5, p, RuleId::TopL, Formula::top(), 0), PreconditionError);
}

TEST(Invert, RandomCases) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 60; ++i) {
    const auto k = testutil::random_invert_case(rng);
    SCOPED_TRACE(std::string(to_string(k.rule)) + " on " + k.principal.str());
    const Proof out = invert(B, k.proof, k.rule, k.principal, k.which);
    ASSERT_FALSE(find_error(B, out).has_value());
    EXPECT_TRUE(multiset_equal(out->sequent(), k.premise));
    EXPECT_LE(height(out), height(k.proof));
    for (const auto& f : check_proof(B, out).nonanalytic_formulas)
      EXPECT_TRUE(f != k.principal && is_subformula_of(f, k.principal)) << f.str();
  }
}

TEST(HpStructural, WeakenAndContract) {
  const Proof p = search("p & q |- q & p");
  const Proof w = hp_weaken(B, p, {parse_formula("r")}, {parse_formula("s")});
  EXPECT_TRUE(multiset_equal(w->sequent(), parse_sequent("p & q, r |- q & p, s")));
  EXPECT_EQ(height(w), height(p));
  const Proof d = hp_weaken(B, p, {parse_formula("p & q")}, {});
  const Proof c = contract_hp(B, d, Side::Ante, 0, 1);
  EXPECT_FALSE(find_error(B, c).has_value());
  EXPECT_TRUE(multiset_equal(c->sequent(), p->sequent()));
  EXPECT_LE(height(c), height(d));
}
