#include <gtest/gtest.h>

#include "cutr/errors.hpp"
#include "cutr/parse.hpp"
#include "cutr/proof.hpp"

using namespace cutr;

namespace {

constexpr auto B = CalculusId::BiInt;
constexpr auto S = CalculusId::S5;

Formula F(const char* s) { return parse_formula(s); }
Sequent Q(const char* s) { return parse_sequent(s); }

Proof init(CalculusId c, const char* s, const char* atom) {
  Sequent q = Q(s);
  return make_node(c, RuleId::Init, q, {find_occ(q, Side::Ante, F(atom)), find_occ(q, Side::Succ, F(atom))}, {});
}

}  // namespace

TEST(Check, SingleInit) {
  auto audit = check_proof(B, init(B, "p |- p", "p"));
  EXPECT_TRUE(audit.cuts.empty());
  EXPECT_EQ(audit.height, 1u);
}

TEST(Check, SideConditionAtNode) {
  // imp_R whose premise keeps succedent context, built unchecked by hand.
  Proof leaf = init(B, "p |- q, p", "p");
  RuleInstance bad{RuleId::ImpR, Q("|- p -> q, p"), {leaf->sequent()}, {{Side::Succ, 0}}, {}};
  bad.flow.push_back(PremiseFlow{{}, {{}, {1}}});
  auto node = std::make_shared<const ProofNode>(ProofNode{bad, {leaf}});
  auto d = find_error(B, node);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->node, 0);
  EXPECT_EQ(d->condition, "side_condition");
}

TEST(Check, NonInitialLeaf) {
  RuleInstance bad{RuleId::AndL, Q("p & q |- p"), {}, {{Side::Ante, 0}}, {}};
  auto node = std::make_shared<const ProofNode>(ProofNode{bad, {}});
  EXPECT_EQ(find_error(B, node)->condition, "non_initial_leaf");
}

TEST(Macros, Weaken) {
  Proof w = weaken(B, init(B, "p |- p", "p"), {F("q")}, {});
  EXPECT_EQ(w->rule(), RuleId::WeakL);
  EXPECT_TRUE(multiset_equal(w->sequent(), Q("q, p |- p")));
  EXPECT_FALSE(find_error(B, w));
}

TEST(Macros, CutStar) {
  // p, a, b |- a & b, q  and  r, a & b |- a, s
  const Formula a = F("a & b");
  Proof left = weaken(B, make_node(B, RuleId::AndR, Q("p, a, b |- a & b"), {{Side::Succ, 0}},
                                   {init(B, "p, a, b |- a", "a"), init(B, "p, a, b |- b", "b")}),
                      {}, {F("q")});
  Proof right = make_node(B, RuleId::AndL, Q("r, a & b |- a, s"), {{Side::Ante, 1}}, {init(B, "r, a, b |- a, s", "a")});
  Proof cs = cut_star(B, left, right, a);
  EXPECT_EQ(cs->rule(), RuleId::Cut);
  EXPECT_FALSE(find_error(B, cs));
  EXPECT_EQ(cut_count(cs), 1u);
  EXPECT_TRUE(multiset_equal(cs->sequent(), Q("p, a, b, r |- q, a, s")));
  EXPECT_THROW(cut_star(B, right, left, a), PreconditionError);
}

TEST(Macros, Fit) {
  Proof p = init(B, "p, p, q |- p", "p");
  Proof f = fit(B, p, Q("p, q, r |- p, s"));
  EXPECT_TRUE(multiset_equal(f->sequent(), Q("p, q, r |- p, s")));
  EXPECT_FALSE(find_error(B, f));
  EXPECT_THROW(fit(B, p, Q("p |- p")), PreconditionError);
}

TEST(ExpandAxiom, Shapes) {
  Proof atom = expand_axiom(B, {}, F("p"), {});
  EXPECT_EQ(atom->rule(), RuleId::Init);

  Proof imp = expand_axiom(B, {}, F("p -> q"), {});
  EXPECT_EQ(imp->rule(), RuleId::ImpR);
  EXPECT_EQ(imp->children[0]->rule(), RuleId::ImpL);
  auto audit = check_proof(B, imp);
  EXPECT_TRUE(audit.cuts.empty());
  EXPECT_TRUE(multiset_equal(imp->sequent(), Q("p -> q |- p -> q")));

  Proof box = expand_axiom(S, {}, F("[]p"), {});
  EXPECT_EQ(box->rule(), RuleId::Five);
  EXPECT_EQ(box->children[0]->rule(), RuleId::T);
  EXPECT_EQ(box->children[0]->children[0]->rule(), RuleId::Init);
  EXPECT_FALSE(find_error(S, box));

  Proof ctx = expand_axiom(S, {F("r"), F("[]s")}, F("[](p & ~q)"), {F("t")});
  EXPECT_FALSE(find_error(S, ctx));
  EXPECT_TRUE(multiset_equal(ctx->sequent(), Q("r, []s, [](p & ~q) |- [](p & ~q), t")));

  EXPECT_THROW(expand_axiom(B, {}, F("[]p"), {}), SignatureError);
}

TEST(Dualize, Proofs) {
  Proof i = init(B, "p |- p", "p");
  EXPECT_TRUE(same_proof(dualize_proof(i), i));

  Proof imp = expand_axiom(B, {F("r")}, F("p -> (q -< r)"), {});
  Proof d = dualize_proof(imp);
  EXPECT_EQ(d->rule(), RuleId::CoimpL);
  EXPECT_FALSE(find_error(B, d));
  EXPECT_EQ(d->sequent(), dualize(imp->sequent()));
  EXPECT_TRUE(same_proof(dualize_proof(d), imp));
  EXPECT_THROW(dualize_proof(expand_axiom(S, {}, F("[]p"), {})), SignatureError);
}

TEST(Edit, ReplaceSubproof) {
  Proof imp = expand_axiom(B, {}, F("p -> q"), {});
  // node 2 is the left imp_L premise p -> q, p |- p, q
  auto nodes = preorder(imp);
  ASSERT_GE(nodes.size(), 3u);
  Proof sub = fit(B, init(B, "p |- p", "p"), nodes[2]->sequent());
  Proof r = replace_subproof(B, imp, 2, sub);
  EXPECT_FALSE(find_error(B, r));
  EXPECT_EQ(r->sequent(), imp->sequent());
}
