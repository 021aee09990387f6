#include <gtest/gtest.h>

#include "cutr/errors.hpp"
#include "cutr/parse.hpp"
#include "cutr/proof_io.hpp"
#include "cutr/restrict.hpp"
#include "cutr/search.hpp"

using namespace cutr;

namespace {

LoadedProof golden(const std::string& name) { return read_proof_file(std::string(GOLDEN_DIR) + "/" + name); }

Formula F(const char* s) { return parse_formula(s); }
Sequent S(const char* s) { return parse_sequent(s); }

std::set<Formula> cut_formulas(const Proof& p) {
  std::set<Formula> out;
  for (const ProofNode* n : preorder(p))
    if (n->rule() == RuleId::Cut) out.insert(cut_formula(n->inst));
  return out;
}

/// The oracle every engine output must satisfy.
void expect_clean(CalculusId c, const Proof& in, const Proof& out) {
  ASSERT_FALSE(find_error(c, out).has_value()) << find_error(c, out)->str();
  EXPECT_TRUE(multiset_equal(in->sequent(), out->sequent()));
  EXPECT_TRUE(is_locally_analytic(out));
  EXPECT_TRUE(is_globally_analytic(out));
}

}  // namespace

TEST(Restrict, GoldensCheck) {
  for (const char* g : {"topcase.prf", "botcase.prf", "atomic.prf", "and.prf", "imp2.prf", "stacked.prf",
                        "box_simple.prf"}) {
    const auto lp = golden(g);
    EXPECT_FALSE(find_error(lp.calculus, lp.proof).has_value()) << g << ": " << find_error(lp.calculus, lp.proof)->str();
    EXPECT_FALSE(is_locally_analytic(lp.proof)) << g;
  }
}

TEST(Restrict, TopCaseCollapsesToInit) {
  const auto lp = golden("topcase.prf");
  const auto [out, rep] = restrict_bottom_cut(lp.calculus, lp.proof);
  expect_clean(lp.calculus, lp.proof, out);
  EXPECT_EQ(out->rule(), RuleId::Init);
  EXPECT_EQ(print_sequent(out->sequent()), "p |- p");
  EXPECT_EQ(rep.cuts_after, 0u);
  EXPECT_EQ(rep.criticals_delta2, 1u);
}

TEST(Restrict, BotCase) {
  const auto lp = golden("botcase.prf");
  const auto [out, rep] = restrict_bottom_cut(lp.calculus, lp.proof);
  expect_clean(lp.calculus, lp.proof, out);
  EXPECT_EQ(rep.cuts_after, 0u);
}

TEST(Restrict, AtomicCaseReplacesByLeastAtom) {
  const auto lp = golden("atomic.prf");
  const auto [out, rep] = restrict_bottom_cut(lp.calculus, lp.proof);
  expect_clean(lp.calculus, lp.proof, out);
  EXPECT_EQ(cut_formulas(out), std::set<Formula>{F("p")});
}

TEST(Restrict, AtomicCaseFallsBackToConstant) {
  // T |- T with a cut on q: no atom in the endsequent, T occurs.
  const auto lp = read_proof_text(
      "calculus: biint\n"
      "T |- T  [cut]\n"
      "  T |- q, T  [top_R principal=s1]\n"
      "  T, q |- T  [top_R principal=s0]\n");
  const auto [out, rep] = restrict_bottom_cut(lp.calculus, lp.proof);
  expect_clean(lp.calculus, lp.proof, out);
  EXPECT_EQ(cut_formulas(out), std::set<Formula>{F("T")});
}

TEST(Restrict, AndCaseCutsOnConjuncts) {
  const auto lp = golden("and.prf");
  const auto [out, rep] = restrict_bottom_cut(lp.calculus, lp.proof);
  expect_clean(lp.calculus, lp.proof, out);
  for (const auto& f : cut_formulas(out)) EXPECT_TRUE(f == F("p") || f == F("q")) << print_formula(f);
}

TEST(Restrict, ImpCaseWithTwoCriticals) {
  const auto lp = golden("imp2.prf");
  const auto [out, rep] = restrict_bottom_cut(lp.calculus, lp.proof);
  expect_clean(lp.calculus, lp.proof, out);
  EXPECT_EQ(rep.criticals_delta1, 2u);
  EXPECT_EQ(rep.criticals_delta2, 1u);
  EXPECT_EQ(rep.tuples_expanded, 1u);  // |{p}| * |{q}|
}

TEST(Restrict, CoimpCaseByDuality) {
  const auto lp = golden("imp2.prf");
  const Proof dual = dualize_proof(lp.proof);
  ASSERT_EQ(cut_formula(dual->inst), F("p -< p"));
  const auto [out, rep] = restrict_bottom_cut(CalculusId::BiInt, dual);
  expect_clean(CalculusId::BiInt, dual, out);
  EXPECT_EQ(rep.tuples_expanded, 1u);
}

TEST(Restrict, StackedCutsNeedTwoInvocations) {
  const auto lp = golden("stacked.prf");
  const auto [out, rep] = restrict_all(lp.calculus, lp.proof);
  expect_clean(lp.calculus, lp.proof, out);
  EXPECT_GE(rep.recursive_invocations, 2u);
  EXPECT_EQ(rep.max_depth, 1u);
}

TEST(Restrict, RestrictAllFixesAnalyticInput) {
  const auto lp = golden("topcase.prf");
  const Proof init = lp.proof->children[1]->children[0];
  const auto [out, rep] = restrict_all(lp.calculus, init);
  EXPECT_TRUE(same_proof(out, init));
  EXPECT_EQ(rep.recursive_invocations, 0u);
}

TEST(Restrict, BoxSimpleCase) {
  const auto lp = golden("box_simple.prf");
  const auto [out, rep] = restrict_bottom_cut(lp.calculus, lp.proof);
  expect_clean(lp.calculus, lp.proof, out);
  const auto cuts = cut_formulas(out);
  EXPECT_TRUE(cuts.count(F("[]q"))) << write_proof_text(lp.calculus, out);
  for (const auto& f : cuts) EXPECT_TRUE(f == F("[]q") || f == F("q | s")) << print_formula(f);
  EXPECT_EQ(rep.criticals_delta1, 1u);
  EXPECT_EQ(rep.criticals_delta2, 1u);
}

TEST(Restrict, PreconditionsAreChecked) {
  const auto lp = golden("topcase.prf");
  EXPECT_THROW(restrict_bottom_cut(lp.calculus, lp.proof->children[1]), PreconditionError);
  const auto st = golden("stacked.prf");
  EXPECT_THROW(restrict_bottom_cut(st.calculus, st.proof), PreconditionError);
}

TEST(Tameness, Examples) {
  Trace t;
  t.criticals.push_back({1, RuleId::ImpR, {F("p")}, {}, 1});
  EXPECT_NO_THROW(tameness_assert(t, S("p |- q"), F("a -> b")));
  t.criticals[0].sigma = {F("a")};
  EXPECT_NO_THROW(tameness_assert(t, S("p |- q"), F("a -> b")));
  t.criticals[0].sigma = {F("a -> b")};
  EXPECT_THROW(tameness_assert(t, S("p |- q"), F("a -> b")), InternalError);
}

TEST(PrincipalReduce, Conjunction) {
  const auto lp = golden("and.prf");
  const Proof left = lp.proof->children[0];
  const Proof right = read_proof_text(
                          "calculus: biint\n"
                          "p, q, p & q |- p  [and_L principal=a2]\n"
                          "  p, q, p, q |- p  [init principal=a0,s0]\n")
                          .proof;
  const Proof out = principal_reduce(CalculusId::BiInt, left, right, F("p & q"));
  EXPECT_FALSE(find_error(CalculusId::BiInt, out).has_value());
  EXPECT_TRUE(multiset_equal(out->sequent(), S("p, q |- p")));
  for (const auto& f : cut_formulas(out)) EXPECT_TRUE(f == F("p") || f == F("q"));
}

TEST(PrincipalReduce, ImplicationSplicesBothCopies) {
  // imp_R against imp_L whose premises keep a copy of the principal formula.
  const auto lp = read_proof_text(
      "calculus: biint\n"
      "p |- q -> q, p  [imp_R principal=s0]\n"
      "  p, q |- q  [init principal=a1,s0]\n");
  const auto rp = read_proof_text(
      "calculus: biint\n"
      "p, q -> q |- p  [imp_L principal=a1]\n"
      "  p, q -> q |- q, p  [w_R principal=s0]\n"
      "    p, q -> q |- p  [init principal=a0,s0]\n"
      "  p, q -> q, q |- p  [init principal=a0,s0]\n");
  ASSERT_FALSE(find_error(CalculusId::BiInt, rp.proof).has_value()) << find_error(CalculusId::BiInt, rp.proof)->str();
  const Proof out = principal_reduce(CalculusId::BiInt, lp.proof, rp.proof, F("q -> q"));
  EXPECT_FALSE(find_error(CalculusId::BiInt, out).has_value());
  EXPECT_TRUE(multiset_equal(out->sequent(), S("p |- p")));
  for (const auto& f : cut_formulas(out)) EXPECT_EQ(f, F("q"));
}

TEST(PrincipalReduce, CoimplicationByDuality) {
  // coimp_R against coimp_L: A ⇒ B, A-<B on the right.
  const auto lp = read_proof_text(
      "calculus: biint\n"
      "q |- q -< p, q  [coimp_R principal=s0]\n"
      "  q |- q, q -< p, q  [init principal=a0,s0]\n"
      "  q, p |- q -< p, q  [init principal=a0,s1]\n");
  ASSERT_FALSE(find_error(CalculusId::BiInt, lp.proof).has_value()) << find_error(CalculusId::BiInt, lp.proof)->str();
  const auto rp = read_proof_text(
      "calculus: biint\n"
      "q, q -< p |- q  [coimp_L principal=a1]\n"
      "  q |- p, q  [init principal=a0,s1]\n");
  ASSERT_FALSE(find_error(CalculusId::BiInt, rp.proof).has_value()) << find_error(CalculusId::BiInt, rp.proof)->str();
  const Proof out = principal_reduce(CalculusId::BiInt, lp.proof, rp.proof, F("q -< p"));
  EXPECT_FALSE(find_error(CalculusId::BiInt, out).has_value());
  EXPECT_TRUE(multiset_equal(out->sequent(), S("q |- q")));
  for (const auto& f : cut_formulas(out)) EXPECT_TRUE(f == F("q") || f == F("p")) << print_formula(f);
}

TEST(PrincipalReduce, BoxNeedsOneCut) {
  const auto lp = golden("box_simple.prf");
  const Proof five = lp.proof->children[0]->children[0];
  const Proof t = lp.proof->children[1];
  const Proof out = principal_reduce(CalculusId::S5, five, t, F("[](q | s)"));
  EXPECT_FALSE(find_error(CalculusId::S5, out).has_value());
  EXPECT_EQ(cut_formulas(out), std::set<Formula>{F("q | s")});
}

TEST(PrincipalReduce, RejectsNonPrincipal) {
  const auto lp = golden("and.prf");
  EXPECT_THROW(principal_reduce(CalculusId::BiInt, lp.proof->children[1], lp.proof->children[0], F("p & q")),
               PreconditionError);
}

class CorpusProperty : public ::testing::TestWithParam<CalculusId> {};

TEST_P(CorpusProperty, RestrictAllOutputsAreClean) {
  const CalculusId c = GetParam();
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    for (const auto& it : generate_corpus(c, seed, 25)) {
      SCOPED_TRACE(it.name);
      const auto [out, rep] = restrict_all(c, it.proof);
      expect_clean(c, it.proof, out);
      EXPECT_EQ(rep.cuts_before, cut_count(it.proof));
      EXPECT_EQ(rep.cuts_after, cut_count(out));
      EXPECT_EQ(rep.max_cut_size_after, max_cut_size(out));
      EXPECT_GE(rep.recursive_invocations, 1u);
      // Analytic input is a fixed point.
      const auto [again, rep2] = restrict_all(c, out);
      EXPECT_TRUE(same_proof(again, out));
      EXPECT_EQ(rep2.recursive_invocations, 0u);
    }
  }
}

TEST_P(CorpusProperty, BottomCutDepthBoundedBySize) {
  const CalculusId c = GetParam();
  for (const auto& it : generate_corpus(c, 4, 25)) {
    for (const ProofNode* n : preorder(it.proof)) {
      if (n->rule() != RuleId::Cut || is_analytic_cut(n->inst)) continue;
      if (!is_locally_analytic(n->children[0]) || !is_locally_analytic(n->children[1])) continue;
      const Proof sub = std::make_shared<const ProofNode>(*n);
      const auto [out, rep] = restrict_bottom_cut(c, sub);
      EXPECT_LE(rep.max_depth, cut_formula(n->inst).size()) << it.name;
      expect_clean(c, sub, out);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Calculi, CorpusProperty, ::testing::Values(CalculusId::BiInt, CalculusId::S5),
                         [](const auto& info) { return std::string(to_string(info.param)); });
