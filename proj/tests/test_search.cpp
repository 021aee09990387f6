#include <gtest/gtest.h>

#include "cutr/errors.hpp"
#include "cutr/parse.hpp"
#include "cutr/proof_io.hpp"
#include "cutr/restrict.hpp"
#include "cutr/search.hpp"

using namespace cutr;

namespace {

Sequent S(const char* s) { return parse_sequent(s); }

SearchPolicy policy(std::size_t depth, CutPolicy cut = CutPolicy::None, Formulas pool = {}) {
  SearchPolicy p;
  p.depth_bound = depth;
  p.cut = cut;
  p.pool = std::move(pool);
  return p;
}

}  // namespace

TEST(Search, InitAtDepthOne) {
  const auto r = prove_bounded(CalculusId::BiInt, S("p |- p"), policy(1));
  ASSERT_TRUE(r.found());
  EXPECT_EQ(r.proof->rule(), RuleId::Init);
}

TEST(Search, ConsistentEmptyAntecedent) {
  for (std::size_t d : {1u, 4u, 8u}) {
    const auto r = prove_bounded(CalculusId::BiInt, S("|- p"), policy(d));
    EXPECT_FALSE(r.found());
    EXPECT_GT(r.explored, 0u);
  }
}

TEST(Search, ImplicationIdentityAgreesWithExpansion) {
  const auto r = prove_bounded(CalculusId::BiInt, S("p -> q |- p -> q"), policy(5));
  ASSERT_TRUE(r.found());
  EXPECT_FALSE(find_error(CalculusId::BiInt, r.proof).has_value());
  EXPECT_EQ(cut_count(r.proof), 0u);
  const Proof ax = expand_axiom(CalculusId::BiInt, {}, parse_formula("p -> q"), {});
  EXPECT_FALSE(find_error(CalculusId::BiInt, ax).has_value());
  EXPECT_TRUE(multiset_equal(ax->sequent(), r.proof->sequent()));
  EXPECT_EQ(height(r.proof), height(ax));
}

TEST(Search, RespectsSignature) {
  EXPECT_THROW(prove_bounded(CalculusId::BiInt, S("[]p |- p"), policy(3)), SignatureError);
  EXPECT_THROW(prove_bounded(CalculusId::S5, S("p -> q |- p"), policy(3)), SignatureError);
}

TEST(Search, S5WitnessNeedsAnalyticCut) {
  const Sequent w = s5_witness();
  EXPECT_FALSE(prove_bounded(CalculusId::S5, w, policy(8)).found());
  const auto r = prove_bounded(CalculusId::S5, w, policy(8, CutPolicy::Analytic));
  ASSERT_TRUE(r.found());
  EXPECT_FALSE(find_error(CalculusId::S5, r.proof).has_value());
  EXPECT_TRUE(is_locally_analytic(r.proof));
  EXPECT_GE(cut_count(r.proof), 1u);
}

TEST(Search, PoolCutsAreRestricted) {
  const Sequent w = s5_witness();
  const Formulas pool{parse_formula("[]~[]q"), parse_formula("[]~p")};
  const auto r = prove_bounded(CalculusId::S5, w, policy(8, CutPolicy::Pool, pool));
  ASSERT_TRUE(r.found());
  for (const ProofNode* n : preorder(r.proof))
    if (n->rule() == RuleId::Cut) EXPECT_EQ(cut_formula(n->inst), pool[1]);
  const auto [out, rep] = restrict_all(CalculusId::S5, r.proof);
  EXPECT_FALSE(find_error(CalculusId::S5, out).has_value());
  EXPECT_TRUE(is_globally_analytic(out));
  EXPECT_TRUE(multiset_equal(out->sequent(), w));
}

TEST(Corpus, DeterministicAndNonAnalytic) {
  for (CalculusId c : {CalculusId::BiInt, CalculusId::S5}) {
    const auto a = generate_corpus(c, 7, 4);
    const auto b = generate_corpus(c, 7, 4);
    ASSERT_EQ(a.size(), 4u);
    EXPECT_EQ(corpus_manifest(c, 7, a), corpus_manifest(c, 7, b));
    for (const auto& it : a) {
      const auto audit = check_proof(c, it.proof);
      EXPECT_FALSE(audit.nonanalytic_formulas.empty()) << it.name;
      EXPECT_LE(height(it.proof), 12u);
      EXPECT_TRUE(multiset_equal(it.proof->sequent(), it.goal));
    }
  }
}
