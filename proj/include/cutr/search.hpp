#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cutr/proof.hpp"

namespace cutr {

enum class CutPolicy : unsigned char { None, Analytic, Pool };

std::string_view to_string(CutPolicy p);
std::optional<CutPolicy> cut_policy_from_string(std::string_view s);

struct SearchPolicy {
  /// Bound on logical, cut and axiom inferences along a branch. The
  /// weakenings in front of Five and the contraction in front of T are free.
  std::size_t depth_bound = 6;
  CutPolicy cut = CutPolicy::None;
  Formulas pool;
};

struct SearchResult {
  Proof proof;  ///< null when the bounded space is exhausted
  std::size_t explored = 0;

  bool found() const { return proof != nullptr; }
};

/// Backward search. Invertible rules are applied eagerly and never undone;
/// imp_L, imp_R, coimp_L, coimp_R, T and Five are backtracked over. With
/// CutPolicy::Analytic every cut formula is a subformula of the sequent it
/// is cut under; with Pool only pool formulas are cut on.
/// Throws SignatureError if the goal or pool is outside the calculus.
SearchResult prove_bounded(CalculusId c, const Sequent& goal, const SearchPolicy& pol);

/// S5 sequent with no cut-free proof in this calculus but an analytic-cut one.
Sequent s5_witness();

struct CorpusItem {
  std::string name;
  Sequent goal;
  Proof proof;
};

/// Seeded proofs with at least one non-analytic cut each, height <= 12.
/// Same (c, seed, count) gives the same proofs.
std::vector<CorpusItem> generate_corpus(CalculusId c, std::uint64_t seed, std::size_t count);

/// FNV-1a, used for manifest checksums.
std::uint64_t fnv1a(const std::string& s);

/// One line per item: name, height, cut count and checksum of its text form.
std::string corpus_manifest(CalculusId c, std::uint64_t seed, const std::vector<CorpusItem>& items);

}  // namespace cutr
