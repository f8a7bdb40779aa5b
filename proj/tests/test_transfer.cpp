#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "fihl/transfer.hpp"

using namespace fihl;

namespace {

std::vector<Permutation> all_permutations(int n) {
  std::vector<Permutation> out;
  Permutation p = identity_permutation(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Permutation transposition(int n, int i, int j) {
  Permutation p = identity_permutation(n);
  std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
  return p;
}

std::set<PartitionPair, PairOrder> support(const DecompositionTable& t) {
  std::set<PartitionPair, PairOrder> s;
  for (const auto& [k, m] : t.entries())
    if (m > 0) s.insert(k);
  return s;
}

long falling(int b, int a) {
  long v = 1;
  for (int k = 0; k < a; ++k) v *= b - k;
  return v;
}

}  // namespace

TEST(Transfer, HomBasisShape) {
  EXPECT_EQ(hom_basis(2, 3).injections.size(), 6u);
  EXPECT_EQ(hom_basis(3, 2).injections.size(), 0u);
  EXPECT_EQ(hom_basis(0, 3).injections.size(), 1u);
  for (int b = 0; b <= 6; ++b)
    for (int a = 0; a <= b; ++a) {
      const HomBasis h = hom_basis(a, b);
      ASSERT_EQ(static_cast<long>(h.injections.size()), falling(b, a));
      std::vector<int> iota(static_cast<std::size_t>(a));
      for (int i = 0; i < a; ++i) iota[static_cast<std::size_t>(i)] = i;
      EXPECT_EQ(h.injections[0], iota);
    }
  EXPECT_THROW(hom_basis(1, 11), std::invalid_argument);
}

TEST(Transfer, StabilizerOfCanonicalInclusion) {
  for (int b = 1; b <= 4; ++b)
    for (int a = 0; a <= b; ++a) {
      auto [basis, act] = hom_basis_action(a, b);
      long stab = 0;
      for (const auto& g : all_permutations(b))
        for (const auto& h : all_permutations(a)) stab += act.act({g, h}).image[0] == 0;
      EXPECT_EQ(stab, falling(b - a, b - a) * falling(a, a)) << a << " " << b;
    }
}

TEST(Transfer, SmallMatrices) {
  const TransferMatrix t11 = tr_matrix(1, 1);
  ASSERT_EQ(t11.matrix.rows(), 1u);
  ASSERT_EQ(t11.matrix.cols(), 1u);
  EXPECT_EQ(t11.matrix.at(0, 0), 1);
  const TransferMatrix t12 = tr_matrix(1, 2);
  ASSERT_EQ(t12.matrix.rows(), 2u);
  ASSERT_EQ(t12.matrix.cols(), 1u);
  EXPECT_EQ(t12.matrix.at(0, 0), 1);
  EXPECT_EQ(t12.matrix.at(1, 0), 1);
  EXPECT_TRUE(tr_matrix(0, 3).matrix.is_zero());
}

TEST(Transfer, ColumnsHaveUnitEntriesAndFixedSupport) {
  for (int b = 1; b <= 6; ++b)
    for (int a = 1; a <= b; ++a) {
      const TransferMatrix tr = tr_matrix(a, b);
      ASSERT_EQ(static_cast<long>(tr.matrix.cols()), a * falling(b, a - 1));
      for (std::size_t c = 0; c < tr.matrix.cols(); ++c) {
        ASSERT_EQ(static_cast<int>(tr.matrix.column(c).size()), b - a + 1);
        for (const auto& [r, v] : tr.matrix.column(c)) ASSERT_EQ(v, 1);
      }
    }
}

TEST(Transfer, GeneratorImage) {
  // [iota_{a-1,b}] goes to the sum over z outside a-1 of (a z) applied to [iota_{a,b}].
  for (int b = 1; b <= 6; ++b)
    for (int a = 1; a <= b; ++a) {
      const TransferMatrix tr = tr_matrix(a, b);
      const std::size_t m = tr.source_hom.injections.size();
      const std::size_t col = static_cast<std::size_t>(a - 1) * m;  // (i = a, f = iota), tau_a = id
      std::vector<Rational> expect(tr.matrix.rows());
      for (int z = a - 1; z < b; ++z) {
        const SignedPerm p = tr.target_action.act({transposition(b, a - 1, z), identity_permutation(a)});
        expect[p.image[0]] += p.sign[0];
      }
      for (std::size_t r = 0; r < tr.matrix.rows(); ++r) ASSERT_EQ(tr.matrix.at(r, col), expect[r]) << a << " " << b;
    }
}

TEST(Transfer, CosetRepresentatives) {
  EXPECT_EQ(coset_representative(3, 2), identity_permutation(3));
  EXPECT_EQ(coset_representative(3, 0), (Permutation{2, 1, 0}));
}

TEST(Transfer, CokernelExamples) {
  DecompositionTable h12;
  h12.add({1, 1}, {1}, 1);
  EXPECT_EQ(h0_computed(1, 2), h12);
  EXPECT_EQ(h0_predicted(1, 2), h12);
  EXPECT_TRUE(h0_computed(2, 2).empty());
  DecompositionTable h23;
  h23.add({1, 1, 1}, {1, 1}, 1);
  EXPECT_EQ(h0_computed(2, 3), h23);
  DecompositionTable h24;
  h24.add({2, 2}, {2}, 1);
  h24.add({2, 1, 1}, {1, 1}, 1);
  EXPECT_EQ(h0_predicted(2, 4), h24);
  for (int a = 1; a <= 5; ++a) EXPECT_TRUE(h0_predicted(a, a).empty());
  EXPECT_TRUE(h0_computed(3, 2).empty());
  EXPECT_THROW(h0_predicted(0, 2), std::invalid_argument);
}

TEST(Transfer, ZeroDegreeCokernelIsTrivial) {
  for (int b = 0; b <= 4; ++b) {
    DecompositionTable t;
    t.add(Partition{b}, {}, 1);
    EXPECT_EQ(h0_computed(0, b), t);
  }
}

TEST(Transfer, ComputedMatchesPredictedSmall) {
  for (int b = 1; b <= 5; ++b)
    for (int a = 1; a <= b; ++a) {
      const DecompositionTable c = h0_computed(a, b);
      EXPECT_EQ(c, h0_predicted(a, b)) << a << " " << b;
      EXPECT_EQ(h0_computed(a, b, RankMode::Modular), c);
      EXPECT_TRUE(c.included_in(decompose(perm_char_hom(a, b))));
    }
}

TEST(Transfer, PredictedPairsAreTheMissingCompositionFactors) {
  for (int b = 1; b <= 6; ++b)
    for (int a = 1; a <= b; ++a) {
      const TransferMatrix tr = tr_matrix(a, b);
      std::set<PartitionPair, PairOrder> missing = support(decompose(tr.target_action.character()));
      for (const auto& k : support(decompose(tr.source_action.character()))) missing.erase(k);
      EXPECT_EQ(missing, support(h0_predicted(a, b))) << a << " " << b;
    }
}

TEST(Transfer, DevissageExamples) {
  const DevissageReport r12 = devissage_ses(1, 2);
  EXPECT_EQ(r12.dim_middle, 2u);
  EXPECT_EQ(r12.dim_kernel, 1u);
  EXPECT_EQ(r12.rank_projection, 1u);
  const DevissageReport r23 = devissage_ses(2, 3);
  EXPECT_EQ(r23.dim_kernel, 4u);
  EXPECT_EQ(r23.dim_middle, 6u);
  EXPECT_EQ(r23.dim_quotient, 2u);
  EXPECT_EQ(r23.rank_projection, 2u);
  EXPECT_THROW(devissage_ses(1, 0), std::invalid_argument);
}

TEST(Transfer, DevissageIsExactEquivariantAndNatural) {
  for (int b = 1; b <= 5; ++b)
    for (int a = 1; a <= 5; ++a) {
      const DevissageReport r = devissage_ses(a, b);
      EXPECT_TRUE(r.composite_zero);
      EXPECT_TRUE(r.exact);
      EXPECT_TRUE(r.equivariant);
      EXPECT_TRUE(r.natural);
      EXPECT_TRUE(r.tr_square);
      EXPECT_EQ(static_cast<long>(r.dim_kernel), a * falling(b - 1, a - 1));
      EXPECT_EQ(r.rank_inclusion, r.dim_kernel);
      EXPECT_EQ(r.rank_projection, r.dim_quotient);
      EXPECT_EQ(r.rank_inclusion + r.rank_projection, r.dim_middle);
    }
}
