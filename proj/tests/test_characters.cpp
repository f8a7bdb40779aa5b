#include <gtest/gtest.h>

#include "fihl/characters.hpp"
#include "fihl/tableau.hpp"
#include "fihl/transfer.hpp"

using namespace fihl;

namespace {

Partition ones(int n) { return Partition(std::vector<int>(static_cast<std::size_t>(n), 1)); }

// Number of injections f: a -> b with g f h^{-1} = f, by enumeration.
long fixed_injections(const Permutation& g, const Permutation& h, int a, int b) {
  long count = 0;
  std::vector<int> f;
  std::vector<char> used(static_cast<std::size_t>(b), 0);
  std::function<void()> rec = [&] {
    if (static_cast<int>(f.size()) == a) {
      bool fixed = true;
      for (int i = 0; i < a && fixed; ++i)
        fixed = g[static_cast<std::size_t>(f[static_cast<std::size_t>(i)])] ==
                f[static_cast<std::size_t>(h[static_cast<std::size_t>(i)])];
      count += fixed;
      return;
    }
    for (int t = 0; t < b; ++t) {
      if (used[static_cast<std::size_t>(t)]) continue;
      used[static_cast<std::size_t>(t)] = 1;
      f.push_back(t);
      rec();
      f.pop_back();
      used[static_cast<std::size_t>(t)] = 0;
    }
  };
  rec();
  return count;
}

}  // namespace

TEST(Characters, ClassData) {
  auto c3 = class_data(3);
  ASSERT_EQ(c3.size(), 3u);
  EXPECT_EQ(c3[0].cycle_type, Partition{3});
  EXPECT_EQ(c3[0].size, 2);
  EXPECT_EQ(c3[1].size, 3);
  EXPECT_EQ(c3[2].size, 1);
  auto c0 = class_data(0);
  ASSERT_EQ(c0.size(), 1u);
  EXPECT_EQ(c0[0].size, 1);
  for (int n = 0; n <= 10; ++n) {
    Integer s = 0;
    for (const auto& c : class_data(n)) s += c.size;
    EXPECT_EQ(s, factorial(n));
  }
}

TEST(Characters, TrivialAndSign) {
  for (int n = 1; n <= 7; ++n)
    for (const auto& mu : partitions_of(n)) {
      EXPECT_EQ(mn_char(Partition{n}, mu), 1);
      int even = 0;
      for (int len : mu.parts()) even += len % 2 == 0;
      EXPECT_EQ(mn_char(ones(n), mu), even % 2 ? -1 : 1);
    }
  EXPECT_THROW(mn_char(Partition{2}, Partition{3}), std::invalid_argument);
}

TEST(Characters, S3TableFromOrthogonalityCompletion) {
  // Classes (3), (2,1), (1,1,1) with sizes 2, 3, 1.  The remaining row is
  // (x, y, 2); orthogonality against the trivial and sign rows gives
  //   2x + 3y = -2 and 2x - 3y = -2, solved by Cramer's rule.
  const Rational sizes[3] = {2, 3, 1};
  const Rational rows[2][3] = {{1, 1, 1}, {1, -1, 1}};
  Rational m[2][2], rhs[2];
  for (int r = 0; r < 2; ++r) {
    m[r][0] = sizes[0] * rows[r][0];
    m[r][1] = sizes[1] * rows[r][1];
    rhs[r] = -sizes[2] * rows[r][2] * 2;
  }
  const Rational det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const Rational x = (rhs[0] * m[1][1] - m[0][1] * rhs[1]) / det;
  const Rational y = (m[0][0] * rhs[1] - rhs[0] * m[1][0]) / det;
  EXPECT_EQ(x, -1);
  EXPECT_EQ(mn_char(Partition{2, 1}, Partition{3}), x);
  EXPECT_EQ(mn_char(Partition{2, 1}, Partition{2, 1}), y);
  EXPECT_EQ(mn_char(Partition{2, 1}, Partition{1, 1, 1}), 2);
}

TEST(Characters, RowOrthogonality) {
  for (int n = 0; n <= 8; ++n) {
    const auto ps = partitions_of(n);
    for (const auto& l : ps)
      for (const auto& m : ps)
        ASSERT_EQ(inner_product(ClassFunction::irreducible(l), ClassFunction::irreducible(m)), l == m ? 1 : 0)
            << l << " " << m;
  }
}

TEST(Characters, ColumnOrthogonality) {
  for (int n = 0; n <= 7; ++n) {
    const auto cls = class_data(n);
    const auto ps = partitions_of(n);
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (std::size_t j = 0; j < cls.size(); ++j) {
        Integer s = 0;
        for (const auto& l : ps) s += mn_char(l, cls[i].cycle_type) * mn_char(l, cls[j].cycle_type);
        ASSERT_EQ(s, i == j ? factorial(n) / cls[i].size : Integer(0));
      }
  }
}

TEST(Characters, DegreeIsHookLength) {
  for (int n = 0; n <= 9; ++n)
    for (const auto& l : partitions_of(n)) EXPECT_EQ(mn_char(l, ones(n)), static_cast<long>(dim_irrep(l)));
}

TEST(Characters, DecomposeExamples) {
  ClassFunction reg(3, 0);
  reg.set(Partition{1, 1, 1}, Partition{}, 6);
  auto t = decompose(reg);
  EXPECT_EQ(t.at({3}, {}), 1);
  EXPECT_EQ(t.at({2, 1}, {}), 2);
  EXPECT_EQ(t.at({1, 1, 1}, {}), 1);

  ClassFunction triv(4, 0);
  for (std::size_t k = 0; k < triv.num_classes(); ++k) triv[k] = 1;
  DecompositionTable expect;
  expect.add({4}, {}, 1);
  EXPECT_EQ(decompose(triv), expect);

  DecompositionTable h12;
  h12.add({2}, {1}, 1);
  h12.add({1, 1}, {1}, 1);
  EXPECT_EQ(decompose(perm_char_hom(1, 2)), h12);

  ClassFunction bad(2, 0);
  bad.set(Partition{1, 1}, Partition{}, 1);
  EXPECT_THROW(decompose(bad), InternalError);
  EXPECT_EQ(character_of(h12, 2, 1), perm_char_hom(1, 2));
}

TEST(Characters, PermCharByFixedPoints) {
  auto chi = perm_char_hom(1, 2);
  EXPECT_EQ(chi.value({1, 1}, {1}), 2);
  EXPECT_EQ(chi.value({2}, {1}), 0);
  for (int b = 0; b <= 5; ++b) EXPECT_EQ(perm_char_hom(b, b).value(ones(b), ones(b)), factorial(b));
  EXPECT_EQ(perm_char_hom(3, 2), ClassFunction(2, 3));
  EXPECT_THROW(perm_char_hom(1, 8), std::invalid_argument);
  for (int b = 1; b <= 5; ++b)
    for (int a = 0; a <= b; ++a) {
      auto chi = perm_char_hom(a, b);
      for (std::size_t k = 0; k < chi.num_classes(); ++k) {
        auto [g, h] = chi.representative(k);
        ASSERT_EQ(chi[k], fixed_injections(g, h, a, b));
      }
    }
}

TEST(Characters, PermCharIsMultiplicityFreeOverStripPairs) {
  for (int b = 1; b <= 6; ++b)
    for (int a = 1; a <= b; ++a) {
      DecompositionTable expect;
      for (const auto& l : partitions_of(b))
        for (const auto& nu : partitions_of(a))
          if (leq(hs(l), nu) && leq(nu, l)) expect.add(l, nu, 1);
      EXPECT_EQ(decompose(perm_char_hom(a, b)), expect) << a << " " << b;
    }
}

TEST(Characters, DimensionIdentity) {
  for (int b = 1; b <= 7; ++b)
    for (int a = 1; a <= b; ++a) {
      Integer s = 0;
      for (const auto& l : partitions_of(b))
        for (const auto& nu : partitions_of(a))
          if (leq(hs(l), nu) && leq(nu, l)) s += Integer(static_cast<unsigned long>(dim_irrep(l) * dim_irrep(nu)));
      EXPECT_EQ(s, factorial(b) / factorial(b - a));
    }
}

TEST(Characters, MonomialActionsSatisfyRelations) {
  for (int b = 1; b <= 5; ++b)
    for (int a = 0; a <= b; ++a) {
      auto [basis, act] = hom_basis_action(a, b);
      EXPECT_TRUE(act.relations_hold());
      EXPECT_EQ(act.character(), perm_char_hom(a, b));
      if (a >= 1) {
        EXPECT_TRUE(tr_matrix(a, b).source_action.relations_hold());
      }
    }
}

TEST(Characters, ImageCharBoundaryCases) {
  auto [basis, act] = hom_basis_action(2, 3);
  const std::size_t n = act.size();
  EXPECT_EQ(image_char(SparseMatrix(n, n), act, act), ClassFunction(3, 2));
  EXPECT_EQ(image_char(SparseMatrix::identity(n), act, act), act.character());
  EXPECT_EQ(image_char(SparseMatrix::identity(n), act, act, RankMode::Modular), act.character());
}

TEST(Characters, ImageCharStrategiesAgreeAndSplitSource) {
  for (int b = 1; b <= 4; ++b)
    for (int a = 1; a <= 4; ++a) {
      const TransferMatrix tr = tr_matrix(a, b);
      const ClassFunction reduced = image_char(tr.matrix, tr.source_action, tr.target_action);
      EXPECT_EQ(reduced, image_char(tr.matrix, tr.source_action, tr.target_action, RankMode::Exact,
                                    ImageStrategy::Solve));
      EXPECT_EQ(reduced, image_char(tr.matrix, tr.source_action, tr.target_action, RankMode::Modular));
      EXPECT_EQ(tr.source_action.character(), kernel_char(tr.matrix, tr.source_action) + reduced) << a << " " << b;
    }
}

TEST(Characters, ImageCharRejectsNonEquivariantMaps) {
  auto [basis, act] = hom_basis_action(1, 2);
  SparseMatrix d(2, 2);
  d.add(0, 0, 1);
  EXPECT_THROW(image_char(d, act, act), InternalError);
}

TEST(Characters, SchurDimensions) {
  EXPECT_EQ(schur_poly_dim({1}, 5), 5);
  EXPECT_EQ(schur_poly_dim({2}, 2), 3);
  EXPECT_EQ(schur_poly_dim({1, 1, 1}, 2), 0);
  EXPECT_EQ(schur_poly_dim({}, 4), 1);
  // sum over lambda |- n of f^lambda * dim S^lambda(V) = (dim V)^n
  for (int n = 0; n <= 6; ++n)
    for (int v = 0; v <= 4; ++v) {
      Integer s = 0;
      for (const auto& l : partitions_of(n)) s += Integer(static_cast<unsigned long>(dim_irrep(l))) * schur_poly_dim(l, v);
      Integer p = 1;
      for (int k = 0; k < n; ++k) p *= v;
      EXPECT_EQ(s, p);
    }
}
