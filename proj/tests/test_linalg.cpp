#include <gtest/gtest.h>

#include <random>

#include "fihl/linalg.hpp"

using namespace fihl;

namespace {

SparseMatrix random_matrix(std::mt19937& gen, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> entry(-2, 2);
  SparseMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.add(r, c, entry(gen));
  return m;
}

// Random matrix whose rows repeat, so the rank is at most `distinct`.
SparseMatrix repeated_rows(std::mt19937& gen, std::size_t rows, std::size_t cols, std::size_t distinct) {
  const SparseMatrix base = random_matrix(gen, distinct, cols);
  SparseMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.add(r, c, base.at(r % distinct, c));
  return m;
}

std::vector<Rational> times(const SparseMatrix& m, const std::vector<Rational>& x) { return m.apply(x); }

bool is_zero(const std::vector<Rational>& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace

TEST(Linalg, RankExamples) {
  EXPECT_EQ(rank_exact(SparseMatrix(3, 4)), 0u);
  EXPECT_EQ(rank_exact(SparseMatrix::identity(5)), 5u);
  SparseMatrix tr(2, 1);
  tr.add(0, 0, 1);
  tr.add(1, 0, 1);
  EXPECT_EQ(rank_exact(tr), 1u);
  EXPECT_EQ(rank(tr, RankMode::Modular), 1u);
  EXPECT_EQ(rank_exact(SparseMatrix(0, 0)), 0u);
}

TEST(Linalg, EntriesStayCanonical) {
  SparseMatrix m(2, 2);
  m.add(0, 0, Rational(1, 2));
  m.add(0, 0, Rational(-1, 2));
  EXPECT_EQ(m.nonzeros(), 0u);
  m.add(1, 1, Rational(2, 4));
  EXPECT_EQ(m.at(1, 1).get_den(), 2);
  EXPECT_THROW(m.add(2, 0, 1), std::out_of_range);
}

TEST(Linalg, RationalEntries) {
  SparseMatrix m(2, 2);
  m.add(0, 0, Rational(1, 3));
  m.add(0, 1, Rational(2, 3));
  m.add(1, 0, Rational(1, 2));
  m.add(1, 1, 1);
  EXPECT_EQ(rank_exact(m), 1u);
  EXPECT_EQ(rank(m, RankMode::Modular), 1u);
}

TEST(Linalg, KernelExamples) {
  SparseMatrix row(1, 2);
  row.add(0, 0, 1);
  row.add(0, 1, 1);
  auto k = kernel_basis(row);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0][0], -k[0][1]);
  EXPECT_NE(k[0][0], 0);
  EXPECT_TRUE(kernel_basis(SparseMatrix::identity(3)).empty());
}

TEST(Linalg, ColspaceOfIdentity) {
  auto cb = colspace_basis(SparseMatrix::identity(4));
  EXPECT_EQ(cb.pivot_columns, (std::vector<std::size_t>{0, 1, 2, 3}));
  ASSERT_EQ(cb.basis.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(cb.basis[i][j], i == j ? 1 : 0);
}

TEST(Linalg, SolveExamples) {
  SparseMatrix col(2, 1);
  col.add(0, 0, 1);
  col.add(1, 0, 1);
  auto x = solve_in_colspace(col, {2, 2});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], 2);
  EXPECT_FALSE(solve_in_colspace(col, {1, 0}).has_value());
  EXPECT_THROW(solve_in_colspace(col, {1}), std::invalid_argument);
}

TEST(Linalg, RankNullityAndSolveRoundTrip) {
  std::mt19937 gen(20240611);
  std::uniform_int_distribution<std::size_t> dim(1, 40);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = dim(gen), c = dim(gen);
    SparseMatrix m = trial % 3 == 0 ? repeated_rows(gen, r, c, 1 + r / 3) : random_matrix(gen, r, c);
    const std::size_t rk = rank_exact(m);
    const auto ker = kernel_basis(m);
    ASSERT_EQ(rk + ker.size(), c);
    for (const auto& v : ker) ASSERT_TRUE(is_zero(times(m, v)));
    ASSERT_EQ(colspace_basis(m).basis.size(), rk);

    std::uniform_int_distribution<int> coeff(-3, 3);
    std::vector<Rational> x(c);
    for (auto& xi : x) {
      xi = Rational(coeff(gen), 1 + std::abs(coeff(gen)));
      xi.canonicalize();
    }
    const auto y = times(m, x);
    auto sol = solve_in_colspace(m, y);
    ASSERT_TRUE(sol.has_value());
    ASSERT_EQ(times(m, *sol), y);
  }
}

TEST(Linalg, ModularAgreesWithExactSmall) {
  std::mt19937 gen(7);
  std::uniform_int_distribution<std::size_t> dim(1, 120);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = dim(gen), c = dim(gen);
    SparseMatrix m = trial % 2 ? repeated_rows(gen, r, c, 1 + r / 4) : random_matrix(gen, r, c);
    const ModularRank mr = rank_modular(m);
    ASSERT_TRUE(mr.certified);
    ASSERT_EQ(mr.rank, rank_exact(m)) << r << "x" << c;
    for (std::uint64_t p : mr.primes) ASSERT_GT(p, 1ULL << 30);
  }
}

TEST(Linalg, ModularAgreesWithExactAt500) {
  std::mt19937 gen(11);
  const SparseMatrix full = random_matrix(gen, 500, 500);
  EXPECT_EQ(rank_modular(full).rank, rank_exact(full));
  const SparseMatrix deficient = repeated_rows(gen, 500, 500, 350);
  const std::size_t exact = rank_exact(deficient);
  EXPECT_LE(exact, 350u);
  EXPECT_EQ(rank(deficient, RankMode::Modular), exact);
}

TEST(Linalg, PrimeStreamIsDeterministic) {
  EXPECT_EQ(stream_prime(0), stream_prime(0));
  EXPECT_NE(stream_prime(0), stream_prime(1));
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_TRUE(detail::is_prime_u64(stream_prime(k)));
    EXPECT_GT(stream_prime(k), 1ULL << 30);
  }
}

TEST(Linalg, DefaultModeSwitchesOnWidth) {
  EXPECT_EQ(default_rank_mode(kModularColumnThreshold), RankMode::Exact);
  EXPECT_EQ(default_rank_mode(kModularColumnThreshold + 1), RankMode::Modular);
}
