#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "fihl/theta.hpp"

using namespace fihl;

namespace {

ThetaContext ctx_of(const char* l, const char* n, const char* k) {
  return {Partition::parse(l), Partition::parse(n), Partition::parse(k)};
}

Rational inv(int r) {
  Rational q(1, r < 0 ? -r : r);
  return r < 0 ? Rational(-q) : q;
}

std::vector<ThetaContext> contexts_up_to(int max_b) {
  std::vector<ThetaContext> out;
  for (int b = 1; b <= max_b; ++b)
    for (auto& c : contexts(b)) out.push_back(std::move(c));
  return out;
}

// The boxes of a skew shape, sorted.
std::set<std::pair<int, int>> box_set(const SkewShape& s) {
  auto v = s.boxes();
  return {v.begin(), v.end()};
}

}  // namespace

TEST(Theta, ContextValidation) {
  EXPECT_FALSE(context_error(ctx_of("2,1", "2", "1")));
  EXPECT_TRUE(context_error(ctx_of("2,1", "3", "1")));
  EXPECT_TRUE(context_error(ctx_of("2,1", "2", "0")));
  EXPECT_TRUE(context_error(ctx_of("1,1", "1", "0")));  // lambda_1 = b - a
  EXPECT_THROW(tspec(ctx_of("2,1", "3", "1")), std::invalid_argument);
  for (const auto& c : contexts_up_to(7)) {
    ASSERT_TRUE(c.shape().is_horizontal_strip());
    ASSERT_TRUE(leq(hs(c.lambda), c.kappa) && leq(c.kappa, c.nu) && leq(c.nu, c.lambda));
  }
}

TEST(Theta, SpecialTableau) {
  const ThetaContext c = ctx_of("5,2,1,1", "3,1,1,1", "3,1,1");
  const StandardTableau t = tspec(c);
  EXPECT_EQ(t.position(1), (Box{3, 0}));
  EXPECT_EQ(t.position(2), (Box{1, 1}));
  EXPECT_EQ(t.position(3), (Box{0, 3}));
  EXPECT_EQ(t.position(4), (Box{0, 4}));
  const StandardTableau single = tspec(ctx_of("2", "2", "1"));
  EXPECT_EQ(single.size(), 1);
  for (const auto& ctx : contexts_up_to(7)) {
    const StandardTableau top = tspec(ctx);
    ASSERT_TRUE(top.is_standard());
    const auto all = standard_tableaux(ctx.shape());
    ASSERT_NE(std::find(all.begin(), all.end(), top), all.end());
    ASSERT_TRUE(ctx.kappa.contains(top.position(1).row, top.position(1).col) == false);
    ASSERT_TRUE(ctx.nu.contains(top.position(1).row, top.position(1).col));
  }
}

TEST(Theta, EqualDegreesGiveOne) {
  for (const auto& ctx : contexts_up_to(8))
    if (ctx.gap() == 0) {
      EXPECT_EQ(theta_exact(ctx), 1);
      EXPECT_EQ(bracket_set(ctx).size(), 1u);
    }
}

TEST(Theta, GapOneClosedForm) {
  int seen = 0;
  for (const auto& ctx : contexts_up_to(8))
    if (ctx.gap() == 1) {
      ++seen;
      EXPECT_EQ(bracket_set(ctx).size(), 1u);
      EXPECT_EQ(theta_exact(ctx), 1 + inv(tspec(ctx).r(1))) << ctx.lambda << ctx.nu << ctx.kappa;
    }
  EXPECT_GT(seen, 0);
}

TEST(Theta, GapTwoProductFormula) {
  int seen = 0;
  for (const auto& ctx : contexts_up_to(8))
    if (ctx.gap() == 2) {
      ++seen;
      const StandardTableau top = tspec(ctx);
      EXPECT_EQ(theta_exact(ctx), (1 + inv(top.r(1))) * (1 + inv(top.axial(3, 1))))
          << ctx.lambda << ctx.nu << ctx.kappa;
      const auto br = bracket_set(ctx);
      const auto mv = coxeter_apply(top, 2);
      const bool s2_standard = mv.outcome == CoxeterOutcome::Swapped && mv.tableau->is_standard();
      EXPECT_EQ(br.size(), s2_standard ? 2u : 1u);
      EXPECT_EQ(br[0].tableau, top);
    }
  EXPECT_GT(seen, 0);
}

TEST(Theta, StaircaseValues) {
  for (int n = 2; n <= 8; ++n) {
    const ThetaContext ctx{Partition{n, n - 1}, Partition{n}, Partition{n - 1}};
    EXPECT_EQ(theta_exact(ctx), Rational(1, n)) << n;
  }
}

TEST(Theta, KnownValues) {
  EXPECT_EQ(theta_exact(ctx_of("2,1", "2", "1")), Rational(1, 2));
  EXPECT_EQ(theta_exact(ctx_of("3,2", "3", "2")), Rational(1, 3));
}

TEST(Theta, PositiveUpToEight) {
  std::size_t count = 0;
  for (const auto& ctx : contexts_up_to(8)) {
    ASSERT_GT(theta_exact(ctx), 0);
    ++count;
  }
  EXPECT_GT(count, 249u);
}

TEST(Theta, AxialBoundsOnBracketElements) {
  for (const auto& ctx : contexts_up_to(8)) {
    const StandardTableau top = tspec(ctx);
    const bool is_rev = top == t_rev(ctx.shape());
    for (const auto& e : bracket_set(ctx)) {
      ASSERT_TRUE(e.tableau.is_standard());
      for (int j = 2; j <= ctx.gap(); ++j) ASSERT_GE(e.r[static_cast<std::size_t>(j)], 1);
      if (is_rev && ctx.gap() >= 1) {
        ASSERT_GE(e.r[1], 1);
      }
      if (is_rev) {
        ASSERT_GE(theta_term(e, top, ctx.gap()), 0);
      }
    }
  }
}

TEST(Theta, BracketSetIsReachedByAdmissibleWords) {
  for (const auto& ctx : contexts_up_to(7)) {
    const StandardTableau top = tspec(ctx);
    const auto br = bracket_set(ctx);
    std::set<std::vector<int>> words;
    for (const auto& e : br) {
      if (ctx.gap() >= 1) {
        ASSERT_EQ(e.epsilon[1], 0);
      }
      words.insert(e.epsilon);
      // replay s_2^{e_2} ... s_g^{e_g} applied to TT, rightmost first
      StandardTableau t = top;
      for (int i = ctx.gap(); i >= 2; --i)
        if (e.epsilon[static_cast<std::size_t>(i)]) {
          auto mv = coxeter_apply(t, i);
          ASSERT_EQ(mv.outcome, CoxeterOutcome::Swapped);
          t = *mv.tableau;
          ASSERT_TRUE(t.is_standard());
        }
      ASSERT_EQ(t, e.tableau);
    }
    ASSERT_EQ(words.size(), br.size());
  }
}

TEST(Theta, BracketSplitsOnSecondGenerator) {
  for (const auto& ctx : contexts_up_to(7)) {
    if (ctx.lambda.size() - ctx.nu.size() < 2 || tspec(ctx) == t_rev(ctx.shape())) continue;
    const ThetaContext reduced = plus_reduction(ctx).reduced;
    std::set<std::vector<int>> zero, one, smaller;
    for (const auto& e : bracket_set(ctx)) {
      std::vector<int> tail(e.epsilon.begin() + 3, e.epsilon.end());
      (e.epsilon[2] ? one : zero).insert(tail);
    }
    for (const auto& e : bracket_set(reduced))
      smaller.insert(std::vector<int>(e.epsilon.begin() + 2, e.epsilon.end()));
    EXPECT_EQ(zero, smaller) << ctx.lambda << ctx.nu << ctx.kappa;
    for (const auto& w : one) EXPECT_TRUE(smaller.count(w));
  }
}

TEST(Theta, PlusReductionIdentity) {
  int used = 0;
  for (const auto& ctx : contexts_up_to(7)) {
    const auto chain = reduction_chain(ctx);
    ASSERT_LE(static_cast<int>(chain.size()) - 1, ctx.a());
    const ThetaContext& last = chain.back();
    ASSERT_TRUE(last.lambda.size() - last.nu.size() <= 1 || tspec(last) == t_rev(last.shape()));
    if (ctx.lambda.size() - ctx.nu.size() < 2 || tspec(ctx) == t_rev(ctx.shape())) {
      EXPECT_THROW(plus_reduction(ctx), std::invalid_argument);
      continue;
    }
    ++used;
    const PlusReduction p = plus_reduction(ctx);
    ASSERT_EQ(p.factor, 1 + inv(tspec(ctx).r(1)));
    ASSERT_EQ(theta_exact(ctx), p.factor * theta_exact(p.reduced));
    // lambda/kappa+ is lambda/kappa without its leftmost box
    auto before = box_set(ctx.shape());
    const auto after = box_set(p.reduced.shape());
    auto leftmost = *std::min_element(before.begin(), before.end(),
                                      [](auto x, auto y) { return x.second < y.second; });
    before.erase(leftmost);
    ASSERT_EQ(before, after);
  }
  EXPECT_GT(used, 0);
}

TEST(Theta, OracleAgreesUpToSeven) {
  for (const auto& ctx : contexts_up_to(7)) {
    const double exact = theta_exact(ctx).get_d();
    const OracleReport rep = oracle_report(ctx);
    ASSERT_LE(std::abs(exact - rep.theta), 1e-8) << ctx.lambda << ctx.nu << ctx.kappa;
    ASSERT_LE(std::abs(rep.theta - rep.theta_rho), 1e-10);
    ASSERT_LE(rep.y_invariance, 1e-10);
    ASSERT_LE(rep.z_invariance, 1e-10);
  }
}

TEST(Theta, InvariantChecks) {
  EXPECT_TRUE(invariant_checks({2}, {1}).ok());
  EXPECT_TRUE(invariant_checks({2, 1}, {2}).ok());
  EXPECT_THROW(invariant_checks({2, 1}, {1, 1, 1}), std::invalid_argument);
  for (int b = 1; b <= 6; ++b)
    for (const auto& l : partitions_of(b))
      for (int a = 0; a <= b; ++a)
        for (const auto& nu : partitions_of(a))
          if (leq(hs(l), nu) && leq(nu, l)) {
            const InvariantReport r = invariant_checks(l, nu);
            EXPECT_TRUE(r.ok()) << l << " " << nu;
            EXPECT_LE(r.beta_rev, 1e-12);
          }
}

TEST(Theta, SquaredCoefficientsMatchFloatingPoint) {
  for (int b = 1; b <= 7; ++b)
    for (const auto& l : partitions_of(b))
      for (int a = 0; a < b; ++a)
        for (const auto& nu : partitions_of(a)) {
          if (!leq(hs(l), nu) || !leq(nu, l)) continue;
          const YoungBasis basis(SkewShape(l, nu));
          const auto beta = invariant_coefficients(basis);
          const auto beta2 = invariant_coefficients_squared(basis);
          EXPECT_EQ(beta2[basis.index_of(t_rev(SkewShape(l, nu)))], 1);
          for (std::size_t k = 0; k < basis.size(); ++k) {
            ASSERT_NEAR(beta[k] * beta[k], beta2[k].get_d(), 1e-12);
            ASSERT_GE(beta2[k], 0);
          }
        }
}
