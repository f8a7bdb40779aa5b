#pragma once

// The coefficient theta(lambda, nu, kappa): the tableau TT of shape
// lambda/kappa, its bracket set, the exact rational formula, the inductive
// plus-reduction, and a double-precision oracle in the Young orthogonal form.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fihl/error.hpp"
#include "fihl/linalg.hpp"
#include "fihl/partition.hpp"
#include "fihl/tableau.hpp"

namespace fihl {

/// lambda |- b, nu |- a, kappa |- a-1 with hs(lambda) <= kappa <= nu <= lambda
/// and lambda_1 > b-a.
struct ThetaContext {
  Partition lambda;
  Partition nu;
  Partition kappa;

  int a() const { return nu.size(); }
  int b() const { return lambda.size(); }
  int gap() const { return b() - a(); }
  SkewShape shape() const { return SkewShape(lambda, kappa); }

  friend bool operator==(const ThetaContext&, const ThetaContext&) = default;
};

inline std::optional<std::string> context_error(const ThetaContext& ctx) {
  if (ctx.nu.size() < 1) return "nu must be nonempty";
  if (ctx.kappa.size() + 1 != ctx.nu.size()) return "|kappa| must equal |nu| - 1";
  if (!leq(hs(ctx.lambda), ctx.kappa)) return "hs(lambda) is not contained in kappa";
  if (!leq(ctx.kappa, ctx.nu)) return "kappa is not contained in nu";
  if (!leq(ctx.nu, ctx.lambda)) return "nu is not contained in lambda";
  if (ctx.lambda[0] <= ctx.gap()) return "lambda_1 must exceed b - a";
  return std::nullopt;
}

inline void validate(const ThetaContext& ctx) {
  if (auto e = context_error(ctx)) throw std::invalid_argument("theta context: " + *e);
}

/// Every valid context with |lambda| = b, in enumeration order of (lambda, nu, kappa).
inline std::vector<ThetaContext> contexts(int b) {
  std::vector<ThetaContext> out;
  for (const auto& lambda : partitions_of(b))
    for (int a = 1; a <= b; ++a)
      for (const auto& nu : partitions_of(a)) {
        if (!leq(nu, lambda) || !leq(hs(lambda), nu)) continue;
        for (const auto& kappa : partitions_of(a - 1)) {
          ThetaContext ctx{lambda, nu, kappa};
          if (!context_error(ctx)) out.push_back(std::move(ctx));
        }
      }
  return out;
}

namespace detail {

inline Rational fraction(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Box single_box(const Partition& outer, const Partition& inner) {
  for (int r = 0; r < outer.length(); ++r)
    if (outer[r] != inner[r]) return {r, inner[r]};
  throw std::invalid_argument("single_box: shapes are equal");
}

}  // namespace detail

/// TT: the nu/kappa box labelled 1, lambda/nu filled by T^rev shifted by one.
inline StandardTableau tspec(const ThetaContext& ctx) {
  validate(ctx);
  std::vector<Box> pos{detail::single_box(ctx.nu, ctx.kappa)};
  const StandardTableau rev = t_rev(SkewShape(ctx.lambda, ctx.nu));
  pos.insert(pos.end(), rev.positions().begin(), rev.positions().end());
  return StandardTableau(ctx.shape(), std::move(pos));
}

/// s_2^{e_2} ... s_{b-a}^{e_{b-a}} TT with the axial distances r^e_j read
/// along the way.  Index j of `epsilon` and `r` is the generator index; entry
/// 0 is unused.
struct BracketElement {
  StandardTableau tableau;
  std::vector<int> epsilon;  // epsilon[1] = 0 by convention
  std::vector<int> r;        // r[j] = r^e_j, j = 1..b-a
  int J = 1;
};

inline std::vector<BracketElement> bracket_set(const ThetaContext& ctx) {
  const StandardTableau top = tspec(ctx);
  const int g = ctx.gap();
  std::vector<BracketElement> out;
  if (g == 0) {
    out.push_back({top, {0}, {0}, 1});
    return out;
  }
  BracketElement cur{top, std::vector<int>(static_cast<std::size_t>(g + 1), 0),
                     std::vector<int>(static_cast<std::size_t>(g + 1), 0), 1};
  // branch on e_i for i = g down to 2, acting on the tableau built so far
  auto rec = [&](auto&& self, int i, const StandardTableau& t) -> void {
    if (i < 2) {
      BracketElement e = cur;
      e.tableau = t;
      e.r[1] = t.r(1);
      e.J = 1;
      for (int j = 2; j <= g; ++j)
        if (e.epsilon[static_cast<std::size_t>(j)]) e.J = j;
      out.push_back(std::move(e));
      return;
    }
    cur.r[static_cast<std::size_t>(i)] = t.r(i);
    cur.epsilon[static_cast<std::size_t>(i)] = 0;
    self(self, i - 1, t);
    CoxeterMove m = coxeter_apply(t, i);
    if (m.outcome == CoxeterOutcome::Swapped) {
      cur.r[static_cast<std::size_t>(i)] = t.r(i);
      cur.epsilon[static_cast<std::size_t>(i)] = 1;
      self(self, i - 1, *m.tableau);
      cur.epsilon[static_cast<std::size_t>(i)] = 0;
    }
  };
  rec(rec, g, top);
  return out;
}

/// theta(T) = [T = TT] + sum_{k=J}^{b-a} prod_{j<=k} f_j with f_j = 1/r_j when
/// e_j = 0 and (r_j - 1)/r_j when e_j = 1.
inline Rational theta_term(const BracketElement& e, const StandardTableau& top, int gap) {
  if (gap == 0) return 1;
  Rational total = (e.tableau == top) ? Rational(1) : Rational(0);
  Rational prod = 1;
  for (int k = 1; k <= gap; ++k) {
    const int r = e.r[static_cast<std::size_t>(k)];
    if (r == 0) throw InternalError("theta_term: zero axial distance");
    prod *= e.epsilon[static_cast<std::size_t>(k)] ? detail::fraction(r - 1, r) : detail::fraction(1, r);
    if (k >= e.J) total += prod;
  }
  return total;
}

inline Rational theta_exact(const ThetaContext& ctx) {
  const StandardTableau top = tspec(ctx);
  Rational total = 0;
  for (const auto& e : bracket_set(ctx)) total += theta_term(e, top, ctx.gap());
  if (sgn(total) <= 0) throw InternalError("theta_exact: nonpositive value " + total.get_str());
  return total;
}

struct PlusReduction {
  ThetaContext reduced;
  Rational factor;  // 1 + 1/r_1(TT)
};

/// Moves the leftmost box of lambda/nu (labelled 2 in TT) into both nu and
/// kappa; theta(ctx) = factor * theta(reduced).
inline PlusReduction plus_reduction(const ThetaContext& ctx) {
  const StandardTableau top = tspec(ctx);
  if (ctx.lambda.size() - ctx.nu.size() < 2) throw std::invalid_argument("plus_reduction: |lambda/nu| < 2");
  if (top == t_rev(ctx.shape())) throw std::invalid_argument("plus_reduction: TT equals T^rev");
  const Box moved = top.position(2);
  auto grow = [&](const Partition& p) {
    std::vector<int> parts = p.parts();
    parts.resize(std::max(parts.size(), static_cast<std::size_t>(moved.row) + 1), 0);
    if (parts[static_cast<std::size_t>(moved.row)] != moved.col)
      throw InternalError("plus_reduction: box is not addable");
    ++parts[static_cast<std::size_t>(moved.row)];
    return Partition(std::move(parts));
  };
  PlusReduction out{{ctx.lambda, grow(ctx.nu), grow(ctx.kappa)}, 1 + detail::fraction(1, top.r(1))};
  if (auto e = context_error(out.reduced)) throw InternalError("plus_reduction: reduced context invalid: " + *e);
  return out;
}

/// Applies plus_reduction until |lambda/nu| <= 1 or TT = T^rev.  Returns the
/// visited contexts, first the input, last the base case.
inline std::vector<ThetaContext> reduction_chain(const ThetaContext& ctx) {
  std::vector<ThetaContext> out{ctx};
  for (;;) {
    const ThetaContext& cur = out.back();
    if (cur.lambda.size() - cur.nu.size() < 2 || tspec(cur) == t_rev(cur.shape())) return out;
    out.push_back(plus_reduction(cur).reduced);
  }
}

// ---------------------------------------------------------------------------
// Double-precision Young orthogonal form.

/// Standard tableaux of a shape with a lookup from label positions to index.
class YoungBasis {
 public:
  explicit YoungBasis(const SkewShape& shape) : tableaux_(standard_tableaux(shape)) {
    for (std::size_t k = 0; k < tableaux_.size(); ++k) index_.emplace(key(tableaux_[k]), k);
  }

  std::size_t size() const { return tableaux_.size(); }
  const StandardTableau& operator[](std::size_t k) const { return tableaux_[k]; }
  const std::vector<StandardTableau>& tableaux() const { return tableaux_; }

  std::size_t index_of(const StandardTableau& t) const {
    auto it = index_.find(key(t));
    if (it == index_.end()) throw std::out_of_range("YoungBasis: tableau not in basis");
    return it->second;
  }

  /// s_j Phi_T = (1/r) Phi_T + sqrt(1 - 1/r^2) Phi_{s_j T}, or r Phi_T when |r| = 1.
  std::vector<double> act(int j, const std::vector<double>& v) const {
    std::vector<double> out(v.size(), 0.0);
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] == 0.0) continue;
      const StandardTableau& t = tableaux_[k];
      const int r = t.r(j);
      if (r == 1 || r == -1) {
        out[k] += r * v[k];
        continue;
      }
      out[k] += v[k] / r;
      out[index_of(t.swapped_unchecked(j))] += v[k] * std::sqrt(1.0 - 1.0 / (double(r) * r));
    }
    return out;
  }

  /// Matrix of s_j: column k is s_j Phi_{T_k}.
  std::vector<std::vector<double>> matrix(int j) const {
    std::vector<std::vector<double>> m(size(), std::vector<double>(size(), 0.0));
    for (std::size_t k = 0; k < size(); ++k) {
      std::vector<double> e(size(), 0.0);
      e[k] = 1.0;
      std::vector<double> col = act(j, e);
      for (std::size_t i = 0; i < size(); ++i) m[i][k] = col[i];
    }
    return m;
  }

 private:
  static std::vector<int> key(const StandardTableau& t) {
    std::vector<int> k;
    for (const Box& b : t.positions()) {
      k.push_back(b.row);
      k.push_back(b.col);
    }
    return k;
  }

  std::vector<StandardTableau> tableaux_;
  std::map<std::vector<int>, std::size_t> index_;
};

/// beta_T over Tab(lambda/mu) for a horizontal strip: beta_{T^rev} = 1 and
/// beta_{s_i T} = beta_T sqrt((r_i - 1)/(r_i + 1)), r_i = r_i(T).
inline std::vector<double> invariant_coefficients(const YoungBasis& basis) {
  const SkewShape& shape = basis[0].shape();
  std::vector<double> beta(basis.size(), 0.0);
  std::vector<char> seen(basis.size(), 0);
  const std::size_t start = basis.index_of(t_rev(shape));
  beta[start] = 1.0;
  seen[start] = 1;
  std::deque<std::size_t> queue{start};
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    const StandardTableau& t = basis[k];
    for (int i = 1; i < t.size(); ++i) {
      CoxeterMove m = coxeter_apply(t, i);
      if (m.outcome != CoxeterOutcome::Swapped) continue;
      const std::size_t n = basis.index_of(*m.tableau);
      if (seen[n]) continue;
      const double r = t.r(i);
      beta[n] = beta[k] * std::sqrt((r - 1.0) / (r + 1.0));
      seen[n] = 1;
      queue.push_back(n);
    }
  }
  return beta;
}

/// beta_T^2 exactly, by the same recursion.
inline std::vector<Rational> invariant_coefficients_squared(const YoungBasis& basis) {
  const SkewShape& shape = basis[0].shape();
  std::vector<Rational> beta2(basis.size(), Rational(0));
  std::vector<char> seen(basis.size(), 0);
  const std::size_t start = basis.index_of(t_rev(shape));
  beta2[start] = 1;
  seen[start] = 1;
  std::deque<std::size_t> queue{start};
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    const StandardTableau& t = basis[k];
    for (int i = 1; i < t.size(); ++i) {
      CoxeterMove m = coxeter_apply(t, i);
      if (m.outcome != CoxeterOutcome::Swapped) continue;
      const std::size_t n = basis.index_of(*m.tableau);
      if (seen[n]) continue;
      const int r = t.r(i);
      beta2[n] = beta2[k] * detail::fraction(r - 1, r + 1);
      seen[n] = 1;
      queue.push_back(n);
    }
  }
  return beta2;
}

namespace detail {

inline double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
  double m = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) m = std::max(m, std::abs(x[k] - y[k]));
  return m;
}

inline std::vector<double>& add_into(std::vector<double>& x, const std::vector<double>& y) {
  for (std::size_t k = 0; k < x.size(); ++k) x[k] += y[k];
  return x;
}

}  // namespace detail

struct OracleReport {
  double theta = 0.0;            // coefficient of Phi_TT in sum_i (1,i) Y
  double theta_rho = 0.0;        // same coefficient from Y + sum_j rho_j s_1 Y
  double y_invariance = 0.0;     // max over s_2..s_{b-a} of |s_j Y - Y|
  double z_invariance = 0.0;     // max over s_1..s_{b-a} of |s_j Z - Z|
};

inline OracleReport oracle_report(const ThetaContext& ctx) {
  const StandardTableau top = tspec(ctx);
  const int g = ctx.gap();
  const YoungBasis basis(ctx.shape());
  const YoungBasis strip(SkewShape(ctx.lambda, ctx.nu));
  const std::vector<double> beta = invariant_coefficients(strip);
  const Box one = top.position(1);

  // Y = sum over tableaux with 1 in the nu/kappa box of beta_{T restricted to lambda/nu} Phi_T
  std::vector<double> y(basis.size(), 0.0);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const StandardTableau& t = basis[k];
    if (!(t.position(1) == one)) continue;
    std::vector<Box> rest(t.positions().begin() + 1, t.positions().end());
    StandardTableau restricted(SkewShape(ctx.lambda, ctx.nu), std::move(rest));
    y[k] = beta[strip.index_of(restricted)];
  }

  auto apply_word = [&](const std::vector<int>& word, std::vector<double> v) {
    // rightmost letter acts first
    for (auto it = word.rbegin(); it != word.rend(); ++it) v = basis.act(*it, v);
    return v;
  };

  std::vector<double> z = y;
  for (int i = 2; i <= g + 1; ++i) {
    std::vector<int> word;  // (1,i) = s_{i-1} ... s_2 s_1 s_2 ... s_{i-1}
    for (int j = i - 1; j >= 2; --j) word.push_back(j);
    word.push_back(1);
    for (int j = 2; j <= i - 1; ++j) word.push_back(j);
    detail::add_into(z, apply_word(word, y));
  }

  std::vector<double> z_rho = y;
  for (int j = 2; j <= g + 1; ++j) {
    std::vector<int> word;  // rho_j s_1 with rho_j = s_{j-1} ... s_2
    for (int i = j - 1; i >= 2; --i) word.push_back(i);
    word.push_back(1);
    detail::add_into(z_rho, apply_word(word, y));
  }

  OracleReport rep;
  const std::size_t t_index = basis.index_of(top);
  rep.theta = z[t_index];
  rep.theta_rho = z_rho[t_index];
  for (int j = 2; j <= g; ++j) rep.y_invariance = std::max(rep.y_invariance, detail::max_abs_diff(basis.act(j, y), y));
  for (int j = 1; j <= g; ++j) rep.z_invariance = std::max(rep.z_invariance, detail::max_abs_diff(basis.act(j, z), z));
  return rep;
}

inline double oracle_numeric(const ThetaContext& ctx) { return oracle_report(ctx).theta; }

struct InvariantReport {
  double diagonal = 0.0;      // sum_T w_T (x) w_T under the diagonal action
  double row_subgroup = 0.0;  // Phi_{T^rev} under s_j with j, j+1 in one row
  double skew_invariant = 0.0;  // sum_T beta_T Phi_T under every s_j on lambda/nu
  double x_diagonal = 0.0;    // X_{lambda,nu} under s_j, j < a, acting on both factors
  double x_outer = 0.0;       // X_{lambda,nu} under s_j, a < j < b, on the first factor
  double beta_rev = 0.0;      // |beta_{T^rev} - 1|
  bool ok(double tol = 1e-9) const {
    return diagonal <= tol && row_subgroup <= tol && skew_invariant <= tol && x_diagonal <= tol && x_outer <= tol &&
           beta_rev <= tol;
  }
};

namespace detail {

using Dense = std::vector<std::vector<double>>;

inline Dense multiply(const Dense& x, const Dense& y) {
  const std::size_t n = x.size(), m = y.empty() ? 0 : y[0].size(), inner = y.size();
  Dense out(n, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (x[i][k] == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += x[i][k] * y[k][j];
    }
  return out;
}

inline Dense transpose(const Dense& x) {
  const std::size_t n = x.size(), m = x.empty() ? 0 : x[0].size();
  Dense out(m, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) out[j][i] = x[i][j];
  return out;
}

inline double max_abs_diff(const Dense& x, const Dense& y) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, max_abs_diff(x[i], y[i]));
  return m;
}

}  // namespace detail

/// Numerical checks of the invariant generators for hs(lambda) <= nu <= lambda.
inline InvariantReport invariant_checks(const Partition& lambda, const Partition& nu) {
  if (!leq(hs(lambda), nu) || !leq(nu, lambda))
    throw std::invalid_argument("invariant_checks: requires hs(lambda) <= nu <= lambda");
  const int a = nu.size(), b = lambda.size();
  InvariantReport rep;
  const YoungBasis big(SkewShape{lambda});
  const YoungBasis small(SkewShape{nu});
  const YoungBasis strip(SkewShape(lambda, nu));

  for (int j = 1; j < b; ++j) {
    const detail::Dense m = big.matrix(j);
    detail::Dense id(big.size(), std::vector<double>(big.size(), 0.0));
    for (std::size_t k = 0; k < big.size(); ++k) id[k][k] = 1.0;
    rep.diagonal = std::max(rep.diagonal, detail::max_abs_diff(detail::multiply(m, detail::transpose(m)), id));
  }

  const std::vector<double> beta = invariant_coefficients(strip);
  if (strip.size() > 0) {
    const StandardTableau rev = t_rev(SkewShape(lambda, nu));
    const std::size_t rev_index = strip.index_of(rev);
    rep.beta_rev = std::abs(beta[rev_index] - 1.0);
    std::vector<double> e(strip.size(), 0.0);
    e[rev_index] = 1.0;
    for (int j = 1; j < rev.size(); ++j) {
      if (rev.position(j).row == rev.position(j + 1).row)
        rep.row_subgroup = std::max(rep.row_subgroup, detail::max_abs_diff(strip.act(j, e), e));
      rep.skew_invariant = std::max(rep.skew_invariant, detail::max_abs_diff(strip.act(j, beta), beta));
    }
  }

  detail::Dense x(big.size(), std::vector<double>(small.size(), 0.0));
  for (const auto& t : relative_tableaux(lambda, nu)) {
    auto [inner, skew] = relative_split(t, nu);
    x[big.index_of(t)][small.index_of(inner)] = beta[strip.index_of(skew)];
  }
  for (int j = 1; j < a; ++j) {
    const detail::Dense lhs = detail::multiply(detail::multiply(big.matrix(j), x), detail::transpose(small.matrix(j)));
    rep.x_diagonal = std::max(rep.x_diagonal, detail::max_abs_diff(lhs, x));
  }
  for (int j = a + 1; j < b; ++j)
    rep.x_outer = std::max(rep.x_outer, detail::max_abs_diff(detail::multiply(big.matrix(j), x), x));
  return rep;
}

}  // namespace fihl
