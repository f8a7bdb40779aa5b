#pragma once

// Exact linear algebra over Q and over prime fields: sparse matrices, a
// reduced-echelon subspace builder, fraction-free rank, kernels, column
// spaces and solves, plus the multi-prime rank used for large matrices.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "fihl/error.hpp"

namespace fihl {

using Integer = mpz_class;
using Rational = mpq_class;

/// Column-major sparse matrix with rational entries; zeros are never stored.
class SparseMatrix {
 public:
  using Entry = std::pair<std::size_t, Rational>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), columns_(cols) {}

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.add(i, i, 1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  /// Adds `value` to entry (row, col).
  void add(std::size_t row, std::size_t col, const Rational& value) {
    if (row >= rows_ || col >= cols_) throw std::out_of_range("SparseMatrix::add: index out of range");
    if (value == 0) return;
    auto& column = columns_[col];
    auto it = std::lower_bound(column.begin(), column.end(), row,
                               [](const Entry& e, std::size_t r) { return e.first < r; });
    if (it != column.end() && it->first == row) {
      it->second += value;
      if (it->second == 0) column.erase(it);
    } else {
      Rational v = value;
      v.canonicalize();
      column.insert(it, {row, std::move(v)});
    }
  }

  Rational at(std::size_t row, std::size_t col) const {
    if (row >= rows_ || col >= cols_) throw std::out_of_range("SparseMatrix::at: index out of range");
    const auto& column = columns_[col];
    auto it = std::lower_bound(column.begin(), column.end(), row,
                               [](const Entry& e, std::size_t r) { return e.first < r; });
    return (it != column.end() && it->first == row) ? it->second : Rational(0);
  }

  const std::vector<Entry>& column(std::size_t col) const { return columns_.at(col); }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }

  bool is_zero() const { return nonzeros() == 0; }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows_);
    for (std::size_t c = 0; c < cols_; ++c)
      for (const auto& [r, v] : columns_[c]) t.columns_[r].push_back({c, v});
    return t;
  }

  /// this * other.
  SparseMatrix operator*(const SparseMatrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("SparseMatrix: dimension mismatch in product");
    SparseMatrix out(rows_, other.cols_);
    std::map<std::size_t, Rational> acc;
    for (std::size_t c = 0; c < other.cols_; ++c) {
      acc.clear();
      for (const auto& [k, w] : other.columns_[c])
        for (const auto& [r, v] : columns_[k]) acc[r] += v * w;
      for (auto& [r, v] : acc)
        if (v != 0) out.columns_[c].push_back({r, v});
    }
    return out;
  }

  std::vector<Rational> apply(const std::vector<Rational>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("SparseMatrix::apply: dimension mismatch");
    std::vector<Rational> y(rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
      if (x[c] == 0) continue;
      for (const auto& [r, v] : columns_[c]) y[r] += v * x[c];
    }
    return y;
  }

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

  /// Coordinate dump, one "row col value" line per stored entry.
  void dump(std::ostream& os) const {
    for (std::size_t c = 0; c < cols_; ++c)
      for (const auto& [r, v] : columns_[c]) os << r << ' ' << c << ' ' << v.get_str() << '\n';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<Entry>> columns_;
};

// ---------------------------------------------------------------------------
// Fields

struct RationalField {
  using value_type = Rational;
  value_type from(const Rational& x) const { return x; }
  static bool is_zero(const value_type& x) { return x == 0; }
  static value_type add(const value_type& x, const value_type& y) { return x + y; }
  static value_type sub(const value_type& x, const value_type& y) { return x - y; }
  static value_type mul(const value_type& x, const value_type& y) { return x * y; }
  static value_type inv(const value_type& x) { return 1 / x; }
  static value_type one() { return 1; }
};

/// Arithmetic modulo a prime below 2^31 (so products fit in 64 bits).
struct PrimeField {
  using value_type = std::uint64_t;
  std::uint64_t p = 0;

  explicit PrimeField(std::uint64_t prime) : p(prime) {}

  value_type reduce(const Integer& z) const {
    Integer r = z % static_cast<unsigned long>(p);
    if (r < 0) r += static_cast<unsigned long>(p);
    return r.get_ui();
  }

  /// Throws std::domain_error when the denominator vanishes mod p.
  value_type from(const Rational& x) const {
    value_type num = reduce(x.get_num());
    value_type den = reduce(x.get_den());
    if (den == 0) throw std::domain_error("denominator divisible by the prime");
    return mul(num, inv(den));
  }

  static bool is_zero(value_type x) { return x == 0; }
  value_type add(value_type x, value_type y) const {
    value_type s = x + y;
    return s >= p ? s - p : s;
  }
  value_type sub(value_type x, value_type y) const { return x >= y ? x - y : x + p - y; }
  value_type mul(value_type x, value_type y) const { return (x * y) % p; }
  value_type pow(value_type x, std::uint64_t e) const {
    value_type r = 1;
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }
  value_type inv(value_type x) const { return pow(x, p - 2); }
  static value_type one() { return 1; }

  /// Representative in (-p/2, p/2].
  long long symmetric(value_type x) const {
    return x > p / 2 ? static_cast<long long>(x) - static_cast<long long>(p) : static_cast<long long>(x);
  }
};

template <class V>
using SparseVector = std::vector<std::pair<std::size_t, V>>;

/// Incrementally built reduced row-echelon basis of a subspace of F^n.
/// Every stored row has leading coefficient one and vanishes at the leading
/// coordinates of all other rows.
template <class Field>
class Echelon {
 public:
  using V = typename Field::value_type;

  Echelon(std::size_t dim, Field field) : dim_(dim), field_(std::move(field)), pivot_row_(dim, -1), scratch_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const Field& field() const { return field_; }

  /// Reduces v against the basis; returns true if it enlarged the span.
  bool insert(const SparseVector<V>& v) {
    SparseVector<V> w = reduce(v);
    if (w.empty()) return false;
    const std::size_t lead = w.front().first;
    const V scale = field_.inv(w.front().second);
    for (auto& [i, x] : w) x = field_.mul(x, scale);
    for (auto& row : rows_) {
      auto it = std::lower_bound(row.begin(), row.end(), lead,
                                 [](const auto& e, std::size_t k) { return e.first < k; });
      if (it == row.end() || it->first != lead) continue;
      const V c = it->second;
      row = axpy(row, c, w);
    }
    pivot_row_[lead] = static_cast<long>(rows_.size());
    rows_.push_back(std::move(w));
    leads_.push_back(lead);
    return true;
  }

  /// v minus its projection onto the span along the leading coordinates.
  SparseVector<V> reduce(const SparseVector<V>& v) const {
    bool hits = false;
    for (const auto& [i, x] : v)
      if (pivot_row_[i] >= 0) {
        hits = true;
        break;
      }
    if (!hits) return v;
    auto& acc = scratch_;
    std::vector<std::size_t> touched;
    for (const auto& [i, x] : v) {
      acc[i] = x;
      touched.push_back(i);
    }
    for (const auto& [i, x] : v) {
      long k = pivot_row_[i];
      if (k < 0) continue;
      for (const auto& [j, y] : rows_[static_cast<std::size_t>(k)]) {
        if (Field::is_zero(acc[j])) touched.push_back(j);
        acc[j] = field_.sub(acc[j], field_.mul(x, y));
      }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    SparseVector<V> out;
    for (std::size_t j : touched) {
      if (!Field::is_zero(acc[j])) out.push_back({j, acc[j]});
      acc[j] = V{};
    }
    return out;
  }

  bool contains(const SparseVector<V>& v) const { return reduce(v).empty(); }

  /// Rows in insertion order and their leading coordinates.
  const std::vector<SparseVector<V>>& rows() const { return rows_; }
  const std::vector<std::size_t>& leads() const { return leads_; }

  /// Coefficient of row k at coordinate j.
  V coefficient(std::size_t k, std::size_t j) const {
    const auto& row = rows_[k];
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const auto& e, std::size_t q) { return e.first < q; });
    return (it != row.end() && it->first == j) ? it->second : V{};
  }

  long pivot_row_of(std::size_t coordinate) const { return pivot_row_[coordinate]; }

 private:
  SparseVector<V> axpy(const SparseVector<V>& row, const V& c, const SparseVector<V>& w) const {
    // row - c * w
    SparseVector<V> out;
    out.reserve(row.size() + w.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < w.size()) {
      if (j == w.size() || (i < row.size() && row[i].first < w[j].first)) {
        out.push_back(row[i++]);
      } else if (i == row.size() || w[j].first < row[i].first) {
        V x = field_.sub(V{}, field_.mul(c, w[j].second));
        if (!Field::is_zero(x)) out.push_back({w[j].first, x});
        ++j;
      } else {
        V x = field_.sub(row[i].second, field_.mul(c, w[j].second));
        if (!Field::is_zero(x)) out.push_back({row[i].first, x});
        ++i;
        ++j;
      }
    }
    return out;
  }

  std::size_t dim_;
  Field field_;
  std::vector<SparseVector<V>> rows_;
  std::vector<std::size_t> leads_;
  std::vector<long> pivot_row_;
  mutable std::vector<V> scratch_;
};

template <class Field>
SparseVector<typename Field::value_type> column_vector(const SparseMatrix& m, std::size_t c, const Field& f) {
  SparseVector<typename Field::value_type> v;
  for (const auto& [r, x] : m.column(c)) {
    auto y = f.from(x);
    if (!Field::is_zero(y)) v.push_back({r, y});
  }
  return v;
}

/// Column-space echelon of m over `field`; `pivot_columns` are the columns of
/// m that enlarged the span when scanned left to right.
template <class Field>
struct ColumnSpace {
  Echelon<Field> echelon;
  std::vector<std::size_t> pivot_columns;
};

template <class Field>
ColumnSpace<Field> column_space(const SparseMatrix& m, const Field& field) {
  ColumnSpace<Field> out{Echelon<Field>(m.rows(), field), {}};
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (out.echelon.rank() == m.rows()) break;
    if (out.echelon.insert(column_vector(m, c, field))) out.pivot_columns.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Primes

namespace detail {
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL})
    if (n % p == 0) return n == p;
  // deterministic Miller-Rabin for n < 2^32 with bases 2, 7, 61
  PrimeField f(n);
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 7ULL, 61ULL}) {
    if (a % n == 0) continue;
    std::uint64_t x = f.pow(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = f.mul(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}
}  // namespace detail

/// The k-th prime of the fixed seeded stream of primes in (2^30, 2^31).
inline std::uint64_t stream_prime(std::size_t k) {
  static std::mutex mu;
  static std::vector<std::uint64_t> primes;
  static std::mt19937_64 rng(0x46494849ULL);
  std::lock_guard<std::mutex> lock(mu);
  while (primes.size() <= k) {
    std::uint64_t candidate = (1ULL << 30) + (rng() % (1ULL << 30));
    candidate |= 1;
    if (detail::is_prime_u64(candidate) &&
        std::find(primes.begin(), primes.end(), candidate) == primes.end())
      primes.push_back(candidate);
  }
  return primes[k];
}

// ---------------------------------------------------------------------------
// Rank

enum class RankMode { Exact, Modular };

/// Matrices wider than this use modular arithmetic unless told otherwise.
inline constexpr std::size_t kModularColumnThreshold = 2000;

inline RankMode default_rank_mode(std::size_t cols) {
  return cols > kModularColumnThreshold ? RankMode::Modular : RankMode::Exact;
}

/// Rank by fraction-free (Bareiss) elimination; pivots of minimal magnitude.
inline std::size_t rank_exact(const SparseMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  if (R == 0 || C == 0) return 0;
  // integral rows: clear each row's denominators
  std::vector<std::vector<Integer>> a(R, std::vector<Integer>(C, 0));
  std::vector<Integer> lcm(R, 1);
  for (std::size_t c = 0; c < C; ++c)
    for (const auto& [r, v] : m.column(c)) mpz_lcm(lcm[r].get_mpz_t(), lcm[r].get_mpz_t(), v.get_den_mpz_t());
  for (std::size_t c = 0; c < C; ++c)
    for (const auto& [r, v] : m.column(c)) a[r][c] = v.get_num() * (lcm[r] / v.get_den());

  Integer prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < C && rank < R; ++c) {
    std::size_t best = R;
    for (std::size_t i = rank; i < R; ++i) {
      if (a[i][c] == 0) continue;
      if (best == R || abs(a[i][c]) < abs(a[best][c])) best = i;
    }
    if (best == R) continue;
    std::swap(a[rank], a[best]);
    const Integer& piv = a[rank][c];
    for (std::size_t i = rank + 1; i < R; ++i) {
      for (std::size_t j = c + 1; j < C; ++j) {
        Integer t = piv * a[i][j] - a[i][c] * a[rank][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = piv;
    ++rank;
  }
  return rank;
}

inline std::size_t rank_mod(const SparseMatrix& m, std::uint64_t prime) {
  PrimeField f(prime);
  return column_space(m, f).echelon.rank();
}

struct ModularRank {
  std::size_t rank = 0;
  bool certified = false;  // two primes agreed
  std::vector<std::uint64_t> primes;
  std::vector<std::size_t> ranks;
};

/// Rank modulo primes of the seeded stream: two primes, a third on
/// disagreement.  Without agreement the maximum is returned, uncertified; it
/// is still a lower bound for the rational rank.
inline ModularRank rank_modular(const SparseMatrix& m) {
  ModularRank out;
  for (std::size_t k = 0; out.primes.size() < 3; ++k) {
    std::uint64_t p = stream_prime(k);
    std::size_t r;
    try {
      r = rank_mod(m, p);
    } catch (const std::domain_error&) {
      continue;
    }
    for (std::size_t prev : out.ranks)
      if (prev == r) {
        out.primes.push_back(p);
        out.ranks.push_back(r);
        out.rank = r;
        out.certified = true;
        return out;
      }
    out.primes.push_back(p);
    out.ranks.push_back(r);
  }
  out.rank = *std::max_element(out.ranks.begin(), out.ranks.end());
  return out;
}

inline std::size_t rank(const SparseMatrix& m, RankMode mode) {
  if (mode == RankMode::Exact) return rank_exact(m);
  ModularRank r = rank_modular(m);
  if (!r.certified) throw UncertifiedError("modular rank: primes disagree");
  return r.rank;
}

// ---------------------------------------------------------------------------
// Exact bases and solves

/// Column-space basis over Q: pivot columns of m and the reduced basis
/// vectors (dense, sorted by leading coordinate).
struct ColumnBasis {
  std::vector<std::size_t> pivot_columns;
  std::vector<std::vector<Rational>> basis;
};

inline ColumnBasis colspace_basis(const SparseMatrix& m) {
  auto cs = column_space(m, RationalField{});
  ColumnBasis out;
  out.pivot_columns = cs.pivot_columns;
  std::vector<std::size_t> order(cs.echelon.rank());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return cs.echelon.leads()[x] < cs.echelon.leads()[y]; });
  for (std::size_t k : order) {
    std::vector<Rational> v(m.rows());
    for (const auto& [i, x] : cs.echelon.rows()[k]) v[i] = x;
    out.basis.push_back(std::move(v));
  }
  return out;
}

/// Basis of {x : m x = 0}, one vector per free column of the row echelon form.
inline std::vector<std::vector<Rational>> kernel_basis(const SparseMatrix& m) {
  const SparseMatrix t = m.transpose();  // columns of t are the rows of m
  Echelon<RationalField> e(m.cols(), RationalField{});
  for (std::size_t r = 0; r < t.cols(); ++r) e.insert(column_vector(t, r, RationalField{}));
  std::vector<std::vector<Rational>> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (e.pivot_row_of(f) >= 0) continue;
    std::vector<Rational> x(m.cols());
    x[f] = 1;
    for (std::size_t k = 0; k < e.rank(); ++k) {
      Rational c = e.coefficient(k, f);
      if (c != 0) x[e.leads()[k]] = -c;
    }
    out.push_back(std::move(x));
  }
  return out;
}

/// Coefficients x with m x = v, or nullopt when v is not in the column space.
inline std::optional<std::vector<Rational>> solve_in_colspace(const SparseMatrix& m,
                                                              const std::vector<Rational>& v) {
  if (v.size() != m.rows()) throw std::invalid_argument("solve_in_colspace: dimension mismatch");
  // Row-reduce [m | v]; coordinate m.cols() is the right-hand side.
  const std::size_t n = m.cols();
  const SparseMatrix t = m.transpose();
  Echelon<RationalField> e(n + 1, RationalField{});
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseVector<Rational> row = column_vector(t, r, RationalField{});
    if (v[r] != 0) row.push_back({n, v[r]});
    e.insert(row);
  }
  if (e.pivot_row_of(n) >= 0) return std::nullopt;
  std::vector<Rational> x(n);
  for (std::size_t k = 0; k < e.rank(); ++k) x[e.leads()[k]] = e.coefficient(k, n);
  return x;
}

}  // namespace fihl
