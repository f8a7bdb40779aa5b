#pragma once

// Characters of Sym(n) and Sym(b) x Sym(a): class data, Murnaghan-Nakayama
// values, class functions, decompositions and permutation characters.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "fihl/decomposition.hpp"
#include "fihl/error.hpp"
#include "fihl/linalg.hpp"
#include "fihl/partition.hpp"

namespace fihl {

using Permutation = std::vector<int>;  // 0-based images

inline Integer factorial(int n) {
  Integer f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

/// Centralizer order z_mu = prod_i i^{m_i} m_i!.
inline Integer centralizer_order(const Partition& mu) {
  Integer z = 1;
  const auto& p = mu.parts();
  std::size_t i = 0;
  while (i < p.size()) {
    std::size_t j = i;
    while (j < p.size() && p[j] == p[i]) ++j;
    const int m = static_cast<int>(j - i);
    for (int k = 0; k < m; ++k) z *= p[i];
    z *= factorial(m);
    i = j;
  }
  return z;
}

struct ConjugacyClass {
  Partition cycle_type;
  Integer size;
};

/// Cycle types of Sym(n) in enumeration order with class sizes n!/z_mu.
inline std::vector<ConjugacyClass> class_data(int n) {
  std::vector<ConjugacyClass> out;
  const Integer nf = factorial(n);
  for (const auto& mu : partitions_of(n)) out.push_back({mu, nf / centralizer_order(mu)});
  return out;
}

/// A permutation with the given cycle type, cycles on consecutive points.
inline Permutation class_representative(const Partition& cycle_type) {
  Permutation p(static_cast<std::size_t>(cycle_type.size()));
  int start = 0;
  for (int len : cycle_type.parts()) {
    for (int k = 0; k < len; ++k) p[static_cast<std::size_t>(start + k)] = start + (k + 1) % len;
    start += len;
  }
  return p;
}

inline Partition cycle_type(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  std::vector<int> lens;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = 1;
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.rbegin(), lens.rend());
  return Partition(std::move(lens));
}

namespace detail {

struct PairHash {
  std::size_t operator()(const PartitionPair& k) const noexcept {
    std::hash<Partition> h;
    return h(k.first) * 0x9e3779b97f4a7c15ULL ^ h(k.second);
  }
};

class CharacterMemo {
 public:
  bool find(const PartitionPair& key, long& value) const {
    std::shared_lock lock(mu_);
    auto it = map_.find(key);
    if (it == map_.end()) return false;
    value = it->second;
    return true;
  }
  void store(const PartitionPair& key, long value) {
    std::unique_lock lock(mu_);
    map_[key] = value;
  }
  std::size_t size() const {
    std::shared_lock lock(mu_);
    return map_.size();
  }

 private:
  mutable std::shared_mutex mu_;
  std::unordered_map<PartitionPair, long, PairHash> map_;
};

inline CharacterMemo& character_memo() {
  static CharacterMemo memo;
  return memo;
}

inline Partition from_beta(std::vector<int> beta) {
  // beta strictly decreasing, length L: lambda_i = beta_i - (L - 1 - i)
  std::sort(beta.rbegin(), beta.rend());
  const int L = static_cast<int>(beta.size());
  std::vector<int> parts;
  for (int i = 0; i < L; ++i) parts.push_back(beta[static_cast<std::size_t>(i)] - (L - 1 - i));
  return Partition(std::move(parts));
}

}  // namespace detail

/// chi^lambda at the class of the given cycle type, by removing border strips
/// of length mu_1 (bead moves on the beta-set), memoized.
inline long mn_char(const Partition& lambda, const Partition& mu) {
  if (lambda.size() != mu.size()) throw std::invalid_argument("mn_char: size mismatch");
  if (mu.empty()) return 1;
  auto& memo = detail::character_memo();
  const PartitionPair key{lambda, mu};
  long cached;
  if (memo.find(key, cached)) return cached;

  const int k = mu[0];
  const Partition rest(std::vector<int>(mu.parts().begin() + 1, mu.parts().end()));
  const int L = lambda.length();
  std::vector<int> beta(static_cast<std::size_t>(L));
  for (int i = 0; i < L; ++i) beta[static_cast<std::size_t>(i)] = lambda[i] + (L - 1 - i);
  long value = 0;
  for (int i = 0; i < L; ++i) {
    const int from = beta[static_cast<std::size_t>(i)];
    const int to = from - k;
    if (to < 0 || std::find(beta.begin(), beta.end(), to) != beta.end()) continue;
    int between = 0;
    for (int x : beta)
      if (x > to && x < from) ++between;
    std::vector<int> moved = beta;
    moved[static_cast<std::size_t>(i)] = to;
    const long sub = mn_char(detail::from_beta(moved), rest);
    value += (between % 2 ? -sub : sub);
  }
  memo.store(key, value);
  return value;
}

/// Rational class function on Sym(b) x Sym(a); Sym(n) is Sym(n) x Sym(0).
/// Values are indexed by (class of b) * |classes of a| + (class of a), both
/// class lists in enumeration order.
class ClassFunction {
 public:
  ClassFunction() : ClassFunction(0, 0) {}
  ClassFunction(int b, int a) : b_(b), a_(a), classes_b_(class_data(b)), classes_a_(class_data(a)) {
    if (b < 0 || a < 0) throw std::invalid_argument("ClassFunction: negative degree");
    values_.assign(classes_b_.size() * classes_a_.size(), Rational(0));
  }

  int b() const { return b_; }
  int a() const { return a_; }
  const std::vector<ConjugacyClass>& classes_b() const { return classes_b_; }
  const std::vector<ConjugacyClass>& classes_a() const { return classes_a_; }
  std::size_t num_classes() const { return values_.size(); }

  std::size_t index(const Partition& alpha, const Partition& beta) const {
    std::size_t i = find(classes_b_, alpha), j = find(classes_a_, beta);
    return i * classes_a_.size() + j;
  }

  Rational& operator[](std::size_t k) { return values_.at(k); }
  const Rational& operator[](std::size_t k) const { return values_.at(k); }

  const Rational& value(const Partition& alpha, const Partition& beta = {}) const { return values_[index(alpha, beta)]; }
  void set(const Partition& alpha, const Partition& beta, const Rational& v) { values_[index(alpha, beta)] = v; }

  /// Class sizes and cycle types behind flat index k.
  const ConjugacyClass& class_b(std::size_t k) const { return classes_b_[k / classes_a_.size()]; }
  const ConjugacyClass& class_a(std::size_t k) const { return classes_a_[k % classes_a_.size()]; }

  /// Representative group element (g, h) of flat class index k.
  std::pair<Permutation, Permutation> representative(std::size_t k) const {
    return {class_representative(class_b(k).cycle_type), class_representative(class_a(k).cycle_type)};
  }

  static ClassFunction irreducible(const Partition& lambda, const Partition& mu = {}) {
    ClassFunction f(lambda.size(), mu.size());
    for (std::size_t k = 0; k < f.values_.size(); ++k)
      f.values_[k] = mn_char(lambda, f.class_b(k).cycle_type) * mn_char(mu, f.class_a(k).cycle_type);
    return f;
  }

  ClassFunction& operator+=(const ClassFunction& o) {
    check_same(o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
    return *this;
  }
  ClassFunction& operator-=(const ClassFunction& o) {
    check_same(o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
    return *this;
  }
  friend ClassFunction operator+(ClassFunction x, const ClassFunction& y) { return x += y; }
  friend ClassFunction operator-(ClassFunction x, const ClassFunction& y) { return x -= y; }

  friend bool operator==(const ClassFunction& x, const ClassFunction& y) {
    return x.b_ == y.b_ && x.a_ == y.a_ && x.values_ == y.values_;
  }

  /// Degree: the value at the identity class.
  Rational degree() const { return values_.empty() ? Rational(0) : values_[index(identity(b_), identity(a_))]; }

 private:
  static Partition identity(int n) { return Partition(std::vector<int>(static_cast<std::size_t>(n), 1)); }

  static std::size_t find(const std::vector<ConjugacyClass>& cls, const Partition& p) {
    for (std::size_t i = 0; i < cls.size(); ++i)
      if (cls[i].cycle_type == p) return i;
    throw std::invalid_argument("ClassFunction: unknown class " + p.to_string());
  }

  void check_same(const ClassFunction& o) const {
    if (o.b_ != b_ || o.a_ != a_) throw std::invalid_argument("ClassFunction: group mismatch");
  }

  int b_, a_;
  std::vector<ConjugacyClass> classes_b_, classes_a_;
  std::vector<Rational> values_;
};

/// <phi, psi> = (1/|G|) sum_classes |C| phi(C) psi(C); characters here are real.
inline Rational inner_product(const ClassFunction& phi, const ClassFunction& psi) {
  if (phi.b() != psi.b() || phi.a() != psi.a()) throw std::invalid_argument("inner_product: group mismatch");
  Rational s = 0;
  for (std::size_t k = 0; k < phi.num_classes(); ++k)
    s += Rational(phi.class_b(k).size * phi.class_a(k).size) * phi[k] * psi[k];
  return s / Rational(factorial(phi.b()) * factorial(phi.a()));
}

namespace detail {
inline DecompositionTable decompose_impl(const ClassFunction& phi, bool allow_negative) {
  DecompositionTable out;
  const auto lambdas = partitions_of(phi.b());
  const auto mus = partitions_of(phi.a());
  const auto& cb = phi.classes_b();
  const auto& ca = phi.classes_a();
  const Rational order = Rational(factorial(phi.b()) * factorial(phi.a()));
  for (const auto& mu : mus) {
    // contract over the Sym(a) classes first
    std::vector<Rational> partial(cb.size());
    for (std::size_t i = 0; i < cb.size(); ++i)
      for (std::size_t j = 0; j < ca.size(); ++j) {
        const Rational& v = phi[i * ca.size() + j];
        if (v == 0) continue;
        partial[i] += Rational(ca[j].size) * v * mn_char(mu, ca[j].cycle_type);
      }
    for (const auto& lambda : lambdas) {
      Rational m = 0;
      for (std::size_t i = 0; i < cb.size(); ++i)
        if (partial[i] != 0) m += Rational(cb[i].size) * partial[i] * mn_char(lambda, cb[i].cycle_type);
      m /= order;
      if (m.get_den() != 1)
        throw InternalError("decompose: non-integral multiplicity " + m.get_str() + " at (" + lambda.to_string() +
                            "; " + mu.to_string() + ")");
      if (m < 0 && !allow_negative)
        throw InternalError("decompose: negative multiplicity at (" + lambda.to_string() + "; " + mu.to_string() + ")");
      if (!m.get_num().fits_slong_p()) throw InternalError("decompose: multiplicity overflow");
      out.add(lambda, mu, m.get_num().get_si());
    }
  }
  return out;
}
}  // namespace detail

/// Multiplicities of the irreducibles in a genuine character.  A non-integral
/// or negative multiplicity raises InternalError.
inline DecompositionTable decompose(const ClassFunction& phi) { return detail::decompose_impl(phi, false); }

/// Same for virtual characters: integrality enforced, signs allowed.
inline DecompositionTable decompose_virtual(const ClassFunction& phi) { return detail::decompose_impl(phi, true); }

/// Character with the given (possibly virtual) multiplicities.
inline ClassFunction character_of(const DecompositionTable& t, int b, int a) {
  ClassFunction out(b, a);
  for (const auto& [key, m] : t.entries()) {
    ClassFunction chi = ClassFunction::irreducible(key.first, key.second);
    for (std::size_t k = 0; k < out.num_classes(); ++k) out[k] += Rational(m) * chi[k];
  }
  return out;
}

/// Number of injections f: a -> b with g o f o h = f, at every class (g, h).
inline ClassFunction perm_char_hom(int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("perm_char_hom: negative degree");
  if (b > 7) throw std::invalid_argument("perm_char_hom: b > 7 is beyond brute-force scale");
  ClassFunction out(b, a);
  if (a > b) return out;
  std::vector<std::vector<int>> injections;
  std::vector<int> cur;
  std::vector<char> used(static_cast<std::size_t>(b), 0);
  std::function<void()> rec = [&] {
    if (static_cast<int>(cur.size()) == a) {
      injections.push_back(cur);
      return;
    }
    for (int t = 0; t < b; ++t) {
      if (used[static_cast<std::size_t>(t)]) continue;
      used[static_cast<std::size_t>(t)] = 1;
      cur.push_back(t);
      rec();
      cur.pop_back();
      used[static_cast<std::size_t>(t)] = 0;
    }
  };
  rec();
  for (std::size_t k = 0; k < out.num_classes(); ++k) {
    auto [g, h] = out.representative(k);
    long fixed = 0;
    for (const auto& f : injections) {
      bool ok = true;
      for (int i = 0; i < a && ok; ++i)
        ok = g[static_cast<std::size_t>(f[static_cast<std::size_t>(h[static_cast<std::size_t>(i)])])] ==
             f[static_cast<std::size_t>(i)];
      if (ok) ++fixed;
    }
    out[k] = fixed;
  }
  return out;
}

/// Dimension of the Schur functor S^lambda on an n-dimensional space
/// (hook-content formula).
inline Integer schur_poly_dim(const Partition& lambda, int n) {
  if (n < 0) throw std::invalid_argument("schur_poly_dim: negative dimension");
  Rational d = 1;
  const Partition t = lambda.transpose();
  for (int r = 0; r < lambda.length(); ++r)
    for (int c = 0; c < lambda[r]; ++c) {
      const int hook = (lambda[r] - c - 1) + (t[c] - r - 1) + 1;
      d *= Rational(n + c - r) / hook;
    }
  if (d.get_den() != 1) throw InternalError("schur_poly_dim: non-integral dimension");
  return d.get_num();
}

}  // namespace fihl
