#pragma once

// The Koszul complex computing FI-homology of k hom_FI(-, b)^tr at a: chain
// bases (S, f) with S a subset of a and f: a \ S -> b injective, the
// differential, homology characters and the Euler and Schur checks.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fihl/characters.hpp"
#include "fihl/crit.hpp"
#include "fihl/decomposition.hpp"
#include "fihl/error.hpp"
#include "fihl/linalg.hpp"
#include "fihl/monomial.hpp"
#include "fihl/transfer.hpp"

namespace fihl {

/// Chain bases store (S, f) as an array of length a holding f(i), or the
/// marker value b at positions i in S.
struct ChainComplex {
  int a = 0;
  int b = 0;
  std::vector<ArrayBasis> basis;       // degrees 0..a
  std::vector<MonomialAction> action;  // degrees 0..a
  std::vector<SparseMatrix> d;         // d[n]: degree n -> n-1; d[0] is 0 x dim_0

  std::size_t dim(int n) const { return (n < 0 || n > a) ? 0 : basis[static_cast<std::size_t>(n)].size(); }
  int top() const { return a; }
};

/// C(a, n) b!/(b-a+n)!, zero outside 0 <= n <= a or when b-a+n < 0.
inline Integer chain_dimension(int a, int b, int n) {
  if (n < 0 || n > a || b - a + n < 0) return 0;
  Integer binom;
  mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(n));
  return binom * factorial(b) / factorial(b - a + n);
}

namespace detail {

inline ArrayBasis chain_basis(int a, int b, int n) {
  ArrayBasis out;
  if (b - a + n < 0) return out;
  // subsets S in lexicographic order, then f in lexicographic order
  std::vector<int> subset;
  std::function<void(int)> subsets = [&](int start) {
    if (static_cast<int>(subset.size()) == n) {
      std::vector<int> cur(static_cast<std::size_t>(a), -1);
      for (int s : subset) cur[static_cast<std::size_t>(s)] = b;
      std::vector<char> used(static_cast<std::size_t>(b), 0);
      std::function<void(int)> fill = [&](int pos) {
        if (pos == a) {
          out.push_back(cur);
          return;
        }
        if (cur[static_cast<std::size_t>(pos)] == b) {
          fill(pos + 1);
          return;
        }
        for (int t = 0; t < b; ++t) {
          if (used[static_cast<std::size_t>(t)]) continue;
          used[static_cast<std::size_t>(t)] = 1;
          cur[static_cast<std::size_t>(pos)] = t;
          fill(pos + 1);
          used[static_cast<std::size_t>(t)] = 0;
        }
        cur[static_cast<std::size_t>(pos)] = -1;
      };
      fill(0);
      return;
    }
    for (int s = start; s < a; ++s) {
      subset.push_back(s);
      subsets(s + 1);
      subset.pop_back();
    }
  };
  subsets(0);
  return out;
}

/// Sign of the permutation sorting the sequence (distinct values).
inline int sorting_sign(const std::vector<int>& seq) {
  int inversions = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++inversions;
  return inversions % 2 ? -1 : 1;
}

/// (g, h) . (S, f) = (h(S), g o f o h^{-1}) times the sign of h on S in
/// increasing order.
inline MonomialAction chain_action(std::shared_ptr<const ArrayBasis> basis, int a, int b) {
  return MonomialAction(b, a, basis->size(), [basis, b](std::size_t j, const GroupElement& x) {
    const std::vector<int>& f = (*basis)[j];
    std::vector<int> out(f.size());
    std::vector<int> moved_s;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const std::size_t hi = static_cast<std::size_t>(x.h[i]);
      if (f[i] == b) {
        out[hi] = b;
        moved_s.push_back(x.h[i]);
      } else {
        out[hi] = x.g[static_cast<std::size_t>(f[i])];
      }
    }
    return std::pair<std::size_t, int>{basis->index_of(out), sorting_sign(moved_s)};
  });
}

}  // namespace detail

/// d(S, f) = sum_{s in S} (-1)^{#{s' in S : s' < s}} sum_{t not in im f}
/// (S \ {s}, f extended by s -> t).  d^2 = 0 and equivariance of every d_n
/// are verified; failure is an InternalError.
inline ChainComplex chain_complex(int a, int b, bool verify = true) {
  if (a < 0 || b < 0) throw std::invalid_argument("chain_complex: negative size");
  if (a > 10 || b > 10) throw std::invalid_argument("chain_complex: sizes above 10 are out of range");
  ChainComplex cx;
  cx.a = a;
  cx.b = b;
  for (int n = 0; n <= a; ++n) {
    auto basis = std::make_shared<const ArrayBasis>(detail::chain_basis(a, b, n));
    cx.basis.push_back(*basis);
    cx.action.push_back(detail::chain_action(basis, a, b));
  }
  cx.d.emplace_back(0, cx.dim(0));
  for (int n = 1; n <= a; ++n) {
    const ArrayBasis& src = cx.basis[static_cast<std::size_t>(n)];
    const ArrayBasis& dst = cx.basis[static_cast<std::size_t>(n - 1)];
    SparseMatrix d(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
      const std::vector<int>& f = src[c];
      std::vector<char> used(static_cast<std::size_t>(b), 0);
      for (int v : f)
        if (v < b) used[static_cast<std::size_t>(v)] = 1;
      int smaller = 0;
      for (int s = 0; s < a; ++s) {
        if (f[static_cast<std::size_t>(s)] != b) continue;
        const int sign = smaller % 2 ? -1 : 1;
        ++smaller;
        for (int t = 0; t < b; ++t) {
          if (used[static_cast<std::size_t>(t)]) continue;
          std::vector<int> g = f;
          g[static_cast<std::size_t>(s)] = t;
          d.add(dst.index_of(g), c, sign);
        }
      }
    }
    cx.d.push_back(std::move(d));
  }
  if (verify) {
    for (int n = 2; n <= a; ++n)
      if (!(cx.d[static_cast<std::size_t>(n - 1)] * cx.d[static_cast<std::size_t>(n)]).is_zero())
        throw InternalError("chain_complex: d^2 != 0 in degree " + std::to_string(n));
    for (int n = 1; n <= a; ++n)
      if (!intertwines(cx.d[static_cast<std::size_t>(n)], cx.action[static_cast<std::size_t>(n)],
                       cx.action[static_cast<std::size_t>(n - 1)]))
        throw InternalError("chain_complex: d_" + std::to_string(n) + " is not equivariant");
  }
  return cx;
}

/// Multiplicity of S^lambda (x) S^mu in degree n counted as the members of
/// M(lambda, mu) of size a - n; cross-checked against the decomposition of the
/// chain character (mismatch is an InternalError).
inline DecompositionTable chain_mults(int a, int b, int n, const ChainComplex* cx = nullptr) {
  if (a < 0 || b < 0) throw std::invalid_argument("chain_mults: negative size");
  DecompositionTable combinatorial;
  if (n >= 0 && n <= a)
    for (const auto& lambda : partitions_of(b))
      for (const auto& mu : partitions_of(a)) {
        long count = 0;
        for (const auto& nu : m_set(lambda, mu).members)
          if (nu.size() == a - n) ++count;
        combinatorial.add(lambda, mu, count);
      }
  std::optional<ChainComplex> own;
  if (!cx) {
    own = chain_complex(a, b, false);
    cx = &*own;
  }
  DecompositionTable from_character;
  if (n >= 0 && n <= a) from_character = decompose(cx->action[static_cast<std::size_t>(n)].character());
  if (!(combinatorial == from_character))
    throw InternalError("chain_mults: combinatorial count differs from the chain character in degree " +
                        std::to_string(n));
  return combinatorial;
}

/// Characters of the images of every d_n (index n; entries 0 and a+1 are zero).
inline std::vector<ClassFunction> boundary_characters(const ChainComplex& cx, RankMode mode) {
  std::vector<ClassFunction> im(static_cast<std::size_t>(cx.a + 2), ClassFunction(cx.b, cx.a));
  for (int n = 1; n <= cx.a; ++n)
    im[static_cast<std::size_t>(n)] =
        image_char(cx.d[static_cast<std::size_t>(n)], cx.action[static_cast<std::size_t>(n)],
                   cx.action[static_cast<std::size_t>(n - 1)], mode, ImageStrategy::Reduced, false);
  return im;
}

/// chi(H_n) = chi(C_n) - chi(im d_n) - chi(im d_{n+1}), decomposed, for n = 0..a
/// (or the single degree `only`).
inline std::vector<DecompositionTable> homology_decomposition(int a, int b, RankMode mode = RankMode::Exact,
                                                              std::optional<int> only = std::nullopt) {
  ChainComplex cx = chain_complex(a, b);
  std::vector<DecompositionTable> out(static_cast<std::size_t>(a + 1));
  auto image = [&](int n) {
    if (n < 1 || n > a) return ClassFunction(b, a);
    return image_char(cx.d[static_cast<std::size_t>(n)], cx.action[static_cast<std::size_t>(n)],
                      cx.action[static_cast<std::size_t>(n - 1)], mode, ImageStrategy::Reduced, false);
  };
  if (only) {
    const int n = *only;
    if (n < 0 || n > a) return {};
    ClassFunction chi = cx.action[static_cast<std::size_t>(n)].character() - image(n) - image(n + 1);
    out[static_cast<std::size_t>(n)] = decompose(chi);
    return out;
  }
  std::vector<ClassFunction> im = boundary_characters(cx, mode);
  for (int n = 0; n <= a; ++n) {
    ClassFunction chi = cx.action[static_cast<std::size_t>(n)].character() - im[static_cast<std::size_t>(n)] -
                        im[static_cast<std::size_t>(n + 1)];
    out[static_cast<std::size_t>(n)] = decompose(chi);
  }
  return out;
}

struct EulerReport {
  bool ok = false;
  DecompositionTable critical;   // sum over critical pairs of (-1)^degree
  DecompositionTable homology;   // sum_n (-1)^n [H_n]
  DecompositionTable chains;     // sum_n (-1)^n [C_n]
};

inline EulerReport euler_check(int a, int b, const std::vector<DecompositionTable>& homology) {
  EulerReport rep;
  rep.critical = critical_euler_sum(a, b);
  for (std::size_t n = 0; n < homology.size(); ++n) rep.homology += homology[n].scaled(n % 2 ? -1 : 1);
  ChainComplex cx = chain_complex(a, b, false);
  ClassFunction alt(b, a);
  for (int n = 0; n <= a; ++n) {
    ClassFunction chi = cx.action[static_cast<std::size_t>(n)].character();
    if (n % 2)
      alt -= chi;
    else
      alt += chi;
  }
  rep.chains = decompose_virtual(alt);
  rep.ok = rep.critical == rep.homology && rep.homology == rep.chains;
  return rep;
}

inline EulerReport euler_check(int a, int b, RankMode mode = RankMode::Exact) {
  return euler_check(a, b, homology_decomposition(a, b, mode));
}

/// Conjecture comparison for one (a, b) cell with freshly computed homology.
inline ConjectureReport conjecture_report(int a, int b, RankMode mode) {
  return conjecture_report(a, b, homology_decomposition(a, b, mode));
}

/// C(n + k - 1, k): monomials of degree k in n variables.
inline Integer multichoose(int n, int k) {
  if (k == 0) return 1;
  if (n <= 0) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n + k - 1), static_cast<unsigned long>(k));
  return r;
}

/// {(lambda |- b, nu |- a) : hs(lambda) <= nu <= lambda}, each with multiplicity one.
inline DecompositionTable hom_pairs(int a, int b) {
  DecompositionTable out;
  if (a < 0 || b < 0 || a > b) return out;
  for (const auto& lambda : partitions_of(b))
    for (const auto& nu : partitions_of(a))
      if (leq(hs(lambda), nu) && leq(nu, lambda)) out.add(lambda, nu, 1);
  return out;
}

struct SchurDimCheck {
  bool ok = false;
  Integer lhs;  // dim S^{b-a}(W) * dim S^a(W (x) V)
  Integer rhs;  // sum over hom pairs of dim S^lambda(W) * dim S^nu(V)
};

inline SchurDimCheck schur_dim_check(int a, int b, int v, int w) {
  if (a < 0 || a > b) throw std::invalid_argument("schur_dim_check: requires 0 <= a <= b");
  if (v < 0 || w < 0) throw std::invalid_argument("schur_dim_check: negative dimension");
  SchurDimCheck out;
  out.lhs = multichoose(w, b - a) * multichoose(w * v, a);
  out.rhs = 0;
  const DecompositionTable pairs = hom_pairs(a, b);
  for (const auto& [key, m] : pairs.entries())
    out.rhs += schur_poly_dim(key.first, w) * schur_poly_dim(key.second, v);
  out.ok = out.lhs == out.rhs;
  return out;
}

}  // namespace fihl
