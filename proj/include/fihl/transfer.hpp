#pragma once

// k hom_FI(-, b)^tr in explicit bases: injections, the transfer Tr_{a,b}
// from the induced module, its equivariant cokernel, and the short exact
// sequence splitting off the last point of b.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fihl/characters.hpp"
#include "fihl/decomposition.hpp"
#include "fihl/error.hpp"
#include "fihl/linalg.hpp"
#include "fihl/monomial.hpp"
#include "fihl/partition.hpp"

namespace fihl {

/// Ordered set of small integer arrays with O(1) lookup.
class ArrayBasis {
 public:
  std::size_t size() const { return items_.size(); }
  const std::vector<int>& operator[](std::size_t k) const { return items_[k]; }
  const std::vector<std::vector<int>>& items() const { return items_; }

  void push_back(std::vector<int> item) {
    index_.emplace(key(item), items_.size());
    items_.push_back(std::move(item));
  }

  std::size_t index_of(const std::vector<int>& item) const {
    auto it = index_.find(key(item));
    if (it == index_.end()) throw std::out_of_range("ArrayBasis: unknown element");
    return it->second;
  }

  bool contains(const std::vector<int>& item) const { return index_.count(key(item)) != 0; }

 private:
  static std::uint64_t key(const std::vector<int>& v) {
    std::uint64_t k = v.size();
    for (int x : v) k = k * 16 + static_cast<std::uint64_t>(x);
    return k;
  }

  std::vector<std::vector<int>> items_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Injections a -> b as arrays (f(0), ..., f(a-1)) in lexicographic order, so
/// the canonical inclusion comes first.  Empty when a > b.
struct HomBasis {
  int a = 0;
  int b = 0;
  ArrayBasis injections;
};

inline HomBasis hom_basis(int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("hom_basis: negative size");
  if (a > 10 || b > 10) throw std::invalid_argument("hom_basis: sizes above 10 are out of range");
  HomBasis out{a, b, {}};
  if (a > b) return out;
  std::vector<int> cur;
  std::vector<char> used(static_cast<std::size_t>(b), 0);
  std::function<void()> rec = [&] {
    if (static_cast<int>(cur.size()) == a) {
      out.injections.push_back(cur);
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
  return out;
}

/// x . f = g o f o h^{-1}, i.e. (x . f)(h(i)) = g(f(i)).
inline std::vector<int> act_on_injection(const std::vector<int>& f, const GroupElement& x) {
  std::vector<int> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    out[static_cast<std::size_t>(x.h[i])] = x.g[static_cast<std::size_t>(f[i])];
  return out;
}

/// The left Sym(b) x Sym(a) permutation action on k hom(a, b).
inline MonomialAction hom_action(const HomBasis& basis) {
  auto inj = std::make_shared<ArrayBasis>(basis.injections);
  return MonomialAction(basis.b, basis.a, inj->size(), [inj](std::size_t j, const GroupElement& x) {
    return std::pair<std::size_t, int>{inj->index_of(act_on_injection((*inj)[j], x)), 1};
  });
}

inline std::pair<HomBasis, MonomialAction> hom_basis_action(int a, int b) {
  HomBasis basis = hom_basis(a, b);
  MonomialAction action = hom_action(basis);
  return {std::move(basis), std::move(action)};
}

/// Tr_{a,b} from the induced module (basis (i, f), i in a, f in hom(a-1, b),
/// index i * |hom(a-1,b)| + index(f)) to k hom(a, b), with both actions.
struct TransferMatrix {
  int a = 0;
  int b = 0;
  SparseMatrix matrix;
  HomBasis source_hom;  // hom(a-1, b)
  HomBasis target_hom;  // hom(a, b)
  MonomialAction source_action;
  MonomialAction target_action;
};

namespace detail {
inline std::vector<int> swap_positions(std::vector<int> f, int i, int j) {
  std::swap(f[static_cast<std::size_t>(i)], f[static_cast<std::size_t>(j)]);
  return f;
}
}  // namespace detail

/// Coset representative tau_i = (i, a-1) of Sym(a-1) in Sym(a) (0-based);
/// tau_{a-1} is the identity.
inline Permutation coset_representative(int a, int i) {
  Permutation t = identity_permutation(a);
  std::swap(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(a - 1)]);
  return t;
}

/// Induced-module action: x . (i, f) = (h(i), g o f o sigma^{-1}) with
/// sigma = tau_{h(i)} h tau_i restricted to a-1 points.
inline MonomialAction induced_action(const HomBasis& source_hom, int a, int b) {
  auto inj = std::make_shared<ArrayBasis>(source_hom.injections);
  const std::size_t m = inj->size();
  return MonomialAction(b, a, static_cast<std::size_t>(a) * m, [inj, m, a](std::size_t idx, const GroupElement& x) {
    const int i = static_cast<int>(idx / m);
    const std::vector<int>& f = (*inj)[idx % m];
    const int j = x.h[static_cast<std::size_t>(i)];
    Permutation sigma = compose(coset_representative(a, j), compose(x.h, coset_representative(a, i)));
    sigma.pop_back();  // fixes a-1
    GroupElement inner{x.g, sigma};
    return std::pair<std::size_t, int>{static_cast<std::size_t>(j) * m + inj->index_of(act_on_injection(f, inner)),
                                       1};
  });
}

/// Column (i, f) = tau_i . sum_{t not in im f} [f extended by a-1 -> t].
/// Equivariance is checked on the Coxeter generators; failure is an
/// InternalError.
inline TransferMatrix tr_matrix(int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("tr_matrix: negative size");
  TransferMatrix out;
  out.a = a;
  out.b = b;
  out.target_hom = hom_basis(a, b);
  out.target_action = hom_action(out.target_hom);
  if (a == 0) {
    out.source_hom = HomBasis{0, b, {}};
    out.matrix = SparseMatrix(out.target_hom.injections.size(), 0);
    out.source_action = MonomialAction(b, 0, 0, [](std::size_t, const GroupElement&) {
      return std::pair<std::size_t, int>{0, 1};
    });
    return out;
  }
  out.source_hom = hom_basis(a - 1, b);
  out.source_action = induced_action(out.source_hom, a, b);
  const std::size_t m = out.source_hom.injections.size();
  out.matrix = SparseMatrix(out.target_hom.injections.size(), static_cast<std::size_t>(a) * m);
  for (int i = 0; i < a; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      const std::vector<int>& f = out.source_hom.injections[k];
      std::vector<char> used(static_cast<std::size_t>(b), 0);
      for (int v : f) used[static_cast<std::size_t>(v)] = 1;
      for (int t = 0; t < b; ++t) {
        if (used[static_cast<std::size_t>(t)]) continue;
        std::vector<int> ext = f;
        ext.push_back(t);
        ext = detail::swap_positions(std::move(ext), i, a - 1);
        out.matrix.add(out.target_hom.injections.index_of(ext), static_cast<std::size_t>(i) * m + k, 1);
      }
    }
  if (!intertwines(out.matrix, out.source_action, out.target_action))
    throw InternalError("tr_matrix: transfer is not equivariant");
  return out;
}

/// Structure map of k hom(-, b)^tr along a -> a+1:
/// [f] -> sum over t not in im f of [f extended by a -> t].
inline SparseMatrix structure_map(int a, int b) {
  const HomBasis src = hom_basis(a, b), dst = hom_basis(a + 1, b);
  SparseMatrix m(dst.injections.size(), src.injections.size());
  for (std::size_t k = 0; k < src.injections.size(); ++k) {
    std::vector<char> used(static_cast<std::size_t>(b), 0);
    for (int v : src.injections[k]) used[static_cast<std::size_t>(v)] = 1;
    for (int t = 0; t < b; ++t) {
      if (used[static_cast<std::size_t>(t)]) continue;
      std::vector<int> ext = src.injections[k];
      ext.push_back(t);
      m.add(dst.injections.index_of(ext), k, 1);
    }
  }
  return m;
}

/// Cokernel of Tr_{a,b} as a Sym(b) x Sym(a)-module.
inline DecompositionTable h0_computed(int a, int b, RankMode mode = RankMode::Exact) {
  if (a < 0 || b < 0) throw std::invalid_argument("h0_computed: negative size");
  if (a > b) return {};
  TransferMatrix tr = tr_matrix(a, b);
  ClassFunction chi = tr.target_action.character();
  if (a > 0) chi -= image_char(tr.matrix, tr.source_action, tr.target_action, mode, ImageStrategy::Reduced, false);
  return decompose(chi);
}

/// {(lambda, hs(lambda)) : lambda |- b, lambda_1 = b - a}; empty when a > b.
inline DecompositionTable h0_predicted(int a, int b) {
  if (a < 1) throw std::invalid_argument("h0_predicted: requires a >= 1");
  if (b < 0) throw std::invalid_argument("h0_predicted: negative b");
  DecompositionTable out;
  if (a > b) return out;
  for (const auto& lambda : partitions_of(b))
    if (lambda[0] == b - a) out.add(lambda, hs(lambda), 1);
  return out;
}

/// 0 -> K -> k hom(a, b) -> k hom(a, b-1) -> 0 with K the summands
/// (x, f: a \ {x} -> b-1) embedded by sending x to the last point of b.
struct DevissageReport {
  int a = 0;
  int b = 0;
  SparseMatrix inclusion;   // K -> M
  SparseMatrix middle;      // identity on M
  SparseMatrix projection;  // M -> Q
  std::size_t dim_kernel = 0, dim_middle = 0, dim_quotient = 0;
  std::size_t rank_inclusion = 0, rank_projection = 0;
  bool composite_zero = false;
  bool exact = false;
  bool equivariant = false;
  bool natural = false;    // commutes with the structure maps
  bool tr_square = false;  // projection . Tr_{a,b} = Tr_{a,b-1} . (id (x) projection)
};

namespace detail {

/// Basis (x, f) of K at a, f an injection a\{x} -> b-1 written on a-1 points.
struct KernelTerm {
  int a = 0, b = 0;
  HomBasis inner;  // hom(a-1, b-1)
  std::size_t size() const { return static_cast<std::size_t>(a) * inner.injections.size(); }
  std::size_t index(int x, const std::vector<int>& f) const {
    return static_cast<std::size_t>(x) * inner.injections.size() + inner.injections.index_of(f);
  }
  /// f as a partial array of length a with -1 at x.
  std::vector<int> expand(std::size_t idx) const {
    const std::size_t m = inner.injections.size();
    const int x = static_cast<int>(idx / m);
    const auto& f = inner.injections[idx % m];
    std::vector<int> out;
    for (int p = 0, q = 0; p < a; ++p) out.push_back(p == x ? -1 : f[static_cast<std::size_t>(q++)]);
    return out;
  }
  std::size_t index_of_partial(const std::vector<int>& partial) const {
    int x = -1;
    std::vector<int> f;
    for (int p = 0; p < static_cast<int>(partial.size()); ++p) {
      if (partial[static_cast<std::size_t>(p)] < 0)
        x = p;
      else
        f.push_back(partial[static_cast<std::size_t>(p)]);
    }
    return index(x, f);
  }
};

inline KernelTerm kernel_term(int a, int b) {
  KernelTerm k{a, b, a >= 1 ? hom_basis(a - 1, b - 1) : HomBasis{}};
  if (a < 1) k.a = 0;
  return k;
}

inline SparseMatrix devissage_inclusion(const KernelTerm& k, const HomBasis& middle) {
  SparseMatrix m(middle.injections.size(), k.size());
  for (std::size_t c = 0; c < k.size(); ++c) {
    std::vector<int> f = k.expand(c);
    for (int& v : f)
      if (v < 0) v = middle.b - 1;
    m.add(middle.injections.index_of(f), c, 1);
  }
  return m;
}

inline SparseMatrix devissage_projection(const HomBasis& middle, const HomBasis& quotient) {
  SparseMatrix m(quotient.injections.size(), middle.injections.size());
  for (std::size_t c = 0; c < middle.injections.size(); ++c) {
    const auto& f = middle.injections[c];
    bool hits_last = false;
    for (int v : f) hits_last = hits_last || v == middle.b - 1;
    if (!hits_last) m.add(quotient.injections.index_of(f), c, 1);
  }
  return m;
}

inline Permutation extend_fixing_last(const Permutation& g) {
  Permutation out = g;
  out.push_back(static_cast<int>(g.size()));
  return out;
}

}  // namespace detail

/// Builds the three maps at a and checks exactness, Sym(b-1) x Sym(a)
/// equivariance, naturality along a -> a+1 and the square with Tr.  Any
/// failed check is an InternalError.
inline DevissageReport devissage_ses(int a, int b) {
  if (b < 1) throw std::invalid_argument("devissage_ses: requires b >= 1");
  if (a < 0) throw std::invalid_argument("devissage_ses: negative a");
  DevissageReport rep;
  rep.a = a;
  rep.b = b;
  const detail::KernelTerm K = detail::kernel_term(a, b);
  const HomBasis M = hom_basis(a, b), Q = hom_basis(a, b - 1);
  rep.inclusion = detail::devissage_inclusion(K, M);
  rep.middle = SparseMatrix::identity(M.injections.size());
  rep.projection = detail::devissage_projection(M, Q);
  rep.dim_kernel = K.size();
  rep.dim_middle = M.injections.size();
  rep.dim_quotient = Q.injections.size();
  const RankMode mode = default_rank_mode(rep.dim_middle);
  rep.rank_inclusion = rank(rep.inclusion, mode);
  rep.rank_projection = rank(rep.projection, mode);
  rep.composite_zero = (rep.projection * rep.inclusion).is_zero();
  rep.exact = rep.composite_zero && rep.rank_inclusion == rep.dim_kernel &&
              rep.rank_projection == rep.dim_quotient && rep.dim_kernel + rep.dim_quotient == rep.dim_middle;

  // Sym(b-1) x Sym(a) acting on all three terms
  auto kptr = std::make_shared<detail::KernelTerm>(K);
  MonomialAction act_k(b - 1, a, K.size(), [kptr](std::size_t j, const GroupElement& x) {
    std::vector<int> f = kptr->expand(j);
    std::vector<int> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
      out[static_cast<std::size_t>(x.h[i])] = f[i] < 0 ? -1 : x.g[static_cast<std::size_t>(f[i])];
    return std::pair<std::size_t, int>{kptr->index_of_partial(out), 1};
  });
  auto mptr = std::make_shared<ArrayBasis>(M.injections);
  MonomialAction act_m(b - 1, a, M.injections.size(), [mptr](std::size_t j, const GroupElement& x) {
    GroupElement y{detail::extend_fixing_last(x.g), x.h};
    return std::pair<std::size_t, int>{mptr->index_of(act_on_injection((*mptr)[j], y)), 1};
  });
  MonomialAction act_q = hom_action(Q);
  rep.equivariant = intertwines(rep.inclusion, act_k, act_m) && intertwines(rep.projection, act_m, act_q);

  // naturality along a -> a+1
  {
    const detail::KernelTerm K1 = detail::kernel_term(a + 1, b);
    const HomBasis M1 = hom_basis(a + 1, b), Q1 = hom_basis(a + 1, b - 1);
    SparseMatrix phi_k(K1.size(), K.size());
    for (std::size_t c = 0; c < K.size(); ++c) {
      std::vector<int> f = K.expand(c);
      std::vector<char> used(static_cast<std::size_t>(b - 1), 0);
      for (int v : f)
        if (v >= 0) used[static_cast<std::size_t>(v)] = 1;
      for (int t = 0; t < b - 1; ++t) {
        if (used[static_cast<std::size_t>(t)]) continue;
        std::vector<int> ext = f;
        ext.push_back(t);
        phi_k.add(K1.index_of_partial(ext), c, 1);
      }
    }
    const SparseMatrix phi_m = structure_map(a, b), phi_q = structure_map(a, b - 1);
    const SparseMatrix incl1 = detail::devissage_inclusion(K1, M1);
    const SparseMatrix proj1 = detail::devissage_projection(M1, Q1);
    rep.natural = phi_m * rep.inclusion == incl1 * phi_k && phi_q * rep.projection == proj1 * phi_m;
  }

  // square with the transfers: pi_a Tr_{a,b} = Tr_{a,b-1} (id (x) pi_{a-1})
  if (a >= 1) {
    const TransferMatrix tr = tr_matrix(a, b), tr1 = tr_matrix(a, b - 1);
    const SparseMatrix pi_prev = detail::devissage_projection(tr.source_hom, tr1.source_hom);
    SparseMatrix induced_pi(static_cast<std::size_t>(a) * pi_prev.rows(), static_cast<std::size_t>(a) * pi_prev.cols());
    for (int i = 0; i < a; ++i)
      for (std::size_t c = 0; c < pi_prev.cols(); ++c)
        for (const auto& [r, v] : pi_prev.column(c))
          induced_pi.add(static_cast<std::size_t>(i) * pi_prev.rows() + r, static_cast<std::size_t>(i) * pi_prev.cols() + c,
                         v);
    rep.tr_square = rep.projection * tr.matrix == tr1.matrix * induced_pi;
  } else {
    rep.tr_square = true;
  }

  if (!rep.exact) throw InternalError("devissage_ses: sequence is not exact");
  if (!rep.equivariant) throw InternalError("devissage_ses: maps are not equivariant");
  if (!rep.natural) throw InternalError("devissage_ses: maps do not commute with the structure maps");
  if (!rep.tr_square) throw InternalError("devissage_ses: square with the transfers does not commute");
  return rep;
}

}  // namespace fihl
