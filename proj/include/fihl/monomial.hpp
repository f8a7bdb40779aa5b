#pragma once

// Signed-permutation (monomial) actions of Sym(b) x Sym(a) on a basis, their
// characters, and characters of images and kernels of equivariant maps.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fihl/characters.hpp"
#include "fihl/error.hpp"
#include "fihl/linalg.hpp"

namespace fihl {

/// (g, h) in Sym(b) x Sym(a), as 0-based image arrays.
struct GroupElement {
  Permutation g;
  Permutation h;
};

/// g . e_j = sign[j] * e_{image[j]}.
struct SignedPerm {
  std::vector<std::size_t> image;
  std::vector<int> sign;
};

inline Permutation adjacent_transposition(int n, int i) {
  // swaps points i and i+1 (0-based)
  Permutation p(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) p[static_cast<std::size_t>(k)] = k;
  std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(i + 1)]);
  return p;
}

inline Permutation identity_permutation(int n) {
  Permutation p(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) p[static_cast<std::size_t>(k)] = k;
  return p;
}

inline Permutation compose(const Permutation& x, const Permutation& y) {
  // (x o y)(i) = x(y(i))
  Permutation out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = x[static_cast<std::size_t>(y[i])];
  return out;
}

inline Permutation inverse(const Permutation& x) {
  Permutation out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[static_cast<std::size_t>(x[i])] = static_cast<int>(i);
  return out;
}

/// A monomial representation of Sym(b) x Sym(a) on a basis of `size`
/// elements; `rule(j, x)` returns (index, sign) of x . e_j.
class MonomialAction {
 public:
  using Rule = std::function<std::pair<std::size_t, int>(std::size_t, const GroupElement&)>;

  MonomialAction() = default;
  MonomialAction(int b, int a, std::size_t size, Rule rule) : b_(b), a_(a), size_(size), rule_(std::move(rule)) {}

  int b() const { return b_; }
  int a() const { return a_; }
  std::size_t size() const { return size_; }

  SignedPerm act(const GroupElement& x) const {
    if (static_cast<int>(x.g.size()) != b_ || static_cast<int>(x.h.size()) != a_)
      throw std::invalid_argument("MonomialAction: group element of wrong degree");
    SignedPerm out{std::vector<std::size_t>(size_), std::vector<int>(size_)};
    for (std::size_t j = 0; j < size_; ++j) {
      auto [k, s] = rule_(j, x);
      out.image[j] = k;
      out.sign[j] = s;
    }
    return out;
  }

  /// Coxeter generators of both factors.
  std::vector<GroupElement> generators() const {
    std::vector<GroupElement> gens;
    for (int i = 0; i + 1 < b_; ++i) gens.push_back({adjacent_transposition(b_, i), identity_permutation(a_)});
    for (int i = 0; i + 1 < a_; ++i) gens.push_back({identity_permutation(b_), adjacent_transposition(a_, i)});
    return gens;
  }

  /// Character: signed count of fixed basis elements at each class.
  ClassFunction character() const {
    ClassFunction chi(b_, a_);
    for (std::size_t k = 0; k < chi.num_classes(); ++k) {
      auto [g, h] = chi.representative(k);
      SignedPerm p = act({g, h});
      long t = 0;
      for (std::size_t j = 0; j < size_; ++j)
        if (p.image[j] == j) t += p.sign[j];
      chi[k] = t;
    }
    return chi;
  }

  /// Checks that act is a homomorphism on the Coxeter generators: s^2 = 1 and
  /// the braid relation for adjacent generators of each factor.
  bool relations_hold() const {
    auto compose_signed = [&](const SignedPerm& x, const SignedPerm& y) {
      SignedPerm z{std::vector<std::size_t>(size_), std::vector<int>(size_)};
      for (std::size_t j = 0; j < size_; ++j) {
        z.image[j] = x.image[y.image[j]];
        z.sign[j] = x.sign[y.image[j]] * y.sign[j];
      }
      return z;
    };
    auto is_identity = [&](const SignedPerm& p) {
      for (std::size_t j = 0; j < size_; ++j)
        if (p.image[j] != j || p.sign[j] != 1) return false;
      return true;
    };
    auto check_factor = [&](int n, bool left) {
      for (int i = 0; i + 1 < n; ++i) {
        auto elem = [&](int k) {
          return left ? GroupElement{adjacent_transposition(b_, k), identity_permutation(a_)}
                      : GroupElement{identity_permutation(b_), adjacent_transposition(a_, k)};
        };
        SignedPerm s = act(elem(i));
        if (!is_identity(compose_signed(s, s))) return false;
        if (i + 2 < n) {
          SignedPerm t = act(elem(i + 1));
          SignedPerm lhs = compose_signed(s, compose_signed(t, s));
          SignedPerm rhs = compose_signed(t, compose_signed(s, t));
          if (lhs.image != rhs.image || lhs.sign != rhs.sign) return false;
        }
      }
      return true;
    };
    return check_factor(b_, true) && check_factor(a_, false);
  }

 private:
  int b_ = 0, a_ = 0;
  std::size_t size_ = 0;
  Rule rule_;
};

/// Whether target(x) . d = d . source(x) for every Coxeter generator x.
inline bool intertwines(const SparseMatrix& d, const MonomialAction& source, const MonomialAction& target) {
  if (d.rows() != target.size() || d.cols() != source.size()) return false;
  for (const GroupElement& x : target.generators()) {
    SignedPerm ps = source.act(x), pt = target.act(x);
    for (std::size_t c = 0; c < d.cols(); ++c) {
      // x . (d e_c) as a sorted sparse column
      std::vector<SparseMatrix::Entry> moved;
      for (const auto& [r, v] : d.column(c)) moved.push_back({pt.image[r], pt.sign[r] * v});
      std::sort(moved.begin(), moved.end(), [](const auto& u, const auto& w) { return u.first < w.first; });
      const auto& expect = d.column(ps.image[c]);
      if (moved.size() != expect.size()) return false;
      for (std::size_t k = 0; k < moved.size(); ++k)
        if (moved[k].first != expect[k].first || moved[k].second != ps.sign[c] * expect[k].second) return false;
    }
  }
  return true;
}

namespace detail {

/// Trace of x on a stable subspace given by reduced rows with leading
/// coordinates `leads`: sum_k sign_j * row_k[j] where x e_j = +-e_{lead_k}.
template <class Field>
typename Field::value_type reduced_trace(const Echelon<Field>& e, const SignedPerm& p,
                                         const std::vector<std::size_t>& preimage) {
  const Field& f = e.field();
  typename Field::value_type t{};
  for (std::size_t k = 0; k < e.rank(); ++k) {
    const std::size_t lead = e.leads()[k];
    const std::size_t j = preimage[lead];
    auto c = e.coefficient(k, j);
    if (Field::is_zero(c)) continue;
    t = p.sign[j] > 0 ? f.add(t, c) : f.sub(t, c);
  }
  return t;
}

inline std::vector<std::size_t> preimages(const SignedPerm& p) {
  std::vector<std::size_t> pre(p.image.size());
  for (std::size_t j = 0; j < p.image.size(); ++j) pre[p.image[j]] = j;
  return pre;
}

template <class Field>
std::vector<typename Field::value_type> image_traces(const SparseMatrix& d, const MonomialAction& target,
                                                     const ClassFunction& shape, const Field& field,
                                                     std::size_t* rank_out) {
  auto cs = column_space(d, field);
  if (rank_out) *rank_out = cs.echelon.rank();
  std::vector<typename Field::value_type> out(shape.num_classes());
  for (std::size_t k = 0; k < shape.num_classes(); ++k) {
    auto [g, h] = shape.representative(k);
    SignedPerm p = target.act({g, h});
    out[k] = reduced_trace(cs.echelon, p, preimages(p));
  }
  return out;
}

}  // namespace detail

enum class ImageStrategy {
  Reduced,  // reduced echelon basis, trace read off at the leading coordinates
  Solve     // original pivot columns B, solve x.B = B.X, trace of X
};

/// Character of the image of an equivariant map d: source -> target.
/// Exact mode works over Q.  Modular mode computes the trace on the image mod
/// two primes of the seeded stream (values are integers bounded by the
/// rank, lifted symmetrically), escalating on disagreement; ranks must agree too.
inline ClassFunction image_char(const SparseMatrix& d, const MonomialAction& source, const MonomialAction& target,
                                RankMode mode = RankMode::Exact, ImageStrategy strategy = ImageStrategy::Reduced,
                                bool check_intertwining = true) {
  if (source.b() != target.b() || source.a() != target.a())
    throw std::invalid_argument("image_char: actions of different groups");
  if (check_intertwining && !intertwines(d, source, target))
    throw InternalError("image_char: map does not intertwine the actions");
  ClassFunction chi(target.b(), target.a());
  if (d.is_zero()) return chi;

  if (strategy == ImageStrategy::Solve) {
    const auto basis = colspace_basis(d);
    const std::size_t r = basis.pivot_columns.size();
    SparseMatrix B(d.rows(), r);
    for (std::size_t k = 0; k < r; ++k)
      for (const auto& [row, v] : d.column(basis.pivot_columns[k])) B.add(row, k, v);
    for (std::size_t k = 0; k < chi.num_classes(); ++k) {
      auto [g, h] = chi.representative(k);
      SignedPerm p = target.act({g, h});
      Rational t = 0;
      for (std::size_t c = 0; c < r; ++c) {
        std::vector<Rational> moved(d.rows());
        for (const auto& [row, v] : B.column(c)) moved[p.image[row]] += p.sign[row] * v;
        auto x = solve_in_colspace(B, moved);
        if (!x) throw InternalError("image_char: translated basis vector left the image");
        t += (*x)[c];
      }
      chi[k] = t;
    }
    return chi;
  }

  if (mode == RankMode::Exact) {
    auto tr = detail::image_traces(d, target, chi, RationalField{}, nullptr);
    for (std::size_t k = 0; k < chi.num_classes(); ++k) chi[k] = tr[k];
    return chi;
  }

  std::vector<std::pair<std::size_t, std::vector<long>>> runs;
  for (std::size_t i = 0; runs.size() < 3; ++i) {
    PrimeField f(stream_prime(i));
    std::size_t r = 0;
    std::vector<std::uint64_t> tr;
    try {
      tr = detail::image_traces(d, target, chi, f, &r);
    } catch (const std::domain_error&) {
      continue;
    }
    std::vector<long> lifted(tr.size());
    for (std::size_t k = 0; k < tr.size(); ++k) lifted[k] = f.symmetric(tr[k]);
    for (const auto& prev : runs)
      if (prev.first == r && prev.second == lifted) {
        for (std::size_t k = 0; k < chi.num_classes(); ++k) chi[k] = lifted[k];
        return chi;
      }
    runs.emplace_back(r, std::move(lifted));
  }
  throw UncertifiedError("image_char: modular characters disagree across three primes");
}

/// Character of the G-stable subspace spanned by `basis`, where each basis
/// vector has entry 1 at its own marker coordinate and 0 at the others'
/// (the shape produced by kernel_basis, markers = free columns).
inline ClassFunction subspace_char(const std::vector<std::vector<Rational>>& basis, const MonomialAction& action) {
  ClassFunction chi(action.b(), action.a());
  if (basis.empty()) return chi;
  std::vector<std::size_t> markers;
  for (const auto& v : basis) {
    std::size_t m = v.size();
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] != 1) continue;
      bool unique = true;
      for (const auto& w : basis)
        if (&w != &v && w[j] != 0) unique = false;
      if (unique) {
        m = j;
        break;
      }
    }
    if (m == v.size()) throw std::invalid_argument("subspace_char: basis is not in marker form");
    markers.push_back(m);
  }
  for (std::size_t k = 0; k < chi.num_classes(); ++k) {
    auto [g, h] = chi.representative(k);
    SignedPerm p = action.act({g, h});
    auto pre = detail::preimages(p);
    Rational t = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const std::size_t j = pre[markers[i]];
      t += p.sign[j] * basis[i][j];
    }
    chi[k] = t;
  }
  return chi;
}

/// Character of ker d through an explicit kernel basis.
inline ClassFunction kernel_char(const SparseMatrix& d, const MonomialAction& source) {
  return subspace_char(kernel_basis(d), source);
}

}  // namespace fihl
