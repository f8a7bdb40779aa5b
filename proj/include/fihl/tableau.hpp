#pragma once

// Standard (skew) tableaux: enumeration, the left-to-right filling of a
// horizontal strip, axial distances, Coxeter moves and the restriction
// bijection Tab(lambda; nu) <-> Tab(nu) x Tab(lambda/nu).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "fihl/partition.hpp"

namespace fihl {

struct Box {
  int row = 0;  // 0-based
  int col = 0;  // 0-based
  int content() const { return col - row; }
  friend bool operator==(const Box&, const Box&) = default;
};

/// A bijective labelling of a skew diagram by 1..m.  Holds both the
/// box -> label grid and the label -> box array.
class StandardTableau {
 public:
  StandardTableau() = default;

  /// Builds from label positions: positions[k] is the box of label k+1.
  /// Throws if the filling is not a standard tableau of `shape`.
  StandardTableau(SkewShape shape, std::vector<Box> positions)
      : shape_(std::move(shape)), positions_(std::move(positions)) {
    if (static_cast<int>(positions_.size()) != shape_.size())
      throw std::invalid_argument("tableau: label count differs from shape size");
    grid_.assign(static_cast<std::size_t>(shape_.outer().length()), {});
    for (int r = 0; r < shape_.outer().length(); ++r)
      grid_[static_cast<std::size_t>(r)].assign(static_cast<std::size_t>(shape_.outer()[r]), 0);
    for (std::size_t k = 0; k < positions_.size(); ++k) {
      const Box& b = positions_[k];
      if (!shape_.contains(b.row, b.col)) throw std::invalid_argument("tableau: box outside shape");
      int& slot = grid_[static_cast<std::size_t>(b.row)][static_cast<std::size_t>(b.col)];
      if (slot != 0) throw std::invalid_argument("tableau: repeated box");
      slot = static_cast<int>(k) + 1;
    }
    if (!is_standard()) throw std::invalid_argument("tableau: not standard");
  }

  /// Parses the text form: rows separated by '/', entries by spaces, holes as '.'.
  static StandardTableau parse(const std::string& text) {
    std::vector<std::vector<std::string>> rows(1);
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
      if (tok == "/") {
        rows.emplace_back();
      } else {
        rows.back().push_back(tok);
      }
    }
    std::vector<int> outer, inner;
    std::vector<std::pair<int, Box>> labelled;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      int holes = 0;
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        if (rows[r][c] == ".") {
          if (static_cast<int>(c) != holes) throw std::invalid_argument("tableau: hole after entry");
          ++holes;
        } else {
          labelled.emplace_back(std::stoi(rows[r][c]), Box{static_cast<int>(r), static_cast<int>(c)});
        }
      }
      outer.push_back(static_cast<int>(rows[r].size()));
      inner.push_back(holes);
    }
    std::vector<Box> pos(labelled.size());
    for (auto& [label, box] : labelled) {
      if (label < 1 || label > static_cast<int>(labelled.size()))
        throw std::invalid_argument("tableau: label out of range");
      pos[static_cast<std::size_t>(label - 1)] = box;
    }
    return StandardTableau(SkewShape(Partition(outer), Partition(inner)), std::move(pos));
  }

  const SkewShape& shape() const { return shape_; }
  int size() const { return static_cast<int>(positions_.size()); }

  const Box& position(int label) const {
    if (label < 1 || label > size()) throw std::out_of_range("tableau: unknown label");
    return positions_[static_cast<std::size_t>(label - 1)];
  }

  /// Label at a box, 0 when the box is not in the skew shape.
  int label_at(int row, int col) const {
    if (!shape_.contains(row, col)) return 0;
    return grid_[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
  }

  const std::vector<Box>& positions() const { return positions_; }

  /// Axial distance from j to i: content(j) - content(i).
  int axial(int j, int i) const { return position(j).content() - position(i).content(); }

  /// r_j = a(j+1, j).
  int r(int j) const { return axial(j + 1, j); }

  bool is_standard() const {
    for (int r = 0; r < shape_.outer().length(); ++r)
      for (int c = shape_.inner()[r]; c < shape_.outer()[r]; ++c) {
        int v = label_at(r, c);
        if (shape_.contains(r, c + 1) && label_at(r, c + 1) <= v) return false;
        if (shape_.contains(r + 1, c) && label_at(r + 1, c) <= v) return false;
      }
    return true;
  }

  /// Exchanges labels i and i+1 without any standardness check on the result.
  StandardTableau swapped_unchecked(int i) const {
    StandardTableau t = *this;
    std::swap(t.positions_[static_cast<std::size_t>(i - 1)], t.positions_[static_cast<std::size_t>(i)]);
    const Box& a = t.positions_[static_cast<std::size_t>(i - 1)];
    const Box& b = t.positions_[static_cast<std::size_t>(i)];
    t.grid_[static_cast<std::size_t>(a.row)][static_cast<std::size_t>(a.col)] = i;
    t.grid_[static_cast<std::size_t>(b.row)][static_cast<std::size_t>(b.col)] = i + 1;
    return t;
  }

  std::string to_string() const {
    std::string out;
    for (int r = 0; r < shape_.outer().length(); ++r) {
      if (r) out += " / ";
      for (int c = 0; c < shape_.outer()[r]; ++c) {
        if (c) out += ' ';
        out += shape_.inner().contains(r, c) ? std::string(".") : std::to_string(label_at(r, c));
      }
    }
    return out;
  }

  friend bool operator==(const StandardTableau& x, const StandardTableau& y) {
    return x.shape_ == y.shape_ && x.positions_ == y.positions_;
  }

 private:
  SkewShape shape_;
  std::vector<Box> positions_;
  std::vector<std::vector<int>> grid_;
};

namespace detail {
inline void tableaux_rec(const SkewShape& shape, std::vector<std::vector<int>>& grid,
                         std::vector<Box>& pos, std::vector<StandardTableau>& out) {
  const int m = shape.size();
  if (static_cast<int>(pos.size()) == m) {
    out.emplace_back(shape, pos);
    return;
  }
  const Partition& outer = shape.outer();
  for (int r = 0; r < outer.length(); ++r) {
    // the next free box of row r is the only candidate in that row
    int c = shape.inner()[r];
    while (c < outer[r] && grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0) ++c;
    if (c >= outer[r]) continue;
    bool above_ok = !shape.contains(r - 1, c) ||
                    grid[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c)] != 0;
    if (!above_ok) continue;
    grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = static_cast<int>(pos.size()) + 1;
    pos.push_back({r, c});
    tableaux_rec(shape, grid, pos, out);
    pos.pop_back();
    grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = 0;
  }
}
}  // namespace detail

/// All standard tableaux of a skew shape.  Labels are placed in increasing
/// order, candidate boxes tried by (row, column), which fixes the order.
inline std::vector<StandardTableau> standard_tableaux(const SkewShape& shape) {
  std::vector<std::vector<int>> grid(static_cast<std::size_t>(shape.outer().length()));
  for (int r = 0; r < shape.outer().length(); ++r)
    grid[static_cast<std::size_t>(r)].assign(static_cast<std::size_t>(shape.outer()[r]), 0);
  std::vector<Box> pos;
  std::vector<StandardTableau> out;
  detail::tableaux_rec(shape, grid, pos, out);
  return out;
}

inline std::vector<StandardTableau> standard_tableaux(const Partition& lambda) {
  return standard_tableaux(SkewShape(lambda));
}

/// The filling of a horizontal strip increasing from left to right; the
/// unique standard tableau with every a(j,i) > 0 for i < j.
inline StandardTableau t_rev(const SkewShape& shape) {
  if (!shape.is_horizontal_strip()) throw std::invalid_argument("t_rev: shape is not a horizontal strip");
  auto boxes = shape.boxes();
  std::sort(boxes.begin(), boxes.end(), [](auto x, auto y) { return x.second < y.second; });
  std::vector<Box> pos;
  for (auto [r, c] : boxes) pos.push_back({r, c});
  return StandardTableau(shape, std::move(pos));
}

enum class CoxeterOutcome { SameRow, Swapped };

/// Result of s_i acting on a tableau: SameRow when i and i+1 are adjacent in a
/// row or column (|r_i| = 1), otherwise the standard tableau s_i T.
struct CoxeterMove {
  CoxeterOutcome outcome;
  std::optional<StandardTableau> tableau;
};

inline CoxeterMove coxeter_apply(const StandardTableau& t, int i) {
  if (i < 1 || i >= t.size()) throw std::out_of_range("coxeter_apply: generator index out of range");
  int ri = t.r(i);
  if (ri == 1 || ri == -1) return {CoxeterOutcome::SameRow, std::nullopt};
  return {CoxeterOutcome::Swapped, t.swapped_unchecked(i)};
}

/// Tableaux of shape lambda whose labels 1..|nu| fill exactly nu.
inline std::vector<StandardTableau> relative_tableaux(const Partition& lambda, const Partition& nu) {
  if (!leq(nu, lambda)) throw std::invalid_argument("relative_tableaux: nu not contained in lambda");
  std::vector<StandardTableau> out;
  const int k = nu.size();
  for (const auto& t : standard_tableaux(lambda)) {
    bool ok = true;
    for (int l = 1; l <= k && ok; ++l) ok = nu.contains(t.position(l).row, t.position(l).col);
    if (ok) out.push_back(t);
  }
  return out;
}

/// Forward map of the restriction bijection: (T|_nu, T|_{lambda/nu}) with the
/// skew part relabelled to start at 1.
inline std::pair<StandardTableau, StandardTableau> relative_split(const StandardTableau& t,
                                                                  const Partition& nu) {
  const Partition& lambda = t.shape().outer();
  if (!t.shape().inner().empty()) throw std::invalid_argument("relative_split: skew input");
  if (!leq(nu, lambda)) throw std::invalid_argument("relative_split: nu not contained in lambda");
  const int k = nu.size();
  std::vector<Box> inner_pos(t.positions().begin(), t.positions().begin() + k);
  std::vector<Box> outer_pos(t.positions().begin() + k, t.positions().end());
  return {StandardTableau(SkewShape(nu), std::move(inner_pos)),
          StandardTableau(SkewShape(lambda, nu), std::move(outer_pos))};
}

/// Backward map: reassemble from a tableau of nu and one of lambda/nu.
inline StandardTableau relative_join(const StandardTableau& inner, const StandardTableau& skew) {
  if (!inner.shape().inner().empty() || skew.shape().inner() != inner.shape().outer())
    throw std::invalid_argument("relative_join: incompatible shapes");
  std::vector<Box> pos = inner.positions();
  pos.insert(pos.end(), skew.positions().begin(), skew.positions().end());
  return StandardTableau(SkewShape(skew.shape().outer()), std::move(pos));
}

/// Number of standard tableaux of shape lambda by the hook-length formula.
inline std::uint64_t dim_irrep(const Partition& lambda) {
  mpz_class num = 1, den = 1;
  const Partition t = lambda.transpose();
  const int n = lambda.size();
  for (int k = 2; k <= n; ++k) num *= k;
  for (int r = 0; r < lambda.length(); ++r)
    for (int c = 0; c < lambda[r]; ++c) den *= (lambda[r] - c - 1) + (t[c] - r - 1) + 1;
  mpz_class q = num / den;
  return q.get_ui();
}

}  // namespace fihl
