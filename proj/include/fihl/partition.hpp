#pragma once

// Integer partitions, the containment order, and the diagram surgery used
// throughout: removing the first row or column, meets and joins, strip tests
// and the two Pieri expansions.

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fihl {

/// A weakly decreasing list of positive integers.  Trailing zeros are trimmed
/// on construction so that (0) and () compare equal.
class Partition {
 public:
  Partition() = default;

  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw std::invalid_argument("partition parts must be weakly decreasing");
    }
  }

  /// Parses "4,2,1"; "0" and "" both give the empty partition.
  static Partition parse(std::string_view text) {
    std::vector<int> parts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t comma = text.find(',', pos);
      if (comma == std::string_view::npos) comma = text.size();
      std::string_view tok = text.substr(pos, comma - pos);
      while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
      while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
      if (tok.empty()) {
        if (text.empty()) break;
        throw std::invalid_argument("malformed partition '" + std::string(text) + "'");
      }
      int value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || value < 0)
        throw std::invalid_argument("malformed partition '" + std::string(text) + "'");
      parts.push_back(value);
      pos = comma + 1;
    }
    // "0" is the empty partition; zeros elsewhere are trimmed only at the end.
    return Partition(std::move(parts));
  }

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }

  int size() const {
    int n = 0;
    for (int p : parts_) n += p;
    return n;
  }

  /// Part in 0-based row i, zero beyond the length.
  int operator[](int i) const {
    return (i >= 0 && i < length()) ? parts_[static_cast<std::size_t>(i)] : 0;
  }

  /// Whether the 0-based box (row, col) lies in the Young diagram.
  bool contains(int row, int col) const { return row >= 0 && col >= 0 && col < (*this)[row]; }

  Partition transpose() const {
    std::vector<int> t(parts_.empty() ? 0 : static_cast<std::size_t>(parts_.front()), 0);
    for (int p : parts_)
      for (int c = 0; c < p; ++c) ++t[static_cast<std::size_t>(c)];
    return Partition(std::move(t));
  }

  std::string to_string() const {
    if (parts_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(parts_[i]);
    }
    return out;
  }

  friend bool operator==(const Partition&, const Partition&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Partition& p) {
    return os << '(' << p.to_string() << ')';
  }

 private:
  std::vector<int> parts_;
};

/// Enumeration order: smaller size first, then reverse-lexicographic, so
/// (3) < (2,1) < (1,1,1).  Every sorted output in the library uses it.
struct EnumerationOrder {
  bool operator()(const Partition& p, const Partition& q) const {
    if (p.size() != q.size()) return p.size() < q.size();
    return std::lexicographical_compare(q.parts().begin(), q.parts().end(), p.parts().begin(),
                                        p.parts().end());
  }
};

namespace detail {
inline void partitions_rec(int remaining, int max_part, std::vector<int>& cur,
                           std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

/// All partitions of n in reverse-lexicographic order.
inline std::vector<Partition> partitions_of(int n) {
  if (n < 0) throw std::invalid_argument("partitions_of: negative size");
  std::vector<Partition> out;
  std::vector<int> cur;
  detail::partitions_rec(n, n, cur, out);
  return out;
}

/// mu is contained in lambda (mu_i <= lambda_i for every i).
inline bool leq(const Partition& mu, const Partition& lambda) {
  if (mu.length() > lambda.length()) return false;
  for (int i = 0; i < mu.length(); ++i)
    if (mu[i] > lambda[i]) return false;
  return true;
}

enum class Axis { Row, Column };

/// Row axis drops the first row (hs); column axis drops the first column.
inline Partition strip_reduce(const Partition& lambda, Axis axis) {
  const auto& p = lambda.parts();
  if (axis == Axis::Row) {
    if (p.empty()) return {};
    return Partition(std::vector<int>(p.begin() + 1, p.end()));
  }
  std::vector<int> out;
  for (int x : p)
    if (x > 1) out.push_back(x - 1);
  return Partition(std::move(out));
}

inline Partition hs(const Partition& lambda) { return strip_reduce(lambda, Axis::Row); }
inline Partition vstrip(const Partition& lambda) { return strip_reduce(lambda, Axis::Column); }

inline Partition meet(const Partition& lambda, const Partition& mu) {
  std::vector<int> out(static_cast<std::size_t>(std::min(lambda.length(), mu.length())));
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = std::min(lambda[static_cast<int>(i)], mu[static_cast<int>(i)]);
  return Partition(std::move(out));
}

inline Partition join(const Partition& lambda, const Partition& mu) {
  std::vector<int> out(static_cast<std::size_t>(std::max(lambda.length(), mu.length())));
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = std::max(lambda[static_cast<int>(i)], mu[static_cast<int>(i)]);
  return Partition(std::move(out));
}

inline std::pair<Partition, Partition> meet_join(const Partition& lambda, const Partition& mu) {
  return {meet(lambda, mu), join(lambda, mu)};
}

enum class Orientation { Horizontal, Vertical };

/// lambda/mu has at most one box per column (horizontal) or per row
/// (vertical).  Uses the hs/vstrip criterion.
inline bool strip_test(const Partition& lambda, const Partition& mu, Orientation orientation) {
  if (!leq(mu, lambda)) throw std::invalid_argument("strip_test: mu is not contained in lambda");
  return orientation == Orientation::Horizontal ? leq(hs(lambda), mu) : leq(vstrip(lambda), mu);
}

/// Same predicate computed from the definition by counting skew boxes.
inline bool strip_test_by_boxes(const Partition& lambda, const Partition& mu,
                                Orientation orientation) {
  if (!leq(mu, lambda)) throw std::invalid_argument("strip_test: mu is not contained in lambda");
  if (orientation == Orientation::Horizontal) {
    for (int c = 0; c < lambda[0]; ++c) {
      int count = 0;
      for (int r = 0; r < lambda.length(); ++r)
        if (lambda.contains(r, c) && !mu.contains(r, c)) ++count;
      if (count > 1) return false;
    }
    return true;
  }
  for (int r = 0; r < lambda.length(); ++r)
    if (lambda[r] - mu[r] > 1) return false;
  return true;
}

inline bool is_horizontal_strip(const Partition& lambda, const Partition& mu) {
  return leq(mu, lambda) && leq(hs(lambda), mu);
}

inline bool is_vertical_strip(const Partition& lambda, const Partition& mu) {
  return leq(mu, lambda) && leq(vstrip(lambda), mu);
}

enum class PieriKind { Trivial, Sign };

/// Partitions mu of |nu|+n with nu <= mu and mu/nu a horizontal strip
/// (trivial) or vertical strip (sign); each occurs with multiplicity one.
inline std::vector<Partition> pieri_expand(const Partition& nu, int n, PieriKind kind) {
  if (n < 0) throw std::invalid_argument("pieri_expand: negative count");
  std::vector<Partition> out;
  for (const Partition& mu : partitions_of(nu.size() + n)) {
    if (!leq(nu, mu)) continue;
    bool ok = kind == PieriKind::Trivial ? leq(hs(mu), nu) : leq(vstrip(mu), nu);
    if (ok) out.push_back(mu);
  }
  return out;
}

/// All partitions contained in lambda, in enumeration order.
inline std::vector<Partition> subpartitions(const Partition& lambda) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int row, int bound) {
    out.emplace_back(cur);
    if (row >= lambda.length()) return;
    for (int v = 1; v <= std::min(bound, lambda[row]); ++v) {
      cur.push_back(v);
      rec(row + 1, v);
      cur.pop_back();
    }
  };
  rec(0, lambda.empty() ? 0 : lambda[0]);
  std::sort(out.begin(), out.end(), EnumerationOrder{});
  return out;
}

/// A skew diagram outer/inner with inner contained in outer.
class SkewShape {
 public:
  SkewShape() = default;
  explicit SkewShape(Partition outer, Partition inner = {})
      : outer_(std::move(outer)), inner_(std::move(inner)) {
    if (!leq(inner_, outer_)) throw std::invalid_argument("skew shape: inner not contained in outer");
  }

  const Partition& outer() const { return outer_; }
  const Partition& inner() const { return inner_; }
  int size() const { return outer_.size() - inner_.size(); }

  bool contains(int row, int col) const {
    return outer_.contains(row, col) && !inner_.contains(row, col);
  }

  bool is_horizontal_strip() const { return leq(hs(outer_), inner_); }

  /// Boxes in row-major order, 0-based (row, column).
  std::vector<std::pair<int, int>> boxes() const {
    std::vector<std::pair<int, int>> out;
    for (int r = 0; r < outer_.length(); ++r)
      for (int c = inner_[r]; c < outer_[r]; ++c) out.emplace_back(r, c);
    return out;
  }

  friend bool operator==(const SkewShape&, const SkewShape&) = default;

 private:
  Partition outer_;
  Partition inner_;
};

}  // namespace fihl

template <>
struct std::hash<fihl::Partition> {
  std::size_t operator()(const fihl::Partition& p) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int x : p.parts()) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
    return h;
  }
};
