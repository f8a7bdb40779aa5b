#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fihl/partition.hpp"

namespace fihl {

using PartitionPair = std::pair<Partition, Partition>;

/// (lambda, mu) ordered by lambda then mu, each in enumeration order.
struct PairOrder {
  bool operator()(const PartitionPair& x, const PartitionPair& y) const {
    EnumerationOrder less;
    if (less(x.first, y.first)) return true;
    if (less(y.first, x.first)) return false;
    return less(x.second, y.second);
  }
};

/// Multiset of irreducibles S^lambda (x) S^mu with integer multiplicities.
/// Negative entries only arise for virtual characters (Euler sums); zero
/// entries are never stored.  Sym(n) tables use mu = ().
class DecompositionTable {
 public:
  using Map = std::map<PartitionPair, long, PairOrder>;

  void add(const Partition& lambda, const Partition& mu, long mult) {
    if (mult == 0) return;
    auto key = PartitionPair{lambda, mu};
    long& slot = entries_[key];
    slot += mult;
    if (slot == 0) entries_.erase(key);
  }

  long at(const Partition& lambda, const Partition& mu) const {
    auto it = entries_.find({lambda, mu});
    return it == entries_.end() ? 0 : it->second;
  }

  const Map& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  bool nonnegative() const {
    for (const auto& [k, m] : entries_)
      if (m < 0) return false;
    return true;
  }

  /// Every multiplicity here is at most the corresponding one in `other`.
  bool included_in(const DecompositionTable& other) const {
    for (const auto& [k, m] : entries_)
      if (m > other.at(k.first, k.second)) return false;
    return true;
  }

  DecompositionTable& operator+=(const DecompositionTable& other) {
    for (const auto& [k, m] : other.entries_) add(k.first, k.second, m);
    return *this;
  }

  DecompositionTable& operator-=(const DecompositionTable& other) {
    for (const auto& [k, m] : other.entries_) add(k.first, k.second, -m);
    return *this;
  }

  friend DecompositionTable operator+(DecompositionTable x, const DecompositionTable& y) { return x += y; }
  friend DecompositionTable operator-(DecompositionTable x, const DecompositionTable& y) { return x -= y; }

  DecompositionTable scaled(long c) const {
    DecompositionTable out;
    for (const auto& [k, m] : entries_) out.add(k.first, k.second, c * m);
    return out;
  }

  friend bool operator==(const DecompositionTable& x, const DecompositionTable& y) {
    return x.entries_ == y.entries_;
  }

  /// One "lambda;mu;mult" line per entry (partitions comma-separated).
  std::string to_csv() const {
    std::ostringstream os;
    os << "lambda;mu;mult\n";
    for (const auto& [k, m] : entries_) os << k.first.to_string() << ';' << k.second.to_string() << ';' << m << '\n';
    return os.str();
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [k, m] : entries_) {
      if (!first) os << ", ";
      first = false;
      os << '(' << k.first << ',' << k.second << "):" << m;
    }
    os << '}';
    return os.str();
  }

 private:
  Map entries_;
};

inline std::ostream& operator<<(std::ostream& os, const DecompositionTable& t) { return os << t.to_string(); }

}  // namespace fihl
