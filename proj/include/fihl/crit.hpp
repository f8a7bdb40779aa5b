#pragma once

// The sets M(lambda, mu) of partitions nu with lambda/nu a horizontal strip
// and mu/nu a vertical strip, critical pairs, the (gamma, delta) codec, the
// transpose duality and the predicted homology tables.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fihl/decomposition.hpp"
#include "fihl/error.hpp"
#include "fihl/partition.hpp"

namespace fihl {

enum class MSetMethod { Brute, Interval };

struct MSet {
  Partition lambda;
  Partition mu;
  std::vector<Partition> members;  // enumeration order
  std::optional<Partition> floor;  // least member when nonempty

  bool empty() const { return members.empty(); }
  std::size_t size() const { return members.size(); }
};

inline bool in_m_set(const Partition& lambda, const Partition& mu, const Partition& nu) {
  return is_horizontal_strip(lambda, nu) && is_vertical_strip(mu, nu);
}

namespace detail {

/// Outer corners of tau, scanned right to left by column.
inline std::vector<std::pair<int, int>> outer_corners(const Partition& tau) {
  std::vector<std::pair<int, int>> out;
  for (int r = 0; r < tau.length(); ++r)
    if (tau[r + 1] < tau[r]) out.emplace_back(r, tau[r] - 1);
  std::sort(out.begin(), out.end(), [](auto x, auto y) { return x.second > y.second; });
  return out;
}

inline Partition remove_boxes(const Partition& tau, const std::vector<std::pair<int, int>>& boxes) {
  std::vector<int> parts = tau.parts();
  for (auto [r, c] : boxes) --parts[static_cast<std::size_t>(r)];
  return Partition(std::move(parts));
}

}  // namespace detail

/// Brute force filters every nu contained in lambda meet mu.  The interval
/// method removes from lambda meet mu each outer corner with no right
/// neighbour in mu and no lower neighbour in lambda, and returns every
/// partition between that floor and lambda meet mu.
inline MSet m_set(const Partition& lambda, const Partition& mu, MSetMethod method = MSetMethod::Interval) {
  MSet out{lambda, mu, {}, std::nullopt};
  const Partition tau = meet(lambda, mu);
  if (method == MSetMethod::Brute) {
    for (const auto& nu : subpartitions(tau))
      if (in_m_set(lambda, mu, nu)) out.members.push_back(nu);
    if (!out.members.empty()) {
      Partition lo = out.members.front();
      for (const auto& nu : out.members) lo = fihl::meet(lo, nu);
      out.floor = lo;
    }
    return out;
  }
  if (!in_m_set(lambda, mu, tau)) return out;
  std::vector<std::pair<int, int>> removable;
  for (auto [r, c] : detail::outer_corners(tau))
    if (!mu.contains(r, c + 1) && !lambda.contains(r + 1, c)) removable.emplace_back(r, c);
  const std::size_t k = removable.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<std::pair<int, int>> pick;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) pick.push_back(removable[i]);
    Partition nu = detail::remove_boxes(tau, pick);
    if (!in_m_set(lambda, mu, nu))
      throw InternalError("m_set: interval member " + nu.to_string() + " fails the strip conditions");
    out.members.push_back(std::move(nu));
  }
  std::sort(out.members.begin(), out.members.end(), EnumerationOrder{});
  out.floor = detail::remove_boxes(tau, removable);
  return out;
}

/// Both methods, with disagreement raised as InternalError.
inline MSet m_set_checked(const Partition& lambda, const Partition& mu) {
  MSet brute = m_set(lambda, mu, MSetMethod::Brute);
  MSet interval = m_set(lambda, mu, MSetMethod::Interval);
  if (brute.members != interval.members || brute.floor != interval.floor)
    throw InternalError("m_set: brute force and interval methods disagree at (" + lambda.to_string() + "; " +
                        mu.to_string() + ")");
  return interval;
}

struct CritPair {
  Partition lambda;  // |- b
  Partition mu;      // |- a
  int degree = 0;    // |mu| - |lambda meet mu|

  friend bool operator==(const CritPair&, const CritPair&) = default;
};

inline bool is_critical(const Partition& lambda, const Partition& mu) { return m_set(lambda, mu).size() == 1; }

inline int critical_degree(const Partition& lambda, const Partition& mu) {
  return mu.size() - meet(lambda, mu).size();
}

/// All (lambda |- b, mu |- a) with M(lambda, mu) a singleton, in pair order.
inline std::vector<CritPair> crit_set(int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("crit_set: negative size");
  std::vector<CritPair> out;
  for (const auto& lambda : partitions_of(b))
    for (const auto& mu : partitions_of(a))
      if (is_critical(lambda, mu)) out.push_back({lambda, mu, critical_degree(lambda, mu)});
  return out;
}

struct GammaDelta {
  Partition gamma;
  Partition delta;
  friend bool operator==(const GammaDelta&, const GammaDelta&) = default;
};

/// Whether (gamma, delta) satisfies hs(gamma) meet vstrip(delta) = gamma meet delta.
inline bool codec_admissible(const Partition& gamma, const Partition& delta) {
  return meet(hs(gamma), vstrip(delta)) == meet(gamma, delta);
}

/// lambda = gamma join vstrip(delta), mu = hs(gamma) join delta.
inline CritPair encode(const Partition& gamma, const Partition& delta) {
  if (!codec_admissible(gamma, delta))
    throw std::invalid_argument("encode: hs(gamma) meet vstrip(delta) differs from gamma meet delta");
  Partition lambda = join(gamma, vstrip(delta));
  Partition mu = join(hs(gamma), delta);
  const int degree = critical_degree(lambda, mu);
  return {std::move(lambda), std::move(mu), degree};
}

/// Same, also requiring |lambda| = b and |mu| = a.
inline CritPair encode(const Partition& gamma, const Partition& delta, int a, int b) {
  CritPair p = encode(gamma, delta);
  if (p.lambda.size() != b || p.mu.size() != a) throw std::invalid_argument("encode: sizes do not match (a, b)");
  return p;
}

/// delta: the shortest run of leading rows of mu containing mu/(lambda meet mu);
/// gamma: the shortest run of leading columns of lambda containing
/// lambda/(lambda meet mu).
inline GammaDelta decode(const CritPair& pair) {
  if (!is_critical(pair.lambda, pair.mu)) throw std::invalid_argument("decode: pair is not critical");
  const Partition tau = meet(pair.lambda, pair.mu);
  int rows = 0;
  for (int r = 0; r < pair.mu.length(); ++r)
    if (pair.mu[r] > tau[r]) rows = r + 1;
  Partition delta(std::vector<int>(pair.mu.parts().begin(), pair.mu.parts().begin() + rows));
  int cols = 0;
  for (int r = 0; r < pair.lambda.length(); ++r)
    if (pair.lambda[r] > tau[r]) cols = std::max(cols, pair.lambda[r]);
  std::vector<int> g;
  for (int p : pair.lambda.parts()) g.push_back(std::min(p, cols));
  GammaDelta out{Partition(std::move(g)), std::move(delta)};
  CritPair back = encode(out.gamma, out.delta);
  if (back.lambda != pair.lambda || back.mu != pair.mu)
    throw InternalError("decode: (gamma, delta) does not re-encode to the input pair");
  return out;
}

/// (lambda, mu) -> (mu transpose, lambda transpose), critical in the swapped bidegree.
inline CritPair dagger_dual(const CritPair& pair) {
  Partition lambda = pair.mu.transpose(), mu = pair.lambda.transpose();
  const int degree = critical_degree(lambda, mu);
  if (!is_critical(lambda, mu)) throw InternalError("dagger_dual: image is not critical");
  return {std::move(lambda), std::move(mu), degree};
}

/// Degree n -> {(lambda, mu): 1} over critical pairs of degree n, n = 0..a.
inline std::vector<DecompositionTable> homology_prediction(int a, int b) {
  std::vector<DecompositionTable> out(static_cast<std::size_t>(std::max(a, 0) + 1));
  for (const auto& p : crit_set(a, b)) out[static_cast<std::size_t>(p.degree)].add(p.lambda, p.mu, 1);
  return out;
}

/// Alternating sum over critical pairs, sign (-1)^degree.
inline DecompositionTable critical_euler_sum(int a, int b) {
  DecompositionTable out;
  for (const auto& p : crit_set(a, b)) out.add(p.lambda, p.mu, p.degree % 2 ? -1 : 1);
  return out;
}

enum class CellStatus { Match, StrictInclusion, Violation };

inline std::string to_string(CellStatus s) {
  switch (s) {
    case CellStatus::Match:
      return "match";
    case CellStatus::StrictInclusion:
      return "strict-inclusion";
    case CellStatus::Violation:
      return "VIOLATION";
  }
  return "?";
}

/// Per-degree comparison of predicted against computed homology.
struct ConjectureReport {
  int a = 0;
  int b = 0;
  std::vector<DecompositionTable> predicted;
  std::vector<DecompositionTable> computed;
  std::vector<CellStatus> degree_status;
  CellStatus status = CellStatus::Match;
  bool euler_agrees = false;
};

inline CellStatus compare_tables(const DecompositionTable& predicted, const DecompositionTable& computed) {
  if (predicted == computed) return CellStatus::Match;
  if (predicted.included_in(computed)) return CellStatus::StrictInclusion;
  return CellStatus::Violation;
}

inline ConjectureReport conjecture_report(int a, int b, const std::vector<DecompositionTable>& computed) {
  ConjectureReport rep;
  rep.a = a;
  rep.b = b;
  rep.predicted = homology_prediction(a, b);
  rep.computed = computed;
  rep.computed.resize(std::max(rep.computed.size(), rep.predicted.size()));
  rep.predicted.resize(rep.computed.size());
  DecompositionTable euler_computed;
  for (std::size_t n = 0; n < rep.computed.size(); ++n) {
    CellStatus s = compare_tables(rep.predicted[n], rep.computed[n]);
    rep.degree_status.push_back(s);
    if (s == CellStatus::Violation || (s == CellStatus::StrictInclusion && rep.status == CellStatus::Match))
      rep.status = s;
    euler_computed += rep.computed[n].scaled(n % 2 ? -1 : 1);
  }
  rep.euler_agrees = euler_computed == critical_euler_sum(a, b);
  return rep;
}

}  // namespace fihl
