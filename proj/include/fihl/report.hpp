#pragma once

// JSON and CSV emission, the run configuration and command dispatch, and the
// resumable conjecture sweep.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "fihl/crit.hpp"
#include "fihl/decomposition.hpp"
#include "fihl/error.hpp"
#include "fihl/koszul.hpp"
#include "fihl/theta.hpp"
#include "fihl/transfer.hpp"

namespace fihl {

using Json = nlohmann::ordered_json;

inline Json to_json(const DecompositionTable& t) {
  Json out = Json::array();
  for (const auto& [k, m] : t.entries())
    out.push_back({{"lambda", k.first.to_string()}, {"mu", k.second.to_string()}, {"mult", m}});
  return out;
}

inline DecompositionTable table_from_json(const Json& j) {
  DecompositionTable out;
  for (const auto& e : j)
    out.add(Partition::parse(e.at("lambda").get<std::string>()), Partition::parse(e.at("mu").get<std::string>()),
            e.at("mult").get<long>());
  return out;
}

inline Json to_json(const std::vector<DecompositionTable>& per_degree) {
  Json out = Json::object();
  for (std::size_t n = 0; n < per_degree.size(); ++n) out[std::to_string(n)] = to_json(per_degree[n]);
  return out;
}

inline std::string rank_mode_name(RankMode m) { return m == RankMode::Exact ? "exact" : "modular"; }

inline RankMode parse_rank_mode(const std::string& s) {
  if (s == "exact") return RankMode::Exact;
  if (s == "modular") return RankMode::Modular;
  throw std::invalid_argument("--rank-mode: expected exact or modular, got '" + s + "'");
}

enum class Command { H0, CheckH0, Homology, Euler, Theta, Crit, Conjecture };

struct RunConfig {
  Command command = Command::H0;
  int a = 0;
  int b = 0;
  std::optional<int> degree;  // homology --n
  int max_a = 0;
  int max_b = 0;
  RankMode rank_mode = RankMode::Exact;
  bool force_exact = false;
  bool predicted = false;
  bool gamma_delta = false;
  bool oracle = false;
  bool csv = false;
  bool timing = false;
  std::string lambda, nu, kappa;
  std::string out;  // empty: standard output
  unsigned threads = 1;
};

/// FIHL_THREADS when set to a positive integer, else 1.
inline unsigned threads_from_env() {
  const char* v = std::getenv("FIHL_THREADS");
  if (!v || !*v) return 1;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1 || n > 256) throw std::invalid_argument("FIHL_THREADS: expected a positive integer");
  return static_cast<unsigned>(n);
}

/// Requested mode, promoted to modular for matrices wider than the threshold
/// unless exact arithmetic is forced.
inline RankMode effective_mode(RankMode requested, std::size_t widest, bool force_exact) {
  if (force_exact) return RankMode::Exact;
  if (requested == RankMode::Exact && default_rank_mode(widest) == RankMode::Modular) return RankMode::Modular;
  return requested;
}

inline std::size_t transfer_width(int a, int b) {
  if (a < 1 || a > b) return 0;
  return static_cast<std::size_t>(a) * hom_basis(a - 1, b).injections.size();
}

inline std::size_t chain_width(int a, int b) {
  std::size_t w = 0;
  for (int n = 0; n <= a; ++n) w = std::max(w, static_cast<std::size_t>(chain_dimension(a, b, n).get_ui()));
  return w;
}

inline void check_range(const char* flag, int v, int lo, int hi) {
  if (v < lo || v > hi)
    throw std::invalid_argument(std::string(flag) + ": value " + std::to_string(v) + " outside [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

/// Validates ranges for the selected command; throws invalid_argument naming the flag.
inline void validate(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::H0:
    case Command::Homology:
    case Command::Euler:
    case Command::Crit:
      check_range("--a", cfg.a, 0, cfg.command == Command::Crit ? 12 : 8);
      check_range("--b", cfg.b, 0, cfg.command == Command::Crit ? 12 : 8);
      if (cfg.command == Command::H0 && cfg.predicted) check_range("--a", cfg.a, 1, 8);
      if (cfg.degree) check_range("--n", *cfg.degree, 0, cfg.a);
      break;
    case Command::CheckH0:
      check_range("--max-b", cfg.max_b, 1, 7);
      break;
    case Command::Conjecture:
      check_range("--max-a", cfg.max_a, 1, 7);
      check_range("--max-b", cfg.max_b, 1, 7);
      break;
    case Command::Theta:
      break;
  }
  if (cfg.csv && cfg.command != Command::H0 && cfg.command != Command::Homology && cfg.command != Command::Crit)
    throw std::invalid_argument("--csv: only h0, homology and crit have a CSV form");
}

inline std::string homology_csv(const std::vector<DecompositionTable>& per_degree) {
  std::ostringstream os;
  os << "degree;lambda;mu;mult\n";
  for (std::size_t n = 0; n < per_degree.size(); ++n)
    for (const auto& [k, m] : per_degree[n].entries())
      os << n << ';' << k.first.to_string() << ';' << k.second.to_string() << ';' << m << '\n';
  return os.str();
}

inline Json conjecture_cell_json(const ConjectureReport& rep) {
  Json cell;
  cell["a"] = rep.a;
  cell["b"] = rep.b;
  cell["status"] = to_string(rep.status);
  Json st = Json::array();
  for (CellStatus s : rep.degree_status) st.push_back(to_string(s));
  cell["degree_status"] = st;
  cell["euler"] = rep.euler_agrees;
  cell["predicted"] = to_json(rep.predicted);
  cell["computed"] = to_json(rep.computed);
  return cell;
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << text;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace detail

/// One checkpoint file per (a, b) cell in `<out>.cells/`; existing cells are
/// reused.  Cells run on a pool of `threads` workers.
inline Json conjecture_sweep(const RunConfig& cfg) {
  struct Cell {
    int a, b;
    Json result;
  };
  std::vector<Cell> cells;
  for (int b = 1; b <= cfg.max_b; ++b)
    for (int a = 1; a <= cfg.max_a; ++a) cells.push_back({a, b, Json()});

  std::optional<std::filesystem::path> dir;
  if (!cfg.out.empty()) {
    dir = std::filesystem::path(cfg.out + ".cells");
    std::filesystem::create_directories(*dir);
  }
  auto cell_path = [&](const Cell& c) {
    return *dir / ("a" + std::to_string(c.a) + "_b" + std::to_string(c.b) + ".json");
  };

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= cells.size()) return;
      Cell& c = cells[k];
      try {
        if (dir && std::filesystem::exists(cell_path(c))) {
          std::ifstream f(cell_path(c));
          Json stored = Json::parse(f, nullptr, false);
          if (!stored.is_discarded() && stored.value("rank_mode", "") == rank_mode_name(cfg.rank_mode)) {
            stored.erase("rank_mode");
            c.result = std::move(stored);
            continue;
          }
        }
        const auto start = std::chrono::steady_clock::now();
        const RankMode mode = effective_mode(cfg.rank_mode, chain_width(c.a, c.b), cfg.force_exact);
        ConjectureReport rep = conjecture_report(c.a, c.b, mode);
        c.result = conjecture_cell_json(rep);
        if (cfg.timing)
          c.result["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (dir) {
          Json stored = c.result;
          stored["rank_mode"] = rank_mode_name(cfg.rank_mode);
          detail::write_file(cell_path(c), stored.dump(2) + "\n");
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = cells.size();
        return;
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cells.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  Json out;
  out["max_a"] = cfg.max_a;
  out["max_b"] = cfg.max_b;
  out["rank_mode"] = rank_mode_name(cfg.rank_mode);
  Json list = Json::array();
  long match = 0, strict = 0, violation = 0;
  for (auto& c : cells) {
    const std::string s = c.result.at("status").get<std::string>();
    if (s == "match") ++match;
    if (s == "strict-inclusion") ++strict;
    if (s == "VIOLATION") ++violation;
    if (!cfg.timing) c.result.erase("seconds");
    list.push_back(std::move(c.result));
  }
  out["cells"] = std::move(list);
  out["summary"] = {{"match", match}, {"strict-inclusion", strict}, {"VIOLATION", violation}};
  return out;
}

struct RunResult {
  int exit_code = 0;
  std::string text;  // what was emitted
};

/// Dispatches a validated configuration.  Exit 0 on success, 1 when a proven
/// identity fails; exceptions propagate to the caller.
inline RunResult run_command(const RunConfig& cfg) {
  validate(cfg);
  RunResult res;
  Json j;
  std::optional<std::string> raw;
  switch (cfg.command) {
    case Command::H0: {
      DecompositionTable t;
      if (cfg.predicted) {
        t = h0_predicted(cfg.a, cfg.b);
      } else {
        t = h0_computed(cfg.a, cfg.b, effective_mode(cfg.rank_mode, transfer_width(cfg.a, cfg.b), cfg.force_exact));
      }
      if (cfg.csv) raw = t.to_csv();
      j = to_json(t);
      break;
    }
    case Command::CheckH0: {
      Json cells = Json::array();
      bool all = true;
      for (int b = 1; b <= cfg.max_b; ++b)
        for (int a = 1; a <= b; ++a) {
          const RankMode mode = effective_mode(cfg.rank_mode, transfer_width(a, b), cfg.force_exact);
          const bool pass = h0_computed(a, b, mode) == h0_predicted(a, b);
          all = all && pass;
          cells.push_back({{"a", a}, {"b", b}, {"pass", pass}});
        }
      j["cells"] = cells;
      j["all_pass"] = all;
      if (!all) res.exit_code = 1;
      break;
    }
    case Command::Homology: {
      const RankMode mode = effective_mode(cfg.rank_mode, chain_width(cfg.a, cfg.b), cfg.force_exact);
      std::vector<DecompositionTable> h = homology_decomposition(cfg.a, cfg.b, mode, cfg.degree);
      if (cfg.degree) {
        j = Json::object();
        j[std::to_string(*cfg.degree)] = to_json(h[static_cast<std::size_t>(*cfg.degree)]);
        if (cfg.csv) {
          std::vector<DecompositionTable> only(h.size());
          only[static_cast<std::size_t>(*cfg.degree)] = h[static_cast<std::size_t>(*cfg.degree)];
          raw = homology_csv(only);
        }
      } else {
        j = to_json(h);
        if (cfg.csv) raw = homology_csv(h);
      }
      break;
    }
    case Command::Euler: {
      const RankMode mode = effective_mode(cfg.rank_mode, chain_width(cfg.a, cfg.b), cfg.force_exact);
      EulerReport rep = euler_check(cfg.a, cfg.b, mode);
      j["ok"] = rep.ok;
      j["critical"] = to_json(rep.critical);
      j["homology"] = to_json(rep.homology);
      j["chains"] = to_json(rep.chains);
      if (!rep.ok) res.exit_code = 1;
      break;
    }
    case Command::Theta: {
      ThetaContext ctx{Partition::parse(cfg.lambda), Partition::parse(cfg.nu), Partition::parse(cfg.kappa)};
      const Rational th = theta_exact(ctx);
      j["theta"] = th.get_str();
      if (cfg.oracle) {
        const double o = oracle_numeric(ctx);
        const double err = std::abs(th.get_d() - o);
        j["oracle"] = o;
        j["abs_err"] = err;
        if (err > 1e-8) res.exit_code = 1;
      }
      break;
    }
    case Command::Crit: {
      j = Json::array();
      std::ostringstream csv;
      csv << (cfg.gamma_delta ? "lambda;mu;degree;gamma;delta\n" : "lambda;mu;degree\n");
      for (const auto& p : crit_set(cfg.a, cfg.b)) {
        Json e{{"lambda", p.lambda.to_string()}, {"mu", p.mu.to_string()}, {"degree", p.degree}};
        csv << p.lambda.to_string() << ';' << p.mu.to_string() << ';' << p.degree;
        if (cfg.gamma_delta) {
          GammaDelta gd = decode(p);
          e["gamma"] = gd.gamma.to_string();
          e["delta"] = gd.delta.to_string();
          csv << ';' << gd.gamma.to_string() << ';' << gd.delta.to_string();
        }
        csv << '\n';
        j.push_back(std::move(e));
      }
      if (cfg.csv) raw = csv.str();
      break;
    }
    case Command::Conjecture: {
      j = conjecture_sweep(cfg);
      if (j["summary"]["VIOLATION"].get<long>() > 0) res.exit_code = 1;
      break;
    }
  }
  res.text = raw ? *raw : j.dump(2) + "\n";
  return res;
}

}  // namespace fihl
