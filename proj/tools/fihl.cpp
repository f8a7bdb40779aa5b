#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "fihl/report.hpp"

namespace {

void add_rank_options(CLI::App* cmd, std::string& mode, bool& force_exact) {
  cmd->add_option("--rank-mode", mode, "exact or modular")->check(CLI::IsMember({"exact", "modular"}));
  cmd->add_flag("--force-exact", force_exact, "never switch to modular ranks for wide matrices");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FI-homology of k hom_FI(-, b)^tr: cokernels, Koszul homology, theta coefficients"};
  app.require_subcommand(1);
  app.fallthrough();
  fihl::RunConfig cfg;
  std::string mode = "exact";
  app.add_option("--out", cfg.out, "write output to this file instead of stdout");
  app.add_flag("--csv", cfg.csv, "CSV instead of JSON (h0, homology, crit)");

  auto* h0 = app.add_subcommand("h0", "equivariant cokernel of Tr_{a,b}");
  h0->add_option("--a", cfg.a)->required();
  h0->add_option("--b", cfg.b)->required();
  h0->add_flag("--predicted", cfg.predicted, "closed-form prediction instead of the computation");
  add_rank_options(h0, mode, cfg.force_exact);

  auto* check = app.add_subcommand("check-h0", "compare computed and predicted H_0 for 1 <= a <= b <= max-b");
  check->add_option("--max-b", cfg.max_b)->required();
  add_rank_options(check, mode, cfg.force_exact);

  auto* hom = app.add_subcommand("homology", "Koszul homology decomposed per degree");
  hom->add_option("--a", cfg.a)->required();
  hom->add_option("--b", cfg.b)->required();
  int degree = -1;
  auto* n_opt = hom->add_option("--n", degree, "single degree");
  add_rank_options(hom, mode, cfg.force_exact);

  auto* euler = app.add_subcommand("euler", "Euler characteristic against the signed critical sum");
  euler->add_option("--a", cfg.a)->required();
  euler->add_option("--b", cfg.b)->required();
  add_rank_options(euler, mode, cfg.force_exact);

  auto* theta = app.add_subcommand("theta", "exact theta(lambda, nu, kappa)");
  theta->add_option("--lambda", cfg.lambda)->required();
  theta->add_option("--nu", cfg.nu)->required();
  theta->add_option("--kappa", cfg.kappa)->required();
  theta->add_flag("--oracle", cfg.oracle, "also evaluate the floating-point oracle");

  auto* crit = app.add_subcommand("crit", "critical pairs in bidegree (a, b)");
  crit->add_option("--a", cfg.a)->required();
  crit->add_option("--b", cfg.b)->required();
  crit->add_flag("--gamma-delta", cfg.gamma_delta, "include the (gamma, delta) codes");

  auto* conj = app.add_subcommand("conjecture", "predicted against computed homology over a grid");
  conj->add_option("--max-a", cfg.max_a)->required();
  conj->add_option("--max-b", cfg.max_b)->required();
  conj->add_flag("--timing", cfg.timing, "record per-cell wall time");
  add_rank_options(conj, mode, cfg.force_exact);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*h0) cfg.command = fihl::Command::H0;
  if (*check) cfg.command = fihl::Command::CheckH0;
  if (*hom) cfg.command = fihl::Command::Homology;
  if (*euler) cfg.command = fihl::Command::Euler;
  if (*theta) cfg.command = fihl::Command::Theta;
  if (*crit) cfg.command = fihl::Command::Crit;
  if (*conj) cfg.command = fihl::Command::Conjecture;
  if (*n_opt) cfg.degree = degree;

  try {
    cfg.rank_mode = fihl::parse_rank_mode(mode);
    cfg.threads = fihl::threads_from_env();
    fihl::RunResult res = fihl::run_command(cfg);
    if (cfg.out.empty()) {
      std::cout << res.text;
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) {
        std::cerr << "fihl: cannot write --out " << cfg.out << "\n";
        return 2;
      }
      f << res.text;
    }
    return res.exit_code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "fihl: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "fihl: " << e.what() << "\n";
    return 2;
  } catch (const fihl::InternalError& e) {
    std::cerr << "fihl: internal error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "fihl: " << e.what() << "\n";
    return 1;
  }
}
