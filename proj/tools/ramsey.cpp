// ramsey: solve, simulate and verify Ramsey optimal policy for discounted
// LQ models with autoregressive forcing shocks.

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "ramsey/commands.hpp"

namespace {

void add_riccati_flags(CLI::App* cmd, ramsey::RiccatiOptions& r) {
  cmd->add_option("--tol", r.tol, "Riccati residual tolerance")->capture_default_str();
  cmd->add_option("--max-iter", r.max_iter, "Riccati iteration budget")
      ->capture_default_str();
  cmd->add_option("--damping", r.damping, "fixed-point damping in (0, 1]")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ramsey::cli;

  CLI::App app{"Ramsey optimal policy with autoregressive forcing shocks"};
  app.require_subcommand(1);

  SolveOptions solve;
  std::string solve_k0, solve_z0;
  auto* s = app.add_subcommand("solve", "Solve a model and write the JSON report");
  s->add_option("model", solve.model_path, "model JSON file ('-' for stdin)")->required();
  auto* s_k0 = s->add_option("--k0", solve_k0, "initial predetermined states");
  auto* s_z0 = s->add_option("--z0", solve_z0, "initial shocks");
  s->add_option("-o,--out", solve.out_path, "report path (default stdout)");
  add_riccati_flags(s, solve.riccati);

  SimulateOptions sim;
  std::string sim_k0, sim_z0;
  auto* m = app.add_subcommand("simulate", "Anchored impulse responses as CSV");
  m->add_option("model", sim.model_path, "model JSON file ('-' for stdin)")->required();
  m->add_option("--periods", sim.periods, "horizon T")->capture_default_str();
  auto* m_k0 = m->add_option("--k0", sim_k0, "initial predetermined states");
  auto* m_z0 = m->add_option("--z0", sim_z0, "initial shocks");
  m->add_option("--csv", sim.csv_path, "CSV output path ('-' for stdout)")->required();
  add_riccati_flags(m, sim.riccati);

  VerifyOptions ver;
  std::size_t ver_periods = 0;
  auto* v = app.add_subcommand("verify", "Run the certificate suite on a model");
  v->add_option("model", ver.model_path, "model JSON file ('-' for stdin)")->required();
  auto* v_periods = v->add_option("--periods", ver_periods,
                                  "simulation horizon (default adaptive, >= 200)");
  v->add_option("-o,--out", ver.out_path, "report path (default stdout)");
  add_riccati_flags(v, ver.riccati);

  ExampleOptions ex;
  auto* e = app.add_subcommand("example", "Write a built-in example model");
  e->add_option("name", ex.name, "example name (nkpc)")->required();
  e->add_option("--beta", ex.nkpc.beta)->capture_default_str();
  e->add_option("--kappa", ex.nkpc.kappa)->capture_default_str();
  e->add_option("--epsilon", ex.nkpc.epsilon)->capture_default_str();
  e->add_option("--rho", ex.nkpc.rho)->capture_default_str();
  e->add_option("-o,--out", ex.out_path, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (s->parsed()) {
    if (*s_k0) solve.k0 = solve_k0;
    if (*s_z0) solve.z0 = solve_z0;
    return cmd_solve(solve, std::cin, std::cout, std::cerr);
  }
  if (m->parsed()) {
    if (*m_k0) sim.k0 = sim_k0;
    if (*m_z0) sim.z0 = sim_z0;
    return cmd_simulate(sim, std::cin, std::cout, std::cerr);
  }
  if (v->parsed()) {
    if (*v_periods) ver.periods = ver_periods;
    return cmd_verify(ver, std::cin, std::cout, std::cerr);
  }
  return cmd_example(ex, std::cout, std::cerr);
}
