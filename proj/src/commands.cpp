#include "ramsey/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "ramsey/blocks.hpp"
#include "ramsey/error.hpp"
#include "ramsey/io.hpp"
#include "ramsey/kernels.hpp"
#include "ramsey/linalg.hpp"
#include "ramsey/simulate.hpp"
#include "ramsey/welfare.hpp"

namespace ramsey::cli {
namespace {

using nlohmann::json;

constexpr std::size_t kMaxAdaptiveHorizon = 100000;

std::string read_all(const std::string& path, std::istream& in) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open model file '" + path + "'");
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

AugmentedLQProblem load_model(const std::string& path, std::istream& in) {
  return io::parse_model(read_all(path, in));
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open output file '" + path + "'");
  f << text;
}

json complex_list(const std::vector<std::complex<double>>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back({z.real(), z.imag()});
  return a;
}

json assumptions_json(const ValidationReport& r) {
  return {{"controllability_rank", r.controllability_rank},
          {"controllable", r.controllable},
          {"shock_eigenvalue_moduli", r.shock_eigenvalue_moduli},
          {"shock_stable", r.shock_stable},
          {"messages", r.messages}};
}

// Exit code 4 with a message naming each failed assumption.
int report_assumptions(const ValidationReport& r, std::ostream& err) {
  if (r.assumptions_hold()) return kOk;
  for (const auto& m : r.messages) {
    if (m.find("violated") != std::string::npos) err << "error: " << m << '\n';
  }
  return kAssumptionViolated;
}

double max_modulus(const std::vector<std::complex<double>>& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

json check(const std::string& name, double value, double threshold, bool pass,
           const std::string& detail = {}) {
  json c = {{"name", name},
            {"value", value},
            {"threshold", threshold},
            {"status", pass ? "pass" : "fail"}};
  if (!detail.empty()) c["detail"] = detail;
  return c;
}

json skipped(const std::string& name, const std::string& why) {
  return {{"name", name}, {"status", "skipped"}, {"detail", why}};
}

std::size_t adaptive_horizon(double rate) {
  // Smallest T with rate^T below 1e-12, never shorter than the default.
  if (!(rate > 0.0)) return kDefaultHorizon;
  if (rate >= 1.0) return kMaxAdaptiveHorizon;
  const double t = std::ceil(std::log(1e-12) / std::log(rate));
  return std::clamp<std::size_t>(static_cast<std::size_t>(t), kDefaultHorizon,
                                 kMaxAdaptiveHorizon);
}

}  // namespace

Matrix parse_initial_condition(const std::optional<std::string>& text,
                               std::size_t n, const char* name) {
  if (!text) return Matrix(n, 1);
  json j;
  try {
    j = json::parse(*text);
  } catch (const json::parse_error&) {
    throw ValidationError(std::string("--") + name + ": not a number or JSON array: '" +
                          *text + "'");
  }
  if (j.is_number()) {
    if (n != 1) {
      throw ValidationError(std::string("--") + name + ": block has " +
                            std::to_string(n) + " entries, pass a JSON array");
    }
    return Matrix::scalar(j.get<double>());
  }
  if (!j.is_array() || j.size() != n) {
    throw ValidationError(std::string("--") + name + ": expected a JSON array of " +
                          std::to_string(n) + " numbers");
  }
  Matrix v(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_number()) {
      throw ValidationError(std::string("--") + name + ": non-numeric entry");
    }
    v(i, 0) = j[i].get<double>();
  }
  return v;
}

json run_checks(const AugmentedLQProblem& p, const VerifyOptions& options) {
  const VerifyThresholds& th = options.thresholds;
  const Partition& part = p.partition();
  const double beta = p.beta();
  json checks = json::array();

  const ValidationReport va = validate_assumptions(p);
  checks.push_back(check("assumption_controllability",
                         static_cast<double>(va.controllability_rank),
                         static_cast<double>(part.n_y()), va.controllable,
                         va.messages[0]));
  const double shock_max =
      va.shock_eigenvalue_moduli.empty()
          ? 0.0
          : *std::max_element(va.shock_eigenvalue_moduli.begin(),
                              va.shock_eigenvalue_moduli.end());
  checks.push_back(check("assumption_shock_stability", shock_max,
                         1.0 / std::sqrt(beta), va.shock_stable, va.messages[1]));

  static const char* kDownstream[] = {
      "riccati_converged", "riccati_residual",     "P_symmetry",
      "P_positive_semidefinite", "blocks_full_equivalence",
      "closed_loop_stability", "mirror_roots",     "bellman_identity",
      "oracle_gap",        "welfare_sign"};

  auto finish = [&](std::size_t from, const std::string& why) {
    for (std::size_t i = from; i < std::size(kDownstream); ++i) {
      checks.push_back(skipped(kDownstream[i], why));
    }
  };

  if (!va.assumptions_hold()) {
    finish(0, "assumptions violated");
  } else {
    try {
      const RiccatiSolution sol = solve_full_riccati(p, options.riccati);
      checks.push_back(check("riccati_converged", static_cast<double>(sol.iterations),
                             static_cast<double>(options.riccati.max_iter),
                             sol.converged));
      if (!sol.converged) {
        finish(1, "Riccati iteration did not converge");
      } else {
        checks.push_back(check("riccati_residual", sol.residual_norm, th.residual,
                               sol.residual_norm <= th.residual));
        const double asym = asymmetry(sol.P);
        checks.push_back(check("P_symmetry", asym, th.symmetry, asym <= th.symmetry));
        const double min_eig = linalg::symmetric_eigenvalues(sol.P).front();
        checks.push_back(check("P_positive_semidefinite", min_eig, th.psd,
                               min_eig >= th.psd));

        try {
          const RiccatiSolution blk = assemble(p, options.riccati);
          const double d = max_abs_diff(blk.P, sol.P);
          checks.push_back(check("blocks_full_equivalence", d, th.block_equivalence,
                                 d <= th.block_equivalence));
        } catch (const Error& e) {
          checks.push_back(check("blocks_full_equivalence", NAN,
                                 th.block_equivalence, false, e.what()));
        }

        const FeedbackGain F = compute_gain(p, sol);
        const auto cl = closed_loop_eigenvalues(p, F);
        const double cl_max = max_modulus(cl);
        const double cl_bound = 1.0 / std::sqrt(beta) + th.stability_margin;
        checks.push_back(check("closed_loop_stability", cl_max, cl_bound,
                               cl_max < cl_bound));

        try {
          const MirrorReport mr = pencil_mirror_check(build_pencil(p), beta, th.mirror);
          double worst = 0.0;
          for (const auto& pr : mr.pairs) worst = std::max(worst, pr.mismatch);
          std::string detail;
          if (!mr.unpaired.empty()) {
            detail = std::to_string(mr.unpaired.size()) + " unpaired root(s)";
          }
          checks.push_back(check("mirror_roots", worst, th.mirror, mr.pass, detail));
        } catch (const Error& e) {
          checks.push_back(check("mirror_roots", NAN, th.mirror, false, e.what()));
        }

        const Matrix k0(part.n_k, 1, 1.0);
        const Matrix z0(part.n_z, 1, 1.0);
        const double rate =
            beta * std::pow(std::max(cl_max, linalg::spectral_radius(p.A_zz())), 2);
        const std::size_t horizon =
            options.periods ? *options.periods : adaptive_horizon(rate);
        try {
          const OracleComparison oc = oracle_welfare(p, sol, F, k0, z0, horizon);
          const auto bell =
              bellman_residuals(p, sol.P, oc.trajectory, th.bellman_periods);
          const double bell_max =
              bell.empty() ? 0.0 : *std::max_element(bell.begin(), bell.end());
          checks.push_back(check("bellman_identity", bell_max, th.bellman,
                                 bell_max <= th.bellman));
          const double gap_bound = th.oracle_relative_gap * std::fabs(oc.W_riccati);
          checks.push_back(check("oracle_gap", oc.gap, gap_bound, oc.gap <= gap_bound,
                                 "horizon " + std::to_string(horizon)));
          checks.push_back(check("welfare_sign", oc.W_riccati, th.welfare_sign,
                                 oc.W_riccati <= th.welfare_sign));
        } catch (const Error& e) {
          checks.push_back(check("bellman_identity", NAN, th.bellman, false, e.what()));
          finish(8, "simulation failed");
        }
      }
    } catch (const Error& e) {
      finish(checks.size() - 2, std::string("solver error: ") + e.what());
    }
  }

  bool pass = true;
  for (const auto& c : checks) pass = pass && c["status"] == "pass";
  return {{"checks", checks}, {"pass", pass}};
}

int cmd_solve(const SolveOptions& opts, std::istream& in, std::ostream& out,
              std::ostream& err) {
  std::optional<AugmentedLQProblem> problem;
  Matrix k0, z0;
  try {
    problem.emplace(load_model(opts.model_path, in));
    k0 = parse_initial_condition(opts.k0, problem->partition().n_k, "k0");
    z0 = parse_initial_condition(opts.z0, problem->partition().n_z, "z0");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  const AugmentedLQProblem& p = *problem;
  const Partition& part = p.partition();

  const ValidationReport va = validate_assumptions(p);
  if (int rc = report_assumptions(va, err); rc != kOk) return rc;

  try {
    const RiccatiSolution sol = solve_full_riccati(p, opts.riccati);
    if (!sol.converged) {
      err << "error: Riccati iteration did not converge after " << sol.iterations
          << " iterations (residual " << sol.residual_norm << ")\n";
      return kNotConverged;
    }
    const RiccatiSolution blk = assemble(p, opts.riccati);
    const FeedbackGain F = compute_gain(p, sol);
    const WelfareReport w = evaluate_welfare(sol.P, part, k0, z0);
    const double naive = naive_welfare(sol.P, part, k0, z0);
    const MirrorReport mr = pencil_mirror_check(build_pencil(p), p.beta(), 1e-8);

    json report;
    report["problem"] = {{"n_k", part.n_k}, {"n_x", part.n_x}, {"n_z", part.n_z},
                         {"n_u", part.n_u}, {"beta", p.beta()},
                         {"k0", io::matrix_to_json(k0.transpose())[0]},
                         {"z0", io::matrix_to_json(z0.transpose())[0]}};
    report["P"] = {{"full", io::matrix_to_json(sol.P)},
                   {"P_yy", io::matrix_to_json(sol.P_yy())},
                   {"P_yz", io::matrix_to_json(sol.P_yz())},
                   {"P_zz", io::matrix_to_json(sol.P_zz())}};
    report["F"] = {{"F_y", io::matrix_to_json(F.F_y)},
                   {"F_z", io::matrix_to_json(F.F_z)}};
    report["anchor"] = {{"G_k", io::matrix_to_json(w.anchor.G_k)},
                        {"G_z", io::matrix_to_json(w.anchor.G_z)},
                        {"x0", io::matrix_to_json(w.x0)}};
    report["welfare_matrix"] = io::matrix_to_json(w.S);
    report["welfare"] = w.welfare;
    report["naive_welfare"] = naive;
    report["diagnostics"] = {
        {"iterations", sol.iterations},
        {"residual", sol.residual_norm},
        {"converged", sol.converged},
        {"assumptions", assumptions_json(va)},
        {"blocks_max_abs_diff", max_abs_diff(blk.P, sol.P)},
        {"closed_loop_eigenvalues", complex_list(closed_loop_eigenvalues(p, F))},
        {"mirror_roots", {{"pass", mr.pass}, {"roots", complex_list(mr.roots)}}},
        {"kernels", std::string(kernels::isa_name(kernels::active().isa))}};
    write_text(opts.out_path, report.dump(2) + "\n", out);
    return kOk;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kNotConverged;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

int cmd_simulate(const SimulateOptions& opts, std::istream& in, std::ostream& out,
                 std::ostream& err) {
  std::optional<AugmentedLQProblem> problem;
  Matrix k0, z0;
  try {
    problem.emplace(load_model(opts.model_path, in));
    k0 = parse_initial_condition(opts.k0, problem->partition().n_k, "k0");
    z0 = parse_initial_condition(opts.z0, problem->partition().n_z, "z0");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  const AugmentedLQProblem& p = *problem;

  const ValidationReport va = validate_assumptions(p);
  if (int rc = report_assumptions(va, err); rc != kOk) return rc;

  try {
    const RiccatiSolution sol = solve_full_riccati(p, opts.riccati);
    if (!sol.converged) {
      err << "error: Riccati iteration did not converge after " << sol.iterations
          << " iterations\n";
      return kNotConverged;
    }
    const FeedbackGain F = compute_gain(p, sol);
    const OracleComparison oc = oracle_welfare(p, sol, F, k0, z0, opts.periods);

    std::ostringstream csv;
    io::write_trajectory_csv(csv, oc.trajectory, p.partition());
    json summary = {{"periods", opts.periods},
                    {"W_sim", oc.W_sim},
                    {"W_riccati", oc.W_riccati},
                    {"gap", oc.gap}};
    if (opts.csv_path == "-") {
      out << csv.str();
      err << summary.dump() << '\n';
    } else {
      write_text(opts.csv_path, csv.str(), out);
      out << summary.dump(2) << '\n';
    }
    return kOk;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kNotConverged;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

int cmd_verify(const VerifyOptions& opts, std::istream& in, std::ostream& out,
               std::ostream& err) {
  std::optional<AugmentedLQProblem> problem;
  try {
    problem.emplace(load_model(opts.model_path, in));
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  const json report = run_checks(*problem, opts);
  try {
    write_text(opts.out_path, report.dump(2) + "\n", out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  for (const auto& c : report["checks"]) {
    err << (c["status"] == "pass" ? "PASS " : c["status"] == "fail" ? "FAIL " : "SKIP ")
        << c["name"].get<std::string>() << '\n';
  }
  return report["pass"].get<bool>() ? kOk : kCheckFailed;
}

int cmd_example(const ExampleOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.name != "nkpc") {
    err << "error: unknown example '" << opts.name << "' (available: nkpc)\n";
    return kInputError;
  }
  try {
    const AugmentedLQProblem p = build_nkpc(opts.nkpc);
    write_text(opts.out_path, io::model_to_json(p).dump(2) + "\n", out);
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace ramsey::cli
