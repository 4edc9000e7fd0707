#pragma once

// Implementation of the `ramsey` command-line subcommands. Each command
// reads its inputs, writes its outputs to the given streams or files and
// returns the process exit code.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "ramsey/matrix.hpp"
#include "ramsey/model.hpp"
#include "ramsey/riccati.hpp"

namespace ramsey::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInputError = 2,
  kNotConverged = 3,
  kAssumptionViolated = 4,
};

/// Thresholds used by `verify` (and by the acceptance suite).
struct VerifyThresholds {
  double residual = 1e-10;
  double symmetry = 1e-10;
  double psd = -1e-8;
  double block_equivalence = 1e-9;
  double stability_margin = 1e-10;
  double mirror = 1e-8;
  double bellman = 1e-8;
  std::size_t bellman_periods = 50;
  double oracle_relative_gap = 1e-8;
  double welfare_sign = 1e-12;
};

struct SolveOptions {
  std::string model_path;           ///< "-" reads standard input
  std::optional<std::string> k0;    ///< scalar or JSON array text
  std::optional<std::string> z0;
  std::string out_path;             ///< empty writes to `out`
  RiccatiOptions riccati;
};

struct SimulateOptions {
  std::string model_path;
  std::size_t periods = 200;
  std::optional<std::string> k0;
  std::optional<std::string> z0;
  std::string csv_path;             ///< "-" writes the CSV to `out`
  RiccatiOptions riccati;
};

struct VerifyOptions {
  std::string model_path;
  std::optional<std::size_t> periods;  ///< default: adaptive, at least 200
  std::string out_path;
  RiccatiOptions riccati;
  VerifyThresholds thresholds;
};

struct ExampleOptions {
  std::string name;
  NkpcCalibration nkpc;
  std::string out_path;
};

/// Parses an initial-condition flag for a block of size n: a bare number is
/// accepted when n == 1, otherwise a JSON array of n numbers. Absent flags
/// give zeros. Throws ValidationError.
Matrix parse_initial_condition(const std::optional<std::string>& text,
                               std::size_t n, const char* name);

/// Full certificate suite on one problem. Used by `verify`.
nlohmann::json run_checks(const AugmentedLQProblem& p, const VerifyOptions& options);

int cmd_solve(const SolveOptions& opts, std::istream& in, std::ostream& out,
              std::ostream& err);
int cmd_simulate(const SimulateOptions& opts, std::istream& in, std::ostream& out,
                 std::ostream& err);
int cmd_verify(const VerifyOptions& opts, std::istream& in, std::ostream& out,
               std::ostream& err);
int cmd_example(const ExampleOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace ramsey::cli
