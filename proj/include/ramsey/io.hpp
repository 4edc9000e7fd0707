#pragma once

// Model files (JSON) and trajectory export (CSV).
//
// Model schema: {"n_k", "n_x", "n_z", "n_u": integers, "beta": number,
// "A_yy", "A_yz", "A_zz", "B_yu", "Q_yy", "Q_yz", "Q_zz", "R_uu": arrays of
// row arrays}. Unknown keys are rejected.

#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ramsey/error.hpp"
#include "ramsey/matrix.hpp"
#include "ramsey/model.hpp"
#include "ramsey/simulate.hpp"

namespace ramsey::io {

/// Malformed JSON text; line and column are 1-based.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : ValidationError(what), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses JSON text, converting syntax errors into ParseError.
nlohmann::json parse_json(std::string_view text);

nlohmann::json matrix_to_json(const Matrix& m);
/// Throws ValidationError if `j` is not a rectangular array of number rows.
Matrix matrix_from_json(const nlohmann::json& j, std::string_view name);

nlohmann::json model_to_json(const AugmentedLQProblem& p);
AugmentedLQProblem model_from_json(const nlohmann::json& j);
AugmentedLQProblem parse_model(std::string_view text);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

/// One row per period: t, k_*, x_*, z_*, u_*, period_loss,
/// discounted_cumulative. Values printed with 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const Partition& partition);

}  // namespace ramsey::io
