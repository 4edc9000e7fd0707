#include "ramsey/io.hpp"

#include <array>
#include <cstdio>
#include <ostream>
#include <set>

namespace ramsey::io {
namespace {

using nlohmann::json;

constexpr std::array<const char*, 4> kCountKeys = {"n_k", "n_x", "n_z", "n_u"};
constexpr std::array<const char*, 8> kMatrixKeys = {
    "A_yy", "A_yz", "A_zz", "B_yu", "Q_yy", "Q_yz", "Q_zz", "R_uu"};

std::size_t read_count(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number_unsigned()) {
    throw ValidationError(std::string("model: '") + key +
                          "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

void line_column(std::string_view text, std::size_t byte, std::size_t& line,
                 std::size_t& column) {
  line = 1;
  column = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
}

}  // namespace

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 0, column = 0;
    line_column(text, e.byte, line, column);
    throw ParseError("malformed JSON at line " + std::to_string(line) +
                         ", column " + std::to_string(column) + ": " + e.what(),
                     line, column);
  }
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    rows.push_back(json(std::vector<double>(r.begin(), r.end())));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, std::string_view name) {
  const std::string n(name);
  if (!j.is_array()) throw ValidationError("model: '" + n + "' must be an array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  std::vector<double> entries;
  for (std::size_t i = 0; i < rows; ++i) {
    const json& r = j[i];
    if (!r.is_array()) {
      throw ValidationError("model: '" + n + "' row " + std::to_string(i) +
                            " is not an array");
    }
    if (i == 0) cols = r.size();
    if (r.size() != cols) throw ValidationError("model: '" + n + "' is ragged");
    for (const json& v : r) {
      if (!v.is_number()) throw ValidationError("model: '" + n + "' has a non-numeric entry");
      entries.push_back(v.get<double>());
    }
  }
  return Matrix(rows, cols, std::move(entries));
}

json model_to_json(const AugmentedLQProblem& p) {
  const Partition& part = p.partition();
  const ProblemBlocks& b = p.blocks();
  json j;
  j["n_k"] = part.n_k;
  j["n_x"] = part.n_x;
  j["n_z"] = part.n_z;
  j["n_u"] = part.n_u;
  j["beta"] = p.beta();
  j["A_yy"] = matrix_to_json(b.A_yy);
  j["A_yz"] = matrix_to_json(b.A_yz);
  j["A_zz"] = matrix_to_json(b.A_zz);
  j["B_yu"] = matrix_to_json(b.B_yu);
  j["Q_yy"] = matrix_to_json(b.Q_yy);
  j["Q_yz"] = matrix_to_json(b.Q_yz);
  j["Q_zz"] = matrix_to_json(b.Q_zz);
  j["R_uu"] = matrix_to_json(b.R_uu);
  return j;
}

AugmentedLQProblem model_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("model: top level must be an object");

  std::set<std::string> known;
  for (const char* k : kCountKeys) known.insert(k);
  for (const char* k : kMatrixKeys) known.insert(k);
  known.insert("beta");
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) {
      throw ValidationError("model: unknown field '" + item.key() + "'");
    }
  }
  for (const auto& k : known) {
    if (!j.contains(k)) throw ValidationError("model: missing field '" + k + "'");
  }

  Partition part;
  part.n_k = read_count(j, "n_k");
  part.n_x = read_count(j, "n_x");
  part.n_z = read_count(j, "n_z");
  part.n_u = read_count(j, "n_u");
  if (!j.at("beta").is_number()) throw ValidationError("model: 'beta' must be a number");

  ProblemBlocks b;
  b.A_yy = matrix_from_json(j.at("A_yy"), "A_yy");
  b.A_yz = matrix_from_json(j.at("A_yz"), "A_yz");
  b.A_zz = matrix_from_json(j.at("A_zz"), "A_zz");
  b.B_yu = matrix_from_json(j.at("B_yu"), "B_yu");
  b.Q_yy = matrix_from_json(j.at("Q_yy"), "Q_yy");
  b.Q_yz = matrix_from_json(j.at("Q_yz"), "Q_yz");
  b.Q_zz = matrix_from_json(j.at("Q_zz"), "Q_zz");
  b.R_uu = matrix_from_json(j.at("R_uu"), "R_uu");
  return build_problem(std::move(b), j.at("beta").get<double>(), part);
}

AugmentedLQProblem parse_model(std::string_view text) {
  return model_from_json(parse_json(text));
}

std::string format_double(double v) { return json(v).dump(); }

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const Partition& part) {
  os << 't';
  for (std::size_t i = 1; i <= part.n_k; ++i) os << ",k_" << i;
  for (std::size_t i = 1; i <= part.n_x; ++i) os << ",x_" << i;
  for (std::size_t i = 1; i <= part.n_z; ++i) os << ",z_" << i;
  for (std::size_t i = 1; i <= part.n_u; ++i) os << ",u_" << i;
  os << ",period_loss,discounted_cumulative\n";

  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << ',' << buf;
  };
  for (std::size_t t = 0; t <= traj.horizon; ++t) {
    os << t;
    for (double v : traj.y_path.row(t)) put(v);
    for (double v : traj.z_path.row(t)) put(v);
    for (double v : traj.u_path.row(t)) put(v);
    put(traj.period_loss[t]);
    put(traj.discounted_cumulative[t]);
    os << '\n';
  }
}

}  // namespace ramsey::io
