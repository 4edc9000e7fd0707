#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ramsey/commands.hpp"
#include "ramsey/error.hpp"
#include "ramsey/io.hpp"
#include "support/fixtures.hpp"
#include "support/random_instances.hpp"

namespace ramsey::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string nkpc_text(const NkpcCalibration& c = {}) {
  std::ostringstream out, err;
  ExampleOptions opts;
  opts.name = "nkpc";
  opts.nkpc = c;
  EXPECT_EQ(cmd_example(opts, out, err), kOk);
  return out.str();
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome solve_text(const std::string& model, SolveOptions opts = {}) {
  opts.model_path = "-";
  std::istringstream in(model);
  std::ostringstream out, err;
  const int code = cmd_solve(opts, in, out, err);
  return {code, out.str(), err.str()};
}

Outcome verify_text(const std::string& model) {
  VerifyOptions opts;
  opts.model_path = "-";
  std::istringstream in(model);
  std::ostringstream out, err;
  const int code = cmd_verify(opts, in, out, err);
  return {code, out.str(), err.str()};
}

std::string edit(const std::string& model, const std::string& key, json value) {
  json j = json::parse(model);
  j[key] = std::move(value);
  return j.dump();
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("ramsey_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path file(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

// Runs the built binary through the shell; stdout is captured, stderr goes
// to a file.
Outcome run_binary(const std::string& args, const TempDir& dir) {
  const fs::path err_path = dir.file("stderr.txt");
  const std::string cmd =
      std::string(RAMSEY_CLI_PATH) + " " + args + " 2>" + err_path.string();
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, "", "popen failed"};
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, read_file(err_path)};
}

TEST(Example, NkpcModelFile) {
  const json j = json::parse(nkpc_text());
  EXPECT_NEAR(j["R_uu"][0][0].get<double>(), 0.02125, 1e-15);
  EXPECT_EQ(j["n_x"], 1);
  EXPECT_EQ(j["n_k"], 0);
  EXPECT_EQ(j["beta"], 0.99);
}

TEST(Example, CalibrationOverride) {
  NkpcCalibration c;
  c.rho = 0.5;
  EXPECT_EQ(json::parse(nkpc_text(c))["A_zz"][0][0], 0.5);
}

TEST(Example, UnknownNameIsAnError) {
  std::ostringstream out, err;
  ExampleOptions opts;
  opts.name = "rbc";
  EXPECT_EQ(cmd_example(opts, out, err), kInputError);
  EXPECT_NE(err.str().find("unknown example"), std::string::npos);
}

TEST(Solve, NkpcReport) {
  SolveOptions opts;
  opts.z0 = "1";
  const Outcome r = solve_text(nkpc_text(), opts);
  ASSERT_EQ(r.code, kOk) << r.err;
  const json j = json::parse(r.out);
  const Matrix P = io::matrix_from_json(j["P"]["full"], "P");
  EXPECT_LE(max_abs_diff(P, testing::kGoldenP), 1e-5);
  EXPECT_NEAR(j["welfare"].get<double>(), testing::kGoldenWelfare, 5e-3);
  EXPECT_NEAR(j["naive_welfare"].get<double>(), testing::kGoldenNaive, 1e-2);
  EXPECT_NEAR(j["anchor"]["G_z"][0][0].get<double>(), testing::kGoldenAnchor, 1e-3);
  EXPECT_TRUE(j["diagnostics"]["converged"].get<bool>());
  EXPECT_TRUE(j["diagnostics"]["mirror_roots"]["pass"].get<bool>());
  EXPECT_LE(j["diagnostics"]["blocks_max_abs_diff"].get<double>(), 1e-9);
  EXPECT_EQ(j["problem"]["z0"], json::array({1.0}));
}

TEST(Solve, DefaultsToZeroStart) {
  const Outcome r = solve_text(nkpc_text());
  ASSERT_EQ(r.code, kOk);
  EXPECT_EQ(json::parse(r.out)["welfare"].get<double>(), 0.0);
}

TEST(Solve, MalformedJsonReportsPosition) {
  const Outcome r = solve_text("{\n  \"beta\": 0.99,\n  oops\n}");
  EXPECT_EQ(r.code, kInputError);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("column"), std::string::npos) << r.err;
}

TEST(Solve, UnknownFieldIsRejected) {
  const Outcome r = solve_text(edit(nkpc_text(), "gamma", 1.0));
  EXPECT_EQ(r.code, kInputError);
  EXPECT_NE(r.err.find("gamma"), std::string::npos) << r.err;
}

TEST(Solve, MissingFieldIsRejected) {
  json j = json::parse(nkpc_text());
  j.erase("R_uu");
  EXPECT_EQ(solve_text(j.dump()).code, kInputError);
}

TEST(Solve, SingularRIsAnInputError) {
  const Outcome r = solve_text(edit(nkpc_text(), "R_uu", json::array({json::array({0.0})})));
  EXPECT_EQ(r.code, kInputError);
  EXPECT_NE(r.err.find("R_uu not strictly positive definite"), std::string::npos);
}

TEST(Solve, BadInitialCondition) {
  SolveOptions opts;
  opts.z0 = "[1, 2]";
  EXPECT_EQ(solve_text(nkpc_text(), opts).code, kInputError);
  opts.z0 = "abc";
  EXPECT_EQ(solve_text(nkpc_text(), opts).code, kInputError);
  opts.z0 = "[0.5]";
  EXPECT_EQ(solve_text(nkpc_text(), opts).code, kOk);
}

TEST(Solve, NonConvergenceExitCode) {
  SolveOptions opts;
  opts.riccati.max_iter = 3;
  const Outcome r = solve_text(nkpc_text(), opts);
  EXPECT_EQ(r.code, kNotConverged);
  EXPECT_NE(r.err.find("did not converge"), std::string::npos);
}

TEST(Solve, AssumptionViolationExitCode) {
  const Outcome r = solve_text(edit(nkpc_text(), "B_yu", json::array({json::array({0.0})})));
  EXPECT_EQ(r.code, kAssumptionViolated);
  EXPECT_NE(r.err.find("violated"), std::string::npos);
}

TEST(InitialCondition, Parsing) {
  EXPECT_EQ(parse_initial_condition(std::nullopt, 2, "k0"), Matrix(2, 1));
  EXPECT_EQ(parse_initial_condition("2.5", 1, "z0"), Matrix::scalar(2.5));
  EXPECT_EQ(parse_initial_condition("[1, 2]", 2, "z0"), (Matrix{{1}, {2}}));
  EXPECT_THROW(parse_initial_condition("2.5", 2, "z0"), ValidationError);
  EXPECT_THROW(parse_initial_condition("[1, \"a\"]", 2, "z0"), ValidationError);
}

TEST(Verify, NkpcPassesAllChecks) {
  const Outcome r = verify_text(nkpc_text());
  EXPECT_EQ(r.code, kOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["checks"].size(), 12u);
  for (const auto& c : j["checks"]) EXPECT_EQ(c["status"], "pass") << c["name"];
  EXPECT_EQ(r.err.find("FAIL"), std::string::npos);
}

TEST(Verify, UnstableShockFails) {
  json j = json::parse(nkpc_text());
  j["beta"] = 1.0;
  j["A_zz"] = json::array({json::array({1.2})});
  const Outcome r = verify_text(j.dump());
  EXPECT_EQ(r.code, kCheckFailed);
  EXPECT_NE(r.err.find("FAIL assumption_shock_stability"), std::string::npos);
  EXPECT_NE(r.err.find("SKIP"), std::string::npos);
}

TEST(Verify, UncontrollableFails) {
  const Outcome r = verify_text(edit(nkpc_text(), "B_yu", json::array({json::array({0.0})})));
  EXPECT_EQ(r.code, kCheckFailed);
  EXPECT_NE(r.err.find("FAIL assumption_controllability"), std::string::npos);
}

TEST(ModelIo, RoundTripIsExact) {
  std::mt19937_64 rng(808);
  for (int i = 0; i < 20; ++i) {
    const AugmentedLQProblem p = ramsey::testing::random_stabilizable_instance(rng);
    const std::string text = io::model_to_json(p).dump();
    const AugmentedLQProblem back = io::parse_model(text);
    EXPECT_EQ(back, p) << i;

    VerifyOptions opts;
    const json a = run_checks(p, opts), b = run_checks(back, opts);
    ASSERT_EQ(a["checks"].size(), b["checks"].size());
    for (std::size_t c = 0; c < a["checks"].size(); ++c) {
      EXPECT_EQ(a["checks"][c]["status"], b["checks"][c]["status"]);
    }
  }
}

TEST(ModelIo, ParseErrorCarriesPosition) {
  try {
    io::parse_model("{\n\n   ]");
    FAIL() << "expected ParseError";
  } catch (const io::ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 4u);
  }
}

TEST(Binary, ExampleSolveRoundTrip) {
  TempDir dir;
  const Outcome ex = run_binary("example nkpc", dir);
  ASSERT_EQ(ex.code, 0) << ex.err;
  write_file(dir.file("nk.json"), ex.out);

  const Outcome s = run_binary("solve " + dir.file("nk.json").string() + " --z0 1", dir);
  ASSERT_EQ(s.code, 0) << s.err;
  const json j = json::parse(s.out);
  EXPECT_LE(max_abs_diff(io::matrix_from_json(j["P"]["full"], "P"), testing::kGoldenP),
            1e-5);

  const Outcome piped = run_binary("example nkpc | " + std::string(RAMSEY_CLI_PATH) +
                                   " solve - -o " + dir.file("report.json").string(),
                               dir);
  ASSERT_EQ(piped.code, 0) << piped.err;
  EXPECT_EQ(json::parse(read_file(dir.file("report.json")))["P"], j["P"]);
}

TEST(Binary, SimulateCsv) {
  TempDir dir;
  write_file(dir.file("nk.json"), nkpc_text());
  const std::string model = dir.file("nk.json").string();
  const Outcome r = run_binary("simulate " + model + " --z0 1 --periods 10 --csv -", dir);
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream csv(r.out);
  std::string header, first;
  std::getline(csv, header);
  std::getline(csv, first);
  EXPECT_EQ(header, "t,x_1,z_1,u_1,period_loss,discounted_cumulative");
  std::istringstream cells(first);
  std::string t, x;
  std::getline(cells, t, ',');
  std::getline(cells, x, ',');
  EXPECT_EQ(t, "0");
  EXPECT_NEAR(std::stod(x), 0.650, 1e-3);
  std::size_t rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  EXPECT_EQ(rows, 10u);

  const Outcome zero = run_binary("simulate " + model + " --periods 0 --csv " +
                                  dir.file("out.csv").string(),
                              dir);
  ASSERT_EQ(zero.code, 0) << zero.err;
  std::istringstream single(read_file(dir.file("out.csv")));
  std::size_t lines = 0;
  for (std::string line; std::getline(single, line);) ++lines;
  EXPECT_EQ(lines, 2u);
}

TEST(Binary, ExitCodes) {
  TempDir dir;
  write_file(dir.file("nk.json"), nkpc_text());
  write_file(dir.file("bad.json"), "{ \"beta\": ");
  const std::string model = dir.file("nk.json").string();
  EXPECT_EQ(run_binary("verify " + model, dir).code, 0);
  EXPECT_EQ(run_binary("solve " + model + " --max-iter 3", dir).code, 3);
  EXPECT_EQ(run_binary("solve " + dir.file("bad.json").string(), dir).code, 2);
  EXPECT_EQ(run_binary("solve " + dir.file("missing.json").string(), dir).code, 2);
  EXPECT_NE(run_binary("example rbc", dir).code, 0);
  EXPECT_NE(run_binary("", dir).code, 0);

  write_file(dir.file("unstable.json"),
             edit(nkpc_text(), "A_zz", json::array({json::array({1.2})})));
  EXPECT_EQ(run_binary("solve " + dir.file("unstable.json").string(), dir).code, 4);
  EXPECT_EQ(run_binary("verify " + dir.file("unstable.json").string(), dir).code, 1);
}

}  // namespace
}  // namespace ramsey::cli
