#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fracgs/cli.hpp"
#include "fracgs/config.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = fracgs::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::current_path() / "cli_out" / name;
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

}  // namespace

TEST_CASE("solve writes its artifacts") {
  const fs::path dir = fresh_dir("solve");
  const Result r = run({"solve", "-o", dir.string(), "--set", "sensitivity=false"});
  INFO(r.err);
  REQUIRE(r.code == fracgs::cli::kExitOk);
  CHECK(r.out.find("converged=true") != std::string::npos);
  for (const char* f : {"manifest.json", "report.json", "field.json", "field.csv",
                        "residuals.csv", "vanishing.csv"}) {
    CHECK(fs::exists(dir / f));
  }
  const json report = read_json(dir / "report.json");
  CHECK(report["schema"] == 1);
  CHECK(report["converged"] == true);
  CHECK(report["level"].get<double>() == doctest::Approx(1.3532179896617).epsilon(1e-9));
  CHECK(report["residual_history"].size() == report["sigma_history"].size());
  CHECK(report["candidate_level"]["level"].get<double>() >= report["level"].get<double>());
  CHECK_FALSE(report.contains("sensitivity"));
  CHECK(slurp(dir / "field.csv").rfind("t,u\n", 0) == 0);
  CHECK(slurp(dir / "residuals.csv").rfind("iteration,residual,sigma,energy\n", 0) == 0);
  const json field = read_json(dir / "field.json");
  CHECK(field["N"] == 4096);
  CHECK(field["values"].size() == 4096);
}

TEST_CASE("manifest records every resolved key") {
  const fs::path dir = fresh_dir("manifest");
  REQUIRE(run({"validate-hypotheses", "-o", dir.string(), "-s", "p0=3.8"}).code == 0);
  const json m = read_json(dir / "manifest.json");
  CHECK(m["subcommand"] == "validate-hypotheses");
  CHECK(m["seed"] == 12345);
  CHECK(m["overrides"] == json::array({"p0=3.8"}));
  for (const auto& [key, value] : fracgs::config_defaults()) {
    INFO(key);
    CHECK(m["resolved"].contains(key));
  }
  CHECK(m["resolved"]["p0"] == "3.8");
}

TEST_CASE("runs are byte-for-byte reproducible") {
  const fs::path a = fresh_dir("repro_a");
  const fs::path b = fresh_dir("repro_b");
  const std::vector<std::string> common = {"--set", "sensitivity=false", "--set", "N=1024",
                                           "--set", "L=32"};
  auto args = [&](const fs::path& d) {
    std::vector<std::string> v{"solve", "-o", d.string()};
    v.insert(v.end(), common.begin(), common.end());
    return v;
  };
  REQUIRE(run(args(a)).code == 0);
  REQUIRE(run(args(b)).code == 0);
  for (const char* f : {"report.json", "field.csv", "residuals.csv", "vanishing.csv"}) {
    INFO(f);
    CHECK(slurp(a / f) == slurp(b / f));
  }
}

TEST_CASE("invalid order exits with the input error code") {
  const Result r = run({"solve", "-o", fresh_dir("bad_alpha").string(), "--set", "alpha=0.4"});
  CHECK(r.code == fracgs::cli::kExitInvalidInput);
  CHECK(r.err.find("(1/2, 1)") != std::string::npos);
  CHECK(r.err.find("alpha") != std::string::npos);
}

TEST_CASE("configuration errors name the key") {
  const Result unknown = run({"solve", "-o", fresh_dir("bad_key").string(), "-s", "gamma=2"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("gamma") != std::string::npos);

  const Result bad_value = run({"solve", "-o", fresh_dir("bad_value").string(), "-s", "N=abc"});
  CHECK(bad_value.code == 2);
  CHECK(bad_value.err.find("N") != std::string::npos);

  const Result odd = run({"solve", "-o", fresh_dir("odd").string(), "-s", "N=1001"});
  CHECK(odd.code == 2);

  const Result theta = run({"solve", "-o", fresh_dir("theta").string(), "-s", "theta=5"});
  CHECK(theta.code == 2);
  CHECK(theta.err.find("theta") != std::string::npos);

  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("configuration file with comments") {
  const fs::path dir = fresh_dir("config_file");
  fs::create_directories(dir);
  const fs::path cfg = dir / "run.cfg";
  {
    std::ofstream f(cfg);
    f << "# coarse grid\nL = 32\nN = 1024   # fewer points\n\nalpha = 0.8\nsensitivity = false\n";
  }
  const Result r = run({"solve", "-c", cfg.string(), "-o", (dir / "out").string()});
  INFO(r.err);
  REQUIRE(r.code == 0);
  const json m = read_json(dir / "out" / "manifest.json");
  CHECK(m["resolved"]["alpha"] == "0.8");
  CHECK(m["resolved"]["N"] == "1024");
  CHECK(m["config_path"] == cfg.string());

  {
    std::ofstream f(cfg);
    f << "L = 32\nL = 16\n";
  }
  const Result dup = run({"solve", "-c", cfg.string(), "-o", (dir / "dup").string()});
  CHECK(dup.code == 2);
  CHECK(dup.err.find(":2") != std::string::npos);

  CHECK(run({"solve", "-c", (dir / "missing.cfg").string()}).code == 2);
}

TEST_CASE("custom initial field from CSV") {
  const fs::path first = fresh_dir("init_src");
  REQUIRE(run({"solve", "-o", first.string(), "-s", "sensitivity=false", "-s", "N=1024", "-s",
               "L=32"})
              .code == 0);
  const fs::path second = fresh_dir("init_use");
  const Result r = run({"solve", "-o", second.string(), "-s", "N=1024", "-s", "L=32", "-s",
                        "init.kind=custom", "-s", "init.file=" + (first / "field.csv").string()});
  INFO(r.err);
  REQUIRE(r.code == 0);
  const json a = read_json(first / "report.json");
  const json b = read_json(second / "report.json");
  CHECK(b["level"].get<double>() == doctest::Approx(a["level"].get<double>()).epsilon(1e-9));
  CHECK(b["iterations"].get<int>() <= 2);
  CHECK(b["sensitivity"].is_string());

  const Result mismatch = run({"solve", "-o", fresh_dir("init_bad").string(), "-s",
                               "init.kind=custom", "-s",
                               "init.file=" + (first / "field.csv").string()});
  CHECK(mismatch.code == 2);
  CHECK(mismatch.err.find("init.file") != std::string::npos);
}

TEST_CASE("non-convergence is exit code 1") {
  const Result r = run({"solve", "-o", fresh_dir("short").string(), "-s", "max_iters=2", "-s",
                        "sensitivity=false"});
  CHECK(r.code == fracgs::cli::kExitNotConverged);
  CHECK(fs::exists(fresh_dir("short").parent_path()));
}

TEST_CASE("validate-ops") {
  const fs::path dir = fresh_dir("ops");
  const Result r = run({"validate-ops", "-o", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("all_pass=true") != std::string::npos);
  std::istringstream csv(slurp(dir / "ops.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "check,alpha,residual,tolerance,pass");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    CHECK(line.substr(line.rfind(',') + 1) == "true");
  }
  CHECK(rows >= 8);
}

TEST_CASE("validate-hypotheses reports failures with witnesses") {
  const fs::path good = fresh_dir("hyp_good");
  REQUIRE(run({"validate-hypotheses", "-o", good.string()}).code == 0);
  CHECK(read_json(good / "hypotheses.json")["all_pass"] == true);

  const fs::path flat = fresh_dir("hyp_flat");
  const Result r = run({"validate-hypotheses", "-o", flat.string(), "-s", "a.amplitude=0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("f5=fail") != std::string::npos);
  const json doc = read_json(flat / "hypotheses.json");
  CHECK(doc["all_pass"] == false);
  CHECK(doc["checks"].size() == 6);
}

TEST_CASE("fiber-scan") {
  const fs::path dir = fresh_dir("fiber");
  const Result r = run({"fiber-scan", "-o", dir.string()});
  REQUIRE(r.code == 0);
  const json doc = read_json(dir / "fiber.json");
  CHECK(doc["derivative_sign_changes"] == 1);
  CHECK(doc["constraint_residual"].get<double>() <= 1e-9);
  std::istringstream csv(slurp(dir / "fiber.csv"));
  std::string line;
  int rows = -1;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 122);
}

TEST_CASE("compare") {
  const fs::path dir = fresh_dir("compare");
  const Result r = run({"compare", "-o", dir.string(), "-s", "autonomous=false"});
  INFO(r.err);
  REQUIRE(r.code == 0);
  const json doc = read_json(dir / "compare.json");
  CHECK(doc["strict"] == true);
  CHECK(doc["one_shot_below"] == true);
  CHECK(doc["gap"].get<double>() > 1e-5);
  CHECK(doc["c"].get<double>() < doc["c_bar"].get<double>());
}
