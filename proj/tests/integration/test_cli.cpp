// End-to-end checks of the revroles binary: exit codes, determinism,
// atomic outputs, and the toy-corpus pipeline.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "revroles/io.hpp"

namespace fs = std::filesystem;
using revroles::read_file;

namespace {

const std::string kCli = REVROLES_CLI_PATH;
const fs::path kToyCorpus = fs::path(REVROLES_DATA_DIR) / "toy_corpus";

fs::path fresh_temp_dir(const std::string& tag) {
  const fs::path dir =
      fs::temp_directory_path() /
      ("revroles_cli_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args) {
  const std::string command = kCli + " " + args + " >/dev/null 2>/dev/null";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

int run_capture(const std::string& args, const fs::path& stdout_path) {
  const std::string command =
      kCli + " " + args + " > " + stdout_path.string() + " 2>/dev/null";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("validate") == 2);  // missing required flags
  CHECK(run("definitely-not-a-subcommand") == 2);
  CHECK(run("") == 2);  // a subcommand is required
  const fs::path dir = fresh_temp_dir("usage");
  // --scores names a file that does not exist
  CHECK(run("validate --model m.json --docs d.json --revisions r.jsonl "
            "--scores " +
            (dir / "missing_scores.csv").string() + " --out out.json") == 2);
  fs::remove_all(dir);
}

TEST_CASE("domain errors exit with code 1") {
  const fs::path dir = fresh_temp_dir("domain");
  const fs::path bad_model = dir / "bad_model.json";
  revroles::atomic_write_file(bad_model, "{\"not\": \"a model\"}\n");
  const fs::path docs = dir / "docs.json";
  revroles::atomic_write_file(docs, "{}\n");
  CHECK(run("topics --model " + bad_model.string()) == 1);
  fs::remove_all(dir);
}

TEST_CASE("align rejects out-of-range thresholds without writing output") {
  const fs::path dir = fresh_temp_dir("threshold");
  const fs::path out = dir / "revisions.jsonl";
  CHECK(run("align --corpus " + kToyCorpus.string() + " --threshold 0 --out " +
            out.string()) == 1);
  CHECK_FALSE(fs::exists(out));
  fs::remove_all(dir);
}

TEST_CASE("the toy pipeline runs and train is byte-deterministic") {
  const fs::path dir = fresh_temp_dir("pipeline");
  const fs::path revisions = dir / "revisions.jsonl";
  const fs::path docs = dir / "docs.json";
  REQUIRE(run("align --corpus " + kToyCorpus.string() +
              " --threshold 0.5 --out " + revisions.string()) == 0);
  REQUIRE(fs::exists(revisions));
  REQUIRE(run("encode --revisions " + revisions.string() + " --out " +
              docs.string()) == 0);

  const fs::path model_a = dir / "model_a.json";
  const fs::path model_b = dir / "model_b.json";
  const std::string train_args =
      "train --docs " + docs.string() + " --k 5 --sweeps 200 --burn-in 100 "
      "--seed 42 --out ";
  REQUIRE(run(train_args + model_a.string()) == 0);
  REQUIRE(run(train_args + model_b.string()) == 0);
  CHECK(read_file(model_a) == read_file(model_b));

  const fs::path theta = dir / "theta.csv";
  REQUIRE(run("infer --model " + model_a.string() + " --docs " + docs.string() +
              " --sweeps 200 --seed 42 --out " + theta.string()) == 0);
  const std::string theta_text = read_file(theta);
  CHECK(theta_text.find("editor_id,theta_0") == 0);
  CHECK(theta_text.find("essay_001") != std::string::npos);

  const fs::path report = dir / "report.json";
  REQUIRE(run("validate --model " + model_a.string() + " --docs " +
              docs.string() + " --revisions " + revisions.string() +
              " --scores " + (kToyCorpus / "scores.csv").string() +
              " --sweeps 200 --seed 42 --out " + report.string()) == 0);
  const fs::path rendered = dir / "report.txt";
  REQUIRE(run_capture("report --in " + report.string(), rendered) == 0);
  const std::string text = read_file(rendered);
  CHECK(text.find("Editor Roles") != std::string::npos);
  CHECK(text.find("N=2") != std::string::npos);

  // idempotence of a repeated validate run
  const fs::path report2 = dir / "report2.json";
  REQUIRE(run("validate --model " + model_a.string() + " --docs " +
              docs.string() + " --revisions " + revisions.string() +
              " --scores " + (kToyCorpus / "scores.csv").string() +
              " --sweeps 200 --seed 42 --out " + report2.string()) == 0);
  CHECK(read_file(report) == read_file(report2));
  fs::remove_all(dir);
}

TEST_CASE("report rejects a report without roles") {
  const fs::path dir = fresh_temp_dir("report_empty");
  const fs::path report = dir / "report.json";
  revroles::atomic_write_file(report, R"({
    "n": 4, "k": 0,
    "score_corr": {"flag": "x"},
    "purpose_r2": [],
    "role_partial": [],
    "skipped_purposes": []
  })");
  CHECK(run("report --in " + report.string()) == 1);
  fs::remove_all(dir);
}

TEST_CASE("synth writes docs and truth, seed-deterministically") {
  const fs::path dir = fresh_temp_dir("synth");
  const std::string base = "synth --k 3 --docs 20 --mean-len 10 --alpha 0.2 "
                           "--seed 7 ";
  REQUIRE(run(base + "--out " + (dir / "a.json").string() + " --truth " +
              (dir / "ta.json").string()) == 0);
  REQUIRE(run(base + "--out " + (dir / "b.json").string() + " --truth " +
              (dir / "tb.json").string()) == 0);
  CHECK(read_file(dir / "a.json") == read_file(dir / "b.json"));
  CHECK(read_file(dir / "ta.json") == read_file(dir / "tb.json"));
  fs::remove_all(dir);
}

TEST_CASE("sweep reports likelihoods for each k") {
  const fs::path dir = fresh_temp_dir("sweep");
  REQUIRE(run("synth --k 2 --docs 20 --mean-len 12 --alpha 0.2 --seed 3 "
              "--out " + (dir / "docs.json").string()) == 0);
  REQUIRE(run("sweep --docs " + (dir / "docs.json").string() +
              " --kmin 2 --kmax 4 --sweeps 60 --burn-in 30 --seed 5 --top 3 "
              "--out " + (dir / "sweep.json").string()) == 0);
  const std::string text = read_file(dir / "sweep.json");
  CHECK(text.find("\"k\": 2") != std::string::npos);
  CHECK(text.find("\"k\": 4") != std::string::npos);
  CHECK(text.find("train_log_likelihood") != std::string::npos);
  fs::remove_all(dir);
}
