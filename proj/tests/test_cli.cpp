#include "hnvol/cli.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace hnvol;
using cli::Json;
using support::R;

namespace {

cli::RunResult run_payload(const std::string& command, const std::string& payload,
                           cli::OutputMode mode = cli::OutputMode::exact) {
  cli::JobSpec job;
  job.command = command;
  job.payload = cli::parse_payload(payload);
  return cli::run(job, mode);
}

Json result_of(const cli::RunResult& r) { return Json::parse(r.document); }

struct Proc {
  std::string out;
  int code;
};

Proc shell(const std::string& cmd) {
  Proc p{"", -1};
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return p;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) p.out.append(buf.data(), n);
  const int st = pclose(f);
  p.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return p;
}

const std::string kCli = HNVOL_CLI_PATH;
const std::string kJobs = HNVOL_JOBS_DIR;

// Collects every string that looks like a rational "p/q".
void collect_rationals(const Json& j, std::vector<std::string>& out) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.find('/') != std::string::npos && s.find(' ') == std::string::npos) out.push_back(s);
  } else if (j.is_structured()) {
    for (const auto& el : j) collect_rationals(el, out);
  }
}

}  // namespace

TEST(Cli, VolumeF1) {
  const auto r = run_payload("volume", R"({"profE": [["0/1",1],["1/1",1]], "m": 1, "l": 0, "a": "0/1"})");
  ASSERT_EQ(r.exit_code, 0) << r.document;
  const Json d = result_of(r);
  EXPECT_EQ(d["command"], "volume");
  EXPECT_EQ(d["result"]["volume"], "1/1");
  EXPECT_EQ(d["result"]["integral"], "1/2");
  EXPECT_EQ(d["input"]["profF"][0]["slope"], "0/1");
}

TEST(Cli, HnTensorTwoStep) {
  const auto r = run_payload("hn-tensor", R"({"P": [["0",1],["1",1]], "Q": [{"slope":"0","rank":1},{"slope":"1","rank":1}]})");
  ASSERT_EQ(r.exit_code, 0) << r.document;
  const Json pieces = result_of(r)["result"]["pieces"];
  ASSERT_EQ(pieces.size(), 3u);
  const std::vector<std::pair<std::string, int>> want{{"0/1", 1}, {"1/1", 2}, {"2/1", 1}};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(pieces[i]["slope"], want[i].first);
    EXPECT_EQ(pieces[i]["rank"], want[i].second);
  }
  EXPECT_EQ(result_of(r)["result"]["checks"]["bruteforce_agrees"], true);
}

TEST(Cli, ConeThm48) {
  cli::JobSpec job;
  job.command = "cone";
  job.case_id = "thm4.8";
  job.n_list = {2};
  const auto r = cli::run(job, cli::OutputMode::exact);
  ASSERT_EQ(r.exit_code, 0) << r.document;
  const Json res = result_of(r)["result"];
  EXPECT_EQ(res["eff_generators"], Json::parse(R"([["1/1","-2/1"],["0/1","1/1"]])"));
  EXPECT_EQ(res["duality_check"], true);
  EXPECT_EQ(res["basis"], Json::parse(R"(["xi","pi*L_X"])"));
}

TEST(Cli, HnSymStrategies) {
  for (const char* s : {"dp", "enumerate"}) {
    const auto r = run_payload("hn-sym", std::string(R"({"P": [["0",1],["1/2",2]], "N": 2, "strategy": ")") + s + "\"}");
    ASSERT_EQ(r.exit_code, 0) << r.document;
    const Json res = result_of(r)["result"];
    EXPECT_EQ(res["rank"], 6);
    EXPECT_EQ(res["pieces"][2]["slope"], "1/1");
    EXPECT_EQ(res["pieces"][2]["rank"], 3);
  }
}

TEST(Cli, OutputModes) {
  const std::string p = R"({"profE": [["0",1],["1",1]], "m": 1, "l": 0, "a": "-1/3"})";
  const Json dec = result_of(run_payload("volume", p, cli::OutputMode::decimal));
  EXPECT_EQ(dec["output_mode"], "decimal");
  EXPECT_EQ(dec["result"]["volume"]["approx"], "0.44444444444444444444");
  EXPECT_FALSE(dec["result"]["volume"].contains("exact"));
  const Json both = result_of(run_payload("volume", p, cli::OutputMode::both));
  EXPECT_EQ(both["result"]["volume"]["exact"], "4/9");
  EXPECT_EQ(both["result"]["volume"]["approx"], "0.44444444444444444444");
}

TEST(Cli, BothScalings) {
  cli::JobSpec job;
  job.command = "volume";
  job.payload = Json::parse(R"({"profE": [["0",1],["1",1]], "m": 2, "l": 0})");
  job.both_scalings = true;
  const Json d = result_of(cli::run(job, cli::OutputMode::exact));
  EXPECT_EQ(d["result"]["volume"], "4/1");
  EXPECT_EQ(d["result"]["literal_reading"]["volume"], "2/1");
  job.payload["m"] = 1;
  EXPECT_FALSE(result_of(cli::run(job, cli::OutputMode::exact))["result"].contains("literal_reading"));
}

TEST(Cli, VolumeOracleTable) {
  cli::JobSpec job;
  job.command = "volume-oracle";
  job.payload = Json::parse(R"({"profE": [["0",1],["1",1]], "m": 1, "l": 0, "a": "0"})");
  job.n_list = {1, 4, 10};
  const Json t = result_of(cli::run(job, cli::OutputMode::exact))["result"]["table"];
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[1]["V_n"], "5/4");
  EXPECT_EQ(t[2]["delta"], "1/10");
}

TEST(Cli, MeasureCommands) {
  const Json lim = result_of(run_payload("measure-limit", R"({"sE": ["0","1"], "sF": ["0","1"], "plot_samples": 3})"));
  EXPECT_EQ(lim["result"]["mass"], "1/1");
  EXPECT_EQ(lim["result"]["plot"][1]["cdf"], "1/2");
  cli::JobSpec job;
  job.command = "measure-discrete";
  job.payload = Json::parse(R"({"profE": [["0",1],["1",1]], "n": [2], "grid": 1000})");
  const Json d = result_of(cli::run(job, cli::OutputMode::exact));
  const Json atoms = d["result"]["levels"][0]["measure"]["atoms"];
  ASSERT_EQ(atoms.size(), 3u);
  EXPECT_EQ(atoms[1]["point"], "1/2");
  EXPECT_EQ(atoms[1]["mass"], "1/3");
}

TEST(Cli, ValidationErrors) {
  const std::vector<std::pair<std::string, std::string>> bad{
      {"volume", R"({"m": 1})"},
      {"volume", R"({"profE": [["0.5",1]]})"},
      {"volume", R"({"profE": [["1/2",0]]})"},
      {"volume", R"({"profE": []})"},
      {"hn-sym", R"({"P": [["0",1]], "N": -1})"},
      {"hn-sym", R"({"P": [["0",1]], "N": 2, "strategy": "fast"})"},
      {"volume-oracle", R"({"profE": [["0",1]]})"},
      {"cone", R"({"case": "thm9.9"})"},
      {"cone", R"({"case": "thm4.8", "n": 0})"},
      {"cone", R"({"case": "thm4.9", "m": 1, "n": 2})"},
      {"nonsense", R"({})"},
  };
  for (const auto& [cmd, payload] : bad) {
    const auto r = run_payload(cmd, payload);
    EXPECT_EQ(r.exit_code, 2) << cmd << " " << payload << "\n" << r.document;
    EXPECT_TRUE(result_of(r).contains("error"));
  }
  const auto missing = run_payload("volume", R"({"m": 1})");
  EXPECT_NE(result_of(missing)["error"]["message"].get<std::string>().find("profE"), std::string::npos);
}

TEST(Cli, ParseErrorReportsLine) {
  try {
    cli::parse_payload("{\n  \"a\": 1,\n  \"b\": ]\n}");
    FAIL() << "expected a parse error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Cli, JobDocument) {
  const auto [job, mode] = cli::job_from_document(Json::parse(
      R"({"command": "cone", "options": {"case": "thm4.8", "n": [3], "output_mode": "both"}, "payload": {}})"));
  EXPECT_EQ(job.command, "cone");
  EXPECT_EQ(job.case_id, "thm4.8");
  EXPECT_EQ(job.n_list, std::vector<long>{3});
  EXPECT_EQ(mode, cli::OutputMode::both);
}

TEST(CliBinary, ExitCodesAndDeterminism) {
  const auto ok = shell(kCli + " cone --case thm4.8 --n 2 </dev/null");
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_EQ(Json::parse(ok.out)["result"]["duality_check"], true);
  EXPECT_EQ(shell(kCli + " cone --case thm4.8 --n 2 </dev/null").out, ok.out);

  const auto bad_json = shell("printf '{\\n\"P\": [' | " + kCli + " hn-sym");
  EXPECT_EQ(bad_json.code, 2);
  EXPECT_NE(bad_json.out.find("line 2"), std::string::npos) << bad_json.out;

  const auto bad_field = shell("echo '{\"P\": [[\"x\",1]], \"N\": 1}' | " + kCli + " hn-sym");
  EXPECT_EQ(bad_field.code, 2);
  EXPECT_NE(bad_field.out.find("P[0][0]"), std::string::npos) << bad_field.out;

  EXPECT_EQ(shell(kCli + " --input /nonexistent/file.json volume").code, 2);
  EXPECT_EQ(shell(kCli + " frobnicate </dev/null 2>/dev/null").code, 2);

  const auto list = shell("echo '{\"profE\": [[\"0\",1],[\"1\",1]]}' | " + kCli + " volume-oracle --n 1,2,3");
  EXPECT_EQ(list.code, 0) << list.out;
  EXPECT_EQ(Json::parse(list.out)["result"]["table"].size(), 3u);
}

TEST(CliBinary, JobFilesRoundTrip) {
  std::size_t count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(kJobs)) {
    if (entry.path().extension() != ".json") continue;
    ++count;
    const auto first = shell(kCli + " --input " + entry.path().string());
    const auto second = shell(kCli + " --input " + entry.path().string());
    EXPECT_EQ(first.code, 0) << entry.path() << "\n" << first.out;
    EXPECT_EQ(first.out, second.out) << entry.path();
    std::vector<std::string> rats;
    collect_rationals(Json::parse(first.out), rats);
    for (const auto& s : rats) EXPECT_EQ(to_string(parse_rational(s)), s) << entry.path();
  }
  EXPECT_GE(count, 10u);
}
