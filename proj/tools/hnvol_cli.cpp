// hnvol: run one JSON job and print the result document.
//
//   hnvol volume --input payload.json --output-mode both
//   hnvol cone --case thm4.8 --n 3
//   hnvol --input tools/jobs/volume_f1.json        (job document: command + options + payload)
//   echo '{"P": [["0/1",1]], "N": 4}' | hnvol hn-sym

#include "hnvol/cli.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>

#include <unistd.h>

namespace {

std::string slurp(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

int fail(const std::string& command, hnvol::cli::OutputMode mode, const std::string& message) {
  hnvol::cli::Json doc{{"command", command},
                       {"output_mode", hnvol::cli::to_string(mode)},
                       {"error", {{"kind", "validation"}, {"message", message}}}};
  std::cout << doc.dump(2) << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harder-Narasimhan profiles, limit measures, volumes and cones"};
  std::string command;
  std::string input_path = "-";
  std::string mode_name;
  std::vector<long> n_list;
  std::string case_id;
  bool both_scalings = false;
  long grid = 0;

  std::vector<std::string> names = hnvol::cli::commands();
  app.add_option("command", command, "hn-tensor | hn-sym | measure-limit | measure-discrete | volume | "
                                     "volume-oracle | cone (optional for job documents)")
      ->check(CLI::IsMember(names));
  app.add_option("-i,--input", input_path, "JSON payload or job document, '-' for stdin");
  app.add_option("-o,--output-mode", mode_name, "exact | decimal | both")
      ->check(CLI::IsMember({"exact", "decimal", "both"}));
  app.add_option("--n", n_list, "level(s) n, comma separated")->delimiter(',');
  app.add_option("--case", case_id, "cone case: thm4.1 | thm4.8 | thm4.9 | thm4.10");
  app.add_flag("--both-scalings", both_scalings, "also report the unscaled-knot volume");
  app.add_option("--grid", grid, "W1 grid size (default 100000)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  hnvol::cli::JobSpec job;
  auto mode = hnvol::cli::OutputMode::exact;
  try {
    std::string text;
    if (input_path == "-") {
      // An interactive terminal is not read; flags alone then describe the job.
      text = isatty(fileno(stdin)) ? std::string("{}") : slurp(std::cin);
    } else {
      std::ifstream f(input_path);
      if (!f) throw hnvol::ValidationError("cannot open input file '" + input_path + "'");
      text = slurp(f);
    }
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) text = "{}";
    const auto parsed = hnvol::cli::parse_payload(text);
    if (hnvol::cli::is_job_document(parsed)) {
      std::tie(job, mode) = hnvol::cli::job_from_document(parsed);
      if (!command.empty() && command != job.command)
        throw hnvol::ValidationError("command '" + command + "' conflicts with job document command '" +
                                     job.command + "'");
    } else {
      if (command.empty()) throw hnvol::ValidationError("no command given and the input is not a job document");
      job.command = command;
      job.payload = parsed;
    }
    if (!mode_name.empty()) mode = hnvol::cli::parse_output_mode(mode_name);
    if (!n_list.empty()) job.n_list = n_list;
    if (!case_id.empty()) job.case_id = case_id;
    if (both_scalings) job.both_scalings = true;
    if (grid > 0) job.grid = grid;
  } catch (const hnvol::ValidationError& e) {
    return fail(command, mode, e.what());
  }

  const auto res = hnvol::cli::run(job, mode);
  std::cout << res.document;
  return res.exit_code;
}
