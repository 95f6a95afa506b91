// Acceptance gate: one PASS/FAIL line per criterion on stdout, JSONL on stderr.
// Exit status is the number of failures (capped at 1).

#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bgap/cli.hpp"
#include "bgap/error.hpp"

int main(int argc, char** argv) {
  bgap::cli::RunConfig c;
  c.subcommand = "verify";
  std::string only;
  CLI::App app{"Acceptance criteria"};
  app.add_option("--only", only, "Comma-separated criteria (default: all)");
  app.add_option("--threads", c.threads, "Worker threads (0: all cores)");
  app.add_option("--seed", c.seed, "Seed for sampled checks");
  app.add_flag("--timing", c.timing, "Record wall time per criterion");
  CLI11_PARSE(app, argc, argv);
  try {
    if (!only.empty())
      for (const auto v : bgap::cli::parse_int_list(only)) c.only.push_back(static_cast<int>(v));
    std::ostringstream jsonl;
    const int failed = bgap::cli::verify(c, jsonl, std::cout);
    std::cerr << jsonl.str();
    return failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cout << "acceptance error: " << e.what() << '\n';
    return 1;
  }
}
