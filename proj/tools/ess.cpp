// Command-line front end; see `ess --help` and README.md.

#include <iostream>

#include "ess/cli.hpp"
#include "ess/errors.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  ess::CommandOptions opts;
  std::string help;
  try {
    opts = ess::parse_command_line(args, &help);
  } catch (const ess::InputError& e) {
    std::cerr << "error: " << e.what() << "\nrun 'ess --help' for usage\n";
    return ess::kExitInput;
  }
  if (!help.empty()) {
    std::cout << help;
    return ess::kExitOk;
  }
  const ess::CommandOutcome out = ess::run_command(opts);
  if (!out.report.is_null()) std::cout << (opts.json ? out.report.dump(2) + "\n" : out.text);
  if (!out.error.empty()) std::cerr << "error: " << out.error << "\n";
  return out.exit_code;
}
