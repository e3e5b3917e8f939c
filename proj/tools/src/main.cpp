#include <iostream>
#include <string>
#include <vector>

#include "ladderlab/cli/dispatch.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const ladderlab::cli::DispatchResult r = ladderlab::cli::dispatch(args);
  std::cout << r.out << std::flush;
  std::cerr << r.err << std::flush;
  return r.exit_code;
}
