#include <iostream>

#include "sptori/cli.hpp"

int main(int argc, char** argv) {
  const sptori::CliResult r = sptori::run_cli(std::vector<std::string>(argv + 1, argv + argc));
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
