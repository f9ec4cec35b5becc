#include <iostream>

#include "dstarlab/cli/run_command.h"

int main(int argc, char** argv) {
  return dstarlab::cli::RunCli(argc, argv, std::cout, std::cerr);
}
