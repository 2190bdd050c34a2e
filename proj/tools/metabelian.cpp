#include <cstdio>
#include <string>
#include <vector>

#include "metabelian/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  metabelian::cli::RunResult r = metabelian::cli::run(args);
  std::fputs(r.out.c_str(), stdout);
  std::fputs(r.err.c_str(), stderr);
  return r.status;
}
