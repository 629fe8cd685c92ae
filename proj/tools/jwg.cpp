#include <string>
#include <vector>

#include "jwg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return jwg::cli_dispatch(args);
}
