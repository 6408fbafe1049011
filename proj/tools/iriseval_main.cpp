#include <string>
#include <vector>

#include "iris/cli.hpp"

int main(int argc, char** argv) {
  return iris::cli_dispatch(std::vector<std::string>(argv + 1, argv + argc));
}
