#include <vector>

#include "gvz/cli.hpp"

int main(int argc, char** argv) {
  return gvz::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
