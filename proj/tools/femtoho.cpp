#include <string>
#include <vector>

#include "femtoho/cli.hpp"

int main(int argc, char** argv) {
  return femtoho::cli::main(std::vector<std::string>(argv, argv + argc));
}
